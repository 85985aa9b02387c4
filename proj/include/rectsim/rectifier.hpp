#pragma once

// Dual-phase half-wave current rectifier. Holds the ideal transfer, the
// nine-transistor bench netlist and a harness comparing the two.
//
// Bench topology (all devices W/L = 1.5u/0.15u):
//   M3/M4   CMOS inverter with its input tied to ground; its output nb sits
//           just above VSS and biases the gate of M2.
//   M1/M2   complementary pair with sources joined at the input node. M1
//           (NMOS, gate at ground) supplies the negative half of Iin, M2
//           (PMOS, gate at nb) sinks the positive half into VSS.
//   M5/M6   PMOS mirror of the M1 drain current into the negative-phase
//           output.
//   M7..M9  second PMOS copy (M7) folded through the NMOS mirror M8/M9 into
//           the positive-phase output.
// Both outputs end in 0 V sources whose branch currents are the outputs:
// out_plus = i(Vplus) >= 0 and out_minus = i(Vminus) <= 0.

#include <algorithm>
#include <cmath>
#include <optional>
#include <sstream>
#include <string>
#include <vector>

#include "rectsim/analysis.hpp"
#include "rectsim/netlist.hpp"
#include "rectsim/solver.hpp"

namespace rectsim {

/// The 0.5 um process cards, in their original layout.
inline constexpr const char* kProcessModelCards =
    ".MODEL CMOSN NMOS LEVEL = 3 TOX = 1.4E-8 NSUB = 1E17\n"
    "+ GAMMA = 0.5483559 PHI = 0.7 VTO = 0.7640855 DELTA = 3.0541177\n"
    "+ UO = 662.6984452 ETA = 3.162045E-6 THETA = 0.1013999\n"
    "+ KP = 1.259355E-4 VMAX = 1.442228E5 KAPPA = 0.3 RSH = 7.513418E-3\n"
    "+ NFS = 1E12 TPG = 1 XJ = 3E-7 LD = 1E-13 WD = 2.334779E-7\n"
    "+ CGDO = 2.15E-10 CGSO = 2.15E-10 CGBO = 1E-10 CJ = 4.258447E-4\n"
    "+ PB = 0.9140376 MJ = 0.435903 CJSW = 3.147465E-10 MJSW = 0.1977689\n"
    ".MODEL CMOSP PMOS LEVEL = 3 TOX = 1.4E-8 NSUB = 1E17\n"
    "+ GAMMA = 0.6243261 PHI = 0.7 VTO = -0.9444911 DELTA = 0.1118368\n"
    "+ UO = 250 ETA = 0 THETA = 0.1633973 KP = 3.924644E-5 VMAX = 1E6\n"
    "+ KAPPA = 30.1015109 RSH = 33.9672594 NFS = 1E12 TPG = -1 XJ = 2E-7\n"
    "+ LD = 5E-13 WD = 4.11531E-7 CGDO = 2.34E-10 CGSO = 2.34E-10\n"
    "+ CGBO = 1E-10 CJ = 7.285722E-4 PB = 0.96443 MJ = 0.5\n"
    "+ CJSW = 2.955161E-10 MJSW = 0.3184873\n";

struct BenchConfig {
  double amplitude_pp = 400e-6;  // A
  double frequency = 1e3;        // Hz
  double temp = 25.0;            // Celsius
  double vdd = 1.5;
  double vss = -1.5;
  double w = 1.5e-6;
  double l = 0.15e-6;
  int periods = 20;
  int steps_per_period = 1000;

  double half_amplitude() const { return 0.5 * amplitude_pp; }
  double tstep() const { return 1.0 / (frequency * steps_per_period); }
  double tstop() const { return periods / frequency; }

  void check() const {
    if (!(amplitude_pp > 0.0)) throw std::invalid_argument("bench amplitude must be positive");
    if (!(frequency > 0.0)) throw std::invalid_argument("bench frequency must be positive");
    if (periods < 1 || steps_per_period < 10) throw std::invalid_argument("bench needs periods >= 1 and >= 10 steps per period");
  }
};

struct IdealOutputs {
  double out_plus = 0.0;
  double out_minus = 0.0;
};

/// Reference behavior: the negative half of the input appears as +|iin| on
/// the positive-phase output and as iin on the negative-phase output; the
/// positive half is blocked.
constexpr IdealOutputs ideal_dual_phase(double iin) {
  if (iin < 0.0) return {-iin, iin};
  return {0.0, 0.0};
}

inline std::string build_bench_netlist(const BenchConfig& cfg) {
  cfg.check();
  auto num = [](double v) { return format_roundtrip(v); };
  const std::string geom = " W=" + num(cfg.w) + " L=" + num(cfg.l);
  std::ostringstream os;
  os << "* dual-phase half-wave current rectifier bench\n";
  os << kProcessModelCards;
  os << "VDD vdd 0 DC " << num(cfg.vdd) << '\n';
  os << "VSS vss 0 DC " << num(cfg.vss) << '\n';
  os << "Iin 0 in SIN(0 " << num(cfg.half_amplitude()) << ' ' << num(cfg.frequency) << ")\n";
  os << "* inverter: bias for the PMOS input device\n";
  os << "M3 nb 0 vss vss CMOSN" << geom << '\n';
  os << "M4 nb 0 vdd vdd CMOSP" << geom << '\n';
  os << "* complementary input pair\n";
  os << "M1 d1 0 in vss CMOSN" << geom << '\n';
  os << "M2 vss nb in vdd CMOSP" << geom << '\n';
  os << "* negative-phase mirror\n";
  os << "M5 d1 d1 vdd vdd CMOSP" << geom << '\n';
  os << "M6 om d1 vdd vdd CMOSP" << geom << '\n';
  os << "* positive-phase mirror chain\n";
  os << "M7 d7 d1 vdd vdd CMOSP" << geom << '\n';
  os << "M8 d7 d7 vss vss CMOSN" << geom << '\n';
  os << "M9 op d7 vss vss CMOSN" << geom << '\n';
  os << "* output ammeters\n";
  os << "Vplus 0 op DC 0\n";
  os << "Vminus 0 om DC 0\n";
  os << ".TRAN " << num(cfg.tstep()) << ' ' << num(cfg.tstop()) << '\n';
  os << ".TEMP " << num(cfg.temp) << '\n';
  os << ".END\n";
  return os.str();
}

inline constexpr const char* kInputSource = "Iin";

/// Maps raw simulator waveforms onto the bench columns
/// iin, out_plus, out_minus, i_vdd, i_vss (supply currents drawn from the rails).
inline WaveformSet bench_columns(const WaveformSet& raw) {
  const Waveform& iin = raw.get(branch_wave_name("Iin"));
  WaveformSet out;
  out.add(Waveform("iin", iin.time_base(), iin.values()), Unit::Amp);
  out.add("out_plus", raw.get(branch_wave_name("Vplus")).values(), Unit::Amp);
  out.add("out_minus", raw.get(branch_wave_name("Vminus")).values(), Unit::Amp);
  std::vector<double> ivdd = raw.get(branch_wave_name("VDD")).values();
  for (double& v : ivdd) v = -v;
  out.add("i_vdd", std::move(ivdd), Unit::Amp);
  out.add("i_vss", raw.get(branch_wave_name("VSS")).values(), Unit::Amp);
  return out;
}

struct BenchRun {
  BenchConfig config;
  WaveformSet waves;  // bench columns
  double max_kcl_ratio = 0.0;
  long newton_iterations = 0;
  std::optional<std::string> error;

  bool ok() const { return !error.has_value(); }
};

inline CircuitGraph bench_graph(const BenchConfig& cfg) {
  return build_graph(parse_netlist(build_bench_netlist(cfg)), cfg.temp);
}

inline BenchRun run_bench(const BenchConfig& cfg, const SolverOptions& opt = {}) {
  BenchRun run;
  run.config = cfg;
  CircuitGraph g = bench_graph(cfg);
  TransientOptions topt{cfg.tstep(), cfg.tstop(), InitialCondition::FromOp};
  TransientResult tr = solve_transient(g, topt, opt);
  run.max_kcl_ratio = tr.max_kcl_ratio;
  run.newton_iterations = tr.newton_iterations;
  run.error = tr.error;
  if (!tr.waves.empty()) run.waves = bench_columns(tr.waves);
  return run;
}

/// Retained analysis window: whole periods at the end of the record after
/// discarding the first quarter.
inline Window retained_window(const std::vector<double>& times, double frequency) {
  const double period = 1.0 / frequency;
  const double t0 = times.front();
  const double t1 = times.back();
  const double usable = (t1 - t0) * 0.75;
  const auto whole = static_cast<long long>(std::floor(usable / period + 1e-9));
  if (whole < 2) throw WaveformError("record holds fewer than two whole periods after the startup discard");
  return {t1 - static_cast<double>(whole) * period, t1};
}

inline PrecisionReport compare(const WaveformSet& sim, const BenchConfig& cfg) {
  cfg.check();
  const Waveform& iin = sim.get("iin");
  const Waveform& plus = sim.get("out_plus");
  const Waveform& minus = sim.get("out_minus");
  const Waveform& ivdd = sim.get("i_vdd");
  const Waveform& ivss = sim.get("i_vss");

  const auto& ts = iin.times();
  const Window win = retained_window(ts, cfg.frequency);
  const double half = cfg.half_amplitude();
  const std::size_t n = ts.size();

  std::vector<double> err_p(n), err_m(n), power(n);
  for (std::size_t i = 0; i < n; ++i) {
    IdealOutputs ideal = ideal_dual_phase(iin.values()[i]);
    err_p[i] = (plus.values()[i] - ideal.out_plus) / half;
    err_m[i] = (minus.values()[i] - ideal.out_minus) / half;
    power[i] = cfg.vdd * ivdd.values()[i] + std::abs(cfg.vss * ivss.values()[i]);
  }
  Waveform ep("err_plus", iin.time_base(), err_p);
  Waveform em("err_minus", iin.time_base(), err_m);

  PrecisionReport rep;
  rep.window = win;
  rep.rms_error_plus = rms(ep, win);
  rep.rms_error_minus = rms(em, win);
  for (std::size_t i = 0; i < n; ++i) {
    if (ts[i] < win.t_start) continue;
    rep.peak_error_plus = std::max(rep.peak_error_plus, std::abs(err_p[i]));
    rep.peak_error_minus = std::max(rep.peak_error_minus, std::abs(err_m[i]));
  }

  // Time near input zero crossings (|iin| below half the amplitude) during
  // which the positive-phase output is off by more than 5 % of full scale.
  std::vector<double> flag(n);
  for (std::size_t i = 0; i < n; ++i) {
    const bool near_zero = std::abs(iin.values()[i]) < 0.5 * half;
    flag[i] = near_zero && std::abs(err_p[i]) > 0.05 ? 1.0 : 0.0;
  }
  const double periods = (win.t_end - win.t_start) * cfg.frequency;
  rep.zero_crossing_width =
      mean(Waveform("flag", iin.time_base(), std::move(flag)), win) * (win.t_end - win.t_start) / periods;
  rep.dc_power = mean(Waveform("power", iin.time_base(), std::move(power)), win);
  return rep;
}

/// Bench DC transfer: rows of (iin, out_plus, out_minus) for converged points.
struct BenchTransfer {
  std::vector<double> iin, out_plus, out_minus;
  std::vector<double> kcl_ratio;
  std::vector<std::string> failures;
};

inline BenchTransfer bench_dc_sweep(const BenchConfig& cfg, double start, double stop, double step,
                                    const SolverOptions& opt = {}) {
  CircuitGraph g = bench_graph(cfg);
  const int plus = g.find_vsource("Vplus")->branch;
  const int minus = g.find_vsource("Vminus")->branch;
  BenchTransfer out;
  for (const auto& pt : dc_sweep(g, kInputSource, start, stop, step, opt)) {
    if (!pt.op) {
      out.failures.push_back(format_sig(pt.value, 6) + ": " + pt.error);
      continue;
    }
    out.iin.push_back(pt.value);
    out.out_plus.push_back(pt.op->branch_currents[static_cast<std::size_t>(plus)]);
    out.out_minus.push_back(pt.op->branch_currents[static_cast<std::size_t>(minus)]);
    out.kcl_ratio.push_back(pt.op->kcl_ratio);
  }
  return out;
}

}  // namespace rectsim
