#pragma once

// Command implementations behind the `rectsim` executable. Each command
// returns the process exit code: 0 success, 1 input/usage problem,
// 2 solver non-convergence. Summaries go to `out`, diagnostics to `err`.

#include <atomic>
#include <chrono>
#include <cmath>
#include <filesystem>
#include <fstream>
#include <mutex>
#include <optional>
#include <ostream>
#include <sstream>
#include <string>
#include <thread>
#include <vector>

#include "rectsim/analysis.hpp"
#include "rectsim/device.hpp"
#include "rectsim/netlist.hpp"
#include "rectsim/rectifier.hpp"
#include "rectsim/solver.hpp"

namespace rectsim::cli {

namespace fs = std::filesystem;

inline constexpr int kExitOk = 0;
inline constexpr int kExitInput = 1;
inline constexpr int kExitSolver = 2;

/// Number as it appears in output file names: integers without exponent.
inline std::string label(double v) {
  if (std::abs(v) < 1e15 && v == std::floor(v)) return std::to_string(static_cast<long long>(v));
  return format_roundtrip(v);
}

/// Writes through a temporary sibling and renames, so readers never see a partial file.
template <typename Writer>
void write_atomic(const fs::path& path, Writer&& writer) {
  if (path.has_parent_path()) fs::create_directories(path.parent_path());
  fs::path tmp = path;
  tmp += ".tmp";
  {
    std::ofstream os(tmp, std::ios::binary | std::ios::trunc);
    if (!os) throw std::runtime_error("cannot open " + tmp.string() + " for writing");
    writer(os);
    if (!os) throw std::runtime_error("write to " + tmp.string() + " failed");
  }
  fs::rename(tmp, path);
}

inline std::optional<std::string> read_file(const fs::path& path, std::ostream& err) {
  std::ifstream is(path, std::ios::binary);
  if (!is) {
    err << "error: cannot read " << path.string() << '\n';
    return std::nullopt;
  }
  std::ostringstream ss;
  ss << is.rdbuf();
  return ss.str();
}

inline std::optional<NetlistDocument> load_netlist(const fs::path& path, std::ostream& err) {
  auto text = read_file(path, err);
  if (!text) return std::nullopt;
  try {
    NetlistDocument doc = parse_netlist(*text);
    bool bad = false;
    for (const auto& d : validate(doc)) {
      err << path.string();
      if (d.line) err << ':' << d.line;
      err << ": " << (d.severity == Severity::Error ? "error: " : "warning: ") << d.message << '\n';
      bad = bad || d.severity == Severity::Error;
    }
    if (bad) return std::nullopt;
    return doc;
  } catch (const NetlistError& e) {
    err << path.string() << ':' << e.line() << ": error: " << e.what() << '\n';
    return std::nullopt;
  }
}

inline double seconds_since(std::chrono::steady_clock::time_point t0) {
  return std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
}

inline std::string fixed3(double v) {
  char buf[32];
  std::snprintf(buf, sizeof buf, "%.3f", v);
  return buf;
}

// ---------------------------------------------------------------- run

struct RunArgs {
  fs::path netlist;
  std::optional<fs::path> output;
  SolverOptions solver;
};

namespace detail {

inline std::string lower_copy(std::string_view s) {
  std::string out(s);
  for (char& c : out) c = static_cast<char>(std::tolower(static_cast<unsigned char>(c)));
  return out;
}

inline std::vector<std::string> op_header(const CircuitGraph& g) {
  std::vector<std::string> h;
  for (int k = 1; k <= g.n; ++k) h.push_back(node_wave_name(g.node_names[static_cast<std::size_t>(k)]));
  for (const auto& v : g.vsources) h.push_back(branch_wave_name(v.name));
  return h;
}

inline std::vector<double> op_row(const OperatingPoint& op) {
  std::vector<double> row = op.voltages;
  row.insert(row.end(), op.branch_currents.begin(), op.branch_currents.end());
  return row;
}

inline const char* kind_name(const AnalysisDirective& d) {
  if (std::holds_alternative<OpDirective>(d)) return "op";
  if (std::holds_alternative<DcSweepDirective>(d)) return "dc";
  return "tran";
}

}  // namespace detail

inline int cmd_run(const RunArgs& args, std::ostream& out, std::ostream& err) {
  auto doc = load_netlist(args.netlist, err);
  if (!doc) return kExitInput;

  std::vector<double> temps{kTnomCelsius};
  std::vector<const AnalysisDirective*> analyses;
  for (const auto& d : doc->directives) {
    if (const auto* t = std::get_if<TempDirective>(&d)) {
      temps = t->temps;
    } else {
      analyses.push_back(&d);
    }
  }
  if (analyses.empty()) {
    err << args.netlist.string() << ": error: no analysis directive (.OP, .DC or .TRAN)\n";
    return kExitInput;
  }
  for (const auto& d : analyses) {
    if (const auto* dc = std::get_if<DcSweepDirective>(d)) {
      if (!doc->find_element(dc->source) ||
          (doc->find_element(dc->source)->kind != ElementKind::VSource &&
           doc->find_element(dc->source)->kind != ElementKind::ISource)) {
        err << args.netlist.string() << ": error: .DC source '" << dc->source << "' is not an independent source\n";
        return kExitInput;
      }
    }
  }

  const fs::path base = args.output.value_or(fs::path(args.netlist.stem().string() + ".csv"));
  const bool single = analyses.size() == 1 && temps.size() == 1;
  int status = kExitOk;
  for (double temp : temps) {
    CircuitGraph g;
    try {
      g = build_graph(*doc, temp);
    } catch (const std::exception& e) {
      err << args.netlist.string() << ": error: " << e.what() << '\n';
      return kExitInput;
    }
    for (std::size_t a = 0; a < analyses.size(); ++a) {
      const AnalysisDirective& d = *analyses[a];
      fs::path path = base;
      if (!single) {
        std::string name = base.stem().string() + "_" + std::to_string(a + 1) + "_" + detail::kind_name(d);
        if (temps.size() > 1) name += "_t" + label(temp);
        path = base.parent_path() / (name + base.extension().string());
      }
      const auto t0 = std::chrono::steady_clock::now();
      std::size_t points = 0;
      try {
        if (std::holds_alternative<OpDirective>(d)) {
          OperatingPoint op = solve_dc(g, args.solver);
          auto row = detail::op_row(op);
          std::vector<std::vector<double>> cols;
          for (double v : row) cols.push_back({v});
          write_atomic(path, [&](std::ostream& os) { write_table_csv(os, detail::op_header(g), cols); });
          points = 1;
        } else if (const auto* dc = std::get_if<DcSweepDirective>(&d)) {
          auto pts = dc_sweep(g, dc->source, dc->start, dc->stop, dc->step, args.solver);
          std::vector<std::string> header{detail::lower_copy(dc->source)};
          for (auto& h : detail::op_header(g)) header.push_back(h);
          std::vector<std::vector<double>> cols(header.size());
          for (const auto& p : pts) {
            if (!p.op) {
              err << "dc: point " << format_sig(p.value, 6) << " failed: " << p.error << '\n';
              status = kExitSolver;
              continue;
            }
            cols[0].push_back(p.value);
            auto row = detail::op_row(*p.op);
            for (std::size_t c = 0; c < row.size(); ++c) cols[c + 1].push_back(row[c]);
            ++points;
          }
          write_atomic(path, [&](std::ostream& os) { write_table_csv(os, header, cols); });
        } else {
          const auto& tr = std::get<TranDirective>(d);
          TransientResult res = solve_transient(g, {tr.tstep, tr.tstop, InitialCondition::FromOp}, args.solver);
          if (!res.waves.empty()) write_atomic(path, [&](std::ostream& os) { write_csv(res.waves, os); });
          points = res.accepted_points;
          if (!res.ok()) {
            err << "tran: aborted at t=" << format_sig(res.error_time, 6) << ": " << *res.error << '\n';
            status = kExitSolver;
          }
        }
      } catch (const NonConvergenceError& e) {
        err << detail::kind_name(d) << ": " << e.what() << '\n';
        status = kExitSolver;
        continue;
      } catch (const SingularMatrixError& e) {
        err << detail::kind_name(d) << ": " << e.what() << '\n';
        status = kExitSolver;
        continue;
      }
      out << detail::kind_name(d) << " temp=" << label(temp) << ": " << points << " points, " << fixed3(seconds_since(t0))
          << " s -> " << path.string() << '\n';
    }
  }
  return status;
}

// ---------------------------------------------------------------- bench

struct BenchArgs {
  std::vector<double> freqs{1e3, 1e4, 1e5, 1e6, 1e7, 1e8};
  std::vector<double> temps{25.0};
  double amplitude_pp = 400e-6;
  int periods = 20;
  int steps_per_period = 1000;
  fs::path out_dir = "bench_out";
  unsigned jobs = 1;
  SolverOptions solver;
};

struct BenchPointResult {
  double freq = 0.0;
  double temp = 0.0;
  std::optional<PrecisionReport> report;
  std::string status = "ok";
};

inline std::string bench_file_name(double freq, double temp) {
  return "bench_f" + label(freq) + "_t" + label(temp) + ".csv";
}

inline int cmd_bench(const BenchArgs& args, std::ostream& out, std::ostream& err) {
  if (args.freqs.empty() || args.temps.empty()) {
    err << "error: frequency and temperature lists must not be empty\n";
    return kExitInput;
  }
  for (double f : args.freqs) {
    if (!(f > 0.0)) {
      err << "error: frequencies must be positive (got " << format_roundtrip(f) << ")\n";
      return kExitInput;
    }
  }
  for (double t : args.temps) {
    if (!(t >= -50.0 && t <= 150.0)) {
      err << "error: temperature " << format_roundtrip(t) << " outside [-50, 150]\n";
      return kExitInput;
    }
  }
  if (!(args.amplitude_pp > 0.0) || args.periods < 4 || args.steps_per_period < 10) {
    err << "error: need amplitude > 0, periods >= 4 and steps-per-period >= 10\n";
    return kExitInput;
  }

  std::vector<BenchPointResult> results;
  for (double f : args.freqs) {
    for (double t : args.temps) results.push_back({f, t, std::nullopt, "ok"});
  }

  std::mutex io;
  std::atomic<std::size_t> next{0};
  auto worker = [&] {
    for (std::size_t i = next++; i < results.size(); i = next++) {
      auto& r = results[i];
      BenchConfig cfg;
      cfg.frequency = r.freq;
      cfg.temp = r.temp;
      cfg.amplitude_pp = args.amplitude_pp;
      cfg.periods = args.periods;
      cfg.steps_per_period = args.steps_per_period;
      const auto t0 = std::chrono::steady_clock::now();
      std::string msg;
      try {
        BenchRun run = run_bench(cfg, args.solver);
        if (!run.waves.empty()) {
          write_atomic(args.out_dir / bench_file_name(r.freq, r.temp),
                       [&](std::ostream& os) { write_csv(run.waves, os); });
        }
        if (run.ok()) {
          r.report = compare(run.waves, cfg);
        } else {
          r.status = "nonconvergence";
          msg = *run.error;
        }
      } catch (const std::exception& e) {
        r.status = "error";
        msg = e.what();
      }
      std::lock_guard lock(io);
      if (r.report) {
        out << "bench f=" << label(r.freq) << " temp=" << label(r.temp) << ": rms_error_plus="
            << format_sig(r.report->rms_error_plus, 4) << " dc_power=" << format_sig(r.report->dc_power, 4) << " W, "
            << fixed3(seconds_since(t0)) << " s\n";
      } else {
        err << "bench f=" << label(r.freq) << " temp=" << label(r.temp) << " failed: " << msg << '\n';
      }
    }
  };
  const unsigned jobs = std::max(1u, std::min<unsigned>(args.jobs, static_cast<unsigned>(results.size())));
  if (jobs == 1) {
    worker();
  } else {
    std::vector<std::thread> pool;
    for (unsigned j = 0; j < jobs; ++j) pool.emplace_back(worker);
    for (auto& th : pool) th.join();
  }

  std::size_t failed = 0;
  write_atomic(args.out_dir / "report.csv", [&](std::ostream& os) {
    os << "freq,temp,rms_error_plus,rms_error_minus,peak_error_plus,peak_error_minus,zero_crossing_width,dc_power,"
          "status\n";
    for (const auto& r : results) {
      os << format_csv_value(r.freq) << ',' << format_csv_value(r.temp);
      if (r.report) {
        const auto& p = *r.report;
        for (double v : {p.rms_error_plus, p.rms_error_minus, p.peak_error_plus, p.peak_error_minus,
                         p.zero_crossing_width, p.dc_power}) {
          os << ',' << format_csv_value(v);
        }
      } else {
        ++failed;
        for (int k = 0; k < 6; ++k) os << ",nan";
      }
      os << ',' << r.status << '\n';
    }
  });
  return failed == results.size() ? kExitSolver : kExitOk;
}

// ---------------------------------------------------------------- dc-sweep

struct DcSweepArgs {
  std::optional<fs::path> netlist;  // default: the rectifier bench
  std::string source = "Iin";
  double start = -200e-6;
  double stop = 200e-6;
  double step = 2e-6;
  std::vector<double> temps{25.0};
  fs::path out_dir = "dcsweep_out";
  SolverOptions solver;
};

inline std::string dc_sweep_file_name(double temp) { return "dcsweep_t" + label(temp) + ".csv"; }

inline int cmd_dc_sweep(const DcSweepArgs& args, std::ostream& out, std::ostream& err) {
  if (args.temps.empty()) {
    err << "error: temperature list must not be empty\n";
    return kExitInput;
  }
  if (args.start != args.stop && (args.step == 0.0 || (args.stop - args.start) * args.step < 0.0)) {
    err << "error: step must be non-zero and point from start to stop\n";
    return kExitInput;
  }
  NetlistDocument doc;
  if (args.netlist) {
    auto loaded = load_netlist(*args.netlist, err);
    if (!loaded) return kExitInput;
    doc = std::move(*loaded);
  } else {
    doc = parse_netlist(build_bench_netlist(BenchConfig{}));
  }
  const ElementCard* src = doc.find_element(args.source);
  if (!src || (src->kind != ElementKind::VSource && src->kind != ElementKind::ISource)) {
    err << "error: no independent source named '" << args.source << "'\n";
    return kExitInput;
  }

  int status = kExitOk;
  for (double temp : args.temps) {
    const auto t0 = std::chrono::steady_clock::now();
    CircuitGraph g;
    try {
      g = build_graph(doc, temp);
    } catch (const std::exception& e) {
      err << "error: " << e.what() << '\n';
      return kExitInput;
    }
    auto pts = dc_sweep(g, args.source, args.start, args.stop, args.step, args.solver);
    std::vector<std::string> header{"iin", "out_plus", "out_minus"};
    if (args.netlist) {
      header = {detail::lower_copy(args.source)};
      for (auto& h : detail::op_header(g)) header.push_back(h);
    }
    std::vector<std::vector<double>> cols(header.size());
    std::size_t rows = 0;
    for (const auto& p : pts) {
      if (!p.op) {
        err << "dc-sweep temp=" << label(temp) << ": point " << format_sig(p.value, 6) << " failed: " << p.error << '\n';
        status = kExitSolver;
        continue;
      }
      cols[0].push_back(p.value);
      if (args.netlist) {
        auto row = detail::op_row(*p.op);
        for (std::size_t c = 0; c < row.size(); ++c) cols[c + 1].push_back(row[c]);
      } else {
        cols[1].push_back(p.op->branch_currents[static_cast<std::size_t>(g.find_vsource("Vplus")->branch)]);
        cols[2].push_back(p.op->branch_currents[static_cast<std::size_t>(g.find_vsource("Vminus")->branch)]);
      }
      ++rows;
    }
    const fs::path path = args.out_dir / dc_sweep_file_name(temp);
    write_atomic(path, [&](std::ostream& os) { write_table_csv(os, header, cols); });
    out << "dc-sweep temp=" << label(temp) << ": " << rows << " points, " << fixed3(seconds_since(t0)) << " s -> "
        << path.string() << '\n';
  }
  return status;
}

// ---------------------------------------------------------------- device-curves

struct DeviceCurvesArgs {
  std::string model = "CMOSN";
  std::optional<fs::path> netlist;  // default: the built-in process cards
  std::optional<Polarity> polarity;
  std::vector<double> vgs{0.5, 1.0, 1.5};
  double vds_from = 0.0;
  double vds_to = 1.5;
  double vds_step = 0.01;
  double vbs = 0.0;
  double temp = 27.0;
  double w = 1.5e-6;
  double l = 0.15e-6;
  fs::path output = "device_curves.csv";
};

inline int cmd_device_curves(const DeviceCurvesArgs& args, std::ostream& out, std::ostream& err) {
  NetlistDocument doc;
  if (args.netlist) {
    auto text = read_file(*args.netlist, err);
    if (!text) return kExitInput;
    try {
      doc = parse_netlist(*text);
    } catch (const NetlistError& e) {
      err << args.netlist->string() << ':' << e.line() << ": error: " << e.what() << '\n';
      return kExitInput;
    }
  } else {
    doc = parse_netlist(std::string("* process cards\n") + kProcessModelCards);
  }
  const ModelCard* card = doc.find_model(args.model);
  if (!card) {
    err << "error: unknown model '" << args.model << "'\n";
    return kExitInput;
  }
  if (args.polarity && *args.polarity != card->polarity) {
    err << "error: model " << card->name << " is " << to_string(card->polarity) << ", not "
        << to_string(*args.polarity) << '\n';
    return kExitInput;
  }
  if (args.vgs.empty()) {
    err << "error: empty vgs list\n";
    return kExitInput;
  }
  std::vector<double> vds;
  MosfetParams p;
  try {
    vds = sweep_values(args.vds_from, args.vds_to, args.vds_step);
    p = derive_params(*card, args.w, args.l, args.temp);
  } catch (const std::exception& e) {
    err << "error: " << e.what() << '\n';
    return kExitInput;
  }
  std::vector<std::string> header{"vds"};
  std::vector<std::vector<double>> cols{vds};
  for (double vg : args.vgs) {
    header.push_back("id(vgs=" + format_roundtrip(vg) + ")");
    std::vector<double> col;
    col.reserve(vds.size());
    for (double vd : vds) col.push_back(eval_mosfet(p, vg, vd, args.vbs).id);
    cols.push_back(std::move(col));
  }
  write_atomic(args.output, [&](std::ostream& os) { write_table_csv(os, header, cols); });
  out << "device-curves " << card->name << " temp=" << label(args.temp) << ": " << vds.size() << " x " << args.vgs.size()
      << " points -> " << args.output.string() << '\n';
  return kExitOk;
}

}  // namespace rectsim::cli
