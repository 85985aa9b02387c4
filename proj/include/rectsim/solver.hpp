#pragma once

// Modified nodal analysis. Newton-Raphson falls back to gmin stepping, then
// source stepping. Transient analysis uses a fixed trapezoidal step.
//
// Unknown vector layout: x[k-1] is the voltage of node k (ground is node 0
// and has no row), followed by one branch current per voltage source. A
// voltage-source branch current flows into its + terminal and through the
// source to its - terminal.

#include <algorithm>
#include <cmath>
#include <cstddef>
#include <optional>
#include <stdexcept>
#include <string>
#include <utility>
#include <vector>

#include "rectsim/analysis.hpp"
#include "rectsim/device.hpp"
#include "rectsim/linalg.hpp"
#include "rectsim/netlist.hpp"

namespace rectsim {

class CircuitError : public std::runtime_error {
 public:
  explicit CircuitError(const std::string& what, std::vector<Diagnostic> diags = {})
      : std::runtime_error(what), diagnostics_(std::move(diags)) {}
  const std::vector<Diagnostic>& diagnostics() const noexcept { return diagnostics_; }

 private:
  std::vector<Diagnostic> diagnostics_;
};

class NonConvergenceError : public std::runtime_error {
 public:
  NonConvergenceError(std::string node, double residual, std::vector<std::string> log = {})
      : std::runtime_error(describe(node, residual, log)),
        node_(std::move(node)),
        residual_(residual),
        log_(std::move(log)) {}

  const std::string& node() const noexcept { return node_; }
  double residual() const noexcept { return residual_; }
  const std::vector<std::string>& log() const noexcept { return log_; }

 private:
  static std::string describe(const std::string& node, double residual, const std::vector<std::string>& log) {
    std::string s = "no convergence: largest residual " + format_sig(residual, 4) + " A at node '" + node + "'";
    for (const auto& l : log) s += "\n  " + l;
    return s;
  }
  std::string node_;
  double residual_;
  std::vector<std::string> log_;
};

struct SolverOptions {
  double reltol = 1e-3;
  double abstol_i = 1e-12;  // A
  double vntol = 1e-6;      // V
  double gmin = 1e-12;      // S
  int max_newton_iters = 100;
  int gmin_steps = 10;
  int source_steps = 10;
  double max_voltage_step = 0.3;  // V per node per Newton update

  void check() const {
    if (!(reltol > 0 && abstol_i > 0 && vntol > 0 && gmin > 0 && max_newton_iters > 0 && max_voltage_step > 0) ||
        gmin_steps < 1 || source_steps < 1) {
      throw std::invalid_argument("solver options must be positive");
    }
  }
};

struct CircuitGraph {
  struct Resistor {
    std::string name;
    int a = 0, b = 0;
    double g = 0.0;
  };
  struct Capacitor {
    std::string name;
    int a = 0, b = 0;
    double c = 0.0;
  };
  struct VoltageSource {
    std::string name;
    int p = 0, n = 0;
    SourceSpec spec;
    int branch = 0;
  };
  struct CurrentSource {
    std::string name;
    int p = 0, n = 0;
    SourceSpec spec;
  };
  struct Mosfet {
    std::string name;
    int d = 0, g = 0, s = 0, b = 0;
    MosfetParams params;
  };

  int n = 0;  // nodes excluding ground
  int m = 0;  // voltage-source branches
  double temp = kTnomCelsius;
  std::vector<std::string> node_names;  // index 0 is ground
  std::vector<Resistor> resistors;
  std::vector<Capacitor> capacitors;  // netlist capacitors plus MOSFET overlap caps
  std::vector<VoltageSource> vsources;
  std::vector<CurrentSource> isources;
  std::vector<Mosfet> mosfets;
  std::vector<bool> device_node;  // node touches a MOSFET terminal

  std::size_t unknowns() const { return static_cast<std::size_t>(n + m); }
  bool linear() const { return mosfets.empty(); }

  int node_index(std::string_view name) const {
    for (std::size_t i = 0; i < node_names.size(); ++i) {
      if (node_names[i] == name) return static_cast<int>(i);
    }
    return -1;
  }
  const VoltageSource* find_vsource(std::string_view name) const {
    for (const auto& v : vsources) {
      if (detail::iequals(v.name, name)) return &v;
    }
    return nullptr;
  }
  const CurrentSource* find_isource(std::string_view name) const {
    for (const auto& i : isources) {
      if (detail::iequals(i.name, name)) return &i;
    }
    return nullptr;
  }
};

struct OperatingPoint {
  std::vector<double> voltages;         // length n, node k at [k-1]
  std::vector<double> branch_currents;  // length m
  bool converged = false;
  int iterations = 0;
  double kcl_ratio = 0.0;  // max |residual| / (abstol + reltol * scale) over nodes

  double voltage(int node) const { return node == 0 ? 0.0 : voltages[static_cast<std::size_t>(node - 1)]; }
};

inline CircuitGraph build_graph(const NetlistDocument& doc, double temp) {
  auto diags = validate(doc);
  if (has_errors(diags)) {
    std::string msg = "netlist failed validation:";
    for (const auto& d : diags) {
      if (d.severity == Severity::Error) msg += "\n  " + d.message;
    }
    throw CircuitError(msg, std::move(diags));
  }
  CircuitGraph g;
  g.temp = temp;
  g.node_names = doc.node_names;
  g.n = static_cast<int>(doc.node_names.size()) - 1;
  g.device_node.assign(doc.node_names.size(), false);
  auto idx = [&](const std::string& node) { return doc.nodes.at(node); };

  for (const auto& e : doc.elements) {
    switch (e.kind) {
      case ElementKind::Resistor:
        g.resistors.push_back({e.name, idx(e.nodes[0]), idx(e.nodes[1]), 1.0 / e.value});
        break;
      case ElementKind::Capacitor:
        g.capacitors.push_back({e.name, idx(e.nodes[0]), idx(e.nodes[1]), e.value});
        break;
      case ElementKind::VSource:
        g.vsources.push_back({e.name, idx(e.nodes[0]), idx(e.nodes[1]), e.source, g.m++});
        break;
      case ElementKind::ISource:
        g.isources.push_back({e.name, idx(e.nodes[0]), idx(e.nodes[1]), e.source});
        break;
      case ElementKind::Mosfet: {
        CircuitGraph::Mosfet mos{e.name, idx(e.nodes[0]), idx(e.nodes[1]), idx(e.nodes[2]), idx(e.nodes[3]),
                                 derive_params(*doc.find_model(e.model), e.w, e.l, temp)};
        for (int node : {mos.d, mos.g, mos.s, mos.b}) g.device_node[static_cast<std::size_t>(node)] = true;
        auto caps = overlap_caps(mos.params);
        if (caps.cgd > 0) g.capacitors.push_back({e.name + ".cgd", mos.g, mos.d, caps.cgd});
        if (caps.cgs > 0) g.capacitors.push_back({e.name + ".cgs", mos.g, mos.s, caps.cgs});
        if (caps.cgb > 0) g.capacitors.push_back({e.name + ".cgb", mos.g, mos.b, caps.cgb});
        g.mosfets.push_back(std::move(mos));
        break;
      }
    }
  }
  return g;
}

namespace detail {

/// Linearized capacitor for one time step: i(a->b) = geq * v_ab - ihist.
struct CapCompanion {
  double geq = 0.0;
  double ihist = 0.0;
};

struct StampContext {
  double source_scale = 1.0;
  double gmin = 1e-12;
  double time = 0.0;
  const std::vector<CapCompanion>* caps = nullptr;  // null: capacitors open (DC)
};

class MnaSystem {
 public:
  explicit MnaSystem(const CircuitGraph& g)
      : g_(g), a_(g.unknowns()), b_(g.unknowns(), 0.0), scale_(static_cast<std::size_t>(g.n) + 1, 0.0) {}

  const DenseMatrix& matrix() const { return a_; }
  const std::vector<double>& rhs() const { return b_; }

  void assemble(const std::vector<double>& x, const StampContext& ctx) {
    a_.set_zero();
    std::fill(b_.begin(), b_.end(), 0.0);
    std::fill(scale_.begin(), scale_.end(), 0.0);
    auto v = [&](int node) { return node == 0 ? 0.0 : x[static_cast<std::size_t>(node - 1)]; };

    for (const auto& r : g_.resistors) {
      conductance(r.a, r.b, r.g);
      touch(r.a, r.b, r.g * (v(r.a) - v(r.b)));
    }
    if (ctx.caps) {
      for (std::size_t k = 0; k < g_.capacitors.size(); ++k) {
        const auto& c = g_.capacitors[k];
        const auto& comp = (*ctx.caps)[k];
        conductance(c.a, c.b, comp.geq);
        inject(c.a, c.b, comp.ihist);
        touch(c.a, c.b, comp.geq * (v(c.a) - v(c.b)) - comp.ihist);
      }
    }
    for (const auto& s : g_.isources) {
      const double i = ctx.source_scale * s.spec.value_at(ctx.time);
      inject(s.n, s.p, i);
      touch(s.p, s.n, i);
    }
    for (const auto& s : g_.vsources) {
      const std::size_t br = static_cast<std::size_t>(g_.n + s.branch);
      if (s.p) {
        a_(row(s.p), br) += 1.0;
        a_(br, row(s.p)) += 1.0;
      }
      if (s.n) {
        a_(row(s.n), br) -= 1.0;
        a_(br, row(s.n)) -= 1.0;
      }
      b_[br] = ctx.source_scale * s.spec.value_at(ctx.time);
      touch(s.p, s.n, x[br]);
    }
    for (const auto& mos : g_.mosfets) {
      const double vs = v(mos.s);
      const double vgs = v(mos.g) - vs, vds = v(mos.d) - vs, vbs = v(mos.b) - vs;
      const DeviceEval e = eval_mosfet(mos.params, vgs, vds, vbs);
      const double ieq = e.id - (e.gm * vgs + e.gds * vds + e.gmbs * vbs);
      const double gss = e.gm + e.gds + e.gmbs;
      for (auto [node, sign] : {std::pair{mos.d, 1.0}, std::pair{mos.s, -1.0}}) {
        if (!node) continue;
        const std::size_t r = row(node);
        if (mos.d) a_(r, row(mos.d)) += sign * e.gds;
        if (mos.g) a_(r, row(mos.g)) += sign * e.gm;
        if (mos.b) a_(r, row(mos.b)) += sign * e.gmbs;
        if (mos.s) a_(r, row(mos.s)) -= sign * gss;
        b_[r] -= sign * ieq;
      }
      touch(mos.d, mos.s, e.id);
    }
    for (int node = 1; node <= g_.n; ++node) {
      if (g_.device_node[static_cast<std::size_t>(node)]) {
        a_(row(node), row(node)) += ctx.gmin;
        touch(node, 0, ctx.gmin * v(node));
      }
    }
  }

  /// Largest KCL residual ratio |r_k| / (abstol + reltol * scale_k) and the node that has it.
  std::pair<double, int> kcl_ratio(const std::vector<double>& x, const SolverOptions& opt,
                                   double* worst_residual = nullptr) const {
    auto ax = a_.multiply(x);
    double worst = 0.0;
    int worst_node = 1;
    double worst_abs = 0.0;
    for (int node = 1; node <= g_.n; ++node) {
      const std::size_t r = row(node);
      const double res = std::abs(ax[r] - b_[r]);
      const double ratio = res / (opt.abstol_i + opt.reltol * scale_[static_cast<std::size_t>(node)]);
      if (!(ratio <= worst)) {
        worst = ratio;
        worst_node = node;
        worst_abs = res;
      }
    }
    if (worst_residual) *worst_residual = worst_abs;
    return {worst, worst_node};
  }

 private:
  static std::size_t row(int node) { return static_cast<std::size_t>(node - 1); }

  void conductance(int a, int b, double g) {
    if (a) a_(row(a), row(a)) += g;
    if (b) a_(row(b), row(b)) += g;
    if (a && b) {
      a_(row(a), row(b)) -= g;
      a_(row(b), row(a)) -= g;
    }
  }
  // Current `i` delivered into node `into` and drawn from node `from`.
  void inject(int into, int from, double i) {
    if (into) b_[row(into)] += i;
    if (from) b_[row(from)] -= i;
  }
  void touch(int a, int b, double i) {
    const double m = std::abs(i);
    scale_[static_cast<std::size_t>(a)] = std::max(scale_[static_cast<std::size_t>(a)], m);
    scale_[static_cast<std::size_t>(b)] = std::max(scale_[static_cast<std::size_t>(b)], m);
  }

  const CircuitGraph& g_;
  DenseMatrix a_;
  std::vector<double> b_;
  std::vector<double> scale_;
};

inline OperatingPoint newton(const CircuitGraph& g, std::vector<double> x, const SolverOptions& opt,
                             const StampContext& ctx) {
  if (x.size() != g.unknowns()) throw std::invalid_argument("initial guess has the wrong length");
  for (double v : x) {
    if (!std::isfinite(v)) throw std::invalid_argument("initial guess is not finite");
  }
  MnaSystem sys(g);
  sys.assemble(x, ctx);
  const std::size_t nv = static_cast<std::size_t>(g.n);

  for (int it = 1; it <= opt.max_newton_iters; ++it) {
    std::vector<double> xn = lu_solve(sys.matrix(), sys.rhs());
    bool limited = false;
    double max_dv = 0.0;
    for (std::size_t k = 0; k < xn.size(); ++k) {
      if (!std::isfinite(xn[k])) {
        throw NonConvergenceError(k < nv ? g.node_names[k + 1] : "branch", INFINITY);
      }
      if (k >= nv) continue;
      double dv = xn[k] - x[k];
      if (g.device_node[k + 1] && std::abs(dv) > opt.max_voltage_step) {
        dv = std::copysign(opt.max_voltage_step, dv);
        xn[k] = x[k] + dv;
        limited = true;
      }
      max_dv = std::max(max_dv, std::abs(dv));
    }
    x = std::move(xn);
    sys.assemble(x, ctx);

    double vmax = 0.0;
    for (std::size_t k = 0; k < nv; ++k) vmax = std::max(vmax, std::abs(x[k]));
    auto [ratio, node] = sys.kcl_ratio(x, opt);
    const bool step_ok = g.linear() || (!limited && max_dv <= opt.vntol + opt.reltol * vmax);
    if (ratio <= 1.0 && step_ok) {
      OperatingPoint op;
      op.voltages.assign(x.begin(), x.begin() + static_cast<std::ptrdiff_t>(nv));
      op.branch_currents.assign(x.begin() + static_cast<std::ptrdiff_t>(nv), x.end());
      op.converged = true;
      op.iterations = it;
      op.kcl_ratio = ratio;
      return op;
    }
  }
  double residual = 0.0;
  auto [ratio, node] = sys.kcl_ratio(x, opt, &residual);
  (void)ratio;
  throw NonConvergenceError(g.node_names[static_cast<std::size_t>(node)], residual);
}

inline std::vector<double> pack(const OperatingPoint& op) {
  std::vector<double> x = op.voltages;
  x.insert(x.end(), op.branch_currents.begin(), op.branch_currents.end());
  return x;
}

}  // namespace detail

/// One damped Newton solve with capacitors open.
inline OperatingPoint newton_solve(const CircuitGraph& g, const std::vector<double>& initial,
                                   const SolverOptions& opt, double source_scale = 1.0,
                                   std::optional<double> gmin_override = std::nullopt) {
  opt.check();
  detail::StampContext ctx;
  ctx.source_scale = source_scale;
  ctx.gmin = gmin_override.value_or(opt.gmin);
  return detail::newton(g, initial, opt, ctx);
}

/// DC operating point: plain Newton, then gmin stepping, then source stepping.
inline OperatingPoint solve_dc(const CircuitGraph& g, const SolverOptions& opt,
                               std::optional<std::vector<double>> initial = std::nullopt) {
  opt.check();
  std::vector<std::string> log;
  const std::vector<double> zero(g.unknowns(), 0.0);
  try {
    return newton_solve(g, initial.value_or(zero), opt);
  } catch (const SingularMatrixError& e) {
    log.push_back(std::string("newton: ") + e.what());
  } catch (const NonConvergenceError& e) {
    log.push_back(std::string("newton: ") + e.what());
  }

  try {
    std::vector<double> x = zero;
    const double g_start = 1e-2;
    const double decades = std::log10(g_start / opt.gmin);
    OperatingPoint op;
    for (int k = 0; k <= opt.gmin_steps; ++k) {
      double gmin = k == opt.gmin_steps ? opt.gmin : g_start * std::pow(10.0, -decades * k / opt.gmin_steps);
      op = newton_solve(g, x, opt, 1.0, gmin);
      x = detail::pack(op);
    }
    return op;
  } catch (const SingularMatrixError& e) {
    log.push_back(std::string("gmin stepping: ") + e.what());
  } catch (const NonConvergenceError& e) {
    log.push_back(std::string("gmin stepping: ") + e.what());
  }

  std::string node = "?";
  double residual = 0.0;
  try {
    std::vector<double> x = zero;
    OperatingPoint op;
    for (int k = 1; k <= opt.source_steps; ++k) {
      op = newton_solve(g, x, opt, static_cast<double>(k) / opt.source_steps);
      x = detail::pack(op);
    }
    return op;
  } catch (const SingularMatrixError& e) {
    log.push_back(std::string("source stepping: ") + e.what());
  } catch (const NonConvergenceError& e) {
    log.push_back(std::string("source stepping: ") + e.what());
    node = e.node();
    residual = e.residual();
  }
  throw NonConvergenceError(node, residual, std::move(log));
}

struct TransferPoint {
  double value = 0.0;
  std::optional<OperatingPoint> op;
  std::string error;  // set when op is empty
};

/// Points start, start+step, ... up to stop inclusive; a final partial step is clamped to stop.
inline std::vector<double> sweep_values(double start, double stop, double step) {
  if (start == stop) return {start};
  if (step == 0.0 || (stop - start) * step < 0.0) {
    throw std::invalid_argument("sweep step must be non-zero and point from start to stop");
  }
  const double span = (stop - start) / step;
  const auto full = static_cast<long long>(std::floor(span + 1e-9));
  std::vector<double> out;
  out.reserve(static_cast<std::size_t>(full) + 2);
  for (long long k = 0; k <= full; ++k) out.push_back(start + static_cast<double>(k) * step);
  if (std::abs(out.back() - stop) > 1e-9 * std::abs(step)) {
    out.push_back(stop);
  } else {
    out.back() = stop;
  }
  return out;
}

inline std::vector<TransferPoint> dc_sweep(const CircuitGraph& graph, std::string_view source, double start,
                                           double stop, double step, const SolverOptions& opt) {
  CircuitGraph g = graph;
  SourceSpec* spec = nullptr;
  for (auto& v : g.vsources) {
    if (detail::iequals(v.name, source)) spec = &v.spec;
  }
  for (auto& i : g.isources) {
    if (detail::iequals(i.name, source)) spec = &i.spec;
  }
  if (!spec) throw std::invalid_argument("no independent source named '" + std::string(source) + "'");

  std::vector<TransferPoint> out;
  std::optional<std::vector<double>> warm;
  for (double value : sweep_values(start, stop, step)) {
    *spec = SourceSpec::dc(value);
    TransferPoint pt{value, std::nullopt, {}};
    try {
      if (warm) {
        try {
          pt.op = newton_solve(g, *warm, opt);
        } catch (const std::runtime_error&) {
          pt.op = solve_dc(g, opt);
        }
      } else {
        pt.op = solve_dc(g, opt);
      }
      warm = detail::pack(*pt.op);
    } catch (const std::runtime_error& e) {
      pt.error = e.what();
    }
    out.push_back(std::move(pt));
  }
  return out;
}

enum class InitialCondition { ZeroStart, FromOp };

struct TransientOptions {
  double tstep = 0.0;
  double tstop = 0.0;
  InitialCondition ic = InitialCondition::FromOp;

  void check() const {
    if (!(tstep > 0.0) || !(tstop >= 10.0 * tstep)) {
      throw std::invalid_argument("transient needs tstep > 0 and tstop >= 10 * tstep");
    }
  }
};

struct TransientResult {
  WaveformSet waves;
  double max_kcl_ratio = 0.0;
  long newton_iterations = 0;
  std::size_t accepted_points = 0;
  std::optional<std::string> error;  // set when the run aborted
  double error_time = 0.0;

  bool ok() const { return !error.has_value(); }
};

inline std::string node_wave_name(std::string_view node) { return "v(" + std::string(node) + ")"; }
inline std::string branch_wave_name(std::string_view element) { return "i(" + std::string(element) + ")"; }

/// Fixed-step transient. The first step is backward Euler, the rest use the
/// trapezoidal rule. All node voltages and source currents are sampled at
/// each accepted time point.
inline TransientResult solve_transient(const CircuitGraph& g, const TransientOptions& topt,
                                       const SolverOptions& opt) {
  topt.check();
  opt.check();
  const double h = topt.tstep;
  const auto steps = static_cast<long long>(std::llround(topt.tstop / h));
  const std::size_t nv = static_cast<std::size_t>(g.n);
  const std::size_t ncap = g.capacitors.size();

  std::vector<double> times;
  std::vector<std::vector<double>> node_cols(nv), branch_cols(static_cast<std::size_t>(g.m)),
      isrc_cols(g.isources.size());
  TransientResult result;

  std::vector<double> cap_v(ncap, 0.0), cap_i(ncap, 0.0);
  std::vector<detail::CapCompanion> comp(ncap);
  auto cap_voltage = [&](const OperatingPoint& op, std::size_t k) {
    return op.voltage(g.capacitors[k].a) - op.voltage(g.capacitors[k].b);
  };
  auto record = [&](double t, const OperatingPoint& op) {
    times.push_back(t);
    for (std::size_t k = 0; k < nv; ++k) node_cols[k].push_back(op.voltages[k]);
    for (std::size_t k = 0; k < branch_cols.size(); ++k) branch_cols[k].push_back(op.branch_currents[k]);
    for (std::size_t k = 0; k < g.isources.size(); ++k) isrc_cols[k].push_back(g.isources[k].spec.value_at(t));
    result.max_kcl_ratio = std::max(result.max_kcl_ratio, op.kcl_ratio);
    result.newton_iterations += op.iterations;
    ++result.accepted_points;
  };

  OperatingPoint op;
  try {
    if (topt.ic == InitialCondition::FromOp) {
      op = solve_dc(g, opt);
      for (std::size_t k = 0; k < ncap; ++k) cap_v[k] = cap_voltage(op, k);
    } else {
      // An infinitesimal backward-Euler step from the all-zero state.
      const double h0 = h * 1e-9;
      for (std::size_t k = 0; k < ncap; ++k) comp[k] = {g.capacitors[k].c / h0, 0.0};
      detail::StampContext ctx{1.0, opt.gmin, 0.0, &comp};
      op = detail::newton(g, std::vector<double>(g.unknowns(), 0.0), opt, ctx);
      for (std::size_t k = 0; k < ncap; ++k) {
        cap_v[k] = cap_voltage(op, k);
        cap_i[k] = comp[k].geq * cap_v[k];
      }
    }
    record(0.0, op);
  } catch (const std::runtime_error& e) {
    result.error = e.what();
    result.error_time = 0.0;
    return result;
  }

  std::vector<double> x = detail::pack(op);
  for (long long step = 1; step <= steps; ++step) {
    const double t = static_cast<double>(step) * h;
    const bool euler = step == 1;
    for (std::size_t k = 0; k < ncap; ++k) {
      const double c = g.capacitors[k].c;
      if (euler) {
        comp[k].geq = c / h;
        comp[k].ihist = comp[k].geq * cap_v[k];
      } else {
        comp[k].geq = 2.0 * c / h;
        comp[k].ihist = comp[k].geq * cap_v[k] + cap_i[k];
      }
    }
    detail::StampContext ctx{1.0, opt.gmin, t, &comp};
    try {
      op = detail::newton(g, x, opt, ctx);
    } catch (const std::runtime_error& e) {
      result.error = e.what();
      result.error_time = t;
      break;
    }
    for (std::size_t k = 0; k < ncap; ++k) {
      cap_v[k] = cap_voltage(op, k);
      cap_i[k] = comp[k].geq * cap_v[k] - comp[k].ihist;
    }
    x = detail::pack(op);
    record(t, op);
  }

  if (times.size() >= 2) {
    TimeBase tb = make_time_base(std::move(times));
    for (std::size_t k = 0; k < nv; ++k) {
      result.waves.add(Waveform(node_wave_name(g.node_names[k + 1]), tb, std::move(node_cols[k])), Unit::Volt);
    }
    for (const auto& v : g.vsources) {
      result.waves.add(Waveform(branch_wave_name(v.name), tb, std::move(branch_cols[static_cast<std::size_t>(v.branch)])),
                       Unit::Amp);
    }
    for (std::size_t k = 0; k < g.isources.size(); ++k) {
      result.waves.add(Waveform(branch_wave_name(g.isources[k].name), tb, std::move(isrc_cols[k])), Unit::Amp);
    }
  }
  return result;
}

}  // namespace rectsim
