#include <catch_amalgamated.hpp>

#include <cmath>
#include <filesystem>
#include <fstream>
#include <sstream>

#include "rectsim/solver.hpp"

using namespace rectsim;
using Catch::Matchers::WithinAbs;
using Catch::Matchers::WithinRel;

namespace {

CircuitGraph graph(const std::string& text, double temp = 27.0) { return build_graph(parse_netlist(text), temp); }

std::string corpus(const char* name) {
  std::ifstream is(std::filesystem::path(RECTSIM_CORPUS_DIR) / name);
  std::ostringstream ss;
  ss << is.rdbuf();
  return ss.str();
}

std::string data(const char* name) {
  std::ifstream is(std::filesystem::path(RECTSIM_TEST_DATA_DIR) / name);
  std::ostringstream ss;
  ss << is.rdbuf();
  return ss.str();
}

double rc_error(double tstep) {
  auto g = graph(corpus("rc_lowpass.cir"));
  auto r = solve_transient(g, {tstep, 5e-3, InitialCondition::ZeroStart}, {});
  REQUIRE(r.ok());
  const auto& v = r.waves.get("v(out)");
  double worst = 0.0;
  for (std::size_t i = 0; i < v.size(); ++i) {
    worst = std::max(worst, std::abs(v.values()[i] - (1.0 - std::exp(-v.times()[i] / 1e-3))));
  }
  return worst;
}

}  // namespace

TEST_CASE("resistive divider converges in one iteration", "[solver]") {
  auto g = graph(corpus("divider.cir"));
  auto op = solve_dc(g, {});
  CHECK(op.converged);
  CHECK(op.iterations == 1);
  CHECK_THAT(op.voltage(g.node_index("mid")), WithinRel(1.5, 1e-12));
  CHECK_THAT(op.voltage(g.node_index("top")), WithinRel(3.0, 1e-12));
  // Branch current flows into the + terminal: the source delivers 1.5 mA.
  CHECK_THAT(op.branch_currents[0], WithinRel(-1.5e-3, 1e-9));
  CHECK(op.kcl_ratio <= 1.0);
}

TEST_CASE("current source drives current from n+ to n- through itself", "[solver]") {
  auto g = graph("t\nI1 0 a DC 1m\nR1 a 0 1k\n");
  auto op = solve_dc(g, {});
  CHECK_THAT(op.voltage(1), WithinRel(1.0, 1e-12));
}

TEST_CASE("sinusoidal sources take their offset at DC", "[solver]") {
  auto g = graph("t\nV1 a 0 SIN(0.5 1 1k)\nR1 a 0 1k\n");
  CHECK_THAT(solve_dc(g, {}).voltage(1), WithinRel(0.5, 1e-12));
}

TEST_CASE("diode-connected NMOS matches the closed-form operating point", "[solver]") {
  auto g = graph(corpus("nmos_diode.cir"));
  auto op = solve_dc(g, {});
  CHECK(op.converged);
  CHECK(op.kcl_ratio <= 1.0);
  const double v = op.voltage(g.node_index("d"));
  CHECK_THAT(v, WithinRel(1.0385389518116235, 1e-6));
  CHECK_THAT(-op.branch_currents[0], WithinRel(4.6146104818837652e-5, 1e-5));
}

TEST_CASE("capacitors are open at DC", "[solver]") {
  auto g = graph(corpus("rc_lowpass.cir"));
  CHECK_THAT(solve_dc(g, {}).voltage(g.node_index("out")), WithinRel(1.0, 1e-12));
}

TEST_CASE("MOSFET overlap capacitors join the graph", "[solver]") {
  auto g = graph(corpus("nmos_diode.cir"));
  CHECK(g.capacitors.size() == 3);
  CHECK(g.device_node[static_cast<std::size_t>(g.node_index("d"))]);
  CHECK_FALSE(g.device_node[static_cast<std::size_t>(g.node_index("vdd"))]);
}

TEST_CASE("invalid circuits are refused before solving", "[solver]") {
  CHECK_THROWS_AS(graph("t\nV1 a b 1\nR1 a b 1k\n"), CircuitError);
  try {
    graph("t\nV1 a 0 1\nM1 a a 0 0 NOPE W=1u L=1u\n");
    FAIL("expected CircuitError");
  } catch (const CircuitError& e) {
    CHECK_FALSE(e.diagnostics().empty());
  }
}

TEST_CASE("non-convergence reports the worst node and the fallback log", "[solver]") {
  auto g = graph(data("nonconvergent.cir"));
  try {
    solve_dc(g, {});
    FAIL("expected NonConvergenceError");
  } catch (const NonConvergenceError& e) {
    CHECK(g.node_index(e.node()) > 0);
    CHECK(std::string(e.what()).find(e.node()) != std::string::npos);
    CHECK(e.log().size() == 3);
  }
}

TEST_CASE("voltage loops are singular", "[solver]") {
  auto g = graph("t\nV1 a 0 1\nV2 a 0 2\nR1 a 0 1k\n");
  CHECK_THROWS_AS(solve_dc(g, {}), NonConvergenceError);
}

TEST_CASE("solver options are validated", "[solver]") {
  SolverOptions bad;
  bad.reltol = 0.0;
  CHECK_THROWS_AS(solve_dc(graph(corpus("divider.cir")), bad), std::invalid_argument);
  CHECK_THROWS_AS(solve_transient(graph(corpus("divider.cir")), {1e-6, 5e-6}, {}), std::invalid_argument);
}

TEST_CASE("sweep points", "[solver]") {
  CHECK(sweep_values(0, 1, 0.25) == std::vector<double>{0, 0.25, 0.5, 0.75, 1});
  auto clamp = sweep_values(0, 1, 0.3);
  CHECK(clamp.size() == 5);
  CHECK(clamp.back() == 1.0);
  CHECK(sweep_values(1, 0, -0.5) == std::vector<double>{1, 0.5, 0});
  CHECK(sweep_values(2, 2, 1) == std::vector<double>{2});
  CHECK_THROWS_AS(sweep_values(0, 1, -0.1), std::invalid_argument);
}

TEST_CASE("DC sweep of a diode-connected NMOS is monotone", "[solver][property]") {
  auto g = graph(corpus("nmos_diode.cir"));
  auto pts = dc_sweep(g, "vdd", 0.0, 1.5, 0.05, {});
  REQUIRE(pts.size() == 31);
  double prev = -1.0;
  for (const auto& p : pts) {
    REQUIRE(p.op);
    const double v = p.op->voltage(g.node_index("d"));
    CHECK(v >= prev);
    CHECK(v <= p.value + 1e-9);
    prev = v;
  }
  CHECK_THROWS_AS(dc_sweep(g, "nope", 0, 1, 0.1, {}), std::invalid_argument);
}

TEST_CASE("RC step response is second-order accurate", "[solver]") {
  const double coarse = rc_error(20e-6);
  const double fine = rc_error(10e-6);
  CHECK(fine < 1e-3);
  const double order = std::log2(coarse / fine);
  CHECK(order > 1.7);
  CHECK(order < 2.3);
}

TEST_CASE("transient from the operating point stays at rest", "[solver]") {
  auto g = graph(corpus("rc_lowpass.cir"));
  auto r = solve_transient(g, {1e-5, 1e-3, InitialCondition::FromOp}, {});
  REQUIRE(r.ok());
  for (double v : r.waves.get("v(out)").values()) CHECK_THAT(v, WithinAbs(1.0, 1e-9));
  CHECK(r.accepted_points == 101);
  CHECK(r.max_kcl_ratio <= 1.0);
}

TEST_CASE("transient records every node, branch and current source", "[solver]") {
  auto g = graph("t\nI1 0 a SIN(0 1m 1k)\nR1 a 0 1k\nC1 a 0 1n\nV1 b 0 1\nR2 b 0 1k\n");
  auto r = solve_transient(g, {1e-6, 1e-4, InitialCondition::FromOp}, {});
  REQUIRE(r.ok());
  CHECK(r.waves.find("v(a)"));
  CHECK(r.waves.find("v(b)"));
  CHECK(r.waves.find("i(V1)"));
  const auto& i1 = r.waves.get("i(I1)");
  CHECK_THAT(i1.at(2.5e-5), WithinAbs(1e-3 * std::sin(2 * M_PI * 1e3 * 2.5e-5), 1e-15));
}
