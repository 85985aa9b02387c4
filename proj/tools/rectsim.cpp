// rectsim: SPICE-subset circuit simulator and rectifier bench driver.

#include <iostream>
#include <string>
#include <vector>

#include "CLI11.hpp"
#include "rectsim/cli.hpp"
#include "rectsim/units.hpp"

namespace {

using rectsim::cli::kExitInput;

void add_solver_flags(CLI::App* cmd, std::string& reltol, std::string& gmin, int& max_iters) {
  cmd->add_option("--reltol", reltol, "Newton relative tolerance");
  cmd->add_option("--gmin", gmin, "Minimum conductance from device nodes to ground (S)");
  cmd->add_option("--max-iters", max_iters, "Newton iteration limit")->check(CLI::PositiveNumber);
}

rectsim::SolverOptions solver_options(const std::string& reltol, const std::string& gmin, int max_iters) {
  rectsim::SolverOptions opt;
  if (!reltol.empty()) opt.reltol = rectsim::parse_number(reltol);
  if (!gmin.empty()) opt.gmin = rectsim::parse_number(gmin);
  opt.max_newton_iters = max_iters;
  opt.check();
  return opt;
}

}  // namespace

int main(int argc, char** argv) {
  // Numeric flags are read as text so they accept engineering suffixes.
  CLI::App app{"rectsim - compact analog circuit simulator with a dual-phase half-wave rectifier bench"};
  app.require_subcommand(1);

  std::string reltol, gmin;
  int max_iters = rectsim::SolverOptions{}.max_newton_iters;

  // run
  rectsim::cli::RunArgs run_args;
  std::string run_out;
  auto* run = app.add_subcommand("run", "Simulate every analysis directive in a netlist");
  run->add_option("netlist", run_args.netlist, "Netlist file")->required();
  run->add_option("-o,--output", run_out, "Output CSV path");
  add_solver_flags(run, reltol, gmin, max_iters);

  // bench
  rectsim::cli::BenchArgs bench_args;
  std::string freq_list, temp_list, amp;
  auto* bench = app.add_subcommand("bench", "Run the rectifier bench over frequencies and temperatures");
  bench->add_option("--freq", freq_list, "Comma-separated frequencies (default 1k,10k,100k,1meg,10meg,100meg)");
  bench->add_option("--temp", temp_list, "Comma-separated temperatures in C (default 25)");
  bench->add_option("--amp", amp, "Input amplitude, peak-to-peak (default 400u)");
  bench->add_option("--periods", bench_args.periods, "Simulated input periods");
  bench->add_option("--steps-per-period", bench_args.steps_per_period, "Fixed time steps per period");
  bench->add_option("-j,--jobs", bench_args.jobs, "Concurrent bench points");
  bench->add_option("-o,--output", bench_args.out_dir, "Output directory");
  add_solver_flags(bench, reltol, gmin, max_iters);

  // dc-sweep
  rectsim::cli::DcSweepArgs dc_args;
  std::string dc_netlist, dc_from = "-200u", dc_to = "200u", dc_step = "2u", dc_temps;
  auto* dc = app.add_subcommand("dc-sweep", "DC transfer sweep (default: rectifier bench input current)");
  dc->add_option("--netlist", dc_netlist, "Netlist file (default: built-in rectifier bench)");
  dc->add_option("--source", dc_args.source, "Swept independent source");
  dc->add_option("--from", dc_from, "Sweep start");
  dc->add_option("--to", dc_to, "Sweep stop");
  dc->add_option("--step", dc_step, "Sweep increment");
  dc->add_option("--temp", dc_temps, "Comma-separated temperatures in C (default 25)");
  dc->add_option("-o,--output", dc_args.out_dir, "Output directory");
  add_solver_flags(dc, reltol, gmin, max_iters);

  // device-curves
  rectsim::cli::DeviceCurvesArgs dev_args;
  std::string dev_netlist, dev_polarity, dev_vgs, vds_from, vds_to, vds_step, dev_temp, dev_w, dev_l, dev_vbs;
  auto* dev = app.add_subcommand("device-curves", "Id versus Vds curves of a model card");
  dev->add_option("--model", dev_args.model, "Model name (default CMOSN)");
  dev->add_option("--netlist", dev_netlist, "Netlist or card file holding the model (default: built-in cards)");
  dev->add_option("--polarity", dev_polarity, "Expected polarity, NMOS or PMOS");
  dev->add_option("--vgs", dev_vgs, "Comma-separated gate-source voltages (default 0.5,1,1.5)");
  dev->add_option("--vds-from", vds_from, "Drain-source sweep start (default 0)");
  dev->add_option("--vds-to", vds_to, "Drain-source sweep stop (default 1.5)");
  dev->add_option("--vds-step", vds_step, "Drain-source sweep step (default 10m)");
  dev->add_option("--vbs", dev_vbs, "Bulk-source voltage (default 0)");
  dev->add_option("--temp", dev_temp, "Temperature in C (default 27)");
  dev->add_option("--w", dev_w, "Channel width (default 1.5u)");
  dev->add_option("--l", dev_l, "Drawn channel length (default 0.15u)");
  dev->add_option("-o,--output", dev_args.output, "Output CSV path");

  try {
    app.parse(argc, argv);
  } catch (const CLI::CallForHelp& e) {
    return app.exit(e);
  } catch (const CLI::CallForAllHelp& e) {
    return app.exit(e);
  } catch (const CLI::ParseError& e) {
    app.exit(e);
    return kExitInput;
  }

  try {
    if (*run) {
      run_args.solver = solver_options(reltol, gmin, max_iters);
      if (!run_out.empty()) run_args.output = run_out;
      return rectsim::cli::cmd_run(run_args, std::cout, std::cerr);
    }
    if (*bench) {
      bench_args.solver = solver_options(reltol, gmin, max_iters);
      if (!freq_list.empty()) bench_args.freqs = rectsim::parse_number_list(freq_list);
      if (!temp_list.empty()) bench_args.temps = rectsim::parse_number_list(temp_list);
      if (!amp.empty()) bench_args.amplitude_pp = rectsim::parse_number(amp);
      return rectsim::cli::cmd_bench(bench_args, std::cout, std::cerr);
    }
    if (*dc) {
      dc_args.solver = solver_options(reltol, gmin, max_iters);
      if (!dc_netlist.empty()) dc_args.netlist = dc_netlist;
      dc_args.start = rectsim::parse_number(dc_from);
      dc_args.stop = rectsim::parse_number(dc_to);
      dc_args.step = rectsim::parse_number(dc_step);
      if (!dc_temps.empty()) dc_args.temps = rectsim::parse_number_list(dc_temps);
      return rectsim::cli::cmd_dc_sweep(dc_args, std::cout, std::cerr);
    }
    if (*dev) {
      if (!dev_netlist.empty()) dev_args.netlist = dev_netlist;
      if (!dev_polarity.empty()) {
        if (rectsim::detail::iequals(dev_polarity, "NMOS")) {
          dev_args.polarity = rectsim::Polarity::Nmos;
        } else if (rectsim::detail::iequals(dev_polarity, "PMOS")) {
          dev_args.polarity = rectsim::Polarity::Pmos;
        } else {
          std::cerr << "error: --polarity must be NMOS or PMOS\n";
          return kExitInput;
        }
      }
      if (!dev_vgs.empty()) dev_args.vgs = rectsim::parse_number_list(dev_vgs);
      if (!vds_from.empty()) dev_args.vds_from = rectsim::parse_number(vds_from);
      if (!vds_to.empty()) dev_args.vds_to = rectsim::parse_number(vds_to);
      if (!vds_step.empty()) dev_args.vds_step = rectsim::parse_number(vds_step);
      if (!dev_vbs.empty()) dev_args.vbs = rectsim::parse_number(dev_vbs);
      if (!dev_temp.empty()) dev_args.temp = rectsim::parse_number(dev_temp);
      if (!dev_w.empty()) dev_args.w = rectsim::parse_number(dev_w);
      if (!dev_l.empty()) dev_args.l = rectsim::parse_number(dev_l);
      return rectsim::cli::cmd_device_curves(dev_args, std::cout, std::cerr);
    }
  } catch (const rectsim::NumberFormatError& e) {
    std::cerr << "error: " << e.what() << '\n';
    return kExitInput;
  } catch (const std::invalid_argument& e) {
    std::cerr << "error: " << e.what() << '\n';
    return kExitInput;
  }
  return kExitInput;
}
