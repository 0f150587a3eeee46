#include "cli.hpp"

#include <algorithm>
#include <fstream>
#include <iostream>
#include <memory>

#include <CLI11.hpp>
#include <fmt/format.h>

#include "foodchain/equilibria.hpp"
#include "foodchain/io.hpp"
#include "foodchain/model.hpp"
#include "foodchain/stability.hpp"

namespace foodchain::cli {

namespace {

constexpr std::string_view kCommands[] = {"simulate", "equilibria",       "stability",
                                          "global",   "check-invariance", "sweep"};

class HelpRequested : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

struct RawOptions {
  std::string command;
  std::string params;
  std::string frame = "original";
  double m = 1.0;
  double h = 0.05;
  double t_end = 500.0;
  std::size_t memory = 0;
  int corrector_iterations = 1;
  double x0 = 1.2, y0 = 1.2, z0 = 1.2;
  std::string output;
  std::string report;
  std::string param = "a0";
  double lo = 1.6, hi = 2.1;
  std::size_t count = 101;
  double transient = 300.0;
  unsigned threads = 0;
  double cluster_tol = 1e-2;
};

void build(CLI::App& app, RawOptions& o) {
  app.description("Fractional-order tritrophic food chain: simulation, equilibria, stability.");
  app.set_help_flag("--help", "Print this help message and exit");
  app.set_config("--config", "", "key = value file; command-line flags take precedence");
  app.add_option("command", o.command, "simulate|equilibria|stability|global|check-invariance|sweep")
      ->required();
  app.add_option("--params", o.params, "Parameter file (key = value)");
  app.add_option("--frame", o.frame, "Frame of the parameter file and initial state: original|rescaled");
  app.add_option("--m", o.m, "Fractional order in (0, 1]");
  app.add_option("--h", o.h, "Step size");
  app.add_option("--t-end", o.t_end, "Final time");
  app.add_option("--memory", o.memory, "Keep only this many history terms (0 = full memory)");
  app.add_option("--corrector-iterations", o.corrector_iterations, "Corrector passes per step");
  app.add_option("--x0", o.x0, "Initial prey");
  app.add_option("--y0", o.y0, "Initial intermediate predator");
  app.add_option("--z0", o.z0, "Initial top predator");
  app.add_option("-o,--output", o.output, "Output file (default stdout)");
  app.add_option("--report", o.report, "Sweep: doubling report file");
  app.add_option("--param", o.param, "Sweep: original parameter to vary");
  app.add_option("--lo", o.lo, "Sweep: lower end of the range");
  app.add_option("--hi", o.hi, "Sweep: upper end of the range");
  app.add_option("--count", o.count, "Sweep: number of grid points");
  app.add_option("--transient", o.transient, "Sweep: time discarded before collecting maxima");
  app.add_option("--threads", o.threads, "Sweep: worker threads (0 = all cores)");
  app.add_option("--cluster-tol", o.cluster_tol, "Sweep: relative clustering tolerance");
}

RunConfig validate(const RawOptions& o, const CLI::App& app) {
  RunConfig cfg;
  if (std::find(std::begin(kCommands), std::end(kCommands), o.command) == std::end(kCommands)) {
    throw UsageError(fmt::format("unknown command '{}'", o.command));
  }
  cfg.command = o.command;

  if (o.params.empty()) throw UsageError("missing required option --params");
  cfg.params_path = o.params;

  if (o.frame == "original") {
    cfg.frame = Frame::original;
  } else if (o.frame == "rescaled") {
    cfg.frame = Frame::rescaled;
  } else {
    throw UsageError(fmt::format("--frame: expected original or rescaled, got '{}'", o.frame));
  }

  try {
    (void)FractionalOrder{o.m};
  } catch (const std::invalid_argument& e) {
    throw UsageError(fmt::format("--m: {}", e.what()));
  }
  cfg.m = o.m;

  cfg.solver.step = o.h;
  cfg.solver.t_end = o.t_end;
  cfg.solver.corrector_iterations = o.corrector_iterations;
  if (o.memory > 0) cfg.solver.memory_truncation = o.memory;
  try {
    cfg.solver.validate();
  } catch (const std::invalid_argument& e) {
    throw UsageError(fmt::format("solver options: {}", e.what()));
  }

  for (auto [name, v] : {std::pair{"--x0", o.x0}, {"--y0", o.y0}, {"--z0", o.z0}}) {
    if (!(v >= 0.0) || !std::isfinite(v)) {
      throw UsageError(fmt::format("{}: initial populations must be nonnegative", name));
    }
  }
  cfg.initial = {o.x0, o.y0, o.z0, cfg.frame};

  if (!o.output.empty()) cfg.output_path = o.output;
  if (!o.report.empty()) cfg.report_path = o.report;

  if (cfg.command == "sweep") {
    if (cfg.frame != Frame::original) {
      throw UsageError("sweep: parameter file must be in the original frame");
    }
    SweepSpec spec;
    spec.parameter = o.param;
    spec.lo = o.lo;
    spec.hi = o.hi;
    spec.count = o.count;
    spec.m = o.m;
    spec.sim = cfg.solver;
    spec.transient = o.transient;
    spec.initial = cfg.initial;
    spec.threads = o.threads;
    spec.cluster_tolerance = o.cluster_tol;
    try {
      spec.validate();
    } catch (const std::invalid_argument& e) {
      throw UsageError(fmt::format("sweep: {}", e.what()));
    }
    cfg.sweep = spec;
  } else {
    for (const char* flag : {"--param", "--lo", "--hi", "--count", "--transient", "--threads",
                             "--cluster-tol", "--report"}) {
      if (app.count(flag) > 0) {
        throw UsageError(fmt::format("{} is only valid for the sweep command", flag));
      }
    }
  }
  return cfg;
}

struct Params {
  std::optional<OriginalParams> original;
  RescaledParams rescaled;
};

Params load(const RunConfig& cfg) {
  Params p;
  if (cfg.frame == Frame::original) {
    p.original = load_original_params(cfg.params_path);
    p.rescaled = rescale_params(*p.original);
  } else {
    p.rescaled = load_rescaled_params(cfg.params_path);
  }
  return p;
}

}  // namespace

RunConfig parse_config(const std::vector<std::string>& args) {
  CLI::App app;
  RawOptions raw;
  build(app, raw);
  std::vector<std::string> reversed(args.rbegin(), args.rend());
  try {
    app.parse(reversed);
  } catch (const CLI::CallForHelp&) {
    throw HelpRequested(app.help());
  } catch (const CLI::ParseError& e) {
    throw UsageError(e.what());
  }
  return validate(raw, app);
}

int run(const RunConfig& cfg, std::ostream& out, std::ostream& err) {
  Params params;
  try {
    params = load(cfg);
  } catch (const std::exception& e) {
    err << "error: " << e.what() << '\n';
    return kUsage;
  }

  std::ofstream file;
  if (cfg.output_path) {
    file.open(*cfg.output_path);
    if (!file) {
      err << "error: cannot open output file '" << *cfg.output_path << "'\n";
      return kUsage;
    }
  }
  std::ostream& sink = cfg.output_path ? file : out;
  const RescaledParams& rp = params.rescaled;
  const FractionalOrder order{cfg.m};

  try {
    if (cfg.command == "simulate") {
      const VectorField field = cfg.frame == Frame::original ? original_field(*params.original)
                                                             : rescaled_field(rp);
      const Trajectory traj = solve_caputo_pece(field, order, cfg.initial, cfg.solver);
      write_trajectory_csv(sink, traj);
    } else if (cfg.command == "equilibria") {
      write_equilibria_report(sink, all_equilibria(rp), rp,
                              params.original ? &*params.original : nullptr);
    } else if (cfg.command == "check-invariance") {
      write_invariance_report(sink, invariance_check(rp));
    } else if (cfg.command == "stability" || cfg.command == "global") {
      const auto eq = interior_equilibrium(rp);
      if (!eq) {
        err << "error: interior equilibrium does not exist for these parameters\n";
        return kNumericalFailure;
      }
      if (cfg.command == "stability") {
        write_stability_report(sink, eigen_arg_check(jacobian_at(rp, eq->state), order));
      } else {
        write_global_report(sink, global_stability_check(rp, eq->state));
      }
    } else if (cfg.command == "sweep") {
      const SweepResult result = run_sweep(*cfg.sweep, *params.original);
      for (const auto& pt : result.points) {
        if (pt.failed) {
          err << "warning: " << result.parameter << "=" << format_number(pt.value)
              << " failed: " << pt.error << '\n';
        }
      }
      write_sweep_csv(sink, result);
      const auto doubling = detect_first_doubling(result);
      if (cfg.report_path) {
        std::ofstream rep(*cfg.report_path);
        if (!rep) {
          err << "error: cannot open report file '" << *cfg.report_path << "'\n";
          return kUsage;
        }
        write_doubling_report(rep, result, doubling);
      } else {
        write_doubling_report(cfg.output_path ? out : err, result, doubling);
      }
    }
  } catch (const SolverError& e) {
    err << "error: integration failed at t = " << format_number(e.time()) << ": " << e.what()
        << '\n';
    return kNumericalFailure;
  } catch (const std::invalid_argument& e) {
    err << "error: " << e.what() << '\n';
    return kUsage;
  } catch (const std::exception& e) {
    err << "error: " << e.what() << '\n';
    return kNumericalFailure;
  }
  return kOk;
}

int main_entry(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
  RunConfig cfg;
  try {
    cfg = parse_config(args);
  } catch (const HelpRequested& help) {
    out << help.what();
    return kOk;
  } catch (const UsageError& e) {
    err << "usage error: " << e.what() << '\n';
    return kUsage;
  }
  return run(cfg, out, err);
}

}  // namespace foodchain::cli
