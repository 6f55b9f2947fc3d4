#include "concnls/cli.hpp"

#include <fstream>
#include <iostream>
#include <optional>
#include <sstream>

#include "CLI11.hpp"
#include "concnls/config.hpp"
#include "concnls/harness.hpp"
#include "concnls/io.hpp"
#include "concnls/point_solver.hpp"
#include "concnls/scaled_solver.hpp"
#include "json.hpp"

namespace concnls {

namespace {

struct Options {
  std::string config_path;
  std::vector<double> epsilons;
  std::optional<double> dt;
  std::optional<double> horizon;
  std::string out_dir;
  bool allow_inadmissible = false;
  bool self_convergence = false;
  std::optional<std::size_t> threads;
};

void error_line(std::ostream& err, const char* kind, int code, const std::string& message) {
  nlohmann::json j{{"error", kind}, {"exit_code", code}, {"message", message}};
  err << j.dump() << '\n';
}

Config effective_config(const Options& o) {
  Config cfg = load_config(o.config_path);
  if (!o.epsilons.empty()) cfg.epsilons = o.epsilons;
  if (o.dt) cfg.dt = *o.dt;
  if (o.horizon) cfg.horizon = *o.horizon;
  if (o.allow_inadmissible) cfg.allow_inadmissible = true;
  if (o.threads) cfg.threads = *o.threads;
  return cfg;
}

std::filesystem::path output_dir(const Options& o, const char* fallback) {
  return o.out_dir.empty() ? std::filesystem::path(fallback) : std::filesystem::path(o.out_dir);
}

void echo_config(const std::filesystem::path& dir, const Config& cfg) {
  std::filesystem::create_directories(dir);
  std::ofstream(dir / "config.json") << cfg.to_json();
}

std::string label(double v) {
  std::ostringstream os;
  os << v;
  return os.str();
}

int cmd_run_scaled(const Options& o, std::ostream& out) {
  const Config cfg = effective_config(o);
  if (cfg.epsilons.empty()) throw ConfigError("run-scaled needs epsilon (config or --epsilon)");
  const auto dir = output_dir(o, "results");
  echo_config(dir, cfg);
  for (double eps : cfg.epsilons) {
    const ScaledProblem p = cfg.scaled_problem(eps);
    const auto steps = output_lattice(p.steps(), cfg.output_count);
    const ScaledTrajectory traj = run_scaled(p, steps);
    const std::string tag = "scaled_eps" + label(eps);
    write_scaled_csv(dir / (tag + ".csv"), traj);
    for (std::size_t i = 0; i < traj.snapshots.size(); ++i) {
      write_snapshot(dir / "snapshots" / (tag + "_step" + std::to_string(traj.output_steps[i]) + ".bin"),
                     traj.snapshots[i]);
    }
    out << "eps = " << eps << ": " << traj.steps() << " steps, final mass " << traj.mass.back() << ", energy "
        << traj.energy.back() << ", H1 " << traj.h1.back() << "\n";
  }
  out << "wrote " << dir.string() << "\n";
  return kExitOk;
}

int cmd_run_point(const Options& o, std::ostream& out) {
  const Config cfg = effective_config(o);
  const auto dir = output_dir(o, "results");
  echo_config(dir, cfg);
  const PointProblem p = cfg.point_problem();
  const auto steps = output_lattice(p.steps(), cfg.output_count);
  const PointTrajectory traj = run_point(p, steps);
  write_point_csv(dir / "point.csv", traj);
  for (std::size_t i = 0; i < traj.snapshots.size(); ++i) {
    write_snapshot(dir / "snapshots" / ("point_step" + std::to_string(traj.output_steps[i]) + ".bin"),
                   traj.snapshots[i]);
  }
  double jump = 0.0;
  for (const auto& row : traj.jump_residuals) {
    for (double v : row) jump = std::max(jump, v);
  }
  out << traj.charges.steps() << " steps, final mass " << traj.mass.back() << ", energy " << traj.energy.back()
      << ", max jump residual " << jump << "\n";
  out << "wrote " << dir.string() << "\n";
  return kExitOk;
}

int cmd_converge(const Options& o, std::ostream& out) {
  ExperimentPlan plan;
  plan.config = effective_config(o);
  plan.output_dir = output_dir(o, "results");
  const ExperimentResult r = run_convergence_experiment(plan);
  out << r.report;
  if (o.self_convergence) {
    const SelfConvergenceResult s = run_self_convergence(plan);
    out << "\n" << s.report;
    std::ofstream(plan.output_dir / "report.txt", std::ios::app) << "\n" << s.report;
  }
  out << "wrote " << plan.output_dir.string() << "\n";
  return kExitOk;
}

int cmd_validate_domain(const Options& o, std::ostream& out) {
  ExperimentPlan plan;
  plan.config = effective_config(o);
  const DomainResult r = validate_domain(plan);
  out << r.report;
  if (!o.out_dir.empty()) {
    echo_config(o.out_dir, plan.config);
    std::ofstream(std::filesystem::path(o.out_dir) / "domain_report.txt") << r.report;
  }
  return r.ok ? kExitOk : kExitCheckFailed;
}

}  // namespace

int run_cli(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
  CLI::App app{"Concentrated-nonlinearity NLS: scaled and point-limit solvers, convergence experiments",
               args.empty() ? "concnls" : args.front()};
  app.require_subcommand(1, 1);

  Options o;
  auto add_common = [&](CLI::App* sub, bool needs_config) {
    auto* c = sub->add_option("--config", o.config_path, "JSON problem description");
    if (needs_config) c->required()->check(CLI::ExistingFile);
    sub->add_option("--epsilon", o.epsilons, "epsilon value(s); replaces the config ladder")->expected(1, -1);
    sub->add_option("--dt", o.dt, "time step");
    sub->add_option("--T", o.horizon, "time horizon");
    sub->add_option("--out", o.out_dir, "output directory");
    sub->add_option("--threads", o.threads, "worker threads for epsilon runs (0: all cores)");
    sub->add_flag("--allow-inadmissible", o.allow_inadmissible, "run outside the guaranteed-global regime");
  };
  auto* run_scaled_cmd = app.add_subcommand("run-scaled", "solve the epsilon-scaled problem");
  auto* run_point_cmd = app.add_subcommand("run-point", "solve the point-concentrated limit problem");
  auto* converge_cmd = app.add_subcommand("converge", "epsilon ladder against the limit problem");
  auto* self_test_cmd = app.add_subcommand("self-test", "quick consistency checks of every module");
  auto* domain_cmd = app.add_subcommand("validate-domain", "repeat the smallest-epsilon comparison with L doubled");
  for (auto* s : {run_scaled_cmd, run_point_cmd, converge_cmd, domain_cmd}) add_common(s, true);
  converge_cmd->add_flag("--self-convergence", o.self_convergence, "also run the dt self-convergence study");

  std::vector<std::string> rev(args.rbegin(), args.rend());
  if (!rev.empty()) rev.pop_back();
  try {
    app.parse(rev);
  } catch (const CLI::CallForHelp&) {
    out << app.help();
    return kExitOk;
  } catch (const CLI::CallForAllHelp&) {
    out << app.help("", CLI::AppFormatMode::All);
    return kExitOk;
  } catch (const CLI::ParseError& e) {
    err << app.help();
    error_line(err, "usage", kExitConfig, e.what());
    return kExitConfig;
  }

  try {
    if (self_test_cmd->parsed()) {
      const int failures = run_self_test(out);
      return failures == 0 ? kExitOk : kExitCheckFailed;
    }
    if (run_scaled_cmd->parsed()) return cmd_run_scaled(o, out);
    if (run_point_cmd->parsed()) return cmd_run_point(o, out);
    if (converge_cmd->parsed()) return cmd_converge(o, out);
    if (domain_cmd->parsed()) return cmd_validate_domain(o, out);
  } catch (const AdmissibilityError& e) {
    error_line(err, "admissibility", kExitConfig, e.what());
    return kExitConfig;
  } catch (const ConfigError& e) {
    error_line(err, "config", kExitConfig, e.what());
    return kExitConfig;
  } catch (const SolverError& e) {
    error_line(err, "solver", kExitSolver, e.what());
    return kExitSolver;
  } catch (const std::filesystem::filesystem_error& e) {
    error_line(err, "config", kExitConfig, e.what());
    return kExitConfig;
  }
  error_line(err, "usage", kExitConfig, "no subcommand");
  return kExitConfig;
}

}  // namespace concnls
