// Command-line driver: simulation, per-run certificate checks, refinement
// studies and the predefined suites. Exit code is 0 iff every gating check
// of the invoked command passed.

#include <CLI11.hpp>
#include <json.hpp>

#include "bfsi/config_io.hpp"
#include "bfsi/golden_records.hpp"
#include "bfsi/harness.hpp"
#include "bfsi/stepper.hpp"

#include <filesystem>
#include <fstream>
#include <iostream>

namespace fs = std::filesystem;
using namespace bfsi;

namespace {

struct GlobalOpts {
  bool quiet = false;
  long seed = 0; // reserved; current suites are deterministic
};

int finish(const Report& report, const std::string& out_dir,
           const GlobalOpts& opts) {
  if (!out_dir.empty()) {
    fs::create_directories(out_dir);
    write_report(report, (fs::path(out_dir) / "report.json").string());
  } else {
    std::cout << report_to_string(report);
  }
  int fails = 0, nas = 0;
  for (const CheckResult& c : report.checks) {
    if (c.gating && c.status == CheckStatus::fail) ++fails;
    if (c.status == CheckStatus::na) ++nas;
  }
  if (!opts.quiet)
    std::cerr << report.name << ": " << report.checks.size() << " checks, "
              << fails << " gating failures, " << nas << " n/a\n";
  return fails == 0 ? 0 : 1;
}

SuiteOverrides parse_overrides(const std::string& path) {
  SuiteOverrides o;
  if (path.empty()) return o;
  std::ifstream in(path);
  if (!in) throw DomainError("cannot open override file: " + path);
  std::ostringstream buf;
  buf << in.rdbuf();
  const auto root = nlohmann::ordered_json::parse(buf.str());
  if (root.contains("grid")) {
    if (root.at("grid").contains("nL")) o.nl = root.at("grid").at("nL").get<int>();
    if (root.at("grid").contains("nR")) o.nr = root.at("grid").at("nR").get<int>();
  }
  if (root.contains("solver")) {
    const auto& s = root.at("solver");
    if (s.contains("dt_max")) o.dt_max = s.at("dt_max").get<double>();
    if (s.contains("t_end")) o.t_end = s.at("t_end").get<double>();
    if (s.contains("sample_stride"))
      o.sample_stride = s.at("sample_stride").get<int>();
  }
  if (root.contains("levels")) o.levels = root.at("levels").get<int>();
  return o;
}

} // namespace

int main(int argc, char** argv) {
  CLI::App app{"1-D viscous Burgers / point-particle interaction simulator "
               "and stability-certificate checker"};
  app.require_subcommand(1);

  GlobalOpts opts;
  app.add_flag("--quiet", opts.quiet, "suppress the summary line on stderr");
  app.add_option("--seed", opts.seed,
                 "reserved; all current suites are deterministic");

  std::string config_path, out_dir, suite_name, override_path;
  int levels = 3;
  int workers = 1;

  CLI::App* sim = app.add_subcommand("simulate", "run one simulation");
  sim->add_option("--config", config_path, "JSON configuration file")
      ->required();
  sim->add_option("--out", out_dir, "output directory")->required();

  CLI::App* iss = app.add_subcommand(
      "iss-check", "run one simulation and evaluate every certificate");
  iss->add_option("--config", config_path, "JSON configuration file")
      ->required();
  iss->add_option("--out", out_dir, "output directory")->required();

  CLI::App* conv = app.add_subcommand(
      "converge", "refinement study (doubling n, halving dt) on a config");
  conv->add_option("--config", config_path, "JSON configuration file")
      ->required();
  conv->add_option("--levels", levels, "number of refinement levels")
      ->default_val(3);

  CLI::App* bounds = app.add_subcommand(
      "bounds-audit", "pointwise bounds and confinement checks on a config");
  bounds->add_option("--config", config_path, "JSON configuration file")
      ->required();

  CLI::App* local = app.add_subcommand(
      "local-eiss", "local exponential ISS checks on a config");
  local->add_option("--config", config_path, "JSON configuration file")
      ->required();

  CLI::App* suite = app.add_subcommand("suite", "run a predefined suite");
  suite->add_option("--name", suite_name, "suite name")->required();
  suite->add_option("--override", override_path,
                    "JSON fragment layered over suite defaults");
  suite->add_option("--workers", workers, "worker threads for the sweep")
      ->default_val(1);

  CLI11_PARSE(app, argc, argv);

  try {
    if (sim->parsed()) {
      const ConfigBundle b = load_config(config_path);
      const Trajectory traj = simulate(b.params, b.grid, b.config, b.signal);
      fs::create_directories(out_dir);
      write_trajectory(traj, (fs::path(out_dir) / "trajectory.csv").string());
      if (!opts.quiet)
        std::cerr << "simulate: " << traj.samples.size() << " samples, "
                  << to_string(traj.termination) << "\n";
      return traj.termination == Termination::completed ? 0 : 1;
    }
    if (iss->parsed()) {
      const ConfigBundle b = load_config(config_path);
      const Trajectory traj = simulate(b.params, b.grid, b.config, b.signal);
      fs::create_directories(out_dir);
      write_trajectory(traj, (fs::path(out_dir) / "trajectory.csv").string());
      const StabilityReport rep = full_report(traj);
      Report report{rep.constants, rep.checks, rep.fit, "iss-check"};
      return finish(report, out_dir, opts);
    }
    if (conv->parsed()) {
      const ConfigBundle b = load_config(config_path);
      RunSpec spec{"config", b.params, b.grid, b.config, b.signal};
      Report report;
      report.name = "converge";
      report.checks = refinement_checks(spec, levels, /*against_golden=*/false);
      return finish(report, "", opts);
    }
    if (bounds->parsed()) {
      const ConfigBundle b = load_config(config_path);
      const Trajectory traj = simulate(b.params, b.grid, b.config, b.signal);
      const StabilityConstants consts =
          compute_constants(b.params, b.signal, b.config.eps_override);
      Report report;
      report.name = "bounds-audit";
      StabilityReport rep;
      rep.constants = consts;
      report.checks = pointwise_checks(traj);
      for (CheckResult& c : confinement_checks(traj, consts))
        report.checks.push_back(std::move(c));
      report.constants = consts;
      return finish(report, "", opts);
    }
    if (local->parsed()) {
      const ConfigBundle b = load_config(config_path);
      const Trajectory traj = simulate(b.params, b.grid, b.config, b.signal);
      const StabilityConstants consts =
          compute_constants(b.params, b.signal, b.config.eps_override);
      Report report;
      report.name = "local-eiss";
      report.constants = consts;
      report.checks = local_eiss_checks(traj, consts);
      return finish(report, "", opts);
    }
    if (suite->parsed()) {
      const SuiteReport sr =
          run_suite(suite_name, parse_overrides(override_path), workers);
      Report report;
      report.name = sr.suite;
      report.checks = sr.checks;
      return finish(report, out_dir, opts);
    }
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 2;
  }
  return 2;
}
