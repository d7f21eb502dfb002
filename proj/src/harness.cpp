#include "bfsi/harness.hpp"

#include "bfsi/golden_records.hpp"
#include "bfsi/stepper.hpp"

#include <atomic>
#include <cmath>
#include <sstream>
#include <thread>

namespace bfsi {

namespace {

std::string num(double v) {
  std::ostringstream os;
  os << v;
  return os.str();
}

CheckResult make_check(std::string name, double bound, double value,
                       bool gating = true) {
  CheckResult r;
  r.name = std::move(name);
  const double scale = std::max({1.0, std::abs(bound), std::abs(value)});
  r.margin = (bound - value) / scale;
  r.status = *r.margin >= -kCheckTol ? CheckStatus::pass : CheckStatus::fail;
  r.gating = gating;
  return r;
}

double max_abs(const std::vector<double>& v) {
  double worst = 0.0;
  for (double x : v) worst = std::max(worst, std::abs(x));
  return worst;
}

SolverConfig default_solver() { return SolverConfig{}; }

void apply_overrides(RunSpec& spec, const SuiteOverrides& o) {
  if (o.nl) spec.grid.nl = *o.nl;
  if (o.nr) spec.grid.nr = *o.nr;
  if (o.dt_max) spec.config.dt_max = *o.dt_max;
  if (o.t_end) spec.config.t_end = *o.t_end;
  if (o.sample_stride) spec.config.sample_stride = *o.sample_stride;
}

// Max over samples of |h - h_golden| at the stored sample lattice.
double golden_h_error(const Trajectory& traj, const GoldenRecord& rec) {
  double worst = 0.0;
  for (const SampleRecord& s : traj.samples)
    worst = std::max(worst, std::abs(s.h - golden_h_at(rec, s.t)));
  return worst;
}

void append_rate_checks(std::vector<CheckResult>& out, const RunSpec& spec,
                        const Trajectory& traj, const StabilityConstants& c) {
  if (!(spec.params.spring_gain > 0.0) || !c.eta) return;
  if (!std::holds_alternative<ZeroSignal>(spec.signal)) return;
  try {
    const DecayFit fit = fit_decay_rate(traj);
    out.push_back(
        make_check(spec.name + "/rate/fitted>=eta", fit.rate, *c.eta));
    CheckResult sharp;
    sharp.name = spec.name + "/rate/sharpness(fitted/eta)";
    sharp.margin = fit.rate / *c.eta;
    sharp.time = fit.window_hi;
    sharp.status = CheckStatus::pass;
    sharp.gating = false;
    out.push_back(std::move(sharp));
  } catch (const std::runtime_error& e) {
    CheckResult r;
    r.name = spec.name + "/rate/fitted>=eta";
    r.status = CheckStatus::fail;
    r.margin = -1.0;
    out.push_back(std::move(r));
  }
}

void append_run_report(std::vector<CheckResult>& out, const RunSpec& spec,
                       const Trajectory& traj, bool rate_checks) {
  const StabilityReport rep = full_report(traj);
  for (CheckResult c : rep.checks) {
    c.name = spec.name + "/" + c.name;
    out.push_back(std::move(c));
  }
  if (rate_checks) append_rate_checks(out, spec, traj, rep.constants);
}

} // namespace

std::string signal_label(const InputSignal& signal) {
  return std::visit(
      [](const auto& s) -> std::string {
        using T = std::decay_t<decltype(s)>;
        if constexpr (std::is_same_v<T, ZeroSignal>) {
          return "zero";
        } else if constexpr (std::is_same_v<T, ExpDecay>) {
          return "expdecay(" + num(s.a) + "," + num(s.lambda) + ")";
        } else if constexpr (std::is_same_v<T, RectPulse>) {
          return "rectpulse(" + num(s.a) + "," + num(s.t0) + "," + num(s.t1) +
                 ")";
        } else if constexpr (std::is_same_v<T, PowerTail>) {
          return "powertail(" + num(s.a) + "," + num(s.p) + ")";
        } else {
          return "sampled(n=" + std::to_string(s.values.size()) + ")";
        }
      },
      signal);
}

std::string profile_label(const ProfileDescriptor& profile) {
  return std::visit(
      [](const auto& p) -> std::string {
        using T = std::decay_t<decltype(p)>;
        if constexpr (std::is_same_v<T, ZeroProfile>) {
          return "zero";
        } else if constexpr (std::is_same_v<T, SineMode>) {
          return "sine(" + num(p.amplitude) + "," + std::to_string(p.mode) +
                 ")";
        } else if constexpr (std::is_same_v<T, Bump>) {
          return "bump(" + num(p.amplitude) + "," + num(p.center) + "," +
                 num(p.width) + ")";
        } else {
          return "samples(n=" + std::to_string(p.y.size()) + ")";
        }
      },
      profile);
}

std::vector<Trajectory> sweep(const std::vector<RunSpec>& specs, int workers) {
  std::vector<Trajectory> results(specs.size());
  if (specs.empty()) return results;
  workers = std::max(1, std::min<int>(workers, specs.size()));
  if (workers == 1) {
    for (std::size_t i = 0; i < specs.size(); ++i)
      results[i] = simulate(specs[i].params, specs[i].grid, specs[i].config,
                            specs[i].signal);
    return results;
  }
  std::atomic<std::size_t> next{0};
  auto worker = [&]() {
    for (;;) {
      const std::size_t i = next.fetch_add(1);
      if (i >= specs.size()) return;
      results[i] = simulate(specs[i].params, specs[i].grid, specs[i].config,
                            specs[i].signal);
    }
  };
  std::vector<std::thread> pool;
  for (int w = 0; w < workers; ++w) pool.emplace_back(worker);
  for (std::thread& t : pool) t.join();
  return results;
}

std::vector<RunSpec> iss_sweep_matrix(const SuiteOverrides& overrides) {
  const double gains[] = {0.0, 0.5, 1.0, 5.0};
  const InputSignal signals[] = {ZeroSignal{}, ExpDecay{0.5, 1.0},
                                 RectPulse{1.0, 0.0, 2.0}};
  const ProfileDescriptor profiles[] = {ZeroProfile{}, SineMode{0.5, 1}};
  std::vector<RunSpec> specs;
  for (double k : gains) {
    for (const InputSignal& sig : signals) {
      for (const ProfileDescriptor& v0 : profiles) {
        RunSpec spec;
        spec.params.spring_gain = k;
        spec.params.target = 0.0;
        spec.params.initial_position = 0.2;
        spec.params.initial_velocity = 0.3;
        spec.params.initial_profile = v0;
        spec.grid = Grid{200, 200};
        spec.config = default_solver();
        spec.signal = sig;
        spec.name = "K=" + num(k) + ",u=" + signal_label(sig) +
                    ",v0=" + profile_label(v0);
        apply_overrides(spec, overrides);
        specs.push_back(std::move(spec));
      }
    }
  }
  return specs;
}

std::vector<RunSpec> local_eiss_gallery(const SuiteOverrides& overrides) {
  std::vector<RunSpec> specs;
  auto add = [&specs, &overrides](std::string name, double k, double h1,
                                  double h0, double g0, ProfileDescriptor v0,
                                  InputSignal sig) {
    RunSpec spec;
    spec.name = std::move(name);
    spec.params.spring_gain = k;
    spec.params.target = h1;
    spec.params.initial_position = h0;
    spec.params.initial_velocity = g0;
    spec.params.initial_profile = std::move(v0);
    spec.grid = Grid{200, 200};
    spec.config = default_solver();
    spec.signal = std::move(sig);
    apply_overrides(spec, overrides);
    specs.push_back(std::move(spec));
  };
  // Three configurations meeting both hypotheses, two violating them.
  add("applicable/zero-fluid", 1.0, 0.0, 0.1, 0.0, ZeroProfile{},
      ZeroSignal{});
  add("applicable/stiff-spring", 50.0, 0.3, 0.35, 0.02, SineMode{0.05, 1},
      ExpDecay{0.05, 2.0});
  add("applicable/negative-target", 10.0, -0.4, -0.5, 0.0, ZeroProfile{},
      RectPulse{0.02, 0.0, 1.0});
  add("na/equal-targets", 1.0, 0.2, 0.2, 0.0, ZeroProfile{}, ZeroSignal{});
  add("na/near-wall", 100.0, 0.9, 0.95, 0.0, ZeroProfile{}, ZeroSignal{});
  return specs;
}

namespace {

RunSpec golden_run_spec() {
  const ReferenceConfig ref = reference_configs().front();
  RunSpec spec;
  spec.name = ref.name;
  spec.params = ref.params;
  spec.signal = ref.signal;
  spec.grid = Grid{200, 200};
  spec.config = default_solver();
  spec.config.t_end = 1.0;
  return spec;
}

std::vector<CheckResult> converge_suite(const SuiteOverrides& overrides,
                                        int workers) {
  (void)workers;
  RunSpec base = golden_run_spec();
  base.grid = Grid{80, 80};
  base.config.dt_max = 4e-3;
  apply_overrides(base, overrides);
  const int levels = overrides.levels.value_or(3);
  std::vector<CheckResult> checks =
      refinement_checks(base, levels, golden_available());

  // Spatial-order sub-study: dt small enough to isolate the O(dxi^2) error,
  // endpoint h(1) against the stored fine-oracle value.
  if (golden_available()) {
    const GoldenRecord& rec = golden_record("golden");
    const double h_ref = golden_h_at(rec, 1.0);
    const int ns[] = {25, 50, 100};
    std::vector<double> errs;
    for (int n : ns) {
      RunSpec spec = golden_run_spec();
      spec.grid = Grid{n, n};
      spec.config.dt_max = 2e-5;
      spec.config.sample_stride = 1 << 24; // endpoint only
      const Trajectory traj =
          simulate(spec.params, spec.grid, spec.config, spec.signal);
      errs.push_back(std::abs(traj.samples.back().h - h_ref));
    }
    const double order =
        std::log2(errs.front() / errs.back()) / (errs.size() - 1);
    checks.push_back(make_check("converge/spatial-order>=1.8", order, 1.8));
  } else {
    CheckResult r;
    r.name = "converge/spatial-order>=1.8";
    r.status = CheckStatus::na;
    checks.push_back(std::move(r));
  }
  return checks;
}

std::vector<CheckResult> oracle_compare_suite(const SuiteOverrides& overrides,
                                              int workers) {
  std::vector<CheckResult> checks;
  const struct {
    int n;
    double dt;
  } levels[] = {{200, 1e-3}, {400, 5e-4}};

  std::vector<RunSpec> specs;
  for (const ReferenceConfig& ref : reference_configs()) {
    for (const auto& lv : levels) {
      RunSpec spec;
      spec.name = ref.name + "/n=" + std::to_string(lv.n) +
                  ",dt=" + num(lv.dt);
      spec.params = ref.params;
      spec.signal = ref.signal;
      spec.grid = Grid{lv.n, lv.n};
      spec.config = default_solver();
      spec.config.t_end = 1.0;
      spec.config.dt_max = lv.dt;
      apply_overrides(spec, overrides);
      specs.push_back(std::move(spec));
    }
  }
  const std::vector<Trajectory> trajs = sweep(specs, workers);

  for (std::size_t c = 0; c < reference_configs().size(); ++c) {
    const std::string& name = reference_configs()[c].name;
    if (!golden_available()) {
      CheckResult r;
      r.name = name + "/h-err<=5e-3";
      r.status = CheckStatus::na;
      checks.push_back(std::move(r));
      continue;
    }
    const GoldenRecord& rec = golden_record(name);
    double errs[2], bounds[2];
    for (int l = 0; l < 2; ++l) {
      const Trajectory& traj = trajs[2 * c + l];
      errs[l] = golden_h_error(traj, rec);
      const double dxi = 1.0 / levels[l].n;
      const double scale = 1.0 + traj.samples.front().energy;
      bounds[l] = 10.0 * (levels[l].dt + dxi * dxi) * scale;
    }
    checks.push_back(make_check(name + "/h-err<=5e-3", 5e-3, errs[0]));
    checks.push_back(
        make_check(name + "/h-err<=10(dt+dxi^2)(1+E0)[n=200]", bounds[0],
                   errs[0]));
    checks.push_back(
        make_check(name + "/h-err<=10(dt+dxi^2)(1+E0)[n=400]", bounds[1],
                   errs[1]));
    checks.push_back(make_check(name + "/h-err-decreasing", errs[0], errs[1]));
    const double order = std::log2(errs[0] / errs[1]);
    checks.push_back(make_check(name + "/temporal-order>=0.9", order, 0.9));
  }
  return checks;
}

std::vector<CheckResult> local_eiss_suite(const SuiteOverrides& overrides,
                                          int workers) {
  const std::vector<RunSpec> specs = local_eiss_gallery(overrides);
  const std::vector<Trajectory> trajs = sweep(specs, workers);
  std::vector<CheckResult> checks;
  for (std::size_t i = 0; i < specs.size(); ++i) {
    const bool expect_applicable =
        specs[i].name.rfind("applicable/", 0) == 0;
    const StabilityReport rep = full_report(trajs[i]);
    bool actual_applicable = false;
    for (const CheckResult& c : rep.checks)
      if (c.name == "local-eiss/applicable")
        actual_applicable = c.status == CheckStatus::pass;
    CheckResult routing;
    routing.name = specs[i].name + "/routing";
    routing.status = expect_applicable == actual_applicable
                         ? CheckStatus::pass
                         : CheckStatus::fail;
    routing.margin = routing.status == CheckStatus::pass ? 0.0 : -1.0;
    checks.push_back(std::move(routing));
    for (CheckResult c : rep.checks) {
      c.name = specs[i].name + "/" + c.name;
      checks.push_back(std::move(c));
    }
  }
  return checks;
}

} // namespace

std::vector<CheckResult> refinement_checks(const RunSpec& base, int levels,
                                           bool against_golden) {
  std::vector<CheckResult> checks;
  std::vector<double> max_re, max_re1, max_rm, h_errs;
  const GoldenRecord* rec = nullptr;
  if (against_golden && golden_available()) {
    rec = &golden_record(reference_configs().front().name);
  }
  for (int level = 0; level < levels; ++level) {
    RunSpec spec = base;
    const int factor = 1 << level;
    spec.grid.nl = base.grid.nl * factor;
    spec.grid.nr = base.grid.nr * factor;
    spec.config.dt_max = base.config.dt_max / factor;
    const Trajectory traj =
        simulate(spec.params, spec.grid, spec.config, spec.signal);
    max_re.push_back(max_abs(energy_residual(traj)));
    max_re1.push_back(max_abs(energy_residual_factor1(traj)));
    max_rm.push_back(max_abs(logmass_residual(traj)));
    if (rec) h_errs.push_back(golden_h_error(traj, *rec));
  }

  for (int k = 0; k + 1 < levels; ++k) {
    const double ratio = max_re[k + 1] / max_re[k];
    checks.push_back(make_check(
        "converge/R_E-ratio[" + std::to_string(k) + "]<=0.6", 0.6, ratio));
  }

  // The factor-1 energy residual must stall at a nonzero plateau when the
  // input actually forces the system.
  if (!is_zero_after(base.signal, 0.0)) {
    const double separation = max_re1.back() / (10.0 * max_re.back());
    const double decay = max_re1.back() / max_re1.front();
    checks.push_back(make_check("converge/R_E-factor1-separation>=10x",
                                separation, 1.0));
    checks.push_back(
        make_check("converge/R_E-factor1-no-convergence", decay, 0.5));
  }

  const double rm_order =
      std::log2(max_rm.front() / max_rm.back()) / (levels - 1);
  checks.push_back(make_check("converge/R_M-order>=0.9", rm_order, 0.9));
  checks.push_back(
      make_check("converge/R_M-finest<=1e-3", 1e-3, max_rm.back()));

  if (rec) {
    const double h_order =
        std::log2(h_errs.front() / h_errs.back()) / (levels - 1);
    checks.push_back(make_check("converge/h-temporal-order>=0.9", h_order, 0.9));
    for (int k = 0; k + 1 < levels; ++k)
      checks.push_back(make_check(
          "converge/h-err-decreasing[" + std::to_string(k) + "]",
          h_errs[k], h_errs[k + 1]));
  } else if (against_golden) {
    CheckResult r;
    r.name = "converge/h-temporal-order>=0.9";
    r.status = CheckStatus::na;
    checks.push_back(std::move(r));
  }
  return checks;
}

SuiteReport run_suite(const std::string& name, const SuiteOverrides& overrides,
                      int workers) {
  SuiteReport report;
  report.suite = name;
  if (name == "iss-sweep") {
    const std::vector<RunSpec> specs = iss_sweep_matrix(overrides);
    const std::vector<Trajectory> trajs = sweep(specs, workers);
    for (std::size_t i = 0; i < specs.size(); ++i)
      append_run_report(report.checks, specs[i], trajs[i],
                        /*rate_checks=*/true);
  } else if (name == "bounds-audit") {
    std::vector<RunSpec> specs;
    {
      RunSpec spec = golden_run_spec();
      spec.name = "golden-expdecay";
      spec.config.t_end = 20.0;
      apply_overrides(spec, overrides);
      specs.push_back(std::move(spec));
    }
    {
      RunSpec spec;
      spec.name = "k0-rectpulse";
      spec.params.spring_gain = 0.0;
      spec.params.initial_velocity = 0.3;
      spec.params.initial_profile = SineMode{1.0, 1};
      spec.grid = Grid{200, 200};
      spec.config = default_solver();
      spec.signal = RectPulse{1.0, 0.0, 2.0};
      apply_overrides(spec, overrides);
      specs.push_back(std::move(spec));
    }
    {
      RunSpec spec;
      spec.name = "powertail-not-L1";
      spec.params.spring_gain = 1.0;
      spec.params.initial_position = 0.2;
      spec.params.initial_velocity = 0.3;
      spec.params.initial_profile = SineMode{0.5, 1};
      spec.grid = Grid{200, 200};
      spec.config = default_solver();
      spec.signal = PowerTail{1.0, 0.75};
      apply_overrides(spec, overrides);
      specs.push_back(std::move(spec));
    }
    const std::vector<Trajectory> trajs = sweep(specs, workers);
    for (std::size_t i = 0; i < specs.size(); ++i)
      append_run_report(report.checks, specs[i], trajs[i],
                        /*rate_checks=*/false);
  } else if (name == "converge") {
    report.checks = converge_suite(overrides, workers);
  } else if (name == "oracle-compare") {
    report.checks = oracle_compare_suite(overrides, workers);
  } else if (name == "local-eiss") {
    report.checks = local_eiss_suite(overrides, workers);
  } else {
    throw DomainError("unknown suite: " + name);
  }
  report.passed = all_gating_pass(report.checks);
  return report;
}

std::vector<std::string> suite_names() {
  return {"iss-sweep", "bounds-audit", "converge", "oracle-compare",
          "local-eiss"};
}

} // namespace bfsi
