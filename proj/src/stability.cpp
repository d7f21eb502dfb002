#include "bfsi/stability.hpp"

#include <algorithm>
#include <cmath>

namespace bfsi {

namespace {

constexpr double kInf = std::numeric_limits<double>::infinity();

double data_sum(const SystemParams& params, double u_l2) {
  const double dh = params.target - params.initial_position;
  return profile_l2_sq(params.initial_profile) +
         params.initial_velocity * params.initial_velocity +
         params.spring_gain * dh * dh + u_l2 * u_l2;
}

} // namespace

double c_global(const SystemParams& params, double u_l2) {
  const double s = data_sum(params, u_l2);
  return 10.0 * (s + std::sqrt(s));
}

ConfinementEnvelope confinement_envelope(double t, const SystemParams& params,
                                         double u_l2_upto_t,
                                         double u_l2_global) {
  const double h0 = params.initial_position;
  const double x = c_global(params, u_l2_global) +
                   2.0 * params.spring_gain * t +
                   std::sqrt(t) * u_l2_upto_t;
  const double ex = std::exp(x);
  ConfinementEnvelope env;
  env.c1 = 2.0 / (1.0 + std::max(2.0, (1.0 - h0) / (1.0 + h0)) * ex);
  env.c2 = 2.0 / (1.0 + std::max(2.0, (1.0 + h0) / (1.0 - h0)) * ex);
  return env;
}

double alpha_bound(const SystemParams& params, double u_l2, double u_l1) {
  if (!std::isfinite(u_l1))
    throw NotApplicableError("alpha bound requires u in L1(0,inf)");
  const double h0 = params.initial_position;
  const double h1 = params.target;
  const double s = data_sum(params, u_l2);
  const double arg = std::log((1.0 + h1) / (1.0 + h0)) -
                     std::log((1.0 - h1) / (1.0 - h0)) +
                     10.0 * (s + std::sqrt(s)) + u_l1;
  const double c = (1.0 + h0) / (1.0 - h0) * std::exp(arg);
  return std::min(1.0, 2.0 / (1.0 + c));
}

double epsilon_choice(double spring_gain, double alpha) {
  if (!(spring_gain > 0.0))
    throw NotApplicableError("epsilon choice requires K > 0");
  if (!(alpha > 0.0 && alpha <= 1.0))
    throw DomainError("epsilon choice requires alpha in (0,1]");
  const double eps =
      1.0 / (16.0 * (34.0 + 2.0 / (spring_gain * alpha * alpha)));
  // eps must satisfy 0 <= eps <= min{1/8, K/8}.
  if (!(eps <= std::min(0.125, spring_gain / 8.0)))
    throw NumericalError("epsilon outside its admissible window", 0.0, 0.0);
  return eps;
}

double eta_rate(double spring_gain, double alpha) {
  const double eps = epsilon_choice(spring_gain, alpha);
  const double denom = 34.0 + 2.0 / (spring_gain * alpha * alpha);
  return 0.25 * std::min(1.0 / denom, 3.0 * spring_gain * eps / 4.0);
}

double local_alpha(double target) {
  return 0.5 * std::min(1.0 - target, 1.0 + target);
}

StabilityConstants compute_constants(const SystemParams& params,
                                     const InputSignal& signal,
                                     std::optional<double> eps_override) {
  StabilityConstants c;
  c.u_l2 = l2_norm(signal);
  c.u_l1 = l1_norm(signal);
  c.c_global = c_global(params, c.u_l2);
  c.alpha_local = local_alpha(params.target);
  try {
    c.alpha = alpha_bound(params, c.u_l2, c.u_l1);
  } catch (const NotApplicableError&) {
  }
  if (params.spring_gain > 0.0 && c.alpha) {
    c.eps = epsilon_choice(params.spring_gain, *c.alpha);
    c.eta = eta_rate(params.spring_gain, *c.alpha);
  }
  if (eps_override) c.eps = *eps_override;
  return c;
}

std::string to_string(CheckStatus status) {
  switch (status) {
    case CheckStatus::pass: return "pass";
    case CheckStatus::fail: return "fail";
    case CheckStatus::na: return "na";
  }
  return "na";
}

namespace {

// Tracks the worst normalized margin of a pointwise inequality
// value <= bound, margin = (bound - value)/max(1, |bound|, |value|).
class WorstMargin {
public:
  void update(double bound, double value, double t) {
    const double scale = std::max({1.0, std::abs(bound), std::abs(value)});
    const double m = (bound - value) / scale;
    if (!seen_ || m < margin_) {
      margin_ = m;
      time_ = t;
      seen_ = true;
    }
  }
  CheckResult result(std::string name, bool gating = true) const {
    CheckResult r;
    r.name = std::move(name);
    r.gating = gating;
    if (!seen_) {
      r.status = CheckStatus::na;
      return r;
    }
    r.margin = margin_;
    r.time = time_;
    r.status = margin_ >= -kCheckTol ? CheckStatus::pass : CheckStatus::fail;
    return r;
  }

private:
  bool seen_ = false;
  double margin_ = 0.0;
  double time_ = 0.0;
};

constexpr double kQuarterPiSq = M_PI * M_PI / 4.0;

CheckResult na_check(std::string name, bool gating = false) {
  CheckResult r;
  r.name = std::move(name);
  r.status = CheckStatus::na;
  r.gating = gating;
  return r;
}

} // namespace

std::vector<CheckResult> pointwise_checks(const Trajectory& traj) {
  WorstMargin a2_bound, a1_bound, a1_left_bound, a1_right_bound, p_bound,
      trace_bound, poincare, norm_lo, norm_hi;
  for (const SampleRecord& s : traj.samples) {
    a2_bound.update(4.0 * s.diss, std::abs(s.a2), s.t);
    a1_bound.update(12.0 * s.diss, std::abs(s.a1), s.t);
    a1_left_bound.update(6.0 * s.diss_left, std::abs(s.a1_left), s.t);
    a1_right_bound.update(6.0 * s.diss_right, std::abs(s.a1_right), s.t);
    p_bound.update(4.0 * (s.l2_v + s.g * s.g), s.p * s.p, s.t);
    trace_bound.update(2.0 * s.diss, s.g * s.g, s.t);
    poincare.update(s.diss, kQuarterPiSq * s.l2_v, s.t);
    norm_lo.update(s.v_eps, 0.25 * s.energy, s.t);
    norm_hi.update(2.0 * s.energy, s.v_eps, s.t);
  }
  std::vector<CheckResult> out;
  out.push_back(a2_bound.result("bounds/|A2|<=4*diss"));
  out.push_back(a1_bound.result("bounds/|A1|<=12*diss"));
  out.push_back(a1_left_bound.result("bounds/|A1_left|<=6*diss_left"));
  out.push_back(a1_right_bound.result("bounds/|A1_right|<=6*diss_right"));
  out.push_back(p_bound.result("bounds/P^2<=4*(l2+g^2)"));
  out.push_back(trace_bound.result("bounds/g^2<=2*diss"));
  out.push_back(poincare.result("bounds/diss>=pi^2/4*l2"));
  out.push_back(norm_lo.result("bounds/V.eps>=E/4"));
  out.push_back(norm_hi.result("bounds/V.eps<=2E"));

  CheckResult done;
  done.name = "run/completed";
  done.status = traj.termination == Termination::completed ? CheckStatus::pass
                                                           : CheckStatus::fail;
  done.margin = traj.termination == Termination::completed ? 0.0 : -1.0;
  done.time = traj.samples.empty() ? 0.0 : traj.samples.back().t;
  out.push_back(done);
  return out;
}

std::vector<CheckResult> confinement_checks(const Trajectory& traj,
                                            const StabilityConstants& c) {
  std::vector<CheckResult> out;
  if (c.alpha) {
    WorstMargin wm;
    for (const SampleRecord& s : traj.samples) {
      wm.update(1.0 - *c.alpha, s.h, s.t);
      wm.update(s.h, -1.0 + *c.alpha, s.t);
    }
    out.push_back(wm.result("confinement/|h|<=1-alpha"));
  } else {
    out.push_back(na_check("confinement/|h|<=1-alpha"));
  }
  WorstMargin env;
  for (const SampleRecord& s : traj.samples) {
    env.update(1.0 - s.c2, s.h, s.t);
    env.update(s.h, -1.0 + s.c1, s.t);
  }
  out.push_back(env.result("confinement/envelope(c1,c2)"));
  return out;
}

std::vector<CheckResult> iss_checks(const Trajectory& traj,
                                    const StabilityConstants& c) {
  std::vector<CheckResult> out;
  if (traj.samples.empty()) return out;
  const SampleRecord& first = traj.samples.front();
  const double e0 = first.energy;
  const double v0 = first.v_eps;
  const double k0_0 = first.l2_v + first.g * first.g;
  const double ul2_inf = c.u_l2;

  auto u2_upto = [&traj](double t) {
    const double n = l2_norm(traj.signal, t);
    return n * n;
  };

  if (traj.params.spring_gain > 0.0) {
    if (c.eta) {
      WorstMargin energy_env, lyap_env, energy_lit, lyap_lit, unsq_lit;
      for (const SampleRecord& s : traj.samples) {
        const double decay = std::exp(-*c.eta * s.t);
        const double u2t = u2_upto(s.t);
        energy_env.update(16.0 * decay * e0 + 4.0 * u2t, s.energy, s.t);
        lyap_env.update(decay * v0 + 2.0 * u2t, s.v_eps, s.t);
        energy_lit.update(16.0 * decay * e0 + 1.5 * ul2_inf * ul2_inf,
                          s.energy, s.t);
        lyap_lit.update(decay * v0 + 1.5 * ul2_inf * ul2_inf, s.v_eps, s.t);
        unsq_lit.update(16.0 * decay * e0 + 1.5 * ul2_inf, s.energy, s.t);
      }
      out.push_back(energy_env.result("iss/E<=16exp(-eta*t)E0+4|u|^2"));
      out.push_back(lyap_env.result("iss/V<=exp(-eta*t)V0+2|u|^2"));
      out.push_back(
          energy_lit.result("iss/literal:E<=16exp(-eta*t)E0+1.5|u|^2", false));
      out.push_back(
          lyap_lit.result("iss/literal:V<=exp(-eta*t)V0+1.5|u|^2", false));
      out.push_back(
          unsq_lit.result("iss/literal:E<=16exp(-eta*t)E0+1.5|u|", false));
    } else {
      out.push_back(na_check("iss/E<=16exp(-eta*t)E0+4|u|^2"));
      out.push_back(na_check("iss/V<=exp(-eta*t)V0+2|u|^2"));
    }
  } else {
    WorstMargin k0_env, k0_lit, k0_unsq;
    for (const SampleRecord& s : traj.samples) {
      const double decay = std::exp(-0.25 * s.t);
      const double u2t = u2_upto(s.t);
      const double val = s.l2_v + s.g * s.g;
      k0_env.update(decay * k0_0 + 4.0 * u2t, val, s.t);
      k0_lit.update(decay * k0_0 + 0.5 * u2t, val, s.t);
      k0_unsq.update(16.0 * decay * k0_0 + 16.0 * ul2_inf, val, s.t);
    }
    out.push_back(k0_env.result("iss/l2+g^2<=exp(-t/4)(.)0+4|u|^2"));
    out.push_back(
        k0_lit.result("iss/literal:l2+g^2<=exp(-t/4)(.)0+0.5|u|^2", false));
    out.push_back(
        k0_unsq.result("iss/literal:l2+g^2<=16exp(-t/4)(.)0+16|u|", false));
  }
  return out;
}

std::vector<CheckResult> local_eiss_checks(const Trajectory& traj,
                                           const StabilityConstants& c) {
  std::vector<CheckResult> out;
  const SystemParams& p = traj.params;
  const double dh0 = std::abs(p.initial_position - p.target);
  const double thresh =
      (1.0 / (2.0 * std::sqrt(2.0))) *
      std::min(1.0 - p.target, 1.0 + p.target);

  const double data = profile_l2_sq(p.initial_profile) +
                      p.initial_velocity * p.initial_velocity +
                      c.u_l2 * c.u_l2;
  const bool cond1 = dh0 > 0.0 && dh0 < thresh;
  const bool cond2 = dh0 > 0.0 && p.spring_gain > data / (dh0 * dh0);

  CheckResult applicable;
  applicable.name = "local-eiss/applicable";
  applicable.gating = false;
  applicable.status = (cond1 && cond2) ? CheckStatus::pass : CheckStatus::na;
  out.push_back(applicable);
  if (!(cond1 && cond2)) {
    out.push_back(na_check("local-eiss/|h-h1|<=sqrt(2)|h0-h1|"));
    out.push_back(na_check("local-eiss/E<=16exp(-eta.loc*t)E0+4|u|^2"));
    return out;
  }

  WorstMargin conf;
  const double bound = std::sqrt(2.0) * dh0;
  for (const SampleRecord& s : traj.samples)
    conf.update(bound, std::abs(s.h - p.target), s.t);
  out.push_back(conf.result("local-eiss/|h-h1|<=sqrt(2)|h0-h1|"));

  const double eta_loc = eta_rate(p.spring_gain, c.alpha_local);
  const double e0 = traj.samples.empty() ? 0.0 : traj.samples.front().energy;
  WorstMargin env, lit;
  for (const SampleRecord& s : traj.samples) {
    const double decay = 16.0 * std::exp(-eta_loc * s.t) * e0;
    const double un = l2_norm(traj.signal, s.t);
    env.update(decay + 4.0 * un * un, s.energy, s.t);
    lit.update(decay + 1.5 * c.u_l2 * c.u_l2, s.energy, s.t);
  }
  out.push_back(env.result("local-eiss/E<=16exp(-eta.loc*t)E0+4|u|^2"));
  out.push_back(
      lit.result("local-eiss/literal:E<=16exp(-eta.loc*t)E0+1.5|u|^2", false));
  return out;
}

DecayFit fit_decay_rate(const Trajectory& traj) {
  // Earliest time after which u vanishes identically.
  std::optional<double> tail;
  if (is_zero_after(traj.signal, 0.0)) {
    tail = 0.0;
  } else if (const auto* r = std::get_if<RectPulse>(&traj.signal)) {
    tail = r->t1;
  } else if (const auto* sa = std::get_if<SampledSignal>(&traj.signal)) {
    tail = sa->times.back();
  }
  if (!tail)
    throw NotApplicableError("decay fit requires a u == 0 tail");

  if (traj.samples.empty())
    throw InsufficientDataError("decay fit: empty trajectory");
  const double floor = 1e-12 * traj.samples.front().energy;

  std::vector<std::pair<double, double>> pts;
  for (const SampleRecord& s : traj.samples)
    if (s.t >= *tail && s.energy > floor && s.energy > 0.0)
      pts.emplace_back(s.t, std::log(s.energy));
  if (pts.size() < 4)
    throw InsufficientDataError("decay fit: fewer than 4 usable samples");

  double st = 0.0, sy = 0.0, stt = 0.0, sty = 0.0;
  for (const auto& [t, y] : pts) {
    st += t;
    sy += y;
    stt += t * t;
    sty += t * y;
  }
  const double n = static_cast<double>(pts.size());
  const double denom = n * stt - st * st;
  if (denom == 0.0) throw InsufficientDataError("decay fit: degenerate window");
  const double slope = (n * sty - st * sy) / denom;
  const double intercept = (sy - slope * st) / n;

  double ss = 0.0;
  for (const auto& [t, y] : pts) {
    const double d = y - (intercept + slope * t);
    ss += d * d;
  }
  DecayFit fit;
  fit.rate = -slope;
  fit.window_lo = pts.front().first;
  fit.window_hi = pts.back().first;
  fit.residual = std::sqrt(ss / n);
  return fit;
}

StabilityReport full_report(const Trajectory& traj) {
  StabilityReport report;
  report.constants =
      compute_constants(traj.params, traj.signal, traj.config.eps_override);
  double measured = kInf;
  for (const SampleRecord& s : traj.samples)
    measured = std::min(measured, std::min(1.0 - s.h, 1.0 + s.h));
  if (!traj.samples.empty()) report.constants.measured_alpha = measured;

  auto append = [&report](std::vector<CheckResult> v) {
    for (CheckResult& r : v) report.checks.push_back(std::move(r));
  };
  append(pointwise_checks(traj));
  append(confinement_checks(traj, report.constants));
  append(iss_checks(traj, report.constants));
  append(local_eiss_checks(traj, report.constants));
  try {
    report.fit = fit_decay_rate(traj);
  } catch (const NotApplicableError&) {
  } catch (const InsufficientDataError&) {
  }
  return report;
}

bool all_gating_pass(const std::vector<CheckResult>& checks) {
  for (const CheckResult& c : checks)
    if (c.gating && c.status == CheckStatus::fail) return false;
  return true;
}

} // namespace bfsi
