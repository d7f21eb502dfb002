#include "bfsi/diagnostics.hpp"

#include <cmath>

namespace bfsi {

namespace {

// Trapezoid over nodes of f_i = weight(xi_i) * w_i.
double trap_weighted(const std::vector<double>& w, double dx, bool left_side) {
  const int n = static_cast<int>(w.size()) - 1;
  double acc = 0.0;
  for (int i = 0; i <= n; ++i) {
    const double xi = left_side ? -1.0 + i * dx : i * dx;
    const double phi = left_side ? 1.0 + xi : 1.0 - xi;
    const double f = phi * w[i];
    acc += (i == 0 || i == n) ? 0.5 * f : f;
  }
  return acc * dx;
}

// Nodal gradient: centered in the interior, 3-point one-sided at the ends.
double nodal_gradient(const std::vector<double>& w, int i, double dx) {
  const int n = static_cast<int>(w.size()) - 1;
  if (i == 0) return (-3.0 * w[0] + 4.0 * w[1] - w[2]) / (2.0 * dx);
  if (i == n) return (3.0 * w[n] - 4.0 * w[n - 1] + w[n - 2]) / (2.0 * dx);
  return (w[i + 1] - w[i - 1]) / (2.0 * dx);
}

double trap_weighted_gradient(const std::vector<double>& w, double dx,
                              bool left_side) {
  const int n = static_cast<int>(w.size()) - 1;
  double acc = 0.0;
  for (int i = 0; i <= n; ++i) {
    const double xi = left_side ? -1.0 + i * dx : i * dx;
    const double phi = left_side ? 1.0 + xi : 1.0 - xi;
    const double f = phi * w[i] * nodal_gradient(w, i, dx);
    acc += (i == 0 || i == n) ? 0.5 * f : f;
  }
  return acc * dx;
}

} // namespace

double energy(const State& state, const Grid& grid,
              const SystemParams& params) {
  const PhysicalIntegrals pi = physical_integrals(state, grid);
  const double dh = state.h - params.target;
  return pi.l2_v + state.g * state.g + params.spring_gain * dh * dh;
}

double p_functional(const State& state, const Grid& grid) {
  return (1.0 + state.h) * trap_weighted(state.wl, grid.dxl(), true) +
         (1.0 - state.h) * trap_weighted(state.wr, grid.dxr(), false) +
         state.g;
}

double a1_functional(const State& state, const Grid& grid) {
  return -state.g * trap_weighted(state.wl, grid.dxl(), true) +
         state.g * trap_weighted(state.wr, grid.dxr(), false);
}

double a2_functional(const State& state, const Grid& grid) {
  return trap_weighted_gradient(state.wl, grid.dxl(), true) +
         trap_weighted_gradient(state.wr, grid.dxr(), false);
}

double lyapunov(const State& state, const Grid& grid,
                const SystemParams& params, double eps) {
  return energy(state, grid, params) -
         eps * (params.target - state.h) * p_functional(state, grid);
}

std::string to_string(Termination term) {
  switch (term) {
    case Termination::completed: return "completed";
    case Termination::wall_proximity: return "wall-proximity abort";
    case Termination::numerical_error: return "numerical error";
  }
  return "unknown";
}

namespace {

std::vector<double> energy_residual_impl(const Trajectory& traj,
                                         double gu_factor) {
  std::vector<double> r;
  r.reserve(traj.samples.size());
  if (traj.samples.empty()) return r;
  const double e0 = traj.samples.front().energy;
  for (const SampleRecord& s : traj.samples)
    r.push_back(s.energy - e0 + 2.0 * s.cum_diss - gu_factor * s.cum_gu);
  return r;
}

} // namespace

std::vector<double> energy_residual(const Trajectory& traj) {
  return energy_residual_impl(traj, 2.0);
}

std::vector<double> energy_residual_factor1(const Trajectory& traj) {
  return energy_residual_impl(traj, 1.0);
}

std::vector<double> logmass_residual(const Trajectory& traj) {
  std::vector<double> r;
  r.reserve(traj.samples.size());
  if (traj.samples.empty()) return r;
  const double h0 = traj.samples.front().h;
  const double p0 = traj.samples.front().p;
  for (const SampleRecord& s : traj.samples) {
    const double lhs = std::log((1.0 + s.h) / (1.0 + h0)) -
                       std::log((1.0 - s.h) / (1.0 - h0));
    const double rhs =
        s.cum_spring + s.cum_u + p0 - s.p + s.cum_a1 - s.cum_a2;
    r.push_back(lhs - rhs);
  }
  return r;
}

TrajectoryBuilder::TrajectoryBuilder(const SystemParams& params,
                                     const Grid& grid,
                                     const SolverConfig& config,
                                     const InputSignal& signal, double eps,
                                     EnvelopeFn envelope, DissRule diss_rule)
    : envelope_(std::move(envelope)), diss_rule_(diss_rule) {
  traj_.params = params;
  traj_.grid = grid;
  traj_.config = config;
  traj_.signal = signal;
  traj_.eps = eps;
}

TrajectoryBuilder::Integrands TrajectoryBuilder::integrands_at(
    const State& state) const {
  Integrands f;
  const PhysicalIntegrals pi = physical_integrals(state, traj_.grid);
  f.diss = pi.diss;
  f.l2_v = pi.l2_v;
  f.u = eval(traj_.signal, state.t);
  f.gu = state.g * f.u;
  f.spring = traj_.params.spring_gain * (traj_.params.target - state.h);
  const Grid& grid = traj_.grid;
  f.a1_left = -state.g * trap_weighted(state.wl, grid.dxl(), true);
  f.a1_right = state.g * trap_weighted(state.wr, grid.dxr(), false);
  f.a1 = f.a1_left + f.a1_right;
  f.a2 = a2_functional(state, traj_.grid);
  const SideDissipation sd = side_dissipation(state, grid);
  f.diss_left = sd.left;
  f.diss_right = sd.right;
  return f;
}

void TrajectoryBuilder::start(const State& s0) {
  prev_ = integrands_at(s0);
  prev_t_ = s0.t;
  sample(s0, prev_);
}

void TrajectoryBuilder::advance(const State& state, bool sample_now) {
  const Integrands f = integrands_at(state);
  const double half_dt = 0.5 * (state.t - prev_t_);
  if (diss_rule_ == DissRule::trapezoid)
    cum_diss_ += half_dt * (prev_.diss + f.diss);
  else
    cum_diss_ += 2.0 * half_dt * f.diss;
  cum_gu_ += half_dt * (prev_.gu + f.gu);
  cum_u_ += half_dt * (prev_.u + f.u);
  cum_spring_ += half_dt * (prev_.spring + f.spring);
  cum_a1_ += half_dt * (prev_.a1 + f.a1);
  cum_a2_ += half_dt * (prev_.a2 + f.a2);
  prev_ = f;
  prev_t_ = state.t;
  if (sample_now) sample(state, f);
}

void TrajectoryBuilder::sample(const State& state, const Integrands& f) {
  SampleRecord rec;
  rec.t = state.t;
  rec.h = state.h;
  rec.g = state.g;
  rec.l2_v = f.l2_v;
  const double dh = state.h - traj_.params.target;
  rec.energy =
      f.l2_v + state.g * state.g + traj_.params.spring_gain * dh * dh;
  rec.p = p_functional(state, traj_.grid);
  rec.a1 = f.a1;
  rec.a2 = f.a2;
  rec.v_eps = rec.energy - traj_.eps * (traj_.params.target - state.h) * rec.p;
  rec.diss = f.diss;
  rec.cum_diss = cum_diss_;
  rec.cum_gu = cum_gu_;
  rec.cum_u = cum_u_;
  rec.cum_spring = cum_spring_;
  rec.cum_a1 = cum_a1_;
  rec.cum_a2 = cum_a2_;
  rec.a1_left = f.a1_left;
  rec.a1_right = f.a1_right;
  rec.diss_left = f.diss_left;
  rec.diss_right = f.diss_right;
  const auto [c1, c2] = envelope_ ? envelope_(state.t)
                                  : std::pair<double, double>{0.0, 0.0};
  rec.c1 = c1;
  rec.c2 = c2;
  traj_.samples.push_back(rec);
}

Trajectory TrajectoryBuilder::finish(Termination term, std::string detail) {
  traj_.termination = term;
  traj_.termination_detail = std::move(detail);
  return std::move(traj_);
}

} // namespace bfsi
