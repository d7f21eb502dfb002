#include "bfsi/stepper.hpp"

#include "bfsi/stability.hpp"
#include "bfsi/tridiag.hpp"

#include <cmath>

namespace bfsi {

double stable_dt(const State& state, const Grid& grid,
                 const SolverConfig& config) {
  const double min_j = std::min(1.0 - state.h, 1.0 + state.h);
  if (!(min_j >= config.boundary_guard))
    throw GeometryError("particle within boundary guard of a wall");
  double speed = 0.0;
  for (double w : state.wl) speed = std::max(speed, std::abs(w));
  for (double w : state.wr) speed = std::max(speed, std::abs(w));
  speed += std::abs(state.g) + 1e-30;
  const double min_dx = std::min(grid.dxl(), grid.dxr());
  return std::min(config.dt_max, config.cfl * min_dx * min_j / speed);
}

State step(const State& state, double dt, double u_val,
           const SystemParams& params, const Grid& grid, double guard) {
  const int nl = grid.nl;
  const int nr = grid.nr;
  const double dxl = grid.dxl();
  const double dxr = grid.dxr();

  const double h_new = state.h + dt * state.g;
  if (!(std::min(1.0 - h_new, 1.0 + h_new) >= guard))
    throw GeometryError("particle within boundary guard of a wall");
  const double jl = 1.0 + h_new;
  const double jr = 1.0 - h_new;

  const int n = nl + nr - 1; // unknowns: wl 1..nl-1, g, wr 1..nr-1
  const int b = nl - 1;      // composite index of the Newton row

  BorderedTridiagonalSystem sys;
  sys.sub.assign(n, 0.0);
  sys.diag.assign(n, 0.0);
  sys.super.assign(n, 0.0);
  sys.border_row = b;
  std::vector<double> rhs(n, 0.0);

  const double mu_l = dt / (jl * jl * dxl * dxl);
  for (int i = 1; i < nl; ++i) {
    const int k = i - 1;
    sys.diag[k] = 1.0 + 2.0 * mu_l;
    if (i > 1) sys.sub[k] = -mu_l;
    sys.super[k] = -mu_l; // for i = nl-1 this couples to the g unknown
    const double wxi = (state.wl[i + 1] - state.wl[i - 1]) / (2.0 * dxl);
    const double adv =
        (state.g * (1.0 + grid.xi_left(i)) - state.wl[i]) * wxi / jl;
    rhs[k] = state.wl[i] + dt * adv;
  }

  const double mu_r = dt / (jr * jr * dxr * dxr);
  for (int i = 1; i < nr; ++i) {
    const int k = b + i;
    sys.diag[k] = 1.0 + 2.0 * mu_r;
    sys.sub[k] = -mu_r; // for i = 1 this couples to the g unknown
    if (i < nr - 1) sys.super[k] = -mu_r;
    const double wxi = (state.wr[i + 1] - state.wr[i - 1]) / (2.0 * dxr);
    const double adv =
        (state.g * (1.0 - grid.xi_right(i)) - state.wr[i]) * wxi / jr;
    rhs[k] = state.wr[i] + dt * adv;
  }

  // Newton row: (g' - g)/dt = [v_y]' + K (h1 - h') + u, with the jump from
  // one-sided 3-point stencils at the new time level.
  const double cl = dt / (2.0 * dxl * jl);
  const double cr = dt / (2.0 * dxr * jr);
  sys.diag[b] = 1.0 + 3.0 * cr + 3.0 * cl;
  sys.super[b] = -4.0 * cr;
  sys.upper2 = cr;
  sys.sub[b] = -4.0 * cl;
  sys.lower2 = cl;
  rhs[b] = state.g + dt * (params.spring_gain * (params.target - h_new) + u_val);

  std::vector<double> x;
  try {
    x = sys.solve(rhs);
  } catch (const NumericalError&) {
    throw NumericalError("singular row in interface solve", state.t, state.h);
  }

  double rhs_norm = 0.0;
  for (double v : rhs) rhs_norm = std::max(rhs_norm, std::abs(v));
  if (sys.residual_inf(x, rhs) > 1e-10 * rhs_norm)
    throw NumericalError("interface solve residual too large", state.t,
                         state.h);

  State out;
  out.t = state.t + dt;
  out.h = h_new;
  out.g = x[b];
  out.wl.assign(nl + 1, 0.0);
  out.wr.assign(nr + 1, 0.0);
  for (int i = 1; i < nl; ++i) out.wl[i] = x[i - 1];
  for (int i = 1; i < nr; ++i) out.wr[i] = x[b + i];
  out.wl[nl] = out.g;
  out.wr[0] = out.g;
  return out;
}

Trajectory simulate(const SystemParams& params, const Grid& grid,
                    const SolverConfig& config, const InputSignal& signal) {
  validate(params);
  validate(config);
  validate(signal);

  const StabilityConstants consts =
      compute_constants(params, signal, config.eps_override);
  const double u_l2_global = consts.u_l2;
  // The sqrt(t) term of the envelope uses the finite-horizon input norm.
  auto envelope = [&params, &signal, u_l2_global](double t) {
    const ConfinementEnvelope env =
        confinement_envelope(t, params, l2_norm(signal, t), u_l2_global);
    return std::pair<double, double>{env.c1, env.c2};
  };

  TrajectoryBuilder builder(params, grid, config, signal, consts.eps,
                            envelope, DissRule::right_endpoint);
  State state = initial_state(params, grid);
  builder.start(state);

  const double t_end = config.t_end;
  long step_count = 0;
  Termination term = Termination::completed;
  std::string detail;
  try {
    while (state.t < t_end * (1.0 - 1e-14)) {
      double dt = stable_dt(state, grid, config);
      bool final_step = false;
      if (state.t + dt >= t_end * (1.0 - 1e-14)) {
        dt = t_end - state.t;
        final_step = true;
      }
      const double u_val = eval(signal, std::min(state.t + dt, t_end));
      state = step(state, dt, u_val, params, grid, config.boundary_guard);
      ++step_count;
      const bool on_stride = (step_count % config.sample_stride) == 0;
      builder.advance(state, on_stride || final_step);
      if (final_step) break;
    }
  } catch (const GeometryError& e) {
    term = Termination::wall_proximity;
    detail = e.what();
  } catch (const NumericalError& e) {
    term = Termination::numerical_error;
    detail = e.what();
  }
  return builder.finish(term, std::move(detail));
}

} // namespace bfsi
