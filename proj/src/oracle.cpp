#include "bfsi/oracle.hpp"

#include "bfsi/stability.hpp"

#include <cmath>
#include <string>

namespace bfsi {

Trajectory oracle_simulate(const SystemParams& params, int cells_per_side,
                           double dt, double t_end, const InputSignal& signal,
                           long sample_stride, long accumulate_stride) {
  validate(params);
  validate(signal);
  if (!(dt > 0.0) || !(t_end > 0.0))
    throw DomainError("oracle: dt and t_end must be > 0");
  const Grid grid = make_grid(cells_per_side, cells_per_side);
  const int n = cells_per_side;
  const double dx = 1.0 / n;

  const long nsteps = std::lround(std::ceil(t_end / dt - 1e-9));
  if (accumulate_stride <= 0)
    accumulate_stride = std::max<long>(1, std::lround(1e-4 / dt));
  if (sample_stride <= 0)
    sample_stride = std::max<long>(accumulate_stride,
                                   (nsteps / 200 / accumulate_stride + 1) *
                                       accumulate_stride);
  if (sample_stride % accumulate_stride != 0)
    throw DomainError("oracle: sample_stride must be a multiple of accumulate_stride");

  SolverConfig config;
  config.dt_max = dt;
  config.t_end = t_end;
  config.sample_stride = static_cast<int>(std::min<long>(sample_stride, 1 << 30));

  const StabilityConstants consts = compute_constants(params, signal, {});
  const double u_l2_global = consts.u_l2;
  auto envelope = [&params, &signal, u_l2_global](double t) {
    const ConfinementEnvelope env =
        confinement_envelope(t, params, l2_norm(signal, t), u_l2_global);
    return std::pair<double, double>{env.c1, env.c2};
  };
  TrajectoryBuilder builder(params, grid, config, signal, consts.eps,
                            envelope);

  State state = initial_state(params, grid);
  builder.start(state);

  std::vector<double> wl = state.wl;
  std::vector<double> wr = state.wr;
  std::vector<double> wl_new(n + 1, 0.0);
  std::vector<double> wr_new(n + 1, 0.0);
  double h = state.h;
  double g = state.g;

  Termination term = Termination::completed;
  std::string detail;
  try {
    for (long k = 0; k < nsteps; ++k) {
      const double t = k * dt;
      const double jl = 1.0 + h;
      const double jr = 1.0 - h;
      const double min_j = std::min(jl, jr);
      if (!(dt <= 0.2 * dx * dx * min_j * min_j)) {
        throw NumericalError(
            "oracle: explicit stability bound violated at step " +
                std::to_string(k),
            t, h);
      }

      // Independent stencil sweeps (central differences, forward Euler).
      for (int i = 1; i < n; ++i) {
        const double slope = (wl[i + 1] - wl[i - 1]) / (2.0 * dx);
        const double curv = (wl[i + 1] - 2.0 * wl[i] + wl[i - 1]) / (dx * dx);
        const double xi = -1.0 + i * dx;
        wl_new[i] = wl[i] + dt * ((g * (1.0 + xi) - wl[i]) * slope / jl +
                                  curv / (jl * jl));
      }
      for (int i = 1; i < n; ++i) {
        const double slope = (wr[i + 1] - wr[i - 1]) / (2.0 * dx);
        const double curv = (wr[i + 1] - 2.0 * wr[i] + wr[i - 1]) / (dx * dx);
        const double xi = i * dx;
        wr_new[i] = wr[i] + dt * ((g * (1.0 - xi) - wr[i]) * slope / jr +
                                  curv / (jr * jr));
      }

      const double slope_left =
          (3.0 * wl[n] - 4.0 * wl[n - 1] + wl[n - 2]) / (2.0 * dx);
      const double slope_right =
          (-3.0 * wr[0] + 4.0 * wr[1] - wr[2]) / (2.0 * dx);
      const double jump = slope_right / jr - slope_left / jl;
      const double u_val = eval(signal, t);
      const double g_new =
          g + dt * (jump + params.spring_gain * (params.target - h) + u_val);
      const double h_new = h + dt * g;
      if (!(std::abs(h_new) < 1.0))
        throw GeometryError("oracle: particle reached a wall");

      wl_new[0] = 0.0;
      wr_new[n] = 0.0;
      wl_new[n] = g_new;
      wr_new[0] = g_new;
      wl.swap(wl_new);
      wr.swap(wr_new);
      h = h_new;
      g = g_new;

      const long done = k + 1;
      // Per-step accumulation through the initial layer (the kinematic
      // override can leave a kink whose dissipation decays within tens of
      // steps), coarser stride afterwards.
      const bool burn_in = done <= 2000;
      if (burn_in || done % accumulate_stride == 0 || done == nsteps) {
        state.t = done * dt;
        state.h = h;
        state.g = g;
        state.wl = wl;
        state.wr = wr;
        builder.advance(state,
                        done % sample_stride == 0 || done == nsteps);
      }
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
