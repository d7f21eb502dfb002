#include "bfsi/core.hpp"

#include <algorithm>
#include <cmath>

namespace bfsi {

namespace {

double eval_sine(const SineMode& s, double y) {
  return s.amplitude * std::sin(s.mode * M_PI * (y + 1.0) / 2.0);
}

double eval_bump(const Bump& b, double y) {
  const double s = (y - b.center) / b.width;
  if (std::abs(s) >= 1.0) return 0.0;
  return b.amplitude * std::exp(1.0 - 1.0 / (1.0 - s * s));
}

double eval_samples(const Samples& p, double y) {
  if (y <= p.y.front() || y >= p.y.back()) {
    if (y == p.y.front()) return p.v.front();
    if (y == p.y.back()) return p.v.back();
    return 0.0;
  }
  auto it = std::upper_bound(p.y.begin(), p.y.end(), y);
  const std::size_t j = it - p.y.begin();
  const double t = (y - p.y[j - 1]) / (p.y[j] - p.y[j - 1]);
  return p.v[j - 1] + t * (p.v[j] - p.v[j - 1]);
}

// Adaptive Simpson on a smooth integrand.
template <typename F>
double adaptive_simpson(const F& f, double a, double b, double fa, double fm,
                        double fb, double whole, double tol, int depth) {
  const double m = 0.5 * (a + b);
  const double lm = 0.5 * (a + m);
  const double rm = 0.5 * (m + b);
  const double flm = f(lm);
  const double frm = f(rm);
  const double left = (m - a) / 6.0 * (fa + 4.0 * flm + fm);
  const double right = (b - m) / 6.0 * (fm + 4.0 * frm + fb);
  const double delta = left + right - whole;
  if (depth <= 0 || std::abs(delta) <= 15.0 * tol) {
    return left + right + delta / 15.0;
  }
  return adaptive_simpson(f, a, m, fa, flm, fm, left, 0.5 * tol, depth - 1) +
         adaptive_simpson(f, m, b, fm, frm, fb, right, 0.5 * tol, depth - 1);
}

template <typename F>
double integrate(const F& f, double a, double b, double tol) {
  if (!(b > a)) return 0.0;
  const double m = 0.5 * (a + b);
  const double fa = f(a);
  const double fm = f(m);
  const double fb = f(b);
  const double whole = (b - a) / 6.0 * (fa + 4.0 * fm + fb);
  return adaptive_simpson(f, a, b, fa, fm, fb, whole, tol, 40);
}

} // namespace

double eval_profile(const ProfileDescriptor& profile, double y) {
  if (y == -1.0 || y == 1.0) return 0.0;
  return std::visit(
      [y](const auto& p) -> double {
        using T = std::decay_t<decltype(p)>;
        if constexpr (std::is_same_v<T, ZeroProfile>) {
          return 0.0;
        } else if constexpr (std::is_same_v<T, SineMode>) {
          return eval_sine(p, y);
        } else if constexpr (std::is_same_v<T, Bump>) {
          return eval_bump(p, y);
        } else {
          return eval_samples(p, y);
        }
      },
      profile);
}

double profile_l2_sq(const ProfileDescriptor& profile) {
  return std::visit(
      [](const auto& p) -> double {
        using T = std::decay_t<decltype(p)>;
        if constexpr (std::is_same_v<T, ZeroProfile>) {
          return 0.0;
        } else if constexpr (std::is_same_v<T, SineMode>) {
          // 2 * int_0^1 sin^2(m pi s) ds = 1 for every integer mode.
          return p.amplitude * p.amplitude;
        } else if constexpr (std::is_same_v<T, Bump>) {
          const double a = std::max(-1.0, p.center - p.width);
          const double b = std::min(1.0, p.center + p.width);
          auto f = [&p](double y) {
            const double v = eval_bump(p, y);
            return v * v;
          };
          return integrate(f, a, b, 1e-13);
        } else {
          // Exact integral of the squared piecewise-linear interpolant.
          double acc = 0.0;
          for (std::size_t j = 0; j + 1 < p.y.size(); ++j) {
            const double dy = p.y[j + 1] - p.y[j];
            const double va = p.v[j];
            const double vb = p.v[j + 1];
            acc += dy * (va * va + va * vb + vb * vb) / 3.0;
          }
          return acc;
        }
      },
      profile);
}

namespace {

void validate_profile(const ProfileDescriptor& profile) {
  if (const auto* s = std::get_if<SineMode>(&profile)) {
    if (s->mode < 1) throw DomainError("initial_profile: sine mode must be >= 1");
    if (!std::isfinite(s->amplitude))
      throw DomainError("initial_profile: sine amplitude must be finite");
  } else if (const auto* b = std::get_if<Bump>(&profile)) {
    if (!(b->width > 0.0)) throw DomainError("initial_profile: bump width must be > 0");
    if (!std::isfinite(b->amplitude) || !std::isfinite(b->center))
      throw DomainError("initial_profile: bump parameters must be finite");
  } else if (const auto* p = std::get_if<Samples>(&profile)) {
    if (p->y.size() != p->v.size())
      throw DomainError("initial_profile: sample lists must have equal length");
    if (p->y.size() < 2)
      throw DomainError("initial_profile: sample lists need at least 2 entries");
    if (!std::is_sorted(p->y.begin(), p->y.end()))
      throw DomainError("initial_profile: sample y-values must be sorted");
    if (p->y.front() < -1.0 || p->y.back() > 1.0)
      throw DomainError("initial_profile: sample y-values must lie in [-1,1]");
    for (double v : p->v)
      if (!std::isfinite(v))
        throw DomainError("initial_profile: sample values must be finite");
  }
}

} // namespace

SystemParams validate(const SystemParams& params) {
  if (!(params.spring_gain >= 0.0))
    throw DomainError("spring_gain must be >= 0");
  if (!(std::abs(params.target) < 1.0))
    throw DomainError("target must lie in (-1,1)");
  if (!(std::abs(params.initial_position) < 1.0))
    throw DomainError("initial_position must lie in (-1,1)");
  if (!std::isfinite(params.initial_velocity))
    throw DomainError("initial_velocity must be finite");
  validate_profile(params.initial_profile);
  return params;
}

Grid make_grid(int nl, int nr) {
  if (nl < 4 || nr < 4) throw DomainError("grid: nL and nR must be >= 4");
  return Grid{nl, nr};
}

State initial_state(const SystemParams& params, const Grid& grid) {
  State s;
  s.t = 0.0;
  s.h = params.initial_position;
  s.g = params.initial_velocity;
  s.wl.assign(grid.nl + 1, 0.0);
  s.wr.assign(grid.nr + 1, 0.0);
  const double h0 = params.initial_position;
  for (int i = 1; i < grid.nl; ++i) {
    const double y = h0 + grid.xi_left(i) * (1.0 + h0);
    s.wl[i] = eval_profile(params.initial_profile, y);
  }
  for (int i = 1; i < grid.nr; ++i) {
    const double y = h0 + grid.xi_right(i) * (1.0 - h0);
    s.wr[i] = eval_profile(params.initial_profile, y);
  }
  // The interface carries the particle velocity, not v0(h0): the kinematic
  // condition is imposed strongly and L^2 data may mismatch pointwise.
  s.wl[grid.nl] = params.initial_velocity;
  s.wr[0] = params.initial_velocity;
  return s;
}

void check_state(const State& state, const Grid& grid) {
  if (state.wl.size() != static_cast<std::size_t>(grid.nl + 1) ||
      state.wr.size() != static_cast<std::size_t>(grid.nr + 1))
    throw DomainError("state: array sizes do not match the grid");
  if (!(state.t >= 0.0)) throw DomainError("state: t must be >= 0");
  if (!(std::abs(state.h) < 1.0)) throw DomainError("state: |h| must be < 1");
  if (state.wl.front() != 0.0 || state.wr.back() != 0.0)
    throw DomainError("state: wall values must be 0");
  if (state.wl.back() != state.g || state.wr.front() != state.g)
    throw DomainError("state: interface values must equal g");
  for (double v : state.wl)
    if (!std::isfinite(v)) throw DomainError("state: non-finite left value");
  for (double v : state.wr)
    if (!std::isfinite(v)) throw DomainError("state: non-finite right value");
  if (!std::isfinite(state.g) || !std::isfinite(state.h))
    throw DomainError("state: non-finite particle data");
}

SolverConfig validate(const SolverConfig& config) {
  if (!(config.dt_max > 0.0)) throw DomainError("solver.dt_max must be > 0");
  if (!(config.cfl > 0.0 && config.cfl <= 1.0))
    throw DomainError("solver.cfl must lie in (0,1]");
  if (!(config.t_end > 0.0)) throw DomainError("solver.t_end must be > 0");
  if (config.sample_stride < 1)
    throw DomainError("solver.sample_stride must be >= 1");
  if (!(config.boundary_guard > 0.0 && config.boundary_guard < 1.0))
    throw DomainError("solver.boundary_guard must lie in (0,1)");
  if (config.eps_override && !(*config.eps_override >= 0.0))
    throw DomainError("solver.eps_override must be >= 0");
  return config;
}

} // namespace bfsi
