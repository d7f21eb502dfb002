#pragma once

// Shared domain types for the 1-D Burgers / point-particle interaction
// system on (-1,1):
//
//   v_t + v v_y - v_yy = 0         on (-1,1) \ {h(t)}
//   v(t,-1) = v(t,1) = 0
//   h'(t)  = v(t, h(t)) = g(t)
//   g'(t)  = [v_y](t, h(t)) + K (h1 - h(t)) + u(t)
//
// The fluid is stored in reference coordinates: the moving subdomains
// (-1,h) and (h,1) are mapped onto the fixed intervals [-1,0] and [0,1].

#include <optional>
#include <stdexcept>
#include <string>
#include <variant>
#include <vector>

namespace bfsi {

// Validation failure (bad parameters, malformed descriptors).
class DomainError : public std::invalid_argument {
public:
  using std::invalid_argument::invalid_argument;
};

// Particle too close to (or past) a wall.
class GeometryError : public std::runtime_error {
public:
  using std::runtime_error::runtime_error;
};

// Linear-solve or stability failure; carries time and position context.
class NumericalError : public std::runtime_error {
public:
  NumericalError(const std::string& what, double t, double h)
      : std::runtime_error(what), t(t), h(h) {}
  double t;
  double h;
};

// ---------------------------------------------------------------------------
// Initial velocity profiles
// ---------------------------------------------------------------------------

struct ZeroProfile {};

// amplitude * sin(mode * pi * (y+1) / 2); vanishes at y = -1 and y = 1.
// Even modes are odd functions of y about 0.
struct SineMode {
  double amplitude = 0.0;
  int mode = 1;
};

// Smooth compactly supported bump: amplitude * exp(1 - 1/(1-s^2)) with
// s = (y - center)/width, zero for |s| >= 1.
struct Bump {
  double amplitude = 0.0;
  double center = 0.0;
  double width = 0.5;
};

// Piecewise-linear samples on sorted nodes within [-1,1]; zero outside the
// sampled range.
struct Samples {
  std::vector<double> y;
  std::vector<double> v;
};

using ProfileDescriptor = std::variant<ZeroProfile, SineMode, Bump, Samples>;

// Pointwise evaluation; returns exactly 0 at y = +-1.
double eval_profile(const ProfileDescriptor& profile, double y);

// Integral of profile^2 over (-1,1). Closed form where available,
// adaptive quadrature for the bump.
double profile_l2_sq(const ProfileDescriptor& profile);

// ---------------------------------------------------------------------------
// System parameters
// ---------------------------------------------------------------------------

struct SystemParams {
  double spring_gain = 0.0;      // K >= 0
  double target = 0.0;           // h1 in (-1,1)
  double initial_position = 0.0; // h0 in (-1,1)
  double initial_velocity = 0.0; // g0
  ProfileDescriptor initial_profile = ZeroProfile{};
};

// Returns params unchanged when every invariant holds; throws DomainError
// naming the violated field otherwise.
SystemParams validate(const SystemParams& params);

// ---------------------------------------------------------------------------
// Reference grids
// ---------------------------------------------------------------------------

// Two uniform nodal grids: left nodes 0..nl over xi in [-1,0] (node nl is
// the interface), right nodes 0..nr over xi in [0,1] (node 0 is the
// interface).
struct Grid {
  int nl = 200;
  int nr = 200;

  double dxl() const { return 1.0 / nl; }
  double dxr() const { return 1.0 / nr; }
  double xi_left(int i) const { return -1.0 + i * dxl(); }
  double xi_right(int i) const { return i * dxr(); }
};

Grid make_grid(int nl, int nr); // throws DomainError unless nl, nr >= 4

// ---------------------------------------------------------------------------
// State
// ---------------------------------------------------------------------------

// Nodal fluid values in reference coordinates plus the particle pair (h,g).
// Invariants: wl[0] = wr[nr] = 0, wl[nl] = g = wr[0], |h| < 1, all finite.
struct State {
  double t = 0.0;
  double h = 0.0;
  double g = 0.0;
  std::vector<double> wl;
  std::vector<double> wr;
};

// Samples the profile on both reference grids, overrides the interface
// node with g0 and the wall nodes with 0.
State initial_state(const SystemParams& params, const Grid& grid);

// Throws DomainError on the first violated State invariant (test helper,
// also used by the steppers after each step in debug checks).
void check_state(const State& state, const Grid& grid);

// ---------------------------------------------------------------------------
// Solver configuration
// ---------------------------------------------------------------------------

inline constexpr double kDefaultBoundaryGuard = 1e-3;

struct SolverConfig {
  double dt_max = 1e-3;
  double cfl = 0.4;
  double t_end = 20.0;
  int sample_stride = 10;
  double boundary_guard = kDefaultBoundaryGuard; // abort when min(1-h,1+h) drops below
  std::optional<double> eps_override;            // Lyapunov epsilon override
};

SolverConfig validate(const SolverConfig& config); // throws DomainError

} // namespace bfsi
