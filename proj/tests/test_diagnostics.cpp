#include "bfsi/diagnostics.hpp"

#include <doctest.h>

#include <cmath>

using namespace bfsi;

namespace {

State raw_state(double h, double g, std::vector<double> wl,
                std::vector<double> wr) {
  State s;
  s.h = h;
  s.g = g;
  s.wl = std::move(wl);
  s.wr = std::move(wr);
  return s;
}

State tent_state(const Grid& grid, double h = 0.0) {
  std::vector<double> wl(grid.nl + 1), wr(grid.nr + 1);
  for (int i = 0; i <= grid.nl; ++i) wl[i] = 1.0 + grid.xi_left(i);
  for (int i = 0; i <= grid.nr; ++i) wr[i] = 1.0 - grid.xi_right(i);
  return raw_state(h, 1.0, std::move(wl), std::move(wr));
}

} // namespace

TEST_CASE("energy: equilibrium, spring-only, sine") {
  const Grid grid = make_grid(100, 100);
  SystemParams p;
  p.spring_gain = 1.0;
  p.target = 0.3;
  p.initial_position = 0.3;
  const State eq = initial_state(p, grid);
  CHECK(energy(eq, grid, p) == 0.0);

  SystemParams p2;
  p2.spring_gain = 4.0;
  p2.target = 0.0;
  p2.initial_position = 0.5;
  const State spring = initial_state(p2, grid);
  CHECK(energy(spring, grid, p2) == doctest::Approx(1.0).epsilon(1e-14));

  SystemParams p3;
  p3.spring_gain = 0.0;
  p3.initial_profile = SineMode{1.0, 1};
  p3.initial_velocity = 1.0;
  const State sine = initial_state(p3, grid);
  CHECK(energy(sine, grid, p3) == doctest::Approx(2.0).epsilon(1e-4));
}

TEST_CASE("P functional: zero, tent, odd") {
  const Grid grid = make_grid(200, 200);
  const State zero = raw_state(0.1, 0.0, std::vector<double>(201, 0.0),
                               std::vector<double>(201, 0.0));
  CHECK(p_functional(zero, grid) == 0.0);

  // Tent with g = 1: P -> 2 int_0^1 (1-xi)^2 + 1 = 5/3.
  const State tent = tent_state(grid);
  CHECK(p_functional(tent, grid) ==
        doctest::Approx(5.0 / 3.0).epsilon(1e-4));

  // Odd data about h = 0 with g = 0: contributions cancel.
  std::vector<double> wl(201), wr(201);
  for (int i = 0; i <= 200; ++i) {
    const double xi = grid.xi_left(i);
    wl[i] = std::sin(2.2 * xi);
  }
  for (int i = 0; i <= 200; ++i) wr[i] = -wl[200 - i];
  const State odd = raw_state(0.0, 0.0, std::move(wl), std::move(wr));
  CHECK(std::abs(p_functional(odd, grid)) <= 1e-14);
}

TEST_CASE("A1 vanishes with g and A2 matches hand-integrated data") {
  const Grid grid = make_grid(160, 160);
  State tent = tent_state(grid);
  tent.g = 0.0; // A1 is proportional to g
  CHECK(a1_functional(tent, grid) == 0.0);

  const State zero = raw_state(0.0, 0.0, std::vector<double>(161, 0.0),
                               std::vector<double>(161, 0.0));
  CHECK(a2_functional(zero, grid) == 0.0);

  // Symmetric tent: left and right pieces cancel exactly.
  CHECK(std::abs(a2_functional(tent_state(grid), grid)) <= 1e-14);

  // wl = 1+xi, wr = (1-xi)^2:
  //   A2 = int (1+xi)^2 + int (1-xi)^3 (-2(1-xi)) = 1/3 - 2/5 = -1/15.
  std::vector<double> wl(161), wr(161);
  for (int i = 0; i <= 160; ++i) wl[i] = 1.0 + grid.xi_left(i);
  for (int i = 0; i <= 160; ++i) {
    const double m = 1.0 - grid.xi_right(i);
    wr[i] = m * m;
  }
  const State mixed = raw_state(0.0, 1.0, std::move(wl), std::move(wr));
  CHECK(a2_functional(mixed, grid) ==
        doctest::Approx(-1.0 / 15.0).epsilon(1e-3));

  // A1 on the same data: -g/3 + g int (1-xi)(1-xi)^2 = -1/3 + 1/4, g = 1.
  CHECK(a1_functional(mixed, grid) ==
        doctest::Approx(-1.0 / 3.0 + 1.0 / 4.0).epsilon(1e-3));
}

TEST_CASE("lyapunov reduces to the energy at eps = 0") {
  const Grid grid = make_grid(64, 64);
  SystemParams p;
  p.spring_gain = 2.0;
  p.target = 0.1;
  p.initial_profile = SineMode{0.4, 2};
  p.initial_position = -0.2;
  p.initial_velocity = 0.25;
  const State s = initial_state(p, grid);
  CHECK(lyapunov(s, grid, p, 0.0) == energy(s, grid, p));
  const double eps = 1e-2;
  CHECK(lyapunov(s, grid, p, eps) ==
        doctest::Approx(energy(s, grid, p) -
                        eps * (p.target - s.h) * p_functional(s, grid))
            .epsilon(1e-15));
}

TEST_CASE("energy residual identities on synthetic trajectories") {
  Trajectory traj;
  // Build samples satisfying E(t) = E(0) - 2 cum_diss + 2 cum_gu exactly.
  for (int k = 0; k <= 10; ++k) {
    SampleRecord s;
    s.t = 0.1 * k;
    s.cum_diss = 0.3 * s.t;
    s.cum_gu = 0.05 * s.t * s.t;
    s.energy = 2.0 - 2.0 * s.cum_diss + 2.0 * s.cum_gu;
    traj.samples.push_back(s);
  }
  const std::vector<double> r = energy_residual(traj);
  for (double v : r) CHECK(std::abs(v) <= 1e-15);
  const std::vector<double> r1 = energy_residual_factor1(traj);
  for (int k = 0; k <= 10; ++k)
    CHECK(r1[k] == doctest::Approx(traj.samples[k].cum_gu).epsilon(1e-14));
}

TEST_CASE("log-mass residual vanishes on a constructed exact trajectory") {
  Trajectory traj;
  const double h0 = 0.1;
  for (int k = 0; k <= 8; ++k) {
    SampleRecord s;
    s.t = 0.25 * k;
    s.h = h0 + 0.05 * std::sin(s.t);
    s.p = 0.3 * std::cos(s.t);
    s.cum_a1 = 0.02 * s.t;
    s.cum_a2 = -0.01 * s.t;
    s.cum_u = 0.0;
    // Solve the identity for cum_spring so the residual is exactly zero.
    const double lhs = std::log((1.0 + s.h) / (1.0 + h0)) -
                       std::log((1.0 - s.h) / (1.0 - h0));
    s.cum_spring = lhs - (0.3 - s.p) - s.cum_a1 + s.cum_a2;
    if (k == 0) s.cum_spring = 0.0;
    traj.samples.push_back(s);
  }
  const std::vector<double> r = logmass_residual(traj);
  for (double v : r) CHECK(std::abs(v) <= 1e-14);
}

TEST_CASE("trajectory builder accumulates trapezoid integrals per step") {
  SystemParams p;
  p.spring_gain = 2.0;
  p.target = 0.5;
  const Grid grid = make_grid(8, 8);
  SolverConfig config;
  TrajectoryBuilder builder(p, grid, config, InputSignal{ExpDecay{1.0, 1.0}},
                            0.0, nullptr);
  State s = initial_state(p, grid); // h = 0, all zero fluid
  builder.start(s);
  State s2 = s;
  s2.t = 0.5;
  s2.h = 0.1;
  builder.advance(s2, true);
  const Trajectory traj = builder.finish(Termination::completed, "");
  REQUIRE(traj.samples.size() == 2);
  // spring integrand: K(h1-h): 1.0 at t=0, 0.8 at t=0.5.
  CHECK(traj.samples[1].cum_spring ==
        doctest::Approx(0.25 * (1.0 + 0.8)).epsilon(1e-15));
  // u integrand: e^{-t}.
  CHECK(traj.samples[1].cum_u ==
        doctest::Approx(0.25 * (1.0 + std::exp(-0.5))).epsilon(1e-15));
  CHECK(traj.samples[1].cum_diss == 0.0);
  CHECK(traj.samples[0].t == 0.0);
  CHECK(traj.termination == Termination::completed);
}
