#include "bfsi/stepper.hpp"

#include "bfsi/golden_records.hpp"

#include <doctest.h>

#include <cmath>

using namespace bfsi;

namespace {

SystemParams equilibrium_params(double h, double k) {
  SystemParams p;
  p.spring_gain = k;
  p.target = h;
  p.initial_position = h;
  return p;
}

} // namespace

TEST_CASE("stable_dt formula") {
  const Grid grid = make_grid(100, 100); // dxi = 0.01
  SolverConfig config;
  config.dt_max = 0.01;
  SystemParams p;
  State s = initial_state(p, grid);
  CHECK(stable_dt(s, grid, config) == 0.01); // zero state capped by dt_max

  s.wl[50] = 1.0; // max|w| = 1, g = 0, h = 0
  CHECK(stable_dt(s, grid, config) == doctest::Approx(0.004).epsilon(1e-12));

  s = initial_state(p, grid);
  s.h = 0.99; // J = 0.01, still above the guard: scaled dt, no error
  CHECK(stable_dt(s, grid, config) == doctest::Approx(0.01).epsilon(1e-9));
  s.wl[50] = 1.0;
  CHECK(stable_dt(s, grid, config) ==
        doctest::Approx(0.4 * 0.01 * 0.01 / 1.0).epsilon(1e-9));

  s.h = 0.9995; // below the default 1e-3 guard
  CHECK_THROWS_AS(stable_dt(s, grid, config), GeometryError);
}

TEST_CASE("equilibrium is an exact fixed point of step") {
  const Grid grid = make_grid(32, 48);
  for (double k : {0.0, 1.0}) {
    const SystemParams p = equilibrium_params(0.3, k);
    const State s0 = initial_state(p, grid);
    const State s1 = step(s0, 0.01, 0.0, p, grid);
    CHECK(s1.t == doctest::Approx(0.01));
    CHECK(s1.h == 0.3);
    CHECK(s1.g == 0.0);
    for (double v : s1.wl) CHECK(std::abs(v) <= 1e-12);
    for (double v : s1.wr) CHECK(std::abs(v) <= 1e-12);
  }
}

TEST_CASE("spring accelerates the particle toward the target") {
  const Grid grid = make_grid(64, 64);
  SystemParams p;
  p.spring_gain = 1.0;
  p.target = 0.0;
  p.initial_position = 0.2; // spring force K(h1-h0) < 0
  const State s0 = initial_state(p, grid);
  const State s1 = step(s0, 1e-3, 0.0, p, grid);
  CHECK(s1.h == 0.2); // position moves only with the old g
  CHECK(s1.g < 0.0);
  CHECK(std::abs(s1.g) <= 1e-3 * 0.2); // |g1| <= dt K |h1-h0|

  SystemParams q = p;
  q.initial_position = -0.4; // force now positive
  const State r1 = step(initial_state(q, grid), 1e-3, 0.0, q, grid);
  CHECK(r1.g > 0.0);
}

TEST_CASE("simulate: equilibrium trajectory stays at zero energy") {
  const SystemParams p = equilibrium_params(0.25, 1.0);
  const Grid grid = make_grid(64, 64);
  SolverConfig config;
  config.t_end = 2.0;
  const Trajectory traj = simulate(p, grid, config, ZeroSignal{});
  CHECK(traj.termination == Termination::completed);
  for (const SampleRecord& s : traj.samples) {
    CHECK(std::abs(s.energy) <= 1e-12);
    CHECK(s.h == 0.25);
  }
}

TEST_CASE("simulate: odd initial data keeps the particle pinned") {
  SystemParams p;
  p.spring_gain = 1.0;
  p.initial_profile = SineMode{0.5, 2}; // odd about y = 0
  const Grid grid = make_grid(64, 64);
  SolverConfig config;
  config.t_end = 2.0;
  const Trajectory traj = simulate(p, grid, config, ZeroSignal{});
  CHECK(traj.termination == Termination::completed);
  for (const SampleRecord& s : traj.samples) CHECK(std::abs(s.h) <= 1e-10);
}

TEST_CASE("simulate: sample bookkeeping and V_eps consistency") {
  SystemParams p;
  p.spring_gain = 1.0;
  p.initial_position = 0.2;
  p.initial_velocity = 0.3;
  p.initial_profile = SineMode{0.5, 1};
  const Grid grid = make_grid(64, 64);
  SolverConfig config;
  config.t_end = 1.0;
  const Trajectory traj = simulate(p, grid, config, ExpDecay{0.5, 1.0});
  CHECK(traj.termination == Termination::completed);
  REQUIRE(!traj.samples.empty());
  CHECK(traj.samples.front().t == 0.0);
  CHECK(traj.samples.back().t == doctest::Approx(1.0).epsilon(1e-12));
  CHECK(traj.eps > 0.0);
  for (std::size_t i = 1; i < traj.samples.size(); ++i)
    CHECK(traj.samples[i].t > traj.samples[i - 1].t);
  for (const SampleRecord& s : traj.samples) {
    CHECK(s.v_eps ==
          s.energy - traj.eps * (p.target - s.h) * s.p);
    CHECK(s.cum_diss >= 0.0);
  }
  // Initial sample matches the initial data.
  const State s0 = initial_state(p, grid);
  CHECK(traj.samples.front().energy ==
        doctest::Approx(energy(s0, grid, p)).epsilon(1e-15));
  CHECK(traj.samples.front().h == 0.2);
  CHECK(traj.samples.front().g == 0.3);
}

TEST_CASE("simulate: energy is nonincreasing without input") {
  SystemParams p;
  p.spring_gain = 1.0;
  p.initial_position = 0.2;
  p.initial_profile = SineMode{0.5, 1};
  const Grid grid = make_grid(100, 100);
  SolverConfig config;
  config.t_end = 3.0;
  const Trajectory traj = simulate(p, grid, config, ZeroSignal{});
  for (std::size_t i = 1; i < traj.samples.size(); ++i)
    CHECK(traj.samples[i].energy <=
          traj.samples[i - 1].energy * (1.0 + 1e-12) + 1e-15);
}

TEST_CASE("simulate records a wall-proximity abort instead of throwing") {
  SystemParams p;
  p.spring_gain = 0.0;
  const Grid grid = make_grid(32, 32);
  SolverConfig config;
  config.t_end = 20.0;
  const Trajectory traj = simulate(p, grid, config, RectPulse{20.0, 0.0, 20.0});
  CHECK(traj.termination == Termination::wall_proximity);
  CHECK(!traj.termination_detail.empty());
  CHECK(!traj.samples.empty());
}

TEST_CASE("step matches the frozen oracle endpoint on the golden config") {
  if (!golden_available()) {
    MESSAGE("golden records not generated; skipping");
    return;
  }
  const ReferenceConfig ref = reference_configs().front();
  const GoldenRecord& rec = golden_record("golden");
  const Grid grid = make_grid(200, 200);
  SolverConfig config;
  config.t_end = 1.0;
  const Trajectory traj = simulate(ref.params, grid, config, ref.signal);
  CHECK(traj.termination == Termination::completed);
  CHECK(std::abs(traj.samples.back().h - rec.h.back()) <= 5e-3);
  // Whole-path agreement at the stored lattice.
  double worst = 0.0;
  for (const SampleRecord& s : traj.samples)
    worst = std::max(worst, std::abs(s.h - golden_h_at(rec, s.t)));
  CHECK(worst <= 5e-3);
}
