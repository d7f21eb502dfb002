#include "bfsi/core.hpp"

#include <doctest.h>

#include <cmath>

using namespace bfsi;

TEST_CASE("validate accepts a plain configuration") {
  SystemParams p;
  p.spring_gain = 1.0;
  p.target = 0.0;
  p.initial_position = 0.2;
  p.initial_velocity = 0.0;
  CHECK_NOTHROW(validate(p));
}

TEST_CASE("validate rejects each bad field with a named error") {
  SystemParams p;
  p.spring_gain = -1.0;
  CHECK_THROWS_WITH_AS(validate(p), "spring_gain must be >= 0", DomainError);

  p.spring_gain = 0.0;
  p.initial_position = 1.0;
  CHECK_THROWS_WITH_AS(validate(p), "initial_position must lie in (-1,1)",
                       DomainError);

  p.initial_position = 0.0;
  p.target = -1.5;
  CHECK_THROWS_AS(validate(p), DomainError);

  p.target = 0.0;
  p.initial_profile = Samples{{0.0}, {1.0}};
  CHECK_THROWS_AS(validate(p), DomainError);
}

TEST_CASE("profiles vanish at the walls") {
  const ProfileDescriptor profiles[] = {
      SineMode{1.0, 1}, Bump{2.0, 0.9, 0.5},
      Samples{{-1.0, 0.0, 1.0}, {3.0, 1.0, 2.0}}};
  for (const auto& p : profiles) {
    CHECK(eval_profile(p, -1.0) == 0.0);
    CHECK(eval_profile(p, 1.0) == 0.0);
  }
}

TEST_CASE("profile evaluation matches closed forms") {
  CHECK(eval_profile(SineMode{2.0, 1}, 0.0) == doctest::Approx(2.0));
  // mode 2 at y = -1/2: sin(2 pi (y+1)/2) = sin(pi/2) = 1
  CHECK(eval_profile(SineMode{1.0, 2}, -0.5) == doctest::Approx(1.0));
  CHECK(eval_profile(Bump{3.0, 0.1, 0.2}, 0.1) == doctest::Approx(3.0));
  CHECK(eval_profile(Bump{3.0, 0.1, 0.2}, 0.35) == 0.0);
  const Samples s{{-0.5, 0.5}, {0.0, 2.0}};
  CHECK(eval_profile(s, 0.0) == doctest::Approx(1.0));
  CHECK(eval_profile(s, 0.75) == 0.0);
}

TEST_CASE("profile L2 norms") {
  CHECK(profile_l2_sq(ZeroProfile{}) == 0.0);
  CHECK(profile_l2_sq(SineMode{0.5, 1}) == doctest::Approx(0.25));
  CHECK(profile_l2_sq(SineMode{2.0, 3}) == doctest::Approx(4.0));
  // Tent on [-1,1]: int (1-|y|)^2 = 2/3, exact for the piecewise-linear rule.
  const Samples tent{{-1.0, 0.0, 1.0}, {0.0, 1.0, 0.0}};
  CHECK(profile_l2_sq(tent) == doctest::Approx(2.0 / 3.0).epsilon(1e-14));
  // Bump against a dense Riemann sum.
  const Bump b{0.8, -0.2, 0.4};
  double acc = 0.0;
  const int n = 200000;
  for (int i = 0; i < n; ++i) {
    const double y = -1.0 + (i + 0.5) * (2.0 / n);
    const double v = eval_profile(ProfileDescriptor{b}, y);
    acc += v * v * (2.0 / n);
  }
  CHECK(profile_l2_sq(b) == doctest::Approx(acc).epsilon(1e-8));
}

TEST_CASE("initial_state: zero profile gives all-zero arrays") {
  SystemParams p;
  p.initial_position = 0.3;
  const Grid grid = make_grid(8, 8);
  const State s = initial_state(p, grid);
  CHECK(s.t == 0.0);
  CHECK(s.h == 0.3);
  CHECK(s.g == 0.0);
  for (double v : s.wl) CHECK(v == 0.0);
  for (double v : s.wr) CHECK(v == 0.0);
  CHECK_NOTHROW(check_state(s, grid));
}

TEST_CASE("initial_state: interface node carries g0, not v0(h0)") {
  SystemParams p;
  p.initial_profile = SineMode{1.0, 1};
  p.initial_position = 0.0;

  // Continuous case: g0 = v0(0) = 1.
  p.initial_velocity = 1.0;
  const Grid grid = make_grid(16, 16);
  State s = initial_state(p, grid);
  CHECK(s.wl[grid.nl] == 1.0);
  CHECK(s.wr[0] == 1.0);

  // Mismatched case: the kinematic value wins.
  p.initial_velocity = 0.0;
  s = initial_state(p, grid);
  CHECK(s.wl[grid.nl] == 0.0);
  CHECK(s.wr[0] == 0.0);
  CHECK(eval_profile(p.initial_profile, 0.0) == doctest::Approx(1.0));
}

TEST_CASE("initial_state: grid refinement reproduces coarse nodes exactly") {
  SystemParams p;
  p.initial_profile = SineMode{0.7, 3};
  p.initial_position = 0.15;
  const Grid coarse = make_grid(25, 40);
  const Grid fine = make_grid(50, 80);
  const State sc = initial_state(p, coarse);
  const State sf = initial_state(p, fine);
  for (int i = 0; i <= coarse.nl; ++i) CHECK(sc.wl[i] == sf.wl[2 * i]);
  for (int i = 0; i <= coarse.nr; ++i) CHECK(sc.wr[i] == sf.wr[2 * i]);
}

TEST_CASE("grid validation") {
  CHECK_THROWS_AS(make_grid(3, 10), DomainError);
  CHECK_NOTHROW(make_grid(4, 4));
}

TEST_CASE("solver config validation") {
  SolverConfig c;
  CHECK_NOTHROW(validate(c));
  c.cfl = 1.5;
  CHECK_THROWS_AS(validate(c), DomainError);
  c.cfl = 0.4;
  c.sample_stride = 0;
  CHECK_THROWS_AS(validate(c), DomainError);
}

TEST_CASE("check_state flags each violated invariant") {
  SystemParams p;
  const Grid grid = make_grid(8, 8);
  State s = initial_state(p, grid);

  State bad = s;
  bad.wl[0] = 0.1;
  CHECK_THROWS_AS(check_state(bad, grid), DomainError);

  bad = s;
  bad.g = 0.5; // interface nodes no longer match
  CHECK_THROWS_AS(check_state(bad, grid), DomainError);

  bad = s;
  bad.h = 1.0;
  CHECK_THROWS_AS(check_state(bad, grid), DomainError);

  bad = s;
  bad.wr[3] = std::nan("");
  CHECK_THROWS_AS(check_state(bad, grid), DomainError);
}
