#include "bfsi/signals.hpp"

#include "bfsi/core.hpp"

#include <doctest.h>

#include <cmath>
#include <random>

using namespace bfsi;

TEST_CASE("pointwise evaluation") {
  CHECK(eval(ExpDecay{1.0, 1.0}, 0.0) == 1.0);
  CHECK(eval(ExpDecay{2.0, 0.5}, 2.0) == doctest::Approx(2.0 / M_E));
  CHECK(eval(RectPulse{2.0, 0.0, 1.0}, 1.0) == 0.0); // half-open support
  CHECK(eval(RectPulse{2.0, 0.0, 1.0}, 0.999) == 2.0);
  CHECK(eval(PowerTail{1.0, 1.0}, 3.0) == doctest::Approx(0.25));
  CHECK(eval(ZeroSignal{}, 10.0) == 0.0);
  CHECK_THROWS_AS(eval(ZeroSignal{}, -0.1), std::domain_error);

  const SampledSignal s{{0.0, 1.0, 2.0, 4.0}, {1.0, -2.0, 0.5}};
  CHECK(eval(s, 0.5) == 1.0);
  CHECK(eval(s, 1.5) == -2.0);
  CHECK(eval(s, 3.9) == 0.5);
  CHECK(eval(s, 4.0) == 0.0);
  CHECK(eval(s, 100.0) == 0.0);
}

TEST_CASE("exact norms") {
  CHECK(l2_norm(ExpDecay{1.0, 1.0}) == doctest::Approx(1.0 / std::sqrt(2.0)));
  CHECK(l1_norm(ExpDecay{1.0, 1.0}) == doctest::Approx(1.0));
  CHECK(l2_norm(RectPulse{2.0, 0.0, 1.0}) == doctest::Approx(2.0));
  CHECK(l1_norm(RectPulse{2.0, 0.0, 1.0}) == doctest::Approx(2.0));
  CHECK(l2_norm(PowerTail{1.0, 0.75}) == doctest::Approx(std::sqrt(2.0)));
  CHECK(l1_norm(PowerTail{1.0, 0.75}) ==
        std::numeric_limits<double>::infinity());
  CHECK(l1_norm(PowerTail{1.0, 1.0}) ==
        std::numeric_limits<double>::infinity());
  CHECK(l1_norm(PowerTail{1.0, 2.0}) == doctest::Approx(1.0));

  const SampledSignal s{{0.0, 1.0, 2.0, 4.0}, {1.0, -2.0, 0.5}};
  CHECK(l1_norm(s) == doctest::Approx(4.0));
  CHECK(l2_norm(s) == doctest::Approx(std::sqrt(5.5)));
  CHECK(l2_norm(s, 1.5) == doctest::Approx(std::sqrt(3.0)));
}

TEST_CASE("is_l1 flag agrees with the finiteness rule") {
  CHECK(is_l1(ZeroSignal{}));
  CHECK(is_l1(ExpDecay{3.0, 0.2}));
  CHECK(is_l1(RectPulse{5.0, 1.0, 9.0}));
  CHECK(is_l1(SampledSignal{{0.0, 2.0}, {1.0}}));
  CHECK(!is_l1(PowerTail{1.0, 0.75}));
  CHECK(!is_l1(PowerTail{1.0, 1.0}));
  CHECK(is_l1(PowerTail{1.0, 1.01}));
  for (const InputSignal& sig :
       {InputSignal{ExpDecay{1.0, 2.0}}, InputSignal{PowerTail{1.0, 0.9}},
        InputSignal{RectPulse{1.0, 0.0, 2.0}}}) {
    CHECK(is_l1(sig) == std::isfinite(l1_norm(sig)));
  }
}

TEST_CASE("horizon restriction is nondecreasing and converges") {
  std::mt19937 rng(99);
  std::uniform_real_distribution<double> ut(0.0, 30.0);
  const InputSignal sigs[] = {ExpDecay{1.5, 0.7}, RectPulse{1.0, 1.0, 3.0},
                              PowerTail{2.0, 0.8},
                              SampledSignal{{0.0, 1.0, 5.0}, {2.0, -1.0}}};
  for (const InputSignal& sig : sigs) {
    for (int k = 0; k < 50; ++k) {
      double t1 = ut(rng), t2 = ut(rng);
      if (t1 > t2) std::swap(t1, t2);
      CHECK(l2_norm(sig, t1) <= l2_norm(sig, t2) + 1e-14);
      CHECK(l2_norm(sig, t2) <= l2_norm(sig) + 1e-14);
    }
    CHECK(l2_norm(sig, 1e13) == doctest::Approx(l2_norm(sig)).epsilon(1e-6));
  }
}

TEST_CASE("quadrature cross-check of the closed-form L2 norms") {
  const struct {
    InputSignal sig;
    double T;
  } cases[] = {{ExpDecay{0.7, 1.3}, 4.0}, {PowerTail{1.1, 0.8}, 6.0}};
  for (const auto& c : cases) {
    const double dt = 1e-3;
    const long n = std::lround(c.T / dt);
    double acc = 0.0;
    for (long i = 0; i <= n; ++i) {
      const double u = eval(c.sig, i * dt);
      acc += (i == 0 || i == n) ? 0.5 * u * u : u * u;
    }
    acc *= dt;
    const double exact = l2_norm(c.sig, c.T);
    CHECK(acc == doctest::Approx(exact * exact).epsilon(1e-6));
  }
}

TEST_CASE("descriptor validation") {
  CHECK_THROWS_AS(validate(InputSignal{ExpDecay{1.0, 0.0}}), DomainError);
  CHECK_THROWS_AS(validate(InputSignal{RectPulse{1.0, 2.0, 1.0}}), DomainError);
  CHECK_THROWS_AS(validate(InputSignal{PowerTail{1.0, 0.5}}), DomainError);
  CHECK_THROWS_AS(validate(InputSignal{SampledSignal{{0.0}, {1.0}}}),
                  DomainError);
  CHECK_THROWS_AS(validate(InputSignal{SampledSignal{{1.0, 0.5}, {1.0}}}),
                  DomainError);
  CHECK_NOTHROW(validate(InputSignal{ExpDecay{0.5, 1.0}}));
}

TEST_CASE("zero-tail detection") {
  CHECK(is_zero_after(ZeroSignal{}, 0.0));
  CHECK(is_zero_after(RectPulse{1.0, 0.0, 2.0}, 2.0));
  CHECK(!is_zero_after(RectPulse{1.0, 0.0, 2.0}, 1.5));
  CHECK(!is_zero_after(ExpDecay{1.0, 1.0}, 100.0));
  CHECK(is_zero_after(SampledSignal{{0.0, 1.0}, {1.0}}, 1.0));
}
