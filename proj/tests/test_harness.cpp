#include "bfsi/harness.hpp"

#include "bfsi/config_io.hpp"

#include <doctest.h>

#include <cmath>

using namespace bfsi;

namespace {

SuiteOverrides fast_overrides() {
  SuiteOverrides o;
  o.nl = 48;
  o.nr = 48;
  o.t_end = 1.0;
  return o;
}

bool samples_identical(const Trajectory& a, const Trajectory& b) {
  if (a.samples.size() != b.samples.size()) return false;
  for (std::size_t i = 0; i < a.samples.size(); ++i) {
    const SampleRecord& x = a.samples[i];
    const SampleRecord& y = b.samples[i];
    if (x.t != y.t || x.h != y.h || x.g != y.g || x.energy != y.energy ||
        x.p != y.p || x.a1 != y.a1 || x.a2 != y.a2 || x.v_eps != y.v_eps ||
        x.diss != y.diss || x.cum_diss != y.cum_diss ||
        x.cum_gu != y.cum_gu || x.cum_u != y.cum_u ||
        x.cum_spring != y.cum_spring || x.c1 != y.c1 || x.c2 != y.c2)
      return false;
  }
  return true;
}

} // namespace

TEST_CASE("iss sweep matrix has the documented shape") {
  const std::vector<RunSpec> specs = iss_sweep_matrix();
  CHECK(specs.size() == 24);
  CHECK(specs.front().name == "K=0,u=zero,v0=zero");
  int k0 = 0, expdecay = 0, sine = 0;
  for (const RunSpec& s : specs) {
    if (s.params.spring_gain == 0.0) ++k0;
    if (std::holds_alternative<ExpDecay>(s.signal)) ++expdecay;
    if (std::holds_alternative<SineMode>(s.params.initial_profile)) ++sine;
    CHECK(s.params.initial_position == 0.2);
    CHECK(s.params.initial_velocity == 0.3);
  }
  CHECK(k0 == 6);
  CHECK(expdecay == 8);
  CHECK(sine == 12);
}

TEST_CASE("sweep results are ordered and worker-count independent") {
  std::vector<RunSpec> specs;
  {
    RunSpec a;
    a.name = "a";
    a.params.spring_gain = 1.0;
    a.params.initial_position = 0.2;
    a.params.initial_profile = SineMode{0.5, 1};
    a.grid = Grid{32, 32};
    a.config.t_end = 0.5;
    a.signal = ExpDecay{0.5, 1.0};
    specs.push_back(a);
    RunSpec b = a;
    b.name = "b";
    b.params.spring_gain = 0.0;
    b.signal = ZeroSignal{};
    specs.push_back(b);
    RunSpec c = a;
    c.name = "c";
    c.params.initial_velocity = 0.3;
    specs.push_back(c);
  }
  const std::vector<Trajectory> serial = sweep(specs, 1);
  const std::vector<Trajectory> parallel = sweep(specs, 4);
  REQUIRE(serial.size() == 3);
  REQUIRE(parallel.size() == 3);
  for (int i = 0; i < 3; ++i)
    CHECK(samples_identical(serial[i], parallel[i]));
  // Order matches the inputs: run "b" is the zero-input one.
  CHECK(serial[1].samples.back().energy <= serial[0].samples.back().energy);
}

TEST_CASE("unknown suite is rejected") {
  CHECK_THROWS_AS(run_suite("no-such-suite"), DomainError);
  CHECK(suite_names().size() == 5);
}

TEST_CASE("local-eiss suite routes the gallery correctly (reduced scale)") {
  SuiteOverrides o = fast_overrides();
  o.t_end = 2.0;
  const SuiteReport report = run_suite("local-eiss", o, 2);
  int routing_pass = 0, applicable = 0;
  for (const CheckResult& c : report.checks) {
    if (c.name.find("/routing") != std::string::npos) {
      CHECK(c.status == CheckStatus::pass);
      ++routing_pass;
    }
    if (c.name.find("local-eiss/applicable") != std::string::npos &&
        c.status == CheckStatus::pass)
      ++applicable;
  }
  CHECK(routing_pass == 5);
  CHECK(applicable == 3);
}

TEST_CASE("suite reports are byte-identical across runs and worker counts") {
  SuiteOverrides o = fast_overrides();
  auto render = [](const SuiteReport& sr) {
    Report r;
    r.name = sr.suite;
    r.checks = sr.checks;
    return report_to_string(r);
  };
  const std::string a = render(run_suite("local-eiss", o, 1));
  const std::string b = render(run_suite("local-eiss", o, 4));
  const std::string c = render(run_suite("local-eiss", o, 1));
  CHECK(a == b);
  CHECK(a == c);
}

TEST_CASE("refinement checks converge on a spring-swing configuration") {
  // Pure particle/fluid exchange: v0 = 0, g0 = 0.1, K = 1, u = 0.
  RunSpec base;
  base.name = "spring-swing";
  base.params.spring_gain = 1.0;
  base.params.initial_velocity = 0.1;
  base.grid = Grid{40, 40};
  base.config.dt_max = 4e-3;
  base.config.t_end = 1.0;
  base.signal = ZeroSignal{};
  const std::vector<CheckResult> checks =
      refinement_checks(base, 3, /*against_golden=*/false);
  REQUIRE(!checks.empty());
  for (const CheckResult& c : checks) {
    INFO(c.name, " margin=", c.margin ? *c.margin : -999.0);
    CHECK(c.status == CheckStatus::pass);
  }
}
