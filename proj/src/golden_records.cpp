// Reference configurations and frozen oracle data.
//
// golden_data.inc is generated by tools/make-golden; regenerate with
//
//   ./build/make-golden --emit > src/golden_data.inc
//
// (takes a while: the explicit oracle runs at its diffusion-limited step).

#include "bfsi/golden_records.hpp"

#include <cmath>
#include <stdexcept>

namespace bfsi {

std::vector<ReferenceConfig> reference_configs() {
  std::vector<ReferenceConfig> configs;
  {
    ReferenceConfig c;
    c.name = "golden";
    c.params.spring_gain = 1.0;
    c.params.target = 0.0;
    c.params.initial_position = 0.2;
    c.params.initial_velocity = 0.0;
    c.params.initial_profile = SineMode{0.5, 1};
    c.signal = ExpDecay{0.5, 1.0};
    configs.push_back(std::move(c));
  }
  {
    ReferenceConfig c;
    c.name = "pulse-k0";
    c.params.spring_gain = 0.0;
    c.params.target = 0.0;
    c.params.initial_position = 0.0;
    c.params.initial_velocity = 0.3;
    c.params.initial_profile = SineMode{1.0, 1};
    c.signal = RectPulse{1.0, 0.0, 0.5};
    configs.push_back(std::move(c));
  }
  {
    ReferenceConfig c;
    c.name = "bump-k5";
    c.params.spring_gain = 5.0;
    c.params.target = 0.2;
    c.params.initial_position = -0.3;
    c.params.initial_velocity = 0.0;
    c.params.initial_profile = Bump{0.8, -0.2, 0.4};
    c.signal = ZeroSignal{};
    configs.push_back(std::move(c));
  }
  return configs;
}

namespace {

#include "golden_data.inc"

} // namespace

bool golden_available() { return !kRecords.empty(); }

const std::vector<GoldenRecord>& golden_records() { return kRecords; }

const GoldenRecord& golden_record(const std::string& name) {
  for (const GoldenRecord& rec : golden_records())
    if (rec.name == name) return rec;
  throw std::out_of_range("no golden record named " + name);
}

double golden_h_at(const GoldenRecord& rec, double t) {
  const double idx = t / rec.sample_dt;
  const long j = std::lround(idx);
  if (j < 0 || j >= static_cast<long>(rec.h.size()) ||
      std::abs(t - j * rec.sample_dt) > 1e-9)
    throw std::out_of_range("time off the golden sample lattice");
  return rec.h[static_cast<std::size_t>(j)];
}

} // namespace bfsi
