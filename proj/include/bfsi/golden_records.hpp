#pragma once

// Frozen reference-solver trajectories for cross-validation. The arrays in
// golden_records.cpp are produced once by tools/make-golden (forward-Euler
// oracle at fine resolution, stability-limited dt) and committed; the
// harness and the acceptance suite compare IMEX runs against them without
// re-running the oracle.

#include "bfsi/core.hpp"
#include "bfsi/signals.hpp"

#include <string>
#include <vector>

namespace bfsi {

struct ReferenceConfig {
  std::string name;
  SystemParams params;
  InputSignal signal;
};

// Three cross-validation configurations; [0] is the primary one used by the
// refinement studies.
std::vector<ReferenceConfig> reference_configs();

struct GoldenRecord {
  std::string name;
  int cells_per_side = 0; // oracle resolution
  double dt = 0.0;        // oracle step
  double t_end = 0.0;
  double sample_dt = 0.0; // spacing of the stored h samples
  std::vector<double> h;  // h at k * sample_dt, k = 0..N
  double g_end = 0.0;
  double energy_end = 0.0;
  // |h(t_end; dt) - h(t_end; dt/2)| measured during generation; NaN when the
  // halved-dt run was skipped.
  double self_convergence_dh = 0.0;
};

bool golden_available();
const std::vector<GoldenRecord>& golden_records();
const GoldenRecord& golden_record(const std::string& name);

// h value at time t (t must sit on the stored sample lattice within 1e-9).
double golden_h_at(const GoldenRecord& rec, double t);

} // namespace bfsi
