#pragma once

// Experiment orchestration: named suites over embedded configuration
// matrices, each producing a deterministic flat list of named checks.
// Reports contain no wall-clock content, so identical inputs give
// byte-identical serialized reports regardless of worker count.

#include "bfsi/diagnostics.hpp"
#include "bfsi/stability.hpp"

#include <optional>
#include <string>
#include <vector>

namespace bfsi {

struct RunSpec {
  std::string name;
  SystemParams params;
  Grid grid;
  SolverConfig config;
  InputSignal signal;
};

// Runs every spec and returns trajectories in input order regardless of
// the worker count (work queue with index-addressed results).
std::vector<Trajectory> sweep(const std::vector<RunSpec>& specs, int workers);

// Partial overrides layered on top of a suite's embedded defaults.
struct SuiteOverrides {
  std::optional<int> nl;
  std::optional<int> nr;
  std::optional<double> dt_max;
  std::optional<double> t_end;
  std::optional<int> sample_stride;
  std::optional<int> levels; // refinement levels for the converge suite
};

struct SuiteReport {
  std::string suite;
  std::vector<CheckResult> checks;
  bool passed = false; // all gating entries pass
};

// Known suites: iss-sweep, bounds-audit, converge, oracle-compare,
// local-eiss. Throws DomainError for unknown names.
SuiteReport run_suite(const std::string& name,
                      const SuiteOverrides& overrides = {}, int workers = 1);

std::vector<std::string> suite_names();

// Matrix builders (exposed for tests and the CLI).
std::vector<RunSpec> iss_sweep_matrix(const SuiteOverrides& overrides = {});
std::vector<RunSpec> local_eiss_gallery(const SuiteOverrides& overrides = {});

// Generic refinement study: R_E ratio and R_M order checks on an arbitrary
// run (used by the converge suite and the converge CLI subcommand).
std::vector<CheckResult> refinement_checks(const RunSpec& base, int levels,
                                           bool against_golden);

std::string signal_label(const InputSignal& signal);
std::string profile_label(const ProfileDescriptor& profile);

} // namespace bfsi
