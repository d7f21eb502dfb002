#pragma once

// Configuration parsing and trajectory/report serialization.
//
// Config: a JSON document with top-level keys "system", "grid", "solver",
// "signal"; unknown keys are rejected with their path. Defaults: nL=nR=200,
// dt_max=1e-3, cfl=0.4, t_end=20, sample_stride=10, boundary_guard=1e-3.
//
// Trajectories: CSV with the exact header
//   t,h,g,E,P,A1,A2,V_eps,diss,cum_diss,cum_gu,cum_u,cum_spring,c1,c2
// and shortest round-trip decimal floats (bit-exact on re-read).
//
// Reports: JSON with keys "constants", "checks", "fit", "meta". Checks are
// {name, margin, time, status, gating}; infinities serialize as null.

#include "bfsi/diagnostics.hpp"
#include "bfsi/stability.hpp"

#include <string>

namespace bfsi {

struct ConfigBundle {
  SystemParams params;
  Grid grid;
  SolverConfig config;
  InputSignal signal;
};

// Throws DomainError naming the offending key.
ConfigBundle parse_config(const std::string& text);
ConfigBundle load_config(const std::string& path);
std::string config_to_json(const ConfigBundle& bundle);

void write_trajectory(const Trajectory& traj, const std::string& path);
// Reads the CSV columns back; params/grid/signal echoes are defaulted.
Trajectory read_trajectory(const std::string& path);

struct Report {
  std::optional<StabilityConstants> constants;
  std::vector<CheckResult> checks;
  std::optional<DecayFit> fit;
  std::string name; // run or suite label, stored in meta
};

std::string report_to_string(const Report& report);
void write_report(const Report& report, const std::string& path);
Report read_report(const std::string& path);
Report parse_report(const std::string& text);

bool report_gating_pass(const Report& report);

// Shortest decimal representation that round-trips to the same double.
std::string format_double(double v);

} // namespace bfsi
