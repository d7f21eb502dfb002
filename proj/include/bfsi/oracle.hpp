#pragma once

// Independent reference integrator: forward Euler on the transformed
// equations with its own finite-difference sweeps. Shares only the domain
// types and the diagnostic sampling machinery with the IMEX stepper — the
// derivative assembly is written separately so the two discretizations can
// cross-validate each other.

#include "bfsi/core.hpp"
#include "bfsi/diagnostics.hpp"
#include "bfsi/signals.hpp"

namespace bfsi {

// Forward Euler with nl = nr = cells_per_side and fixed dt. The explicit
// diffusion stability bound dt <= 0.2 dxi^2 min(1-h,1+h)^2 is enforced
// every step; a violation raises NumericalError naming the step.
//
// sample_stride: steps between recorded samples (0 picks a stride giving
// roughly 200 samples). accumulate_stride: steps between running-integral
// updates (0 picks ~1e-4 time units); must divide sample_stride.
Trajectory oracle_simulate(const SystemParams& params, int cells_per_side,
                           double dt, double t_end, const InputSignal& signal,
                           long sample_stride = 0, long accumulate_stride = 0);

} // namespace bfsi
