#pragma once

// IMEX time integrator for the coupled system. Per step:
//
//   1. h^{n+1} = h^n + dt g^n (explicit), Jacobians frozen at h^{n+1};
//   2. advection + mesh-motion terms explicit at (w^n, g^n);
//   3. diffusion and the Newton row implicit: the jump stencils and the
//      spring force couple g^{n+1} to the two interface-adjacent unknowns
//      on each side, giving a bordered tridiagonal system over
//      [wl interior..., g, wr interior...];
//   4. solve, re-impose wall zeros and wl[nl] = g = wr[0].
//
// The input u is sampled at the end of the step interval, u(t^{n+1}), to
// match the implicit interface row; trajectories are reproducible
// bit-for-bit given identical configuration.

#include "bfsi/core.hpp"
#include "bfsi/diagnostics.hpp"
#include "bfsi/signals.hpp"

namespace bfsi {

// min(dt_max, cfl * min_dxi * min(1-h,1+h) / (max|w| + |g|)); throws
// GeometryError when the particle is within the boundary guard of a wall.
double stable_dt(const State& state, const Grid& grid,
                 const SolverConfig& config);

// One IMEX step. Throws GeometryError (guard trip) or NumericalError
// (singular row / residual failure).
State step(const State& state, double dt, double u_val,
           const SystemParams& params, const Grid& grid,
           double guard = kDefaultBoundaryGuard);

// Full simulation; step errors are recorded in the termination field
// rather than propagated.
Trajectory simulate(const SystemParams& params, const Grid& grid,
                    const SolverConfig& config, const InputSignal& signal);

} // namespace bfsi
