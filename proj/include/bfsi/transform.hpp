#pragma once

// Maps between the moving physical domain and the fixed reference intervals,
// plus the transformed differential operators.
//
// Left map:  xi = (y - h)/(1 + h),  y in [-1, h] -> xi in [-1, 0]
// Right map: xi = (y - h)/(1 - h),  y in [h, 1]  -> xi in [0, 1]
//
// With w(t,xi) = v(t,y(t,xi)) the Burgers equation becomes
//
//   w_t = g (1+xi)/(1+h) w_xi - w w_xi/(1+h) + w_xixi/(1+h)^2   (left)
//   w_t = g (1-xi)/(1-h) w_xi - w w_xi/(1-h) + w_xixi/(1-h)^2   (right)

#include "bfsi/core.hpp"

namespace bfsi {

enum class Side { left, right };

// Jacobians and mesh-velocity fields of the time-dependent maps.
struct TransformedCoefficients {
  double jl; // 1 + h
  double jr; // 1 - h
  double g;

  double mesh_velocity_left(double xi) const { return -g * (1.0 + xi) / jl; }
  double mesh_velocity_right(double xi) const { return -g * (1.0 - xi) / jr; }
};

TransformedCoefficients transformed_coefficients(double h, double g);

// Physical -> reference. Throws GeometryError when |h| >= 1.
std::pair<Side, double> to_reference(double y, double h);
// Reference -> physical.
double from_reference(Side side, double xi, double h);

// Interior time derivatives (indices 1..n-1 on each side) of the transformed
// equations, second-order central differences. Throws GeometryError when
// min(1-h, 1+h) < guard.
struct RhsArrays {
  std::vector<double> left;  // size nl+1, entries 1..nl-1 filled
  std::vector<double> right; // size nr+1, entries 1..nr-1 filled
};
RhsArrays transformed_rhs(const State& state, const Grid& grid,
                          double guard = kDefaultBoundaryGuard);

// [v_y](t,h) = v_y(h+) - v_y(h-) via second-order one-sided 3-point stencils
// at the interface nodes.
double jump_vy(const State& state, const Grid& grid,
               double guard = kDefaultBoundaryGuard);

// l2_v = int v^2 dy, diss = int v_y^2 dy.
//
// l2_v integrates the square of the piecewise-linear nodal interpolant
// exactly (per-cell (a^2+ab+b^2)/3 rule); diss sums squared cell-midpoint
// differences. Both rules are exact on piecewise-linear data and together
// they satisfy the discrete Poincare inequality diss >= (pi^2/4) l2_v for
// every state with zero wall values.
struct PhysicalIntegrals {
  double l2_v = 0.0;
  double diss = 0.0;
};
PhysicalIntegrals physical_integrals(const State& state, const Grid& grid);

// Dissipation split by subdomain (used by the per-side A1 bound checks).
struct SideDissipation {
  double left = 0.0;
  double right = 0.0;
};
SideDissipation side_dissipation(const State& state, const Grid& grid);

} // namespace bfsi
