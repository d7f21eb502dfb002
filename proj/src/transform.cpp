#include "bfsi/transform.hpp"

#include <cmath>

namespace bfsi {

namespace {

void require_geometry(double h, double guard) {
  if (!(std::min(1.0 - h, 1.0 + h) >= guard)) {
    throw GeometryError("particle within boundary guard of a wall (h = " +
                        std::to_string(h) + ")");
  }
}

} // namespace

TransformedCoefficients transformed_coefficients(double h, double g) {
  if (!(std::abs(h) < 1.0)) throw GeometryError("|h| must be < 1");
  return TransformedCoefficients{1.0 + h, 1.0 - h, g};
}

std::pair<Side, double> to_reference(double y, double h) {
  if (!(std::abs(h) < 1.0)) throw GeometryError("|h| must be < 1");
  if (y <= h) return {Side::left, (y - h) / (1.0 + h)};
  return {Side::right, (y - h) / (1.0 - h)};
}

double from_reference(Side side, double xi, double h) {
  if (!(std::abs(h) < 1.0)) throw GeometryError("|h| must be < 1");
  return side == Side::left ? h + xi * (1.0 + h) : h + xi * (1.0 - h);
}

RhsArrays transformed_rhs(const State& state, const Grid& grid, double guard) {
  require_geometry(state.h, guard);
  const double jl = 1.0 + state.h;
  const double jr = 1.0 - state.h;
  const double g = state.g;

  RhsArrays rhs;
  rhs.left.assign(grid.nl + 1, 0.0);
  rhs.right.assign(grid.nr + 1, 0.0);

  const double dxl = grid.dxl();
  for (int i = 1; i < grid.nl; ++i) {
    const double wxi = (state.wl[i + 1] - state.wl[i - 1]) / (2.0 * dxl);
    const double wxixi =
        (state.wl[i + 1] - 2.0 * state.wl[i] + state.wl[i - 1]) / (dxl * dxl);
    const double xi = grid.xi_left(i);
    rhs.left[i] = g * (1.0 + xi) / jl * wxi - state.wl[i] * wxi / jl +
                  wxixi / (jl * jl);
  }
  const double dxr = grid.dxr();
  for (int i = 1; i < grid.nr; ++i) {
    const double wxi = (state.wr[i + 1] - state.wr[i - 1]) / (2.0 * dxr);
    const double wxixi =
        (state.wr[i + 1] - 2.0 * state.wr[i] + state.wr[i - 1]) / (dxr * dxr);
    const double xi = grid.xi_right(i);
    rhs.right[i] = g * (1.0 - xi) / jr * wxi - state.wr[i] * wxi / jr +
                   wxixi / (jr * jr);
  }
  return rhs;
}

double jump_vy(const State& state, const Grid& grid, double guard) {
  require_geometry(state.h, guard);
  const double jl = 1.0 + state.h;
  const double jr = 1.0 - state.h;
  const int nl = grid.nl;
  const double slope_left = (3.0 * state.wl[nl] - 4.0 * state.wl[nl - 1] +
                             state.wl[nl - 2]) /
                            (2.0 * grid.dxl());
  const double slope_right =
      (-3.0 * state.wr[0] + 4.0 * state.wr[1] - state.wr[2]) /
      (2.0 * grid.dxr());
  return slope_right / jr - slope_left / jl;
}

PhysicalIntegrals physical_integrals(const State& state, const Grid& grid) {
  PhysicalIntegrals out;
  const double jl = 1.0 + state.h;
  const double jr = 1.0 - state.h;

  const double dxl = grid.dxl();
  double mass = 0.0, stiff = 0.0;
  for (int i = 0; i < grid.nl; ++i) {
    const double a = state.wl[i];
    const double b = state.wl[i + 1];
    mass += (a * a + a * b + b * b) / 3.0 * dxl;
    const double d = (b - a) / dxl;
    stiff += d * d * dxl;
  }
  out.l2_v += jl * mass;
  out.diss += stiff / jl;

  const double dxr = grid.dxr();
  mass = 0.0;
  stiff = 0.0;
  for (int i = 0; i < grid.nr; ++i) {
    const double a = state.wr[i];
    const double b = state.wr[i + 1];
    mass += (a * a + a * b + b * b) / 3.0 * dxr;
    const double d = (b - a) / dxr;
    stiff += d * d * dxr;
  }
  out.l2_v += jr * mass;
  out.diss += stiff / jr;
  return out;
}

SideDissipation side_dissipation(const State& state, const Grid& grid) {
  SideDissipation out;
  const double dxl = grid.dxl();
  for (int i = 0; i < grid.nl; ++i) {
    const double d = (state.wl[i + 1] - state.wl[i]) / dxl;
    out.left += d * d * dxl;
  }
  out.left /= (1.0 + state.h);
  const double dxr = grid.dxr();
  for (int i = 0; i < grid.nr; ++i) {
    const double d = (state.wr[i + 1] - state.wr[i]) / dxr;
    out.right += d * d * dxr;
  }
  out.right /= (1.0 - state.h);
  return out;
}

} // namespace bfsi
