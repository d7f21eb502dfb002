#pragma once

// Tridiagonal system with one bordered row carrying two extra off-band
// entries at (row, row-2) and (row, row+2) — the shape produced by the
// implicit Newton row, whose one-sided 3-point jump stencils reach two
// nodes into each fluid subdomain. Solved by a Thomas sweep with local
// elimination of the two extras; O(n), no fill beyond existing bands.

#include <vector>

namespace bfsi {

struct BorderedTridiagonalSystem {
  std::vector<double> sub;   // sub[i] multiplies x[i-1]; sub[0] unused
  std::vector<double> diag;  // diag[i] multiplies x[i]
  std::vector<double> super; // super[i] multiplies x[i+1]; super[n-1] unused
  int border_row = -1;       // -1 means plain tridiagonal
  double lower2 = 0.0;       // entry at (border_row, border_row-2)
  double upper2 = 0.0;       // entry at (border_row, border_row+2)

  std::size_t size() const { return diag.size(); }

  // Throws NumericalError on a zero pivot.
  std::vector<double> solve(std::vector<double> rhs) const;

  std::vector<double> multiply(const std::vector<double>& x) const;

  // max_i |(A x - b)_i|
  double residual_inf(const std::vector<double>& x,
                      const std::vector<double>& b) const;
};

} // namespace bfsi
