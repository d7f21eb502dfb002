#include "bfsi/tridiag.hpp"

#include "bfsi/core.hpp"

#include <cassert>
#include <cmath>

namespace bfsi {

std::vector<double> BorderedTridiagonalSystem::solve(
    std::vector<double> rhs) const {
  const int n = static_cast<int>(size());
  assert(static_cast<int>(sub.size()) == n &&
         static_cast<int>(super.size()) == n &&
         static_cast<int>(rhs.size()) == n);
  const int b = border_row;
  assert(b == -1 || (b >= 2 && b <= n - 3));

  std::vector<double> d = diag;
  std::vector<double> s = sub;
  std::vector<double> r = std::move(rhs);

  auto pivot_check = [&](int i) {
    if (d[i] == 0.0 || !std::isfinite(d[i]))
      throw NumericalError("singular row in bordered tridiagonal solve", 0.0,
                           0.0);
  };

  // Forward sweep up to (and excluding) the bordered row.
  const int stop = (b == -1) ? n : b;
  for (int i = 1; i < stop; ++i) {
    pivot_check(i - 1);
    const double m = s[i] / d[i - 1];
    d[i] -= m * super[i - 1];
    r[i] -= m * r[i - 1];
  }

  if (b != -1) {
    // Fold the (b, b-2) entry into the sub entry using reduced row b-2,
    // then eliminate the sub entry as usual.
    pivot_check(b - 2);
    double sb = s[b];
    double rb = r[b];
    {
      const double m2 = lower2 / d[b - 2];
      sb -= m2 * super[b - 2];
      rb -= m2 * r[b - 2];
    }
    pivot_check(b - 1);
    {
      const double m1 = sb / d[b - 1];
      d[b] -= m1 * super[b - 1];
      rb -= m1 * r[b - 1];
    }
    r[b] = rb;

    // Row b+1: eliminating its sub entry also pulls the (b, b+2) extra
    // into its own super slot.
    pivot_check(b);
    {
      const double m = s[b + 1] / d[b];
      d[b + 1] -= m * super[b];
      // super[b+1] is adjusted locally below via a shadow value.
      r[b + 1] -= m * r[b];
      // Continue the sweep with the modified super entry.
      double super_b1 = super[b + 1] - m * upper2;
      for (int i = b + 2; i < n; ++i) {
        pivot_check(i - 1);
        const double mi = s[i] / d[i - 1];
        const double super_prev = (i - 1 == b + 1) ? super_b1 : super[i - 1];
        d[i] -= mi * super_prev;
        r[i] -= mi * r[i - 1];
      }
      pivot_check(n - 1);
      std::vector<double> x(n);
      x[n - 1] = r[n - 1] / d[n - 1];
      for (int i = n - 2; i >= 0; --i) {
        double acc = r[i];
        const double super_i = (i == b + 1) ? super_b1 : super[i];
        acc -= super_i * x[i + 1];
        if (i == b) acc -= upper2 * x[i + 2];
        x[i] = acc / d[i];
      }
      return x;
    }
  }

  pivot_check(n - 1);
  std::vector<double> x(n);
  x[n - 1] = r[n - 1] / d[n - 1];
  for (int i = n - 2; i >= 0; --i) {
    x[i] = (r[i] - super[i] * x[i + 1]) / d[i];
  }
  return x;
}

std::vector<double> BorderedTridiagonalSystem::multiply(
    const std::vector<double>& x) const {
  const int n = static_cast<int>(size());
  std::vector<double> y(n, 0.0);
  for (int i = 0; i < n; ++i) {
    double acc = diag[i] * x[i];
    if (i > 0) acc += sub[i] * x[i - 1];
    if (i + 1 < n) acc += super[i] * x[i + 1];
    if (i == border_row) {
      acc += lower2 * x[i - 2];
      acc += upper2 * x[i + 2];
    }
    y[i] = acc;
  }
  return y;
}

double BorderedTridiagonalSystem::residual_inf(
    const std::vector<double>& x, const std::vector<double>& b) const {
  const std::vector<double> ax = multiply(x);
  double worst = 0.0;
  for (std::size_t i = 0; i < b.size(); ++i)
    worst = std::max(worst, std::abs(ax[i] - b[i]));
  return worst;
}

} // namespace bfsi
