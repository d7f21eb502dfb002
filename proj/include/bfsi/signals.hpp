#pragma once

// Closed-form open-loop inputs u(t) on [0,inf) with exact L1/L2 norms and
// finite-horizon restrictions.

#include <limits>
#include <optional>
#include <variant>
#include <vector>

namespace bfsi {

struct ZeroSignal {};

// a * exp(-lambda t), lambda > 0.
struct ExpDecay {
  double a = 0.0;
  double lambda = 1.0;
};

// a on [t0, t1), 0 elsewhere. Half-open support keeps concatenation and
// hold-sums exact.
struct RectPulse {
  double a = 0.0;
  double t0 = 0.0;
  double t1 = 1.0;
};

// a / (1+t)^p with p > 1/2: always L2, in L1 only for p > 1. Deliberately
// covers the L2 \ L1 regime where the L1-dependent bounds do not apply.
struct PowerTail {
  double a = 0.0;
  double p = 1.0;
};

// Zero-order hold: times are breakpoints (size = values.size() + 1, sorted,
// >= 0); u = values[j] on [times[j], times[j+1]), 0 outside. Always has
// compact support.
struct SampledSignal {
  std::vector<double> times;
  std::vector<double> values;
};

using InputSignal =
    std::variant<ZeroSignal, ExpDecay, RectPulse, PowerTail, SampledSignal>;

// Throws DomainError on malformed descriptors (lambda <= 0, t1 <= t0,
// p <= 1/2, unsorted breakpoints).
InputSignal validate(const InputSignal& signal);

// Pointwise value; throws std::domain_error for t < 0.
double eval(const InputSignal& signal, double t);

// L2(0,T) and L1(0,T) norms; T = nullopt means T = infinity. l1_norm returns
// +infinity for PowerTail with p <= 1.
double l2_norm(const InputSignal& signal, std::optional<double> horizon = {});
double l1_norm(const InputSignal& signal, std::optional<double> horizon = {});

// True iff the L1(0,inf) norm is finite.
bool is_l1(const InputSignal& signal);

// True iff u vanishes identically on [t, inf).
bool is_zero_after(const InputSignal& signal, double t);

} // namespace bfsi
