#include "bfsi/signals.hpp"

#include "bfsi/core.hpp"

#include <algorithm>
#include <cmath>

namespace bfsi {

namespace {

constexpr double kInf = std::numeric_limits<double>::infinity();

double overlap(double a, double b, double lo, double hi) {
  return std::max(0.0, std::min(b, hi) - std::max(a, lo));
}

} // namespace

InputSignal validate(const InputSignal& signal) {
  std::visit(
      [](const auto& s) {
        using T = std::decay_t<decltype(s)>;
        if constexpr (std::is_same_v<T, ExpDecay>) {
          if (!(s.lambda > 0.0))
            throw DomainError("signal: expdecay lambda must be > 0");
        } else if constexpr (std::is_same_v<T, RectPulse>) {
          if (!(s.t0 >= 0.0)) throw DomainError("signal: rectpulse t0 must be >= 0");
          if (!(s.t1 > s.t0)) throw DomainError("signal: rectpulse needs t0 < t1");
        } else if constexpr (std::is_same_v<T, PowerTail>) {
          if (!(s.p > 0.5))
            throw DomainError("signal: powertail p must be > 1/2 (L2 requirement)");
        } else if constexpr (std::is_same_v<T, SampledSignal>) {
          if (s.times.size() != s.values.size() + 1)
            throw DomainError("signal: sampled needs times.size() == values.size()+1");
          if (s.values.empty()) throw DomainError("signal: sampled needs >= 1 hold");
          if (!std::is_sorted(s.times.begin(), s.times.end()))
            throw DomainError("signal: sampled breakpoints must be sorted");
          if (!(s.times.front() >= 0.0))
            throw DomainError("signal: sampled breakpoints must be >= 0");
        }
      },
      signal);
  return signal;
}

double eval(const InputSignal& signal, double t) {
  if (t < 0.0) throw std::domain_error("signal eval: t must be >= 0");
  return std::visit(
      [t](const auto& s) -> double {
        using T = std::decay_t<decltype(s)>;
        if constexpr (std::is_same_v<T, ZeroSignal>) {
          return 0.0;
        } else if constexpr (std::is_same_v<T, ExpDecay>) {
          return s.a * std::exp(-s.lambda * t);
        } else if constexpr (std::is_same_v<T, RectPulse>) {
          return (t >= s.t0 && t < s.t1) ? s.a : 0.0;
        } else if constexpr (std::is_same_v<T, PowerTail>) {
          return s.a * std::pow(1.0 + t, -s.p);
        } else {
          if (t < s.times.front() || t >= s.times.back()) return 0.0;
          auto it = std::upper_bound(s.times.begin(), s.times.end(), t);
          return s.values[(it - s.times.begin()) - 1];
        }
      },
      signal);
}

double l2_norm(const InputSignal& signal, std::optional<double> horizon) {
  const double T = horizon.value_or(kInf);
  const double sq = std::visit(
      [T](const auto& s) -> double {
        using S = std::decay_t<decltype(s)>;
        if constexpr (std::is_same_v<S, ZeroSignal>) {
          return 0.0;
        } else if constexpr (std::is_same_v<S, ExpDecay>) {
          const double full = s.a * s.a / (2.0 * s.lambda);
          if (T == kInf) return full;
          return full * (1.0 - std::exp(-2.0 * s.lambda * T));
        } else if constexpr (std::is_same_v<S, RectPulse>) {
          return s.a * s.a * overlap(s.t0, s.t1, 0.0, T);
        } else if constexpr (std::is_same_v<S, PowerTail>) {
          const double q = 2.0 * s.p - 1.0;
          if (T == kInf) return s.a * s.a / q;
          return s.a * s.a * (1.0 - std::pow(1.0 + T, -q)) / q;
        } else {
          double acc = 0.0;
          for (std::size_t j = 0; j < s.values.size(); ++j)
            acc += s.values[j] * s.values[j] *
                   overlap(s.times[j], s.times[j + 1], 0.0, T);
          return acc;
        }
      },
      signal);
  return std::sqrt(sq);
}

double l1_norm(const InputSignal& signal, std::optional<double> horizon) {
  const double T = horizon.value_or(kInf);
  return std::visit(
      [T](const auto& s) -> double {
        using S = std::decay_t<decltype(s)>;
        if constexpr (std::is_same_v<S, ZeroSignal>) {
          return 0.0;
        } else if constexpr (std::is_same_v<S, ExpDecay>) {
          const double full = std::abs(s.a) / s.lambda;
          if (T == kInf) return full;
          return full * (1.0 - std::exp(-s.lambda * T));
        } else if constexpr (std::is_same_v<S, RectPulse>) {
          return std::abs(s.a) * overlap(s.t0, s.t1, 0.0, T);
        } else if constexpr (std::is_same_v<S, PowerTail>) {
          if (s.a == 0.0) return 0.0;
          if (s.p == 1.0) return T == kInf ? kInf : std::abs(s.a) * std::log1p(T);
          if (s.p < 1.0 && T == kInf) return kInf;
          const double q = s.p - 1.0;
          if (T == kInf) return std::abs(s.a) / q;
          return std::abs(s.a) * (1.0 - std::pow(1.0 + T, -q)) / q;
        } else {
          double acc = 0.0;
          for (std::size_t j = 0; j < s.values.size(); ++j)
            acc += std::abs(s.values[j]) *
                   overlap(s.times[j], s.times[j + 1], 0.0, T);
          return acc;
        }
      },
      signal);
}

bool is_l1(const InputSignal& signal) {
  return std::isfinite(l1_norm(signal));
}

bool is_zero_after(const InputSignal& signal, double t) {
  return std::visit(
      [t](const auto& s) -> bool {
        using S = std::decay_t<decltype(s)>;
        if constexpr (std::is_same_v<S, ZeroSignal>) {
          return true;
        } else if constexpr (std::is_same_v<S, ExpDecay>) {
          return s.a == 0.0;
        } else if constexpr (std::is_same_v<S, RectPulse>) {
          return s.a == 0.0 || t >= s.t1;
        } else if constexpr (std::is_same_v<S, PowerTail>) {
          return s.a == 0.0;
        } else {
          for (std::size_t j = 0; j < s.values.size(); ++j)
            if (s.values[j] != 0.0 && s.times[j + 1] > t) return false;
          return true;
        }
      },
      signal);
}

} // namespace bfsi
