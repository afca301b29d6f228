// Apache License, Version 2.0, refer to LICENSE.txt

#ifndef COMMAX_LOG_SPACE_HPP
#define COMMAX_LOG_SPACE_HPP

#include <cmath>
#include <limits>
#include <span>

namespace commax {

inline constexpr double kNegInf = -std::numeric_limits<double>::infinity();

// log(sqrt(2*pi))
inline constexpr double kLogSqrt2Pi = 0.91893853320467274178;

// Streaming log-sum-exp accumulator.  Terms are absorbed one at a time while
// tracking the running maximum, so the exponentials are always <= 1 and the
// result is finite whenever at least one finite term was added.  Accumulation
// order is whatever the caller feeds; for reproducibility callers must feed a
// fixed order.
class LogSumAccumulator {
 public:
  void add(double log_term) {
    if (log_term == kNegInf) return;
    if (log_term <= max_) {
      sum_ += std::exp(log_term - max_);
    } else {
      sum_ = (max_ == kNegInf) ? 1.0 : sum_ * std::exp(max_ - log_term) + 1.0;
      max_ = log_term;
    }
  }

  // log(sum of exp(terms)); -inf if nothing finite was added.
  double value() const {
    if (max_ == kNegInf) return kNegInf;
    return max_ + std::log(sum_);
  }

  bool empty() const { return max_ == kNegInf; }

 private:
  double max_ = kNegInf;
  double sum_ = 0.0;
};

// Two-pass log-sum-exp over a span; -inf entries carry zero mass.
double log_sum_exp(std::span<const double> log_terms);

// log(n!) via a precomputed table for small n, lgamma beyond it.
double log_factorial(long long n);

// log C(n, k); requires 0 <= k <= n.
double log_binomial(long long n, long long k);

// log(1 + exp(x)) without overflow.
inline double log1p_exp(double x) {
  return x > 0 ? x + std::log1p(std::exp(-x)) : std::log1p(std::exp(x));
}

// Standard normal log density.
inline double log_normal_density(double x, double mean, double var) {
  const double z = x - mean;
  return -0.5 * z * z / var - 0.5 * std::log(var) - kLogSqrt2Pi;
}

}  // namespace commax

#endif  // COMMAX_LOG_SPACE_HPP
