// Apache License, Version 2.0, refer to LICENSE.txt

#include "commax/log_space.hpp"

#include <algorithm>
#include <cmath>
#include <vector>

namespace commax {

double log_sum_exp(std::span<const double> log_terms) {
  double max = kNegInf;
  for (double t : log_terms) max = std::max(max, t);
  if (max == kNegInf) return kNegInf;
  double sum = 0.0;
  for (double t : log_terms) {
    if (t != kNegInf) sum += std::exp(t - max);
  }
  return max + std::log(sum);
}

namespace {

constexpr long long kLogFactTableSize = 4096;

std::vector<double> build_log_factorial_table() {
  std::vector<double> table(kLogFactTableSize);
  table[0] = 0.0;
  for (long long n = 1; n < kLogFactTableSize; ++n) {
    table[n] = table[n - 1] + std::log(static_cast<double>(n));
  }
  return table;
}

}  // namespace

double log_factorial(long long n) {
  static const std::vector<double> table = build_log_factorial_table();
  if (n < kLogFactTableSize) return table[n];
  return std::lgamma(static_cast<double>(n) + 1.0);
}

double log_binomial(long long n, long long k) {
  return log_factorial(n) - log_factorial(k) - log_factorial(n - k);
}

}  // namespace commax
