// Apache License, Version 2.0, refer to LICENSE.txt

#include "commax/cmp.hpp"

#include <cmath>
#include <stdexcept>

#include "commax/errors.hpp"
#include "commax/log_space.hpp"

namespace commax {

namespace {

// A term's relative contribution below this ends the summation once the
// series has passed its peak.
constexpr double kLogRelTol = -34.538776394910684;  // log(1e-15)

void require(bool cond, const char *msg) {
  if (!cond) throw std::domain_error(msg);
}

}  // namespace

CmpParams::CmpParams(double lambda, double nu, std::uint64_t max_terms)
    : lambda(lambda), nu(nu), max_terms(max_terms) {
  require(std::isfinite(lambda) && lambda > 0.0,
          "CmpParams: lambda must be positive and finite");
  require(std::isfinite(nu), "CmpParams: nu must be finite");
  require(max_terms >= 1, "CmpParams: max_terms must be >= 1");
}

bool cmp_converges(const CmpParams &params) {
  return params.nu > 0.0 || (params.nu == 0.0 && params.lambda < 1.0);
}

double cmp_log_normalizer(const CmpParams &params) {
  if (!cmp_converges(params)) {
    throw std::domain_error(
        "cmp_log_normalizer: series diverges (requires nu > 0, or nu = 0 "
        "with lambda < 1)");
  }
  const double log_lambda = std::log(params.lambda);
  LogSumAccumulator acc;
  double log_fact = 0.0;  // log(j!)
  double prev_term = 0.0;
  for (std::uint64_t j = 0;; ++j) {
    if (j > 0) log_fact += std::log(static_cast<double>(j));
    const double term = j * log_lambda - params.nu * log_fact;
    acc.add(term);
    if (j > 0 && term < prev_term && term - acc.value() < kLogRelTol) {
      return acc.value();
    }
    prev_term = term;
    if (j + 1 >= params.max_terms) {
      throw CapExceededError(
          "cmp_log_normalizer: series did not settle within max_terms",
          params.max_terms);
    }
  }
}

double cmp_pmf(const CmpParams &params, long long x) {
  require(x >= 0, "cmp_pmf: x must be >= 0");
  const double log_mass =
      x * std::log(params.lambda) - params.nu * log_factorial(x);
  return std::exp(log_mass - cmp_log_normalizer(params));
}

CombParams comb_from_cmp_conditional(double lambda1, double lambda2, double nu,
                                     int m) {
  const CmpParams first(lambda1, nu);
  const CmpParams second(lambda2, nu);
  require(cmp_converges(first) && cmp_converges(second),
          "comb_from_cmp_conditional: both marginals must be convergent");
  return CombParams(m, lambda1 / (lambda1 + lambda2), nu);
}

}  // namespace commax
