// Apache License, Version 2.0, refer to LICENSE.txt
//
// Conway-Maxwell Poisson distribution on {0, 1, 2, ...}:
//
//   P(X = x) = lambda^x / ((x!)^nu M(lambda, nu)),
//   M(lambda, nu) = sum_{j>=0} lambda^j / (j!)^nu.
//
// The series converges iff nu > 0, or nu = 0 with lambda < 1 (geometric).
// Conditioning one of two independent such variables with a shared nu on
// their sum yields the Conway-Maxwell binomial.

#ifndef COMMAX_CMP_HPP
#define COMMAX_CMP_HPP

#include <cstdint>

#include "commax/comb.hpp"

namespace commax {

struct CmpParams {
  CmpParams(double lambda, double nu,
            std::uint64_t max_terms = kDefaultMaxTerms);
  static constexpr std::uint64_t kDefaultMaxTerms = 1000000;
  double lambda;  // rate, > 0
  double nu;      // dispersion
  std::uint64_t max_terms;
};

// True iff M(lambda, nu) is finite.
bool cmp_converges(const CmpParams &params);

// log M(lambda, nu), summed adaptively: terms are accumulated in index order
// until, past the series peak, the last term adds relative mass below 1e-15.
// Divergent parameters raise std::domain_error; exceeding max_terms raises
// CapExceededError carrying the term count.
double cmp_log_normalizer(const CmpParams &params);

// P(X = x); requires x >= 0.
double cmp_pmf(const CmpParams &params, long long x);

// Distribution of X1 given X1 + X2 = m for independent X1, X2 with rates
// lambda1, lambda2 and common dispersion nu: Conway-Maxwell binomial with
// p = lambda1 / (lambda1 + lambda2).  Both marginals must be convergent.
CombParams comb_from_cmp_conditional(double lambda1, double lambda2, double nu,
                                     int m);

}  // namespace commax

#endif  // COMMAX_CMP_HPP
