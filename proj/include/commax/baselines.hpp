// Apache License, Version 2.0, refer to LICENSE.txt
//
// Comparison models for frequency-table fits: the plain binomial maximum
// likelihood fit and the correlated-binomial mixture, plus the sum of
// squared errors used to compare fitted against observed counts.

#ifndef COMMAX_BASELINES_HPP
#define COMMAX_BASELINES_HPP

#include <span>
#include <vector>

#include "commax/inference.hpp"

namespace commax {

// Mixture of a binomial with an endpoint Bernoulli: with probability 1-rho
// a Binomial(m, p) draw, with probability rho all-or-nothing (m with
// probability p, 0 otherwise).
struct CbParams {
  CbParams(int m, double p, double rho);
  int m;
  double p;
  double rho;  // in [0, 1]
};

double cb_pmf(const CbParams &params, int k);

// Maximum likelihood binomial fit: p_hat = S1 / (n m).
struct BinomialFit {
  double p_hat;
  std::vector<double> fitted;  // n * Binom(k; m, p_hat)
};
BinomialFit binomial_mle_fit(const FrequencyTable &data);

// Sum of squared differences; lengths must match.
double sse(std::span<const double> observed, std::span<const double> fitted);

}  // namespace commax

#endif  // COMMAX_BASELINES_HPP
