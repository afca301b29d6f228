// Apache License, Version 2.0, refer to LICENSE.txt

#include "commax/exchangeable.hpp"

#include <cmath>
#include <stdexcept>

#include "commax/log_space.hpp"

namespace commax {

namespace {

void require(bool cond, const char *msg) {
  if (!cond) throw std::domain_error(msg);
}

}  // namespace

SumDistribution::SumDistribution(int m, std::vector<double> probs)
    : m(m), probs(std::move(probs)) {
  require(m >= 1, "SumDistribution: m must be >= 1");
  require(static_cast<int>(this->probs.size()) == m + 1,
          "SumDistribution: need m+1 probabilities");
  double total = 0.0;
  for (double p : this->probs) {
    require(std::isfinite(p) && p >= 0.0,
            "SumDistribution: probabilities must be >= 0");
    total += p;
  }
  require(std::abs(total - 1.0) <= 1e-10,
          "SumDistribution: probabilities must sum to 1");
}

SumDistribution sum_distribution(const CombParams &params) {
  return SumDistribution(params.m, pmf_table(params));
}

double sequence_probability(const SumDistribution &dist,
                            const std::vector<int> &bits) {
  require(static_cast<int>(bits.size()) == dist.m,
          "sequence_probability: need m entries");
  int k = 0;
  for (int b : bits) {
    require(b == 0 || b == 1, "sequence_probability: entries must be 0 or 1");
    k += b;
  }
  if (dist.probs[k] == 0.0) return 0.0;
  return std::exp(std::log(dist.probs[k]) - log_binomial(dist.m, k));
}

PairwiseProbs pairwise_probs(const SumDistribution &dist) {
  require(dist.m >= 2, "pairwise_probs: m must be >= 2");
  const double mm = static_cast<double>(dist.m) * (dist.m - 1);
  double p11 = 0.0, p01 = 0.0, p00 = 0.0;
  for (int k = 0; k <= dist.m; ++k) {
    const double w = static_cast<double>(k);
    const double z = static_cast<double>(dist.m - k);
    p11 += w * (w - 1.0) / mm * dist.probs[k];
    p01 += z * w / mm * dist.probs[k];
    p00 += z * (z - 1.0) / mm * dist.probs[k];
  }
  return {p00, p01, p11};
}

PairwiseProbs pairwise_probs(const CombParams &params) {
  return pairwise_probs(sum_distribution(params));
}

double component_correlation(const SumDistribution &dist) {
  require(dist.m >= 2, "component_correlation: m must be >= 2");
  double mean = 0.0;
  for (int k = 0; k <= dist.m; ++k) mean += k * dist.probs[k];
  const double q = mean / dist.m;
  require(q > 0.0 && q < 1.0,
          "component_correlation: degenerate mean, correlation undefined");
  const PairwiseProbs pair = pairwise_probs(dist);
  return (pair.p11 - q * q) / (q * (1.0 - q));
}

double component_correlation(const CombParams &params) {
  return component_correlation(sum_distribution(params));
}

std::vector<PairwiseCurvePoint> pairwise_curve(int m, double nu,
                                               const std::vector<double> &ps) {
  require(m >= 2, "pairwise_curve: m must be >= 2");
  std::vector<PairwiseCurvePoint> curve;
  curve.reserve(ps.size());
  for (double p : ps) {
    require(std::isfinite(p) && p > 0.0 && p < 1.0,
            "pairwise_curve: grid entries must lie strictly inside (0, 1)");
    curve.push_back({p, pairwise_probs(CombParams(m, p, nu))});
  }
  return curve;
}

std::vector<double> extreme_point_weights(const SumDistribution &dist) {
  return dist.probs;
}

}  // namespace commax
