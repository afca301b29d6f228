// Apache License, Version 2.0, refer to LICENSE.txt
//
// Finite exchangeable binary sequences of length m, represented by the
// distribution of their sum.  Any such sequence is a mixture of the m+1 urn
// schemes e_l (uniformly random arrangements of l ones and m-l zeros), with
// mixing weights equal to the sum distribution; the probability of one
// specific arrangement with k ones is P(W = k) / C(m, k).

#ifndef COMMAX_EXCHANGEABLE_HPP
#define COMMAX_EXCHANGEABLE_HPP

#include <vector>

#include "commax/comb.hpp"

namespace commax {

struct SumDistribution {
  SumDistribution(int m, std::vector<double> probs);
  int m;
  std::vector<double> probs;  // length m+1, nonnegative, sums to 1
};

// The sum distribution induced by a Conway-Maxwell binomial.
SumDistribution sum_distribution(const CombParams &params);

// Probability of the arrangement `bits` (entries 0/1, length m).
double sequence_probability(const SumDistribution &dist,
                            const std::vector<int> &bits);

// Joint distribution of any two distinct components:
// p11 = E[W(W-1)] / (m(m-1)), p01 = P(first = 0, second = 1),
// p00 + 2 p01 + p11 = 1.  Requires m >= 2.
struct PairwiseProbs {
  double p00;
  double p01;
  double p11;
};
PairwiseProbs pairwise_probs(const SumDistribution &dist);
PairwiseProbs pairwise_probs(const CombParams &params);

// Correlation of two distinct components; bounded below by -1/(m-1).
// Requires m >= 2 and nondegenerate mean (0 < E[W] < m).
double component_correlation(const SumDistribution &dist);
double component_correlation(const CombParams &params);

// Pairwise probabilities swept over a p grid at fixed m and nu; grid entries
// must lie strictly inside (0, 1).
struct PairwiseCurvePoint {
  double p;
  PairwiseProbs pairwise;
};
std::vector<PairwiseCurvePoint> pairwise_curve(int m, double nu,
                                               const std::vector<double> &ps);

// Mixing weights over the urn schemes e_0..e_m; equal to the sum
// distribution itself.
std::vector<double> extreme_point_weights(const SumDistribution &dist);

}  // namespace commax

#endif  // COMMAX_EXCHANGEABLE_HPP
