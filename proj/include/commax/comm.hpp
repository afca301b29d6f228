// Apache License, Version 2.0, refer to LICENSE.txt
//
// Conway-Maxwell multinomial distribution over the compositions
// D = { k in Z^r : k_i >= 0, sum k_i = m }:
//
//   P(K = k) = mult(m; k)^nu prod_i p_i^{k_i} / G(p, nu),
//   G(p, nu) = sum_{k in D} mult(m; k)^nu prod_i p_i^{k_i},
//
// with mult(m; k) the multinomial coefficient.  nu = 1 recovers the
// multinomial.  |D| = C(m+r-1, r-1) grows quickly, so normalization is
// guarded by a composition cap and the enumeration kernel is parallelized
// over fixed-size blocks with a deterministic block-order reduction (results
// do not depend on thread count).

#ifndef COMMAX_COMM_HPP
#define COMMAX_COMM_HPP

#include <cstdint>
#include <map>
#include <span>
#include <vector>

namespace commax {

// A point of D; entries nonnegative, at least two parts.
struct CompositionIndex {
  explicit CompositionIndex(std::vector<int> counts);
  std::vector<int> k;
  int parts() const { return static_cast<int>(k.size()); }
  int total() const;  // m
};

struct CommParams {
  CommParams(int m, std::vector<double> p, double nu,
             std::uint64_t max_compositions = kDefaultMaxCompositions);
  static constexpr std::uint64_t kDefaultMaxCompositions = 10000000;
  int m;
  std::vector<double> p;  // probabilities, >= 0, summing to 1 within 1e-12
  double nu;
  std::uint64_t max_compositions;
  int parts() const { return static_cast<int>(p.size()); }
};

// Conjugate hyperparameters for the natural parameterization
// (psi_1..psi_{r-1}, nu) with standard normal base densities on each psi_i
// and on nu - 1.
struct CommHyper {
  CommHyper(int m, std::vector<double> a, double b, double c);
  int m;
  std::vector<double> a;  // length r-1
  double b;
  double c;  // >= 0
  int parts() const { return static_cast<int>(a.size()) + 1; }
};

// |D| = C(m+r-1, r-1), saturating to UINT64_MAX on overflow.
std::uint64_t composition_count(int m, int r);

// Colexicographic enumeration of D.  first_composition gives (m, 0, ..., 0);
// next_composition advances in place and returns false once the input is
// already the last element (0, ..., 0, m).
std::vector<int> first_composition(int m, int r);
bool next_composition(std::span<int> k);

// The rank-th element of D in colexicographic order, rank in
// [0, composition_count(m, r)).
std::vector<int> composition_at(int m, int r, std::uint64_t rank);

// log of the unnormalized mass of k under params.
double comm_log_unnormalized(const CommParams &params,
                             const CompositionIndex &k);

// log G(p, nu).  Parallel over fixed 8192-composition blocks, combined in
// block order; comm_log_normalizer_serial is the single-pass reference.
// Raises CapExceededError when |D| exceeds params.max_compositions.
double comm_log_normalizer(const CommParams &params);
double comm_log_normalizer_serial(const CommParams &params);

// P(K = k); k must have params.parts() entries summing to params.m.
double comm_pmf(const CommParams &params, const CompositionIndex &k);

// Sufficient statistics of a sample of compositions (all with equal m and r):
// s0 = sum_j sum_i log(k_ij!), s_i = sum_j k_ij for i = 1..r-1.
struct CommSufficientStats {
  double s0;
  std::vector<double> s;
  std::int64_t n;
  int m;
};
CommSufficientStats comm_sufficient_stats(
    std::span<const CompositionIndex> sample);

// One-observation conjugate update: a_i += k_i (i < r-1), b += sum_i log k_i!,
// c += 1.
CommHyper comm_conjugate_update(const CommHyper &hyper,
                                const CompositionIndex &k);

// K1..Kr independent with rates lambda_i and common dispersion nu,
// conditioned on their sum = m: parameters p_i = lambda_i / sum(lambda).
CommParams comm_from_cmp_conditional(const std::vector<double> &lambdas,
                                     double nu, int m);

// Probability of one specific arrangement of m categorized trials whose
// category counts are k, for an exchangeable sequence mixed over D with the
// given sum distribution: p_k / mult(m; k).
using CommSumDistribution = std::map<std::vector<int>, double>;
double comm_exchangeable_sequence_prob(const CommSumDistribution &sum_dist,
                                       const CompositionIndex &k);

// Log posterior kernel of (psi_1..psi_{r-1}, nu) under hyper:
//   sum_i logphi(psi_i) + logphi(nu - 1) + a.psi - b nu - c log Gn(psi, nu),
// with Gn the natural normalizer sum_{k in D} exp(sum_i psi_i k_i
// - nu sum_i log k_i!).  Enumeration is capped at max_compositions.
double comm_log_posterior_kernel(
    const CommHyper &hyper, std::span<const double> psi, double nu,
    std::uint64_t max_compositions = CommParams::kDefaultMaxCompositions);

}  // namespace commax

#endif  // COMMAX_COMM_HPP
