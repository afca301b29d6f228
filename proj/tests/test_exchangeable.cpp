// Apache License, Version 2.0, refer to LICENSE.txt

#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <algorithm>
#include <cmath>
#include <random>
#include <stdexcept>
#include <vector>

#include "commax/exchangeable.hpp"
#include "doctest.h"
#include "oracles.hpp"

using namespace commax;

TEST_CASE("validation") {
  CHECK_THROWS_AS(SumDistribution(2, {0.5, 0.5}), std::domain_error);
  CHECK_THROWS_AS(SumDistribution(2, {0.5, 0.6, 0.1}), std::domain_error);
  CHECK_THROWS_AS(SumDistribution(2, {0.5, -0.1, 0.6}), std::domain_error);
  const SumDistribution dist(2, {0.25, 0.5, 0.25});
  CHECK_THROWS_AS(sequence_probability(dist, {1, 0, 1}), std::domain_error);
  CHECK_THROWS_AS(sequence_probability(dist, {1, 2}), std::domain_error);
  CHECK_THROWS_AS(pairwise_probs(SumDistribution(1, {0.5, 0.5})),
                  std::domain_error);
  CHECK_THROWS_AS(component_correlation(CombParams(4, 0.0, 1.0)),
                  std::domain_error);
  CHECK_THROWS_AS(pairwise_curve(3, 1.0, {0.5, 1.0}), std::domain_error);
}

TEST_CASE("hand-checked pairwise values") {
  // m=2, p=0.5, nu=2: pmf (1/6, 2/3, 1/6).
  const PairwiseProbs pair = pairwise_probs(CombParams(2, 0.5, 2.0));
  CHECK(pair.p11 == doctest::Approx(1.0 / 6.0).epsilon(1e-14));
  CHECK(pair.p01 == doctest::Approx(1.0 / 3.0).epsilon(1e-14));
  CHECK(pair.p00 == doctest::Approx(1.0 / 6.0).epsilon(1e-14));
}

TEST_CASE("pairwise constraint and marginal consistency over a sweep") {
  for (int m : {2, 3, 5, 8, 12}) {
    for (double p : {0.1, 0.4, 0.5, 0.8}) {
      for (double nu : {-30.0, -3.0, 0.0, 1.0, 4.0, 30.0}) {
        const CombParams params(m, p, nu);
        const PairwiseProbs pair = pairwise_probs(params);
        CHECK(std::abs(pair.p00 + 2.0 * pair.p01 + pair.p11 - 1.0) < 1e-12);
        const double q = moments(params).mean / m;
        CHECK(pair.p11 + pair.p01 == doctest::Approx(q).epsilon(1e-12));
        CHECK(pair.p00 >= -1e-15);
        CHECK(pair.p01 >= -1e-15);
        CHECK(pair.p11 >= -1e-15);
      }
    }
  }
}

TEST_CASE("pairwise probabilities match full enumeration") {
  for (int m : {2, 5, 9, 12}) {
    for (double p : {0.2, 0.5, 0.7}) {
      for (double nu : {-2.0, 0.5, 1.0, 3.0}) {
        const SumDistribution dist = sum_distribution(CombParams(m, p, nu));
        const PairwiseProbs pair = pairwise_probs(dist);
        const oracle::PairwiseOracle brute =
            oracle::pairwise_by_enumeration(dist.probs);
        CHECK(std::abs(pair.p00 - brute.p00) < 1e-12);
        CHECK(std::abs(pair.p01 - brute.p01) < 1e-12);
        CHECK(std::abs(pair.p11 - brute.p11) < 1e-12);
      }
    }
  }
}

TEST_CASE("independence at nu = 1") {
  for (int m : {2, 6, 15}) {
    for (double p : {0.15, 0.5, 0.85}) {
      const CombParams params(m, p, 1.0);
      const PairwiseProbs pair = pairwise_probs(params);
      CHECK(std::abs(pair.p11 - p * p) < 1e-13);
      CHECK(std::abs(pair.p01 - p * (1.0 - p)) < 1e-13);
      CHECK(std::abs(component_correlation(params)) < 1e-13);
    }
  }
}

TEST_CASE("correlation bounds") {
  // rho >= -1/(m-1) across the full sweep.
  for (int m : {2, 3, 4, 7, 12}) {
    for (double p : {0.2, 0.5, 0.75}) {
      for (double nu : {-30.0, -5.0, 0.0, 1.0, 5.0, 30.0}) {
        const double rho = component_correlation(CombParams(m, p, nu));
        CHECK(rho >= -1.0 / (m - 1) - 1e-10);
        CHECK(rho <= 1.0 + 1e-10);
      }
    }
  }
  // Strong negative association approaches the bound; strong positive
  // association approaches full correlation.
  CHECK(component_correlation(CombParams(4, 0.5, 30.0)) ==
        doctest::Approx(-1.0 / 3.0).epsilon(1e-4));
  CHECK(component_correlation(CombParams(4, 0.5, -30.0)) > 0.999);
}

TEST_CASE("sequence probabilities") {
  // Uniform sum distribution on m=3: an arrangement with k ones has
  // probability (1/4) / C(3,k).
  const SumDistribution uniform(3, {0.25, 0.25, 0.25, 0.25});
  CHECK(sequence_probability(uniform, {1, 1, 0}) ==
        doctest::Approx(1.0 / 12.0).epsilon(1e-14));
  CHECK(sequence_probability(uniform, {0, 0, 0}) ==
        doctest::Approx(0.25).epsilon(1e-14));

  // Permutation invariance and reconstruction of the sum distribution.
  std::mt19937_64 gen(99);
  for (int trial = 0; trial < 20; ++trial) {
    const int m = 2 + static_cast<int>(gen() % 7);
    std::vector<double> probs(m + 1);
    double total = 0.0;
    for (double &v : probs) total += v = (gen() >> 11) * 0x1.0p-53 + 1e-3;
    for (double &v : probs) v /= total;
    const SumDistribution dist(m, probs);

    std::vector<int> bits(m, 0);
    const int ones = static_cast<int>(gen() % (m + 1));
    std::fill(bits.begin(), bits.begin() + ones, 1);
    const double reference = sequence_probability(dist, bits);
    for (int shuffle = 0; shuffle < 5; ++shuffle) {
      std::shuffle(bits.begin(), bits.end(), gen);
      CHECK(sequence_probability(dist, bits) ==
            doctest::Approx(reference).epsilon(1e-13));
    }
    CHECK(reference * static_cast<double>(oracle::binom(m, ones)) ==
          doctest::Approx(probs[ones]).epsilon(1e-12));
  }
}

TEST_CASE("extreme point weights are the sum distribution") {
  const SumDistribution dist(4, {0.1, 0.2, 0.3, 0.25, 0.15});
  const auto weights = extreme_point_weights(dist);
  CHECK(weights == dist.probs);

  // Mixing the urn schemes with these weights reproduces the pairwise
  // probabilities: under e_l, p11 = l(l-1)/(m(m-1)).
  const int m = dist.m;
  double p11 = 0.0;
  for (int l = 0; l <= m; ++l) {
    p11 += weights[l] * l * (l - 1.0) / (m * (m - 1.0));
  }
  CHECK(pairwise_probs(dist).p11 == doctest::Approx(p11).epsilon(1e-14));
}

TEST_CASE("pairwise curve ordering in nu") {
  std::vector<double> ps;
  for (int i = 1; i <= 19; ++i) ps.push_back(i / 20.0);
  const auto nu4 = pairwise_curve(3, 4.0, ps);
  const auto nu1 = pairwise_curve(3, 1.0, ps);
  const auto nu0 = pairwise_curve(3, 0.0, ps);
  for (std::size_t i = 0; i < ps.size(); ++i) {
    CHECK(nu4[i].pairwise.p01 > nu1[i].pairwise.p01);
    CHECK(nu1[i].pairwise.p01 > nu0[i].pairwise.p01);
  }
}
