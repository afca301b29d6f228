// Apache License, Version 2.0, refer to LICENSE.txt

#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <algorithm>
#include <cmath>
#include <numeric>
#include <set>
#include <stdexcept>
#include <vector>

#ifdef _OPENMP
#include <omp.h>
#endif

#include "commax/comb.hpp"
#include "commax/comm.hpp"
#include "commax/errors.hpp"
#include "commax/log_space.hpp"
#include "doctest.h"
#include "oracles.hpp"

using namespace commax;

TEST_CASE("validation") {
  CHECK_THROWS_AS(CompositionIndex({3}), std::domain_error);
  CHECK_THROWS_AS(CompositionIndex({1, -1}), std::domain_error);
  CHECK_THROWS_AS(CommParams(3, {0.5, 0.6}, 1.0), std::domain_error);
  CHECK_THROWS_AS(CommParams(3, {1.0}, 1.0), std::domain_error);
  CHECK_THROWS_AS(CommParams(3, {0.5, -0.5, 1.0}, 1.0), std::domain_error);
  CHECK_THROWS_AS(CommParams(0, {0.5, 0.5}, 1.0), std::domain_error);
  CHECK_THROWS_AS(CommHyper(3, {}, 0.0, 0.0), std::domain_error);
  CHECK_THROWS_AS(CommHyper(3, {0.0}, 0.0, -1.0), std::domain_error);
  const CommParams params(3, {0.2, 0.3, 0.5}, 1.0);
  CHECK_THROWS_AS(comm_pmf(params, CompositionIndex({1, 1})),
                  std::domain_error);
  CHECK_THROWS_AS(comm_pmf(params, CompositionIndex({4, 0, 0})),
                  std::domain_error);
}

TEST_CASE("composition counting and enumeration") {
  CHECK(composition_count(3, 3) == 10);
  CHECK(composition_count(1, 2) == 2);
  CHECK(composition_count(120, 5) == 9381251);
  CHECK(composition_count(10000, 9) == UINT64_MAX);  // saturates

  for (int m : {1, 2, 5, 9}) {
    for (int r : {2, 3, 4}) {
      std::set<std::vector<int>> seen;
      std::vector<int> k = first_composition(m, r);
      CHECK(k.front() == m);
      std::uint64_t visits = 0;
      do {
        ++visits;
        CHECK(std::accumulate(k.begin(), k.end(), 0) == m);
        CHECK(seen.insert(k).second);  // no repeats
      } while (next_composition(k));
      CHECK(visits == composition_count(m, r));
      CHECK(k.back() == m);  // ends with all mass in the last part
    }
  }
}

TEST_CASE("unranking agrees with iteration order") {
  const int m = 6, r = 4;
  std::vector<int> k = first_composition(m, r);
  std::uint64_t rank = 0;
  do {
    CHECK(composition_at(m, r, rank) == k);
    ++rank;
  } while (next_composition(k));
  CHECK(rank == composition_count(m, r));
}

TEST_CASE("normalizer reference value and serial/parallel agreement") {
  const CommParams params(3, {0.2, 0.3, 0.5}, 1.4);
  CHECK(comm_log_normalizer(params) ==
        doctest::Approx(0.440059193095585636).epsilon(1e-14));
  CHECK(comm_log_normalizer_serial(params) ==
        doctest::Approx(0.440059193095585636).epsilon(1e-14));
  CHECK(comm_pmf(params, CompositionIndex({1, 1, 1})) ==
        doctest::Approx(0.237365570786670172).epsilon(1e-13));

  // A domain large enough to span many blocks.
  const CommParams big(60, {0.1, 0.2, 0.3, 0.4}, 1.7);
  const double blocked = comm_log_normalizer(big);
  const double serial = comm_log_normalizer_serial(big);
  CHECK(blocked == doctest::Approx(serial).epsilon(1e-13));

#ifdef _OPENMP
  const int before = omp_get_max_threads();
  omp_set_num_threads(1);
  const double one_thread = comm_log_normalizer(big);
  omp_set_num_threads(4);
  const double four_threads = comm_log_normalizer(big);
  omp_set_num_threads(before);
  CHECK(one_thread == four_threads);  // bitwise: fixed blocks, fixed order
#endif
}

TEST_CASE("nu = 1 is multinomial") {
  for (int m : {1, 3, 6, 10}) {
    for (int r : {2, 3, 4}) {
      std::vector<double> p(r);
      double total = 0.0;
      for (int i = 0; i < r; ++i) total += p[i] = 1.0 / (i + 2.0);
      for (double &pi : p) pi /= total;
      const CommParams params(m, p, 1.0);
      for (const auto &k : oracle::all_compositions(m, r)) {
        long double expected = oracle::multinomial_coef(m, k);
        for (int i = 0; i < r; ++i) {
          expected *= powl(static_cast<long double>(p[i]), k[i]);
        }
        CHECK(std::abs(comm_pmf(params, CompositionIndex(k)) -
                       static_cast<double>(expected)) < 1e-12);
      }
    }
  }
}

TEST_CASE("pmf matches the enumeration oracle and sums to one") {
  for (double nu : {-0.8, 0.0, 0.6, 1.0, 2.5}) {
    const CommParams params(5, {0.15, 0.25, 0.6}, nu);
    double total = 0.0;
    for (const auto &k : oracle::all_compositions(5, 3)) {
      const double got = comm_pmf(params, CompositionIndex(k));
      CHECK(std::abs(got - oracle::comm_pmf(5, params.p, nu, k)) < 1e-12);
      total += got;
    }
    CHECK(total == doctest::Approx(1.0).epsilon(1e-12));
  }
}

TEST_CASE("two parts reduce to the univariate distribution") {
  for (double nu : {-1.0, 0.5, 1.0, 3.0}) {
    const CommParams params(7, {0.35, 0.65}, nu);
    const CombParams uni(7, 0.35, nu);
    for (int k = 0; k <= 7; ++k) {
      CHECK(comm_pmf(params, CompositionIndex({k, 7 - k})) ==
            doctest::Approx(pmf(uni, k)).epsilon(1e-12));
    }
  }
}

TEST_CASE("zero-probability cells carry no mass") {
  const CommParams params(4, {0.0, 0.4, 0.6}, 1.3);
  CHECK(comm_pmf(params, CompositionIndex({1, 2, 1})) == 0.0);
  double total = 0.0;
  for (const auto &k : oracle::all_compositions(4, 3)) {
    total += comm_pmf(params, CompositionIndex(k));
  }
  CHECK(total == doctest::Approx(1.0).epsilon(1e-12));
}

TEST_CASE("composition cap") {
  try {
    comm_log_normalizer(CommParams(120, {0.25, 0.25, 0.25, 0.15, 0.1}, 1.0,
                                   1000000));
    FAIL("expected CapExceededError");
  } catch (const CapExceededError &err) {
    CHECK(err.size == 9381251);
  }
}

TEST_CASE("sufficient statistics") {
  const CompositionIndex single({2, 1, 0});
  const auto stats1 = comm_sufficient_stats(std::span(&single, 1));
  CHECK(stats1.s0 == doctest::Approx(std::log(2.0)).epsilon(1e-15));
  REQUIRE(stats1.s.size() == 2);
  CHECK(stats1.s[0] == 2.0);
  CHECK(stats1.s[1] == 1.0);
  CHECK(stats1.n == 1);

  const std::vector<CompositionIndex> sample{CompositionIndex({1, 1, 1}),
                                             CompositionIndex({3, 0, 0})};
  const auto stats2 = comm_sufficient_stats(sample);
  CHECK(stats2.s0 == doctest::Approx(std::log(6.0)).epsilon(1e-14));
  CHECK(stats2.s[0] == 4.0);
  CHECK(stats2.s[1] == 1.0);
  CHECK(stats2.n == 2);

  const std::vector<CompositionIndex> mixed{CompositionIndex({1, 1, 1}),
                                            CompositionIndex({2, 0})};
  CHECK_THROWS_AS(comm_sufficient_stats(mixed), std::domain_error);
}

TEST_CASE("conjugate update") {
  const CommHyper prior(3, {0.0, 0.0}, 0.0, 0.0);
  const CommHyper post = comm_conjugate_update(prior, CompositionIndex({2, 1, 0}));
  CHECK(post.a[0] == 2.0);
  CHECK(post.a[1] == 1.0);
  CHECK(post.b == doctest::Approx(std::log(2.0)).epsilon(1e-15));
  CHECK(post.c == 1.0);
  CHECK_THROWS_AS(comm_conjugate_update(prior, CompositionIndex({2, 1})),
                  std::domain_error);
}

TEST_CASE("posterior kernel is conjugate") {
  // kernel(updated) - kernel(prior) must equal the log likelihood
  // everywhere, so the difference of the two sides is constant (zero).
  const CommHyper prior(4, {0.3, -0.2}, 0.1, 1.0);
  const CompositionIndex obs({1, 2, 1});
  const CommHyper post = comm_conjugate_update(prior, obs);
  for (double psi0 : {-1.0, 0.2, 1.5}) {
    for (double psi1 : {-0.7, 0.9}) {
      for (double nu : {0.2, 1.0, 2.8}) {
        const std::vector<double> psi{psi0, psi1};
        const double diff = comm_log_posterior_kernel(post, psi, nu) -
                            comm_log_posterior_kernel(prior, psi, nu);
        // Log likelihood of obs under the natural parameterization.
        std::vector<double> p(3);
        const double z = 1.0 + std::exp(psi0) + std::exp(psi1);
        p[0] = std::exp(psi0) / z;
        p[1] = std::exp(psi1) / z;
        p[2] = 1.0 / z;
        const double loglik =
            std::log(oracle::comm_pmf(4, p, nu, obs.k));
        CHECK(diff == doctest::Approx(loglik).epsilon(1e-9));
      }
    }
  }
}

TEST_CASE("conditional of independent marginals given the sum") {
  for (double nu : {0.3, 1.0, 3.0}) {
    const std::vector<double> lambdas{0.8, 1.5, 0.5};
    const int m = 5;
    const CommParams cond = comm_from_cmp_conditional(lambdas, nu, m);
    // Brute force over the composition domain.
    long double total = 0.0L;
    std::vector<long double> joint;
    const auto domain = oracle::all_compositions(m, 3);
    for (const auto &k : domain) {
      long double term = 1.0L;
      for (int i = 0; i < 3; ++i) {
        term *= static_cast<long double>(oracle::cmp_pmf(lambdas[i], nu, k[i]));
      }
      joint.push_back(term);
      total += term;
    }
    for (std::size_t j = 0; j < domain.size(); ++j) {
      const double brute = static_cast<double>(joint[j] / total);
      CHECK(std::abs(comm_pmf(cond, CompositionIndex(domain[j])) - brute) <
            1e-10);
    }
  }
  CHECK_THROWS_AS(comm_from_cmp_conditional({1.0, 2.0}, -0.5, 3),
                  std::domain_error);
}

TEST_CASE("exchangeable arrangement probability") {
  // Uniform mixing over the compositions of 2 into 2 parts.
  CommSumDistribution uniform;
  uniform[{2, 0}] = 1.0 / 3.0;
  uniform[{1, 1}] = 1.0 / 3.0;
  uniform[{0, 2}] = 1.0 / 3.0;
  CHECK(comm_exchangeable_sequence_prob(uniform, CompositionIndex({1, 1})) ==
        doctest::Approx(1.0 / 6.0).epsilon(1e-14));
  CHECK(comm_exchangeable_sequence_prob(uniform, CompositionIndex({2, 0})) ==
        doctest::Approx(1.0 / 3.0).epsilon(1e-14));

  // Arrangement probabilities summed with multiplicity recover the mixing.
  CommSumDistribution dist;
  dist[{3, 0, 0}] = 0.2;
  dist[{1, 1, 1}] = 0.5;
  dist[{0, 2, 1}] = 0.3;
  for (const auto &[k, prob] : dist) {
    const double arrangements =
        static_cast<double>(oracle::multinomial_coef(3, k));
    CHECK(arrangements *
              comm_exchangeable_sequence_prob(dist, CompositionIndex(k)) ==
          doctest::Approx(prob).epsilon(1e-13));
  }
  // Compositions outside the mixing support have probability zero.
  CHECK(comm_exchangeable_sequence_prob(dist, CompositionIndex({0, 0, 3})) ==
        0.0);

  CommSumDistribution bad;
  bad[{2, 0}] = 0.7;
  CHECK_THROWS_AS(
      comm_exchangeable_sequence_prob(bad, CompositionIndex({1, 1})),
      std::domain_error);
}

TEST_CASE("posterior kernel validation and cap") {
  const CommHyper hyper(3, {0.0, 0.0}, 0.0, 1.0);
  const std::vector<double> psi{0.1, 0.2};
  CHECK(std::isfinite(comm_log_posterior_kernel(hyper, psi, 1.0)));
  const std::vector<double> wrong{0.1};
  CHECK_THROWS_AS(comm_log_posterior_kernel(hyper, wrong, 1.0),
                  std::domain_error);
  const CommHyper big(300, {0.0, 0.0, 0.0}, 0.0, 1.0);
  const std::vector<double> psi3{0.0, 0.0, 0.0};
  CHECK_THROWS_AS(comm_log_posterior_kernel(big, psi3, 1.0, 1000),
                  CapExceededError);
}
