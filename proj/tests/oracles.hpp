// Apache License, Version 2.0, refer to LICENSE.txt
//
// Deliberately naive reference implementations used to cross-check the
// library: direct long double summation, no log-space tricks, no shared code
// with the implementation under test.

#ifndef COMMAX_TESTS_ORACLES_HPP
#define COMMAX_TESTS_ORACLES_HPP

#include <cmath>
#include <complex>
#include <cstdint>
#include <functional>
#include <vector>

namespace oracle {

inline long double factorial(int n) {
  long double f = 1.0L;
  for (int i = 2; i <= n; ++i) f *= i;
  return f;
}

inline long double binom(int n, int k) {
  return factorial(n) / (factorial(k) * factorial(n - k));
}

// Conway-Maxwell binomial by direct summation.
inline double comb_pmf(int m, double p, double nu, int k) {
  long double total = 0.0L;
  long double target = 0.0L;
  for (int j = 0; j <= m; ++j) {
    const long double term = powl(static_cast<long double>(p), j) *
                             powl(1.0L - static_cast<long double>(p), m - j) *
                             powl(binom(m, j), static_cast<long double>(nu));
    total += term;
    if (j == k) target = term;
  }
  return static_cast<double>(target / total);
}

inline double comb_pmf_natural(int m, double psi, double nu, int k) {
  long double total = 0.0L;
  long double target = 0.0L;
  for (int j = 0; j <= m; ++j) {
    const long double term =
        expl(static_cast<long double>(psi) * j) /
        powl(factorial(j) * factorial(m - j), static_cast<long double>(nu));
    total += term;
    if (j == k) target = term;
  }
  return static_cast<double>(target / total);
}

inline double binomial_pmf(int m, double p, int k) {
  return static_cast<double>(binom(m, k) *
                             powl(static_cast<long double>(p), k) *
                             powl(1.0L - static_cast<long double>(p), m - k));
}

// E[g(W)] under the direct pmf.
inline double comb_expect(int m, double p, double nu,
                          const std::function<double(int)> &g) {
  long double total = 0.0L, weighted = 0.0L;
  for (int j = 0; j <= m; ++j) {
    const long double term = powl(static_cast<long double>(p), j) *
                             powl(1.0L - static_cast<long double>(p), m - j) *
                             powl(binom(m, j), static_cast<long double>(nu));
    total += term;
    weighted += term * static_cast<long double>(g(j));
  }
  return static_cast<double>(weighted / total);
}

// Conway-Maxwell Poisson normalizer by direct summation (convergent
// parameters only); stops once terms stop mattering at long double scale.
inline long double cmp_normalizer(double lambda, double nu) {
  long double total = 0.0L;
  long double term = 1.0L;  // j = 0
  for (int j = 0;; ++j) {
    total += term;
    if (j > 4 * (1 + static_cast<int>(lambda)) && term < total * 1e-25L) {
      return total;
    }
    term *= static_cast<long double>(lambda) /
            powl(static_cast<long double>(j + 1),
                 static_cast<long double>(nu));
    if (j > 2000000) return total;
  }
}

inline double cmp_pmf(double lambda, double nu, int x) {
  const long double mass =
      powl(static_cast<long double>(lambda), x) /
      powl(factorial(x), static_cast<long double>(nu));
  return static_cast<double>(mass / cmp_normalizer(lambda, nu));
}

// All compositions of m into r parts, plain recursive enumeration.
inline void enumerate_compositions(
    int m, int r, const std::function<void(const std::vector<int> &)> &visit,
    std::vector<int> &prefix) {
  if (static_cast<int>(prefix.size()) == r - 1) {
    prefix.push_back(m);
    visit(prefix);
    prefix.pop_back();
    return;
  }
  for (int v = 0; v <= m; ++v) {
    prefix.push_back(v);
    enumerate_compositions(m - v, r, visit, prefix);
    prefix.pop_back();
  }
}

inline std::vector<std::vector<int>> all_compositions(int m, int r) {
  std::vector<std::vector<int>> out;
  std::vector<int> prefix;
  enumerate_compositions(
      m, r, [&](const std::vector<int> &k) { out.push_back(k); }, prefix);
  return out;
}

inline long double multinomial_coef(int m, const std::vector<int> &k) {
  long double c = factorial(m);
  for (int ki : k) c /= factorial(ki);
  return c;
}

// Conway-Maxwell multinomial by direct enumeration.
inline double comm_pmf(int m, const std::vector<double> &p, double nu,
                       const std::vector<int> &k) {
  const int r = static_cast<int>(p.size());
  long double total = 0.0L, target = 0.0L;
  for (const auto &j : all_compositions(m, r)) {
    long double term =
        powl(multinomial_coef(m, j), static_cast<long double>(nu));
    for (int i = 0; i < r; ++i) {
      term *= powl(static_cast<long double>(p[i]), j[i]);
    }
    total += term;
    if (j == k) target = term;
  }
  return static_cast<double>(target / total);
}

// Pairwise joint probabilities of components (0, 1) of an exchangeable
// binary sequence by full 2^m enumeration; probs is the sum distribution.
struct PairwiseOracle {
  double p00, p01, p11;
};
inline PairwiseOracle pairwise_by_enumeration(const std::vector<double> &probs) {
  const int m = static_cast<int>(probs.size()) - 1;
  long double p00 = 0.0L, p01 = 0.0L, p11 = 0.0L;
  for (std::uint32_t mask = 0; mask < (1u << m); ++mask) {
    const int ones = __builtin_popcount(mask);
    const long double seq_prob =
        static_cast<long double>(probs[ones]) / binom(m, ones);
    const bool b0 = mask & 1u, b1 = mask & 2u;
    if (b0 && b1) p11 += seq_prob;
    if (!b0 && !b1) p00 += seq_prob;
    if (!b0 && b1) p01 += seq_prob;
  }
  return {static_cast<double>(p00), static_cast<double>(p01),
          static_cast<double>(p11)};
}

}  // namespace oracle

#endif  // COMMAX_TESTS_ORACLES_HPP
