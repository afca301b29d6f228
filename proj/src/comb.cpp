// Apache License, Version 2.0, refer to LICENSE.txt

#include "commax/comb.hpp"

#include <algorithm>
#include <cmath>
#include <random>
#include <stdexcept>
#include <string>

#include "commax/log_space.hpp"

namespace commax {

namespace {

void require(bool cond, const char *msg) {
  if (!cond) throw std::domain_error(msg);
}

void check_k(int m, int k) {
  if (k < 0 || k > m) {
    throw std::domain_error("pmf: k = " + std::to_string(k) +
                            " outside {0, ..., " + std::to_string(m) + "}");
  }
}

// log(k!(m-k)!)
double log_split_factorial(int m, int k) {
  return log_factorial(k) + log_factorial(m - k);
}

// Unnormalized log masses in the mean parameterization; requires 0 < p < 1.
std::vector<double> log_terms_mean(const CombParams &params) {
  const double log_p = std::log(params.p);
  const double log_q = std::log1p(-params.p);
  std::vector<double> terms(params.m + 1);
  for (int k = 0; k <= params.m; ++k) {
    terms[k] = k * log_p + (params.m - k) * log_q +
               params.nu * log_binomial(params.m, k);
  }
  return terms;
}

std::vector<double> log_terms_natural(const CombNatural &natural) {
  std::vector<double> terms(natural.m + 1);
  for (int k = 0; k <= natural.m; ++k) {
    terms[k] = natural.psi * k - natural.nu * log_split_factorial(natural.m, k);
  }
  return terms;
}

std::vector<double> normalize_to_pmf(std::vector<double> log_terms) {
  const double total = log_sum_exp(log_terms);
  std::vector<double> table(log_terms.size());
  for (std::size_t k = 0; k < log_terms.size(); ++k) {
    table[k] = std::exp(log_terms[k] - total);
  }
  return table;
}

std::vector<double> point_mass(int m, int at) {
  std::vector<double> table(m + 1, 0.0);
  table[at] = 1.0;
  return table;
}

// log T(x, nu) = log sum_k x^k C(m,k)^nu for x >= 0, given log x.  x = 0
// keeps only the k = 0 term (0 * -inf would otherwise poison it).
double log_t(int m, double log_x, double nu) {
  if (log_x == kNegInf) return nu * log_binomial(m, 0);
  LogSumAccumulator acc;
  for (int k = 0; k <= m; ++k) {
    acc.add(k * log_x + nu * log_binomial(m, k));
  }
  return acc.value();
}

}  // namespace

CombParams::CombParams(int m, double p, double nu) : m(m), p(p), nu(nu) {
  require(m >= 1, "CombParams: m must be >= 1");
  require(std::isfinite(p) && p >= 0.0 && p <= 1.0,
          "CombParams: p must lie in [0, 1]");
  require(std::isfinite(nu), "CombParams: nu must be finite");
}

CombNatural::CombNatural(int m, double psi, double nu)
    : m(m), psi(psi), nu(nu) {
  require(m >= 1, "CombNatural: m must be >= 1");
  require(std::isfinite(psi), "CombNatural: psi must be finite");
  require(std::isfinite(nu), "CombNatural: nu must be finite");
}

CombNatural to_natural(const CombParams &params) {
  require(params.p > 0.0 && params.p < 1.0,
          "to_natural: p must lie strictly inside (0, 1)");
  return CombNatural(params.m, std::log(params.p) - std::log1p(-params.p),
                     params.nu);
}

CombParams to_mean(const CombNatural &natural) {
  return CombParams(natural.m, 1.0 / (1.0 + std::exp(-natural.psi)),
                    natural.nu);
}

double log_normalizer(const CombParams &params) {
  require(params.p > 0.0 && params.p < 1.0,
          "log_normalizer: p must lie strictly inside (0, 1)");
  return log_sum_exp(log_terms_mean(params));
}

double log_z(const CombNatural &natural) {
  return log_sum_exp(log_terms_natural(natural));
}

double pmf(const CombParams &params, int k) {
  check_k(params.m, k);
  if (params.p == 0.0) return k == 0 ? 1.0 : 0.0;
  if (params.p == 1.0) return k == params.m ? 1.0 : 0.0;
  const auto terms = log_terms_mean(params);
  return std::exp(terms[k] - log_sum_exp(terms));
}

double pmf(const CombNatural &natural, int k) {
  check_k(natural.m, k);
  const auto terms = log_terms_natural(natural);
  return std::exp(terms[k] - log_sum_exp(terms));
}

std::vector<double> pmf_table(const CombParams &params) {
  if (params.p == 0.0) return point_mass(params.m, 0);
  if (params.p == 1.0) return point_mass(params.m, params.m);
  return normalize_to_pmf(log_terms_mean(params));
}

std::vector<double> pmf_table(const CombNatural &natural) {
  return normalize_to_pmf(log_terms_natural(natural));
}

CombMoments moments(const CombParams &params) {
  const auto table = pmf_table(params);
  double mean = 0.0, second = 0.0, factorial2 = 0.0;
  for (int k = 0; k <= params.m; ++k) {
    mean += k * table[k];
    second += static_cast<double>(k) * k * table[k];
    factorial2 += static_cast<double>(k) * (k - 1) * table[k];
  }
  return {mean, second - mean * mean, factorial2};
}

double generating_function(const CombParams &params, GenFunction kind,
                           double t) {
  require(params.p > 0.0 && params.p < 1.0,
          "generating_function: p must lie strictly inside (0, 1)");
  require(std::isfinite(t), "generating_function: t must be finite");
  const int m = params.m;
  const double log_x0 = std::log(params.p) - std::log1p(-params.p);
  const double log_denom = log_t(m, log_x0, params.nu);

  if (kind == GenFunction::mgf) {
    return std::exp(log_t(m, t + log_x0, params.nu) - log_denom);
  }

  // pgf: negative t alternates term signs, so accumulate a signed sum under a
  // common scale instead of pure log space.
  const double log_abs_t = std::log(std::abs(t));
  if (t >= 0.0) {
    return std::exp(log_t(m, log_abs_t + log_x0, params.nu) - log_denom);
  }
  std::vector<double> exponents(m + 1);
  double max_e = kNegInf;
  for (int k = 0; k <= m; ++k) {
    exponents[k] =
        k * (log_abs_t + log_x0) + params.nu * log_binomial(m, k);
    max_e = std::max(max_e, exponents[k]);
  }
  double signed_sum = 0.0;
  for (int k = 0; k <= m; ++k) {
    const double term = std::exp(exponents[k] - max_e);
    signed_sum += (k % 2 == 0) ? term : -term;
  }
  return signed_sum * std::exp(max_e - log_denom);
}

std::complex<double> characteristic_function(const CombParams &params,
                                             double t) {
  require(params.p > 0.0 && params.p < 1.0,
          "characteristic_function: p must lie strictly inside (0, 1)");
  require(std::isfinite(t), "characteristic_function: t must be finite");
  const int m = params.m;
  const double log_x0 = std::log(params.p) - std::log1p(-params.p);
  std::vector<double> exponents(m + 1);
  double max_e = kNegInf;
  for (int k = 0; k <= m; ++k) {
    exponents[k] = k * log_x0 + params.nu * log_binomial(m, k);
    max_e = std::max(max_e, exponents[k]);
  }
  std::complex<double> numerator(0.0, 0.0);
  double denominator = 0.0;
  for (int k = 0; k <= m; ++k) {
    const double scaled = std::exp(exponents[k] - max_e);
    numerator += std::polar(scaled, t * k);
    denominator += scaled;
  }
  return numerator / denominator;
}

std::vector<int> sample(const CombParams &params, std::size_t n,
                        std::uint64_t seed) {
  require(n >= 1, "sample: n must be >= 1");
  const auto table = pmf_table(params);
  std::vector<double> cdf(table.size());
  double running = 0.0;
  for (std::size_t k = 0; k < table.size(); ++k) {
    running += table[k];
    cdf[k] = running;
  }
  cdf.back() = 1.0;

  std::mt19937_64 gen(seed);
  std::vector<int> draws(n);
  for (std::size_t i = 0; i < n; ++i) {
    const double u = static_cast<double>(gen() >> 11) * 0x1.0p-53;
    draws[i] = static_cast<int>(
        std::upper_bound(cdf.begin(), cdf.end(), u) - cdf.begin());
  }
  return draws;
}

}  // namespace commax
