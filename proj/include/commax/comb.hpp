// Apache License, Version 2.0, refer to LICENSE.txt
//
// Conway-Maxwell binomial distribution on {0, ..., m}:
//
//   P(W = k) = p^k (1-p)^(m-k) C(m,k)^nu / S(p, nu),
//   S(p, nu) = sum_k p^k (1-p)^(m-k) C(m,k)^nu.
//
// nu = 1 recovers the binomial; nu > 1 is underdispersed, nu < 1
// overdispersed, with the extremes collapsing onto the central or the
// endpoint atoms.  The natural parameterization uses psi = log(p/(1-p)) with
// normalizer Z(psi, nu) = sum_k exp(psi k) / (k!(m-k)!)^nu; both forms give
// identical probabilities.

#ifndef COMMAX_COMB_HPP
#define COMMAX_COMB_HPP

#include <complex>
#include <cstdint>
#include <vector>

namespace commax {

struct CombParams {
  CombParams(int m, double p, double nu);
  int m;
  double p;   // success probability, in [0, 1]
  double nu;  // dispersion, any finite real
};

struct CombNatural {
  CombNatural(int m, double psi, double nu);
  int m;
  double psi;  // log odds
  double nu;
};

// Conversions; to_natural requires 0 < p < 1.
CombNatural to_natural(const CombParams &params);
CombParams to_mean(const CombNatural &natural);

// log S(p, nu); requires 0 < p < 1.
double log_normalizer(const CombParams &params);

// log Z(psi, nu) = log sum_k exp(psi k - nu log(k!(m-k)!)).
double log_z(const CombNatural &natural);

// P(W = k).  p = 0 and p = 1 degenerate to point masses at 0 and m.
double pmf(const CombParams &params, int k);
double pmf(const CombNatural &natural, int k);

// All m+1 probabilities, normalized in log space; sums to 1 within 1e-12.
std::vector<double> pmf_table(const CombParams &params);
std::vector<double> pmf_table(const CombNatural &natural);

struct CombMoments {
  double mean;
  double variance;
  double factorial2;  // E[W(W-1)]
};
CombMoments moments(const CombParams &params);

// E[t^W] (pgf) and E[e^{tW}] (mgf).  Both reduce to the ratio
// T(x, nu) / T(p/(1-p), nu) with T(x, nu) = sum_k x^k C(m,k)^nu and argument
// x = t p/(1-p) resp. e^t p/(1-p); requires 0 < p < 1.
enum class GenFunction { pgf, mgf };
double generating_function(const CombParams &params, GenFunction kind,
                           double t);

// E[e^{itW}], same ratio with argument e^{it} p/(1-p).
std::complex<double> characteristic_function(const CombParams &params,
                                             double t);

// n draws by inverse-CDF lookup on the exact pmf table.  The stream is fully
// pinned: std::mt19937_64 seeded with `seed`, uniforms u = (x >> 11) * 2^-53,
// draw = smallest k with u < cdf[k].  Identical seeds give identical output
// on every platform.
std::vector<int> sample(const CombParams &params, std::size_t n,
                        std::uint64_t seed);

}  // namespace commax

#endif  // COMMAX_COMB_HPP
