// Apache License, Version 2.0, refer to LICENSE.txt

#include "commax/baselines.hpp"

#include <cmath>
#include <stdexcept>

#include "commax/log_space.hpp"

namespace commax {

namespace {

void require(bool cond, const char *msg) {
  if (!cond) throw std::domain_error(msg);
}

// Binom(k; m, p) with the degenerate p = 0, 1 cases exact.
double binomial_pmf(int m, double p, int k) {
  if (p == 0.0) return k == 0 ? 1.0 : 0.0;
  if (p == 1.0) return k == m ? 1.0 : 0.0;
  return std::exp(log_binomial(m, k) + k * std::log(p) +
                  (m - k) * std::log1p(-p));
}

}  // namespace

CbParams::CbParams(int m, double p, double rho) : m(m), p(p), rho(rho) {
  require(m >= 1, "CbParams: m must be >= 1");
  require(std::isfinite(p) && p >= 0.0 && p <= 1.0,
          "CbParams: p must lie in [0, 1]");
  require(std::isfinite(rho) && rho >= 0.0 && rho <= 1.0,
          "CbParams: rho must lie in [0, 1]");
}

double cb_pmf(const CbParams &params, int k) {
  require(k >= 0 && k <= params.m, "cb_pmf: k outside {0, ..., m}");
  double endpoint = 0.0;
  if (k == 0) endpoint += 1.0 - params.p;
  if (k == params.m) endpoint += params.p;
  return (1.0 - params.rho) * binomial_pmf(params.m, params.p, k) +
         params.rho * endpoint;
}

BinomialFit binomial_mle_fit(const FrequencyTable &data) {
  const SufficientStats stats = sufficient_stats(data);
  const double p_hat =
      static_cast<double>(stats.s1) / (static_cast<double>(stats.n) * data.m);
  BinomialFit fit;
  fit.p_hat = p_hat;
  fit.fitted.resize(data.m + 1);
  for (int k = 0; k <= data.m; ++k) {
    fit.fitted[k] = stats.n * binomial_pmf(data.m, p_hat, k);
  }
  return fit;
}

double sse(std::span<const double> observed, std::span<const double> fitted) {
  if (observed.size() != fitted.size()) {
    throw std::domain_error("sse: length mismatch");
  }
  double total = 0.0;
  for (std::size_t i = 0; i < observed.size(); ++i) {
    const double d = observed[i] - fitted[i];
    total += d * d;
  }
  return total;
}

}  // namespace commax
