// Apache License, Version 2.0, refer to LICENSE.txt
//
// Conjugate Bayesian inference for the Conway-Maxwell binomial in its
// natural parameterization (psi, nu).  The prior family
//
//   h(psi, nu) propto phi(psi) phi(nu - 1) exp(a psi - b nu) Z(psi, nu)^{-c}
//
// is closed under sampling: observing k updates a += k,
// b += log(k!(m-k)!), c += 1.  The standard normal factors keep the prior
// proper at c = 0; their means/variances are configurable.

#ifndef COMMAX_INFERENCE_HPP
#define COMMAX_INFERENCE_HPP

#include <array>
#include <cstdint>
#include <span>
#include <utility>
#include <vector>

#include "commax/comb.hpp"

namespace commax {

// Observed frequencies: counts[k] trials had k successes out of m.
struct FrequencyTable {
  FrequencyTable(int m, std::vector<std::int64_t> counts);
  int m;
  std::vector<std::int64_t> counts;
  std::int64_t total() const;
};

// s1 = sum of successes, s2 = sum of log(k!(m-k)!) over observations.
struct SufficientStats {
  std::int64_t s1;
  double s2;
  std::int64_t n;
  int m;
};
SufficientStats sufficient_stats(const FrequencyTable &data);

struct Hyperparams {
  Hyperparams(int m, double a = 0.0, double b = 0.0, double c = 0.0);
  int m;
  double a;
  double b;
  double c;  // pseudo-observation count, >= 0
};

Hyperparams conjugate_update(const Hyperparams &hyper, int k);
Hyperparams conjugate_update(const Hyperparams &hyper,
                             const FrequencyTable &data);

// Means/variances of the normal base factors on psi and nu.
struct NormalPrior {
  double psi_mean = 0.0;
  double psi_var = 1.0;
  double nu_mean = 1.0;
  double nu_var = 1.0;
};

// Unnormalized log posterior density at (psi, nu).
double log_posterior_kernel(const Hyperparams &hyper, double psi, double nu,
                            const NormalPrior &prior = {});

struct GridSpec {
  double psi_min = -5.0;
  double psi_max = 5.0;
  double nu_min = -4.0;
  double nu_max = 6.0;
  int psi_points = 401;
  int nu_points = 401;
};

// The posterior kernel evaluated on a rectangular grid and normalized by
// trapezoidal quadrature.  log_density is row-major (psi index outer) and
// integrates to 1 over the box; cell masses are density times the product of
// the per-axis trapezoid weights.
struct PosteriorGrid {
  std::vector<double> psi;
  std::vector<double> nu;
  std::vector<double> log_density;
  std::vector<double> psi_weight;
  std::vector<double> nu_weight;
  double log_normalizer;  // log integral of the raw kernel over the box

  double log_cell_mass(std::size_t i, std::size_t j) const;
  double total_mass() const;
  std::pair<double, double> mode() const;  // argmax cell center
};

// Cell evaluations are independent, so the parallel version fills a buffer
// (OpenMP) and reduces in fixed row-major order; results are identical for
// any thread count.  grid_posterior_serial is a plain streaming evaluation
// kept as a reference.
PosteriorGrid grid_posterior(const Hyperparams &hyper,
                             const GridSpec &spec = {},
                             const NormalPrior &prior = {});
PosteriorGrid grid_posterior_serial(const Hyperparams &hyper,
                                    const GridSpec &spec = {},
                                    const NormalPrior &prior = {});

// Joint posterior mode by Newton ascent seeded at the grid argmax, with
// gradient and Hessian from central finite differences (relative step 1e-4).
// sigma is the inverse negated Hessian at the mode.  Convergence means
// gradient norm < grad_tol within max_iterations; anything else raises
// OptimizationError with the iteration trace.
struct NewtonOptions {
  double grad_tol = 1e-8;
  int max_iterations = 100;
};
struct MapResult {
  double psi;
  double nu;
  std::array<double, 4> sigma;  // row-major 2x2, symmetric positive definite
  int iterations;
  double gradient_norm;
};
MapResult map_estimate(const Hyperparams &hyper, const GridSpec &spec = {},
                       const NormalPrior &prior = {},
                       const NewtonOptions &newton = {});

// Expected frequencies n * pmf(k) for k = 0..m.
std::vector<double> fitted_counts(const CombNatural &params, double n);

// Variational lower bound on log Z(psi, nu): for any distribution q on
// {0..m},  E_q[psi W - nu log(W!(m-W)!)] + H(q) <= log Z,  with equality
// iff q is the model pmf.
double jensen_lower_bound(const CombNatural &natural,
                          std::span<const double> q);

// Posterior integrability diagnostic: total mass over nested boxes
// [-L_j, L_j]^2 with L_j = 5 * 2^j.  Each level integrates only the new
// box shell (four disjoint rectangles, trapezoid rule), so levels are never
// re-evaluated.  tail_fraction is the share of cumulative mass contributed
// by the level's shell; converged means the last level's share < 1e-12.
struct ProprietyLevel {
  double half_width;
  double log_mass;  // cumulative
  double tail_fraction;
};
struct ProprietyReport {
  std::vector<ProprietyLevel> levels;
  bool converged;
};
ProprietyReport propriety_check(const Hyperparams &hyper,
                                int expansion_levels = 4,
                                const NormalPrior &prior = {});

}  // namespace commax

#endif  // COMMAX_INFERENCE_HPP
