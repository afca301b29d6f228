// Apache License, Version 2.0, refer to LICENSE.txt

#include "commax/inference.hpp"

#include <algorithm>
#include <cmath>
#include <functional>
#include <numeric>
#include <sstream>
#include <stdexcept>
#include <string>

#include "commax/errors.hpp"
#include "commax/log_space.hpp"

namespace commax {

namespace {

constexpr double kFdStep = 1e-4;
constexpr double kTailTol = 1e-12;

void require(bool cond, const char *msg) {
  if (!cond) throw std::domain_error(msg);
}

void check_prior(const NormalPrior &prior) {
  require(std::isfinite(prior.psi_mean) && std::isfinite(prior.nu_mean),
          "NormalPrior: means must be finite");
  require(std::isfinite(prior.psi_var) && prior.psi_var > 0.0 &&
              std::isfinite(prior.nu_var) && prior.nu_var > 0.0,
          "NormalPrior: variances must be positive");
}

std::vector<double> axis(double lo, double hi, int n) {
  std::vector<double> xs(n);
  const double step = (hi - lo) / (n - 1);
  for (int i = 0; i < n; ++i) xs[i] = lo + i * step;
  xs.back() = hi;
  return xs;
}

std::vector<double> trapezoid_weights(double lo, double hi, int n) {
  const double step = (hi - lo) / (n - 1);
  std::vector<double> w(n, step);
  w.front() = 0.5 * step;
  w.back() = 0.5 * step;
  return w;
}

void check_grid(const GridSpec &spec) {
  require(std::isfinite(spec.psi_min) && std::isfinite(spec.psi_max) &&
              spec.psi_min < spec.psi_max,
          "GridSpec: psi range must be a finite nonempty interval");
  require(std::isfinite(spec.nu_min) && std::isfinite(spec.nu_max) &&
              spec.nu_min < spec.nu_max,
          "GridSpec: nu range must be a finite nonempty interval");
  require(spec.psi_points >= 32 && spec.nu_points >= 32,
          "GridSpec: need at least 32 points per axis");
}

PosteriorGrid make_grid_frame(const GridSpec &spec) {
  PosteriorGrid grid;
  grid.psi = axis(spec.psi_min, spec.psi_max, spec.psi_points);
  grid.nu = axis(spec.nu_min, spec.nu_max, spec.nu_points);
  grid.psi_weight =
      trapezoid_weights(spec.psi_min, spec.psi_max, spec.psi_points);
  grid.nu_weight = trapezoid_weights(spec.nu_min, spec.nu_max, spec.nu_points);
  grid.log_density.resize(static_cast<std::size_t>(spec.psi_points) *
                          spec.nu_points);
  return grid;
}

void normalize_grid(PosteriorGrid &grid) {
  const std::size_t nn = grid.nu.size();
  for (std::size_t idx = 0; idx < grid.log_density.size(); ++idx) {
    if (!std::isfinite(grid.log_density[idx])) {
      throw NumericalError(
          "grid_posterior: non-finite kernel at psi = " +
          std::to_string(grid.psi[idx / nn]) +
          ", nu = " + std::to_string(grid.nu[idx % nn]));
    }
  }
  LogSumAccumulator acc;
  for (std::size_t i = 0; i < grid.psi.size(); ++i) {
    for (std::size_t j = 0; j < nn; ++j) {
      acc.add(grid.log_density[i * nn + j] + std::log(grid.psi_weight[i]) +
              std::log(grid.nu_weight[j]));
    }
  }
  grid.log_normalizer = acc.value();
  for (double &v : grid.log_density) v -= grid.log_normalizer;
}

// Gradient and Hessian of f by central differences with relative step.
struct Derivatives {
  double g0, g1;
  double h00, h01, h11;
};

Derivatives finite_differences(
    const std::function<double(double, double)> &f, double x0, double x1) {
  const double h0 = kFdStep * std::max(1.0, std::abs(x0));
  const double h1 = kFdStep * std::max(1.0, std::abs(x1));
  const double fc = f(x0, x1);
  const double fp0 = f(x0 + h0, x1), fm0 = f(x0 - h0, x1);
  const double fp1 = f(x0, x1 + h1), fm1 = f(x0, x1 - h1);
  const double fpp = f(x0 + h0, x1 + h1), fpm = f(x0 + h0, x1 - h1);
  const double fmp = f(x0 - h0, x1 + h1), fmm = f(x0 - h0, x1 - h1);
  Derivatives d;
  d.g0 = (fp0 - fm0) / (2.0 * h0);
  d.g1 = (fp1 - fm1) / (2.0 * h1);
  d.h00 = (fp0 - 2.0 * fc + fm0) / (h0 * h0);
  d.h11 = (fp1 - 2.0 * fc + fm1) / (h1 * h1);
  d.h01 = (fpp - fpm - fmp + fmm) / (4.0 * h0 * h1);
  return d;
}

// Trapezoid log mass of the kernel over [x0,x1] x [y0,y1]; rows evaluated
// independently (parallel), combined in fixed order.
double log_mass_rect(const std::function<double(double, double)> &f,
                     double x0, double x1, int nx, double y0, double y1,
                     int ny) {
  const auto xs = axis(x0, x1, nx);
  const auto ys = axis(y0, y1, ny);
  const auto wx = trapezoid_weights(x0, x1, nx);
  const auto wy = trapezoid_weights(y0, y1, ny);
  std::vector<double> row_mass(nx);
#pragma omp parallel for schedule(static)
  for (int i = 0; i < nx; ++i) {
    LogSumAccumulator acc;
    for (int j = 0; j < ny; ++j) {
      acc.add(f(xs[i], ys[j]) + std::log(wy[j]));
    }
    row_mass[i] = acc.value() + std::log(wx[i]);
  }
  return log_sum_exp(row_mass);
}

int shell_axis_points(double extent, double half_width) {
  const double step = std::max(0.025, half_width / 2000.0);
  const int n = static_cast<int>(std::ceil(extent / step)) + 1;
  return std::clamp(n, 3, 1601);
}

}  // namespace

FrequencyTable::FrequencyTable(int m, std::vector<std::int64_t> counts)
    : m(m), counts(std::move(counts)) {
  require(m >= 1, "FrequencyTable: m must be >= 1");
  require(static_cast<int>(this->counts.size()) == m + 1,
          "FrequencyTable: need m+1 counts");
  for (std::int64_t c : this->counts) {
    require(c >= 0, "FrequencyTable: counts must be >= 0");
  }
  require(total() >= 1, "FrequencyTable: need at least one observation");
}

std::int64_t FrequencyTable::total() const {
  return std::accumulate(counts.begin(), counts.end(), std::int64_t{0});
}

SufficientStats sufficient_stats(const FrequencyTable &data) {
  SufficientStats stats{0, 0.0, data.total(), data.m};
  for (int k = 0; k <= data.m; ++k) {
    stats.s1 += static_cast<std::int64_t>(k) * data.counts[k];
    stats.s2 += data.counts[k] *
                (log_factorial(k) + log_factorial(data.m - k));
  }
  return stats;
}

Hyperparams::Hyperparams(int m, double a, double b, double c)
    : m(m), a(a), b(b), c(c) {
  require(m >= 1, "Hyperparams: m must be >= 1");
  require(std::isfinite(a) && std::isfinite(b), "Hyperparams: a, b finite");
  require(std::isfinite(c) && c >= 0.0, "Hyperparams: c must be >= 0");
}

Hyperparams conjugate_update(const Hyperparams &hyper, int k) {
  require(k >= 0 && k <= hyper.m, "conjugate_update: k outside {0..m}");
  return Hyperparams(hyper.m, hyper.a + k,
                     hyper.b + log_factorial(k) + log_factorial(hyper.m - k),
                     hyper.c + 1.0);
}

Hyperparams conjugate_update(const Hyperparams &hyper,
                             const FrequencyTable &data) {
  require(data.m == hyper.m, "conjugate_update: data m != hyper m");
  const SufficientStats stats = sufficient_stats(data);
  return Hyperparams(hyper.m, hyper.a + stats.s1, hyper.b + stats.s2,
                     hyper.c + stats.n);
}

double log_posterior_kernel(const Hyperparams &hyper, double psi, double nu,
                            const NormalPrior &prior) {
  check_prior(prior);
  require(std::isfinite(psi) && std::isfinite(nu),
          "log_posterior_kernel: psi, nu must be finite");
  double value = log_normal_density(psi, prior.psi_mean, prior.psi_var) +
                 log_normal_density(nu, prior.nu_mean, prior.nu_var) +
                 hyper.a * psi - hyper.b * nu;
  if (hyper.c != 0.0) {
    value -= hyper.c * log_z(CombNatural(hyper.m, psi, nu));
  }
  return value;
}

double PosteriorGrid::log_cell_mass(std::size_t i, std::size_t j) const {
  return log_density[i * nu.size() + j] + std::log(psi_weight[i]) +
         std::log(nu_weight[j]);
}

double PosteriorGrid::total_mass() const {
  LogSumAccumulator acc;
  for (std::size_t i = 0; i < psi.size(); ++i) {
    for (std::size_t j = 0; j < nu.size(); ++j) {
      acc.add(log_cell_mass(i, j));
    }
  }
  return std::exp(acc.value());
}

std::pair<double, double> PosteriorGrid::mode() const {
  const std::size_t best = static_cast<std::size_t>(
      std::max_element(log_density.begin(), log_density.end()) -
      log_density.begin());
  return {psi[best / nu.size()], nu[best % nu.size()]};
}

PosteriorGrid grid_posterior(const Hyperparams &hyper, const GridSpec &spec,
                             const NormalPrior &prior) {
  check_grid(spec);
  check_prior(prior);
  PosteriorGrid grid = make_grid_frame(spec);
  const std::int64_t cells = static_cast<std::int64_t>(grid.log_density.size());
  const std::size_t nn = grid.nu.size();
#pragma omp parallel for schedule(static)
  for (std::int64_t idx = 0; idx < cells; ++idx) {
    grid.log_density[idx] = log_posterior_kernel(
        hyper, grid.psi[idx / nn], grid.nu[idx % nn], prior);
  }
  normalize_grid(grid);
  return grid;
}

PosteriorGrid grid_posterior_serial(const Hyperparams &hyper,
                                    const GridSpec &spec,
                                    const NormalPrior &prior) {
  check_grid(spec);
  check_prior(prior);
  PosteriorGrid grid = make_grid_frame(spec);
  const std::size_t nn = grid.nu.size();
  for (std::size_t i = 0; i < grid.psi.size(); ++i) {
    for (std::size_t j = 0; j < nn; ++j) {
      grid.log_density[i * nn + j] =
          log_posterior_kernel(hyper, grid.psi[i], grid.nu[j], prior);
    }
  }
  normalize_grid(grid);
  return grid;
}

MapResult map_estimate(const Hyperparams &hyper, const GridSpec &spec,
                       const NormalPrior &prior, const NewtonOptions &newton) {
  require(std::isfinite(newton.grad_tol) && newton.grad_tol > 0.0,
          "map_estimate: grad_tol must be positive");
  require(newton.max_iterations >= 1,
          "map_estimate: max_iterations must be >= 1");
  const PosteriorGrid grid = grid_posterior(hyper, spec, prior);
  auto [psi, nu] = grid.mode();
  const auto f = [&](double x, double y) {
    return log_posterior_kernel(hyper, x, y, prior);
  };

  std::ostringstream trace;
  Derivatives d{};
  double grad_norm = 0.0;
  int iter = 0;
  bool converged = false;
  for (; iter <= newton.max_iterations; ++iter) {
    d = finite_differences(f, psi, nu);
    grad_norm = std::hypot(d.g0, d.g1);
    trace << "iter " << iter << ": psi=" << psi << " nu=" << nu
          << " |grad|=" << grad_norm << "\n";
    if (grad_norm < newton.grad_tol) {
      converged = true;
      break;
    }
    // Newton step: solve (-H) delta = grad.
    const double a00 = -d.h00, a01 = -d.h01, a11 = -d.h11;
    const double det = a00 * a11 - a01 * a01;
    if (!(det > 0.0 && a00 > 0.0)) {
      throw OptimizationError(
          "map_estimate: Hessian not negative definite at iterate",
          trace.str());
    }
    psi += (a11 * d.g0 - a01 * d.g1) / det;
    nu += (a00 * d.g1 - a01 * d.g0) / det;
  }
  if (!converged) {
    throw OptimizationError("map_estimate: no convergence in " +
                                std::to_string(newton.max_iterations) +
                                " iterations",
                            trace.str());
  }

  const double a00 = -d.h00, a01 = -d.h01, a11 = -d.h11;
  const double det = a00 * a11 - a01 * a01;
  if (!(det > 0.0 && a00 > 0.0)) {
    throw OptimizationError(
        "map_estimate: covariance not positive definite at the mode",
        trace.str());
  }
  MapResult result;
  result.psi = psi;
  result.nu = nu;
  result.sigma = {a11 / det, -a01 / det, -a01 / det, a00 / det};
  result.iterations = iter;
  result.gradient_norm = grad_norm;
  return result;
}

std::vector<double> fitted_counts(const CombNatural &params, double n) {
  require(std::isfinite(n) && n > 0.0, "fitted_counts: n must be positive");
  std::vector<double> fitted = pmf_table(params);
  for (double &v : fitted) v *= n;
  return fitted;
}

double jensen_lower_bound(const CombNatural &natural,
                          std::span<const double> q) {
  require(static_cast<int>(q.size()) == natural.m + 1,
          "jensen_lower_bound: q must have m+1 entries");
  double total = 0.0;
  for (double qk : q) {
    require(std::isfinite(qk) && qk >= 0.0,
            "jensen_lower_bound: q entries must be >= 0");
    total += qk;
  }
  require(std::abs(total - 1.0) <= 1e-10,
          "jensen_lower_bound: q must sum to 1");
  double bound = 0.0;
  for (int k = 0; k <= natural.m; ++k) {
    if (q[k] == 0.0) continue;
    const double log_w = log_factorial(k) + log_factorial(natural.m - k);
    bound += q[k] * (natural.psi * k - natural.nu * log_w - std::log(q[k]));
  }
  return bound;
}

ProprietyReport propriety_check(const Hyperparams &hyper, int expansion_levels,
                                const NormalPrior &prior) {
  require(expansion_levels >= 2, "propriety_check: need >= 2 levels");
  check_prior(prior);
  const auto f = [&](double psi, double nu) {
    return log_posterior_kernel(hyper, psi, nu, prior);
  };

  ProprietyReport report;
  LogSumAccumulator cumulative;
  for (int level = 0; level < expansion_levels; ++level) {
    const double half = 5.0 * std::pow(2.0, level);
    double shell_mass;
    if (level == 0) {
      const int n = shell_axis_points(2.0 * half, half);
      shell_mass = log_mass_rect(f, -half, half, n, -half, half, n);
    } else {
      // The shell between boxes splits into two full-height side slabs and
      // two half-width top/bottom slabs; interiors are disjoint.
      const double inner = half / 2.0;
      const int n_long = shell_axis_points(2.0 * half, half);
      const int n_short = shell_axis_points(half - inner, half);
      const int n_mid = shell_axis_points(2.0 * inner, half);
      LogSumAccumulator shell;
      shell.add(log_mass_rect(f, -half, -inner, n_short, -half, half, n_long));
      shell.add(log_mass_rect(f, inner, half, n_short, -half, half, n_long));
      shell.add(log_mass_rect(f, -inner, inner, n_mid, -half, -inner, n_short));
      shell.add(log_mass_rect(f, -inner, inner, n_mid, inner, half, n_short));
      shell_mass = shell.value();
    }
    cumulative.add(shell_mass);
    const double tail =
        level == 0 ? 1.0 : std::exp(shell_mass - cumulative.value());
    report.levels.push_back({half, cumulative.value(), tail});
  }
  report.converged = report.levels.back().tail_fraction < kTailTol;
  return report;
}

}  // namespace commax
