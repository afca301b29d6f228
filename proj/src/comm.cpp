// Apache License, Version 2.0, refer to LICENSE.txt

#include "commax/comm.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>
#include <stdexcept>
#include <string>

#include "commax/errors.hpp"
#include "commax/log_space.hpp"

namespace commax {

namespace {

constexpr std::uint64_t kBlock = 8192;

void require(bool cond, const char *msg) {
  if (!cond) throw std::domain_error(msg);
}

void check_domain(int m, int r) {
  require(m >= 1, "composition domain: m must be >= 1");
  require(r >= 2, "composition domain: r must be >= 2");
}

std::uint64_t checked_count(const CommParams &params) {
  const std::uint64_t count = composition_count(params.m, params.parts());
  if (count > params.max_compositions) {
    throw CapExceededError(
        "composition domain size " + std::to_string(count) +
            " exceeds cap " + std::to_string(params.max_compositions),
        count);
  }
  return count;
}

// sum_i log(k_i!)
double log_factorial_sum(std::span<const int> k) {
  double sum = 0.0;
  for (int ki : k) sum += log_factorial(ki);
  return sum;
}

// log of the unnormalized mass at k; Term must map span<const int> -> double.
// Streams the whole domain in colex order.
template <typename Term>
double enumerate_serial(int m, int r, Term term) {
  std::vector<int> k = first_composition(m, r);
  LogSumAccumulator acc;
  do {
    acc.add(term(std::span<const int>(k)));
  } while (next_composition(k));
  return acc.value();
}

// Same sum, split into fixed blocks; block partials are accumulated
// independently (parallel when OpenMP is enabled) and combined in block
// order, so the result is invariant to thread count.
template <typename Term>
double enumerate_blocked(int m, int r, std::uint64_t count, Term term) {
  const std::uint64_t blocks = (count + kBlock - 1) / kBlock;
  std::vector<double> partial(blocks);
#pragma omp parallel for schedule(dynamic)
  for (std::int64_t b = 0; b < static_cast<std::int64_t>(blocks); ++b) {
    const std::uint64_t begin = static_cast<std::uint64_t>(b) * kBlock;
    const std::uint64_t len = std::min(kBlock, count - begin);
    std::vector<int> k = composition_at(m, r, begin);
    LogSumAccumulator acc;
    for (std::uint64_t i = 0; i < len; ++i) {
      acc.add(term(std::span<const int>(k)));
      if (i + 1 < len) next_composition(k);
    }
    partial[b] = acc.value();
  }
  LogSumAccumulator acc;
  for (double v : partial) acc.add(v);
  return acc.value();
}

std::vector<double> log_probs(const CommParams &params) {
  std::vector<double> log_p(params.p.size());
  for (std::size_t i = 0; i < params.p.size(); ++i) {
    log_p[i] = params.p[i] > 0.0 ? std::log(params.p[i]) : kNegInf;
  }
  return log_p;
}

// log mult(m; k)^nu prod p_i^{k_i}; zero-probability cells with positive
// counts contribute no mass.
double log_term_mean(std::span<const int> k, std::span<const double> log_p,
                     double log_m_fact, double nu) {
  double value = nu * log_m_fact;
  for (std::size_t i = 0; i < k.size(); ++i) {
    if (k[i] == 0) continue;  // zero count contributes nothing, even at p = 0
    if (log_p[i] == kNegInf) return kNegInf;
    value += k[i] * log_p[i] - nu * log_factorial(k[i]);
  }
  return value;
}

}  // namespace

CompositionIndex::CompositionIndex(std::vector<int> counts)
    : k(std::move(counts)) {
  require(k.size() >= 2, "CompositionIndex: need at least two parts");
  for (int ki : k) {
    require(ki >= 0, "CompositionIndex: entries must be >= 0");
  }
}

int CompositionIndex::total() const {
  return std::accumulate(k.begin(), k.end(), 0);
}

CommParams::CommParams(int m, std::vector<double> p, double nu,
                       std::uint64_t max_compositions)
    : m(m), p(std::move(p)), nu(nu), max_compositions(max_compositions) {
  check_domain(m, static_cast<int>(this->p.size()));
  double sum = 0.0;
  for (double pi : this->p) {
    require(std::isfinite(pi) && pi >= 0.0,
            "CommParams: probabilities must be >= 0");
    sum += pi;
  }
  require(std::abs(sum - 1.0) <= 1e-12,
          "CommParams: probabilities must sum to 1");
  require(std::isfinite(nu), "CommParams: nu must be finite");
}

CommHyper::CommHyper(int m, std::vector<double> a, double b, double c)
    : m(m), a(std::move(a)), b(b), c(c) {
  check_domain(m, static_cast<int>(this->a.size()) + 1);
  for (double ai : this->a) {
    require(std::isfinite(ai), "CommHyper: a must be finite");
  }
  require(std::isfinite(b), "CommHyper: b must be finite");
  require(std::isfinite(c) && c >= 0.0, "CommHyper: c must be >= 0");
}

std::uint64_t composition_count(int m, int r) {
  // Accepts the degenerate m = 0 and r = 1 cases (both count 1); the
  // unranking recursion relies on them.
  require(m >= 0 && r >= 1, "composition_count: need m >= 0 and r >= 1");
  // C(m+r-1, r-1) by the multiplicative rule; exact at every step because the
  // running product of consecutive ratios is itself a binomial coefficient.
  std::uint64_t count = 1;
  for (int j = 1; j <= r - 1; ++j) {
    const unsigned __int128 next = static_cast<unsigned __int128>(count) *
                                   static_cast<unsigned __int128>(m + j) /
                                   static_cast<unsigned __int128>(j);
    if (next > UINT64_MAX) return UINT64_MAX;
    count = static_cast<std::uint64_t>(next);
  }
  return count;
}

std::vector<int> first_composition(int m, int r) {
  check_domain(m, r);
  std::vector<int> k(r, 0);
  k[0] = m;
  return k;
}

bool next_composition(std::span<int> k) {
  const int r = static_cast<int>(k.size());
  int i = 0;
  while (i < r && k[i] == 0) ++i;
  if (i >= r - 1) return false;  // all mass in the last part
  const int t = k[i];
  k[i] = 0;
  k[0] = t - 1;
  k[i + 1] += 1;
  return true;
}

std::vector<int> composition_at(int m, int r, std::uint64_t rank) {
  check_domain(m, r);
  std::vector<int> k(r, 0);
  // Colex: the last coordinate is most significant.  Peel coordinates from
  // the back; with `parts` coordinates left and remaining total `m`, the
  // block with last coordinate v holds C(m-v+parts-2, parts-2) elements.
  int remaining = m;
  for (int pos = r - 1; pos >= 1; --pos) {
    int v = 0;
    for (;; ++v) {
      const std::uint64_t block = composition_count(remaining - v, pos);
      if (rank < block) break;
      rank -= block;
    }
    k[pos] = v;
    remaining -= v;
    if (remaining == 0) break;
  }
  k[0] = remaining;
  return k;
}

double comm_log_unnormalized(const CommParams &params,
                             const CompositionIndex &k) {
  require(k.parts() == params.parts() && k.total() == params.m,
          "comm: composition does not match the parameter domain");
  return log_term_mean(k.k, log_probs(params), log_factorial(params.m),
                       params.nu);
}

double comm_log_normalizer(const CommParams &params) {
  const std::uint64_t count = checked_count(params);
  const auto log_p = log_probs(params);
  const double log_m_fact = log_factorial(params.m);
  return enumerate_blocked(params.m, params.parts(), count,
                           [&](std::span<const int> k) {
                             return log_term_mean(k, log_p, log_m_fact,
                                                  params.nu);
                           });
}

double comm_log_normalizer_serial(const CommParams &params) {
  checked_count(params);
  const auto log_p = log_probs(params);
  const double log_m_fact = log_factorial(params.m);
  return enumerate_serial(params.m, params.parts(),
                          [&](std::span<const int> k) {
                            return log_term_mean(k, log_p, log_m_fact,
                                                 params.nu);
                          });
}

double comm_pmf(const CommParams &params, const CompositionIndex &k) {
  const double log_mass = comm_log_unnormalized(params, k);
  if (log_mass == kNegInf) return 0.0;
  return std::exp(log_mass - comm_log_normalizer(params));
}

CommSufficientStats comm_sufficient_stats(
    std::span<const CompositionIndex> sample) {
  require(!sample.empty(), "comm_sufficient_stats: empty sample");
  const int r = sample[0].parts();
  const int m = sample[0].total();
  CommSufficientStats stats{0.0, std::vector<double>(r - 1, 0.0),
                            static_cast<std::int64_t>(sample.size()), m};
  for (const auto &obs : sample) {
    require(obs.parts() == r && obs.total() == m,
            "comm_sufficient_stats: observations must share m and r");
    stats.s0 += log_factorial_sum(obs.k);
    for (int i = 0; i < r - 1; ++i) stats.s[i] += obs.k[i];
  }
  return stats;
}

CommHyper comm_conjugate_update(const CommHyper &hyper,
                                const CompositionIndex &k) {
  require(k.parts() == hyper.parts() && k.total() == hyper.m,
          "comm_conjugate_update: composition does not match hyper domain");
  CommHyper updated = hyper;
  for (int i = 0; i < k.parts() - 1; ++i) updated.a[i] += k.k[i];
  updated.b += log_factorial_sum(k.k);
  updated.c += 1.0;
  return updated;
}

CommParams comm_from_cmp_conditional(const std::vector<double> &lambdas,
                                     double nu, int m) {
  require(lambdas.size() >= 2, "comm_from_cmp_conditional: need >= 2 rates");
  double sum = 0.0;
  for (double l : lambdas) {
    require(std::isfinite(l) && l > 0.0,
            "comm_from_cmp_conditional: rates must be positive");
    require(nu > 0.0 || (nu == 0.0 && l < 1.0),
            "comm_from_cmp_conditional: marginals must be convergent");
    sum += l;
  }
  std::vector<double> p(lambdas.size());
  for (std::size_t i = 0; i < lambdas.size(); ++i) p[i] = lambdas[i] / sum;
  // Guard against roundoff in the simplex constraint.
  const double total = std::accumulate(p.begin(), p.end(), 0.0);
  for (double &pi : p) pi /= total;
  return CommParams(m, std::move(p), nu);
}

double comm_exchangeable_sequence_prob(const CommSumDistribution &sum_dist,
                                       const CompositionIndex &k) {
  require(!sum_dist.empty(), "comm_exchangeable_sequence_prob: empty mixing");
  const int m = k.total();
  const int r = k.parts();
  double total = 0.0;
  for (const auto &[key, prob] : sum_dist) {
    require(static_cast<int>(key.size()) == r,
            "comm_exchangeable_sequence_prob: mixing keys must have r parts");
    require(std::accumulate(key.begin(), key.end(), 0) == m,
            "comm_exchangeable_sequence_prob: mixing keys must sum to m");
    require(std::isfinite(prob) && prob >= 0.0,
            "comm_exchangeable_sequence_prob: probabilities must be >= 0");
    total += prob;
  }
  require(std::abs(total - 1.0) <= 1e-10,
          "comm_exchangeable_sequence_prob: mixing must sum to 1");
  const auto it = sum_dist.find(k.k);
  if (it == sum_dist.end() || it->second == 0.0) return 0.0;
  const double log_mult =
      log_factorial(m) - log_factorial_sum(k.k);
  return std::exp(std::log(it->second) - log_mult);
}

double comm_log_posterior_kernel(const CommHyper &hyper,
                                 std::span<const double> psi, double nu,
                                 std::uint64_t max_compositions) {
  const int r = hyper.parts();
  require(static_cast<int>(psi.size()) == r - 1,
          "comm_log_posterior_kernel: psi must have r-1 entries");
  for (double v : psi) {
    require(std::isfinite(v), "comm_log_posterior_kernel: psi must be finite");
  }
  require(std::isfinite(nu), "comm_log_posterior_kernel: nu must be finite");

  const std::uint64_t count = composition_count(hyper.m, r);
  if (count > max_compositions) {
    throw CapExceededError(
        "composition domain size " + std::to_string(count) +
            " exceeds cap " + std::to_string(max_compositions),
        count);
  }
  const double log_gn = enumerate_blocked(
      hyper.m, r, count, [&](std::span<const int> k) {
        double e = -nu * log_factorial_sum(k);
        for (int i = 0; i < r - 1; ++i) e += psi[i] * k[i];
        return e;
      });

  double value = log_normal_density(nu, 1.0, 1.0) - hyper.b * nu -
                 hyper.c * log_gn;
  for (int i = 0; i < r - 1; ++i) {
    value += log_normal_density(psi[i], 0.0, 1.0) + hyper.a[i] * psi[i];
  }
  return value;
}

}  // namespace commax
