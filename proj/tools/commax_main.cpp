// Apache License, Version 2.0, refer to LICENSE.txt
//
// commax command-line tool.  Subcommands:
//
//   pmf             distribution table for one parameter setting (CSV)
//   fit             frequency-table analysis: sufficient statistics,
//                   conjugate posterior, grid, MAP with curvature, fitted
//                   counts, baseline comparison (JSON report + grid CSV)
//   pairwise        pairwise-probability curves over a p grid (CSV)
//   sample          reproducible draws, one integer per line
//   comm            multi-category generalization: pmf table, sufficient
//                   statistics, conjugate update
//   posterior-grid  normalized posterior density on a rectangular grid (CSV)
//   propriety       nested-box integrability diagnostic (JSON)
//
// Reports are JSON, tables are CSV with a `# schema:` first line.  Exit
// codes: 0 success, 2 input error, 3 resource cap exceeded, 4 numerical
// failure.  Output files are written whole via a temporary plus rename, so
// failed runs never leave partial files.

#include <array>
#include <cerrno>
#include <charconv>
#include <climits>
#include <cmath>
#include <cstdint>
#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <map>
#include <sstream>
#include <stdexcept>
#include <string>
#include <utility>
#include <vector>

#include "CLI11.hpp"
#include "commax/baselines.hpp"
#include "commax/comb.hpp"
#include "commax/comm.hpp"
#include "commax/data_io.hpp"
#include "commax/errors.hpp"
#include "commax/exchangeable.hpp"
#include "commax/inference.hpp"
#include "json.hpp"

namespace {

using nlohmann::ordered_json;

constexpr int kSchemaVersion = 1;

// Shortest round-trip decimal form; keeps repeated runs byte-identical.
std::string fmt(double v) {
  std::array<char, 32> buf;
  const auto res = std::to_chars(buf.data(), buf.data() + buf.size(), v);
  return std::string(buf.data(), res.ptr);
}

std::string schema_line(const char *kind) {
  return std::string("# schema: commax.") + kind + ".v" +
         std::to_string(kSchemaVersion) + "\n";
}

void write_file_atomic(const std::string &path, const std::string &content) {
  const std::string tmp = path + ".tmp";
  {
    std::ofstream out(tmp, std::ios::binary | std::ios::trunc);
    if (!out) throw std::runtime_error("cannot open '" + tmp + "' for writing");
    out << content;
    out.flush();
    if (!out) throw std::runtime_error("write failed: '" + tmp + "'");
  }
  std::filesystem::rename(tmp, path);
}

double parse_config_double(const std::string &key, const std::string &text) {
  const char *begin = text.c_str();
  char *end = nullptr;
  errno = 0;
  const double v = std::strtod(begin, &end);
  if (end == begin || *end != '\0' || errno == ERANGE) {
    throw std::domain_error("config: invalid number for " + key + ": '" +
                            text + "'");
  }
  return v;
}

int parse_config_int(const std::string &key, const std::string &text) {
  const char *begin = text.c_str();
  char *end = nullptr;
  errno = 0;
  const long v = std::strtol(begin, &end, 10);
  if (end == begin || *end != '\0' || errno == ERANGE || v < INT_MIN ||
      v > INT_MAX) {
    throw std::domain_error("config: invalid integer for " + key + ": '" +
                            text + "'");
  }
  return static_cast<int>(v);
}

// Flags shared by fit and posterior-grid: data source, conjugate prior,
// normal base factors, grid box, Newton tolerances.  A config file supplies
// any of these under the same names with dashes as underscores; explicit
// flags win over the file.
struct AnalysisOptions {
  std::string data_path;
  std::string raw_path;
  std::string config_path;
  int m_flag = 1;
  double a = 0.0;
  double b = 0.0;
  double c = 0.0;
  commax::NormalPrior prior;
  commax::GridSpec grid;
  commax::NewtonOptions newton;

  CLI::Option *opt_m = nullptr;
  CLI::Option *opt_a = nullptr;
  CLI::Option *opt_b = nullptr;
  CLI::Option *opt_c = nullptr;
  CLI::Option *opt_psi_mean = nullptr;
  CLI::Option *opt_psi_var = nullptr;
  CLI::Option *opt_nu_mean = nullptr;
  CLI::Option *opt_nu_var = nullptr;
  CLI::Option *opt_psi_min = nullptr;
  CLI::Option *opt_psi_max = nullptr;
  CLI::Option *opt_nu_min = nullptr;
  CLI::Option *opt_nu_max = nullptr;
  CLI::Option *opt_psi_points = nullptr;
  CLI::Option *opt_nu_points = nullptr;
  CLI::Option *opt_grad_tol = nullptr;
  CLI::Option *opt_max_iterations = nullptr;

  void attach(CLI::App *sub) {
    sub->add_option("--data", data_path,
                    "frequency-table CSV with header k,count");
    sub->add_option("--raw", raw_path,
                    "raw counts, one integer per line (requires --m)");
    opt_m = sub->add_option("--m", m_flag, "components per trial");
    sub->add_option("--config", config_path, "key = value configuration file");
    opt_a = sub->add_option("--a", a, "prior pseudo-sum of successes");
    opt_b = sub->add_option("--b", b, "prior pseudo-sum of log(k!(m-k)!)");
    opt_c = sub->add_option("--c", c, "prior pseudo-observation count");
    opt_psi_mean = sub->add_option("--psi-prior-mean", prior.psi_mean,
                                   "normal base mean for psi");
    opt_psi_var = sub->add_option("--psi-prior-var", prior.psi_var,
                                  "normal base variance for psi");
    opt_nu_mean = sub->add_option("--nu-prior-mean", prior.nu_mean,
                                  "normal base mean for nu");
    opt_nu_var = sub->add_option("--nu-prior-var", prior.nu_var,
                                 "normal base variance for nu");
    opt_psi_min = sub->add_option("--psi-min", grid.psi_min, "grid psi lower");
    opt_psi_max = sub->add_option("--psi-max", grid.psi_max, "grid psi upper");
    opt_nu_min = sub->add_option("--nu-min", grid.nu_min, "grid nu lower");
    opt_nu_max = sub->add_option("--nu-max", grid.nu_max, "grid nu upper");
    opt_psi_points =
        sub->add_option("--psi-points", grid.psi_points, "grid psi count");
    opt_nu_points =
        sub->add_option("--nu-points", grid.nu_points, "grid nu count");
    opt_grad_tol = sub->add_option("--grad-tol", newton.grad_tol,
                                   "Newton gradient tolerance");
    opt_max_iterations = sub->add_option(
        "--max-iterations", newton.max_iterations, "Newton iteration cap");
  }

  void apply_config() {
    if (config_path.empty()) return;
    auto cfg = commax::read_key_value_config_file(config_path);
    const auto take_d = [&cfg](const char *key, const CLI::Option *opt,
                               double &var) {
      const auto it = cfg.find(key);
      if (it == cfg.end()) return;
      if (opt->count() == 0) var = parse_config_double(key, it->second);
      cfg.erase(it);
    };
    const auto take_i = [&cfg](const char *key, const CLI::Option *opt,
                               int &var) {
      const auto it = cfg.find(key);
      if (it == cfg.end()) return;
      if (opt->count() == 0) var = parse_config_int(key, it->second);
      cfg.erase(it);
    };
    take_d("a", opt_a, a);
    take_d("b", opt_b, b);
    take_d("c", opt_c, c);
    take_d("psi_prior_mean", opt_psi_mean, prior.psi_mean);
    take_d("psi_prior_var", opt_psi_var, prior.psi_var);
    take_d("nu_prior_mean", opt_nu_mean, prior.nu_mean);
    take_d("nu_prior_var", opt_nu_var, prior.nu_var);
    take_d("psi_min", opt_psi_min, grid.psi_min);
    take_d("psi_max", opt_psi_max, grid.psi_max);
    take_d("nu_min", opt_nu_min, grid.nu_min);
    take_d("nu_max", opt_nu_max, grid.nu_max);
    take_i("psi_points", opt_psi_points, grid.psi_points);
    take_i("nu_points", opt_nu_points, grid.nu_points);
    take_d("grad_tol", opt_grad_tol, newton.grad_tol);
    take_i("max_iterations", opt_max_iterations, newton.max_iterations);
    if (!cfg.empty()) {
      throw std::domain_error("config: unknown key '" + cfg.begin()->first +
                              "'");
    }
  }

  bool has_data() const { return !data_path.empty() || !raw_path.empty(); }

  commax::FrequencyTable load_table() const {
    if (!data_path.empty() && !raw_path.empty()) {
      throw std::domain_error("provide only one of --data and --raw");
    }
    if (!data_path.empty()) {
      const int override_m = opt_m->count() > 0 ? m_flag : -1;
      return commax::read_frequency_csv_file(data_path, override_m);
    }
    if (raw_path.empty()) throw std::domain_error("provide --data or --raw");
    if (opt_m->count() == 0) throw std::domain_error("--raw requires --m");
    return commax::read_raw_counts_file(raw_path, m_flag);
  }
};

ordered_json prior_json(const AnalysisOptions &o) {
  ordered_json psi_normal;
  psi_normal["mean"] = o.prior.psi_mean;
  psi_normal["var"] = o.prior.psi_var;
  ordered_json nu_normal;
  nu_normal["mean"] = o.prior.nu_mean;
  nu_normal["var"] = o.prior.nu_var;
  ordered_json out;
  out["a"] = o.a;
  out["b"] = o.b;
  out["c"] = o.c;
  out["psi_normal"] = psi_normal;
  out["nu_normal"] = nu_normal;
  return out;
}

std::string grid_csv_text(const commax::PosteriorGrid &grid) {
  std::string out = schema_line("grid");
  out.reserve(out.size() + grid.log_density.size() * 24);
  out += "psi,nu,density\n";
  const std::size_t nn = grid.nu.size();
  for (std::size_t i = 0; i < grid.psi.size(); ++i) {
    for (std::size_t j = 0; j < nn; ++j) {
      out += fmt(grid.psi[i]);
      out += ',';
      out += fmt(grid.nu[j]);
      out += ',';
      out += fmt(std::exp(grid.log_density[i * nn + j]));
      out += '\n';
    }
  }
  return out;
}

void run_pmf(int m, const CLI::Option *opt_p, double p,
             const CLI::Option *opt_psi, double psi, double nu) {
  if (opt_p->count() + opt_psi->count() != 1) {
    throw std::domain_error("pmf: provide exactly one of --p and --psi");
  }
  std::vector<double> table;
  if (opt_p->count() > 0) {
    if (!(p >= 0.0 && p <= 1.0)) throw std::domain_error("p out of range");
    table = commax::pmf_table(commax::CombParams(m, p, nu));
  } else {
    table = commax::pmf_table(commax::CombNatural(m, psi, nu));
  }
  std::string out = schema_line("pmf") + "k,pmf\n";
  for (std::size_t k = 0; k < table.size(); ++k) {
    out += std::to_string(k);
    out += ',';
    out += fmt(table[k]);
    out += '\n';
  }
  std::cout << out;
}

void run_fit(AnalysisOptions &o, const std::string &out_prefix) {
  o.apply_config();
  const commax::FrequencyTable table = o.load_table();
  const commax::SufficientStats stats = commax::sufficient_stats(table);
  const commax::Hyperparams post = commax::conjugate_update(
      commax::Hyperparams(table.m, o.a, o.b, o.c), table);
  const commax::PosteriorGrid grid =
      commax::grid_posterior(post, o.grid, o.prior);
  const commax::MapResult map =
      commax::map_estimate(post, o.grid, o.prior, o.newton);

  const std::vector<double> comb_fitted = commax::fitted_counts(
      commax::CombNatural(table.m, map.psi, map.nu),
      static_cast<double>(stats.n));
  const std::vector<double> observed(table.counts.begin(),
                                     table.counts.end());
  const commax::BinomialFit bfit = commax::binomial_mle_fit(table);

  ordered_json report;
  report["schema_version"] = kSchemaVersion;
  report["command"] = "fit";
  ordered_json data;
  data["m"] = table.m;
  data["n"] = stats.n;
  data["counts"] = table.counts;
  data["s1"] = stats.s1;
  data["s2"] = stats.s2;
  report["data"] = data;
  report["prior"] = prior_json(o);
  ordered_json posterior;
  posterior["a"] = post.a;
  posterior["b"] = post.b;
  posterior["c"] = post.c;
  report["posterior"] = posterior;
  ordered_json grid_info;
  grid_info["psi_min"] = o.grid.psi_min;
  grid_info["psi_max"] = o.grid.psi_max;
  grid_info["nu_min"] = o.grid.nu_min;
  grid_info["nu_max"] = o.grid.nu_max;
  grid_info["psi_points"] = o.grid.psi_points;
  grid_info["nu_points"] = o.grid.nu_points;
  grid_info["log_normalizer"] = grid.log_normalizer;
  const auto [mode_psi, mode_nu] = grid.mode();
  grid_info["mode_psi"] = mode_psi;
  grid_info["mode_nu"] = mode_nu;
  report["grid"] = grid_info;
  ordered_json map_info;
  map_info["psi"] = map.psi;
  map_info["nu"] = map.nu;
  map_info["sigma"] = ordered_json::array(
      {ordered_json::array({map.sigma[0], map.sigma[1]}),
       ordered_json::array({map.sigma[2], map.sigma[3]})});
  map_info["iterations"] = map.iterations;
  map_info["gradient_norm"] = map.gradient_norm;
  report["map"] = map_info;
  ordered_json fit_info;
  fit_info["comb_fitted"] = comb_fitted;
  fit_info["comb_sse"] = commax::sse(observed, comb_fitted);
  fit_info["binomial_p_hat"] = bfit.p_hat;
  fit_info["binomial_fitted"] = bfit.fitted;
  fit_info["binomial_sse"] = commax::sse(observed, bfit.fitted);
  report["fit"] = fit_info;

  if (out_prefix.empty()) {
    report["grid_csv"] = nullptr;
    std::cout << report.dump(2) << '\n';
    return;
  }
  const std::string grid_path = out_prefix + ".grid.csv";
  report["grid_csv"] = grid_path;
  write_file_atomic(grid_path, grid_csv_text(grid));
  write_file_atomic(out_prefix + ".report.json", report.dump(2) + "\n");
}

void run_posterior_grid(AnalysisOptions &o, const std::string &out_path) {
  o.apply_config();
  commax::Hyperparams hyper(o.m_flag, o.a, o.b, o.c);
  if (o.has_data()) {
    const commax::FrequencyTable table = o.load_table();
    hyper = commax::conjugate_update(
        commax::Hyperparams(table.m, o.a, o.b, o.c), table);
  } else if (o.opt_m->count() == 0) {
    throw std::domain_error("posterior-grid: provide --m or a data file");
  }
  const std::string text =
      grid_csv_text(commax::grid_posterior(hyper, o.grid, o.prior));
  if (out_path.empty()) {
    std::cout << text;
  } else {
    write_file_atomic(out_path, text);
  }
}

void run_pairwise(int m, double nu, int steps) {
  if (steps < 2) throw std::domain_error("pairwise: steps must be >= 2");
  std::vector<double> ps(steps);
  for (int i = 1; i <= steps; ++i) {
    ps[i - 1] = static_cast<double>(i) / (steps + 1);
  }
  const auto curve = commax::pairwise_curve(m, nu, ps);
  std::string out = schema_line("pairwise") + "p,p00,p01,p11\n";
  for (const auto &pt : curve) {
    out += fmt(pt.p);
    out += ',';
    out += fmt(pt.pairwise.p00);
    out += ',';
    out += fmt(pt.pairwise.p01);
    out += ',';
    out += fmt(pt.pairwise.p11);
    out += '\n';
  }
  std::cout << out;
}

void run_sample(int m, double p, double nu, std::uint64_t n,
                std::uint64_t seed) {
  if (!(p >= 0.0 && p <= 1.0)) throw std::domain_error("p out of range");
  if (n < 1) throw std::domain_error("sample: n must be >= 1");
  const std::vector<int> draws =
      commax::sample(commax::CombParams(m, p, nu), n, seed);
  std::string out;
  out.reserve(draws.size() * 3);
  for (const int d : draws) {
    out += std::to_string(d);
    out += '\n';
  }
  std::cout << out;
}

void require_categories(int r) {
  if (r < 2 || r > 4) {
    throw std::domain_error(
        "comm: number of categories must be between 2 and 4");
  }
}

// Rows of r nonnegative integers (comma or space separated) summing to m.
std::vector<commax::CompositionIndex> read_compositions(
    const std::string &path, int m, int r) {
  std::ifstream in(path);
  if (!in) throw std::domain_error("cannot open '" + path + "'");
  std::vector<commax::CompositionIndex> rows;
  std::string line;
  int lineno = 0;
  while (std::getline(in, line)) {
    ++lineno;
    for (char &ch : line) {
      if (ch == ',') ch = ' ';
    }
    std::istringstream fields(line);
    std::vector<int> k;
    int value = 0;
    while (fields >> value) k.push_back(value);
    if (!fields.eof()) throw commax::ParseError("malformed integer", lineno);
    if (k.empty()) continue;
    if (static_cast<int>(k.size()) != r) {
      throw commax::ParseError(
          "expected " + std::to_string(r) + " categories, got " +
              std::to_string(k.size()),
          lineno);
    }
    for (const int v : k) {
      if (v < 0) throw commax::ParseError("negative count", lineno);
    }
    commax::CompositionIndex idx(std::move(k));
    if (idx.total() != m) {
      throw commax::ParseError("row total " + std::to_string(idx.total()) +
                                   " differs from m = " + std::to_string(m),
                               lineno);
    }
    rows.push_back(std::move(idx));
  }
  return rows;
}

void run_comm_pmf(int m, std::vector<double> p, double nu,
                  std::uint64_t max_compositions) {
  require_categories(static_cast<int>(p.size()));
  const commax::CommParams params(m, std::move(p), nu, max_compositions);
  const double log_g = commax::comm_log_normalizer(params);
  std::string out = schema_line("comm-pmf");
  for (int i = 1; i <= params.parts(); ++i) {
    out += 'k';
    out += std::to_string(i);
    out += ',';
  }
  out += "pmf\n";
  std::vector<int> k = commax::first_composition(m, params.parts());
  do {
    const commax::CompositionIndex idx(k);
    for (const int v : k) {
      out += std::to_string(v);
      out += ',';
    }
    out += fmt(std::exp(commax::comm_log_unnormalized(params, idx) - log_g));
    out += '\n';
  } while (commax::next_composition(k));
  std::cout << out;
}

void run_comm_stats(const std::string &path, int m, int r) {
  require_categories(r);
  const auto sample = read_compositions(path, m, r);
  if (sample.empty()) throw std::domain_error("comm stats: no observations");
  const commax::CommSufficientStats stats = commax::comm_sufficient_stats(
      std::span<const commax::CompositionIndex>(sample));
  ordered_json out;
  out["schema_version"] = kSchemaVersion;
  out["command"] = "comm stats";
  out["m"] = stats.m;
  out["r"] = r;
  out["n"] = stats.n;
  out["s0"] = stats.s0;
  out["s"] = stats.s;
  std::cout << out.dump(2) << '\n';
}

void run_comm_update(const std::string &path, int m, std::vector<double> a,
                     double b, double c) {
  const int r = static_cast<int>(a.size()) + 1;
  require_categories(r);
  commax::CommHyper hyper(m, std::move(a), b, c);
  const auto sample = read_compositions(path, m, r);
  for (const auto &k : sample) {
    hyper = commax::comm_conjugate_update(hyper, k);
  }
  ordered_json out;
  out["schema_version"] = kSchemaVersion;
  out["command"] = "comm update";
  out["m"] = m;
  out["r"] = r;
  out["n"] = static_cast<std::int64_t>(sample.size());
  out["a"] = hyper.a;
  out["b"] = hyper.b;
  out["c"] = hyper.c;
  std::cout << out.dump(2) << '\n';
}

void run_propriety(int m, double a, double b, double c,
                   const commax::NormalPrior &prior, int levels) {
  const commax::Hyperparams hyper(m, a, b, c);
  const commax::ProprietyReport report =
      commax::propriety_check(hyper, levels, prior);
  ordered_json out;
  out["schema_version"] = kSchemaVersion;
  out["command"] = "propriety";
  out["m"] = m;
  out["a"] = a;
  out["b"] = b;
  out["c"] = c;
  ordered_json level_rows = ordered_json::array();
  for (const auto &level : report.levels) {
    ordered_json row;
    row["half_width"] = level.half_width;
    row["log_mass"] = level.log_mass;
    row["tail_fraction"] = level.tail_fraction;
    level_rows.push_back(row);
  }
  out["levels"] = level_rows;
  out["converged"] = report.converged;
  std::cout << out.dump(2) << '\n';
}

}  // namespace

int main(int argc, char **argv) {
  CLI::App app{"Conway-Maxwell binomial distribution toolkit"};
  app.require_subcommand(1);

  // pmf
  auto *pmf_cmd =
      app.add_subcommand("pmf", "print k,pmf rows for one parameter setting");
  int pmf_m = 1;
  double pmf_p = 0.5, pmf_psi = 0.0, pmf_nu = 1.0;
  pmf_cmd->add_option("--m", pmf_m, "components per trial")->required();
  CLI::Option *pmf_opt_p =
      pmf_cmd->add_option("--p", pmf_p, "success probability in [0, 1]");
  CLI::Option *pmf_opt_psi =
      pmf_cmd->add_option("--psi", pmf_psi, "log odds (natural parameter)");
  pmf_cmd->add_option("--nu", pmf_nu, "dispersion")->required();
  pmf_cmd->callback([&] {
    run_pmf(pmf_m, pmf_opt_p, pmf_p, pmf_opt_psi, pmf_psi, pmf_nu);
  });

  // fit
  auto *fit_cmd = app.add_subcommand(
      "fit", "frequency-table analysis with a JSON report");
  AnalysisOptions fit_opts;
  fit_opts.attach(fit_cmd);
  std::string fit_out;
  fit_cmd->add_option(
      "--out", fit_out,
      "output prefix; writes PREFIX.report.json and PREFIX.grid.csv");
  fit_cmd->callback([&] { run_fit(fit_opts, fit_out); });

  // posterior-grid
  auto *grid_cmd = app.add_subcommand(
      "posterior-grid", "normalized posterior density as psi,nu,density CSV");
  AnalysisOptions grid_opts;
  grid_opts.attach(grid_cmd);
  std::string grid_out;
  grid_cmd->add_option("--out", grid_out, "output CSV path (default stdout)");
  grid_cmd->callback([&] { run_posterior_grid(grid_opts, grid_out); });

  // pairwise
  auto *pairwise_cmd = app.add_subcommand(
      "pairwise", "pairwise probabilities p00,p01,p11 over a p grid");
  int pw_m = 2, pw_steps = 99;
  double pw_nu = 1.0;
  pairwise_cmd->add_option("--m", pw_m, "components per trial")->required();
  pairwise_cmd->add_option("--nu", pw_nu, "dispersion")->required();
  pairwise_cmd->add_option("--steps", pw_steps,
                           "number of interior grid points (default 99)");
  pairwise_cmd->callback([&] { run_pairwise(pw_m, pw_nu, pw_steps); });

  // sample
  auto *sample_cmd =
      app.add_subcommand("sample", "reproducible draws, one per line");
  int sm_m = 1;
  double sm_p = 0.5, sm_nu = 1.0;
  std::uint64_t sm_n = 1, sm_seed = 0;
  sample_cmd->add_option("--m", sm_m, "components per trial")->required();
  sample_cmd->add_option("--p", sm_p, "success probability")->required();
  sample_cmd->add_option("--nu", sm_nu, "dispersion")->required();
  sample_cmd->add_option("--n", sm_n, "number of draws")->required();
  sample_cmd->add_option("--seed", sm_seed, "generator seed (default 0)");
  sample_cmd->callback([&] { run_sample(sm_m, sm_p, sm_nu, sm_n, sm_seed); });

  // comm
  auto *comm_cmd = app.add_subcommand(
      "comm", "multi-category distribution over compositions of m");
  comm_cmd->require_subcommand(1);

  auto *comm_pmf_cmd =
      comm_cmd->add_subcommand("pmf", "enumerate compositions with pmf");
  int cp_m = 1;
  double cp_nu = 1.0;
  std::vector<double> cp_p;
  std::uint64_t cp_cap = commax::CommParams::kDefaultMaxCompositions;
  comm_pmf_cmd->add_option("--m", cp_m, "total per trial")->required();
  comm_pmf_cmd->add_option("--p", cp_p, "category probabilities, e.g. 0.2,0.3,0.5")
      ->required()
      ->delimiter(',');
  comm_pmf_cmd->add_option("--nu", cp_nu, "dispersion")->required();
  comm_pmf_cmd->add_option("--max-compositions", cp_cap,
                           "enumeration size cap");
  comm_pmf_cmd->callback([&] { run_comm_pmf(cp_m, cp_p, cp_nu, cp_cap); });

  auto *comm_stats_cmd = comm_cmd->add_subcommand(
      "stats", "sufficient statistics of composition rows");
  std::string cs_data;
  int cs_m = 1, cs_r = 2;
  comm_stats_cmd->add_option("--data", cs_data, "composition rows, one per line")
      ->required();
  comm_stats_cmd->add_option("--m", cs_m, "total per trial")->required();
  comm_stats_cmd->add_option("--r", cs_r, "number of categories")->required();
  comm_stats_cmd->callback([&] { run_comm_stats(cs_data, cs_m, cs_r); });

  auto *comm_update_cmd = comm_cmd->add_subcommand(
      "update", "conjugate update from composition rows");
  std::string cu_data;
  int cu_m = 1;
  double cu_b = 0.0, cu_c = 0.0;
  std::vector<double> cu_a;
  comm_update_cmd->add_option("--data", cu_data, "composition rows, one per line")
      ->required();
  comm_update_cmd->add_option("--m", cu_m, "total per trial")->required();
  comm_update_cmd->add_option("--a", cu_a,
                              "prior pseudo-counts for categories 1..r-1")
      ->required()
      ->delimiter(',');
  comm_update_cmd->add_option("--b", cu_b, "prior pseudo-sum of log k!");
  comm_update_cmd->add_option("--c", cu_c, "prior pseudo-observation count");
  comm_update_cmd->callback(
      [&] { run_comm_update(cu_data, cu_m, cu_a, cu_b, cu_c); });

  // propriety
  auto *prop_cmd = app.add_subcommand(
      "propriety", "nested-box posterior integrability diagnostic");
  int pr_m = 1, pr_levels = 4;
  double pr_a = 0.0, pr_b = 0.0, pr_c = 0.0;
  commax::NormalPrior pr_prior;
  prop_cmd->add_option("--m", pr_m, "components per trial")->required();
  prop_cmd->add_option("--a", pr_a, "pseudo-sum of successes");
  prop_cmd->add_option("--b", pr_b, "pseudo-sum of log(k!(m-k)!)");
  prop_cmd->add_option("--c", pr_c, "pseudo-observation count");
  prop_cmd->add_option("--psi-prior-mean", pr_prior.psi_mean,
                       "normal base mean for psi");
  prop_cmd->add_option("--psi-prior-var", pr_prior.psi_var,
                       "normal base variance for psi");
  prop_cmd->add_option("--nu-prior-mean", pr_prior.nu_mean,
                       "normal base mean for nu");
  prop_cmd->add_option("--nu-prior-var", pr_prior.nu_var,
                       "normal base variance for nu");
  prop_cmd->add_option("--levels", pr_levels, "expansion levels (default 4)");
  prop_cmd->callback(
      [&] { run_propriety(pr_m, pr_a, pr_b, pr_c, pr_prior, pr_levels); });

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError &e) {
    const int code = app.exit(e);
    return code == 0 ? 0 : 2;
  } catch (const commax::ParseError &e) {
    std::cerr << "error: " << e.what() << '\n';
    return 2;
  } catch (const commax::CapExceededError &e) {
    std::cerr << "error: " << e.what() << '\n';
    return 3;
  } catch (const commax::OptimizationError &e) {
    std::cerr << "error: " << e.what() << '\n' << e.trace;
    return 4;
  } catch (const commax::NumericalError &e) {
    std::cerr << "error: " << e.what() << '\n';
    return 4;
  } catch (const std::exception &e) {
    std::cerr << "error: " << e.what() << '\n';
    return 2;
  }
  return 0;
}
