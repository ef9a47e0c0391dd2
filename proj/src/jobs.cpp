#include "fracspec/jobs.hpp"

#include <fftw3.h>

#include <Eigen/Core>
#include <boost/version.hpp>
#include <algorithm>
#include <chrono>
#include <cmath>
#include <ctime>
#include <fstream>
#include <iterator>
#include <numbers>

#include "fracspec/billiard.hpp"
#include "fracspec/error.hpp"
#include "fracspec/inequalities.hpp"
#include "fracspec/model1d.hpp"
#include "fracspec/operator.hpp"
#include "fracspec/spectrum.hpp"
#include "fracspec/weyl.hpp"

#ifndef FRACSPEC_VERSION
#define FRACSPEC_VERSION "0.0.0"
#endif

namespace fracspec {

namespace fs = std::filesystem;

namespace {

// Collects artifacts in write order so the manifest can checksum them.
class Outputs {
 public:
  explicit Outputs(fs::path root) : root_(std::move(root)) {}
  void write(const fs::path& rel, std::string_view content) {
    write_file_atomic(root_ / rel, content);
    files_.push_back(rel);
  }
  void json(const fs::path& rel, const Json& value) { write(rel, dump_json(value)); }
  const fs::path& root() const { return root_; }
  const std::vector<fs::path>& files() const { return files_; }

 private:
  fs::path root_;
  std::vector<fs::path> files_;
};

SymbolSpec job_symbol(const JobConfig& cfg, double m) {
  SymbolSpec s;
  s.m = m;
  s.kind = cfg.symbol;
  s.zero_mode = cfg.zero_mode;
  return s;
}

Json grid_json(const BoxGrid& g, double box_factor) {
  return {{"n", g.points_per_axis}, {"box_factor", box_factor}, {"half_width", g.half_width()},
          {"spacing", g.spacing},   {"interior_points", g.size()}};
}

std::string m_label(double m) {
  std::string s = format_double(m);
  for (char& c : s) {
    if (c == '.') c = 'p';
  }
  return "m_" + s;
}

Domain default_domain(int d) { return d == 1 ? Domain::interval(std::numbers::pi) : Domain::disk(1.0); }

Json kappa_json(const JobConfig& cfg, const Domain& domain, double m, const KappaResult& r) {
  const ModelParams p = cfg.model_params(m);
  const WeylModel w = make_weyl_model(domain, m, r.value, r.quad_error);
  Json samples = Json::array();
  for (const auto& s : r.samples) {
    samples.push_back({{"L_trunc", s.L_trunc}, {"n", s.n}, {"value", s.value}, {"stderr", s.stderr_fit}});
  }
  return {{"d", cfg.model.d},
          {"m", m},
          {"varkappa_m", r.value},
          {"kappa0", w.kappa0},
          {"kappa1", w.kappa1},
          {"quad_error", r.quad_error},
          {"kappa1_error", w.kappa1_error()},
          {"L_trunc", p.L_trunc},
          {"n", p.n},
          {"lambda_max", p.lambda_max},
          {"x_max", p.x_max},
          {"converged", r.converged},
          {"varkappa_at_2L", r.value_coarse},
          {"samples", samples}};
}

int run_assemble(const JobConfig& cfg, Outputs& out) {
  const Domain& domain = *cfg.domain;
  const BoxGrid grid = interior_points(domain, cfg.grid);
  const OperatorMatrix op =
      assemble_fractional_matrix(domain, grid, job_symbol(cfg, cfg.m_list.front()), cfg.matrix_cap);
  const double max_abs = op.entries.cwiseAbs().maxCoeff();
  const bool symmetric = op.sym_residual <= 1e-12 * max_abs;
  out.write("matrix.bin", matrix_bytes(op.entries));
  out.json("matrix.json",
           {{"file", "matrix.bin"},
            {"dtype", "float64"},
            {"layout", "row-major, little-endian"},
            {"rows", op.size()},
            {"cols", op.size()},
            {"m", op.meta.symbol.m},
            {"symbol", std::string(to_string(op.meta.symbol.kind))},
            {"zero_mode", std::string(to_string(op.meta.symbol.zero_mode))},
            {"zero_mode_value", op.meta.zero_mode},
            {"domain", cfg.to_json()["domain"]},
            {"grid", grid_json(grid, cfg.grid.box_factor)},
            {"sym_residual", op.sym_residual},
            {"max_abs_entry", max_abs},
            {"symmetric", symmetric}});
  return symmetric ? kExitOk : kExitInvariant;
}

int run_spectrum(const JobConfig& cfg, Outputs& out) {
  const Domain& domain = *cfg.domain;
  const double m = cfg.m_list.front();
  const BoxGrid grid = interior_points(domain, cfg.grid);
  const OperatorMatrix op = assemble_fractional_matrix(domain, grid, job_symbol(cfg, m), cfg.matrix_cap);
  const Spectrum s = eig_symmetric(op, true);
  const double norm = s.eigenvalues.cwiseAbs().maxCoeff();
  const bool positive = s.eigenvalues[0] >= -1e-8 * norm;

  Json boundary = nullptr;
  if (domain.kind() != DomainKind::slit_square) {
    try {
      const BoundaryFit b = boundary_exponent(s, domain, grid, 0);
      boundary = {{"eigen_index", 0},     {"mu_hat", b.mu_hat},     {"stderr", b.stderr_mu},
                  {"expected", m / 2.0},  {"d_min", b.window.first}, {"d_max", b.window.second},
                  {"points", b.points}};
    } catch (const InsufficientDataError& e) {
      boundary = {{"error", e.what()}};
    }
  }
  out.write("eigs.csv", eigs_csv(s));
  out.json("spectrum.json", {{"size", s.size()},
                             {"m", m},
                             {"symbol", std::string(to_string(cfg.symbol))},
                             {"grid", grid_json(grid, cfg.grid.box_factor)},
                             {"lambda_min", s.eigenvalues[0]},
                             {"lambda_max", s.eigenvalues[s.size() - 1]},
                             {"residual_bound", s.residual_bound},
                             {"gram_deviation", s.gram_deviation},
                             {"positive_semidefinite", positive},
                             {"boundary_fit", boundary}});
  return positive ? kExitOk : kExitInvariant;
}

int run_weyl_fit(const JobConfig& cfg, Outputs& out) {
  const Domain& domain = *cfg.domain;
  const double m = cfg.m_list.front();
  const int d = domain.dimension();
  const BoxGrid grid = interior_points(domain, cfg.grid);
  const OperatorMatrix op = assemble_fractional_matrix(domain, grid, job_symbol(cfg, m), cfg.matrix_cap);
  const Spectrum s = eig_symmetric(op, false);

  const KappaResult kr = kappa_m(d, m, cfg.model_params(m));
  const WeylModel w = make_weyl_model(domain, m, kr.value, kr.quad_error);
  const FitReport fit = fit_second_term(s, domain, m, cfg.window, cfg.method, w.kappa1);

  CsvWriter csv({"lambda", "N", "weyl1", "weyl2", "riesz"});
  double riesz = 0.0;
  for (Eigen::Index j = 0; j < s.size(); ++j) {
    const double lambda = s.eigenvalues[j];
    if (j > 0) riesz += static_cast<double>(j) * (lambda - s.eigenvalues[j - 1]);
    if (!(lambda > 0.0)) continue;
    const double weyl1 = w.kappa0 * std::pow(lambda, w.leading_exponent());
    csv.row({lambda, static_cast<double>(counting_function(s, lambda)), weyl1,
             two_term_counting(lambda, w), riesz});
  }

  const double top = fit.window.second;
  const double n_top = static_cast<double>(counting_function(s, top));
  const double tolerance = fit.stderr_k1 + w.kappa1_error();
  out.write("counting.csv", csv.text());
  out.json("fit.json", {{"method", std::string(to_string(fit.method))},
                        {"kappa1_hat", fit.kappa1_hat},
                        {"stderr", fit.stderr_k1},
                        {"window", {fit.window.first, fit.window.second}},
                        {"window_fractions", {cfg.window.lo_fraction, cfg.window.hi_fraction}},
                        {"crossings", fit.crossings},
                        {"model_kappa1", fit.model_kappa1},
                        {"model_kappa1_error", w.kappa1_error()},
                        {"relative_gap", fit.relative_gap},
                        {"tolerance", tolerance},
                        {"consistent", std::abs(fit.kappa1_hat - fit.model_kappa1) <= tolerance},
                        {"kappa0", w.kappa0},
                        {"varkappa_m", kr.value},
                        {"varkappa_quad_error", kr.quad_error},
                        {"two_term_relative_error_at_top",
                         std::abs(two_term_counting(top, w) - n_top) / n_top},
                        {"size", s.size()},
                        {"m", m},
                        {"symbol", std::string(to_string(cfg.symbol))}});
  return kr.converged ? kExitOk : kExitInvariant;
}

int run_kappa(const JobConfig& cfg, Outputs& out) {
  const int d = cfg.model.d;
  if (cfg.domain && cfg.domain->dimension() != d) {
    throw ConfigError("model.d does not match the domain dimension");
  }
  const Domain domain = cfg.domain.value_or(default_domain(d));
  bool ok = true;
  std::vector<std::pair<double, KappaResult>> results;
  for (double m : cfg.m_list) {
    const KappaResult r = kappa_m(d, m, cfg.model_params(m));
    ok = ok && r.converged;
    const Json j = kappa_json(cfg, domain, m, r);
    out.json(cfg.sweep ? fs::path(m_label(m)) / "kappa.json" : fs::path("kappa.json"), j);
    results.emplace_back(m, r);
  }
  if (cfg.sweep) {
    auto sorted = results;
    std::sort(sorted.begin(), sorted.end(), [](const auto& a, const auto& b) { return a.first < b.first; });
    Json entries = Json::array();
    for (const auto& [m, r] : sorted) {
      entries.push_back({{"m", m}, {"varkappa_m", r.value}, {"quad_error", r.quad_error}});
    }
    Json gaps = Json::array();
    bool increasing = true;
    bool separated = true;
    for (std::size_t i = 1; i < sorted.size(); ++i) {
      // -varkappa must increase with m
      const double gap = sorted[i - 1].second.value - sorted[i].second.value;
      const double err = sorted[i - 1].second.quad_error + sorted[i].second.quad_error;
      increasing = increasing && gap > 0.0;
      separated = separated && gap > 3.0 * err;
      gaps.push_back({{"m_lo", sorted[i - 1].first}, {"m_hi", sorted[i].first}, {"gap", gap},
                      {"combined_error", err}});
    }
    out.json("kappa_summary.json", {{"d", d},
                                    {"entries", entries},
                                    {"gaps", gaps},
                                    {"strictly_increasing", increasing},
                                    {"gaps_exceed_3x_error", separated}});
    if (d >= 2 && !increasing) ok = false;
  }
  return ok ? kExitOk : kExitInvariant;
}

int run_props(const JobConfig& cfg, Outputs& out) {
  const TrialSummary suite = projection_trial_suite(*cfg.seed, cfg.repeats);
  Json trials = Json::array();
  for (const auto& t : suite.trials) {
    trials.push_back({{"seed", t.seed}, {"size", t.size}, {"rank", t.rank}, {"theta", t.theta},
                      {"gap", t.gap}, {"norm_B", t.norm_B}});
  }
  Json report = {{"trials", trials},
                 {"summary",
                  {{"min_gap", suite.min_gap},
                   {"trials", suite.trials.size()},
                   {"failures", suite.failures},
                   {"tolerance", "gap >= -1e-9 |B|"}}}};
  bool ok = suite.failures == 0;

  if (cfg.domain) {
    const BoxGrid grid = interior_points(*cfg.domain, cfg.grid);
    Json powers = Json::array();
    static constexpr double pairs[][2] = {{1, 2}, {0.5, 1}, {4, 2}, {1, 0.5}};
    for (const auto& p : pairs) {
      const PowerGap g = power_difference_gap(*cfg.domain, grid, p[0], p[1], cfg.symbol);
      const bool pass = g.gap >= -1e-9 * g.scale;
      ok = ok && pass;
      powers.push_back({{"m", p[0]}, {"n", p[1]}, {"gap", g.gap}, {"scale", g.scale}, {"pass", pass}});
    }
    Json products = Json::array();
    for (double half : {0.5, 1.0}) {
      const ProductProbe pr = product_difference_probe(*cfg.domain, grid, half, half, cfg.symbol);
      const bool pass = pr.min_eig_sym >= -1e-8 * pr.norm_K;
      ok = ok && pass;
      products.push_back({{"m1", half}, {"m2", half}, {"min_eig_sym", pr.min_eig_sym},
                          {"asymmetry", pr.asymmetry}, {"norm_K", pr.norm_K}, {"pass", pass}});
    }
    report["operators"] = {{"grid", grid_json(grid, cfg.grid.box_factor)},
                           {"power_differences", powers},
                           {"products", products}};
  }
  out.json("props.json", report);
  return ok ? kExitOk : kExitInvariant;
}

int run_billiard(const JobConfig& cfg, Outputs& out) {
  std::vector<double> eps = cfg.billiard.epsilons;
  std::sort(eps.begin(), eps.end(), std::greater<>());
  const auto reports = periodic_orbit_fractions(*cfg.domain, cfg.billiard.samples,
                                                cfg.billiard.horizon, eps, *cfg.seed);
  Json rows = Json::array();
  bool monotone = true;
  for (std::size_t i = 0; i < reports.size(); ++i) {
    if (i > 0 && reports[i].near_periodic_fraction > reports[i - 1].near_periodic_fraction) monotone = false;
    rows.push_back({{"epsilon", reports[i].epsilon},
                    {"near_periodic_fraction", reports[i].near_periodic_fraction},
                    {"standard_error", std::sqrt(reports[i].near_periodic_fraction *
                                                 (1.0 - reports[i].near_periodic_fraction) /
                                                 reports[i].samples)}});
  }
  out.json("billiard.json", {{"domain", cfg.to_json()["domain"]},
                             {"samples", cfg.billiard.samples},
                             {"T", cfg.billiard.horizon},
                             {"seed", *cfg.seed},
                             {"fractions", rows},
                             {"monotone_in_epsilon", monotone},
                             {"min_transversality", reports.front().min_transversality},
                             {"reflections", reports.front().reflections}});
  return monotone ? kExitOk : kExitInvariant;
}

int run_report(const JobConfig& cfg, Outputs& out) {
  static constexpr const char* known[] = {"matrix.json", "spectrum.json", "fit.json", "kappa.json",
                                          "kappa_summary.json", "props.json", "billiard.json"};
  Json inputs = Json::array();
  for (const auto& dir : cfg.inputs) {
    if (!fs::is_directory(dir)) throw ConfigError("report input '" + dir + "' is not a directory");
    Json artifacts = Json::object();
    for (const char* name : known) {
      const fs::path p = fs::path(dir) / name;
      if (!fs::exists(p)) continue;
      std::ifstream f(p, std::ios::binary);
      const std::string text((std::istreambuf_iterator<char>(f)), std::istreambuf_iterator<char>());
      Json parsed = Json::parse(text);
      if (std::string(name) == "props.json") parsed.erase("trials");
      artifacts[name] = parsed;
    }
    inputs.push_back({{"path", dir}, {"artifacts", artifacts}});
  }
  out.json("report.json", {{"inputs", inputs}});
  return kExitOk;
}

std::string utc_now() {
  const std::time_t t = std::time(nullptr);
  std::tm tm{};
  gmtime_r(&t, &tm);
  char buf[32];
  std::strftime(buf, sizeof buf, "%Y-%m-%dT%H:%M:%SZ", &tm);
  return buf;
}

}  // namespace

int run_job(const JobConfig& cfg, const fs::path& out_dir) {
  const auto start = std::chrono::steady_clock::now();
  const std::string started = utc_now();
  Outputs out(out_dir);
  int code = kExitOk;
  if (cfg.command == "assemble") code = run_assemble(cfg, out);
  else if (cfg.command == "spectrum") code = run_spectrum(cfg, out);
  else if (cfg.command == "weyl-fit") code = run_weyl_fit(cfg, out);
  else if (cfg.command == "kappa") code = run_kappa(cfg, out);
  else if (cfg.command == "props") code = run_props(cfg, out);
  else if (cfg.command == "billiard") code = run_billiard(cfg, out);
  else if (cfg.command == "report") code = run_report(cfg, out);
  else throw ConfigError("unknown command '" + cfg.command + "'");

  Json files = Json::array();
  for (const auto& rel : out.files()) {
    const fs::path p = out.root() / rel;
    files.push_back({{"file", rel.generic_string()},
                     {"bytes", fs::file_size(p)},
                     {"sha256", sha256_file(p)}});
  }
  const double wall = std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
  out.json("manifest.json",
           {{"tool", "fracspec"},
            {"version", FRACSPEC_VERSION},
            {"command", cfg.command},
            {"config", cfg.to_json()},
            {"libraries",
             {{"eigen", std::to_string(EIGEN_WORLD_VERSION) + "." + std::to_string(EIGEN_MAJOR_VERSION) +
                            "." + std::to_string(EIGEN_MINOR_VERSION)},
              {"fftw", std::string(fftw_version)},
              {"boost", BOOST_LIB_VERSION}}},
            {"started_utc", started},
            {"wall_time_s", wall},
            {"exit_code", code},
            {"outputs", files}});
  return code;
}

}  // namespace fracspec
