// Acceptance runner: one PASS/FAIL line per criterion, non-zero exit on any FAIL.
// Optional arguments restrict the run to the named criteria (e.g. "A3 A4").
#include <chrono>
#include <cmath>
#include <cstdio>
#include <filesystem>
#include <fstream>
#include <functional>
#include <iterator>
#include <numbers>
#include <set>
#include <sstream>
#include <string>
#include <vector>

#include <unistd.h>

#include <fracspec/billiard.hpp>
#include <fracspec/config.hpp>
#include <fracspec/domain.hpp>
#include <fracspec/error.hpp>
#include <fracspec/grid.hpp>
#include <fracspec/inequalities.hpp>
#include <fracspec/io.hpp>
#include <fracspec/jobs.hpp>
#include <fracspec/model1d.hpp>
#include <fracspec/operator.hpp>
#include <fracspec/spectrum.hpp>
#include <fracspec/weyl.hpp>

namespace fs = std::filesystem;
using namespace fracspec;

namespace {

struct Outcome {
  bool pass = false;
  std::string detail;
};

std::string fmt(const char* f, auto... args) {
  char buf[512];
  std::snprintf(buf, sizeof buf, f, args...);
  return buf;
}

Spectrum spectrum_of(const Domain& d, const GridParams& g, SymbolSpec s, bool vectors,
                     BoxGrid* grid_out = nullptr) {
  const BoxGrid grid = interior_points(d, g);
  const OperatorMatrix a = assemble_fractional_matrix(d, grid, s);
  if (grid_out) *grid_out = grid;
  return eig_symmetric(a, vectors);
}

// A1 -------------------------------------------------------------------------
Outcome a1() {
  const Domain d = Domain::interval(std::numbers::pi);
  // 2048 box points at box factor 4 leave 511 interior nodes with spacing pi/512.
  const Spectrum s = spectrum_of(d, {2048, 4.0}, {2.0, 0.0, SymbolKind::discrete}, false);
  if (s.size() != 511) return {false, fmt("expected 511 nodes, got %ld", long(s.size()))};
  const double n1 = 512.0;
  double worst = 0.0;
  for (Eigen::Index j = 1; j <= 511; ++j) {
    const double want =
        std::pow(n1 / std::numbers::pi, 2) * 2.0 * (1.0 - std::cos(double(j) * std::numbers::pi / n1));
    worst = std::max(worst, std::abs(s.eigenvalues(j - 1) - want) / want);
  }
  return {worst <= 1e-10, fmt("max relative deviation %.3e (tol 1e-10)", worst)};
}

// A2 -------------------------------------------------------------------------
Outcome a2() {
  // value_coarse is the Richardson value of the (80, n) and (80, 2n+1) samples.
  const KappaResult r = kappa_m(2, 2.0, ModelParams::defaults(2.0));
  const double tol = 0.02 * 0.25 + r.quad_error;
  const double drift = std::abs(r.value_coarse - r.value) / std::abs(r.value);
  const bool ok = r.converged && std::abs(r.value + 0.25) <= tol && drift < 0.01;
  return {ok, fmt("varkappa_2 = %.6f (qe %.2e, tol %.2e vs -1/4); L=80: %.6f, drift %.3f%%",
                  r.value, r.quad_error, tol, r.value_coarse, 100.0 * drift)};
}

// A3/A4 share the disk grid: ~2800 interior points.
const GridParams kDiskGrid{256, 4.29};

Outcome a3() {
  const Domain disk = Domain::disk(1.0);
  BoxGrid grid;
  const Spectrum s = spectrum_of(disk, kDiskGrid, {2.0, 0.0, SymbolKind::exact}, false, &grid);
  const double model = kappa1(2, 2.0, disk, -0.25);
  const FitReport f = fit_second_term(s, disk, 2.0, FitWindow{}, FitMethod::riesz, model);
  const bool ok = std::abs(f.kappa1_hat - (-0.5)) <= 0.15 * 0.5;
  return {ok, fmt("%zu points; kappa1_hat = %.4f +- %.4f vs -0.5 (15%%); kappa1(2,2,disk,-1/4) = %.4f",
                  grid.size(), f.kappa1_hat, f.stderr_k1, model)};
}

Outcome a4() {
  const Domain disk = Domain::disk(1.0);
  const KappaResult k = kappa_m(2, 1.0, ModelParams::defaults(1.0));
  const WeylModel w = make_weyl_model(disk, 1.0, k.value, k.quad_error);
  BoxGrid grid;
  const Spectrum s = spectrum_of(disk, kDiskGrid, {1.0, 0.0, SymbolKind::exact}, false, &grid);
  const FitReport f = fit_second_term(s, disk, 1.0, FitWindow{}, FitMethod::riesz, w.kappa1);
  const double allowed = f.stderr_k1 + w.kappa1_error();
  const bool ok = std::abs(f.kappa1_hat - w.kappa1) <= allowed && f.kappa1_hat < 0.0 && w.kappa1 < 0.0;
  return {ok, fmt("varkappa_1 = %.5f (qe %.1e); kappa1 model %.4f; fit %.4f +- %.4f; |diff| %.4f vs allowed %.4f",
                  k.value, k.quad_error, w.kappa1, f.kappa1_hat, f.stderr_k1,
                  std::abs(f.kappa1_hat - w.kappa1), allowed)};
}

// A5 -------------------------------------------------------------------------
Outcome a5() {
  std::vector<std::pair<double, KappaResult>> rs;
  for (double m : {0.5, 1.0, 1.5, 2.0}) rs.emplace_back(m, kappa_m(2, m, ModelParams::defaults(m)));
  bool ok = true;
  std::string detail;
  for (const auto& [m, r] : rs) {
    ok = ok && r.converged;
    detail += fmt("m=%.1f: %.5f (qe %.1e); ", m, r.value, r.quad_error);
  }
  for (std::size_t i = 1; i < rs.size(); ++i) {
    const double gap = rs[i - 1].second.value - rs[i].second.value;
    const double err = rs[i - 1].second.quad_error + rs[i].second.quad_error;
    ok = ok && gap > 3.0 * err;
    detail += fmt("gap %.4f/3err %.4f; ", gap, 3.0 * err);
  }
  return {ok, detail};
}

// A6 -------------------------------------------------------------------------
Outcome a6() {
  const TrialSummary suite = projection_trial_suite(1, 200);
  bool ok = suite.failures == 0;
  std::string detail = fmt("%zu trials, min gap/|B| %.2e; ", suite.trials.size(), suite.min_gap);

  const Domain interval = Domain::interval(std::numbers::pi);
  const BoxGrid ig = interior_points(interval, GridParams{1024, 4.0});
  const Domain disk = Domain::disk(1.0);
  const BoxGrid dg = interior_points(disk, GridParams{64, 2.0});
  double worst_power = std::numeric_limits<double>::infinity();
  for (auto [m, n] : {std::pair{1.0, 2.0}, {0.5, 1.0}, {4.0, 2.0}, {1.0, 0.5}}) {
    for (auto [dom, grid] : {std::pair{&interval, &ig}, {&disk, &dg}}) {
      const PowerGap g = power_difference_gap(*dom, *grid, m, n);
      ok = ok && g.gap >= -1e-9 * g.scale;
      worst_power = std::min(worst_power, g.gap / g.scale);
    }
  }
  double worst_product = std::numeric_limits<double>::infinity();
  for (double m1 : {0.5, 1.0}) {
    for (auto [dom, grid] : {std::pair{&interval, &ig}, {&disk, &dg}}) {
      const ProductProbe p = product_difference_probe(*dom, *grid, m1, m1);
      ok = ok && p.min_eig_sym >= -1e-8 * p.norm_K;
      worst_product = std::min(worst_product, p.min_eig_sym / p.norm_K);
    }
  }
  detail += fmt("min power gap/scale %.2e; min product eig/|K| %.2e", worst_power, worst_product);
  return {ok, detail};
}

// A7 -------------------------------------------------------------------------
Outcome a7() {
  const Domain d = Domain::interval(std::numbers::pi);
  const SymbolSpec s{1.0, 0.0, SymbolKind::exact};
  // Same spacing: doubling the box doubles the points per axis.
  const Spectrum s4 = spectrum_of(d, {2048, 4.0}, s, false);
  const Spectrum s8 = spectrum_of(d, {4096, 8.0}, s, false);
  if (s4.size() != s8.size()) return {false, "node sets differ"};
  double worst = 0.0;
  for (Eigen::Index j = 0; j < 10; ++j) {
    worst = std::max(worst, std::abs(s8.eigenvalues(j) / s4.eigenvalues(j) - 1.0));
  }
  return {worst <= 0.005, fmt("max relative change %.3e over 10 lowest (tol 5e-3)", worst)};
}

// A8 -------------------------------------------------------------------------
Outcome a8() {
  struct Case {
    const char* name;
    Domain domain;
    GridParams grid;
    SymbolSpec symbol;
    double want;
  };
  const Case cases[] = {
      {"m=1 interval", Domain::interval(std::numbers::pi), {2048, 4.0}, {1.0, 0.0, SymbolKind::exact}, 0.5},
      {"m=1 disk", Domain::disk(1.0), {256, 4.29}, {1.0, 0.0, SymbolKind::exact}, 0.5},
      {"m=2 interval", Domain::interval(std::numbers::pi), {2048, 4.0}, {2.0, 0.0, SymbolKind::discrete}, 1.0},
  };
  bool ok = true;
  std::string detail;
  for (const Case& c : cases) {
    BoxGrid grid;
    const Spectrum s = spectrum_of(c.domain, c.grid, c.symbol, true, &grid);
    const BoundaryFit f = boundary_exponent(s, c.domain, grid, 0);
    ok = ok && std::abs(f.mu_hat - c.want) <= 0.07;
    detail += fmt("%s: %.4f +- %.4f (want %.1f); ", c.name, f.mu_hat, f.stderr_mu, c.want);
  }
  return {ok, detail};
}

// A9 -------------------------------------------------------------------------
Outcome a9() {
  const double coarse = scaling_residual(1.0, 2.0, 20.0, 255);
  const double fine = scaling_residual(1.0, 2.0, 20.0, 511);
  const double unit = scaling_residual(1.0, 1.0, 20.0, 255);
  const bool ok = coarse / fine >= 1.5 && unit <= 1e-10;
  return {ok, fmt("a=2 residual %.3e -> %.3e (ratio %.2f, need 1.5); a=1 residual %.1e",
                  coarse, fine, coarse / fine, unit)};
}

// A10 ------------------------------------------------------------------------
Outcome a10() {
  bool ok = true;
  std::string detail;
  const std::vector<double> eps{1e-1, 1e-2, 1e-3};
  for (auto [name, dom] : {std::pair{"square", Domain::rectangle(1.0, 1.0)}, {"disk", Domain::disk(1.0)}}) {
    const auto reps = periodic_orbit_fractions(dom, 10000, 50.0, eps, 7);
    bool monotone = true;
    for (std::size_t i = 1; i < reps.size(); ++i) {
      monotone = monotone && reps[i].near_periodic_fraction <= reps[i - 1].near_periodic_fraction;
    }
    const double f3 = reps.back().near_periodic_fraction;
    ok = ok && monotone && f3 <= 0.05;
    detail += fmt("%s: %.4f/%.4f/%.4f at eps 1e-1/1e-2/1e-3; ", name, reps[0].near_periodic_fraction,
                  reps[1].near_periodic_fraction, f3);
  }
  return {ok, detail};
}

// A11 ------------------------------------------------------------------------
std::string slurp(const fs::path& p) {
  std::ifstream in(p, std::ios::binary);
  return {std::istreambuf_iterator<char>(in), {}};
}

Outcome a11() {
  const char* jobs[][2] = {
      {"spectrum", R"({"domain":{"kind":"disk","R":1},"m":1,"grid":{"n":64,"box_factor":2}})"},
      {"weyl-fit", R"({"domain":{"kind":"disk","R":1},"m":1,"grid":{"n":64,"box_factor":2}})"},
      {"kappa", R"({"m":2,"model":{"L_trunc":20,"n":255}})"},
      {"props", R"({"props":{"repeats":20},"domain":{"kind":"interval","L":3.141592653589793},"grid":{"n":256}})"},
      {"billiard", R"({"domain":{"kind":"disk","R":1},"billiard":{"samples":2000,"T":20}})"},
  };
  const fs::path root = fs::temp_directory_path() / fmt("fracspec_a11_%d", int(::getpid()));
  fs::remove_all(root);
  bool ok = true;
  std::string detail;
  int compared = 0;
  for (const auto& [cmd, raw] : jobs) {
    const JobConfig cfg = validate_config(raw, cmd, 11);
    const fs::path a = root / cmd / "a", b = root / cmd / "b";
    const int ca = run_job(cfg, a), cb = run_job(cfg, b);
    if (ca != cb) {
      ok = false;
      detail += fmt("%s exit codes differ; ", cmd);
    }
    for (const auto& e : fs::recursive_directory_iterator(a)) {
      if (!e.is_regular_file() || e.path().filename() == "manifest.json") continue;
      const fs::path rel = fs::relative(e.path(), a);
      ++compared;
      if (slurp(e.path()) != slurp(b / rel)) {
        ok = false;
        detail += fmt("%s/%s differs; ", cmd, rel.generic_string().c_str());
      }
    }
  }
  fs::remove_all(root);
  detail += fmt("%d data files compared across %zu jobs", compared, std::size(jobs));
  return {ok, detail};
}

}  // namespace

int main(int argc, char** argv) {
  const std::vector<std::pair<std::string, std::function<Outcome()>>> criteria = {
      {"A1", a1}, {"A2", a2}, {"A3", a3}, {"A4", a4},  {"A5", a5},  {"A6", a6},
      {"A7", a7}, {"A8", a8}, {"A9", a9}, {"A10", a10}, {"A11", a11},
  };
  std::set<std::string> only(argv + 1, argv + argc);
  int failed = 0;
  for (const auto& [name, run] : criteria) {
    if (!only.empty() && !only.count(name)) continue;
    const auto t0 = std::chrono::steady_clock::now();
    Outcome o;
    try {
      o = run();
    } catch (const std::exception& e) {
      o = {false, std::string("exception: ") + e.what()};
    }
    const double secs = std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
    std::printf("%s %s  %s [%.1fs]\n", name.c_str(), o.pass ? "PASS" : "FAIL", o.detail.c_str(), secs);
    std::fflush(stdout);
    failed += !o.pass;
  }
  std::printf("%d criteria failed\n", failed);
  return failed == 0 ? 0 : 1;
}
