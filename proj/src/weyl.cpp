#include "fracspec/weyl.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>
#include <string>
#include <vector>

#include "fracspec/error.hpp"

namespace fracspec {

Kappa0 kappa0(const Domain& domain, double m) {
  const int d = domain.dimension();
  return {std::pow(2.0 * std::numbers::pi, -d) * unit_ball_volume(d) * domain.volume(), d / m};
}

WeylModel make_weyl_model(const Domain& domain, double m, double varkappa, double quad_error) {
  WeylModel w;
  w.d = domain.dimension();
  w.m = m;
  w.kappa0 = kappa0(domain, m).coefficient;
  w.varkappa_m = varkappa;
  w.kappa1 = kappa1(w.d, m, domain, varkappa);
  w.quad_error = quad_error;
  return w;
}

double two_term_counting(double lambda, const WeylModel& w) {
  if (!(lambda > 0.0)) throw ConfigError("two-term counting needs lambda > 0");
  return w.kappa0 * std::pow(lambda, w.leading_exponent()) +
         w.kappa1 * std::pow(lambda, w.second_exponent());
}

std::string_view to_string(FitMethod method) {
  return method == FitMethod::riesz ? "riesz" : "counting";
}

FitMethod fit_method_from_string(std::string_view name) {
  if (name == "riesz") return FitMethod::riesz;
  if (name == "counting") return FitMethod::counting;
  throw ConfigError("unknown fit method '" + std::string(name) + "'");
}

FitReport fit_second_term(const Eigen::VectorXd& eigenvalues, int d, double kappa0, double m,
                          const FitWindow& window, FitMethod method, double model_kappa1) {
  if (!(window.lo_fraction >= 0.0) || !(window.hi_fraction > window.lo_fraction) ||
      window.hi_fraction > 1.0) {
    throw ConfigError("fit window fractions must satisfy 0 <= lo < hi <= 1");
  }
  const Eigen::Index n = eigenvalues.size();
  const auto lo = static_cast<Eigen::Index>(std::floor(window.lo_fraction * n));
  // N(lambda_hi) stays at or below hi_fraction * n.
  const Eigen::Index hi = static_cast<Eigen::Index>(std::floor(window.hi_fraction * n)) - 1;

  FitReport r;
  r.method = method;
  r.model_kappa1 = model_kappa1;
  r.crossings = hi >= lo ? static_cast<int>(hi - lo + 1) : 0;
  if (r.crossings < 10) {
    throw InsufficientDataError("fit window holds " + std::to_string(r.crossings) +
                                " eigenvalues, need at least 10");
  }
  r.window = {eigenvalues[lo], eigenvalues[hi]};

  const double a = d / m;
  const double b = (d - 1) / m;
  std::vector<double> basis, target;
  if (method == FitMethod::counting) {
    for (Eigen::Index j = lo; j < hi; ++j) {
      const double lambda = 0.5 * (eigenvalues[j] + eigenvalues[j + 1]);
      if (!(lambda > 0.0)) continue;
      const auto count = static_cast<double>(j + 1);
      target.push_back(count - kappa0 * std::pow(lambda, a));
      basis.push_back(std::pow(lambda, b));
    }
  } else {
    double riesz = 0.0;
    double prev = eigenvalues[0];
    for (Eigen::Index j = 0; j <= hi; ++j) {
      // R(lambda_j) = R(lambda_{j-1}) + j (lambda_j - lambda_{j-1})
      riesz += static_cast<double>(j) * (eigenvalues[j] - prev);
      prev = eigenvalues[j];
      if (j < lo || !(eigenvalues[j] > 0.0)) continue;
      const double lambda = eigenvalues[j];
      target.push_back(riesz - kappa0 * std::pow(lambda, a + 1.0) / (a + 1.0));
      basis.push_back(std::pow(lambda, b + 1.0) / (b + 1.0));
    }
  }
  if (basis.size() < 10) throw InsufficientDataError("too few positive eigenvalues in the window");

  double ff = 0.0, fy = 0.0;
  for (std::size_t i = 0; i < basis.size(); ++i) {
    ff += basis[i] * basis[i];
    fy += basis[i] * target[i];
  }
  r.kappa1_hat = fy / ff;
  double rss = 0.0;
  for (std::size_t i = 0; i < basis.size(); ++i) {
    const double e = target[i] - r.kappa1_hat * basis[i];
    rss += e * e;
  }
  r.stderr_k1 = std::sqrt(rss / static_cast<double>(basis.size() - 1) / ff);
  r.relative_gap = model_kappa1 != 0.0 ? (r.kappa1_hat - model_kappa1) / std::abs(model_kappa1)
                                       : r.kappa1_hat;
  return r;
}

FitReport fit_second_term(const Spectrum& s, const Domain& domain, double m,
                          const FitWindow& window, FitMethod method, double model_kappa1) {
  return fit_second_term(s.eigenvalues, domain.dimension(), kappa0(domain, m).coefficient, m,
                         window, method, model_kappa1);
}

double interior_weyl_residual(const Spectrum& s, const Domain& domain, const BoxGrid& grid,
                              double m, double lambda, double margin) {
  if (!(lambda > 0.0)) throw ConfigError("interior residual needs lambda > 0");
  const int d = domain.dimension();
  const double weyl = std::pow(2.0 * std::numbers::pi, -d) * unit_ball_volume(d) * std::pow(lambda, d / m);
  const double norm = std::pow(lambda, (d - 1) / m);
  const Eigen::VectorXd e = spectral_kernel_diag_all(s, grid, lambda);
  double worst = -1.0;
  for (std::size_t i = 0; i < grid.size(); ++i) {
    if (domain.distance_to_boundary(grid.coordinate(i)) < margin) continue;
    worst = std::max(worst, std::abs(e[static_cast<Eigen::Index>(i)] - weyl) / norm);
  }
  if (worst < 0.0) throw InsufficientDataError("no grid node is at least the margin from the boundary");
  return worst;
}

}  // namespace fracspec
