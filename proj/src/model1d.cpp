#include "fracspec/model1d.hpp"

#include <algorithm>
#include <boost/math/quadrature/tanh_sinh.hpp>
#include <boost/math/special_functions/gamma.hpp>
#include <cmath>
#include <limits>
#include <numbers>

#include "fracspec/error.hpp"
#include "fracspec/operator.hpp"

namespace fracspec {

double default_lambda_max(double m) {
  return std::clamp(std::pow(1.0 + 16.0 * 16.0, 0.5 * m), 4.0, 60.0);
}

ModelParams ModelParams::defaults(double m) {
  ModelParams p;
  p.m = m;
  p.x_max = p.L_trunc / 4.0;
  p.lambda_max = default_lambda_max(m);
  return p;
}

void ModelParams::validate() const {
  if (!(m > 0.0) || m > kMaxOrder) throw ConfigError("model order m must lie in (0, 8]");
  if (!(a >= 0.0)) throw ConfigError("model mass a must be non-negative");
  if (!(h > 0.0)) throw ConfigError("model parameter h must be positive");
  if (!(L_trunc > 0.0)) throw ConfigError("L_trunc must be positive");
  if (n < 64) throw ConfigError("model needs at least 64 points");
  if (!(x_max > 0.0) || x_max > 0.25 * L_trunc * (1.0 + 1e-12)) {
    throw ConfigError("x_max must lie in (0, L_trunc/4]");
  }
  if (!(lambda_max >= 4.0)) throw ConfigError("lambda_max must be at least 4");
}

double weyl_halfline(double lambda, double m) {
  if (lambda <= 1.0) return 0.0;
  return std::pow(lambda - 1.0, 1.0 / m) / std::numbers::pi;
}

double halfline_weyl_density(double lambda, double m, double a, double h) {
  if (!(lambda > 0.0)) return 0.0;
  const double t = std::pow(lambda, 2.0 / m) - a * a;
  return t > 0.0 ? std::sqrt(t) / (std::numbers::pi * h) : 0.0;
}

HalflineModel::HalflineModel(const ModelParams& params, SymbolKind kind) : params_(params) {
  params_.validate();
  // (h^2 xi^2 + a^2)^{m/2} = h^m (xi^2 + (a/h)^2)^{m/2}
  SymbolSpec symbol;
  symbol.m = params_.m;
  symbol.mass = params_.a / params_.h;
  symbol.kind = kind;
  OperatorMatrix op = assemble_halfline_model(symbol, params_.L_trunc, params_.n);
  if (params_.h != 1.0) op.entries *= std::pow(params_.h, params_.m);
  grid_ = op.meta.grid;
  spectrum_ = eig_symmetric(op, true);
}

double HalflineModel::kernel_diag_at_node(int i, double lambda) const {
  if (i < 1 || i > params_.n) return 0.0;
  const long count = counting_function(spectrum_, lambda);
  double sum = 0.0;
  for (long j = 0; j < count; ++j) {
    const double v = spectrum_.eigenvectors(i - 1, j);
    sum += v * v;
  }
  return sum / grid_.spacing;
}

double HalflineModel::kernel_diag(double x, double lambda) const {
  const double t = x / grid_.spacing;
  const int i = static_cast<int>(std::floor(t));
  const double w = t - i;
  const double lo = kernel_diag_at_node(i, lambda);
  if (w == 0.0) return lo;
  return (1.0 - w) * lo + w * kernel_diag_at_node(i + 1, lambda);
}

std::vector<double> HalflineModel::cumulative_weights(double x) const {
  const int k = std::clamp(static_cast<int>(std::floor(x / grid_.spacing)), 0, params_.n);
  const Eigen::Index cols = spectrum_.size();
  std::vector<double> g(static_cast<std::size_t>(cols), 0.0);
  for (Eigen::Index j = 0; j < cols; ++j) {
    g[static_cast<std::size_t>(j)] = spectrum_.eigenvectors.col(j).head(k).squaredNorm();
  }
  return g;
}

double halfline_kernel_diag(const ModelParams& p, double x1, double lambda) {
  p.validate();
  if (x1 > p.x_max) throw ConfigError("x1 exceeds x_max");
  if (lambda > p.lambda_max) throw ConfigError("lambda exceeds lambda_max");
  return HalflineModel(p).kernel_diag(x1, lambda);
}

double inner_integral(const HalflineModel& model, double x_max, double lambda) {
  const ModelParams& p = model.params();
  const double delta = model.spacing();
  const double k = std::floor(x_max / delta);
  const std::vector<double> g = model.cumulative_weights(x_max);
  const long count = counting_function(model.spectrum(), lambda);
  double sum = 0.0;
  for (long j = 0; j < count; ++j) sum += g[static_cast<std::size_t>(j)];
  return sum - (k + 0.5) * delta * halfline_weyl_density(lambda, p.m, p.a, p.h);
}

namespace {

struct FitLine {
  double intercept = 0.0;
  double stderr_intercept = 0.0;
};

// Least squares y = c0 + c1 t with the standard error of c0.
FitLine fit_line(const std::vector<double>& t, const std::vector<double>& y) {
  const auto n = static_cast<double>(t.size());
  double mt = 0.0, my = 0.0;
  for (std::size_t i = 0; i < t.size(); ++i) {
    mt += t[i];
    my += y[i];
  }
  mt /= n;
  my /= n;
  double stt = 0.0, sty = 0.0;
  for (std::size_t i = 0; i < t.size(); ++i) {
    stt += (t[i] - mt) * (t[i] - mt);
    sty += (t[i] - mt) * (y[i] - my);
  }
  const double slope = stt > 0.0 ? sty / stt : 0.0;
  FitLine f;
  f.intercept = my - slope * mt;
  double rss = 0.0;
  for (std::size_t i = 0; i < t.size(); ++i) {
    const double r = y[i] - f.intercept - slope * t[i];
    rss += r * r;
  }
  const double s2 = t.size() > 2 ? rss / (n - 2.0) : 0.0;
  f.stderr_intercept = stt > 0.0 ? std::sqrt(s2 * (1.0 / n + mt * mt / stt)) : 0.0;
  return f;
}

KappaSample kappa_sample(int d, double m, double length, int points, double x_ratio,
                         double lambda_max, const KappaOptions& options) {
  KappaSample sample;
  sample.L_trunc = length;
  sample.n = points;
  if (options.zero_integrand) return sample;

  ModelParams p = ModelParams::defaults(m);
  p.L_trunc = length;
  p.n = points;
  p.x_max = x_ratio * length;
  p.lambda_max = lambda_max;
  const HalflineModel model(p);

  const double delta = model.spacing();
  const double x_cut = (std::floor(p.x_max / delta) + 0.5) * delta;
  const std::vector<double> g = model.cumulative_weights(p.x_max);
  const Eigen::VectorXd& lam = model.spectrum().eigenvalues;

  const int count = options.tail_points;
  std::vector<double> upper(static_cast<std::size_t>(count));
  for (int k = 0; k < count; ++k) {
    upper[static_cast<std::size_t>(k)] = 0.5 * lambda_max * (1.0 + static_cast<double>(k) / (count - 1));
  }

  if (d == 1) {
    // The weight (d-1)/m lambda^{-(d-1)/m-1} tends to a point mass at infinity.
    std::vector<double> f;
    for (double top : upper) f.push_back(inner_integral(model, p.x_max, top));
    double mean = 0.0;
    for (double v : f) mean += v;
    mean /= count;
    double var = 0.0;
    for (double v : f) var += (v - mean) * (v - mean);
    sample.value = mean;
    sample.stderr_fit = std::sqrt(var / (count - 1) / count);
    return sample;
  }

  const double q = (d - 1) / m;
  boost::math::quadrature::tanh_sinh<double> integrator;
  std::vector<double> t, y;
  for (double top : upper) {
    double sum = 0.0;
    for (Eigen::Index j = 0; j < lam.size() && lam[j] <= top; ++j) {
      if (lam[j] <= 1.0) continue;
      sum += g[static_cast<std::size_t>(j)] * (std::pow(lam[j], -q) - std::pow(top, -q)) / q;
    }
    const double weyl = integrator.integrate(
        [&](double l) { return std::pow(l, -q - 1.0) * halfline_weyl_density(l, m); }, 1.0, top);
    t.push_back(std::pow(top, -q));
    y.push_back(q * (sum - x_cut * weyl));
  }
  const FitLine fit = fit_line(t, y);
  sample.value = fit.intercept;
  sample.stderr_fit = fit.stderr_intercept;
  return sample;
}

}  // namespace

KappaResult kappa_m(int d, double m, const ModelParams& p, const KappaOptions& options) {
  p.validate();
  if (d < 1) throw ConfigError("dimension must be positive");
  if (p.a != 1.0 || p.h != 1.0) throw ConfigError("the boundary constant uses a = h = 1");
  if (options.tail_points < 3) throw ConfigError("tail fit needs at least 3 points");
  const double ratio = p.x_max / p.L_trunc;

  KappaResult r;
  const int fine = 2 * p.n + 1;
  r.samples.push_back(kappa_sample(d, m, p.L_trunc, p.n, ratio, p.lambda_max, options));
  r.samples.push_back(kappa_sample(d, m, p.L_trunc, fine, ratio, p.lambda_max, options));
  r.samples.push_back(kappa_sample(d, m, 2.0 * p.L_trunc, p.n, ratio, p.lambda_max, options));
  r.samples.push_back(kappa_sample(d, m, 2.0 * p.L_trunc, fine, ratio, p.lambda_max, options));

  // The node-spacing error is first order; halving the spacing eliminates it.
  auto richardson = [](const KappaSample& c, const KappaSample& f) {
    return 2.0 * f.value - c.value;
  };
  r.value = richardson(r.samples[0], r.samples[1]);
  r.value_coarse = richardson(r.samples[2], r.samples[3]);
  const double fit_err =
      std::hypot(2.0 * r.samples[1].stderr_fit, r.samples[0].stderr_fit);
  r.quad_error = std::abs(r.value - r.value_coarse) + fit_err;
  if (!std::isfinite(r.value) || !std::isfinite(r.quad_error)) {
    r.converged = false;
    r.quad_error = std::numeric_limits<double>::infinity();
  }
  return r;
}

double WeylModel::kappa1_error() const {
  return varkappa_m != 0.0 ? std::abs(kappa1 / varkappa_m) * quad_error : 0.0;
}

double unit_ball_volume(int k) {
  if (k < 0) throw ConfigError("ball dimension must be non-negative");
  return std::pow(std::numbers::pi, 0.5 * k) / boost::math::tgamma(0.5 * k + 1.0);
}

double kappa1(int d, double /*m*/, const Domain& domain, double varkappa) {
  return std::pow(2.0 * std::numbers::pi, 1 - d) * unit_ball_volume(d - 1) * varkappa *
         domain.boundary_measure();
}

double scaling_residual(double m, double a, double length, int points) {
  if (!(a > 0.0)) throw ConfigError("scaling needs a positive mass");
  if ((points + 1) % 8 != 0) throw ConfigError("points + 1 must be divisible by 8");
  const double t = a * (points + 1);
  if (std::abs(t - std::round(t)) > 1e-9 * t) {
    throw ConfigError("mismatched grids: a * (n + 1) is not an integer");
  }
  const int points2 = static_cast<int>(std::lround(t)) - 1;

  ModelParams p1 = ModelParams::defaults(m);
  p1.a = a;
  p1.L_trunc = length;
  p1.n = points;
  p1.x_max = length / 4.0;
  ModelParams p2 = p1;
  p2.a = 1.0;
  p2.L_trunc = a * length;
  p2.n = points2;
  p2.x_max = p2.L_trunc / 4.0;
  const HalflineModel side1(p1);
  const HalflineModel side2(p2);

  const Eigen::VectorXd& lam = side1.spectrum().eigenvalues;
  const Eigen::Index gaps = std::min<Eigen::Index>(8, lam.size() - 1);
  const double scale = std::pow(a, -m);
  double worst = 0.0;
  for (int q = 1; q <= 3; ++q) {
    const int i = q * (points + 1) / 8;
    const double yi = a * i;
    const int i2 = static_cast<int>(std::lround(yi));
    if (std::abs(yi - i2) > 1e-9 * yi) throw ConfigError("mismatched grids: a x is not a node");
    for (Eigen::Index j = 0; j < gaps; ++j) {
      const double lambda = 0.5 * (lam[j] + lam[j + 1]);
      const double lhs = side1.kernel_diag_at_node(i, lambda);
      const double rhs = a * side2.kernel_diag_at_node(i2, lambda * scale);
      worst = std::max(worst, std::abs(lhs - rhs));
    }
  }
  return worst;
}

}  // namespace fracspec
