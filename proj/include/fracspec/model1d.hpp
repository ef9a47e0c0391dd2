#pragma once

#include <vector>

#include "fracspec/domain.hpp"
#include "fracspec/grid.hpp"
#include "fracspec/spectrum.hpp"
#include "fracspec/symbol.hpp"

namespace fracspec {

/// Default spectral cutoff for the model quadrature: the symbol value at
/// |xi| = 16, clamped to [4, 60].
double default_lambda_max(double m);

/// Half-line model parameters. The operator is ((h^2 D^2 + a^2)^{m/2})_D on
/// (0, L_trunc) with n interior nodes.
struct ModelParams {
  double m = 1.0;
  double a = 1.0;
  double h = 1.0;
  double L_trunc = 40.0;
  int n = 1023;
  double x_max = 10.0;
  double lambda_max = 60.0;

  /// L_trunc = 40, n = 1023, x_max = L_trunc/4 and the default lambda_max.
  static ModelParams defaults(double m);
  void validate() const;
};

/// pi^{-1} (lambda - 1)^{1/m} for lambda > 1, else 0.
double weyl_halfline(double lambda, double m);

/// Local Weyl density of (h^2 D^2 + a^2)^{m/2} on the line:
/// the measure of {xi : (h^2 xi^2 + a^2)^{m/2} <= lambda} divided by 2 pi.
/// Agrees with weyl_halfline only for m = 2, a = h = 1.
double halfline_weyl_density(double lambda, double m, double a = 1.0, double h = 1.0);

/// Assembled and diagonalized half-line model.
class HalflineModel {
 public:
  explicit HalflineModel(const ModelParams& params, SymbolKind kind = SymbolKind::exact);

  const ModelParams& params() const { return params_; }
  const BoxGrid& grid() const { return grid_; }
  const Spectrum& spectrum() const { return spectrum_; }
  double spacing() const { return grid_.spacing; }

  /// e(x, x, lambda) at interior node i (1-based, node i sits at i * spacing).
  double kernel_diag_at_node(int i, double lambda) const;
  /// Linear interpolation between nodes, with e = 0 at x = 0.
  double kernel_diag(double x, double lambda) const;

  /// sum_{i <= K} |v_j(i)|^2 for every eigenvector, K = floor(x / spacing).
  std::vector<double> cumulative_weights(double x) const;

 private:
  ModelParams params_;
  BoxGrid grid_;
  Spectrum spectrum_;
};

/// e(x1, x1, lambda) from a freshly assembled model. Requires x1 <= x_max
/// and lambda <= lambda_max.
double halfline_kernel_diag(const ModelParams& p, double x1, double lambda);

struct KappaOptions {
  /// Replace the integrand by zero; the pipeline must then return 0.
  bool zero_integrand = false;
  int tail_points = 60;
};

/// One tail-fitted evaluation on a single (L_trunc, n) discretization.
struct KappaSample {
  double L_trunc = 0.0;
  int n = 0;
  double value = 0.0;
  double stderr_fit = 0.0;
};

struct KappaResult {
  double value = 0.0;
  double quad_error = 0.0;
  bool converged = true;
  double value_coarse = 0.0;  // Richardson value at 2 * L_trunc
  std::vector<KappaSample> samples;
};

/// Inner integral F(lambda) = int_0^X (e(x,x,lambda) - rho(lambda)) dx with
/// X = (K + 1/2) * spacing, evaluated from node sums.
double inner_integral(const HalflineModel& model, double x_max, double lambda);

/// The boundary constant of the model operator (D^2 + 1)^{m/2}.
///
/// For d >= 2 the double integral
///   (d-1)/m int_1^inf lambda^{-(d-1)/m - 1} int_0^inf (e(x,x,lambda) - rho) dx dlambda
/// is evaluated up to Lambda in [lambda_max/2, lambda_max] and extrapolated
/// with the fit I(Lambda) = value + c Lambda^{-(d-1)/m}. For d = 1 the weight
/// degenerates and the result is the large-lambda average of F(lambda).
/// Node spacing is removed by Richardson extrapolation between n and 2n+1
/// points; the same extrapolation at 2 * L_trunc supplies the error estimate.
KappaResult kappa_m(int d, double m, const ModelParams& p, const KappaOptions& options = {});

/// Coefficient pack of the two-term law N = kappa0 L^{d/m} + kappa1 L^{(d-1)/m}.
struct WeylModel {
  int d = 1;
  double m = 1.0;
  double kappa0 = 0.0;
  double varkappa_m = 0.0;
  double kappa1 = 0.0;
  double quad_error = 0.0;  // error of varkappa_m; kappa1 inherits it scaled

  double leading_exponent() const { return d / m; }
  double second_exponent() const { return (d - 1) / m; }
  /// Error of kappa1 implied by quad_error.
  double kappa1_error() const;
};

/// Volume of the unit ball in R^k.
double unit_ball_volume(int k);

/// (2 pi)^{1-d} vol(B^{d-1}) varkappa vol_{d-1}(boundary).
double kappa1(int d, double m, const Domain& domain, double varkappa);

/// Difference between the two sides of
///   e_{m,a}(x, x, lambda) = a e_{m,1}(a x, a x, lambda a^{-m})
/// Side one: mass a on (0, L) with n nodes of spacing L/(n+1). Side two: mass 1
/// on (0, a L) with the same spacing, a(n+1) - 1 nodes. The maximum is taken
/// over x in {L/8, L/4, 3L/8} and lambda at the midpoints of the first eight
/// side-one eigenvalue gaps. Exact symbol only.
double scaling_residual(double m, double a, double length, int points);

}  // namespace fracspec
