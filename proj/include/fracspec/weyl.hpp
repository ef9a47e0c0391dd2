#pragma once

#include <Eigen/Dense>
#include <string_view>
#include <utility>

#include "fracspec/domain.hpp"
#include "fracspec/grid.hpp"
#include "fracspec/model1d.hpp"
#include "fracspec/spectrum.hpp"

namespace fracspec {

struct Kappa0 {
  double coefficient = 0.0;
  double exponent = 0.0;  // d/m
};

/// (2 pi)^{-d} vol(B^d) vol(X), independent of m; the exponent is d/m.
Kappa0 kappa0(const Domain& domain, double m);

/// Fills kappa0 and kappa1 for the domain from a computed varkappa_m.
WeylModel make_weyl_model(const Domain& domain, double m, double varkappa, double quad_error);

double two_term_counting(double lambda, const WeylModel& w);

enum class FitMethod { counting, riesz };
std::string_view to_string(FitMethod method);
FitMethod fit_method_from_string(std::string_view name);

/// Window in fractions of the spectrum size.
struct FitWindow {
  double lo_fraction = 0.05;
  double hi_fraction = 0.2;
};

struct FitReport {
  double kappa1_hat = 0.0;
  double stderr_k1 = 0.0;
  std::pair<double, double> window{0.0, 0.0};
  FitMethod method = FitMethod::riesz;
  double model_kappa1 = 0.0;
  double relative_gap = 0.0;  // (kappa1_hat - model) / |model|
  int crossings = 0;
};

/// Least-squares fit of the second Weyl coefficient with kappa0 held fixed.
///
/// counting: N - kappa0 L^{d/m} against L^{(d-1)/m}, sampled at the midpoints
///           between consecutive eigenvalues of the window.
/// riesz:    R - kappa0 L^{A}/A against L^{B}/B with A = d/m + 1 and
///           B = (d-1)/m + 1, sampled at the window's eigenvalues.
/// Fewer than ten eigenvalues in the window throw InsufficientDataError.
FitReport fit_second_term(const Eigen::VectorXd& eigenvalues, int d, double kappa0, double m,
                          const FitWindow& window, FitMethod method, double model_kappa1 = 0.0);

FitReport fit_second_term(const Spectrum& s, const Domain& domain, double m,
                          const FitWindow& window, FitMethod method, double model_kappa1 = 0.0);

/// max over nodes at distance >= margin from the boundary of
/// |e(x,x,lambda) - (2 pi)^{-d} vol(B^d) lambda^{d/m}| / lambda^{(d-1)/m}.
double interior_weyl_residual(const Spectrum& s, const Domain& domain, const BoxGrid& grid,
                              double m, double lambda, double margin);

}  // namespace fracspec
