#pragma once

#include <Eigen/Dense>
#include <string>
#include <utility>
#include <vector>

#include "fracspec/domain.hpp"
#include "fracspec/grid.hpp"
#include "fracspec/operator.hpp"

namespace fracspec {

inline constexpr double kResidualTolerance = 1e-8;

/// Ascending eigenvalues, optionally with orthonormal eigenvectors (columns).
/// Each vector is sign-normalized so that its largest-magnitude entry is positive.
struct Spectrum {
  Eigen::VectorXd eigenvalues;
  Eigen::MatrixXd eigenvectors;  // empty unless requested
  double residual_bound = 0.0;    // max_j |A v_j - lambda_j v_j| / |A|
  double gram_deviation = 0.0;    // max |V^T V - I|

  bool has_vectors() const { return eigenvectors.size() > 0; }
  Eigen::Index size() const { return eigenvalues.size(); }
};

/// Full symmetric eigendecomposition: Householder tridiagonalization followed
/// by implicit-shift QR. Residual and
/// orthonormality are always verified; a violation throws SolverError.
Spectrum eig_symmetric(const Eigen::MatrixXd& a, bool want_vectors);
Spectrum eig_symmetric(const OperatorMatrix& a, bool want_vectors);

/// Short hex digest identifying a matrix in error messages.
std::string matrix_fingerprint(const Eigen::MatrixXd& a);

/// #{j : lambda_j <= lambda}.
long counting_function(const Spectrum& s, double lambda);

/// sum_j (lambda - lambda_j)_+.
double riesz_mean(const Spectrum& s, double lambda);

/// sum_{lambda_j <= lambda} |v_j(i)|^2 / h^d.
double spectral_kernel_diag(const Spectrum& s, const BoxGrid& grid, std::size_t point,
                            double lambda);

/// The same estimator at every interior point.
Eigen::VectorXd spectral_kernel_diag_all(const Spectrum& s, const BoxGrid& grid, double lambda);

struct BoundaryFit {
  double mu_hat = 0.0;
  double stderr_mu = 0.0;
  std::pair<double, double> window{0.0, 0.0};
  int points = 0;
};

/// Fits log|v_j| = mu log d + c0 + c1 d over nodes with boundary distance d in
/// [2h, 0.2 * inradius]. The linear term absorbs the smooth factor multiplying
/// d^mu. Fewer than six usable nodes throw InsufficientDataError.
BoundaryFit boundary_exponent(const Spectrum& s, const Domain& domain, const BoxGrid& grid,
                              Eigen::Index j);

/// eigs.csv contents: header index,lambda.
std::string eigs_csv(const Spectrum& s);

}  // namespace fracspec
