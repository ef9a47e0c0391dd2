#include "fracspec/spectrum.hpp"

#include <algorithm>
#include <cmath>

#include "fracspec/error.hpp"
#include "fracspec/io.hpp"

namespace fracspec {

std::string matrix_fingerprint(const Eigen::MatrixXd& a) {
  return std::to_string(a.rows()) + "x" + std::to_string(a.cols()) + ":" +
         sha256_hex(matrix_bytes(a)).substr(0, 16);
}

Spectrum eig_symmetric(const Eigen::MatrixXd& a, bool want_vectors) {
  if (a.rows() != a.cols()) throw ConfigError("eigensolver needs a square matrix");
  const Eigen::Index n = a.rows();
  Spectrum s;
  if (n == 0) return s;
  const double scale = a.cwiseAbs().maxCoeff();
  if (!std::isfinite(scale)) throw SolverError("non-finite matrix entries " + matrix_fingerprint(a));
  if (symmetry_residual(a) > 1e-12 * std::max(scale, 1e-300)) {
    throw SolverError("matrix is not symmetric " + matrix_fingerprint(a));
  }

  const Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> solver(a, Eigen::ComputeEigenvectors);
  if (solver.info() != Eigen::Success) {
    throw SolverError("symmetric QR iteration did not converge for " + matrix_fingerprint(a));
  }
  s.eigenvalues = solver.eigenvalues();
  Eigen::MatrixXd v = solver.eigenvectors();

  for (Eigen::Index j = 0; j < n; ++j) {
    Eigen::Index arg = 0;
    v.col(j).cwiseAbs().maxCoeff(&arg);
    if (v(arg, j) < 0) v.col(j) *= -1.0;
  }

  const double norm = std::max(s.eigenvalues.cwiseAbs().maxCoeff(), 1e-300);
  const Eigen::MatrixXd r = a * v - v * s.eigenvalues.asDiagonal();
  s.residual_bound = r.colwise().norm().maxCoeff() / norm;
  const Eigen::MatrixXd gram = v.transpose() * v - Eigen::MatrixXd::Identity(n, n);
  s.gram_deviation = gram.cwiseAbs().maxCoeff();
  if (!(s.residual_bound <= kResidualTolerance) || !(s.gram_deviation <= kResidualTolerance)) {
    throw SolverError("eigensolver accuracy check failed (residual " +
                      format_double(s.residual_bound) + ", gram " + format_double(s.gram_deviation) +
                      ") for " + matrix_fingerprint(a));
  }
  if (want_vectors) s.eigenvectors = std::move(v);
  return s;
}

Spectrum eig_symmetric(const OperatorMatrix& a, bool want_vectors) {
  return eig_symmetric(a.entries, want_vectors);
}

long counting_function(const Spectrum& s, double lambda) {
  const double* b = s.eigenvalues.data();
  return static_cast<long>(std::upper_bound(b, b + s.size(), lambda) - b);
}

double riesz_mean(const Spectrum& s, double lambda) {
  double sum = 0.0;
  for (Eigen::Index j = 0; j < s.size() && s.eigenvalues[j] <= lambda; ++j) {
    sum += lambda - s.eigenvalues[j];
  }
  return sum;
}

namespace {

void require_vectors(const Spectrum& s) {
  if (!s.has_vectors()) throw ConfigError("spectral kernel needs eigenvectors");
}

double cell_volume(const BoxGrid& grid) { return std::pow(grid.spacing, grid.dim); }

}  // namespace

double spectral_kernel_diag(const Spectrum& s, const BoxGrid& grid, std::size_t point,
                            double lambda) {
  require_vectors(s);
  const auto i = static_cast<Eigen::Index>(point);
  const long count = counting_function(s, lambda);
  double sum = 0.0;
  for (long j = 0; j < count; ++j) {
    const double x = s.eigenvectors(i, j);
    sum += x * x;
  }
  return sum / cell_volume(grid);
}

Eigen::VectorXd spectral_kernel_diag_all(const Spectrum& s, const BoxGrid& grid, double lambda) {
  require_vectors(s);
  const long count = counting_function(s, lambda);
  Eigen::VectorXd e = Eigen::VectorXd::Zero(s.eigenvectors.rows());
  for (long j = 0; j < count; ++j) e += s.eigenvectors.col(j).cwiseAbs2();
  return e / cell_volume(grid);
}

BoundaryFit boundary_exponent(const Spectrum& s, const Domain& domain, const BoxGrid& grid,
                              Eigen::Index j) {
  require_vectors(s);
  if (j < 0 || j >= s.size()) throw ConfigError("eigen index out of range");
  BoundaryFit fit;
  fit.window = {2.0 * grid.spacing, 0.2 * domain.inradius()};

  std::vector<double> dist;
  std::vector<double> logv;
  for (std::size_t i = 0; i < grid.size(); ++i) {
    const double d = domain.distance_to_boundary(grid.coordinate(i));
    const double v = std::abs(s.eigenvectors(static_cast<Eigen::Index>(i), j));
    if (d < fit.window.first || d > fit.window.second || !(v > 0.0)) continue;
    dist.push_back(d);
    logv.push_back(std::log(v));
  }
  fit.points = static_cast<int>(dist.size());
  if (fit.points < 6) {
    throw InsufficientDataError("boundary window holds " + std::to_string(fit.points) +
                                " nodes, need at least 6");
  }

  Eigen::MatrixXd x(fit.points, 3);
  Eigen::VectorXd y(fit.points);
  for (int k = 0; k < fit.points; ++k) {
    x(k, 0) = std::log(dist[static_cast<std::size_t>(k)]);
    x(k, 1) = 1.0;
    x(k, 2) = dist[static_cast<std::size_t>(k)];
    y(k) = logv[static_cast<std::size_t>(k)];
  }
  const Eigen::ColPivHouseholderQR<Eigen::MatrixXd> qr(x);
  if (qr.rank() < 3) throw InsufficientDataError("boundary window distances are degenerate");
  const Eigen::VectorXd beta = qr.solve(y);
  fit.mu_hat = beta(0);
  const int dof = fit.points - 3;
  if (dof > 0) {
    const double sigma2 = (x * beta - y).squaredNorm() / dof;
    const Eigen::MatrixXd cov = (x.transpose() * x).inverse() * sigma2;
    fit.stderr_mu = std::sqrt(std::max(cov(0, 0), 0.0));
  }
  return fit;
}

std::string eigs_csv(const Spectrum& s) {
  std::string out = "index,lambda\n";
  for (Eigen::Index j = 0; j < s.size(); ++j) {
    out += std::to_string(j);
    out += ',';
    out += format_double(s.eigenvalues[j]);
    out += '\n';
  }
  return out;
}

}  // namespace fracspec
