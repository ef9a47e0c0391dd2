#include "fracspec/inequalities.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <random>
#include <string>

#include "fracspec/error.hpp"
#include "fracspec/operator.hpp"
#include "fracspec/spectrum.hpp"

namespace fracspec {

ScalarFunction ScalarFunction::power(double theta) {
  ScalarFunction f;
  f.kind = Kind::power;
  f.theta = theta;
  return f;
}

ScalarFunction ScalarFunction::affine(double alpha, double beta) {
  ScalarFunction f;
  f.kind = Kind::affine;
  f.alpha = alpha;
  f.beta = beta;
  return f;
}

double ScalarFunction::operator()(double t) const {
  if (kind == Kind::affine) return alpha * t + beta;
  return t > 0.0 ? std::pow(t, theta) : 0.0;
}

bool ScalarFunction::operator_monotone() const {
  return kind == Kind::affine ? alpha >= 0.0 : theta > 0.0 && theta <= 1.0;
}

std::string ScalarFunction::name() const {
  if (kind == Kind::affine) return "affine(" + std::to_string(alpha) + "," + std::to_string(beta) + ")";
  return "power(" + std::to_string(theta) + ")";
}

namespace {

Eigen::MatrixXd symmetrized(const Eigen::MatrixXd& a) { return 0.5 * (a + a.transpose()); }

double spectral_norm_sym(const Eigen::MatrixXd& a) {
  if (a.size() == 0) return 0.0;
  const Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> es(a, Eigen::EigenvaluesOnly);
  return es.eigenvalues().cwiseAbs().maxCoeff();
}

double min_eigenvalue(const Eigen::MatrixXd& a) {
  return eig_symmetric(symmetrized(a), false).eigenvalues[0];
}

Eigen::MatrixXd standard_normal(Eigen::Index rows, Eigen::Index cols, std::mt19937_64& rng) {
  std::normal_distribution<double> normal(0.0, 1.0);
  Eigen::MatrixXd g(rows, cols);
  for (Eigen::Index j = 0; j < cols; ++j) {
    for (Eigen::Index i = 0; i < rows; ++i) g(i, j) = normal(rng);
  }
  return g;
}

std::mt19937_64 make_rng(std::uint64_t seed) {
  std::seed_seq seq{static_cast<std::uint32_t>(seed), static_cast<std::uint32_t>(seed >> 32)};
  return std::mt19937_64(seq);
}

// Full orthonormal basis whose first `rank` columns span the given vectors.
Eigen::MatrixXd orthonormal_completion(const Eigen::MatrixXd& g) {
  const Eigen::HouseholderQR<Eigen::MatrixXd> qr(g);
  return qr.householderQ() * Eigen::MatrixXd::Identity(g.rows(), g.rows());
}

}  // namespace

Eigen::MatrixXd matrix_function(const Eigen::MatrixXd& a, const ScalarFunction& phi) {
  if (a.rows() != a.cols()) throw ConfigError("matrix function needs a square matrix");
  const Spectrum s = eig_symmetric(symmetrized(a), true);
  const double norm = std::max(s.eigenvalues.cwiseAbs().maxCoeff(), 0.0);
  Eigen::VectorXd f(s.size());
  for (Eigen::Index j = 0; j < s.size(); ++j) {
    double t = s.eigenvalues[j];
    if (phi.kind == ScalarFunction::Kind::power && t < 0.0) {
      if (t < -1e-10 * norm) throw ConfigError("power function applied to a matrix with negative spectrum");
      t = 0.0;
    }
    f[j] = phi(t);
  }
  return symmetrized(s.eigenvectors * f.asDiagonal() * s.eigenvectors.transpose());
}

Eigen::MatrixXd projection_range(const Eigen::MatrixXd& p) {
  const Spectrum s = eig_symmetric(symmetrized(p), true);
  std::vector<Eigen::Index> keep;
  for (Eigen::Index j = 0; j < s.size(); ++j) {
    if (s.eigenvalues[j] > 0.5) keep.push_back(j);
  }
  Eigen::MatrixXd q(p.rows(), static_cast<Eigen::Index>(keep.size()));
  for (std::size_t k = 0; k < keep.size(); ++k) {
    q.col(static_cast<Eigen::Index>(k)) = s.eigenvectors.col(keep[k]);
  }
  return q;
}

PsdInstance PsdInstance::random(int size, int rank, const ScalarFunction& phi, std::uint64_t seed) {
  if (size < 1 || rank < 1 || rank > size) throw ConfigError("need 1 <= rank <= size");
  std::mt19937_64 rng = make_rng(seed);
  const Eigen::MatrixXd g = standard_normal(size, size, rng);
  PsdInstance inst;
  inst.B = g * g.transpose();
  inst.B += (1e-8 * inst.B.trace() / size) * Eigen::MatrixXd::Identity(size, size);
  inst.B = symmetrized(inst.B);
  const Eigen::MatrixXd q = orthonormal_completion(standard_normal(size, rank, rng)).leftCols(rank);
  inst.P = symmetrized(q * q.transpose());
  inst.phi = phi;
  return inst;
}

PsdInstance PsdInstance::reducing(int size, int rank, const ScalarFunction& phi, std::uint64_t seed) {
  if (size < 2 || rank < 1 || rank >= size) throw ConfigError("need 1 <= rank < size");
  std::mt19937_64 rng = make_rng(seed);
  const Eigen::MatrixXd basis = orthonormal_completion(standard_normal(size, rank, rng));
  const Eigen::MatrixXd q = basis.leftCols(rank);
  const Eigen::MatrixXd r = basis.rightCols(size - rank);
  const Eigen::MatrixXd ga = standard_normal(rank, rank, rng);
  const Eigen::MatrixXd gc = standard_normal(size - rank, size - rank, rng);
  PsdInstance inst;
  inst.B = q * (ga * ga.transpose()) * q.transpose() + r * (gc * gc.transpose()) * r.transpose();
  inst.B += (1e-8 * inst.B.trace() / size) * Eigen::MatrixXd::Identity(size, size);
  inst.B = symmetrized(inst.B);
  inst.P = symmetrized(q * q.transpose());
  inst.phi = phi;
  return inst;
}

void PsdInstance::validate() const {
  if (B.rows() != B.cols() || P.rows() != P.cols() || B.rows() != P.rows()) {
    throw ConfigError("B and P must be square matrices of the same size");
  }
  if ((P * P - P).cwiseAbs().maxCoeff() > 1e-12 || symmetry_residual(P) > 1e-12) {
    throw ConfigError("P is not an orthogonal projection");
  }
  const double norm = spectral_norm_sym(symmetrized(B));
  if (min_eigenvalue(B) < -1e-10 * norm) throw ConfigError("B is not positive semidefinite");
  if (!phi.operator_monotone()) throw ConfigError("phi is not in the operator monotone range");
}

double projection_inequality_gap(const PsdInstance& inst) {
  inst.validate();
  const Eigen::MatrixXd q = projection_range(inst.P);
  if (q.cols() == 0) throw ConfigError("projection has rank zero");
  const Eigen::Index n = inst.B.rows();
  const double eps = 1e-8 * spectral_norm_sym(inst.B);
  const Eigen::MatrixXd b = inst.B + eps * Eigen::MatrixXd::Identity(n, n);
  const Eigen::MatrixXd pbp = symmetrized(inst.P * b * inst.P);
  const Eigen::MatrixXd diff = matrix_function(pbp, inst.phi) - matrix_function(b, inst.phi);
  return min_eigenvalue(q.transpose() * diff * q);
}

std::uint64_t trial_seed(std::uint64_t base, int trial, int size, int rank, int theta_index) {
  // splitmix64 finalizer over a packed key
  auto mix = [](std::uint64_t z) {
    z += 0x9e3779b97f4a7c15ULL;
    z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ULL;
    z = (z ^ (z >> 27)) * 0x94d049bb133111ebULL;
    return z ^ (z >> 31);
  };
  const std::uint64_t key = (static_cast<std::uint64_t>(trial) << 24) |
                            (static_cast<std::uint64_t>(size) << 12) |
                            (static_cast<std::uint64_t>(rank) << 4) |
                            static_cast<std::uint64_t>(theta_index);
  return mix(mix(base) ^ key);
}

TrialSummary projection_trial_suite(std::uint64_t seed, int repeats) {
  static constexpr int sizes[] = {4, 8, 16};
  static constexpr double thetas[] = {0.25, 0.5, 0.75};
  TrialSummary out;
  out.min_gap = std::numeric_limits<double>::infinity();
  for (int t = 0; t < repeats; ++t) {
    for (int size : sizes) {
      for (int rank = 1; rank < size; ++rank) {
        for (int k = 0; k < 3; ++k) {
          TrialRecord rec;
          rec.seed = trial_seed(seed, t, size, rank, k);
          rec.size = size;
          rec.rank = rank;
          rec.theta = thetas[k];
          const PsdInstance inst =
              PsdInstance::random(size, rank, ScalarFunction::power(rec.theta), rec.seed);
          rec.norm_B = spectral_norm_sym(inst.B);
          rec.gap = projection_inequality_gap(inst);
          out.min_gap = std::min(out.min_gap, rec.gap / rec.norm_B);
          if (rec.gap < -1e-9 * rec.norm_B) ++out.failures;
          out.trials.push_back(rec);
        }
      }
    }
  }
  return out;
}

namespace {

Eigen::MatrixXd plain_operator(const Domain& domain, const BoxGrid& grid, double m, SymbolKind kind) {
  SymbolSpec s;
  s.m = m;
  s.kind = kind;
  s.zero_mode = ZeroMode::plain;
  return assemble_fractional_matrix(domain, grid, s).entries;
}

}  // namespace

PowerGap power_difference_gap(const Domain& domain, const BoxGrid& grid, double m, double n,
                              SymbolKind kind) {
  if (!(m > 0.0) || !(n > 0.0)) throw ConfigError("powers must be positive");
  PowerGap out;
  if (m == n) return out;
  const Eigen::MatrixXd am = plain_operator(domain, grid, m, kind);
  const Eigen::MatrixXd an = plain_operator(domain, grid, n, kind);
  const Eigen::MatrixXd anp = matrix_function(an, ScalarFunction::power(m / n));
  out.scale = std::max(spectral_norm_sym(am), spectral_norm_sym(anp));
  const double sign = m < n ? 1.0 : -1.0;
  out.gap = min_eigenvalue(sign * (anp - am));
  return out;
}

ProductProbe product_difference_probe(const Domain& domain, const BoxGrid& grid, double m1,
                                      double m2, SymbolKind kind) {
  const Eigen::MatrixXd a = plain_operator(domain, grid, m1 + m2, kind);
  const Eigen::MatrixXd a1 = plain_operator(domain, grid, m1, kind);
  const Eigen::MatrixXd a2 = m2 == m1 ? a1 : plain_operator(domain, grid, m2, kind);
  const Eigen::MatrixXd k = a - a1 * a2;
  ProductProbe out;
  const Eigen::MatrixXd sym = symmetrized(k);
  out.asymmetry = (k - k.transpose()).cwiseAbs().maxCoeff();
  out.min_eig_sym = min_eigenvalue(sym);
  out.norm_K = spectral_norm_sym(sym);
  return out;
}

namespace {

SlopeFit fit_slope(const std::vector<double>& r, const std::vector<double>& v) {
  std::vector<double> x, y;
  for (std::size_t i = 0; i < r.size(); ++i) {
    if (v[i] > 0.0 && r[i] > 0.0) {
      x.push_back(std::log(r[i]));
      y.push_back(std::log(v[i]));
    }
  }
  SlopeFit f;
  f.points = static_cast<int>(x.size());
  if (f.points < 4) throw InsufficientDataError("decay fit needs at least 4 non-zero samples");
  const auto lo = std::minmax_element(y.begin(), y.end());
  if (!(*lo.second - *lo.first > 1e-12)) throw InsufficientDataError("decay fit has no dynamic range");
  const auto n = static_cast<double>(x.size());
  double mx = 0.0, my = 0.0;
  for (std::size_t i = 0; i < x.size(); ++i) {
    mx += x[i];
    my += y[i];
  }
  mx /= n;
  my /= n;
  double sxx = 0.0, sxy = 0.0;
  for (std::size_t i = 0; i < x.size(); ++i) {
    sxx += (x[i] - mx) * (x[i] - mx);
    sxy += (x[i] - mx) * (y[i] - my);
  }
  f.slope = sxy / sxx;
  double rss = 0.0;
  for (std::size_t i = 0; i < x.size(); ++i) {
    const double e = y[i] - my - f.slope * (x[i] - mx);
    rss += e * e;
  }
  f.stderr_slope = std::sqrt(rss / (n - 2.0) / sxx);
  return f;
}

}  // namespace

DecayFit kernel_decay_fit(const Eigen::MatrixXd& k, const Domain& rectangle, const BoxGrid& grid) {
  if (rectangle.kind() != DomainKind::rectangle) throw UnsupportedError("decay probe needs a rectangle");
  if (k.rows() != static_cast<Eigen::Index>(grid.size()) || k.cols() != k.rows()) {
    throw ConfigError("kernel matrix does not match the grid");
  }
  if (k.cwiseAbs().maxCoeff() == 0.0) throw InsufficientDataError("kernel has zero dynamic range");
  const double h = grid.spacing;
  const double width = rectangle.param(0);
  const double height = rectangle.param(1);
  auto row_of = [&](int i, int j) -> Eigen::Index {
    const MultiIndex key{i, j};
    const auto it = std::lower_bound(grid.interior.begin(), grid.interior.end(), key);
    if (it == grid.interior.end() || *it != key) return -1;
    return it - grid.interior.begin();
  };
  auto edge_distance = [&](int j) { return grid.node(j) + 0.5 * height; };

  const int c = grid.center;
  const int j_first = grid.interior.front()[1];
  int j0 = j_first;
  for (int j = j_first; edge_distance(j) < 0.5 * height; ++j) {
    if (std::abs(edge_distance(j) - 4.0 * h) < std::abs(edge_distance(j0) - 4.0 * h)) j0 = j;
  }

  DecayFit out;
  std::vector<double> r, v;
  const Eigen::Index base = row_of(c, j0);
  for (int s = 2; s * h <= 0.25 * width; ++s) {
    const Eigen::Index other = row_of(c + s, j0);
    if (base < 0 || other < 0) continue;
    r.push_back(s * h);
    v.push_back(std::abs(k(base, other)));
  }
  out.tangential = fit_slope(r, v);

  r.clear();
  v.clear();
  for (int j = j_first; edge_distance(j) <= 0.25 * height; ++j) {
    const double d = edge_distance(j);
    const Eigen::Index row = row_of(c, j);
    if (d < 2.0 * h || row < 0) continue;
    r.push_back(2.0 * d);
    v.push_back(std::abs(k(row, row)));
  }
  out.normal = fit_slope(r, v);
  return out;
}

DecayFit kernel_decay_probe(const Domain& rectangle, const BoxGrid& grid, double m1, double m2,
                            SymbolKind kind) {
  const Eigen::MatrixXd a = plain_operator(rectangle, grid, m1 + m2, kind);
  const Eigen::MatrixXd a1 = plain_operator(rectangle, grid, m1, kind);
  const Eigen::MatrixXd a2 = m2 == m1 ? a1 : plain_operator(rectangle, grid, m2, kind);
  return kernel_decay_fit(a - a1 * a2, rectangle, grid);
}

}  // namespace fracspec
