#include <gtest/gtest.h>

#include <cmath>
#include <numbers>

#include "fracspec/error.hpp"
#include "fracspec/grid.hpp"
#include "fracspec/operator.hpp"
#include "fracspec/spectrum.hpp"

using namespace fracspec;

namespace {

// Interval (0, pi) realized as (-pi/2, pi/2) with n = points_per_axis/4 - 1 nodes.
struct IntervalCase {
  Domain dom = Domain::interval(std::numbers::pi);
  BoxGrid grid;
  OperatorMatrix op;
  Spectrum eig;
};

IntervalCase interval_case(int points_per_axis, SymbolSpec s, bool vectors) {
  IntervalCase c;
  c.grid = interior_points(c.dom, GridParams{points_per_axis, 4.0});
  c.op = assemble_fractional_matrix(c.dom, c.grid, s);
  c.eig = eig_symmetric(c.op, vectors);
  return c;
}

Spectrum diagonal_spectrum(std::initializer_list<double> values) {
  Eigen::VectorXd d(static_cast<Eigen::Index>(values.size()));
  Eigen::Index i = 0;
  for (double v : values) d(i++) = v;
  return eig_symmetric(Eigen::MatrixXd(d.asDiagonal()), false);
}

}  // namespace

TEST(Eig, SmallExamples) {
  Eigen::MatrixXd a(2, 2);
  a << 2, 1, 1, 2;
  const Spectrum s = eig_symmetric(a, true);
  EXPECT_NEAR(s.eigenvalues(0), 1.0, 1e-15);
  EXPECT_NEAR(s.eigenvalues(1), 3.0, 1e-15);
  EXPECT_LE(s.residual_bound, kResidualTolerance);
  EXPECT_LE(s.gram_deviation, kResidualTolerance);
  for (Eigen::Index j = 0; j < 2; ++j) {
    Eigen::Index k;
    s.eigenvectors.col(j).cwiseAbs().maxCoeff(&k);
    EXPECT_GT(s.eigenvectors(k, j), 0.0);
  }
  const Spectrum id = eig_symmetric(Eigen::MatrixXd::Identity(17, 17), false);
  EXPECT_LE((id.eigenvalues.array() - 1.0).abs().maxCoeff(), 1e-15);
}

TEST(Eig, RejectsAsymmetricInputWithFingerprint) {
  Eigen::MatrixXd a(2, 2);
  a << 0, 1, 0, 0;
  try {
    eig_symmetric(a, false);
    FAIL() << "expected SolverError";
  } catch (const SolverError& e) {
    EXPECT_NE(std::string(e.what()).find(matrix_fingerprint(a)), std::string::npos);
  }
}

TEST(Eig, DirichletTridiagonalClosedForm) {
  const IntervalCase c = interval_case(2048, SymbolSpec{2.0, 0.0, SymbolKind::discrete}, false);
  ASSERT_EQ(c.eig.size(), 511);
  const double n1 = 512.0;
  for (Eigen::Index j = 1; j <= 511; ++j) {
    const double want = std::pow(n1 / std::numbers::pi, 2) * 2.0 * (1.0 - std::cos(double(j) * std::numbers::pi / n1));
    EXPECT_NEAR(c.eig.eigenvalues(j - 1), want, 1e-10 * want) << j;
  }
}

TEST(Counting, TieRuleAndRange) {
  const Spectrum s = diagonal_spectrum({1.0, 1.0, 2.0});
  EXPECT_EQ(counting_function(s, 0.5), 0);
  EXPECT_EQ(counting_function(s, 1.0), 2);
  EXPECT_EQ(counting_function(s, 2.0), 3);
  EXPECT_EQ(counting_function(s, 99.0), 3);
}

TEST(Counting, IntervalContinuumSquares) {
  const IntervalCase c = interval_case(2048, SymbolSpec{2.0, 0.0, SymbolKind::discrete}, false);
  EXPECT_EQ(counting_function(c.eig, 100.5), 10);
}

TEST(Riesz, Examples) {
  const Spectrum s = diagonal_spectrum({1.0, 3.0});
  EXPECT_DOUBLE_EQ(riesz_mean(s, 0.5), 0.0);
  EXPECT_DOUBLE_EQ(riesz_mean(s, 1.0), 0.0);
  EXPECT_DOUBLE_EQ(riesz_mean(s, 2.0), 1.0);
  EXPECT_DOUBLE_EQ(riesz_mean(s, 4.0), 4.0);
}

TEST(Riesz, RightDerivativeIsCountingFunction) {
  const Spectrum s = diagonal_spectrum({0.3, 1.1, 1.1, 2.7, 5.0});
  const double eps = 1e-7;
  for (double lam : {0.1, 0.5, 1.5, 3.0, 6.0}) {
    const double slope = (riesz_mean(s, lam + eps) - riesz_mean(s, lam)) / eps;
    EXPECT_NEAR(slope, double(counting_function(s, lam)), 1e-6);
  }
}

TEST(Riesz, IntervalTwoTermLaw) {
  const IntervalCase c = interval_case(2048, SymbolSpec{2.0, 0.0, SymbolKind::discrete}, false);
  const Eigen::Index n = c.eig.size();
  for (Eigen::Index j = n / 20; j <= n / 5; j += 7) {
    const double lam = c.eig.eigenvalues(j);
    const double want = 2.0 / 3.0 * std::pow(lam, 1.5) - lam / 2.0;
    EXPECT_NEAR(riesz_mean(c.eig, lam), want, 0.02 * want) << lam;
  }
}

TEST(KernelDiag, ParsevalAndMonotonicity) {
  const Domain dom = Domain::disk(1.0);
  const BoxGrid g = interior_points(dom, GridParams{64, 4.0});
  const Spectrum s = eig_symmetric(assemble_fractional_matrix(dom, g, SymbolSpec{1.0, 0.0, SymbolKind::exact}), true);
  const double cell = g.spacing * g.spacing;
  for (double lam : {s.eigenvalues(0) - 1.0, s.eigenvalues(10), s.eigenvalues(100), 1e9}) {
    const Eigen::VectorXd e = spectral_kernel_diag_all(s, g, lam);
    const double n = double(counting_function(s, lam));
    EXPECT_NEAR(e.sum() * cell, n, 1e-8 * std::max(n, 1.0));
    EXPECT_GE(e.minCoeff(), 0.0);
  }
  EXPECT_EQ(spectral_kernel_diag(s, g, 5, s.eigenvalues(0) - 1e-3), 0.0);
  double prev = 0.0;
  for (Eigen::Index j = 0; j < s.size(); j += 16) {
    const double v = spectral_kernel_diag(s, g, 5, s.eigenvalues(j));
    EXPECT_GE(v, prev);
    prev = v;
  }
  EXPECT_THROW(spectral_kernel_diag(eig_symmetric(Eigen::MatrixXd::Identity(3, 3), false), g, 0, 1.0), Error);
}

TEST(KernelDiag, HalflineSineKernelOracle) {
  // Generalized eigenfunctions sin(sx) give e(x,x,lambda) = (s - sin(2xs)/(2x))/pi, s^2 = lambda - 1.
  const double length = 40.0;
  const int n = 1023;
  const OperatorMatrix a = assemble_halfline_model(SymbolSpec{2.0, 1.0, SymbolKind::exact}, length, n);
  const Spectrum s = eig_symmetric(a, true);
  const BoxGrid g = halfline_grid(length, n);
  const double sv = 2.0;
  for (double x : {1.0, 2.5, 5.0, 8.0}) {
    const int node = int(std::lround(x / g.spacing));
    const double xn = node * g.spacing;
    const double want = (sv - std::sin(2.0 * xn * sv) / (2.0 * xn)) / std::numbers::pi;
    EXPECT_NEAR(spectral_kernel_diag(s, g, std::size_t(node - 1), 5.0), want, 0.03 * want) << x;
  }
}

TEST(KernelDiag, IntervalCentreWeyl) {
  const IntervalCase c = interval_case(2048, SymbolSpec{2.0, 0.0, SymbolKind::discrete}, true);
  const std::size_t mid = c.grid.size() / 2;
  ASSERT_NEAR(c.grid.coordinate(mid)[0], 0.0, 1e-15);
  for (double lam : {400.5, 2500.5, 10000.5}) {
    EXPECT_NEAR(spectral_kernel_diag(c.eig, c.grid, mid, lam), std::sqrt(lam) / std::numbers::pi, 1.0);
  }
}

TEST(BoundaryExponent, IntervalGroundStates) {
  const IntervalCase c2 = interval_case(2048, SymbolSpec{2.0, 0.0, SymbolKind::discrete}, true);
  const BoundaryFit f2 = boundary_exponent(c2.eig, c2.dom, c2.grid, 0);
  EXPECT_NEAR(f2.mu_hat, 1.0, 0.05);
  EXPECT_GE(f2.points, 6);
  EXPECT_LE(f2.window.second, 0.2 * c2.dom.inradius());

  const IntervalCase c1 = interval_case(2048, SymbolSpec{1.0, 0.0, SymbolKind::exact}, true);
  const IntervalCase c1fine = interval_case(4096, SymbolSpec{1.0, 0.0, SymbolKind::exact}, true);
  const double mu = boundary_exponent(c1.eig, c1.dom, c1.grid, 0).mu_hat;
  const double mu_fine = boundary_exponent(c1fine.eig, c1fine.dom, c1fine.grid, 0).mu_hat;
  EXPECT_NEAR(mu, 0.5, 0.07);
  EXPECT_NEAR(mu_fine, 0.5, 0.07);
}

TEST(BoundaryExponent, TooFewNodes) {
  const IntervalCase c = interval_case(64, SymbolSpec{2.0, 0.0, SymbolKind::discrete}, true);
  EXPECT_THROW(boundary_exponent(c.eig, c.dom, c.grid, 0), InsufficientDataError);
}

TEST(Export, EigsCsv) {
  const Spectrum s = diagonal_spectrum({0.1, 2.0});
  EXPECT_EQ(eigs_csv(s), "index,lambda\n0,0.10000000000000001\n1,2\n");
}
