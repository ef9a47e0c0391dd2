#pragma once

#include <Eigen/Dense>
#include <cstdint>
#include <string>
#include <vector>

#include "fracspec/domain.hpp"
#include "fracspec/grid.hpp"
#include "fracspec/symbol.hpp"

namespace fracspec {

/// Power t^theta or affine alpha t + beta.
struct ScalarFunction {
  enum class Kind { power, affine };
  Kind kind = Kind::power;
  double theta = 1.0;
  double alpha = 1.0;
  double beta = 0.0;

  static ScalarFunction power(double theta);
  static ScalarFunction affine(double alpha, double beta);
  double operator()(double t) const;
  /// Operator monotone on [0, inf): powers with theta in (0, 1], affine with alpha >= 0.
  bool operator_monotone() const;
  std::string name() const;
};

/// V phi(D) V^T. Eigenvalues in [-1e-10 |A|, 0) are treated as zero for
/// power functions; anything more negative throws ConfigError.
Eigen::MatrixXd matrix_function(const Eigen::MatrixXd& a, const ScalarFunction& phi);

/// Orthonormal basis (columns) of the range of an orthogonal projection.
Eigen::MatrixXd projection_range(const Eigen::MatrixXd& p);

struct PsdInstance {
  Eigen::MatrixXd B;
  Eigen::MatrixXd P;
  ScalarFunction phi;

  /// B = G G^T + 1e-8 tr(G G^T)/size I with G standard normal, P the
  /// projection onto the span of `rank` standard normal vectors.
  static PsdInstance random(int size, int rank, const ScalarFunction& phi, std::uint64_t seed);
  /// As random(), but B = Q A Q^T + R C R^T with Q spanning Ran P and R its
  /// complement, so that Ran P reduces B.
  static PsdInstance reducing(int size, int rank, const ScalarFunction& phi, std::uint64_t seed);
  void validate() const;
};

/// Smallest eigenvalue of Q^T (phi(P B' P) - phi(B')) Q with Q a basis of Ran P
/// and B' = B + 1e-8 |B| I.
double projection_inequality_gap(const PsdInstance& inst);

struct TrialRecord {
  std::uint64_t seed = 0;
  int size = 0;
  int rank = 0;
  double theta = 0.0;
  double gap = 0.0;
  double norm_B = 0.0;
};

struct TrialSummary {
  std::vector<TrialRecord> trials;
  double min_gap = 0.0;  // smallest gap / |B|
  int failures = 0;      // gap < -1e-9 |B|
};

/// Per-trial seed derived from the suite seed and the trial coordinates.
std::uint64_t trial_seed(std::uint64_t base, int trial, int size, int rank, int theta_index);

/// repeats x sizes {4, 8, 16} x ranks 1..size-1 x theta {1/4, 1/2, 3/4}.
TrialSummary projection_trial_suite(std::uint64_t seed, int repeats = 200);

struct PowerGap {
  double gap = 0.0;
  double scale = 0.0;  // max(|A_m|, |A_n|^{m/n})
};

/// Smallest eigenvalue of s (A_n^{m/n} - A_m) with s = +1 for m < n and -1 for
/// m > n, both matrices restricted from the same box with the plain zero mode.
PowerGap power_difference_gap(const Domain& domain, const BoxGrid& grid, double m, double n,
                              SymbolKind kind = SymbolKind::exact);

struct ProductProbe {
  double min_eig_sym = 0.0;  // of (K + K^T)/2
  double asymmetry = 0.0;    // max |K - K^T|
  double norm_K = 0.0;       // spectral norm of (K + K^T)/2
};

/// K = A_{m1+m2} - A_{m1} A_{m2} on a common grid (plain zero mode).
ProductProbe product_difference_probe(const Domain& domain, const BoxGrid& grid, double m1,
                                      double m2, SymbolKind kind = SymbolKind::exact);

struct SlopeFit {
  double slope = 0.0;
  double stderr_slope = 0.0;
  int points = 0;
};

struct DecayFit {
  SlopeFit tangential;  // |K(x,y)| against |x' - y'| at fixed x1 = y1
  SlopeFit normal;      // |K(x,x)| against 2 x1
};

/// Decay of a kernel matrix near the lower edge of a rectangle. Distances to
/// the edge are x1, y1; the tangential fit uses x1 = y1 = 4h and separations
/// in [2h, width/4], the normal fit uses x1 in [2h, height/4] on the centre column.
DecayFit kernel_decay_fit(const Eigen::MatrixXd& k, const Domain& rectangle, const BoxGrid& grid);

/// kernel_decay_fit applied to K = A_{m1+m2} - A_{m1} A_{m2}.
DecayFit kernel_decay_probe(const Domain& rectangle, const BoxGrid& grid, double m1, double m2,
                            SymbolKind kind = SymbolKind::exact);

}  // namespace fracspec
