#pragma once

#include <cstdint>
#include <vector>

#include "fracspec/domain.hpp"

namespace fracspec {

struct BilliardReport {
  int samples = 0;
  double horizon = 0.0;
  double epsilon = 0.0;
  double near_periodic_fraction = 0.0;
  /// Smallest angle between a ray and the boundary tangent at any reflection.
  double min_transversality = 0.0;
  long reflections = 0;
};

/// Closest joint return of each sampled trajectory to its starting phase point,
/// over times in (first reflection, T]. The distance is the product metric
/// sqrt(|x - x0|^2 + |w - w0|^2) on positions and unit directions.
/// Sample i uses its own generator seeded from (seed, i).
struct ReturnDistances {
  std::vector<double> min_distance;  // +inf if no reflection happened before T
  double min_transversality = 0.0;
  long reflections = 0;
};

ReturnDistances billiard_return_distances(const Domain& domain, int samples, double horizon,
                                          std::uint64_t seed);

/// Fraction of samples with a return closer than epsilon. Requires samples >= 1000;
/// slit squares are rejected.
BilliardReport periodic_orbit_fraction(const Domain& domain, int samples, double horizon,
                                       double epsilon, std::uint64_t seed);

/// Same trajectories evaluated at several epsilons.
std::vector<BilliardReport> periodic_orbit_fractions(const Domain& domain, int samples,
                                                     double horizon,
                                                     const std::vector<double>& epsilons,
                                                     std::uint64_t seed);

}  // namespace fracspec
