#pragma once

#include <array>
#include <cstddef>
#include <vector>

#include "fracspec/domain.hpp"

namespace fracspec {

using MultiIndex = std::array<int, 2>;

/// Uniform periodic grid of n points per axis with spacing h.
///
/// Node k sits at (k - center)*h, so domain grids put node n/2 at the origin.
/// The interior list holds the multi-indices of the nodes strictly inside the
/// domain, sorted lexicographically.
struct BoxGrid {
  int dim = 1;
  int points_per_axis = 0;
  double spacing = 0.0;
  int center = 0;
  std::vector<MultiIndex> interior;

  double half_width() const { return 0.5 * spacing * points_per_axis; }
  double node(int k) const { return (k - center) * spacing; }
  double box_width() const { return spacing * points_per_axis; }
  std::size_t size() const { return interior.size(); }
  Point coordinate(std::size_t i) const;
  /// Frequency of Fourier mode k in {-n/2, ..., n/2 - 1}: pi k / B.
  double frequency(int k) const;
};

struct GridParams {
  int points_per_axis = 0;
  double box_factor = 4.0;
};

/// Grid on the centred box of half-width B with n points per axis.
BoxGrid interior_points(const Domain& domain, double half_width, int points_per_axis);

/// Same, with B = box_factor * circumradius.
BoxGrid interior_points(const Domain& domain, const GridParams& params);

/// One-dimensional grid for the half-line model: nodes at i*spacing, the
/// interior nodes i = 1..points cover (0, length) with spacing length/(points+1),
/// and the periodic box is at least four times the truncation length.
BoxGrid halfline_grid(double length, int points);

}  // namespace fracspec
