#include "fracspec/grid.hpp"

#include <cmath>
#include <numbers>
#include <string>

#include "fracspec/error.hpp"

namespace fracspec {

Point BoxGrid::coordinate(std::size_t i) const {
  const MultiIndex& idx = interior.at(i);
  Point x{node(idx[0]), 0.0};
  if (dim == 2) x[1] = node(idx[1]);
  return x;
}

double BoxGrid::frequency(int k) const { return std::numbers::pi * k / half_width(); }

BoxGrid interior_points(const Domain& domain, double half_width, int points_per_axis) {
  if (points_per_axis < 8) throw ConfigError("grid needs at least 8 points per axis");
  if (!(half_width >= 2.0 * domain.circumradius())) {
    throw ConfigError("box half-width " + std::to_string(half_width) +
                      " is smaller than twice the domain circumradius");
  }
  BoxGrid grid;
  grid.dim = domain.dimension();
  grid.points_per_axis = points_per_axis;
  grid.spacing = 2.0 * half_width / points_per_axis;
  grid.center = points_per_axis / 2;

  const int n = points_per_axis;
  if (grid.dim == 1) {
    for (int i = 0; i < n; ++i) {
      if (domain.contains({grid.node(i), 0.0})) grid.interior.push_back({i, 0});
    }
  } else {
    for (int i = 0; i < n; ++i) {
      const double x = grid.node(i);
      for (int j = 0; j < n; ++j) {
        const double y = grid.node(j);
        if (domain.contains({x, y})) grid.interior.push_back({i, j});
      }
    }
  }
  if (grid.interior.empty()) throw DegenerateGridError("grid has no interior points");
  return grid;
}

BoxGrid interior_points(const Domain& domain, const GridParams& params) {
  if (!(params.box_factor >= 2.0)) throw ConfigError("box_factor must be at least 2");
  return interior_points(domain, params.box_factor * domain.circumradius(), params.points_per_axis);
}

BoxGrid halfline_grid(double length, int points) {
  if (!(length > 0.0)) throw ConfigError("half-line truncation length must be positive");
  if (points < 1) throw ConfigError("half-line model needs at least one point");
  BoxGrid grid;
  grid.dim = 1;
  grid.spacing = length / (points + 1);
  int box = 1;
  while (box < 4 * (points + 1)) box *= 2;
  grid.points_per_axis = box;
  grid.center = 0;
  grid.interior.reserve(static_cast<std::size_t>(points));
  for (int i = 1; i <= points; ++i) grid.interior.push_back({i, 0});
  return grid;
}

}  // namespace fracspec
