#include "fracspec/operator.hpp"

#include <algorithm>
#include <cmath>

#include "fracspec/error.hpp"
#include "fracspec/kernel.hpp"

namespace fracspec {

double symmetry_residual(const Eigen::MatrixXd& a) {
  if (a.rows() != a.cols()) throw ConfigError("symmetry residual needs a square matrix");
  double r = 0.0;
  for (Eigen::Index j = 0; j < a.cols(); ++j) {
    for (Eigen::Index i = 0; i < j; ++i) r = std::max(r, std::abs(a(i, j) - a(j, i)));
  }
  return r;
}

OperatorMatrix assemble_on_grid(const BoxGrid& grid, const SymbolSpec& symbol, std::size_t cap) {
  const std::size_t count = grid.size();
  if (count == 0) throw DegenerateGridError("grid has no interior points");
  if (count > cap) {
    throw ConfigError("interior point count " + std::to_string(count) + " exceeds the cap " +
                      std::to_string(cap));
  }
  const KernelTable kernel = multiplier_kernel(grid, symbol);

  OperatorMatrix op;
  const auto n = static_cast<Eigen::Index>(count);
  op.entries.resize(n, n);
  for (Eigen::Index c = 0; c < n; ++c) {
    const MultiIndex& q = grid.interior[static_cast<std::size_t>(c)];
    for (Eigen::Index r = 0; r < n; ++r) {
      const MultiIndex& p = grid.interior[static_cast<std::size_t>(r)];
      op.entries(r, c) = kernel.at(p[0] - q[0], p[1] - q[1]);
    }
  }
  op.meta.grid = grid;
  op.meta.symbol = symbol;
  op.meta.zero_mode = zero_mode_value(symbol, grid.dim, grid.box_width());
  op.sym_residual = symmetry_residual(op.entries);
  return op;
}

OperatorMatrix assemble_fractional_matrix(const Domain& domain, const BoxGrid& grid,
                                          const SymbolSpec& symbol, std::size_t cap) {
  if (symbol.mass != 0.0) throw ConfigError("domain operators take a massless symbol");
  if (grid.dim != domain.dimension()) throw ConfigError("grid and domain dimensions differ");
  OperatorMatrix op = assemble_on_grid(grid, symbol, cap);
  op.meta.domain = domain;
  return op;
}

OperatorMatrix assemble_halfline_model(const SymbolSpec& symbol, double length, int points,
                                       std::size_t cap) {
  if (points < 64) throw ConfigError("half-line model needs at least 64 points");
  OperatorMatrix op = assemble_on_grid(halfline_grid(length, points), symbol, cap);
  op.meta.truncation_length = length;
  return op;
}

}  // namespace fracspec
