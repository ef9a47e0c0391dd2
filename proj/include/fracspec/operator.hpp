#pragma once

#include <Eigen/Dense>
#include <cstddef>
#include <optional>
#include <string>

#include "fracspec/domain.hpp"
#include "fracspec/grid.hpp"
#include "fracspec/symbol.hpp"

namespace fracspec {

inline constexpr std::size_t kDefaultMatrixCap = 6000;

struct OperatorMeta {
  std::optional<Domain> domain;  // empty for the half-line model
  BoxGrid grid;
  SymbolSpec symbol;
  double zero_mode = 0.0;
  double truncation_length = 0.0;  // half-line model only
};

/// Dense symmetric matrix A_ij = k(x_i - x_j) on the interior nodes.
struct OperatorMatrix {
  Eigen::MatrixXd entries;
  OperatorMeta meta;
  double sym_residual = 0.0;

  Eigen::Index size() const { return entries.rows(); }
};

/// max_{i<j} |A_ij - A_ji|.
double symmetry_residual(const Eigen::MatrixXd& a);

/// Restriction of the periodic box multiplier to the domain's interior nodes.
/// The symbol must be massless.
OperatorMatrix assemble_fractional_matrix(const Domain& domain, const BoxGrid& grid,
                                          const SymbolSpec& symbol,
                                          std::size_t cap = kDefaultMatrixCap);

/// Half-line model ((D^2 + a^2)^{m/2})_D truncated to (0, length) with n interior
/// nodes of spacing length/(n+1), embedded in a box at least 4*length wide.
OperatorMatrix assemble_halfline_model(const SymbolSpec& symbol, double length, int points,
                                       std::size_t cap = kDefaultMatrixCap);

/// Fills A_ij = k(idx_i - idx_j) for an arbitrary grid and symbol.
OperatorMatrix assemble_on_grid(const BoxGrid& grid, const SymbolSpec& symbol,
                                std::size_t cap = kDefaultMatrixCap);

}  // namespace fracspec
