#pragma once

#include <Eigen/Dense>
#include <vector>

#include "fracspec/grid.hpp"
#include "fracspec/symbol.hpp"

namespace fracspec {

/// Translation-invariant kernel k(z) on the offsets of a periodic box grid.
/// Values are stored in FFT order: offset z maps to index z mod n on each axis.
struct KernelTable {
  int dim = 1;
  int points_per_axis = 0;
  double spacing = 0.0;
  std::vector<double> values;

  double at(int dx, int dy = 0) const;
};

/// Symbol sampled at the box frequencies, FFT order, including the zero mode.
std::vector<double> box_symbol(const BoxGrid& grid, const SymbolSpec& symbol);

/// Inverse DFT of the box symbol. The result is symmetrized so that
/// k(z) = k(-z) holds bit-for-bit.
KernelTable multiplier_kernel(const BoxGrid& grid, const SymbolSpec& symbol);

/// Forward DFT of the kernel table, i.e. sum_z k(z) exp(i xi.z), FFT order.
std::vector<double> kernel_symbol(const KernelTable& kernel);

/// P f(L_box) P u computed by zero extension, a Fourier multiplier on the box
/// and restriction to the interior nodes. Independent of the kernel table.
Eigen::VectorXd apply_box_operator(const BoxGrid& grid, const SymbolSpec& symbol,
                                   const Eigen::VectorXd& u);

}  // namespace fracspec
