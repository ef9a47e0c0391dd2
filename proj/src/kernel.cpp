#include "fracspec/kernel.hpp"

#include <fftw3.h>

#include <memory>

#include "fracspec/error.hpp"

namespace fracspec {

namespace {

struct FftwFree {
  void operator()(fftw_complex* p) const { fftw_free(p); }
};

using ComplexBuffer = std::unique_ptr<fftw_complex[], FftwFree>;

ComplexBuffer allocate(std::size_t count) {
  auto* p = static_cast<fftw_complex*>(fftw_malloc(sizeof(fftw_complex) * count));
  if (p == nullptr) throw Error("fftw_malloc failed");
  return ComplexBuffer(p);
}

// In-place transform; FFTW_ESTIMATE keeps the plan, and therefore the bits,
// independent of timing measurements.
void transform(fftw_complex* data, int dim, int n, int sign) {
  fftw_plan plan = dim == 1 ? fftw_plan_dft_1d(n, data, data, sign, FFTW_ESTIMATE)
                            : fftw_plan_dft_2d(n, n, data, data, sign, FFTW_ESTIMATE);
  if (plan == nullptr) throw Error("fftw plan creation failed");
  fftw_execute(plan);
  fftw_destroy_plan(plan);
}

std::size_t total_size(int dim, int n) {
  const auto m = static_cast<std::size_t>(n);
  return dim == 1 ? m : m * m;
}

int signed_mode(int k, int n) { return k < n / 2 ? k : k - n; }

int wrap(int z, int n) {
  const int r = z % n;
  return r < 0 ? r + n : r;
}

}  // namespace

double KernelTable::at(int dx, int dy) const {
  const int n = points_per_axis;
  if (dim == 1) return values[static_cast<std::size_t>(wrap(dx, n))];
  return values[static_cast<std::size_t>(wrap(dx, n)) * static_cast<std::size_t>(n) +
                static_cast<std::size_t>(wrap(dy, n))];
}

std::vector<double> box_symbol(const BoxGrid& grid, const SymbolSpec& symbol) {
  validate(symbol);
  const int n = grid.points_per_axis;
  const double h = grid.spacing;
  std::vector<double> sigma(total_size(grid.dim, n));
  if (grid.dim == 1) {
    for (int k = 0; k < n; ++k) {
      const double xi[1] = {grid.frequency(signed_mode(k, n))};
      sigma[static_cast<std::size_t>(k)] = symbol_value(symbol, xi, h);
    }
  } else {
    for (int k = 0; k < n; ++k) {
      for (int l = 0; l < n; ++l) {
        const double xi[2] = {grid.frequency(signed_mode(k, n)), grid.frequency(signed_mode(l, n))};
        sigma[static_cast<std::size_t>(k) * static_cast<std::size_t>(n) + static_cast<std::size_t>(l)] =
            symbol_value(symbol, xi, h);
      }
    }
  }
  sigma[0] = zero_mode_value(symbol, grid.dim, grid.box_width());
  return sigma;
}

KernelTable multiplier_kernel(const BoxGrid& grid, const SymbolSpec& symbol) {
  const int n = grid.points_per_axis;
  const std::vector<double> sigma = box_symbol(grid, symbol);
  const std::size_t size = sigma.size();
  ComplexBuffer buf = allocate(size);
  for (std::size_t i = 0; i < size; ++i) {
    buf[i][0] = sigma[i];
    buf[i][1] = 0.0;
  }
  transform(buf.get(), grid.dim, n, FFTW_BACKWARD);

  KernelTable table;
  table.dim = grid.dim;
  table.points_per_axis = n;
  table.spacing = grid.spacing;
  table.values.resize(size);
  const double scale = 1.0 / static_cast<double>(size);
  const auto un = static_cast<std::size_t>(n);
  if (grid.dim == 1) {
    for (std::size_t i = 0; i < un; ++i) {
      const std::size_t j = (un - i) % un;
      table.values[i] = 0.5 * (buf[i][0] + buf[j][0]) * scale;
    }
  } else {
    for (std::size_t i = 0; i < un; ++i) {
      for (std::size_t k = 0; k < un; ++k) {
        const std::size_t a = i * un + k;
        const std::size_t b = ((un - i) % un) * un + (un - k) % un;
        table.values[a] = 0.5 * (buf[a][0] + buf[b][0]) * scale;
      }
    }
  }
  return table;
}

std::vector<double> kernel_symbol(const KernelTable& kernel) {
  const std::size_t size = kernel.values.size();
  ComplexBuffer buf = allocate(size);
  for (std::size_t i = 0; i < size; ++i) {
    buf[i][0] = kernel.values[i];
    buf[i][1] = 0.0;
  }
  transform(buf.get(), kernel.dim, kernel.points_per_axis, FFTW_FORWARD);
  std::vector<double> out(size);
  for (std::size_t i = 0; i < size; ++i) out[i] = buf[i][0];
  return out;
}

Eigen::VectorXd apply_box_operator(const BoxGrid& grid, const SymbolSpec& symbol,
                                   const Eigen::VectorXd& u) {
  if (static_cast<std::size_t>(u.size()) != grid.size()) {
    throw ConfigError("vector length does not match the interior point count");
  }
  const int n = grid.points_per_axis;
  const auto un = static_cast<std::size_t>(n);
  const std::vector<double> sigma = box_symbol(grid, symbol);
  const std::size_t size = sigma.size();
  auto flat = [&](const MultiIndex& idx) {
    return grid.dim == 1 ? static_cast<std::size_t>(idx[0])
                         : static_cast<std::size_t>(idx[0]) * un + static_cast<std::size_t>(idx[1]);
  };

  ComplexBuffer buf = allocate(size);
  for (std::size_t i = 0; i < size; ++i) buf[i][0] = buf[i][1] = 0.0;
  for (std::size_t i = 0; i < grid.size(); ++i) buf[flat(grid.interior[i])][0] = u[static_cast<Eigen::Index>(i)];
  transform(buf.get(), grid.dim, n, FFTW_FORWARD);
  for (std::size_t i = 0; i < size; ++i) {
    buf[i][0] *= sigma[i];
    buf[i][1] *= sigma[i];
  }
  transform(buf.get(), grid.dim, n, FFTW_BACKWARD);

  Eigen::VectorXd out(u.size());
  const double scale = 1.0 / static_cast<double>(size);
  for (std::size_t i = 0; i < grid.size(); ++i) {
    out[static_cast<Eigen::Index>(i)] = buf[flat(grid.interior[i])][0] * scale;
  }
  return out;
}

}  // namespace fracspec
