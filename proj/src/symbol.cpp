#include "fracspec/symbol.hpp"

#include <boost/math/special_functions/gamma.hpp>
#include <boost/math/special_functions/zeta.hpp>
#include <cmath>
#include <numbers>
#include <string>

#include "fracspec/error.hpp"

namespace fracspec {

std::string_view to_string(SymbolKind kind) {
  return kind == SymbolKind::exact ? "exact" : "discrete";
}

std::string_view to_string(ZeroMode mode) {
  return mode == ZeroMode::plain ? "plain" : "regularized";
}

SymbolKind symbol_kind_from_string(std::string_view name) {
  if (name == "exact") return SymbolKind::exact;
  if (name == "discrete") return SymbolKind::discrete;
  throw ConfigError("unknown symbol kind '" + std::string(name) + "'");
}

ZeroMode zero_mode_from_string(std::string_view name) {
  if (name == "plain") return ZeroMode::plain;
  if (name == "regularized") return ZeroMode::regularized;
  throw ConfigError("unknown zero mode '" + std::string(name) + "'");
}

void validate(const SymbolSpec& symbol) {
  if (!(symbol.m >= 0.0) || symbol.m > kMaxOrder) {
    throw ConfigError("operator order m=" + std::to_string(symbol.m) + " outside [0, 8]");
  }
  if (!(symbol.mass >= 0.0)) throw ConfigError("mass parameter must be non-negative");
}

double symbol_value(const SymbolSpec& symbol, std::span<const double> xi, double spacing) {
  double t = symbol.mass * symbol.mass;
  if (symbol.kind == SymbolKind::exact) {
    for (double x : xi) t += x * x;
  } else {
    const double scale = 2.0 / spacing;
    for (double x : xi) {
      const double s = scale * std::sin(0.5 * x * spacing);
      t += s * s;
    }
  }
  return std::pow(t, 0.5 * symbol.m);
}

namespace {

// Cohen, Rodriguez Villegas and Zagier acceleration for sum_k (-1)^k (2k+1)^{-s}.
double beta_alternating_series(double s) {
  constexpr int terms = 48;
  double d = std::pow(3.0 + std::sqrt(8.0), terms);
  d = 0.5 * (d + 1.0 / d);
  double b = -1.0;
  double c = -d;
  double sum = 0.0;
  for (int k = 0; k < terms; ++k) {
    c = b - c;
    sum += c * std::pow(2.0 * k + 1.0, -s);
    b *= static_cast<double>(k + terms) * static_cast<double>(k - terms) /
         ((k + 0.5) * (k + 1.0));
  }
  return sum / d;
}

}  // namespace

double dirichlet_beta(double s) {
  if (s >= 0.5) return beta_alternating_series(s);
  // beta(1 - t) = (2/pi)^t sin(pi t / 2) Gamma(t) beta(t) with t = 1 - s > 1/2.
  const double t = 1.0 - s;
  return std::pow(2.0 / std::numbers::pi, t) * std::sin(0.5 * std::numbers::pi * t) *
         boost::math::tgamma(t) * beta_alternating_series(t);
}

double lattice_zeta(int dim, double s) {
  if (dim == 1) return 2.0 * boost::math::zeta(s);
  if (dim == 2) return 4.0 * boost::math::zeta(0.5 * s) * dirichlet_beta(0.5 * s);
  throw UnsupportedError("lattice_zeta is implemented for d = 1, 2 only");
}

double zero_mode_value(const SymbolSpec& symbol, int dim, double box_width) {
  if (symbol.mass > 0.0 || symbol.zero_mode == ZeroMode::plain) {
    const double zero[2] = {0.0, 0.0};
    return symbol_value(symbol, std::span<const double>(zero, static_cast<std::size_t>(dim)), 1.0);
  }
  if (symbol.m == 0.0) return 1.0;
  if (std::fmod(symbol.m, 2.0) == 0.0) return 0.0;  // polynomial symbol, nothing to cancel
  // Lattice sums of |k|^m differ from the integral by Z_d(-m) Delta^{d+m} at the
  // singular point; this value cancels that term.
  const double delta = 2.0 * std::numbers::pi / box_width;
  const double z = lattice_zeta(dim, -symbol.m);
  return -z * std::pow(delta, symbol.m);
}

}  // namespace fracspec
