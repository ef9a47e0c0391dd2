#pragma once

#include <span>
#include <string_view>

namespace fracspec {

enum class SymbolKind { exact, discrete };

/// How the periodic box treats the zero-frequency mode of a massless symbol.
///
/// plain        uses the symbol value 0, i.e. the literal periodic operator.
/// regularized  uses the lattice-zeta value -Z_d(-m) (2 pi / W)^m, which removes
///              the leading periodization error of the singular symbol |xi|^m.
enum class ZeroMode { plain, regularized };

std::string_view to_string(SymbolKind kind);
std::string_view to_string(ZeroMode mode);
SymbolKind symbol_kind_from_string(std::string_view name);
ZeroMode zero_mode_from_string(std::string_view name);

/// Multiplier (|xi|^2 + a^2)^{m/2}, or its lattice analogue with |xi|^2
/// replaced by sum_j (2/h)^2 sin^2(xi_j h / 2).
struct SymbolSpec {
  double m = 2.0;
  double mass = 0.0;
  SymbolKind kind = SymbolKind::discrete;
  ZeroMode zero_mode = ZeroMode::regularized;
};

/// Largest operator order accepted by the kernel builder.
inline constexpr double kMaxOrder = 8.0;

/// Throws ConfigError unless 0 <= m <= kMaxOrder and mass >= 0.
void validate(const SymbolSpec& symbol);

/// Symbol at frequency xi (one entry per axis) on a grid of spacing h.
double symbol_value(const SymbolSpec& symbol, std::span<const double> xi, double spacing);

/// Analytic continuation of the lattice sum sum_{k in Z^d, k != 0} |k|^{-s}
/// for d in {1, 2}: 2 zeta(s) and 4 zeta(s/2) beta(s/2) respectively.
double lattice_zeta(int dim, double s);

/// Dirichlet beta function for real argument.
double dirichlet_beta(double s);

/// Value assigned to the xi = 0 mode of a periodic box of full width W.
double zero_mode_value(const SymbolSpec& symbol, int dim, double box_width);

}  // namespace fracspec
