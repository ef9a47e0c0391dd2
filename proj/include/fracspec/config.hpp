#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "fracspec/domain.hpp"
#include "fracspec/grid.hpp"
#include "fracspec/io.hpp"
#include "fracspec/model1d.hpp"
#include "fracspec/symbol.hpp"
#include "fracspec/weyl.hpp"

namespace fracspec {

inline constexpr std::string_view kCommands[] = {"assemble", "spectrum", "weyl-fit", "kappa",
                                                 "props",    "billiard", "report"};

struct ModelConfig {
  int d = 2;
  double L_trunc = 40.0;
  int n = 1023;
  std::optional<double> x_max;       // default L_trunc / 4
  std::optional<double> lambda_max;  // default per m
};

struct BilliardConfig {
  int samples = 10000;
  double horizon = 50.0;
  std::vector<double> epsilons{1e-2, 1e-3};
};

/// Fully defaulted, range-checked job description.
struct JobConfig {
  std::string command;
  std::optional<Domain> domain;
  std::vector<double> m_list;  // a single entry unless "m_list" was given
  bool sweep = false;
  GridParams grid{256, 4.0};
  SymbolKind symbol = SymbolKind::discrete;
  ZeroMode zero_mode = ZeroMode::regularized;
  ModelConfig model;
  FitWindow window;
  FitMethod method = FitMethod::riesz;
  BilliardConfig billiard;
  int repeats = 200;
  std::optional<std::uint64_t> seed;
  std::size_t matrix_cap = 6000;
  std::vector<std::string> inputs;

  ModelParams model_params(double m) const;
  Json to_json() const;
};

/// Parses and validates a JSON job description. Unknown keys, out-of-range
/// values and missing required fields throw ConfigError naming the field.
/// weyl-fit defaults to the exact symbol; every other command to discrete.
JobConfig validate_config(std::string_view raw, std::string_view command,
                          std::optional<std::uint64_t> seed_override = std::nullopt);

}  // namespace fracspec
