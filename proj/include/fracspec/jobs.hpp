#pragma once

#include <filesystem>

#include "fracspec/config.hpp"

namespace fracspec {

inline constexpr int kExitOk = 0;
inline constexpr int kExitInvariant = 2;
inline constexpr int kExitConfig = 3;

/// Runs one validated job, writing its artifacts and manifest.json into
/// `out`. Returns kExitOk, or kExitInvariant when an asserted invariant fails
/// (the artifacts are still written). Configuration problems throw ConfigError.
int run_job(const JobConfig& cfg, const std::filesystem::path& out);

}  // namespace fracspec
