#pragma once

// Plain-text run configuration: one "key = value" pair per line, '#' starts a
// comment, unknown or repeated keys are errors.

#include "bardina/solver.hpp"

#include <cstdint>
#include <filesystem>
#include <string>
#include <string_view>
#include <vector>

namespace bardina {

struct RunConfig {
    SolverConfig solver;
    std::filesystem::path output_dir = ".";
    /// Snapshot cadence in steps; 0 writes the first and last states only.
    int snapshot_every = 0;
    std::uint64_t seed = 1;
};

/// Every accepted key, in documentation order.
const std::vector<std::string>& config_keys();

/// Relative paths (output.dir, *.path) are resolved against base_dir.
/// Values are checked for syntax only; call validate(config.solver) for ranges.
RunConfig parse_config(std::string_view text, const std::filesystem::path& base_dir = ".",
                       const std::string& origin = "<config>");
RunConfig load_config(const std::filesystem::path& path);

/// Sets one key as if it appeared in a file; same errors as parse_config.
void apply_config_value(RunConfig& config, const std::string& key, std::string_view value,
                        const std::filesystem::path& base_dir = ".");
/// Numeric and boolean keys as doubles (rho may be infinite); ConfigError otherwise.
double config_number(const RunConfig& config, const std::string& key);

/// key = value text that parse_config maps back to the same RunConfig.
std::string to_text(const RunConfig& config);

}  // namespace bardina
