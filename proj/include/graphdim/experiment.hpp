#pragma once

#include <cstdint>
#include <functional>
#include <string>
#include <vector>

#include <json.hpp>

#include "graphdim/process.hpp"

namespace graphdim {

struct CheckResult {
    std::string name;
    bool asserted = true;
    bool passed = true;
    double wall_seconds = 0.0;  // console diagnostics only, never serialized
    nlohmann::json details;
};

struct ExperimentReport {
    nlohmann::json config_echo;
    std::vector<CheckResult> checks;
    bool all_passed = true;     // over asserted checks
    double wall_seconds = 0.0;

    // Deterministic serialization: byte-identical across reruns of the
    // same config, so timing stays out of the document.
    nlohmann::json to_json() const;
};

// Preset lookup: explicit dir, else $GRAPHDIM_PRESETS, else the build-time
// default location.
std::string default_preset_dir();
std::vector<std::string> preset_names(const std::string& preset_dir = {});
nlohmann::json load_preset(const std::string& name, const std::string& preset_dir = {});

// Applies "dotted.path=value" overrides (values parsed as JSON when
// possible, else kept as strings).
void apply_override(nlohmann::json& config, const std::string& key_value);

ExperimentReport run_config(const nlohmann::json& config);
ExperimentReport run_preset(const std::string& name,
                            const std::vector<std::string>& overrides = {},
                            const std::string& preset_dir = {});

// Writes one `t,x` CSV per ensemble path (17 significant digits) plus a
// manifest listing the seeds. Returns the file names written.
std::vector<std::string> dump_paths(const nlohmann::json& config, const std::string& out_dir);

// Shared helpers for the runner and the CLI.
VarianceConfig variance_config_from_json(const nlohmann::json& j);
SamplePath simulate_path(const VarianceFunction& v, double hurst, const TimeGrid& grid,
                         std::uint64_t root_seed, std::uint64_t stream_index);

// Runs fn(i) for i in [0, count) across hardware threads; results must be
// written into index-addressed slots so assembly order cannot matter.
void parallel_for_index(std::size_t count, const std::function<void(std::size_t)>& fn);

} // namespace graphdim
