#pragma once

#include "tapline/topology.hpp"
#include "tapline/tune.hpp"

#include <json.hpp>

#include <cstddef>
#include <filesystem>
#include <optional>
#include <string>
#include <vector>

namespace tapline {

inline constexpr int kConfigSchema = 1;

struct GridSpec {
    double start_hz = 0.0;
    double stop_hz = 0.0;
    std::size_t points = 0;

    std::vector<double> values() const { return linear_grid(start_hz, stop_hz, points); }
    bool operator==(const GridSpec&) const = default;
};

/// "8GHz:18GHz:1001"; units are mandatory on both ends.
GridSpec parse_grid(const std::string& text);

struct TuneSettings {
    std::vector<AttenTarget> targets;
    int max_iter = 20;
    double hump_weight = 100.0;
    bool operator==(const TuneSettings&) const = default;
};

/// One design document in SI units. Dimensional fields carry unit suffixes
/// at the JSON boundary ("13.2 GHz", "200 um", "50 ohm").
struct DesignConfig {
    LayoutInputs layout;
    std::optional<GridSpec> grid;  // default_grid(f0) when absent
    std::vector<double> probes_hz;
    TuneSettings tune;

    GridSpec resolved_grid() const;
    TuneOptions tune_options() const;
    bool operator==(const DesignConfig&) const = default;
};

/// Throws ConfigError naming the offending field.
DesignConfig parse_config(const nlohmann::json& doc);
DesignConfig parse_config_text(const std::string& text);
/// IoError when unreadable, ConfigError when empty or invalid.
DesignConfig load_config(const std::filesystem::path& path);

/// Canonical document with exact SI values plus a `resolved` section echoing
/// every default. parse_config(to_json(c)) == c.
nlohmann::json to_json(const DesignConfig& config);

}  // namespace tapline
