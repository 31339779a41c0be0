#pragma once

#include "tapline/netsim.hpp"
#include "tapline/topology.hpp"
#include "tapline/tune.hpp"

#include <json.hpp>

#include <span>
#include <vector>

namespace tapline {

/// Prototype, couplings, M, Qe, tap and line dimensions of a layout.
nlohmann::json synth_json(const FilterLayout& layout);

nlohmann::json to_json(const Metrics& m);
nlohmann::json to_json(const TuneReport& report);
nlohmann::json to_json(std::span<const ComparisonRow> rows);

}  // namespace tapline
