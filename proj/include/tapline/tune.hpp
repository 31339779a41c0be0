#pragma once

#include "tapline/coupling.hpp"
#include "tapline/topology.hpp"

#include <optional>
#include <span>
#include <string_view>
#include <vector>

namespace tapline {

/// max(0, (max - min of passband |S21| dB) - ripple_db).
double detect_hump(const FrequencyResponse& resp, FreqWindow band, double ripple_db);

struct AttenTarget {
    double f_hz;
    double atten_db;
    bool operator==(const AttenTarget&) const = default;
};

struct TuneOptions {
    std::vector<AttenTarget> targets;
    int max_iter = 20;
    double hump_weight = 100.0;
    double objective_tol = 1e-6;
    int golden_steps = 40;
    double classify_tol = 0.01;
    std::vector<double> grid_hz;      // empty: default grid around f0
    std::optional<FreqWindow> band;   // hump band; default (f1, f2)
};

enum class TuneTermination { converged, stalled, max_iter };

std::string_view to_string(TuneTermination t);

struct TraceEntry {
    int iteration = 0;         // round number, 0 = initial evaluation
    std::string_view coordinate;  // "initial", "l_low" or "l_high"
    double l_low_m = 0.0;
    double l_high_m = 0.0;
    double objective = 0.0;
    bool accepted = false;
};

struct TuneReport {
    double l_low_m = 0.0;
    double l_high_m = 0.0;
    double f_zero_low_hz = 0.0;
    double f_zero_high_hz = 0.0;
    double hump_db = 0.0;
    double objective = 0.0;
    double qe_end = 0.0;
    double k_end = 0.0;
    double k_critical = 0.0;
    CouplingRegime coupling = CouplingRegime::critical;
    std::vector<ProbeAttenuation> achieved;
    std::vector<TraceEntry> trace;
    int iterations = 0;
    int evaluations = 0;
    TuneTermination termination = TuneTermination::converged;
    bool infeasible = false;
};

/// Deterministic coordinate descent: golden-section on l_low, then l_high,
/// each inside its length window, minimizing
///   sum max(0, target - achieved)^2 + hump_weight * hump^2.
/// A coordinate move is kept only if it lowers the objective.
TuneReport tune_zeros(const FilterLayout& layout, const TuneOptions& options);

/// Layout with the tuned stub lengths applied.
FilterLayout apply_tuning(const FilterLayout& layout, const TuneReport& report);

struct ComparisonRow {
    double f_hz;
    double atten_a_db;
    double atten_b_db;
    double delta_db;  // B - A
};

std::vector<ComparisonRow> compare_designs(const FrequencyResponse& resp_a, const FrequencyResponse& resp_b,
                                           std::span<const double> probes_hz);

}  // namespace tapline
