#pragma once

#include "tapline/coupling.hpp"
#include "tapline/microstrip.hpp"
#include "tapline/netsim.hpp"
#include "tapline/prototype.hpp"

#include <optional>
#include <utility>

namespace tapline {

using FreqWindow = std::pair<double, double>;  // closed [lo, hi] in Hz

/// Transmission-zero plan for the both-ends-shorted end resonators. l_low and
/// l_high run from the tap to each ground of the end line.
struct ZeroPlan {
    double f_zero_low_hz = 0.0;
    double f_zero_high_hz = 0.0;
    FreqWindow window_low{};
    FreqWindow window_high{};
    double l_low_m = 0.0;
    double l_high_m = 0.0;
    double eps_re = 1.0;

    /// Length bounds [shortest, longest] corresponding to each frequency window.
    std::pair<double, double> length_window_low() const;
    std::pair<double, double> length_window_high() const;

    /// Copy with new stub lengths; the zero frequencies follow.
    ZeroPlan with_lengths(double l_low_m, double l_high_m) const;

    bool operator==(const ZeroPlan&) const = default;
};

/// Throws PlanError when a target is outside its window, a window touches the
/// passband [f1, f2], or the targets are not ordered low < high.
ZeroPlan plan_zeros(FreqWindow window_low, FreqWindow window_high, double target_low_hz, double target_high_hz,
                    double eps_re, FreqWindow passband);

struct ZeroInputs {
    FreqWindow window_low{};
    FreqWindow window_high{};
    double target_low_hz = 0.0;
    double target_high_hz = 0.0;
    double eps_re = 1.0;
    std::optional<double> end_z0_ohm;  // derived from Qe at f0 when absent

    bool operator==(const ZeroInputs&) const = default;
};

/// Everything needed to assemble a layout. Exactly one of resonator_z0_ohm
/// and tap_ratio is set; the other follows from the tap relation.
struct LayoutInputs {
    BandSpec band;
    Substrate substrate;
    std::optional<double> resonator_z0_ohm;
    std::optional<double> tap_ratio;
    std::optional<double> resonator_eps_eff;  // overrides the microstrip model
    std::optional<ZeroInputs> zeros;
    double feed_length_m = 1e-3;
    double via_inductance_h = 0.0;

    bool operator==(const LayoutInputs&) const = default;
};

struct FilterLayout {
    BandSpec band;
    Prototype prototype;
    CouplingSet coupling;
    TapDesign tap;
    std::optional<ZeroPlan> zeros;
    Substrate substrate;
    LineParams resonator;
    LineParams end_resonator;  // equals `resonator` without a zero plan
    LineParams feed;
    double resonator_length_m = 0.0;
    double end_length_m = 0.0;  // l_low + l_high with zeros, else resonator_length_m
    double feed_length_m = 0.0;
    double via_inductance_h = 0.0;
    double end_inverter_j = 0.0;  // J_{1,2} = J_{n-1,n}, fixed at plan time

    double w() const { return band.fractional_bandwidth(); }

    /// Moves both end stubs, keeping the end-line length consistent.
    void set_zero_lengths(double l_low_m, double l_high_m);
};

/// Susceptance slope (S) of a shorted quarter-wave stub seen at its open end.
double quarter_wave_slope(double z0_ohm);

/// Slope at the tap node of a tapped quarter-wave resonator.
double tapped_slope(double z0_ohm, double ratio);

/// Slope at f0 of two shunt shorted stubs joined at one node.
double two_stub_slope(double l_a_m, double l_b_m, double eps_re, double z0_ohm, double f0_hz);

/// External Q the feed currently sees at the first resonator.
double end_external_q(const FilterLayout& layout);

FilterLayout make_layout(const LayoutInputs& inputs);

/// Lowers the layout to an ordered cascade: feed, end resonator at the tap
/// node, inverter, interior shorted quarter-wave stubs joined by inverters,
/// mirrored end resonator, feed.
CircuitNet build_circuit(const FilterLayout& layout);

/// Narrowband coupling-matrix model for the same layout.
CmModel cm_model(const FilterLayout& layout);

}  // namespace tapline
