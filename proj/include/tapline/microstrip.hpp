#pragma once

#include <optional>

namespace tapline {

struct Substrate {
    double eps_r = 1.0;
    double h_m = 0.0;
    double t_m = 0.0;               // metal thickness; 0 = zero-thickness model
    std::optional<double> qu;       // lumped unloaded Q of resonators on this substrate

    void validate() const;

    bool operator==(const Substrate&) const = default;
};

struct LineParams {
    double width_m = 0.0;
    double z0_ohm = 0.0;
    double eps_eff = 1.0;

    bool operator==(const LineParams&) const = default;
};

// Quasi-static microstrip closed form (Hammerstad and Jensen), including their
// finite-thickness width correction when t > 0. Single expression in w/h, so
// it is continuous everywhere.
LineParams analyze_line(double width_m, const Substrate& sub);

// Bisection on log(width) over [h/100, 100 h]; result within 0.01 ohm of target.
double synthesize_width(double z0_target_ohm, const Substrate& sub);

// c / (4 f0 sqrt(eps_eff))
double quarter_wave_length(double f0_hz, double eps_eff);

// Length of a shorted stub that is half-wave resonant at f_zero: c / (2 f sqrt(eps_re)).
double zero_stub_length(double f_zero_hz, double eps_re);

// Inverse of zero_stub_length.
double zero_frequency(double length_m, double eps_re);

}  // namespace tapline
