#include "tapline/microstrip.hpp"

#include "tapline/errors.hpp"
#include "tapline/units.hpp"

#include <cmath>

namespace tapline {

void Substrate::validate() const {
    if (!(eps_r >= 1.0)) throw DomainError("Substrate: eps_r must be >= 1");
    if (!(h_m > 0.0)) throw DomainError("Substrate: h must be > 0");
    if (!(t_m >= 0.0)) throw DomainError("Substrate: t must be >= 0");
    if (qu && !(*qu > 0.0)) throw DomainError("Substrate: Qu must be > 0");
}

namespace {

// Impedance of the air-filled line.
double z_air(double u) {
    const double f = 6.0 + (2.0 * kPi - 6.0) * std::exp(-std::pow(30.666 / u, 0.7528));
    return kFreeSpaceImpedance / (2.0 * kPi) * std::log(f / u + std::sqrt(1.0 + 4.0 / (u * u)));
}

double eps_eff_zero_thickness(double u, double eps_r) {
    const double u4 = u * u * u * u;
    const double a = 1.0 + std::log((u4 + (u / 52.0) * (u / 52.0)) / (u4 + 0.432)) / 49.0 +
                     std::log(1.0 + std::pow(u / 18.1, 3.0)) / 18.7;
    const double b = 0.564 * std::pow((eps_r - 0.9) / (eps_r + 3.0), 0.053);
    return 0.5 * (eps_r + 1.0) + 0.5 * (eps_r - 1.0) * std::pow(1.0 + 10.0 / u, -a * b);
}

}  // namespace

LineParams analyze_line(double width_m, const Substrate& sub) {
    if (!(width_m > 0.0)) throw DomainError("analyze_line: width must be > 0");
    sub.validate();
    const double u = width_m / sub.h_m;

    if (sub.t_m == 0.0) {
        const double ee = eps_eff_zero_thickness(u, sub.eps_r);
        return {width_m, z_air(u) / std::sqrt(ee), ee};
    }

    const double tn = sub.t_m / sub.h_m;
    const double ch = 1.0 / std::tanh(std::sqrt(6.517 * u));
    const double du1 = tn / kPi * std::log(1.0 + 4.0 * std::exp(1.0) / (tn * ch * ch));
    const double dur = 0.5 * (1.0 + 1.0 / std::cosh(std::sqrt(sub.eps_r - 1.0))) * du1;
    const double u1 = u + du1;
    const double ur = u + dur;
    const double ee_r = eps_eff_zero_thickness(ur, sub.eps_r);
    const double ratio = z_air(u1) / z_air(ur);
    return {width_m, z_air(ur) / std::sqrt(ee_r), ee_r * ratio * ratio};
}

double synthesize_width(double z0_target_ohm, const Substrate& sub) {
    sub.validate();
    if (!(z0_target_ohm > 0.0)) throw DomainError("synthesize_width: target must be > 0");
    double lo = std::log(sub.h_m / 100.0);  // narrow: high impedance
    double hi = std::log(sub.h_m * 100.0);
    const double z_narrow = analyze_line(std::exp(lo), sub).z0_ohm;
    const double z_wide = analyze_line(std::exp(hi), sub).z0_ohm;
    if (z0_target_ohm > z_narrow || z0_target_ohm < z_wide) {
        throw SynthesisError("synthesize_width: target impedance outside the [h/100, 100h] width range");
    }
    for (int it = 0; it < 200 && hi - lo > 1e-15; ++it) {
        const double mid = 0.5 * (lo + hi);
        if (analyze_line(std::exp(mid), sub).z0_ohm > z0_target_ohm) {
            lo = mid;
        } else {
            hi = mid;
        }
    }
    return std::exp(0.5 * (lo + hi));
}

double quarter_wave_length(double f0_hz, double eps_eff) {
    if (!(f0_hz > 0.0)) throw DomainError("quarter_wave_length: f0 must be > 0");
    if (!(eps_eff >= 1.0)) throw DomainError("quarter_wave_length: eps_eff must be >= 1");
    return kSpeedOfLight / (4.0 * f0_hz * std::sqrt(eps_eff));
}

double zero_stub_length(double f_zero_hz, double eps_re) {
    if (!(f_zero_hz > 0.0)) throw DomainError("zero_stub_length: frequency must be > 0");
    if (!(eps_re >= 1.0)) throw DomainError("zero_stub_length: eps_re must be >= 1");
    return kSpeedOfLight / (2.0 * f_zero_hz * std::sqrt(eps_re));
}

double zero_frequency(double length_m, double eps_re) {
    if (!(length_m > 0.0)) throw DomainError("zero_frequency: length must be > 0");
    if (!(eps_re >= 1.0)) throw DomainError("zero_frequency: eps_re must be >= 1");
    return kSpeedOfLight / (2.0 * length_m * std::sqrt(eps_re));
}

}  // namespace tapline
