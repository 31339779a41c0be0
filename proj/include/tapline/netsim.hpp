#pragma once

#include "tapline/response.hpp"

#include <Eigen/Dense>

#include <limits>
#include <span>
#include <string>
#include <utility>
#include <variant>
#include <vector>

namespace tapline {

// Distributed elements carry (Z0, eps_eff, physical length); the electrical
// length at f is theta = 2 pi f sqrt(eps_eff) length / c.
struct SeriesLine {
    double z0_ohm;
    double eps_eff;
    double length_m;
    bool operator==(const SeriesLine&) const = default;
};

// Shunt stub to ground. `via_inductance_h` models a non-ideal via at the short.
struct ShuntShortStub {
    double z0_ohm;
    double eps_eff;
    double length_m;
    double via_inductance_h = 0.0;
    bool operator==(const ShuntShortStub&) const = default;
};

struct ShuntOpenStub {
    double z0_ohm;
    double eps_eff;
    double length_m;
    bool operator==(const ShuntOpenStub&) const = default;
};

// Frequency-independent admittance inverter, J in siemens.
struct IdealInverter {
    double j_siemens;
    bool operator==(const IdealInverter&) const = default;
};

struct ShuntAdmittance {
    cplx y_siemens;
    bool operator==(const ShuntAdmittance&) const = default;
};

using TwoPortElement = std::variant<SeriesLine, ShuntShortStub, ShuntOpenStub, IdealInverter, ShuntAdmittance>;

// Shunt admittances are clamped to this magnitude at stub poles.
inline constexpr double kAdmittanceClamp = 1e15;

struct Abcd {
    cplx a{1.0, 0.0};
    cplx b{0.0, 0.0};
    cplx c{0.0, 0.0};
    cplx d{1.0, 0.0};

    cplx det() const { return a * d - b * c; }
    Abcd operator*(const Abcd& r) const {
        return {a * r.a + b * r.c, a * r.b + b * r.d, c * r.a + d * r.c, c * r.b + d * r.d};
    }
};

struct SParams {
    cplx s11, s21, s12, s22;
};

double electrical_length(double f_hz, double eps_eff, double length_m);

Abcd element_abcd(const TwoPortElement& element, double f_hz);

/// Conversion at a real reference impedance. All supported elements are
/// reciprocal, so s12 is set equal to s21.
SParams abcd_to_s(const Abcd& m, double z_ref_ohm);

struct NetElement {
    std::string label;
    TwoPortElement element;
    bool operator==(const NetElement&) const = default;
};

/// Ordered cascade, port 1 first.
struct CircuitNet {
    std::vector<NetElement> elements;

    template <class T>
    std::size_t count() const {
        std::size_t n = 0;
        for (const auto& e : elements) n += std::holds_alternative<T>(e.element) ? 1 : 0;
        return n;
    }
    bool operator==(const CircuitNet&) const = default;
};

Abcd cascade_abcd(const CircuitNet& net, double f_hz);

/// Grid points are evaluated in parallel (OpenMP) and written back in grid order.
FrequencyResponse cascade_sweep(const CircuitNet& net, std::span<const double> grid_hz, double z_ref_ohm);
/// Serial reference; bitwise identical to cascade_sweep.
FrequencyResponse cascade_sweep_serial(const CircuitNet& net, std::span<const double> grid_hz, double z_ref_ohm);

/// Narrowband coupling-matrix model. `m` holds the bandwidth-scaled couplings k.
struct CmModel {
    Eigen::MatrixXd m;
    double qe_in = 0.0;
    double qe_out = 0.0;
    double w = 0.0;
    double f0_hz = 0.0;
    double qu = std::numeric_limits<double>::infinity();

    void validate() const;
};

/// Lowpass-mapped response: Omega = (f/f0 - f0/f)/w,
/// A = (Omega - j/(w Qu)) I - j R + M/w, R = diag(1/(w Qe_in), 0.., 1/(w Qe_out)).
/// Singular points are recorded in `flagged` with NaN S-parameters.
FrequencyResponse cm_response(const CmModel& model, std::span<const double> grid_hz, double z_ref_ohm = 50.0);
FrequencyResponse cm_response_serial(const CmModel& model, std::span<const double> grid_hz,
                                     double z_ref_ohm = 50.0);

/// Strict local minima of |S21| below floor_db, refined by a parabola through
/// the three dB samples around each minimum.
std::vector<double> find_zeros(const FrequencyResponse& resp, double floor_db);

struct ProbeAttenuation {
    double f_hz;
    double atten_db;
};

struct Metrics {
    double f_center_hz = 0.0;
    double bw3db_fractional = 0.0;
    double il_mid_db = 0.0;
    double rl_min_passband_db = 0.0;
    double f3db_low_hz = 0.0;
    double f3db_high_hz = 0.0;
    std::vector<ProbeAttenuation> atten;
};

/// -dB|S21| linearly interpolated in dB. Throws MetricsError outside the grid.
double attenuation_at(const FrequencyResponse& resp, double f_hz);

/// IL from the passband |S21| peak refined by a parabola through its
/// neighbours, RL from the passband samples; 3-dB edges walk outward from the peak.
Metrics metrics(const FrequencyResponse& resp, std::pair<double, double> band,
                std::span<const double> probes_hz = {});

}  // namespace tapline
