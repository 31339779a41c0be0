#pragma once

#include "tapline/prototype.hpp"
#include "tapline/response.hpp"

#include <Eigen/Dense>

#include <limits>
#include <span>
#include <string_view>
#include <vector>

namespace tapline {

inline constexpr double kUnboundedQ = std::numeric_limits<double>::infinity();

struct CouplingSet {
    std::vector<double> k;  // adjacent couplings k_{j,j+1}, j = 1..n-1
    Eigen::MatrixXd m;      // symmetric tridiagonal, zero diagonal
    double qe_in = 0.0;
    double qe_out = 0.0;
};

/// Tapped-line feed geometry for a quarter-wave resonator. The tap distance is
/// measured from the short-circuited end.
struct TapDesign {
    double z0_feed_ohm = 50.0;
    double z0_resonator_ohm = 50.0;
    double resonator_length_m = 0.0;
    double tap_length_m = 0.0;

    double ratio() const { return tap_length_m / resonator_length_m; }
    /// Same tap expressed from the open end.
    double ratio_from_open() const { return 1.0 - ratio(); }
};

enum class CouplingRegime { under, critical, over };

std::string_view to_string(CouplingRegime regime);

std::vector<double> coupling_coefficients(const Prototype& proto, double w);

Eigen::MatrixXd coupling_matrix(std::span<const double> k);

/// g0 g1 / w. Use (g_n, g_{n+1}) for the output side.
double external_q(double g0, double g1, double w);

CouplingSet make_coupling_set(const Prototype& proto, double w);

/// f0 / (f(+90) - f(-90)) from the S11 phase of a singly loaded resonator,
/// with the phase referenced to its value at f0. Crossings are located by
/// linear interpolation walking outward from f0.
double qe_from_phase(const FrequencyResponse& response, double f0_hz);

/// Tap ratio l/L satisfying Qe (Z0l/Z0) = pi / (4 sin^2(pi l / 2L)).
/// Principal branch; l/L >= 1 is rejected with InfeasibleTapError.
double tap_position(double qe, double z0_ohm, double z0l_ohm);

/// The tap relation solved for the resonator impedance at a given l/L.
double resonator_impedance_for_tap(double qe, double z0_ohm, double ratio);

/// K = 1/Qe + 1/Qu; pass kUnboundedQ for a lossless resonator.
double critical_coupling(double qe, double qu);

CouplingRegime classify_coupling(double k_end, double qe, double qu, double tol = 0.01);

}  // namespace tapline
