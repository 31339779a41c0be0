#include "tapline/coupling.hpp"

#include "tapline/errors.hpp"
#include "tapline/units.hpp"

#include <cmath>
#include <optional>

namespace tapline {

std::string_view to_string(CouplingRegime regime) {
    switch (regime) {
        case CouplingRegime::under: return "under";
        case CouplingRegime::critical: return "critical";
        case CouplingRegime::over: return "over";
    }
    return "?";
}

std::vector<double> coupling_coefficients(const Prototype& proto, double w) {
    if (!(w > 0.0)) throw DomainError("coupling_coefficients: w must be > 0");
    const int n = proto.order();
    if (n < 1) throw DomainError("coupling_coefficients: empty prototype");
    std::vector<double> k;
    k.reserve(static_cast<std::size_t>(n - 1));
    for (int j = 1; j < n; ++j) {
        k.push_back(w / std::sqrt(proto.g[j] * proto.g[j + 1]));
    }
    return k;
}

Eigen::MatrixXd coupling_matrix(std::span<const double> k) {
    if (k.empty()) throw DomainError("coupling_matrix: need at least one coupling");
    const auto n = static_cast<Eigen::Index>(k.size() + 1);
    Eigen::MatrixXd m = Eigen::MatrixXd::Zero(n, n);
    for (Eigen::Index j = 0; j + 1 < n; ++j) {
        if (!std::isfinite(k[static_cast<std::size_t>(j)])) {
            throw DomainError("coupling_matrix: non-finite coupling");
        }
        m(j, j + 1) = k[static_cast<std::size_t>(j)];
        m(j + 1, j) = k[static_cast<std::size_t>(j)];
    }
    return m;
}

double external_q(double g0, double g1, double w) {
    if (!(w > 0.0)) throw DomainError("external_q: w must be > 0");
    if (!(g0 > 0.0 && g1 > 0.0)) throw DomainError("external_q: element values must be > 0");
    return g0 * g1 / w;
}

CouplingSet make_coupling_set(const Prototype& proto, double w) {
    const int n = proto.order();
    if (n < 2) throw DomainError("make_coupling_set: order must be >= 2");
    CouplingSet set;
    set.k = coupling_coefficients(proto, w);
    set.m = coupling_matrix(set.k);
    set.qe_in = external_q(proto.g[0], proto.g[1], w);
    set.qe_out = external_q(proto.g[n], proto.g[n + 1], w);
    return set;
}

namespace {

// Walks from `start` by `step` (+1/-1) until the relative phase magnitude
// reaches 90 degrees; returns the interpolated crossing frequency.
std::optional<double> find_quadrature(const std::vector<double>& f, const std::vector<double>& phase_deg,
                                      std::size_t start, int step) {
    const auto n = static_cast<long>(f.size());
    for (long i = static_cast<long>(start); i + step >= 0 && i + step < n; i += step) {
        const auto a = static_cast<std::size_t>(i);
        const auto b = static_cast<std::size_t>(i + step);
        if (std::abs(phase_deg[b]) >= 90.0) {
            const double target = phase_deg[b] > 0.0 ? 90.0 : -90.0;
            const double t = (target - phase_deg[a]) / (phase_deg[b] - phase_deg[a]);
            return f[a] + t * (f[b] - f[a]);
        }
    }
    return std::nullopt;
}

}  // namespace

double qe_from_phase(const FrequencyResponse& response, double f0_hz) {
    const auto& f = response.freq_hz;
    if (f.size() < 3 || f0_hz <= f.front() || f0_hz >= f.back()) {
        throw ExtractionError("qe_from_phase: f0 not inside the grid");
    }
    std::vector<double> phase(f.size());
    for (std::size_t i = 0; i < f.size(); ++i) phase[i] = std::arg(response.s11[i]);
    for (std::size_t i = 1; i < phase.size(); ++i) {
        while (phase[i] - phase[i - 1] > kPi) phase[i] -= 2.0 * kPi;
        while (phase[i] - phase[i - 1] < -kPi) phase[i] += 2.0 * kPi;
    }

    std::size_t hi = 1;
    while (f[hi] < f0_hz) ++hi;
    const std::size_t lo = hi - 1;
    const double t = (f0_hz - f[lo]) / (f[hi] - f[lo]);
    const double ref = phase[lo] + t * (phase[hi] - phase[lo]);
    for (auto& p : phase) p = (p - ref) * 180.0 / kPi;

    const auto f_lo = find_quadrature(f, phase, hi, -1);
    const auto f_hi = find_quadrature(f, phase, lo, +1);
    if (!f_lo || !f_hi) throw ExtractionError("qe_from_phase: +/-90 degree crossings not bracketed by the grid");
    return f0_hz / (*f_hi - *f_lo);
}

double tap_position(double qe, double z0_ohm, double z0l_ohm) {
    if (!(qe > 0.0 && z0_ohm > 0.0 && z0l_ohm > 0.0)) {
        throw DomainError("tap_position: Qe, Z0 and Z0l must be > 0");
    }
    const double s2 = kPi * z0_ohm / (4.0 * qe * z0l_ohm);
    if (s2 >= 1.0) {
        throw InfeasibleTapError("tap_position: Qe too small for a tap inside the resonator");
    }
    return 2.0 / kPi * std::asin(std::sqrt(s2));
}

double resonator_impedance_for_tap(double qe, double z0_ohm, double ratio) {
    if (!(qe > 0.0 && z0_ohm > 0.0)) throw DomainError("resonator_impedance_for_tap: Qe and Z0 must be > 0");
    if (!(ratio > 0.0 && ratio < 1.0)) throw DomainError("resonator_impedance_for_tap: ratio must lie in (0, 1)");
    const double s = std::sin(0.5 * kPi * ratio);
    return kPi * z0_ohm / (4.0 * qe * s * s);
}

double critical_coupling(double qe, double qu) {
    if (!(qe > 0.0)) throw DomainError("critical_coupling: Qe must be > 0");
    if (!(qu > 0.0)) throw DomainError("critical_coupling: Qu must be > 0");
    return 1.0 / qe + (std::isinf(qu) ? 0.0 : 1.0 / qu);
}

CouplingRegime classify_coupling(double k_end, double qe, double qu, double tol) {
    const double k_crit = critical_coupling(qe, qu);
    const double rel = (k_end - k_crit) / k_crit;
    if (std::abs(rel) <= tol) return CouplingRegime::critical;
    return rel > 0.0 ? CouplingRegime::over : CouplingRegime::under;
}

}  // namespace tapline
