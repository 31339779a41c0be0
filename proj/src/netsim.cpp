#include "tapline/netsim.hpp"

#include "tapline/errors.hpp"
#include "tapline/units.hpp"

#include <algorithm>
#include <cmath>
#include <limits>

namespace tapline {
namespace {

constexpr cplx kJ{0.0, 1.0};

cplx clamp_admittance(cplx y) {
    if (!std::isfinite(y.real()) || !std::isfinite(y.imag())) {
        return {0.0, std::signbit(y.imag()) ? -kAdmittanceClamp : kAdmittanceClamp};
    }
    const double mag = std::abs(y);
    return mag > kAdmittanceClamp ? y * (kAdmittanceClamp / mag) : y;
}

// Purely reactive shunt admittance num/den * j, clamped near den = 0.
cplx reactive_admittance(double num, double den) {
    if (den == 0.0) return {0.0, std::signbit(num) ? -kAdmittanceClamp : kAdmittanceClamp};
    return clamp_admittance({0.0, num / den});
}

Abcd shunt(cplx y) { return {1.0, 0.0, y, 1.0}; }

struct ElementAbcd {
    double f;

    Abcd operator()(const SeriesLine& e) const {
        const double th = electrical_length(f, e.eps_eff, e.length_m);
        const double c = std::cos(th);
        const double s = std::sin(th);
        return {c, kJ * (e.z0_ohm * s), kJ * (s / e.z0_ohm), c};
    }
    Abcd operator()(const ShuntShortStub& e) const {
        if (e.length_m == 0.0) return {};  // absent stub
        const double th = electrical_length(f, e.eps_eff, e.length_m);
        const double c = std::cos(th);
        const double s = std::sin(th);
        // Stub terminated in j X_via: Y = -j (Z0 c - X s) / (Z0 (X c + Z0 s)).
        const double x = 2.0 * kPi * f * e.via_inductance_h;
        return shunt(reactive_admittance(-(e.z0_ohm * c - x * s), e.z0_ohm * (x * c + e.z0_ohm * s)));
    }
    Abcd operator()(const ShuntOpenStub& e) const {
        if (e.length_m == 0.0) return {};
        const double th = electrical_length(f, e.eps_eff, e.length_m);
        return shunt(reactive_admittance(std::sin(th), e.z0_ohm * std::cos(th)));
    }
    Abcd operator()(const IdealInverter& e) const {
        return {0.0, kJ / e.j_siemens, kJ * e.j_siemens, 0.0};
    }
    Abcd operator()(const ShuntAdmittance& e) const { return shunt(clamp_admittance(e.y_siemens)); }
};

void check_element(const TwoPortElement& element) {
    std::visit(
        [](const auto& e) {
            using T = std::decay_t<decltype(e)>;
            if constexpr (std::is_same_v<T, IdealInverter>) {
                if (!(e.j_siemens > 0.0)) throw DomainError("inverter J must be > 0");
            } else if constexpr (std::is_same_v<T, ShuntAdmittance>) {
                if (!std::isfinite(e.y_siemens.real()) || !std::isfinite(e.y_siemens.imag())) {
                    throw DomainError("shunt admittance must be finite");
                }
            } else {
                if (!(e.z0_ohm > 0.0)) throw DomainError("line impedance must be > 0");
                if (!(e.eps_eff >= 1.0)) throw DomainError("line eps_eff must be >= 1");
                if (!(e.length_m >= 0.0)) throw DomainError("line length must be >= 0");
                if constexpr (std::is_same_v<T, ShuntShortStub>) {
                    if (!(e.via_inductance_h >= 0.0)) throw DomainError("via inductance must be >= 0");
                }
            }
        },
        element);
}

template <class PointFn>
void sweep_points(std::size_t n, bool parallel, PointFn&& fn) {
    const auto count = static_cast<long>(n);
    if (parallel) {
#pragma omp parallel for schedule(static)
        for (long i = 0; i < count; ++i) fn(static_cast<std::size_t>(i));
    } else {
        for (long i = 0; i < count; ++i) fn(static_cast<std::size_t>(i));
    }
}

FrequencyResponse cascade_impl(const CircuitNet& net, std::span<const double> grid_hz, double z_ref_ohm,
                               bool parallel) {
    if (net.elements.empty()) throw DomainError("cascade_sweep: empty net");
    if (!(z_ref_ohm > 0.0)) throw DomainError("cascade_sweep: reference impedance must be > 0");
    for (const auto& e : net.elements) check_element(e.element);

    FrequencyResponse resp;
    resp.freq_hz.assign(grid_hz.begin(), grid_hz.end());
    validate_grid(resp.freq_hz);
    resp.resize(grid_hz.size());
    resp.z_ref_ohm = z_ref_ohm;

    sweep_points(grid_hz.size(), parallel, [&](std::size_t i) {
        const SParams s = abcd_to_s(cascade_abcd(net, grid_hz[i]), z_ref_ohm);
        resp.s11[i] = s.s11;
        resp.s21[i] = s.s21;
        resp.s12[i] = s.s12;
        resp.s22[i] = s.s22;
    });
    return resp;
}

FrequencyResponse cm_impl(const CmModel& model, std::span<const double> grid_hz, double z_ref_ohm,
                          bool parallel) {
    model.validate();
    FrequencyResponse resp;
    resp.freq_hz.assign(grid_hz.begin(), grid_hz.end());
    validate_grid(resp.freq_hz);
    resp.resize(grid_hz.size());
    resp.z_ref_ohm = z_ref_ohm;

    const Eigen::Index n = model.m.rows();
    const double r_in = 1.0 / (model.w * model.qe_in);
    const double r_out = 1.0 / (model.w * model.qe_out);
    const double loss = std::isinf(model.qu) ? 0.0 : 1.0 / (model.w * model.qu);
    const double r_cross = std::sqrt(r_in * r_out);
    const Eigen::MatrixXcd base = model.m.cast<cplx>() / model.w;
    std::vector<char> singular(grid_hz.size(), 0);

    sweep_points(grid_hz.size(), parallel, [&](std::size_t i) {
        const double f = grid_hz[i];
        const cplx omega{(f / model.f0_hz - model.f0_hz / f) / model.w, -loss};
        Eigen::MatrixXcd a = base;
        a.diagonal().array() += omega;
        a(0, 0) -= kJ * r_in;
        a(n - 1, n - 1) -= kJ * r_out;

        const Eigen::FullPivLU<Eigen::MatrixXcd> lu(a);
        if (!lu.isInvertible()) {
            const double nan = std::numeric_limits<double>::quiet_NaN();
            resp.s11[i] = resp.s21[i] = resp.s12[i] = resp.s22[i] = cplx{nan, nan};
            singular[i] = 1;
            return;
        }
        const Eigen::VectorXcd x = lu.solve(Eigen::VectorXcd::Unit(n, 0));
        const Eigen::VectorXcd y = lu.solve(Eigen::VectorXcd::Unit(n, n - 1));
        resp.s11[i] = 1.0 + 2.0 * kJ * r_in * x(0);
        resp.s21[i] = -2.0 * kJ * r_cross * x(n - 1);
        resp.s12[i] = -2.0 * kJ * r_cross * y(0);
        resp.s22[i] = 1.0 + 2.0 * kJ * r_out * y(n - 1);
    });
    for (std::size_t i = 0; i < singular.size(); ++i) {
        if (singular[i]) resp.flagged.push_back(i);
    }
    return resp;
}

// dB magnitude interpolated linearly between grid points.
double interp_db(const FrequencyResponse& resp, const std::vector<cplx>& column, double f_hz) {
    const auto& f = resp.freq_hz;
    if (f.empty() || f_hz < f.front() || f_hz > f.back()) throw MetricsError("frequency outside the response grid");
    const auto it = std::lower_bound(f.begin(), f.end(), f_hz);
    const auto hi = static_cast<std::size_t>(it - f.begin());
    if (f[hi] == f_hz) return to_db(column[hi]);
    const std::size_t lo = hi - 1;
    const double t = (f_hz - f[lo]) / (f[hi] - f[lo]);
    return to_db(column[lo]) + t * (to_db(column[hi]) - to_db(column[lo]));
}

}  // namespace

double electrical_length(double f_hz, double eps_eff, double length_m) {
    return 2.0 * kPi * f_hz * std::sqrt(eps_eff) * length_m / kSpeedOfLight;
}

Abcd element_abcd(const TwoPortElement& element, double f_hz) {
    if (!(f_hz > 0.0)) throw DomainError("element_abcd: frequency must be > 0");
    check_element(element);
    return std::visit(ElementAbcd{f_hz}, element);
}

SParams abcd_to_s(const Abcd& m, double z_ref_ohm) {
    const double z = z_ref_ohm;
    const cplx den = m.a + m.b / z + m.c * z + m.d;
    SParams s;
    s.s11 = (m.a + m.b / z - m.c * z - m.d) / den;
    s.s21 = 2.0 / den;
    s.s12 = s.s21;
    s.s22 = (-m.a + m.b / z - m.c * z + m.d) / den;
    return s;
}

Abcd cascade_abcd(const CircuitNet& net, double f_hz) {
    Abcd total;
    const ElementAbcd eval{f_hz};
    for (const auto& e : net.elements) total = total * std::visit(eval, e.element);
    return total;
}

FrequencyResponse cascade_sweep(const CircuitNet& net, std::span<const double> grid_hz, double z_ref_ohm) {
    return cascade_impl(net, grid_hz, z_ref_ohm, true);
}

FrequencyResponse cascade_sweep_serial(const CircuitNet& net, std::span<const double> grid_hz, double z_ref_ohm) {
    return cascade_impl(net, grid_hz, z_ref_ohm, false);
}

void CmModel::validate() const {
    if (m.rows() < 1 || m.rows() != m.cols()) throw DomainError("CmModel: coupling matrix must be square");
    if ((m - m.transpose()).cwiseAbs().maxCoeff() > 0.0) {
        throw DomainError("CmModel: coupling matrix must be symmetric");
    }
    if (!(qe_in > 0.0 && qe_out > 0.0)) throw DomainError("CmModel: external Q must be > 0");
    if (!(w > 0.0)) throw DomainError("CmModel: w must be > 0");
    if (!(f0_hz > 0.0)) throw DomainError("CmModel: f0 must be > 0");
    if (!(qu > 0.0)) throw DomainError("CmModel: Qu must be > 0");
}

FrequencyResponse cm_response(const CmModel& model, std::span<const double> grid_hz, double z_ref_ohm) {
    return cm_impl(model, grid_hz, z_ref_ohm, true);
}

FrequencyResponse cm_response_serial(const CmModel& model, std::span<const double> grid_hz, double z_ref_ohm) {
    return cm_impl(model, grid_hz, z_ref_ohm, false);
}

namespace {

// Vertex (x, y) of the parabola through three samples, x clamped to [x0, x2].
std::pair<double, double> parabola_vertex(double x0, double x1, double x2, double y0, double y1, double y2) {
    const double p = (x1 - x0) * (y1 - y2);
    const double q = (x1 - x2) * (y1 - y0);
    const double den = p - q;
    if (den == 0.0) return {x1, y1};
    const double x = std::clamp(x1 - 0.5 * ((x1 - x0) * p - (x1 - x2) * q) / den, x0, x2);
    const double a = ((y2 - y1) / (x2 - x1) - (y1 - y0) / (x1 - x0)) / (x2 - x0);
    const double b = (y1 - y0) / (x1 - x0) - a * (x1 + x0);
    return {x, y1 + a * (x * x - x1 * x1) + b * (x - x1)};
}

}  // namespace

std::vector<double> find_zeros(const FrequencyResponse& resp, double floor_db) {
    std::vector<double> zeros;
    const auto& f = resp.freq_hz;
    if (f.size() < 3) return zeros;
    std::vector<double> d(f.size());
    for (std::size_t i = 0; i < f.size(); ++i) d[i] = to_db(resp.s21[i]);

    for (std::size_t i = 1; i + 1 < f.size(); ++i) {
        if (!(d[i] < d[i - 1] && d[i] < d[i + 1] && d[i] < floor_db)) continue;
        zeros.push_back(parabola_vertex(f[i - 1], f[i], f[i + 1], d[i - 1], d[i], d[i + 1]).first);
    }
    return zeros;
}

double attenuation_at(const FrequencyResponse& resp, double f_hz) {
    return -interp_db(resp, resp.s21, f_hz);
}

Metrics metrics(const FrequencyResponse& resp, std::pair<double, double> band, std::span<const double> probes_hz) {
    const auto& f = resp.freq_hz;
    const auto [f1, f2] = band;
    if (f.empty() || !(f1 < f2) || f1 < f.front() || f2 > f.back()) {
        throw MetricsError("metrics: band edges outside the response grid");
    }

    Metrics out;
    double peak_db = -std::numeric_limits<double>::infinity();
    double s11_max_db = -std::numeric_limits<double>::infinity();
    std::size_t peak = 0;
    bool any = false;
    for (std::size_t i = 0; i < f.size(); ++i) {
        if (f[i] < f1 || f[i] > f2) continue;
        any = true;
        const double d21 = to_db(resp.s21[i]);
        if (d21 > peak_db) {
            peak_db = d21;
            peak = i;
        }
        s11_max_db = std::max(s11_max_db, to_db(resp.s11[i]));
    }
    if (!any) throw MetricsError("metrics: no grid points inside the band");
    double peak_refined_db = peak_db;
    if (peak > 0 && peak + 1 < f.size()) {
        const double d0 = to_db(resp.s21[peak - 1]), d2 = to_db(resp.s21[peak + 1]);
        if (d0 < peak_db && d2 < peak_db) {
            peak_refined_db = parabola_vertex(f[peak - 1], f[peak], f[peak + 1], d0, peak_db, d2).second;
        }
    }
    out.il_mid_db = -peak_refined_db;
    out.rl_min_passband_db = -s11_max_db;

    const double level = peak_db - 3.0;
    auto edge = [&](int step) {
        auto i = static_cast<long>(peak);
        const auto n = static_cast<long>(f.size());
        while (i + step >= 0 && i + step < n) {
            const auto a = static_cast<std::size_t>(i);
            const auto b = static_cast<std::size_t>(i + step);
            const double da = to_db(resp.s21[a]);
            const double db = to_db(resp.s21[b]);
            if (db < level) return f[a] + (level - da) / (db - da) * (f[b] - f[a]);
            i += step;
        }
        throw MetricsError("metrics: 3-dB edge outside the response grid");
    };
    out.f3db_low_hz = edge(-1);
    out.f3db_high_hz = edge(+1);
    out.f_center_hz = 0.5 * (out.f3db_low_hz + out.f3db_high_hz);
    out.bw3db_fractional = (out.f3db_high_hz - out.f3db_low_hz) / out.f_center_hz;

    for (double p : probes_hz) out.atten.push_back({p, attenuation_at(resp, p)});
    return out;
}

}  // namespace tapline
