#include "tapline/topology.hpp"

#include "tapline/errors.hpp"
#include "tapline/units.hpp"

#include <cmath>
#include <string>

namespace tapline {

std::pair<double, double> ZeroPlan::length_window_low() const {
    return {zero_stub_length(window_low.second, eps_re), zero_stub_length(window_low.first, eps_re)};
}

std::pair<double, double> ZeroPlan::length_window_high() const {
    return {zero_stub_length(window_high.second, eps_re), zero_stub_length(window_high.first, eps_re)};
}

ZeroPlan ZeroPlan::with_lengths(double l_low, double l_high) const {
    ZeroPlan p = *this;
    p.l_low_m = l_low;
    p.l_high_m = l_high;
    p.f_zero_low_hz = zero_frequency(l_low, eps_re);
    p.f_zero_high_hz = zero_frequency(l_high, eps_re);
    return p;
}

ZeroPlan plan_zeros(FreqWindow window_low, FreqWindow window_high, double target_low_hz, double target_high_hz,
                    double eps_re, FreqWindow passband) {
    auto inside = [](double f, FreqWindow w) { return f >= w.first && f <= w.second; };
    if (!(window_low.first > 0.0 && window_low.first <= window_low.second) ||
        !(window_high.first > 0.0 && window_high.first <= window_high.second)) {
        throw PlanError("plan_zeros: windows must be positive, closed intervals");
    }
    if (!(target_low_hz < target_high_hz)) throw PlanError("plan_zeros: low zero must lie below the high zero");
    if (!inside(target_low_hz, window_low)) throw PlanError("plan_zeros: low target outside its window");
    if (!inside(target_high_hz, window_high)) throw PlanError("plan_zeros: high target outside its window");
    if (!(window_low.second < passband.first)) throw PlanError("plan_zeros: low window overlaps the passband");
    if (!(window_high.first > passband.second)) throw PlanError("plan_zeros: high window overlaps the passband");

    ZeroPlan plan;
    plan.f_zero_low_hz = target_low_hz;
    plan.f_zero_high_hz = target_high_hz;
    plan.window_low = window_low;
    plan.window_high = window_high;
    plan.eps_re = eps_re;
    plan.l_low_m = zero_stub_length(target_low_hz, eps_re);
    plan.l_high_m = zero_stub_length(target_high_hz, eps_re);
    return plan;
}

void FilterLayout::set_zero_lengths(double l_low_m, double l_high_m) {
    if (!zeros) throw BuildError("set_zero_lengths: layout has no zero plan");
    zeros = zeros->with_lengths(l_low_m, l_high_m);
    end_length_m = l_low_m + l_high_m;
}

double quarter_wave_slope(double z0_ohm) {
    return kPi / (4.0 * z0_ohm);
}

double tapped_slope(double z0_ohm, double ratio) {
    const double s = std::sin(0.5 * kPi * ratio);
    return quarter_wave_slope(z0_ohm) / (s * s);
}

double two_stub_slope(double l_a_m, double l_b_m, double eps_re, double z0_ohm, double f0_hz) {
    // B = -Y0 (cot ta + cot tb);  b = (w0/2) dB/dw = (Y0/2) (ta csc^2 ta + tb csc^2 tb)
    const double ta = electrical_length(f0_hz, eps_re, l_a_m);
    const double tb = electrical_length(f0_hz, eps_re, l_b_m);
    const double sa = std::sin(ta);
    const double sb = std::sin(tb);
    return 0.5 / z0_ohm * (ta / (sa * sa) + tb / (sb * sb));
}

double end_external_q(const FilterLayout& layout) {
    const double z_feed = layout.tap.z0_feed_ohm;
    if (layout.zeros) {
        return z_feed * two_stub_slope(layout.zeros->l_low_m, layout.zeros->l_high_m, layout.zeros->eps_re,
                                       layout.end_resonator.z0_ohm, layout.band.f0_hz);
    }
    return z_feed * tapped_slope(layout.resonator.z0_ohm, layout.tap.ratio());
}

FilterLayout make_layout(const LayoutInputs& in) {
    in.band.validate();
    in.substrate.validate();
    if (in.band.order < 2) throw BuildError("make_layout: order must be >= 2 for a coupled-resonator filter");
    if (in.resonator_z0_ohm.has_value() == in.tap_ratio.has_value()) {
        throw BuildError("make_layout: give exactly one of resonator impedance and tap ratio");
    }
    if (!(in.feed_length_m >= 0.0)) throw BuildError("make_layout: feed length must be >= 0");
    if (!(in.via_inductance_h >= 0.0)) throw BuildError("make_layout: via inductance must be >= 0");

    FilterLayout out;
    out.band = in.band;
    out.substrate = in.substrate;
    out.feed_length_m = in.feed_length_m;
    out.via_inductance_h = in.via_inductance_h;
    out.prototype = chebyshev_gvalues(in.band.order, in.band.ripple_db);
    out.coupling = make_coupling_set(out.prototype, in.band.fractional_bandwidth());

    const double z_feed = in.band.z0_ohm;
    const double qe = out.coupling.qe_in;
    double z0l = 0.0;
    double ratio = 0.0;
    if (in.tap_ratio) {
        ratio = *in.tap_ratio;
        z0l = resonator_impedance_for_tap(qe, z_feed, ratio);
    } else {
        z0l = *in.resonator_z0_ohm;
        ratio = tap_position(qe, z_feed, z0l);
    }

    out.feed = analyze_line(synthesize_width(z_feed, in.substrate), in.substrate);
    out.resonator = analyze_line(synthesize_width(z0l, in.substrate), in.substrate);
    out.resonator.z0_ohm = z0l;
    if (in.resonator_eps_eff) {
        if (!(*in.resonator_eps_eff >= 1.0)) throw BuildError("make_layout: resonator eps_eff must be >= 1");
        out.resonator.eps_eff = *in.resonator_eps_eff;
    }
    out.resonator_length_m = quarter_wave_length(in.band.f0_hz, out.resonator.eps_eff);
    out.tap = TapDesign{z_feed, z0l, out.resonator_length_m, ratio * out.resonator_length_m};

    const double b = quarter_wave_slope(z0l);
    const double k_end = out.coupling.k.front();
    // For n = 2 the single inverter joins the two end resonators directly.
    const bool direct = in.band.order == 2;
    if (in.zeros) {
        const auto& z = *in.zeros;
        out.zeros = plan_zeros(z.window_low, z.window_high, z.target_low_hz, z.target_high_hz, z.eps_re,
                               {in.band.f1_hz, in.band.f2_hz});
        const double slope_norm =
            two_stub_slope(out.zeros->l_low_m, out.zeros->l_high_m, z.eps_re, 1.0, in.band.f0_hz);
        const double z_end = z.end_z0_ohm ? *z.end_z0_ohm : slope_norm * z_feed / qe;
        if (!(z_end > 0.0)) throw BuildError("make_layout: end-resonator impedance must be > 0");
        out.end_resonator = LineParams{synthesize_width(z_end, in.substrate), z_end, z.eps_re};
        out.end_length_m = out.zeros->l_low_m + out.zeros->l_high_m;
        out.end_inverter_j = k_end * (direct ? slope_norm / z_end : std::sqrt(slope_norm / z_end * b));
    } else {
        out.end_resonator = out.resonator;
        out.end_length_m = out.resonator_length_m;
        const double b_tap = tapped_slope(z0l, ratio);
        out.end_inverter_j = k_end * (direct ? b_tap : std::sqrt(b_tap * b));
    }
    return out;
}

CircuitNet build_circuit(const FilterLayout& layout) {
    const int n = layout.prototype.order();
    if (n < 2 || static_cast<int>(layout.coupling.k.size()) != n - 1) {
        throw BuildError("build_circuit: coupling set does not match the prototype order");
    }
    if (!(layout.end_inverter_j > 0.0)) throw BuildError("build_circuit: end inverter must be > 0");
    const double lv = layout.via_inductance_h;
    const auto& res = layout.resonator;

    CircuitNet net;
    auto add = [&net](std::string label, TwoPortElement e) { net.elements.push_back({std::move(label), e}); };

    auto end_resonator = [&](int index, bool mirrored) {
        const std::string p = "res" + std::to_string(index);
        if (layout.zeros) {
            const auto& z = *layout.zeros;
            const auto& er = layout.end_resonator;
            const ShuntShortStub low{er.z0_ohm, z.eps_re, z.l_low_m, lv};
            const ShuntShortStub high{er.z0_ohm, z.eps_re, z.l_high_m, lv};
            if (!mirrored) {
                add(p + ".stub_low", low);
                add(p + ".stub_high", high);
            } else {
                add(p + ".stub_high", high);
                add(p + ".stub_low", low);
            }
        } else {
            const double l_tap = layout.tap.tap_length_m;
            const ShuntShortStub shorted{res.z0_ohm, res.eps_eff, l_tap, lv};
            const ShuntOpenStub open{res.z0_ohm, res.eps_eff, layout.resonator_length_m - l_tap};
            if (!mirrored) {
                add(p + ".short", shorted);
                add(p + ".open", open);
            } else {
                add(p + ".open", open);
                add(p + ".short", shorted);
            }
        }
    };

    if (layout.zeros) {
        const auto& z = *layout.zeros;
        const double expected = z.l_low_m + z.l_high_m;
        if (std::abs(layout.end_length_m - expected) > 1e-12 * expected) {
            throw BuildError("build_circuit: end-resonator length differs from l_low + l_high");
        }
        if (!(z.l_low_m > z.l_high_m)) throw BuildError("build_circuit: requires l_low > l_high");
    } else if (!(layout.tap.tap_length_m > 0.0 && layout.tap.tap_length_m < layout.resonator_length_m)) {
        throw BuildError("build_circuit: tap must lie strictly inside the resonator");
    }

    const SeriesLine feed{layout.feed.z0_ohm, layout.feed.eps_eff, layout.feed_length_m};
    const double b = quarter_wave_slope(res.z0_ohm);
    add("feed_in", feed);
    end_resonator(1, false);
    for (int j = 1; j < n; ++j) {
        const bool end_pair = (j == 1 || j == n - 1);
        const double jv = end_pair ? layout.end_inverter_j : layout.coupling.k[static_cast<std::size_t>(j - 1)] * b;
        add("J" + std::to_string(j) + "," + std::to_string(j + 1), IdealInverter{jv});
        if (j + 1 < n) {
            add("res" + std::to_string(j + 1), ShuntShortStub{res.z0_ohm, res.eps_eff, layout.resonator_length_m, lv});
        }
    }
    end_resonator(n, true);
    add("feed_out", feed);
    return net;
}

CmModel cm_model(const FilterLayout& layout) {
    CmModel m;
    m.m = layout.coupling.m;
    m.qe_in = layout.coupling.qe_in;
    m.qe_out = layout.coupling.qe_out;
    m.w = layout.w();
    m.f0_hz = layout.band.f0_hz;
    m.qu = layout.substrate.qu.value_or(kUnboundedQ);
    return m;
}

}  // namespace tapline
