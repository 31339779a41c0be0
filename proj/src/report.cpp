#include "tapline/report.hpp"

namespace tapline {

using nlohmann::json;

namespace {

json line_json(const LineParams& p) {
    return {{"width_m", p.width_m}, {"z0_ohm", p.z0_ohm}, {"eps_eff", p.eps_eff}};
}

json attenuation_json(const std::vector<ProbeAttenuation>& atten) {
    json a = json::array();
    for (const auto& p : atten) a.push_back({{"f_hz", p.f_hz}, {"atten_db", p.atten_db}});
    return a;
}

}  // namespace

json synth_json(const FilterLayout& layout) {
    json doc;
    doc["order"] = layout.prototype.order();
    doc["ripple_db"] = layout.band.ripple_db;
    doc["f0_hz"] = layout.band.f0_hz;
    doc["fractional_bandwidth"] = layout.w();
    doc["g"] = layout.prototype.g;
    doc["k"] = layout.coupling.k;
    json m = json::array();
    for (Eigen::Index i = 0; i < layout.coupling.m.rows(); ++i) {
        json row = json::array();
        for (Eigen::Index j = 0; j < layout.coupling.m.cols(); ++j) row.push_back(layout.coupling.m(i, j));
        m.push_back(row);
    }
    doc["m"] = m;
    doc["qe_in"] = layout.coupling.qe_in;
    doc["qe_out"] = layout.coupling.qe_out;
    doc["tap"] = {{"ratio_from_short", layout.tap.ratio()},
                  {"ratio_from_open", layout.tap.ratio_from_open()},
                  {"tap_length_m", layout.tap.tap_length_m},
                  {"resonator_z0_ohm", layout.tap.z0_resonator_ohm},
                  {"feed_z0_ohm", layout.tap.z0_feed_ohm}};
    doc["resonator"] = line_json(layout.resonator);
    doc["resonator"]["length_m"] = layout.resonator_length_m;
    doc["feed"] = line_json(layout.feed);
    doc["feed"]["length_m"] = layout.feed_length_m;
    doc["end_inverter_j_s"] = layout.end_inverter_j;
    if (layout.zeros) {
        const auto& z = *layout.zeros;
        doc["end_resonator"] = line_json(layout.end_resonator);
        doc["end_resonator"]["length_m"] = layout.end_length_m;
        doc["zeros"] = {{"f_zero_low_hz", z.f_zero_low_hz},
                        {"f_zero_high_hz", z.f_zero_high_hz},
                        {"l_low_m", z.l_low_m},
                        {"l_high_m", z.l_high_m},
                        {"eps_re", z.eps_re}};
    }
    return doc;
}

json to_json(const Metrics& m) {
    return {{"f_center_hz", m.f_center_hz},
            {"bw3db_fractional", m.bw3db_fractional},
            {"f3db_low_hz", m.f3db_low_hz},
            {"f3db_high_hz", m.f3db_high_hz},
            {"il_db", m.il_mid_db},
            {"rl_min_passband_db", m.rl_min_passband_db},
            {"attenuation", attenuation_json(m.atten)}};
}

json to_json(const TuneReport& r) {
    json trace = json::array();
    for (const auto& t : r.trace) {
        trace.push_back({{"iteration", t.iteration},
                         {"coordinate", t.coordinate},
                         {"l_low_m", t.l_low_m},
                         {"l_high_m", t.l_high_m},
                         {"objective", t.objective},
                         {"accepted", t.accepted}});
    }
    return {{"l_low_m", r.l_low_m},
            {"l_high_m", r.l_high_m},
            {"f_zero_low_hz", r.f_zero_low_hz},
            {"f_zero_high_hz", r.f_zero_high_hz},
            {"hump_db", r.hump_db},
            {"objective", r.objective},
            {"coupling", {{"classification", to_string(r.coupling)},
                          {"k_end", r.k_end},
                          {"qe_end", r.qe_end},
                          {"k_critical", r.k_critical}}},
            {"achieved", attenuation_json(r.achieved)},
            {"iterations", r.iterations},
            {"evaluations", r.evaluations},
            {"termination", to_string(r.termination)},
            {"infeasible", r.infeasible},
            {"trace", trace}};
}

json to_json(std::span<const ComparisonRow> rows) {
    json out = json::array();
    for (const auto& r : rows) {
        out.push_back({{"f_hz", r.f_hz}, {"atten_a_db", r.atten_a_db}, {"atten_b_db", r.atten_b_db},
                       {"delta_db", r.delta_db}});
    }
    return out;
}

}  // namespace tapline
