#include "tapline/config.hpp"

#include "tapline/errors.hpp"
#include "tapline/units.hpp"

#include <algorithm>
#include <fstream>
#include <initializer_list>
#include <sstream>
#include <string_view>

namespace tapline {

using nlohmann::json;

namespace {

std::string join(const std::string& path, std::string_view key) {
    return path.empty() ? std::string(key) : path + "." + std::string(key);
}

void reject_unknown(const json& obj, const std::string& path, std::initializer_list<std::string_view> known) {
    if (!obj.is_object()) throw ConfigError(path.empty() ? "<document>" : path, "expected an object");
    for (auto it = obj.begin(); it != obj.end(); ++it) {
        if (std::find(known.begin(), known.end(), it.key()) == known.end()) {
            throw ConfigError(join(path, it.key()), "unknown field");
        }
    }
}

const json* find(const json& obj, std::string_view key) {
    const auto it = obj.find(key);
    return it == obj.end() ? nullptr : &*it;
}

const json& require(const json& obj, const std::string& path, std::string_view key) {
    const json* v = find(obj, key);
    if (!v) throw ConfigError(join(path, key), "required field missing");
    return *v;
}

double quantity(const json& v, const std::string& field, Dimension dim) {
    if (v.is_number()) throw ConfigError(field, std::string("unit missing (expected a ") + si_unit(dim) + "-compatible string)");
    if (!v.is_string()) throw ConfigError(field, "expected a string with a unit");
    try {
        return parse_quantity(v.get<std::string>(), dim);
    } catch (const DomainError& e) {
        throw ConfigError(field, e.what());
    }
}

double number(const json& v, const std::string& field) {
    if (!v.is_number()) throw ConfigError(field, "expected a number");
    return v.get<double>();
}

int integer(const json& v, const std::string& field) {
    if (!v.is_number_integer()) throw ConfigError(field, "expected an integer");
    return v.get<int>();
}

FreqWindow window(const json& v, const std::string& field) {
    if (!v.is_array() || v.size() != 2) throw ConfigError(field, "expected [low, high]");
    return {quantity(v[0], field + "[0]", Dimension::frequency), quantity(v[1], field + "[1]", Dimension::frequency)};
}

BandSpec parse_band(const json& b, double z0) {
    const std::string p = "band";
    reject_unknown(b, p, {"order", "ripple", "f0", "fractional_bandwidth", "f1", "f2"});
    BandSpec band;
    band.order = integer(require(b, p, "order"), "band.order");
    band.ripple_db = quantity(require(b, p, "ripple"), "band.ripple", Dimension::decibel);
    band.z0_ohm = z0;
    const json* f0 = find(b, "f0");
    const json* w = find(b, "fractional_bandwidth");
    const json* f1 = find(b, "f1");
    const json* f2 = find(b, "f2");
    if (w) {
        if (f1 || f2) throw ConfigError("band.fractional_bandwidth", "give either f0 + fractional_bandwidth or f1/f2");
        if (!f0) throw ConfigError("band.f0", "required with fractional_bandwidth");
        const double wv = number(*w, "band.fractional_bandwidth");
        const double f0v = quantity(*f0, "band.f0", Dimension::frequency);
        band.f0_hz = f0v;
        band.f1_hz = f0v * (1.0 - 0.5 * wv);
        band.f2_hz = f0v * (1.0 + 0.5 * wv);
    } else {
        if (!f1) throw ConfigError("band.f1", "required field missing");
        if (!f2) throw ConfigError("band.f2", "required field missing");
        band.f1_hz = quantity(*f1, "band.f1", Dimension::frequency);
        band.f2_hz = quantity(*f2, "band.f2", Dimension::frequency);
        band.f0_hz = f0 ? quantity(*f0, "band.f0", Dimension::frequency) : 0.5 * (band.f1_hz + band.f2_hz);
    }
    try {
        band.validate();
    } catch (const DomainError& e) {
        throw ConfigError("band", e.what());
    }
    return band;
}

Substrate parse_substrate(const json& s) {
    const std::string p = "substrate";
    reject_unknown(s, p, {"eps_r", "h", "t", "qu"});
    Substrate sub;
    sub.eps_r = number(require(s, p, "eps_r"), "substrate.eps_r");
    sub.h_m = quantity(require(s, p, "h"), "substrate.h", Dimension::length);
    if (const json* t = find(s, "t")) sub.t_m = quantity(*t, "substrate.t", Dimension::length);
    if (const json* q = find(s, "qu"); q && !q->is_null()) {
        sub.qu = number(*q, "substrate.qu");
        if (!(*sub.qu > 0.0)) throw ConfigError("substrate.qu", "must be > 0");
    }
    try {
        sub.validate();
    } catch (const DomainError& e) {
        throw ConfigError("substrate", e.what());
    }
    return sub;
}

ZeroInputs parse_zeros(const json& z) {
    const std::string p = "zeros";
    reject_unknown(z, p, {"window_low", "window_high", "targets", "eps_re", "end_z0"});
    ZeroInputs out;
    out.window_low = window(require(z, p, "window_low"), "zeros.window_low");
    out.window_high = window(require(z, p, "window_high"), "zeros.window_high");
    const FreqWindow t = window(require(z, p, "targets"), "zeros.targets");
    out.target_low_hz = t.first;
    out.target_high_hz = t.second;
    out.eps_re = number(require(z, p, "eps_re"), "zeros.eps_re");
    if (!(out.eps_re >= 1.0)) throw ConfigError("zeros.eps_re", "must be >= 1");
    if (const json* e = find(z, "end_z0")) out.end_z0_ohm = quantity(*e, "zeros.end_z0", Dimension::impedance);
    return out;
}

TuneSettings parse_tune(const json& t) {
    reject_unknown(t, "tune", {"targets", "max_iter", "hump_weight"});
    TuneSettings out;
    if (const json* ts = find(t, "targets")) {
        if (!ts->is_array()) throw ConfigError("tune.targets", "expected an array");
        for (std::size_t i = 0; i < ts->size(); ++i) {
            const std::string p = "tune.targets[" + std::to_string(i) + "]";
            const json& e = (*ts)[i];
            reject_unknown(e, p, {"f", "atten"});
            out.targets.push_back({quantity(require(e, p, "f"), p + ".f", Dimension::frequency),
                                   quantity(require(e, p, "atten"), p + ".atten", Dimension::decibel)});
        }
    }
    if (const json* m = find(t, "max_iter")) {
        out.max_iter = integer(*m, "tune.max_iter");
        if (out.max_iter < 0) throw ConfigError("tune.max_iter", "must be >= 0");
    }
    if (const json* w = find(t, "hump_weight")) {
        out.hump_weight = number(*w, "tune.hump_weight");
        if (!(out.hump_weight >= 0.0)) throw ConfigError("tune.hump_weight", "must be >= 0");
    }
    return out;
}

GridSpec parse_grid_object(const json& g) {
    const std::string p = "grid";
    reject_unknown(g, p, {"start", "stop", "points"});
    GridSpec out;
    out.start_hz = quantity(require(g, p, "start"), "grid.start", Dimension::frequency);
    out.stop_hz = quantity(require(g, p, "stop"), "grid.stop", Dimension::frequency);
    const int n = integer(require(g, p, "points"), "grid.points");
    if (n < 2) throw ConfigError("grid.points", "need at least 2 points");
    out.points = static_cast<std::size_t>(n);
    if (!(out.start_hz > 0.0 && out.stop_hz > out.start_hz)) throw ConfigError("grid", "requires 0 < start < stop");
    return out;
}

}  // namespace

GridSpec parse_grid(const std::string& text) {
    const auto a = text.find(':');
    const auto b = a == std::string::npos ? a : text.find(':', a + 1);
    if (b == std::string::npos) throw ConfigError("grid", "expected start:stop:points");
    GridSpec g;
    try {
        g.start_hz = parse_quantity(text.substr(0, a), Dimension::frequency);
        g.stop_hz = parse_quantity(text.substr(a + 1, b - a - 1), Dimension::frequency);
        g.points = static_cast<std::size_t>(std::stoul(text.substr(b + 1)));
    } catch (const DomainError& e) {
        throw ConfigError("grid", e.what());
    } catch (const std::logic_error&) {
        throw ConfigError("grid", "points must be a positive integer");
    }
    if (g.points < 2) throw ConfigError("grid", "need at least 2 points");
    if (!(g.start_hz > 0.0 && g.stop_hz > g.start_hz)) throw ConfigError("grid", "requires 0 < start < stop");
    return g;
}

GridSpec DesignConfig::resolved_grid() const {
    if (grid) return *grid;
    const double f0 = layout.band.f0_hz;
    return {0.5 * f0, 1.6 * f0, 1601};
}

TuneOptions DesignConfig::tune_options() const {
    TuneOptions o;
    o.targets = tune.targets;
    o.max_iter = tune.max_iter;
    o.hump_weight = tune.hump_weight;
    o.grid_hz = resolved_grid().values();
    return o;
}

DesignConfig parse_config(const json& doc) {
    reject_unknown(doc, "", {"schema", "band", "z0", "substrate", "tap", "resonator_eps_eff", "zeros", "feed_length",
                             "via_inductance", "grid", "probes", "tune", "resolved"});
    const json& schema = require(doc, "", "schema");
    if (!schema.is_number_integer() || schema.get<int>() != kConfigSchema) {
        throw ConfigError("schema", "unsupported schema version (expected 1)");
    }

    DesignConfig c;
    const double z0 = find(doc, "z0") ? quantity(doc["z0"], "z0", Dimension::impedance) : 50.0;
    c.layout.band = parse_band(require(doc, "", "band"), z0);
    c.layout.substrate = parse_substrate(require(doc, "", "substrate"));

    const json& tap = require(doc, "", "tap");
    reject_unknown(tap, "tap", {"ratio", "resonator_z0"});
    const json* ratio = find(tap, "ratio");
    const json* rz = find(tap, "resonator_z0");
    if (!ratio == !rz) throw ConfigError("tap", "give exactly one of ratio and resonator_z0");
    if (ratio) {
        const double r = number(*ratio, "tap.ratio");
        if (!(r > 0.0 && r < 1.0)) throw ConfigError("tap.ratio", "must lie in (0, 1)");
        c.layout.tap_ratio = r;
    } else {
        const double z = quantity(*rz, "tap.resonator_z0", Dimension::impedance);
        if (!(z > 0.0)) throw ConfigError("tap.resonator_z0", "must be > 0");
        c.layout.resonator_z0_ohm = z;
    }

    if (const json* e = find(doc, "resonator_eps_eff")) {
        c.layout.resonator_eps_eff = number(*e, "resonator_eps_eff");
        if (!(*c.layout.resonator_eps_eff >= 1.0)) throw ConfigError("resonator_eps_eff", "must be >= 1");
    }
    if (const json* z = find(doc, "zeros")) c.layout.zeros = parse_zeros(*z);
    if (const json* f = find(doc, "feed_length")) {
        c.layout.feed_length_m = quantity(*f, "feed_length", Dimension::length);
        if (!(c.layout.feed_length_m >= 0.0)) throw ConfigError("feed_length", "must be >= 0");
    }
    if (const json* v = find(doc, "via_inductance")) {
        c.layout.via_inductance_h = quantity(*v, "via_inductance", Dimension::inductance);
        if (!(c.layout.via_inductance_h >= 0.0)) throw ConfigError("via_inductance", "must be >= 0");
    }
    if (const json* g = find(doc, "grid")) c.grid = parse_grid_object(*g);
    if (const json* p = find(doc, "probes")) {
        if (!p->is_array()) throw ConfigError("probes", "expected an array");
        for (std::size_t i = 0; i < p->size(); ++i) {
            c.probes_hz.push_back(quantity((*p)[i], "probes[" + std::to_string(i) + "]", Dimension::frequency));
        }
    }
    if (const json* t = find(doc, "tune")) c.tune = parse_tune(*t);

    if (c.layout.zeros) {
        const auto& z = *c.layout.zeros;
        try {
            plan_zeros(z.window_low, z.window_high, z.target_low_hz, z.target_high_hz, z.eps_re,
                       {c.layout.band.f1_hz, c.layout.band.f2_hz});
        } catch (const PlanError& e) {
            throw ConfigError("zeros", e.what());
        }
    }
    return c;
}

DesignConfig parse_config_text(const std::string& text) {
    if (text.find_first_not_of(" \t\r\n") == std::string::npos) throw ConfigError("<document>", "empty document");
    json doc;
    try {
        doc = json::parse(text);
    } catch (const json::parse_error& e) {
        throw ConfigError("<document>", e.what());
    }
    return parse_config(doc);
}

DesignConfig load_config(const std::filesystem::path& path) {
    std::ifstream in(path, std::ios::binary);
    if (!in) throw IoError("cannot read config '" + path.string() + "'");
    std::ostringstream ss;
    ss << in.rdbuf();
    return parse_config_text(ss.str());
}

json to_json(const DesignConfig& c) {
    const auto& L = c.layout;
    const auto q = [](double v, Dimension d) { return format_si(v, d); };
    json doc;
    doc["schema"] = kConfigSchema;
    doc["band"] = {{"order", L.band.order},
                   {"ripple", q(L.band.ripple_db, Dimension::decibel)},
                   {"f1", q(L.band.f1_hz, Dimension::frequency)},
                   {"f2", q(L.band.f2_hz, Dimension::frequency)},
                   {"f0", q(L.band.f0_hz, Dimension::frequency)}};
    doc["z0"] = q(L.band.z0_ohm, Dimension::impedance);
    doc["substrate"] = {{"eps_r", L.substrate.eps_r},
                        {"h", q(L.substrate.h_m, Dimension::length)},
                        {"t", q(L.substrate.t_m, Dimension::length)}};
    if (L.substrate.qu) doc["substrate"]["qu"] = *L.substrate.qu;
    if (L.tap_ratio) doc["tap"] = {{"ratio", *L.tap_ratio}};
    if (L.resonator_z0_ohm) doc["tap"] = {{"resonator_z0", q(*L.resonator_z0_ohm, Dimension::impedance)}};
    if (L.resonator_eps_eff) doc["resonator_eps_eff"] = *L.resonator_eps_eff;
    if (L.zeros) {
        const auto& z = *L.zeros;
        const auto f = [&](double v) { return q(v, Dimension::frequency); };
        doc["zeros"] = {{"window_low", {f(z.window_low.first), f(z.window_low.second)}},
                        {"window_high", {f(z.window_high.first), f(z.window_high.second)}},
                        {"targets", {f(z.target_low_hz), f(z.target_high_hz)}},
                        {"eps_re", z.eps_re}};
        if (z.end_z0_ohm) doc["zeros"]["end_z0"] = q(*z.end_z0_ohm, Dimension::impedance);
    }
    doc["feed_length"] = q(L.feed_length_m, Dimension::length);
    doc["via_inductance"] = q(L.via_inductance_h, Dimension::inductance);
    if (c.grid) {
        doc["grid"] = {{"start", q(c.grid->start_hz, Dimension::frequency)},
                       {"stop", q(c.grid->stop_hz, Dimension::frequency)},
                       {"points", c.grid->points}};
    }
    json probes = json::array();
    for (double p : c.probes_hz) probes.push_back(q(p, Dimension::frequency));
    doc["probes"] = probes;
    json targets = json::array();
    for (const auto& t : c.tune.targets) {
        targets.push_back({{"f", q(t.f_hz, Dimension::frequency)}, {"atten", q(t.atten_db, Dimension::decibel)}});
    }
    doc["tune"] = {{"targets", targets}, {"max_iter", c.tune.max_iter}, {"hump_weight", c.tune.hump_weight}};

    const GridSpec g = c.resolved_grid();
    json r;
    r["f1_hz"] = L.band.f1_hz;
    r["f2_hz"] = L.band.f2_hz;
    r["f0_hz"] = L.band.f0_hz;
    r["fractional_bandwidth"] = L.band.fractional_bandwidth();
    r["z0_ohm"] = L.band.z0_ohm;
    r["substrate"] = {{"eps_r", L.substrate.eps_r}, {"h_m", L.substrate.h_m}, {"t_m", L.substrate.t_m},
                      {"qu", L.substrate.qu ? json(*L.substrate.qu) : json(nullptr)}};
    r["feed_length_m"] = L.feed_length_m;
    r["via_inductance_h"] = L.via_inductance_h;
    r["grid"] = {{"start_hz", g.start_hz}, {"stop_hz", g.stop_hz}, {"points", g.points}};
    r["tune"] = {{"max_iter", c.tune.max_iter}, {"hump_weight", c.tune.hump_weight}};
    doc["resolved"] = r;
    return doc;
}

}  // namespace tapline
