#include "tapline/cli.hpp"

#include "tapline/config.hpp"
#include "tapline/errors.hpp"
#include "tapline/io.hpp"
#include "tapline/report.hpp"
#include "tapline/units.hpp"

#include <CLI11.hpp>

#include <cstdio>
#include <ostream>
#include <sstream>

namespace tapline {
namespace {

// Detected zeros are notches at least this deep.
constexpr double kZeroFloorDb = -40.0;

struct Globals {
    std::string grid;
    bool quiet = false;
    long seed = 0;
};

DesignConfig load(const std::string& path, const Globals& g) {
    DesignConfig c = load_config(path);
    if (!g.grid.empty()) c.grid = parse_grid(g.grid);
    return c;
}

FrequencyResponse sweep(const FilterLayout& layout, const std::vector<double>& grid, const std::string& engine) {
    if (engine == "cm") return cm_response(cm_model(layout), grid, layout.band.z0_ohm);
    return cascade_sweep(build_circuit(layout), grid, layout.band.z0_ohm);
}

std::vector<double> parse_probes(const std::string& text) {
    std::vector<double> out;
    std::stringstream ss(text);
    std::string item;
    while (std::getline(ss, item, ',')) {
        try {
            out.push_back(parse_quantity(item, Dimension::frequency));
        } catch (const DomainError& e) {
            throw ConfigError("--probes", e.what());
        }
    }
    return out;
}

std::string comparison_table(const std::vector<ComparisonRow>& rows) {
    std::string out = "f_GHz      atten_A_dB  atten_B_dB  delta_dB\n";
    char buf[96];
    for (const auto& r : rows) {
        std::snprintf(buf, sizeof buf, "%-10.4f %11.3f %11.3f %9.3f\n", r.f_hz / 1e9, r.atten_a_db, r.atten_b_db,
                      r.delta_db);
        out += buf;
    }
    return out;
}

}  // namespace

int run_cli(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
    CLI::App app{"Tapped-line interdigital bandpass filter synthesis and simulation", "tapline"};
    app.require_subcommand(1);
    app.fallthrough();
    Globals g;
    app.add_option("--grid", g.grid, "Frequency grid start:stop:points, e.g. 8GHz:18GHz:1001");
    app.add_flag("--quiet", g.quiet, "Suppress standard output");
    app.add_option("--seed", g.seed, "Reserved; the tuner is deterministic");

    std::string config_path;
    auto* synth = app.add_subcommand("synth", "Prototype, couplings, tap and line dimensions");
    synth->add_option("config", config_path)->required();

    auto* simulate = app.add_subcommand("simulate", "Sweep the layout and report metrics");
    std::string engine = "cascade";
    std::string s2p_path;
    std::string csv_path;
    simulate->add_option("config", config_path)->required();
    simulate->add_option("--engine", engine)->check(CLI::IsMember({"cm", "cascade"}));
    simulate->add_option("--out", s2p_path, "Touchstone output");
    simulate->add_option("--csv", csv_path, "CSV output");

    auto* zeros = app.add_subcommand("zeros", "Planned and detected transmission zeros");
    zeros->add_option("config", config_path)->required();

    auto* tune = app.add_subcommand("tune", "Tune the zero stubs toward the attenuation targets");
    std::string report_path;
    tune->add_option("config", config_path)->required();
    tune->add_option("--report", report_path, "Full JSON report output");

    auto* compare = app.add_subcommand("compare", "Attenuation table of design B against design A");
    std::string config_b;
    std::string probes_text;
    compare->add_option("config_a", config_path)->required();
    compare->add_option("config_b", config_b)->required();
    compare->add_option("--probes", probes_text, "Comma-separated frequencies, e.g. 10.6GHz,13.2GHz");

    std::vector<const char*> argv;
    for (const auto& a : args) argv.push_back(a.c_str());
    try {
        app.parse(static_cast<int>(argv.size()), argv.data());
    } catch (const CLI::ParseError& e) {
        const int code = app.exit(e, out, err);
        return code == 0 ? kExitOk : kExitConfig;
    }

    auto emit = [&](const std::string& text) {
        if (!g.quiet) out << text;
    };

    try {
        if (synth->parsed()) {
            const DesignConfig c = load(config_path, g);
            emit(synth_json(make_layout(c.layout)).dump(2) + "\n");
            return kExitOk;
        }
        if (simulate->parsed()) {
            const DesignConfig c = load(config_path, g);
            const FilterLayout layout = make_layout(c.layout);
            const FrequencyResponse resp = sweep(layout, c.resolved_grid().values(), engine);
            if (!s2p_path.empty()) write_touchstone(resp, s2p_path);
            if (!csv_path.empty()) write_csv(resp, csv_path);
            nlohmann::json doc;
            doc["engine"] = engine;
            doc["points"] = resp.size();
            doc["flagged"] = resp.flagged;
            doc["metrics"] = to_json(metrics(resp, ripple_band(layout.band.f0_hz, layout.w()), c.probes_hz));
            emit(doc.dump(2) + "\n");
            return kExitOk;
        }
        if (zeros->parsed()) {
            const DesignConfig c = load(config_path, g);
            const FilterLayout layout = make_layout(c.layout);
            const FrequencyResponse resp = sweep(layout, c.resolved_grid().values(), "cascade");
            nlohmann::json doc;
            doc["analytic_hz"] = nlohmann::json::array();
            if (layout.zeros) doc["analytic_hz"] = {layout.zeros->f_zero_low_hz, layout.zeros->f_zero_high_hz};
            doc["detected_hz"] = find_zeros(resp, kZeroFloorDb);
            doc["floor_db"] = kZeroFloorDb;
            emit(doc.dump(2) + "\n");
            return kExitOk;
        }
        if (tune->parsed()) {
            const DesignConfig c = load(config_path, g);
            if (!c.layout.zeros) throw ConfigError("zeros", "tune needs a zero plan");
            const TuneReport report = tune_zeros(make_layout(c.layout), c.tune_options());
            const nlohmann::json doc = to_json(report);
            if (!report_path.empty()) write_text(report_path, doc.dump(2) + "\n");
            nlohmann::json summary = doc;
            summary.erase("trace");
            emit(summary.dump(2) + "\n");
            if (report.infeasible) {
                err << "tune: targets not met (" << to_string(report.termination) << ", objective "
                    << report.objective << ")\n";
                return kExitInfeasible;
            }
            return kExitOk;
        }
        if (compare->parsed()) {
            const DesignConfig ca = load(config_path, g);
            const DesignConfig cb = load(config_b, g);
            const std::vector<double> probes = probes_text.empty() ? ca.probes_hz : parse_probes(probes_text);
            if (probes.empty()) throw ConfigError("--probes", "no probe frequencies given");
            const FrequencyResponse ra = sweep(make_layout(ca.layout), ca.resolved_grid().values(), "cascade");
            const FrequencyResponse rb = sweep(make_layout(cb.layout), cb.resolved_grid().values(), "cascade");
            emit(comparison_table(compare_designs(ra, rb, probes)));
            return kExitOk;
        }
    } catch (const IoError& e) {
        err << "error: " << e.what() << "\n";
        return kExitIo;
    } catch (const ConfigError& e) {
        err << "config error: " << e.what() << "\n";
        return kExitConfig;
    } catch (const std::exception& e) {
        err << "error: " << e.what() << "\n";
        return kExitConfig;
    }
    return kExitFailure;
}

}  // namespace tapline
