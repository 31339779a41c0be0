#include "tapline/config.hpp"
#include "tapline/errors.hpp"
#include "tapline/io.hpp"
#include "tapline/units.hpp"

#include "support/designs.hpp"
#include "support/gen.hpp"

#include <gtest/gtest.h>

#include <cmath>
#include <filesystem>

using namespace tapline;

namespace {

const std::filesystem::path kConfigs = TAPLINE_CONFIG_DIR;

FrequencyResponse ku8_response() {
    const FilterLayout b = make_layout(testgen::ku8_inputs(true));
    return cascade_sweep(build_circuit(b), default_grid(13.2e9), 50.0);
}

std::filesystem::path temp_file(const std::string& name) {
    return std::filesystem::temp_directory_path() / ("tapline_test_" + name);
}

void expect_rel(cplx a, cplx b, double rel) {
    EXPECT_LE(std::abs(a - b), rel * std::max(std::abs(b), 1e-300)) << a << " vs " << b;
}

}  // namespace

TEST(Touchstone, RoundTrip) {
    const FrequencyResponse r = ku8_response();
    const auto path = temp_file("rt.s2p");
    write_touchstone(r, path);
    const FrequencyResponse back = read_touchstone(path);
    ASSERT_EQ(back.size(), r.size());
    EXPECT_EQ(back.z_ref_ohm, 50.0);
    for (std::size_t i = 0; i < r.size(); ++i) {
        EXPECT_NEAR(back.freq_hz[i], r.freq_hz[i], 1e-12 * r.freq_hz[i]);
        expect_rel(back.s11[i], r.s11[i], 1e-9);
        expect_rel(back.s21[i], r.s21[i], 1e-9);
        expect_rel(back.s12[i], r.s12[i], 1e-9);
        expect_rel(back.s22[i], r.s22[i], 1e-9);
    }
    std::filesystem::remove(path);
}

TEST(Touchstone, OptionLineAndMatchedLine) {
    const CircuitNet net{{{"line", SeriesLine{75.0, 4.0, 1e-3}}}};
    const FrequencyResponse r = cascade_sweep(net, linear_grid(1e9, 5e9, 5), 75.0);
    const std::string text = format_touchstone(r);
    EXPECT_NE(text.find("\n# GHz S RI R 75\n"), std::string::npos);
    const FrequencyResponse back = parse_touchstone(text);
    EXPECT_EQ(back.z_ref_ohm, 75.0);
    for (const cplx& s : back.s11) EXPECT_LT(std::abs(s), 1e-12);
}

TEST(Touchstone, DbFormatFixture) {
    const std::string text =
        "! hand-built fixture\n"
        "# MHz S DB R 50\n"
        "1000 -20 0 -0.5 -90 -0.5 -90 -20 180\n"
        "2000 -6.0205999132796 45 -3 0 -3 0 0 -45\n";
    const FrequencyResponse r = parse_touchstone(text);
    ASSERT_EQ(r.size(), 2u);
    EXPECT_DOUBLE_EQ(r.freq_hz[0], 1e9);
    expect_rel(r.s11[0], cplx{0.1, 0.0}, 1e-12);
    expect_rel(r.s21[0], std::polar(std::pow(10.0, -0.5 / 20.0), -kPi / 2.0), 1e-12);
    EXPECT_NEAR(std::abs(r.s22[0] - cplx{-0.1, 0.0}), 0.0, 1e-12);
    expect_rel(r.s11[1], std::polar(0.5, kPi / 4.0), 1e-12);
    EXPECT_NEAR(20.0 * std::log10(std::abs(r.s21[1])), -3.0, 1e-12);
    expect_rel(r.s22[1], std::polar(1.0, -kPi / 4.0), 1e-12);
}

TEST(Touchstone, MagnitudeAngleAndDefaults) {
    const FrequencyResponse ma = parse_touchstone("#\n1 0.5 90 1 0 1 0 0.5 -90\n");
    EXPECT_DOUBLE_EQ(ma.freq_hz[0], 1e9);
    EXPECT_EQ(ma.z_ref_ohm, 50.0);
    EXPECT_NEAR(std::abs(ma.s11[0] - cplx{0.0, 0.5}), 0.0, 1e-15);
    const FrequencyResponse hz = parse_touchstone("# hz s ri r 25\n100 0 0 1 0 1 0 0 0\n");
    EXPECT_DOUBLE_EQ(hz.freq_hz[0], 100.0);
    EXPECT_EQ(hz.z_ref_ohm, 25.0);
}

TEST(Touchstone, ParseErrors) {
    auto line_of = [](const std::string& text) {
        try {
            parse_touchstone(text);
        } catch (const ParseError& e) {
            return e.line();
        }
        return std::size_t{9999};
    };
    EXPECT_THROW(parse_touchstone(""), ParseError);
    EXPECT_THROW(parse_touchstone("! only a comment\n"), ParseError);
    EXPECT_EQ(line_of("# GHz S RI R 50\n1 0 0 1 0 1 0 0\n"), 2u);
    EXPECT_EQ(line_of("! c\n# GHz Q RI R 50\n1 0 0 1 0 1 0 0 0\n"), 2u);
    EXPECT_EQ(line_of("# GHz Y RI R 50\n"), 1u);
    EXPECT_EQ(line_of("# GHz S RI R\n"), 1u);
    EXPECT_EQ(line_of("# GHz S RI R 50\n2 0 0 1 0 1 0 0 0\n1 0 0 1 0 1 0 0 0\n"), 3u);
    EXPECT_EQ(line_of("# GHz S RI R 50\n1 0 0 1 x 1 0 0 0\n"), 2u);
    EXPECT_THROW(read_touchstone("/nonexistent/dir/file.s2p"), IoError);
    EXPECT_THROW(write_touchstone(ku8_response(), "/nonexistent/dir/file.s2p"), IoError);
}

TEST(Csv, RoundTripAndAgreesWithTouchstone) {
    const FrequencyResponse r = ku8_response();
    const std::string csv = format_csv(r);
    EXPECT_EQ(csv.substr(0, csv.find('\n')), "freq_hz,s11_re,s11_im,s21_re,s21_im,s21_db");
    const FrequencyResponse c = parse_csv(csv);
    const FrequencyResponse t = parse_touchstone(format_touchstone(r));
    ASSERT_EQ(c.size(), r.size());
    for (std::size_t i = 0; i < r.size(); ++i) {
        EXPECT_EQ(c.freq_hz[i], r.freq_hz[i]);
        EXPECT_EQ(c.s11[i], r.s11[i]);
        EXPECT_EQ(c.s21[i], r.s21[i]);
        EXPECT_NEAR(c.freq_hz[i], t.freq_hz[i], 1e-9 * c.freq_hz[i]);
        expect_rel(t.s11[i], c.s11[i], 1e-9);
        expect_rel(t.s21[i], c.s21[i], 1e-9);
    }
    EXPECT_THROW(parse_csv(""), ParseError);
    EXPECT_THROW(parse_csv("freq,a\n"), ParseError);
    EXPECT_THROW(parse_csv("freq_hz,s11_re,s11_im,s21_re,s21_im,s21_db\n1,2,3\n"), ParseError);
}

TEST(Csv, RandomRoundTrip) {
    testgen::Gen gen(71);
    for (int trial = 0; trial < 1000; ++trial) {
        FrequencyResponse r;
        const auto n = static_cast<std::size_t>(gen.integer(1, 8));
        double f = gen.log_uniform(1.0, 1e11);
        for (std::size_t i = 0; i < n; ++i) {
            r.freq_hz.push_back(f);
            f *= 1.0 + gen.uniform(1e-9, 0.5);
            r.s11.emplace_back(gen.uniform(-1, 1) * std::pow(10.0, gen.integer(-12, 0)), gen.uniform(-1, 1));
            r.s21.emplace_back(gen.uniform(-1, 1), gen.uniform(-1, 1) * std::pow(10.0, gen.integer(-12, 0)));
        }
        r.s12 = r.s21;
        r.s22 = r.s11;
        const FrequencyResponse c = parse_csv(format_csv(r));
        const FrequencyResponse t = parse_touchstone(format_touchstone(r));
        for (std::size_t i = 0; i < n; ++i) {
            ASSERT_EQ(c.freq_hz[i], r.freq_hz[i]);
            ASSERT_EQ(c.s11[i], r.s11[i]);
            ASSERT_EQ(c.s21[i], r.s21[i]);
            ASSERT_NEAR(t.freq_hz[i], r.freq_hz[i], 1e-12 * r.freq_hz[i]);
            ASSERT_NEAR(t.s11[i].real(), r.s11[i].real(), 1e-11 * std::abs(r.s11[i].real()));
            ASSERT_NEAR(t.s21[i].imag(), r.s21[i].imag(), 1e-11 * std::abs(r.s21[i].imag()));
        }
    }
}

TEST(Config, BundledDesignLoads) {
    const DesignConfig c = load_config(kConfigs / "ku8.json");
    const LayoutInputs ref = testgen::ku8_inputs(true);
    EXPECT_EQ(c.layout.band.order, 8);
    EXPECT_EQ(c.layout.band.ripple_db, 0.2);
    EXPECT_NEAR(c.layout.band.f0_hz, 13.2e9, 1e-3);
    EXPECT_NEAR(c.layout.band.fractional_bandwidth(), 0.2, 1e-12);
    EXPECT_EQ(c.layout.substrate.qu, std::optional<double>(154.0));
    EXPECT_NEAR(c.layout.substrate.h_m, 200e-6, 1e-18);
    ASSERT_TRUE(c.layout.zeros.has_value());
    EXPECT_EQ(c.layout.zeros->eps_re, 12.49);
    EXPECT_NEAR(c.layout.zeros->window_low.first, 10e9, 1e-3);
    EXPECT_NEAR(c.layout.zeros->target_high_hz, 15.5e9, 1e-3);
    EXPECT_EQ(c.layout.tap_ratio, ref.tap_ratio);
    ASSERT_EQ(c.tune.targets.size(), 1u);
    EXPECT_NEAR(c.tune.targets[0].atten_db, 48.0, 1e-12);
    EXPECT_EQ(c.resolved_grid().points, 1601u);
    EXPECT_NO_THROW(make_layout(c.layout));
    EXPECT_FALSE(load_config(kConfigs / "ku8_a.json").layout.zeros.has_value());
}

TEST(Config, RoundTrip) {
    for (const char* name : {"ku8.json", "ku8_a.json"}) {
        const DesignConfig c = load_config(kConfigs / name);
        const nlohmann::json doc = to_json(c);
        ASSERT_TRUE(doc.contains("resolved"));
        const DesignConfig back = parse_config(doc);
        EXPECT_TRUE(back == c) << name;
        EXPECT_EQ(to_json(back).dump(), doc.dump());
        EXPECT_TRUE(parse_config_text(doc.dump(2)) == c);
    }
}

TEST(Config, RandomRoundTrip) {
    testgen::Gen gen(72);
    for (int trial = 0; trial < 1000; ++trial) {
        DesignConfig c;
        const double f0 = gen.log_uniform(1e8, 1e11);
        c.layout.band = BandSpec::from_center(gen.integer(1, 12), gen.uniform(0.01, 3.0), f0, gen.uniform(0.01, 0.9),
                                              gen.uniform(10.0, 100.0));
        c.layout.substrate = Substrate{gen.uniform(1.0, 13.0), gen.log_uniform(1e-5, 1e-2), gen.uniform(0.0, 1e-5),
                                       gen.integer(0, 1) ? std::optional<double>(gen.uniform(10, 1e4)) : std::nullopt};
        if (gen.integer(0, 1)) {
            c.layout.tap_ratio = gen.uniform(0.01, 0.99);
        } else {
            c.layout.resonator_z0_ohm = gen.uniform(5.0, 100.0);
        }
        if (gen.integer(0, 1)) c.layout.resonator_eps_eff = gen.uniform(1.0, 12.0);
        if (gen.integer(0, 1)) {
            const double f1 = c.layout.band.f1_hz;
            const double f2 = c.layout.band.f2_hz;
            ZeroInputs z{{0.5 * f1, 0.9 * f1}, {1.1 * f2, 1.5 * f2}, 0.7 * f1, 1.3 * f2, gen.uniform(1.0, 13.0), {}};
            if (gen.integer(0, 1)) z.end_z0_ohm = gen.uniform(20.0, 120.0);
            c.layout.zeros = z;
        }
        c.layout.feed_length_m = gen.uniform(0.0, 0.01);
        c.layout.via_inductance_h = gen.uniform(0.0, 1e-9);
        if (gen.integer(0, 1)) c.grid = GridSpec{0.5 * f0, 1.5 * f0, static_cast<std::size_t>(gen.integer(2, 5000))};
        for (int i = gen.integer(0, 4); i > 0; --i) c.probes_hz.push_back(gen.uniform(0.5 * f0, 1.5 * f0));
        for (int i = gen.integer(0, 3); i > 0; --i) c.tune.targets.push_back({gen.uniform(0.5, 0.8) * f0, gen.uniform(0, 80)});
        c.tune.max_iter = gen.integer(0, 50);
        c.tune.hump_weight = gen.uniform(0.0, 500.0);
        const DesignConfig back = parse_config_text(to_json(c).dump());
        ASSERT_TRUE(back == c) << trial << "\n" << to_json(c).dump(2);
    }
}

TEST(Config, Errors) {
    auto field_of = [](const std::string& text) {
        try {
            parse_config_text(text);
        } catch (const ConfigError& e) {
            return e.field();
        }
        return std::string("<none>");
    };
    nlohmann::json base = to_json(load_config(kConfigs / "ku8.json"));
    base.erase("resolved");

    EXPECT_EQ(field_of(""), "<document>");
    EXPECT_EQ(field_of("   \n"), "<document>");
    EXPECT_EQ(field_of("{ not json"), "<document>");

    auto with = [&](auto&& edit) {
        nlohmann::json d = base;
        edit(d);
        return field_of(d.dump());
    };
    EXPECT_EQ(with([](auto& d) { d["bogus"] = 1; }), "bogus");
    EXPECT_EQ(with([](auto& d) { d["band"]["widths"] = 1; }), "band.widths");
    EXPECT_EQ(with([](auto& d) { d["schema"] = 2; }), "schema");
    EXPECT_EQ(with([](auto& d) { d.erase("schema"); }), "schema");
    EXPECT_EQ(with([](auto& d) { d["substrate"]["h"] = 200; }), "substrate.h");
    EXPECT_EQ(with([](auto& d) { d["substrate"]["h"] = "200 GHz"; }), "substrate.h");
    EXPECT_EQ(with([](auto& d) { d["band"]["f1"] = "15 GHz"; }), "band");
    EXPECT_EQ(with([](auto& d) { d["tap"]["resonator_z0"] = "50 ohm"; }), "tap");
    EXPECT_EQ(with([](auto& d) { d["zeros"]["targets"][0] = "12 GHz"; }), "zeros");
    EXPECT_EQ(with([](auto& d) { d["tune"]["targets"][0]["atten"] = 48; }), "tune.targets[0].atten");
    EXPECT_EQ(with([](auto& d) { d["probes"][1] = "13.2"; }), "probes[1]");
    EXPECT_EQ(with([](auto& d) { d.erase("band"); }), "band");
    EXPECT_EQ(with([](auto& d) { d["grid"]["points"] = 1; }), "grid.points");
    EXPECT_EQ(with([](auto& d) { (void)d; }), "<none>");
    EXPECT_THROW(load_config("/nonexistent/ku8.json"), IoError);
}

TEST(Config, GridFlag) {
    const GridSpec g = parse_grid("8GHz:18GHz:1001");
    EXPECT_NEAR(g.start_hz, 8e9, 1e-3);
    EXPECT_NEAR(g.stop_hz, 18e9, 1e-3);
    EXPECT_EQ(g.points, 1001u);
    EXPECT_THROW(parse_grid("8:18:1001"), ConfigError);
    EXPECT_THROW(parse_grid("8GHz:18GHz"), ConfigError);
    EXPECT_THROW(parse_grid("18GHz:8GHz:11"), ConfigError);
    EXPECT_THROW(parse_grid("8GHz:18GHz:x"), ConfigError);
}

TEST(Units, ParseQuantity) {
    EXPECT_DOUBLE_EQ(parse_quantity("13.2 GHz", Dimension::frequency), 13.2e9);
    EXPECT_DOUBLE_EQ(parse_quantity("4250um", Dimension::length), 4250e-6);
    EXPECT_DOUBLE_EQ(parse_quantity("4250 \xC2\xB5m", Dimension::length), 4250e-6);
    EXPECT_DOUBLE_EQ(parse_quantity("50 \xCE\xA9", Dimension::impedance), 50.0);
    EXPECT_DOUBLE_EQ(parse_quantity("0.5 nH", Dimension::inductance), 0.5e-9);
    EXPECT_DOUBLE_EQ(parse_quantity(" -3 dB ", Dimension::decibel), -3.0);
    EXPECT_THROW(parse_quantity("13.2", Dimension::frequency), DomainError);
    EXPECT_THROW(parse_quantity("13.2 um", Dimension::frequency), DomainError);
    EXPECT_THROW(parse_quantity("13.2 furlongs", Dimension::length), DomainError);
    EXPECT_THROW(parse_quantity("GHz", Dimension::frequency), DomainError);
    const double v = 1.0 / 3.0 * 1e10;
    EXPECT_EQ(parse_quantity(format_si(v, Dimension::frequency), Dimension::frequency), v);
}
