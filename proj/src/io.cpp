#include "tapline/io.hpp"

#include "tapline/errors.hpp"

#include <algorithm>
#include <array>
#include <cctype>
#include <charconv>
#include <cmath>
#include <cstdio>
#include <fstream>
#include <sstream>
#include <string_view>
#include <vector>

namespace tapline {
namespace {

constexpr double kDegToRad = 3.14159265358979323846 / 180.0;

enum class DataFormat { ri, ma, db };

std::string upper(std::string_view s) {
    std::string out(s);
    for (char& c : out) c = static_cast<char>(std::toupper(static_cast<unsigned char>(c)));
    return out;
}

std::vector<std::string_view> split_ws(std::string_view s) {
    std::vector<std::string_view> out;
    std::size_t i = 0;
    while (i < s.size()) {
        while (i < s.size() && std::isspace(static_cast<unsigned char>(s[i]))) ++i;
        const std::size_t start = i;
        while (i < s.size() && !std::isspace(static_cast<unsigned char>(s[i]))) ++i;
        if (i > start) out.push_back(s.substr(start, i - start));
    }
    return out;
}

bool to_double(std::string_view tok, double& out) {
    const auto [ptr, ec] = std::from_chars(tok.data(), tok.data() + tok.size(), out);
    return ec == std::errc{} && ptr == tok.data() + tok.size();
}

void append_number(std::string& out, double v, int digits) {
    char buf[40];
    std::snprintf(buf, sizeof buf, "%.*g", digits, v);
    out += buf;
}

cplx from_pair(double a, double b, DataFormat fmt) {
    switch (fmt) {
        case DataFormat::ri: return {a, b};
        case DataFormat::ma: return std::polar(a, b * kDegToRad);
        case DataFormat::db: return std::polar(std::pow(10.0, a / 20.0), b * kDegToRad);
    }
    return {};
}

}  // namespace

std::string format_touchstone(const FrequencyResponse& resp) {
    resp.validate();
    std::string out = "! two-port S-parameters\n# GHz S RI R ";
    append_number(out, resp.z_ref_ohm, 12);
    out += '\n';
    for (std::size_t i = 0; i < resp.size(); ++i) {
        append_number(out, resp.freq_hz[i] / 1e9, 15);
        for (const cplx* s : {&resp.s11[i], &resp.s21[i], &resp.s12[i], &resp.s22[i]}) {
            out += ' ';
            append_number(out, s->real(), 12);
            out += ' ';
            append_number(out, s->imag(), 12);
        }
        out += '\n';
    }
    return out;
}

void write_touchstone(const FrequencyResponse& resp, const std::filesystem::path& path) {
    write_text(path, format_touchstone(resp));
}

FrequencyResponse parse_touchstone(const std::string& text) {
    double freq_scale = 1e9;
    DataFormat fmt = DataFormat::ma;
    double z_ref = 50.0;
    bool seen_option = false;

    FrequencyResponse resp;
    std::istringstream in(text);
    std::string raw;
    std::size_t line_no = 0;
    while (std::getline(in, raw)) {
        ++line_no;
        std::string_view line(raw);
        if (const auto bang = line.find('!'); bang != std::string_view::npos) line = line.substr(0, bang);
        const auto toks = split_ws(line);
        if (toks.empty()) continue;

        if (toks.front().front() == '#') {
            if (seen_option) continue;  // only the first option line counts
            seen_option = true;
            std::vector<std::string> opts;
            if (toks.front().size() > 1) opts.push_back(upper(toks.front().substr(1)));
            for (std::size_t i = 1; i < toks.size(); ++i) opts.push_back(upper(toks[i]));
            for (std::size_t i = 0; i < opts.size(); ++i) {
                const std::string& o = opts[i];
                if (o == "HZ") freq_scale = 1.0;
                else if (o == "KHZ") freq_scale = 1e3;
                else if (o == "MHZ") freq_scale = 1e6;
                else if (o == "GHZ") freq_scale = 1e9;
                else if (o == "RI") fmt = DataFormat::ri;
                else if (o == "MA") fmt = DataFormat::ma;
                else if (o == "DB") fmt = DataFormat::db;
                else if (o == "S") continue;
                else if (o == "Y" || o == "Z" || o == "H" || o == "G") {
                    throw ParseError(line_no, "option line: only S parameters are supported");
                } else if (o == "R") {
                    if (i + 1 >= opts.size() || !to_double(opts[i + 1], z_ref) || !(z_ref > 0.0)) {
                        throw ParseError(line_no, "option line: R needs a positive reference impedance");
                    }
                    ++i;
                } else {
                    throw ParseError(line_no, "option line: unrecognized token '" + o + "'");
                }
            }
            continue;
        }

        if (toks.size() != 9) {
            throw ParseError(line_no, "expected 9 columns for a two-port data line, got " + std::to_string(toks.size()));
        }
        std::array<double, 9> v{};
        for (std::size_t i = 0; i < 9; ++i) {
            if (!to_double(toks[i], v[i])) throw ParseError(line_no, "bad number '" + std::string(toks[i]) + "'");
        }
        const double f = v[0] * freq_scale;
        if (!resp.freq_hz.empty() && !(f > resp.freq_hz.back())) {
            throw ParseError(line_no, "frequencies must be strictly increasing");
        }
        resp.freq_hz.push_back(f);
        resp.s11.push_back(from_pair(v[1], v[2], fmt));
        resp.s21.push_back(from_pair(v[3], v[4], fmt));
        resp.s12.push_back(from_pair(v[5], v[6], fmt));
        resp.s22.push_back(from_pair(v[7], v[8], fmt));
    }
    if (resp.freq_hz.empty()) throw ParseError(line_no, "no data lines");
    resp.z_ref_ohm = z_ref;
    return resp;
}

FrequencyResponse read_touchstone(const std::filesystem::path& path) {
    return parse_touchstone(read_text(path));
}

std::string format_csv(const FrequencyResponse& resp) {
    resp.validate();
    std::string out = "freq_hz,s11_re,s11_im,s21_re,s21_im,s21_db\n";
    for (std::size_t i = 0; i < resp.size(); ++i) {
        const double cols[] = {resp.freq_hz[i], resp.s11[i].real(), resp.s11[i].imag(),
                               resp.s21[i].real(), resp.s21[i].imag(), to_db(resp.s21[i])};
        for (std::size_t c = 0; c < 6; ++c) {
            if (c) out += ',';
            append_number(out, cols[c], 17);
        }
        out += '\n';
    }
    return out;
}

void write_csv(const FrequencyResponse& resp, const std::filesystem::path& path) {
    write_text(path, format_csv(resp));
}

FrequencyResponse parse_csv(const std::string& text) {
    std::istringstream in(text);
    std::string raw;
    std::size_t line_no = 0;
    FrequencyResponse resp;
    bool header = false;
    while (std::getline(in, raw)) {
        ++line_no;
        if (!raw.empty() && raw.back() == '\r') raw.pop_back();
        if (raw.empty()) continue;
        if (!header) {
            if (raw != "freq_hz,s11_re,s11_im,s21_re,s21_im,s21_db") throw ParseError(line_no, "unexpected CSV header");
            header = true;
            continue;
        }
        std::array<double, 6> v{};
        std::size_t col = 0;
        std::string_view rest(raw);
        while (true) {
            const auto comma = rest.find(',');
            const std::string_view tok = rest.substr(0, comma);
            if (col >= 6 || !to_double(tok, v[col])) throw ParseError(line_no, "expected 6 numeric columns");
            ++col;
            if (comma == std::string_view::npos) break;
            rest = rest.substr(comma + 1);
        }
        if (col != 6) throw ParseError(line_no, "expected 6 numeric columns");
        if (!resp.freq_hz.empty() && !(v[0] > resp.freq_hz.back())) {
            throw ParseError(line_no, "frequencies must be strictly increasing");
        }
        resp.freq_hz.push_back(v[0]);
        resp.s11.emplace_back(v[1], v[2]);
        resp.s21.emplace_back(v[3], v[4]);
    }
    if (resp.freq_hz.empty()) throw ParseError(line_no, "no data rows");
    resp.s12 = resp.s21;
    resp.s22 = resp.s11;
    return resp;
}

FrequencyResponse read_csv(const std::filesystem::path& path) {
    return parse_csv(read_text(path));
}

void write_text(const std::filesystem::path& path, const std::string& text) {
    std::ofstream out(path, std::ios::binary | std::ios::trunc);
    if (!out) throw IoError("cannot open '" + path.string() + "' for writing");
    out << text;
    out.flush();
    if (!out) throw IoError("write to '" + path.string() + "' failed");
}

std::string read_text(const std::filesystem::path& path) {
    std::ifstream in(path, std::ios::binary);
    if (!in) throw IoError("cannot read '" + path.string() + "'");
    std::ostringstream ss;
    ss << in.rdbuf();
    return ss.str();
}

}  // namespace tapline
