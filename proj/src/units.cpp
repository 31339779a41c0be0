#include "tapline/units.hpp"

#include "tapline/errors.hpp"

#include <array>
#include <cctype>
#include <charconv>
#include <cmath>
#include <cstdio>
#include <utility>

namespace tapline {
namespace {

struct UnitEntry {
    std::string_view name;
    Dimension dim;
    double scale;
};

constexpr std::array<UnitEntry, 19> kUnits{{
    {"Hz", Dimension::frequency, 1.0},
    {"kHz", Dimension::frequency, 1e3},
    {"MHz", Dimension::frequency, 1e6},
    {"GHz", Dimension::frequency, 1e9},
    {"m", Dimension::length, 1.0},
    {"mm", Dimension::length, 1e-3},
    {"um", Dimension::length, 1e-6},
    {"\xC2\xB5m", Dimension::length, 1e-6},
    {"nm", Dimension::length, 1e-9},
    {"mil", Dimension::length, 25.4e-6},
    {"ohm", Dimension::impedance, 1.0},
    {"\xCE\xA9", Dimension::impedance, 1.0},
    {"H", Dimension::inductance, 1.0},
    {"mH", Dimension::inductance, 1e-3},
    {"uH", Dimension::inductance, 1e-6},
    {"nH", Dimension::inductance, 1e-9},
    {"pH", Dimension::inductance, 1e-12},
    {"dB", Dimension::decibel, 1.0},
    {"Ohm", Dimension::impedance, 1.0},
}};

const char* dimension_name(Dimension dim) {
    switch (dim) {
        case Dimension::frequency: return "frequency";
        case Dimension::length: return "length";
        case Dimension::impedance: return "impedance";
        case Dimension::inductance: return "inductance";
        case Dimension::decibel: return "decibel";
    }
    return "?";
}

std::string_view trim(std::string_view s) {
    while (!s.empty() && std::isspace(static_cast<unsigned char>(s.front()))) s.remove_prefix(1);
    while (!s.empty() && std::isspace(static_cast<unsigned char>(s.back()))) s.remove_suffix(1);
    return s;
}

}  // namespace

double parse_quantity(std::string_view text, Dimension dim) {
    const std::string_view s = trim(text);
    double value = 0.0;
    const auto [ptr, ec] = std::from_chars(s.data(), s.data() + s.size(), value);
    if (ec != std::errc{} || ptr == s.data()) {
        throw DomainError("expected '<number> <unit>', got '" + std::string(text) + "'");
    }
    const std::string_view unit = trim(std::string_view(ptr, static_cast<std::size_t>(s.data() + s.size() - ptr)));
    if (unit.empty()) {
        throw DomainError("missing " + std::string(dimension_name(dim)) + " unit in '" + std::string(text) + "'");
    }
    for (const auto& entry : kUnits) {
        if (entry.name == unit) {
            if (entry.dim != dim) {
                throw DomainError("unit '" + std::string(unit) + "' is not a " + dimension_name(dim) + " unit");
            }
            return value * entry.scale;
        }
    }
    throw DomainError("unknown unit '" + std::string(unit) + "'");
}

const char* si_unit(Dimension dim) {
    switch (dim) {
        case Dimension::frequency: return "Hz";
        case Dimension::length: return "m";
        case Dimension::impedance: return "ohm";
        case Dimension::inductance: return "H";
        case Dimension::decibel: return "dB";
    }
    return "";
}

std::string format_si(double value, Dimension dim) {
    char buf[64];
    std::snprintf(buf, sizeof buf, "%.17g %s", value, si_unit(dim));
    return buf;
}

}  // namespace tapline
