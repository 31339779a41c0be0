#pragma once

#include <string>
#include <string_view>

namespace tapline {

inline constexpr double kSpeedOfLight = 299'792'458.0;    // m/s
inline constexpr double kFreeSpaceImpedance = 376.730313668;  // ohm
inline constexpr double kPi = 3.14159265358979323846;

enum class Dimension { frequency, length, impedance, inductance, decibel };

// Parses "<number> <unit>" (space optional) into SI: Hz, m, ohm, H, dB.
// Accepted units: Hz kHz MHz GHz | m mm um µm nm mil | ohm Ω | H mH uH nH pH | dB.
// Throws DomainError when the unit is missing or belongs to another dimension.
double parse_quantity(std::string_view text, Dimension dim);

// SI value with its base unit, printed with round-trip precision ("1.32e+10 Hz").
std::string format_si(double value, Dimension dim);

const char* si_unit(Dimension dim);

}  // namespace tapline
