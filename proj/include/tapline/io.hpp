#pragma once

#include "tapline/response.hpp"

#include <filesystem>
#include <string>

namespace tapline {

/// Touchstone v1.1 two-port text: `# GHz S RI R <z_ref>`, then
/// freq S11 S21 S12 S22 as real/imag pairs, 12 significant digits.
std::string format_touchstone(const FrequencyResponse& resp);
void write_touchstone(const FrequencyResponse& resp, const std::filesystem::path& path);

/// Accepts RI, MA and DB data in Hz/kHz/MHz/GHz. Missing option fields take
/// the format defaults (GHz S MA R 50). Throws ParseError with the line number.
FrequencyResponse parse_touchstone(const std::string& text);
FrequencyResponse read_touchstone(const std::filesystem::path& path);

/// `freq_hz,s11_re,s11_im,s21_re,s21_im,s21_db`, 17 significant digits.
std::string format_csv(const FrequencyResponse& resp);
void write_csv(const FrequencyResponse& resp, const std::filesystem::path& path);

/// S12 = S21 and S22 = S11 on read, since the CSV carries one direction.
FrequencyResponse parse_csv(const std::string& text);
FrequencyResponse read_csv(const std::filesystem::path& path);

void write_text(const std::filesystem::path& path, const std::string& text);
std::string read_text(const std::filesystem::path& path);

}  // namespace tapline
