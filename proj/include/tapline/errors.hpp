#pragma once

#include <cstddef>
#include <stdexcept>
#include <string>

namespace tapline {

// Invalid argument to a numeric routine (non-positive order, bandwidth, ...).
class DomainError : public std::domain_error {
public:
    using std::domain_error::domain_error;
};

// Reflection-phase crossings not bracketed by the sweep grid.
class ExtractionError : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

// External Q too small to be realized by a tap on the resonator.
class InfeasibleTapError : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

// Target impedance not bracketed by the width search interval.
class SynthesisError : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

class PlanError : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

class BuildError : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

class MetricsError : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

class ComparisonError : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

// Schema or unit violation in a design config. `field()` names the JSON path.
class ConfigError : public std::runtime_error {
public:
    ConfigError(std::string field, const std::string& what)
        : std::runtime_error(field.empty() ? what : field + ": " + what), field_(std::move(field)) {}

    const std::string& field() const noexcept { return field_; }

private:
    std::string field_;
};

// Malformed Touchstone/CSV text. `line()` is 1-based, 0 when not line-specific.
class ParseError : public std::runtime_error {
public:
    ParseError(std::size_t line, const std::string& what)
        : std::runtime_error(line == 0 ? what : "line " + std::to_string(line) + ": " + what),
          line_(line) {}

    std::size_t line() const noexcept { return line_; }

private:
    std::size_t line_;
};

class IoError : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

}  // namespace tapline
