#include "tapline/response.hpp"

#include "tapline/errors.hpp"

#include <algorithm>
#include <cmath>

namespace tapline {

void FrequencyResponse::resize(std::size_t n) {
    freq_hz.resize(n);
    s11.resize(n);
    s21.resize(n);
    s12.resize(n);
    s22.resize(n);
}

void FrequencyResponse::validate() const {
    const std::size_t n = freq_hz.size();
    if (s11.size() != n || s21.size() != n || s12.size() != n || s22.size() != n) {
        throw DomainError("FrequencyResponse: column sizes differ from grid size");
    }
    validate_grid(freq_hz);
    if (!(z_ref_ohm > 0.0)) throw DomainError("FrequencyResponse: reference impedance must be > 0");
}

double to_db(cplx s) {
    return 20.0 * std::log10(std::max(std::abs(s), 1e-150));
}

void validate_grid(const std::vector<double>& grid_hz) {
    if (grid_hz.empty()) throw DomainError("frequency grid is empty");
    if (!(grid_hz.front() > 0.0)) throw DomainError("frequency grid must be positive");
    for (std::size_t i = 1; i < grid_hz.size(); ++i) {
        if (!(grid_hz[i] > grid_hz[i - 1])) {
            throw DomainError("frequency grid must be strictly increasing");
        }
    }
}

std::vector<double> linear_grid(double start_hz, double stop_hz, std::size_t points) {
    if (points < 2) throw DomainError("linear_grid: need at least 2 points");
    if (!(start_hz > 0.0 && stop_hz > start_hz)) throw DomainError("linear_grid: requires 0 < start < stop");
    std::vector<double> grid(points);
    const double step = (stop_hz - start_hz) / static_cast<double>(points - 1);
    for (std::size_t i = 0; i < points; ++i) grid[i] = start_hz + step * static_cast<double>(i);
    grid.back() = stop_hz;
    return grid;
}

std::vector<double> default_grid(double f0_hz) {
    return linear_grid(0.5 * f0_hz, 1.6 * f0_hz, 1601);
}

}  // namespace tapline
