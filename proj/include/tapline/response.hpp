#pragma once

#include <complex>
#include <cstddef>
#include <vector>

namespace tapline {

using cplx = std::complex<double>;

/// Two-port S-parameters on a strictly increasing frequency grid.
struct FrequencyResponse {
    std::vector<double> freq_hz;
    std::vector<cplx> s11;
    std::vector<cplx> s21;
    std::vector<cplx> s12;
    std::vector<cplx> s22;
    double z_ref_ohm = 50.0;
    // Grid indices where the solver could not produce a value (S set to NaN).
    std::vector<std::size_t> flagged;

    std::size_t size() const { return freq_hz.size(); }

    void resize(std::size_t n);

    /// Throws DomainError on unsorted/duplicate grid or mismatched column sizes.
    void validate() const;
};

/// 20 log10 |s|, floored at -3000 dB so exact zeros stay finite.
double to_db(cplx s);

/// Throws DomainError unless the grid is non-empty, positive and strictly increasing.
void validate_grid(const std::vector<double>& grid_hz);

std::vector<double> linear_grid(double start_hz, double stop_hz, std::size_t points);

/// 1601 linear points over [0.5 f0, 1.6 f0].
std::vector<double> default_grid(double f0_hz);

}  // namespace tapline
