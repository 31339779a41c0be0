#pragma once

#include <utility>
#include <vector>

namespace tapline {

/// Designer's band input. All frequencies in Hz, impedance in ohm.
struct BandSpec {
    int order = 0;
    double ripple_db = 0.0;
    double f1_hz = 0.0;
    double f2_hz = 0.0;
    double f0_hz = 0.0;
    double z0_ohm = 50.0;

    /// f0 defaults to the arithmetic mean of the edges.
    static BandSpec from_edges(int order, double ripple_db, double f1_hz, double f2_hz, double z0_ohm = 50.0);

    /// Edges placed arithmetically about f0: f1,2 = f0 (1 -/+ w/2).
    static BandSpec from_center(int order, double ripple_db, double f0_hz, double w, double z0_ohm = 50.0);

    double fractional_bandwidth() const;

    /// Throws DomainError naming the violated invariant.
    void validate() const;

    bool operator==(const BandSpec&) const = default;
};

/// Normalized lowpass element values g_0 .. g_{n+1}.
struct Prototype {
    std::vector<double> g;

    int order() const { return static_cast<int>(g.size()) - 2; }
    double load() const { return g.back(); }
};

/// Equal-ripple (Chebyshev) lowpass prototype.
Prototype chebyshev_gvalues(int n, double ripple_db);

double fractional_bandwidth(double f1_hz, double f2_hz, double f0_hz);

/// Band edges where the narrowband mapping (f/f0 - f0/f)/w reaches -1 and +1.
/// These are the equal-ripple edges of the coupling-matrix response.
std::pair<double, double> ripple_band(double f0_hz, double w);

}  // namespace tapline
