#include "tapline/prototype.hpp"

#include "tapline/errors.hpp"
#include "tapline/units.hpp"

#include <cmath>

namespace tapline {

BandSpec BandSpec::from_edges(int order, double ripple_db, double f1_hz, double f2_hz, double z0_ohm) {
    BandSpec spec{order, ripple_db, f1_hz, f2_hz, 0.5 * (f1_hz + f2_hz), z0_ohm};
    spec.validate();
    return spec;
}

BandSpec BandSpec::from_center(int order, double ripple_db, double f0_hz, double w, double z0_ohm) {
    BandSpec spec{order, ripple_db, f0_hz * (1.0 - 0.5 * w), f0_hz * (1.0 + 0.5 * w), f0_hz, z0_ohm};
    spec.validate();
    return spec;
}

double BandSpec::fractional_bandwidth() const {
    return tapline::fractional_bandwidth(f1_hz, f2_hz, f0_hz);
}

void BandSpec::validate() const {
    if (order < 1) throw DomainError("BandSpec: order must be >= 1");
    if (!(ripple_db > 0.0)) throw DomainError("BandSpec: ripple_db must be > 0");
    if (!(f1_hz > 0.0 && f1_hz < f2_hz)) throw DomainError("BandSpec: requires 0 < f1 < f2");
    if (!(f0_hz > 0.0)) throw DomainError("BandSpec: f0 must be > 0");
    if (!(z0_ohm > 0.0)) throw DomainError("BandSpec: system impedance must be > 0");
    const double w = fractional_bandwidth();
    if (!(w > 0.0 && w < 1.0)) throw DomainError("BandSpec: fractional bandwidth must lie in (0, 1)");
}

Prototype chebyshev_gvalues(int n, double ripple_db) {
    if (n < 1) throw DomainError("chebyshev_gvalues: order must be >= 1");
    if (!(ripple_db > 0.0)) throw DomainError("chebyshev_gvalues: ripple must be > 0 dB");

    const double beta = std::log(1.0 / std::tanh(ripple_db / (40.0 / std::log(10.0))));
    const double gamma = std::sinh(beta / (2.0 * n));

    auto a = [n](int k) { return std::sin((2.0 * k - 1.0) * kPi / (2.0 * n)); };
    auto b = [n, gamma](int k) {
        const double s = std::sin(k * kPi / n);
        return gamma * gamma + s * s;
    };

    Prototype p;
    p.g.reserve(static_cast<std::size_t>(n) + 2);
    p.g.push_back(1.0);
    p.g.push_back(2.0 * a(1) / gamma);
    for (int k = 2; k <= n; ++k) {
        p.g.push_back(4.0 * a(k - 1) * a(k) / (b(k - 1) * p.g.back()));
    }
    if (n % 2 == 1) {
        p.g.push_back(1.0);
    } else {
        const double c = 1.0 / std::tanh(beta / 4.0);
        p.g.push_back(c * c);
    }
    return p;
}

double fractional_bandwidth(double f1_hz, double f2_hz, double f0_hz) {
    if (!(f1_hz > 0.0 && f2_hz > 0.0 && f0_hz > 0.0)) {
        throw DomainError("fractional_bandwidth: frequencies must be positive");
    }
    if (f2_hz < f1_hz) throw DomainError("fractional_bandwidth: requires f1 <= f2");
    return (f2_hz - f1_hz) / f0_hz;
}

std::pair<double, double> ripple_band(double f0_hz, double w) {
    if (!(f0_hz > 0.0 && w > 0.0)) throw DomainError("ripple_band: f0 and w must be positive");
    const double root = std::sqrt(1.0 + 0.25 * w * w);
    return {f0_hz * (root - 0.5 * w), f0_hz * (root + 0.5 * w)};
}

}  // namespace tapline
