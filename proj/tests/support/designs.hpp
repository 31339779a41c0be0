#pragma once

#include "tapline/topology.hpp"

namespace testgen {

// The Ku-band 8-pole design: w = 0.2 about 13.2 GHz on silicon, tap at 0.55.
inline tapline::LayoutInputs ku8_inputs(bool with_zeros) {
    tapline::LayoutInputs in;
    in.band = tapline::BandSpec::from_center(8, 0.2, 13.2e9, 0.2);
    in.substrate = tapline::Substrate{11.9, 200e-6, 0.0, 154.0};
    in.tap_ratio = 0.55;
    in.resonator_eps_eff = 10.79;
    if (with_zeros) in.zeros = tapline::ZeroInputs{{10e9, 11e9}, {15e9, 16e9}, 10.5e9, 15.5e9, 12.49, {}};
    return in;
}

}  // namespace testgen
