#pragma once

// Reference potentials for the reconstruction experiments: a block-letter "H"
// occupancy raster, a separable cosine/Gaussian bump, and linear ramps on a
// chosen Pauli component.  Each builder returns the L2 projection of the
// continuous target onto a finite coefficient representation, which is the
// exact reference a reconstruction on that representation is compared against.

#include <array>
#include <cmath>
#include <stdexcept>

#include "potential.hpp"

namespace dirac_scatter {

// 9 rows (top to bottom) by 7 columns.
inline const std::array<std::array<int, 7>, 9>& letter_h_bitmap() {
    static const std::array<std::array<int, 7>, 9> grid = {{
        {1, 1, 0, 0, 0, 1, 1},
        {1, 1, 0, 0, 0, 1, 1},
        {1, 1, 0, 0, 0, 1, 1},
        {1, 1, 1, 1, 1, 1, 1},
        {1, 1, 1, 1, 1, 1, 1},
        {1, 1, 1, 1, 1, 1, 1},
        {1, 1, 0, 0, 0, 1, 1},
        {1, 1, 0, 0, 0, 1, 1},
        {1, 1, 0, 0, 0, 1, 1},
    }};
    return grid;
}

// Bilinear sample of the zero-padded bitmap.  (u, v) in [0,1]^2 spans the
// raster with u across columns and v down rows; outside that square the
// value is 0, and the padding makes the interpolant continuous at the edges.
inline double bilinear_bitmap_value(double u, double v) {
    const auto& grid = letter_h_bitmap();
    const int rows = static_cast<int>(grid.size());
    const int cols = static_cast<int>(grid[0].size());
    if (u < 0.0 || u > 1.0 || v < 0.0 || v > 1.0) return 0.0;
    auto cell = [&](int r, int c) -> double {
        if (r < 0 || r >= rows || c < 0 || c >= cols) return 0.0;
        return static_cast<double>(grid[static_cast<std::size_t>(r)][static_cast<std::size_t>(c)]);
    };
    // cell centers at (i + 0.5) / n, zero padding half a cell beyond the rim
    const double fc = u * cols - 0.5;
    const double fr = v * rows - 0.5;
    const int c0 = static_cast<int>(std::floor(fc));
    const int r0 = static_cast<int>(std::floor(fr));
    const double tc = fc - c0;
    const double tr = fr - r0;
    return (1 - tr) * ((1 - tc) * cell(r0, c0) + tc * cell(r0, c0 + 1)) +
           tr * ((1 - tc) * cell(r0 + 1, c0) + tc * cell(r0 + 1, c0 + 1));
}

// Letter-H occupancy mapped onto [x_L, x_R] x [-y_half, y_half], amplitude
// `amp` on the sigma_0 component.
inline PotentialRep make_letter_h_target(const Interval& iv, YFamily family, int j_max,
                                         int k_max, double amp = 1.0, double y_half = 3.0) {
    if (y_half <= 0.0) throw std::invalid_argument("make_letter_h_target: y_half <= 0");
    const double width = iv.right - iv.left;
    auto component = [&](int i, double x, double y) -> double {
        if (i != 0) return 0.0;
        const double u = (x - iv.left) / width;
        const double v = (y_half - y) / (2.0 * y_half);  // top row at y = +y_half
        return amp * bilinear_bitmap_value(u, v);
    };
    return project_potential(component, iv, family, j_max, k_max);
}

// pi^{1/4} cos(2 pi x / (x_R - x_L)) e^{-y^2/2} on the sigma_0 component.
inline PotentialRep make_cosine_bump_target(const Interval& iv, YFamily family, int j_max,
                                            int k_max, double amp = 1.0) {
    const double width = iv.right - iv.left;
    auto component = [&](int i, double x, double y) -> double {
        if (i != 0) return 0.0;
        return amp * std::pow(M_PI, 0.25) * std::cos(2.0 * M_PI * x / width) *
               std::exp(-0.5 * y * y);
    };
    return project_potential(component, iv, family, j_max, k_max);
}

// (x + shift) on one Pauli component, constant in y.
inline PotentialRep make_ramp_target(const Interval& iv, YFamily family, int j_max, int k_max,
                                     int pauli_component, double shift = 0.1) {
    if (pauli_component < 0 || pauli_component > 3)
        throw std::invalid_argument("make_ramp_target: component out of range");
    auto component = [&](int i, double x, double /*y*/) -> double {
        if (i != pauli_component) return 0.0;
        return x + shift;
    };
    return project_potential(component, iv, family, j_max, k_max);
}

}  // namespace dirac_scatter
