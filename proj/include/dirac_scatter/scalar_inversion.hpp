#pragma once

// Explicit inversion of the first-order data map for scalar potentials
// V = v(x, y) * sigma_0.  At a fixed admissible frequency xi > 0 the level
// pairs (0, s) and (s, 0) each carry exactly one propagating sample; their
// normalized difference isolates the kernel sum
//     R_s = sum_k O(0, s; k) vhat_k(xi),            s >= 1,
// which is triangular in k with diagonal O(0, s; s) = 2^{-s/2}.  The channel
// vhat_0 needs one extra equation, supplied by the level-(1,1) diagonal
// sample:  diag11 = -(3 vhat_0 / 2 + vhat_2 / sqrt(2)) / sqrt(2), whence
//     vhat_0 = -(diag11 + R_2) / sqrt(2).

#include <cmath>
#include <complex>
#include <functional>
#include <stdexcept>

#include <Eigen/Dense>

#include "dispersion.hpp"
#include "modes.hpp"
#include "overlaps.hpp"

namespace dirac_scatter {

// Data oracle: the normalized first-order datum of a mode pair at an energy.
using DataSource = std::function<cxd(const ModeIndex&, const ModeIndex&, double)>;

struct ScalarReduction {
    double xi = 0.0;
    Eigen::VectorXcd r;  // r(s) = R_s for s = 1..s_max; r(0) is unused
    cxd diag11 = 0.0;    // level-(1,1) sample at the energy with 2*Lambda_1 = xi
};

// Collect the samples that feed the scalar inversion for channels 0..k_max.
inline ScalarReduction reduce_scalar(const DataSource& data, double xi, int k_max) {
    if (k_max < 0) throw std::invalid_argument("reduce_scalar: negative k_max");
    const int s_max = std::max(k_max, 2);
    if (!admissible_xi(xi, s_max)) throw std::invalid_argument("reduce_scalar: inadmissible xi");

    ScalarReduction red;
    red.xi = xi;
    red.r = Eigen::VectorXcd::Zero(s_max + 1);
    for (int s = 1; s <= s_max; ++s) {
        const double ebar = xi / 2.0 + s / xi;
        const int eps = (xi * xi > 2.0 * s) ? 1 : -1;
        const ModeIndex ground{0, -1};
        const ModeIndex excited{s, eps};
        const cxd lhs = data(ground, excited, -ebar);  // exchanges +xi at E = -ebar
        const cxd rhs = data(excited, ground, +ebar);  // exchanges +xi at E = +ebar
        red.r(s) = (lhs - rhs) / std::sqrt(2.0 * s + 4.0 * s * s / (xi * xi));
    }
    red.diag11 = data(ModeIndex{1, 1}, ModeIndex{1, -1}, std::sqrt(xi * xi / 4.0 + 2.0));
    return red;
}

// Recover vhat_k(xi) for k = 0..k_max from the reduced samples.
inline Eigen::VectorXcd invert_scalar(const ScalarReduction& red, int k_max) {
    if (k_max + 1 > red.r.size()) throw std::invalid_argument("invert_scalar: too few samples");
    Eigen::VectorXcd vhat = Eigen::VectorXcd::Zero(k_max + 1);
    vhat(0) = -(red.diag11 + red.r(2)) / std::sqrt(2.0);
    for (int s = 1; s <= k_max; ++s) {
        cxd acc = red.r(s);
        for (int k = s - 2; k >= 0; k -= 2) acc -= overlap_ground_closed(s, k) * vhat(k);
        vhat(s) = acc * std::pow(2.0, 0.5 * s);  // divide by the diagonal 2^{-s/2}
    }
    return vhat;
}

}  // namespace dirac_scatter
