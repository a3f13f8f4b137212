#pragma once

// Weighted-norm stability of the scalar first-order data map.  Writing
// a_k = |vhat_k| / sqrt(k!) for the channel coefficients and
// b_s = 2^{s/2} |R_s| / sqrt(s!) for the reduced data R_s = sum_k O(0,s;k)
// vhat_k, the kernel satisfies
//   2^{s/2} O(0, s; k) / sqrt(s!) = (-1)^t (2^{-t} / t!) / sqrt(k!),
//   t = (s - k) / 2,
// so the data sequence is a unit-diagonal triangular map of the channel
// sequence whose off-diagonal column mass is sum_{t>=1} 2^{-t}/t! = sqrt(e)-1.
// On the sector vhat_0 = 0 (sums over s >= 1, k >= 1) this yields
//   (2 - sqrt(e)) ||v|| <= ||data|| <= sqrt(e) ||v||
// in the weighted ell-1 norms below.

#include <cmath>
#include <complex>
#include <stdexcept>

#include <Eigen/Dense>

#include "overlaps.hpp"

namespace dirac_scatter {

inline double channel_weight(int k) {
    double acc = 1.0;
    for (int j = 2; j <= k; ++j) acc /= std::sqrt(static_cast<double>(j));
    return acc;  // 1 / sqrt(k!)
}

inline double data_weight(int s) { return std::pow(2.0, 0.5 * s) * channel_weight(s); }

// Weighted channel norm of a coefficient sequence (index = channel).
inline double channel_norm(const Eigen::VectorXcd& vhat) {
    double acc = 0.0;
    for (Eigen::Index k = 0; k < vhat.size(); ++k)
        acc += channel_weight(static_cast<int>(k)) * std::abs(vhat(k));
    return acc;
}

// Reduced scalar data R_s = sum_k O(0, s; k) vhat_k for s = 1..s_max.
inline Eigen::VectorXcd ground_kernel_data(const Eigen::VectorXcd& vhat, int s_max) {
    Eigen::VectorXcd r = Eigen::VectorXcd::Zero(s_max + 1);
    for (int s = 1; s <= s_max; ++s) {
        cxd acc = 0.0;
        for (int k = s % 2; k < static_cast<int>(vhat.size()) && k <= s; k += 2)
            acc += overlap_ground_closed(s, k) * vhat(k);
        r(s) = acc;
    }
    return r;
}

// Weighted data norm over s >= 1.  The tail coefficients decay like 2^{-t}/t!,
// so a modest margin beyond the top channel captures the sum to roundoff.
inline double data_norm(const Eigen::VectorXcd& vhat, int s_max = -1) {
    if (s_max < 0) s_max = static_cast<int>(vhat.size()) - 1 + 40;
    const Eigen::VectorXcd r = ground_kernel_data(vhat, s_max);
    double acc = 0.0;
    for (int s = 1; s <= s_max; ++s) acc += data_weight(s) * std::abs(r(s));
    return acc;
}

struct SandwichCheck {
    double lower = 0.0;  // (2 - sqrt(e)) * channel_norm
    double value = 0.0;  // data_norm
    double upper = 0.0;  // sqrt(e) * channel_norm
    bool ok = false;
};

// Check the two-sided bound for one restricted coefficient sequence
// (vhat(0) must vanish; the bound is a statement about channels k >= 1).
inline SandwichCheck sandwich_check(const Eigen::VectorXcd& vhat, double slack = 1e-12) {
    if (vhat.size() > 0 && std::abs(vhat(0)) != 0.0)
        throw std::invalid_argument("sandwich_check: requires vhat_0 = 0");
    SandwichCheck out;
    const double sqrte = std::sqrt(std::exp(1.0));
    const double vn = channel_norm(vhat);
    out.lower = (2.0 - sqrte) * vn;
    out.upper = sqrte * vn;
    out.value = data_norm(vhat);
    const double pad = slack * std::max(1.0, vn);
    out.ok = (out.value >= out.lower - pad) && (out.value <= out.upper + pad);
    return out;
}

}  // namespace dirac_scatter
