#pragma once

// Transverse mode structure of the free domain-wall operator
//   H0 = D_x sigma3 - D_y sigma2 + y sigma1 = [[D_x, a],[a*, -D_x]],  a = d/dy + y.
//
// At energy E the channel of oscillator level n carries modes
//   phi_{n,eps}(y) = c (sqrt(2n) phi_{n-1}, (E - xi) phi_n)^T,  xi = eps * Lambda_n(E),
//   c = 1/sqrt(2n + |E - xi|^2),
// with Lambda_n(E) = sgn(E) sqrt(E^2-2n) for E^2 > 2n (propagating) and
// i sqrt(2n-E^2) otherwise (evanescent). Level 0 carries the single mode (0,-) with
// xi = -E. The x-dependence of channel n goes through theta_n = i Lambda_n.

#include <Eigen/Dense>
#include <cmath>
#include <complex>
#include <stdexcept>
#include <vector>

#include "hermite.hpp"

namespace dirac_scatter {

using cxd = std::complex<double>;

inline constexpr double kBandEdgeTol = 1e-9;

// Longitudinal wavenumber branch. Positive-energy propagating channels get
// Lambda > 0; the sgn(E) factor keeps mode normalizers real at negative energies.
inline cxd lambda_n(double E, int n) {
    const double disc = E * E - 2.0 * n;
    if (std::abs(disc) < kBandEdgeTol)
        throw std::invalid_argument("lambda_n: energy at band edge |E^2-2n| < 1e-9, n=" +
                                    std::to_string(n));
    if (disc > 0) return cxd((E >= 0 ? 1.0 : -1.0) * std::sqrt(disc), 0.0);
    return cxd(0.0, std::sqrt(-disc));
}

// theta_n = i Lambda_n: oscillatory e^{i Lambda |x|} for propagating channels,
// decaying e^{-sqrt(2n-E^2)|x|} for evanescent ones.
inline cxd theta_n(double E, int n) { return cxd(0, 1) * lambda_n(E, n); }

struct ModeIndex {
    int n = 0;   // oscillator level
    int eps = -1; // +1 or -1; level 0 only carries eps = -1
    bool operator==(const ModeIndex& o) const { return n == o.n && eps == o.eps; }
};

struct Mode {
    ModeIndex idx;
    double energy = 0.0;
    cxd xi;            // longitudinal wavenumber eps * Lambda_n (level 0: -E)
    bool propagating = false;
    double c = 0.0;    // normalizer 1/sqrt(2n + |E-xi|^2)
    cxd comp1;         // coefficient of phi_{n-1} in the upper spinor component
    cxd comp2;         // coefficient of phi_n in the lower spinor component
};

inline Mode make_mode(double E, ModeIndex idx) {
    if (E == 0.0) throw std::invalid_argument("make_mode: E must be nonzero");
    if (idx.n < 0) throw std::invalid_argument("make_mode: negative level");
    if (idx.eps != 1 && idx.eps != -1) throw std::invalid_argument("make_mode: eps must be +-1");
    if (idx.n == 0 && idx.eps != -1)
        throw std::invalid_argument("make_mode: level 0 carries only the eps=-1 mode");
    Mode m;
    m.idx = idx;
    m.energy = E;
    m.xi = (idx.n == 0) ? cxd(-E, 0.0) : cxd(idx.eps) * lambda_n(E, idx.n);
    m.propagating = E * E > 2.0 * idx.n;
    const cxd emx = cxd(E, 0.0) - m.xi;
    m.c = 1.0 / std::sqrt(2.0 * idx.n + std::norm(emx));
    m.comp1 = cxd(m.c * std::sqrt(2.0 * idx.n), 0.0);
    m.comp2 = m.c * emx;
    return m;
}

// All modes of levels 0..n_levels in canonical order: eps=-1 for n=0..n_levels,
// then eps=+1 for n=1..n_levels.
inline std::vector<Mode> build_modes(double E, int n_levels) {
    if (n_levels < 0) throw std::invalid_argument("build_modes: n_levels < 0");
    std::vector<Mode> modes;
    modes.reserve(2 * n_levels + 1);
    for (int n = 0; n <= n_levels; ++n) modes.push_back(make_mode(E, {n, -1}));
    for (int n = 1; n <= n_levels; ++n) modes.push_back(make_mode(E, {n, +1}));
    return modes;
}

inline int mode_position(const std::vector<Mode>& modes, ModeIndex idx) {
    for (std::size_t i = 0; i < modes.size(); ++i)
        if (modes[i].idx == idx) return static_cast<int>(i);
    throw std::invalid_argument("mode_position: mode (" + std::to_string(idx.n) + "," +
                                std::to_string(idx.eps) + ") not in list");
}

// Overlap P_n = <phi_{n,+}, phi_{n,-}>_y (conjugate-linear in the first argument).
// Propagating: sqrt(2n)/E; evanescent: (2E^2 + 2iE mu)/(4n) with |P_n| = E/sqrt(2n) < 1.
inline cxd mode_overlap(const Mode& plus, const Mode& minus) {
    return std::conj(plus.comp1) * minus.comp1 + std::conj(plus.comp2) * minus.comp2;
}

// Dual (biorthogonal) pair for one level:
//   theta_{n,-} = (phi_{n,-} - P_n phi_{n,+}) / (1-|P_n|^2),
//   theta_{n,+} = (phi_{n,+} - conj(P_n) phi_{n,-}) / (1-|P_n|^2),
// so that <theta_{n,s}, phi_{n,s'}> = delta_{ss'}. Level 0: theta_{0,-} = phi_{0,-}.
struct DualPair {
    int n = 0;
    cxd P = 0.0;
    // theta_{n,-} = dm_minus * phi_{n,-} + dm_plus * phi_{n,+}
    cxd dm_minus = 1.0, dm_plus = 0.0;
    // theta_{n,+} = dp_plus * phi_{n,+} + dp_minus * phi_{n,-}
    cxd dp_plus = 1.0, dp_minus = 0.0;
};

inline DualPair dual_pair(double E, int n) {
    DualPair d;
    d.n = n;
    if (n == 0) return d;
    const Mode plus = make_mode(E, {n, +1});
    const Mode minus = make_mode(E, {n, -1});
    d.P = mode_overlap(plus, minus);
    const double denom = 1.0 - std::norm(d.P);
    if (denom < 1e-8)
        throw std::runtime_error("dual_pair: |P_n| too close to 1 at level " + std::to_string(n));
    d.dm_minus = 1.0 / denom;
    d.dm_plus = -d.P / denom;
    d.dp_plus = 1.0 / denom;
    d.dp_minus = -std::conj(d.P) / denom;
    return d;
}

// Transverse basis bundle: levels 0..n_y, Gauss-Hermite rule (weight e^{-y^2})
// with node count >= 2 n_y + 8, and the value table at the nodes.
struct HermiteBasis {
    int n_y = 0;
    QuadratureRule rule;      // nodes y_i, weights for weight function e^{-y^2}
    Eigen::MatrixXd values;   // phi_n(y_i), rows = nodes, cols = n
    explicit HermiteBasis(int ny, int nodes = -1) : n_y(ny) {
        if (ny < 0) throw std::invalid_argument("HermiteBasis: n_y < 0");
        const int count = nodes > 0 ? nodes : std::max(2 * ny + 8, 24);
        rule = gauss_hermite(count);
        values = hermite_table(ny, rule.nodes);
    }
};

} // namespace dirac_scatter
