#pragma once

// First-order (single-scattering) data map.  For a potential
//   V(x, y) = sum_{k,i} kappa_{k,i}(x) ytilde_k(y) sigma_i
// the normalized first-order datum attached to a mode pair (m, p) at energy E
// is linear in the profile transforms vhat_{k,i} evaluated at the exchanged
// frequency xi_{m,p} = xi_m - xi_p:
//
//   data(m, p, E) = -sgn(E) / (2 sqrt(uw)) * sum_k [
//         2 sqrt(n q)   * O(n-1, q-1; k) * (vhat_{k,0} + vhat_{k,3})
//       + sqrt(2n) * w  * O(n-1, q  ; k) * (vhat_{k,1} - i vhat_{k,2})
//       + sqrt(2q) * u  * O(n,   q-1; k) * (vhat_{k,1} + i vhat_{k,2})
//       + u * w         * O(n,   q  ; k) * (vhat_{k,0} - vhat_{k,3}) ]
//
// with u = E - xi_m, w = E - xi_p and O the triple overlaps of two ladder
// functions with one profile function.  Both modes must be propagating; the
// map is valid for either sign of E.

#include <cmath>
#include <complex>
#include <stdexcept>

#include <Eigen/Dense>

#include "modes.hpp"
#include "overlaps.hpp"
#include "potential.hpp"

namespace dirac_scatter {

namespace detail {

// Signed crossing frequency of a propagating mode; level 0 rides xi = -E.
inline double propagating_xi(const ModeIndex& idx, double energy) {
    if (idx.n == 0) return -energy;
    const cxd lam = lambda_n(energy, idx.n);
    if (lam.imag() != 0.0)
        throw std::invalid_argument("propagating_xi: mode is evanescent at this energy");
    return idx.eps * lam.real();
}

}  // namespace detail

// Coefficients of the linear data map for one sample: data = sum over
// components i and channels k of coeff(i, k) * vhat_{k,i}(xi_mp).
struct BornRow {
    double xi_mp = 0.0;
    Eigen::MatrixXcd coeff;  // 4 x (profile_max + 1)
};

inline BornRow born_row(const TripleOverlapTensor& overlaps, int profile_max,
                        const ModeIndex& m, const ModeIndex& p, double energy) {
    if (energy == 0.0) throw std::invalid_argument("born_row: zero energy");
    const int n = m.n;
    const int q = p.n;
    const double xim = detail::propagating_xi(m, energy);
    const double xip = detail::propagating_xi(p, energy);
    const double u = energy - xim;
    const double w = energy - xip;
    const double uw = u * w;  // positive for propagating modes at real energies
    const double sgn = (energy > 0.0) ? 1.0 : -1.0;
    const cxd pref = cxd(-sgn / (2.0 * std::sqrt(uw)), 0.0);

    BornRow row;
    row.xi_mp = xim - xip;
    row.coeff = Eigen::MatrixXcd::Zero(4, profile_max + 1);
    const cxd iunit(0.0, 1.0);
    for (int k = 0; k <= profile_max; ++k) {
        if (n >= 1 && q >= 1) {
            const cxd c = pref * 2.0 * std::sqrt(static_cast<double>(n) * q) *
                          overlaps(n - 1, q - 1, k);
            row.coeff(0, k) += c;
            row.coeff(3, k) += c;
        }
        if (n >= 1) {
            const cxd c = pref * std::sqrt(2.0 * n) * w * overlaps(n - 1, q, k);
            row.coeff(1, k) += c;
            row.coeff(2, k) -= iunit * c;
        }
        if (q >= 1) {
            const cxd c = pref * std::sqrt(2.0 * q) * u * overlaps(n, q - 1, k);
            row.coeff(1, k) += c;
            row.coeff(2, k) += iunit * c;
        }
        {
            const cxd c = pref * uw * overlaps(n, q, k);
            row.coeff(0, k) += c;
            row.coeff(3, k) -= c;
        }
    }
    return row;
}

// First-order datum for a concrete potential.  The overlap tensor must have
// been built with the potential's y-family and profile_max >= rep.k_max.
inline cxd born_data(const PotentialRep& rep, const TripleOverlapTensor& overlaps,
                     const ModeIndex& m, const ModeIndex& p, double energy) {
    const BornRow row = born_row(overlaps, rep.k_max, m, p, energy);
    cxd acc = 0.0;
    for (int i = 0; i <= 3; ++i) {
        for (int k = 0; k <= rep.k_max; ++k) {
            acc += row.coeff(i, k) * potential_profile_fourier(rep, k, i, row.xi_mp);
        }
    }
    return acc;
}

// The same datum in scattering normalization: shat = data / (i * Lambda_q),
// directly comparable with normalized_scatter_data of the nonlinear solve.
inline cxd born_shat(const PotentialRep& rep, const TripleOverlapTensor& overlaps,
                     const ModeIndex& m, const ModeIndex& p, double energy) {
    const cxd lq = lambda_n(energy, p.n);
    if (lq.imag() != 0.0)
        throw std::invalid_argument("born_shat: column mode is evanescent");
    return born_data(rep, overlaps, m, p, energy) / (cxd(0.0, 1.0) * lq);
}

}  // namespace dirac_scatter
