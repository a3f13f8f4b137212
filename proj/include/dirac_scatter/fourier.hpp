#pragma once

// Closed-form Fourier transforms of the Legendre basis through spherical Bessel
// functions:  integral over [-1,1] of P_j(t) e^{izt} dt = 2 i^j j_j(z),
// valid for complex z (j_j extended by its power series / recurrences).
//
// These supply (a) the slab projections of incoming waves e^{i xi (x - x_ref)} and
// (b) the transforms vhat(xi) of potentials expanded in Legendre polynomials.

#include <Eigen/Dense>
#include <cmath>
#include <complex>
#include <stdexcept>
#include <vector>

#include "legendre.hpp"

namespace dirac_scatter {

using cxd = std::complex<double>;

// Spherical Bessel j_0..j_nmax of (possibly complex) argument z.
// Upward recurrence where stable (n < |z|), Miller's downward recurrence otherwise.
inline std::vector<cxd> spherical_bessel_j(int nmax, cxd z) {
    if (nmax < 0) throw std::invalid_argument("spherical_bessel_j: nmax < 0");
    std::vector<cxd> j(nmax + 1);
    const double az = std::abs(z);

    if (az < 1e-8) {
        // Series around z = 0: j_n(z) = z^n/(2n+1)!! (1 - z^2/(2(2n+3)) + ...).
        cxd zn = 1.0;
        double dfact = 1.0; // (2n+1)!!
        for (int n = 0; n <= nmax; ++n) {
            if (n > 0) {
                zn *= z;
                dfact *= (2.0 * n + 1.0);
            }
            const cxd z2 = z * z;
            j[n] = zn / dfact *
                   (1.0 - z2 / (2.0 * (2.0 * n + 3.0)) +
                    z2 * z2 / (8.0 * (2.0 * n + 3.0) * (2.0 * n + 5.0)));
        }
        return j;
    }

    const cxd j0 = std::sin(z) / z;
    j[0] = j0;
    if (nmax == 0) return j;
    const cxd j1 = std::sin(z) / (z * z) - std::cos(z) / z;
    j[1] = j1;

    int n_up = std::min<int>(nmax, static_cast<int>(az)); // safe upward range
    for (int n = 1; n < n_up; ++n)
        j[n + 1] = (2.0 * n + 1.0) / z * j[n] - j[n - 1];
    if (n_up >= nmax) return j;

    // Downward (Miller) for the remaining orders, normalized against j_0.
    const int start = nmax + 16 + static_cast<int>(az);
    cxd fkp1 = 0.0, fk = 1e-280;
    std::vector<cxd> f(nmax + 1);
    for (int k = start; k >= 0; --k) {
        const cxd fkm1 = (2.0 * k + 3.0) / z * fk - fkp1;
        fkp1 = fk;
        fk = fkm1;
        if (k <= nmax) f[k] = fk;
        const double afk = std::abs(fk);
        if (afk > 1e200) { // rescale to avoid overflow
            fk /= afk;
            fkp1 /= afk;
            for (int m = k; m <= nmax; ++m) f[m] /= afk;
        }
    }
    const cxd scale = j0 / f[0];
    for (int n = 0; n <= nmax; ++n) j[n] = f[n] * scale;
    // Keep the directly computed low orders (more accurate than Miller near n=0).
    j[0] = j0;
    j[1] = j1;
    for (int n = 1; n < n_up; ++n) j[n + 1] = (2.0 * n + 1.0) / z * j[n] - j[n - 1];
    return j;
}

// Projections of a plane wave on the orthonormal Legendre family:
//   ell_j(xi, x_ref) = integral over [a,b] of Ptil_j(x) e^{i xi (x - x_ref)} dx
//                    = sqrt((2j+1)/d) * d * e^{i xi (x_c - x_ref)} * i^j * j_j(xi d/2).
inline Eigen::VectorXcd planewave_legendre_projection(int jmax, const Interval& iv,
                                                      cxd xi, double x_ref) {
    const double d = iv.width();
    const cxd phase = std::exp(cxd(0, 1) * xi * cxd(iv.mid() - x_ref, 0.0));
    const std::vector<cxd> bes = spherical_bessel_j(jmax, xi * (d / 2.0));
    Eigen::VectorXcd ell(jmax + 1);
    cxd ipow = 1.0;
    for (int j = 0; j <= jmax; ++j) {
        ell(j) = std::sqrt((2.0 * j + 1.0) / d) * d * phase * ipow * bes[j];
        ipow *= cxd(0, 1);
    }
    return ell;
}

// Fourier transform vhat(xi) = integral of v(x) e^{-i xi x} dx of a profile expanded
// as v(x) = sum_j coeff_j Ptil_j(x) on [a,b] (orthonormal Legendre convention):
//   vhat(xi) = sum_j coeff_j * sqrt((2j+1)/d) * d * e^{-i xi x_c} * (-i)^j * j_j(xi d/2).
inline cxd legendre_profile_fourier(const Eigen::VectorXd& coeff, const Interval& iv, double xi) {
    const int jmax = static_cast<int>(coeff.size()) - 1;
    const double d = iv.width();
    const cxd phase = std::exp(cxd(0, -xi * iv.mid()));
    const std::vector<cxd> bes = spherical_bessel_j(jmax, cxd(xi * d / 2.0, 0.0));
    cxd acc = 0.0;
    cxd mipow = 1.0; // (-i)^j
    for (int j = 0; j <= jmax; ++j) {
        acc += coeff(j) * std::sqrt((2.0 * j + 1.0) / d) * d * phase * mipow * bes[j];
        mipow *= cxd(0, -1);
    }
    return acc;
}

} // namespace dirac_scatter
