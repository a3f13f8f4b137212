#pragma once

// Orthonormal Hermite functions phi_n(y) = (2^n n! sqrt(pi))^{-1/2} H_n(y) e^{-y^2/2}
// and their rescaled companions phitil_k(y) = 2^{1/2} pi^{1/4} phi_k(sqrt(2) y).
//
// phi_n are the normalized eigenfunctions of the transverse oscillator built from the
// ladder operators a = d/dy + y, a* = -d/dy + y (a a* - a* a = 2, a* a phi_n = 2n phi_n,
// a phi_n = sqrt(2n) phi_{n-1}, a* phi_n = sqrt(2(n+1)) phi_{n+1}).
//
// Evaluation uses the stable three-term recurrence on the normalized functions:
//   phi_{n+1}(y) = y sqrt(2/(n+1)) phi_n(y) - sqrt(n/(n+1)) phi_{n-1}(y).

#include <Eigen/Dense>
#include <cmath>
#include <stdexcept>

#include "quadrature.hpp"

namespace dirac_scatter {

// Values of phi_0..phi_nmax at a single point.
inline Eigen::VectorXd hermite_values(int nmax, double y) {
    if (nmax < 0) throw std::invalid_argument("hermite_values: nmax < 0");
    Eigen::VectorXd phi(nmax + 1);
    phi(0) = std::pow(M_PI, -0.25) * std::exp(-0.5 * y * y);
    if (nmax >= 1) phi(1) = y * std::sqrt(2.0) * phi(0);
    for (int n = 1; n < nmax; ++n)
        phi(n + 1) = y * std::sqrt(2.0 / (n + 1)) * phi(n) -
                     std::sqrt(static_cast<double>(n) / (n + 1)) * phi(n - 1);
    return phi;
}

// Matrix of values phi_n(y_i), rows = nodes, columns = n = 0..nmax.
inline Eigen::MatrixXd hermite_table(int nmax, const Eigen::VectorXd& y) {
    Eigen::MatrixXd table(y.size(), nmax + 1);
    for (Eigen::Index i = 0; i < y.size(); ++i)
        table.row(i) = hermite_values(nmax, y(i)).transpose();
    return table;
}

// Derivative phi_n'(y) = sqrt(2n) phi_{n-1}(y) - y phi_n(y)  (from a phi_n).
inline Eigen::VectorXd hermite_derivatives(int nmax, double y) {
    Eigen::VectorXd phi = hermite_values(nmax, y);
    Eigen::VectorXd dphi(nmax + 1);
    dphi(0) = -y * phi(0);
    for (int n = 1; n <= nmax; ++n) dphi(n) = std::sqrt(2.0 * n) * phi(n - 1) - y * phi(n);
    return dphi;
}

// Rescaled family phitil_k(y) = 2^{1/2} pi^{1/4} phi_k(sqrt(2) y); orthonormal against
// the measure induced by the substitution and used to expand potentials transversely.
inline Eigen::VectorXd hermite_rescaled_values(int kmax, double y) {
    const double c = std::sqrt(2.0) * std::pow(M_PI, 0.25);
    return c * hermite_values(kmax, std::sqrt(2.0) * y);
}

// Transverse profile family of a potential representation.
enum class YFamily {
    hermite,          // phi_k(y)
    hermite_rescaled, // phitil_k(y)
    constant          // 1 (y-independent potentials; only k = 0 is meaningful)
};

inline Eigen::VectorXd yfamily_values(YFamily family, int kmax, double y) {
    switch (family) {
        case YFamily::hermite: return hermite_values(kmax, y);
        case YFamily::hermite_rescaled: return hermite_rescaled_values(kmax, y);
        case YFamily::constant: return Eigen::VectorXd::Ones(kmax + 1);
    }
    throw std::logic_error("yfamily_values: unknown family");
}

} // namespace dirac_scatter
