#pragma once

// Legendre polynomials P_j on a reference interval [a,b] (standard normalization
// P_j(1) = 1 in the mapped variable t = 2(x-a)/(b-a) - 1) and the L^2-orthonormal
// family Ptil_j(x) = sqrt((2j+1)/(b-a)) P_j(t) used as the longitudinal basis.

#include <Eigen/Dense>
#include <cmath>
#include <stdexcept>

namespace dirac_scatter {

struct Interval {
    double left = -0.5;
    double right = 0.5;
    double width() const { return right - left; }
    double mid() const { return 0.5 * (left + right); }
    // Map x in [left,right] to t in [-1,1].
    double to_reference(double x) const { return 2.0 * (x - left) / width() - 1.0; }
    bool operator==(const Interval& o) const { return left == o.left && right == o.right; }
};

// P_0..P_jmax at reference point t in [-1,1] (Bonnet recurrence).
inline Eigen::VectorXd legendre_values_reference(int jmax, double t) {
    if (jmax < 0) throw std::invalid_argument("legendre_values_reference: jmax < 0");
    Eigen::VectorXd p(jmax + 1);
    p(0) = 1.0;
    if (jmax >= 1) p(1) = t;
    for (int j = 1; j < jmax; ++j)
        p(j + 1) = ((2.0 * j + 1.0) * t * p(j) - j * p(j - 1)) / (j + 1.0);
    return p;
}

// Unnormalized P_j(2(x-a)/(b-a) - 1).
inline Eigen::VectorXd legendre_values(int jmax, const Interval& iv, double x) {
    return legendre_values_reference(jmax, iv.to_reference(x));
}

// Orthonormal Ptil_j on [a,b]: integral of Ptil_i Ptil_j over the interval = delta_ij.
inline Eigen::VectorXd legendre_orthonormal_values(int jmax, const Interval& iv, double x) {
    Eigen::VectorXd p = legendre_values(jmax, iv, x);
    for (int j = 0; j <= jmax; ++j) p(j) *= std::sqrt((2.0 * j + 1.0) / iv.width());
    return p;
}

// Table of orthonormal values, rows = nodes, columns = j.
inline Eigen::MatrixXd legendre_orthonormal_table(int jmax, const Interval& iv,
                                                  const Eigen::VectorXd& x) {
    Eigen::MatrixXd table(x.size(), jmax + 1);
    for (Eigen::Index i = 0; i < x.size(); ++i)
        table.row(i) = legendre_orthonormal_values(jmax, iv, x(i)).transpose();
    return table;
}

// Derivative d/dx of the orthonormal family, via the reference-derivative recurrence
// (1-t^2) P_j'(t) = j (P_{j-1}(t) - t P_j(t)) evaluated stably through
// P_j'(t) = sum over lower even/odd terms; here the direct recurrence
// P_{j+1}' = P_{j-1}' + (2j+1) P_j is used.
inline Eigen::VectorXd legendre_orthonormal_derivatives(int jmax, const Interval& iv, double x) {
    const double t = iv.to_reference(x);
    Eigen::VectorXd p = legendre_values_reference(jmax, t);
    Eigen::VectorXd dp(jmax + 1);
    dp(0) = 0.0;
    if (jmax >= 1) dp(1) = 1.0;
    for (int j = 1; j < jmax; ++j) dp(j + 1) = (j >= 1 ? dp(j - 1) : 0.0) + (2.0 * j + 1.0) * p(j);
    const double chain = 2.0 / iv.width();
    for (int j = 0; j <= jmax; ++j)
        dp(j) *= chain * std::sqrt((2.0 * j + 1.0) / iv.width());
    return dp;
}

} // namespace dirac_scatter
