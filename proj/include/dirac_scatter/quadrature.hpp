#pragma once

// Gaussian quadrature rules (Golub–Welsch: eigenvalues of the Jacobi matrix).
//
// Two families are needed by the solver:
//   * Gauss–Legendre on [-1,1] (mapped to arbitrary [a,b]) for the slab direction,
//   * Gauss–Hermite with weight e^{-y^2} for the transverse direction; integrals of
//     Hermite-function products are taken after factoring out the Gaussian, so the
//     rules are exact for the polynomial part.

#include <Eigen/Dense>
#include <cmath>
#include <stdexcept>
#include <vector>

namespace dirac_scatter {

struct QuadratureRule {
    Eigen::VectorXd nodes;
    Eigen::VectorXd weights;
};

namespace detail {

// Nodes/weights from a symmetric tridiagonal Jacobi matrix with zero diagonal
// and off-diagonal beta[0..n-2]; mu0 is the total mass of the weight function.
inline QuadratureRule golub_welsch(const Eigen::VectorXd& beta, double mu0) {
    const int n = static_cast<int>(beta.size()) + 1;
    Eigen::MatrixXd jacobi = Eigen::MatrixXd::Zero(n, n);
    for (int i = 0; i + 1 < n; ++i) {
        jacobi(i, i + 1) = beta(i);
        jacobi(i + 1, i) = beta(i);
    }
    Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> es(jacobi);
    if (es.info() != Eigen::Success)
        throw std::runtime_error("quadrature: Jacobi eigensolve failed");
    QuadratureRule rule;
    rule.nodes = es.eigenvalues();
    rule.weights.resize(n);
    for (int i = 0; i < n; ++i) {
        const double v0 = es.eigenvectors()(0, i);
        rule.weights(i) = mu0 * v0 * v0;
    }
    return rule;
}

} // namespace detail

// Gauss–Legendre on [-1,1]; exact for polynomials of degree <= 2n-1.
inline QuadratureRule gauss_legendre(int n) {
    if (n < 1) throw std::invalid_argument("gauss_legendre: need at least one node");
    Eigen::VectorXd beta(n - 1);
    for (int k = 1; k < n; ++k) {
        const double kk = static_cast<double>(k);
        beta(k - 1) = kk / std::sqrt(4.0 * kk * kk - 1.0);
    }
    return detail::golub_welsch(beta, 2.0);
}

// Gauss–Legendre mapped to [a,b].
inline QuadratureRule gauss_legendre(int n, double a, double b) {
    QuadratureRule rule = gauss_legendre(n);
    const double mid = 0.5 * (a + b), half = 0.5 * (b - a);
    for (int i = 0; i < n; ++i) {
        rule.nodes(i) = mid + half * rule.nodes(i);
        rule.weights(i) *= half;
    }
    return rule;
}

namespace detail {

// Christoffel sum of squared orthonormal Hermite functions,
//   sum_{k=0}^{n-1} phi_k(t)^2,  phi_0 = pi^{-1/4} e^{-t^2/2},
//   phi_{k+1} = t sqrt(2/(k+1)) phi_k - sqrt(k/(k+1)) phi_{k-1}.
inline double hermite_function_sq_sum(int n, double t) {
    double prev = 0.0;
    double cur = std::pow(M_PI, -0.25) * std::exp(-0.5 * t * t);
    double acc = cur * cur;
    for (int k = 0; k + 1 < n; ++k) {
        const double next =
            t * std::sqrt(2.0 / (k + 1)) * cur - std::sqrt(k / (k + 1.0)) * prev;
        prev = cur;
        cur = next;
        acc += cur * cur;
    }
    return acc;
}

} // namespace detail

// Hermite nodes t_i with the reweighted Christoffel numbers W_i = w_i e^{t_i^2},
// so that integral f(t) dt ~= sum W_i f(t_i) is exact for f = poly * e^{-t^2}
// of polynomial degree <= 2n-1.  Computing W directly through the orthonormal
// Hermite functions avoids the classical weights, whose extreme-node values
// underflow the eigenvector accuracy for n beyond a few dozen.
inline QuadratureRule gauss_hermite_reweighted(int n) {
    if (n < 1) throw std::invalid_argument("gauss_hermite_reweighted: need at least one node");
    if (n > 600)
        throw std::invalid_argument("gauss_hermite_reweighted: node count too large for the "
                                    "function recurrence");
    Eigen::VectorXd beta(std::max(n - 1, 0));
    for (int k = 1; k < n; ++k) beta(k - 1) = std::sqrt(0.5 * k);
    QuadratureRule rule = detail::golub_welsch(beta, std::sqrt(M_PI));
    for (int i = 0; i < n; ++i)
        rule.weights(i) = 1.0 / detail::hermite_function_sq_sum(n, rule.nodes(i));
    return rule;
}

// Gauss–Hermite with weight e^{-y^2} on (-inf, inf); exact for polynomials of
// degree <= 2n-1 against that weight.
inline QuadratureRule gauss_hermite(int n) {
    QuadratureRule rule = gauss_hermite_reweighted(n);
    for (int i = 0; i < n; ++i)
        rule.weights(i) *= std::exp(-rule.nodes(i) * rule.nodes(i));
    return rule;
}

} // namespace dirac_scatter
