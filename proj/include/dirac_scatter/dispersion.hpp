#pragma once

// Kinematics of the linearized data map: which (mode, mode, energy) samples
// place a given spatial frequency xi on the data, and how the sampled
// frequency moves with energy along each sample family.

#include <cmath>
#include <stdexcept>
#include <vector>

#include "modes.hpp"
#include "quadrature.hpp"

namespace dirac_scatter {

// Positive energy root at which a level pair (n, q) can exchange the spatial
// frequency xi:  E^2 = xi^2/4 + (n + q) + (n - q)^2 / xi^2.
inline double pair_energy(int n, int q, double xi) {
    if (xi == 0.0) throw std::invalid_argument("pair_energy: xi must be nonzero");
    const double nq = static_cast<double>(n - q);
    return std::sqrt(0.25 * xi * xi + static_cast<double>(n + q) + nq * nq / (xi * xi));
}

// A frequency xi is admissible for level pairs up to max_level when it avoids
// the band-edge set {sqrt(2j)} where some channel momentum degenerates.
inline bool admissible_xi(double xi, int max_level, double margin = 1e-6) {
    if (!(xi > 0.0)) return false;
    for (int j = 1; j <= max_level; ++j) {
        if (std::abs(xi - std::sqrt(2.0 * j)) < margin) return false;
    }
    return true;
}

// One way of realizing xi_m - xi_p = xi with both modes propagating.
struct DispersionSolution {
    int eps_m = 0;   // branch label of the row mode (level n)
    int eps_p = 0;   // branch label of the column mode (level q)
    double energy = 0.0;
};

// All (eps_m, eps_p, E) with eps_m*Lambda_n(E) - eps_p*Lambda_q(E) = xi and
// both levels propagating.  Level 0 carries the single branch xi = -E, which
// we report with eps = -1.  Any solution energy satisfies
// E^2 = pair_energy(n, q, xi)^2, so it suffices to test the candidates +-E.
inline std::vector<DispersionSolution> resolve_dispersion(int n, int q, double xi,
                                                          double tol = 1e-9) {
    if (n < 0 || q < 0) throw std::invalid_argument("resolve_dispersion: negative level");
    if (xi == 0.0) throw std::invalid_argument("resolve_dispersion: xi must be nonzero");
    std::vector<DispersionSolution> out;
    if (n == 0 && q == 0) return out;  // xi_m - xi_p is identically zero

    const double ebar = pair_energy(n, q, xi);
    for (const double energy : {ebar, -ebar}) {
        if (energy * energy <= 2.0 * std::max(n, q)) continue;  // needs both propagating
        const cxd ln = lambda_n(energy, n);
        const cxd lq = lambda_n(energy, q);
        if (std::abs(ln.imag()) > 0.0 || std::abs(lq.imag()) > 0.0) continue;
        const std::vector<int> eps_n = (n == 0) ? std::vector<int>{-1} : std::vector<int>{-1, 1};
        const std::vector<int> eps_q = (q == 0) ? std::vector<int>{-1} : std::vector<int>{-1, 1};
        for (int em : eps_n) {
            const double xim = (n == 0) ? -energy : em * ln.real();
            for (int ep : eps_q) {
                const double xip = (q == 0) ? -energy : ep * lq.real();
                if (std::abs((xim - xip) - xi) < tol * std::max(1.0, std::abs(xi))) {
                    out.push_back({em, ep, energy});
                }
            }
        }
    }
    return out;
}

// Frequency sweep along the lowest-level-diagonal family xi(E) = 2*Lambda_1(E).
inline double scan_jacobian_diag(double energy) {
    const cxd l1 = lambda_n(energy, 1);
    if (l1.imag() != 0.0) throw std::invalid_argument("scan_jacobian_diag: level 1 evanescent");
    return 2.0 * energy / l1.real();
}

// Frequency sweep along the level-(0,s) family xi(E) = E + eps*Lambda_s(E):
// dxi/dE = (Lambda_s + eps*E)/Lambda_s.
inline double scan_jacobian_level(int s, int eps, double energy) {
    const cxd ls = lambda_n(energy, s);
    if (ls.imag() != 0.0) throw std::invalid_argument("scan_jacobian_level: level evanescent");
    return (ls.real() + eps * energy) / ls.real();
}

// Integral of f against dxi over an energy window, i.e. the change of
// variables int f(E(xi)) dxi = int f(E) |dxi/dE| dE, by Gauss-Legendre.
template <typename F, typename J>
inline double discrete_stability_integral(const F& f_of_energy, const J& jacobian,
                                          double e_lo, double e_hi, int nodes = 64) {
    const QuadratureRule gl = gauss_legendre(nodes, e_lo, e_hi);
    double acc = 0.0;
    for (Eigen::Index i = 0; i < gl.nodes.size(); ++i) {
        acc += gl.weights[i] * f_of_energy(gl.nodes[i]) * std::abs(jacobian(gl.nodes[i]));
    }
    return acc;
}

}  // namespace dirac_scatter
