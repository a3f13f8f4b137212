#pragma once

// Matrix-valued potential supported on a strip [a,b] × R, expanded as
//
//     V(x, y) = Σ_{j,k,i} kappa_{j,k,i} · Ptil_j(x) · η_k(y) · σ_i,
//
// with Ptil_j the orthonormal Legendre polynomials on [a,b], η_k a transverse
// profile family, and σ_0..σ_3 the identity plus the Pauli matrices.  The
// coefficients kappa are real, so V is Hermitian pointwise.

#include <array>
#include <cmath>
#include <functional>
#include <stdexcept>

#include <Eigen/Dense>

#include "dirac_scatter/fourier.hpp"
#include "dirac_scatter/hermite.hpp"
#include "dirac_scatter/legendre.hpp"
#include "dirac_scatter/overlaps.hpp"
#include "dirac_scatter/quadrature.hpp"

namespace dirac_scatter {

inline Eigen::Matrix2cd pauli_matrix(int i) {
  Eigen::Matrix2cd s;
  switch (i) {
    case 0: s << 1, 0, 0, 1; break;
    case 1: s << 0, 1, 1, 0; break;
    case 2: s << 0, cxd(0, -1), cxd(0, 1), 0; break;
    case 3: s << 1, 0, 0, -1; break;
    default: throw std::invalid_argument("pauli_matrix: index must be 0..3");
  }
  return s;
}

struct PotentialRep {
  Interval interval{-0.5, 0.5};
  YFamily family = YFamily::hermite_rescaled;
  int j_max = 0;
  int k_max = 0;
  std::array<Eigen::MatrixXd, 4> kappa;  // kappa[i] has shape (j_max+1) × (k_max+1)

  bool same_layout(const PotentialRep& o) const {
    return interval == o.interval && family == o.family && j_max == o.j_max && k_max == o.k_max;
  }
};

inline PotentialRep make_zero_potential(const Interval& iv, YFamily family, int j_max, int k_max) {
  if (j_max < 0 || k_max < 0) throw std::invalid_argument("make_zero_potential: negative degree");
  if (family == YFamily::constant && k_max != 0)
    throw std::invalid_argument("make_zero_potential: constant family has a single profile");
  PotentialRep rep;
  rep.interval = iv;
  rep.family = family;
  rep.j_max = j_max;
  rep.k_max = k_max;
  for (auto& m : rep.kappa) m = Eigen::MatrixXd::Zero(j_max + 1, k_max + 1);
  return rep;
}

// Scalar component v_i(x, y); zero outside the supporting strip.
inline double potential_component(const PotentialRep& rep, int i, double x, double y) {
  if (i < 0 || i > 3) throw std::invalid_argument("potential_component: index must be 0..3");
  if (x < rep.interval.left || x > rep.interval.right) return 0.0;
  const Eigen::VectorXd px = legendre_orthonormal_values(rep.j_max, rep.interval, x);
  const Eigen::VectorXd ey = yfamily_values(rep.family, rep.k_max, y);
  return px.dot(rep.kappa[static_cast<std::size_t>(i)] * ey);
}

// Full 2×2 value V(x, y).
inline Eigen::Matrix2cd potential_matrix(const PotentialRep& rep, double x, double y) {
  Eigen::Matrix2cd v = Eigen::Matrix2cd::Zero();
  if (x < rep.interval.left || x > rep.interval.right) return v;
  const Eigen::VectorXd px = legendre_orthonormal_values(rep.j_max, rep.interval, x);
  const Eigen::VectorXd ey = yfamily_values(rep.family, rep.k_max, y);
  for (int i = 0; i <= 3; ++i) {
    const double vi = px.dot(rep.kappa[static_cast<std::size_t>(i)] * ey);
    v += vi * pauli_matrix(i);
  }
  return v;
}

// x-Fourier transform of the (k, i) profile: vhat_{k,i}(xi) = ∫ v_{k,i}(x) e^{-i xi x} dx,
// where v_i(x, y) = Σ_k v_{k,i}(x) η_k(y).
inline cxd potential_profile_fourier(const PotentialRep& rep, int k, int i, double xi) {
  if (i < 0 || i > 3 || k < 0 || k > rep.k_max)
    throw std::invalid_argument("potential_profile_fourier: index out of range");
  const Eigen::VectorXd col = rep.kappa[static_cast<std::size_t>(i)].col(k);
  return legendre_profile_fourier(col, rep.interval, xi);
}

// 2×2 matrix of Fourier components for profile k:
//   [ vhat_0 + vhat_3,  vhat_1 - i vhat_2 ]
//   [ vhat_1 + i vhat_2, vhat_0 - vhat_3 ].
inline Eigen::Matrix2cd potential_fourier_matrix(const PotentialRep& rep, int k, double xi) {
  const cxd v0 = potential_profile_fourier(rep, k, 0, xi);
  const cxd v1 = potential_profile_fourier(rep, k, 1, xi);
  const cxd v2 = potential_profile_fourier(rep, k, 2, xi);
  const cxd v3 = potential_profile_fourier(rep, k, 3, xi);
  Eigen::Matrix2cd m;
  m << v0 + v3, v1 - cxd(0, 1) * v2, v1 + cxd(0, 1) * v2, v0 - v3;
  return m;
}

// In-place rep += scale * other (layouts must match).
inline void potential_axpy(PotentialRep& rep, double scale, const PotentialRep& other) {
  if (!rep.same_layout(other)) throw std::invalid_argument("potential_axpy: layout mismatch");
  for (int i = 0; i <= 3; ++i)
    rep.kappa[static_cast<std::size_t>(i)] += scale * other.kappa[static_cast<std::size_t>(i)];
}

// Coefficient-space Frobenius norm.  For each supported family the y-profiles
// are mutually orthogonal with a k-independent norm, and the x-polynomials are
// orthonormal, so relative coefficient distances equal relative L² distances.
inline double potential_coeff_norm(const PotentialRep& rep) {
  double acc = 0.0;
  for (const auto& m : rep.kappa) acc += m.squaredNorm();
  return std::sqrt(acc);
}

inline double potential_coeff_distance(const PotentialRep& a, const PotentialRep& b) {
  if (!a.same_layout(b)) throw std::invalid_argument("potential_coeff_distance: layout mismatch");
  double acc = 0.0;
  for (int i = 0; i <= 3; ++i)
    acc += (a.kappa[static_cast<std::size_t>(i)] - b.kappa[static_cast<std::size_t>(i)]).squaredNorm();
  return std::sqrt(acc);
}

// Squared L²(R) norm of a single transverse profile, constant across k within
// a family: 1 for the oscillator family, sqrt(2π) for the rescaled family.
inline double yfamily_profile_norm2(YFamily family) {
  switch (family) {
    case YFamily::hermite: return 1.0;
    case YFamily::hermite_rescaled: return std::sqrt(2.0 * std::numbers::pi);
    case YFamily::constant:
      throw std::invalid_argument("yfamily_profile_norm2: constant profile is not square-integrable");
  }
  throw std::invalid_argument("yfamily_profile_norm2: unknown family");
}

// L² projection of component functions f_i(x, y) onto the representation basis.
// Requires a square-integrable profile family (oscillator or rescaled).
inline PotentialRep project_potential(
    const std::function<double(int, double, double)>& component, const Interval& iv,
    YFamily family, int j_max, int k_max, int x_nodes = -1, int y_nodes = -1) {
  PotentialRep rep = make_zero_potential(iv, family, j_max, k_max);
  const double norm2 = yfamily_profile_norm2(family);
  if (x_nodes < 0) x_nodes = 2 * j_max + 12;
  if (y_nodes < 0) y_nodes = 4 * k_max + 40;

  // Transverse rule: integrands are f · (profile), profile ~ poly · e^{-c y²}.
  const double rate = (family == YFamily::hermite) ? 0.5 : 1.0;
  const QuadratureRule yrule = gaussian_decay_rule(y_nodes, rate);
  const QuadratureRule xrule = gauss_legendre(x_nodes, iv.left, iv.right);

  for (std::size_t gx = 0; gx < xrule.nodes.size(); ++gx) {
    const double x = xrule.nodes[gx];
    const Eigen::VectorXd px = legendre_orthonormal_values(j_max, iv, x);
    for (std::size_t gy = 0; gy < yrule.nodes.size(); ++gy) {
      const double y = yrule.nodes[gy];
      const Eigen::VectorXd ey = yfamily_values(family, k_max, y);
      const double w = xrule.weights[gx] * yrule.weights[gy] / norm2;
      for (int i = 0; i <= 3; ++i) {
        const double f = component(i, x, y);
        if (f == 0.0) continue;
        rep.kappa[static_cast<std::size_t>(i)] += (w * f) * px * ey.transpose();
      }
    }
  }
  return rep;
}

// Re-expand the x-profiles on a subinterval of the support.  Profiles are
// polynomials of degree <= j_max, so the Gauss–Legendre projection below is
// exact and the restricted representation reproduces the potential pointwise
// on the subinterval.
inline PotentialRep restrict_potential(const PotentialRep& rep, const Interval& sub) {
  PotentialRep out = make_zero_potential(sub, rep.family, rep.j_max, rep.k_max);
  const QuadratureRule xr = gauss_legendre(rep.j_max + 2, sub.left, sub.right);
  for (Eigen::Index g = 0; g < xr.nodes.size(); ++g) {
    const double x = xr.nodes[g];
    const Eigen::VectorXd p_old = legendre_orthonormal_values(rep.j_max, rep.interval, x);
    const Eigen::VectorXd p_new = legendre_orthonormal_values(rep.j_max, sub, x);
    for (int i = 0; i <= 3; ++i) {
      const Eigen::RowVectorXd profile_vals = p_old.transpose() * rep.kappa[static_cast<std::size_t>(i)];
      out.kappa[static_cast<std::size_t>(i)] += xr.weights[g] * p_new * profile_vals;
    }
  }
  return out;
}

}  // namespace dirac_scatter
