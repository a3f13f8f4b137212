#pragma once

// Galerkin matrices of the outgoing/incoming free resolvent on a slab.
//
// In the channel of oscillator level n the free operator reduces to the 2×2
// longitudinal system with symbol [[xi - E, sqrt(2n)], [sqrt(2n), -xi - E]].
// Its outgoing Green's kernel on the line is, with theta = i Lambda_n(E),
//     g11(X) = t(X) + E s(X),      g12(X) = g21(X) = sqrt(2n) s(X),
//     g22(X) = -t(X) + E s(X),
//     s(X) = -(1/(2 theta)) e^{theta |X|},   t(X) = (i/2) sgn(X) e^{theta |X|},
// where X = x - x0.  Component 1 of level-n spinors rides on phi_{n-1}, so in
// the product basis e_c ⊗ phi_k ⊗ Ptil_j the diagonal blocks use channel
// n = k+1 for component 1 and n = k for component 2 (level 0 has component 2
// only, with theta_0 = iE).  The incoming kernel is the conjugate transpose.

#include <cmath>
#include <complex>
#include <stdexcept>
#include <vector>

#include <Eigen/Dense>

#include "dirac_scatter/legendre.hpp"
#include "dirac_scatter/modes.hpp"
#include "dirac_scatter/quadrature.hpp"

namespace dirac_scatter {

// Index layout of the slab coefficient space: component c in {0,1} (upper,
// lower spinor entry), transverse level k = 0..k_max, Legendre degree
// j = 0..j_max, flattened with j fastest.
struct SlabBasis {
  Interval interval{-0.5, 0.5};
  int k_max = 0;
  int j_max = 0;

  int x_count() const { return j_max + 1; }
  int y_count() const { return k_max + 1; }
  int size() const { return 2 * y_count() * x_count(); }
  int index(int c, int k, int j) const {
    if (c < 0 || c > 1 || k < 0 || k > k_max || j < 0 || j > j_max)
      throw std::out_of_range("SlabBasis::index");
    return (c * y_count() + k) * x_count() + j;
  }
  bool operator==(const SlabBasis& o) const {
    return interval == o.interval && k_max == o.k_max && j_max == o.j_max;
  }
};

// Continuous channel kernel, used directly by tests.
inline Eigen::Matrix2cd channel_greens_kernel(double E, int n, double X) {
  const cxd th = theta_n(E, n);
  const cxd decay = std::exp(th * std::abs(X));
  const double sg = (X > 0) - (X < 0);
  const cxd s = -decay / (2.0 * th);
  const cxd t = cxd(0, 0.5) * sg * decay;
  const double cn = std::sqrt(2.0 * n);
  Eigen::Matrix2cd g;
  g << t + E * s, cn * s, cn * s, -t + E * s;
  return g;
}

// One-sided exponential moments A(theta)_{j j'} =
//   ∬_{x > x0} Ptil_j(x) e^{theta (x - x0)} Ptil_{j'}(x0) dx dx0
// over the slab, by tensorized Gauss–Legendre on the triangle {x0 < x}
// mapped to the unit square via x = a + d u, x0 = a + d u v (Jacobian d² u).
inline Eigen::MatrixXcd exponential_triangle_moments(const Interval& iv, int j_max, cxd theta,
                                                     int order = -1) {
  const double d = iv.width();
  if (order < 0)
    order = j_max + 7 + static_cast<int>(std::ceil(0.5 * std::abs(theta) * d));
  const QuadratureRule gl = gauss_legendre(order, 0.0, 1.0);
  Eigen::MatrixXcd acc = Eigen::MatrixXcd::Zero(j_max + 1, j_max + 1);
  for (std::size_t i = 0; i < gl.nodes.size(); ++i) {
    const double u = gl.nodes[i];
    const double x = iv.left + d * u;
    const Eigen::VectorXd pj = legendre_orthonormal_values(j_max, iv, x);
    Eigen::VectorXcd inner = Eigen::VectorXcd::Zero(j_max + 1);
    for (std::size_t l = 0; l < gl.nodes.size(); ++l) {
      const double v = gl.nodes[l];
      const double x0 = iv.left + d * u * v;
      const cxd ker = std::exp(theta * (d * u * (1.0 - v)));
      inner += (gl.weights[l] * ker) * legendre_orthonormal_values(j_max, iv, x0);
    }
    acc.noalias() += (gl.weights[i] * d * d * u) * pj * inner.transpose();
  }
  return acc;
}

// Galerkin matrices of the scalar kernels s and t for one decay rate theta.
struct PairKernels {
  Eigen::MatrixXcd s;  // of s(X) = -(1/(2 theta)) e^{theta |X|}
  Eigen::MatrixXcd t;  // of t(X) = (i/2) sgn(X) e^{theta |X|}
};

inline PairKernels pair_kernel_matrices(const Interval& iv, int j_max, cxd theta,
                                        int order = -1) {
  const Eigen::MatrixXcd a = exponential_triangle_moments(iv, j_max, theta, order);
  PairKernels pk;
  pk.s = (-0.5 / theta) * (a + a.transpose());
  pk.t = cxd(0, 0.5) * (a - a.transpose());
  return pk;
}

struct GreensOperator {
  SlabBasis basis;
  double energy = 0.0;
  Eigen::MatrixXcd outgoing;
  Eigen::MatrixXcd incoming;  // adjoint of outgoing
};

inline GreensOperator build_greens(const SlabBasis& basis, double E, int order = -1) {
  const int K = basis.k_max;
  const int J = basis.j_max;
  const int nx = basis.x_count();
  GreensOperator op;
  op.basis = basis;
  op.energy = E;
  op.outgoing = Eigen::MatrixXcd::Zero(basis.size(), basis.size());

  // Kernel matrices per channel level n = 0..K.  The free dynamics is
  // truncated to those channels: component 1 of transverse index K belongs to
  // channel K+1, whose modes lie outside the basis, so its kernel block is
  // dropped.  This keeps the solve exactly consistent with the 2K+1 canonical
  // modes that transfer matrices and the merge formulas carry across
  // interfaces (a cascade then agrees with the direct solve to roundoff), and
  // those rows and columns of the operator decouple harmlessly.
  std::vector<PairKernels> ker;
  ker.reserve(K + 1);
  for (int n = 0; n <= K; ++n)
    ker.push_back(pair_kernel_matrices(basis.interval, J, theta_n(E, n), order));

  auto block = [&](int c, int k, int cc, int kk) {
    return op.outgoing.block(basis.index(c, k, 0), basis.index(cc, kk, 0), nx, nx);
  };
  for (int k = 0; k <= K; ++k) {
    if (k + 1 <= K)
      block(0, k, 0, k) = ker[k + 1].t + E * ker[k + 1].s;  // component 1, channel k+1
    block(1, k, 1, k) = -ker[k].t + E * ker[k].s;           // component 2, channel k
  }
  for (int n = 1; n <= K; ++n) {
    const double cn = std::sqrt(2.0 * n);
    block(0, n - 1, 1, n) = cn * ker[n].s;
    block(1, n, 0, n - 1) = cn * ker[n].s;
  }
  op.incoming = op.outgoing.adjoint();
  return op;
}

}  // namespace dirac_scatter
