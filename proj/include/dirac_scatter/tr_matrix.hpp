#pragma once
// Transfer matrices over a slab, their flux-normalized scattering matrices,
// and the normalized first-order data used by the inversion routines.
//
// A transfer matrix maps incoming mode coefficients (alpha_-(x_R), alpha_+(x_L))
// to outgoing ones (alpha_-(x_L), alpha_+(x_R)).  Canonical mode order lists
// the left-movers for levels 0..K first, then the right-movers for 1..K, so
// the first K+1 rows/columns form the "-" group and the last K the "+" group.

#include <Eigen/Dense>

#include <cmath>
#include <complex>
#include <stdexcept>
#include <vector>

#include "dirac_scatter/greens.hpp"
#include "dirac_scatter/potential.hpp"
#include "dirac_scatter/slab.hpp"

namespace dirac_scatter {

struct TransferMatrix {
  double energy = 0.0;
  Interval interval{-0.5, 0.5};
  int level_max = 0;
  std::vector<TransferMode> modes;  // canonical order, size 2*level_max + 1
  Eigen::MatrixXcd matrix;          // outgoing <- incoming

  int mode_count() const { return static_cast<int>(modes.size()); }
};

// Transfer matrix of the zero potential: each mode picks up the phase
// e^{i Lambda_n d} crossing the slab (a real decay factor when evanescent).
inline TransferMatrix free_transfer(double energy, const Interval& iv, int level_max) {
  TransferMatrix t;
  t.energy = energy;
  t.interval = iv;
  t.level_max = level_max;
  t.modes = canonical_transfer_modes(energy, level_max);
  const int m = t.mode_count();
  t.matrix = Eigen::MatrixXcd::Zero(m, m);
  for (int i = 0; i < m; ++i)
    t.matrix(i, i) = std::exp(cxd(0, 1) * t.modes[static_cast<std::size_t>(i)].lambda * iv.width());
  return t;
}

// Full solve on one slab: assemble the potential in the Galerkin basis, solve
// the volume integral equation, and read off the transfer matrix.
inline TransferMatrix solve_slab_transfer(const PotentialRep& rep, int sol_k_max, int sol_j_max,
                                          double energy, int order = -1) {
  SlabBasis basis{rep.interval, sol_k_max, sol_j_max};
  SlabAssembler assembler(basis, rep.family, rep.j_max, rep.k_max);
  const Eigen::MatrixXcd vhat = assembler.potential_matrix(rep);
  const SlabEnergyContext ctx = build_energy_context(energy, basis, order);
  TransferMatrix t;
  t.energy = energy;
  t.interval = basis.interval;
  t.level_max = sol_k_max;
  t.modes = ctx.modes;
  t.matrix = slab_transfer(ctx, vhat);
  return t;
}

struct ScatteringMatrix {
  double energy = 0.0;
  Interval interval{-0.5, 0.5};
  std::vector<TransferMode> modes;  // propagating modes only, canonical order
  Eigen::MatrixXcd matrix;          // unitary; identity at V = 0

  int mode_count() const { return static_cast<int>(modes.size()); }
};

// Flux-normalized restriction to propagating modes, with the free crossing
// phases centered at the slab midpoint so that V = 0 yields the identity:
//   S_{m,p} = sqrt(Lambda_n / Lambda_q) e^{-i (Lambda_n + Lambda_q) d / 2} T_{m,p}.
inline ScatteringMatrix extract_smatrix(const TransferMatrix& t) {
  ScatteringMatrix s;
  s.energy = t.energy;
  s.interval = t.interval;
  std::vector<int> keep;
  for (int i = 0; i < t.mode_count(); ++i)
    if (t.modes[static_cast<std::size_t>(i)].propagating) {
      keep.push_back(i);
      s.modes.push_back(t.modes[static_cast<std::size_t>(i)]);
    }
  const int m = static_cast<int>(keep.size());
  const double d = t.interval.width();
  s.matrix.resize(m, m);
  for (int a = 0; a < m; ++a) {
    const double la = t.modes[static_cast<std::size_t>(keep[static_cast<std::size_t>(a)])].lambda.real();
    for (int b = 0; b < m; ++b) {
      const double lb = t.modes[static_cast<std::size_t>(keep[static_cast<std::size_t>(b)])].lambda.real();
      const cxd phase = std::exp(cxd(0, -0.5 * (la + lb) * d));
      s.matrix(a, b) = std::sqrt(la / lb) * phase *
                       t.matrix(keep[static_cast<std::size_t>(a)], keep[static_cast<std::size_t>(b)]);
    }
  }
  return s;
}

inline double mode_entry(const Interval& iv, const TransferMode& m) {
  return m.idx.eps > 0 ? iv.left : iv.right;
}
inline double mode_exit(const Interval& iv, const TransferMode& m) {
  return m.idx.eps > 0 ? iv.right : iv.left;
}

// Normalized scattering data extracted from a transfer matrix.  The slab
// solver references the incident wave at its entry face and measures the
// outgoing amplitude at its exit face; rephasing both to the absolute
// convention alpha e^{i xi x} and stripping the free crossing gives
//   A_{m,p} = (T - T_free)_{m,p} e^{-i xi_m x_exit(m)} e^{+i xi_p x_entry(p)},
// and the first-order data with the closed-form linearized limit is
//   Shat_{m,p} = -(Lambda_n / Lambda_q) A_{m,p}  (n from row m, q from column p).
inline Eigen::MatrixXcd normalized_scatter_data(const TransferMatrix& t) {
  const int m = t.mode_count();
  Eigen::MatrixXcd a = t.matrix;
  const double d = t.interval.width();
  for (int i = 0; i < m; ++i)
    a(i, i) -= std::exp(cxd(0, 1) * t.modes[static_cast<std::size_t>(i)].lambda * d);
  for (int r = 0; r < m; ++r) {
    const TransferMode& mr = t.modes[static_cast<std::size_t>(r)];
    const cxd row_phase = std::exp(cxd(0, -1) * mr.xi * mode_exit(t.interval, mr));
    for (int c = 0; c < m; ++c) {
      const TransferMode& mc = t.modes[static_cast<std::size_t>(c)];
      const cxd col_phase = std::exp(cxd(0, 1) * mc.xi * mode_entry(t.interval, mc));
      a(r, c) *= -(mr.lambda / mc.lambda) * row_phase * col_phase;
    }
  }
  return a;
}

}  // namespace dirac_scatter
