#pragma once
// Composition of transfer matrices over adjacent slabs, recovery of the mode
// coefficients at the shared interface, and the recursive cascade solver that
// splits a slab into 2^depth cells, solves each independently, and merges.

#include <Eigen/Dense>

#include <cmath>
#include <cstddef>
#include <stdexcept>
#include <vector>

#include "dirac_scatter/potential.hpp"
#include "dirac_scatter/tr_matrix.hpp"

namespace dirac_scatter {

namespace detail {

struct MergeParts {
  Eigen::MatrixXcd merged;        // transfer matrix over the union interval
  Eigen::MatrixXcd intersection;  // interface coefficients from outer incoming data
};

// Blocks: index 1 = "-" group (size K+1), index 2 = "+" group (size K).
// lhs covers the left interval, rhs the right one.  With multiple-scattering
// resummation across the shared interface:
//   merged_11 = L11 (I - R12 L21)^{-1} R11
//   merged_12 = L11 (I - R12 L21)^{-1} R12 L22 + L12
//   merged_21 = R22 (I - L21 R12)^{-1} L21 R11 + R21
//   merged_22 = R22 (I - L21 R12)^{-1} L22
// and the interface amplitudes from incoming (alpha_-(right), alpha_+(left)):
//   alpha_-(mid) = (I - R12 L21)^{-1} [R11, R12 L22]
//   alpha_+(mid) = (I - L21 R12)^{-1} [L21 R11, L22]
inline MergeParts merge_blocks(const Eigen::MatrixXcd& lhs, const Eigen::MatrixXcd& rhs,
                               int level_max) {
  const int nm = level_max + 1;
  const int np = level_max;
  const auto l11 = lhs.topLeftCorner(nm, nm);
  const auto l12 = lhs.topRightCorner(nm, np);
  const auto l21 = lhs.bottomLeftCorner(np, nm);
  const auto l22 = lhs.bottomRightCorner(np, np);
  const auto r11 = rhs.topLeftCorner(nm, nm);
  const auto r12 = rhs.topRightCorner(nm, np);
  const auto r21 = rhs.bottomLeftCorner(np, nm);
  const auto r22 = rhs.bottomRightCorner(np, np);

  Eigen::MatrixXcd a = -r12 * l21;  // I - R12 L21, size (K+1)^2
  a.diagonal().array() += 1.0;
  Eigen::MatrixXcd b = -l21 * r12;  // I - L21 R12, size K^2
  b.diagonal().array() += 1.0;

  Eigen::MatrixXcd rhs_top(nm, nm + np);
  rhs_top << r11, r12 * l22;
  Eigen::MatrixXcd rhs_bot(np, nm + np);
  rhs_bot << l21 * r11, l22;

  const Eigen::MatrixXcd x = Eigen::PartialPivLU<Eigen::MatrixXcd>(a).solve(rhs_top);
  const Eigen::MatrixXcd y = Eigen::PartialPivLU<Eigen::MatrixXcd>(b).solve(rhs_bot);

  MergeParts parts;
  parts.intersection.resize(nm + np, nm + np);
  parts.intersection << x, y;

  parts.merged.resize(nm + np, nm + np);
  parts.merged.topRows(nm) = l11 * x;
  parts.merged.topRightCorner(nm, np) += l12;
  parts.merged.bottomRows(np) = r22 * y;
  parts.merged.bottomLeftCorner(np, nm) += r21;
  return parts;
}

}  // namespace detail

inline void check_mergeable(const TransferMatrix& lhs, const TransferMatrix& rhs) {
  if (lhs.energy != rhs.energy) throw std::invalid_argument("merge: energy mismatch");
  if (lhs.level_max != rhs.level_max) throw std::invalid_argument("merge: level mismatch");
  const double scale = std::abs(lhs.interval.right) + lhs.interval.width() + rhs.interval.width();
  if (std::abs(lhs.interval.right - rhs.interval.left) > 1e-12 * scale)
    throw std::invalid_argument("merge: intervals not adjacent");
}

// Transfer matrix over the union of two adjacent slabs.
inline TransferMatrix merge_transfer(const TransferMatrix& lhs, const TransferMatrix& rhs) {
  check_mergeable(lhs, rhs);
  TransferMatrix out;
  out.energy = lhs.energy;
  out.interval = Interval{lhs.interval.left, rhs.interval.right};
  out.level_max = lhs.level_max;
  out.modes = lhs.modes;
  out.matrix = detail::merge_blocks(lhs.matrix, rhs.matrix, lhs.level_max).merged;
  return out;
}

// Interface coefficients at the shared edge: the returned matrix maps the
// stacked outer incoming data (alpha_-(rhs right), alpha_+(lhs left)) to
// (alpha_-(edge), alpha_+(edge)).
inline Eigen::MatrixXcd intersection_matrix(const TransferMatrix& lhs, const TransferMatrix& rhs) {
  check_mergeable(lhs, rhs);
  return detail::merge_blocks(lhs.matrix, rhs.matrix, lhs.level_max).intersection;
}

// Cascade solve: the slab is split into cells, each cell solved on its own
// Galerkin basis, and the results merged left to right.  The intersection
// matrix stored at interface i maps (alpha_-(x_{i+1}), alpha_+(x_0)) to the
// coefficients at x_i, which is exactly what the right-to-left recovery sweep
// consumes.
struct CascadeTransfer {
  TransferMatrix total;
  std::vector<Interval> cells;
  std::vector<TransferMatrix> slabs;            // one per cell, left to right
  std::vector<Eigen::MatrixXcd> intersections;  // at x_1 .. x_{N-1}
};

inline CascadeTransfer cascade_transfer(const PotentialRep& rep, int sol_k_max, int sol_j_max,
                                        double energy, int depth, int order = -1) {
  if (depth < 0) throw std::invalid_argument("cascade_transfer: depth must be >= 0");
  const int n_cells = 1 << depth;
  CascadeTransfer c;
  c.cells.reserve(static_cast<std::size_t>(n_cells));
  c.slabs.reserve(static_cast<std::size_t>(n_cells));
  const double a = rep.interval.left;
  const double d = rep.interval.width() / n_cells;
  for (int i = 0; i < n_cells; ++i) {
    const Interval cell{a + i * d, (i + 1 == n_cells) ? rep.interval.right : a + (i + 1) * d};
    c.cells.push_back(cell);
    const PotentialRep local = (n_cells == 1) ? rep : restrict_potential(rep, cell);
    c.slabs.push_back(solve_slab_transfer(local, sol_k_max, sol_j_max, energy, order));
  }
  c.total = c.slabs.front();
  for (int i = 1; i < n_cells; ++i) {
    detail::MergeParts parts =
        detail::merge_blocks(c.total.matrix, c.slabs[static_cast<std::size_t>(i)].matrix,
                             c.total.level_max);
    c.intersections.push_back(std::move(parts.intersection));
    c.total.matrix = std::move(parts.merged);
    c.total.interval.right = c.cells[static_cast<std::size_t>(i)].right;
  }
  return c;
}

// Mode coefficients at every cell boundary x_0 .. x_N given the stacked outer
// incoming data (alpha_-(x_N), alpha_+(x_0)).  Entry i holds
// (alpha_-(x_i), alpha_+(x_i)); the sweep runs right to left, feeding each
// interface map the alpha_- recovered at the boundary to its right.
inline std::vector<Eigen::VectorXcd> interior_amplitudes(const CascadeTransfer& c,
                                                         const Eigen::VectorXcd& incoming) {
  const int nm = c.total.level_max + 1;
  const int np = c.total.level_max;
  if (incoming.size() != nm + np)
    throw std::invalid_argument("interior_amplitudes: incoming size mismatch");
  const std::size_t n_cells = c.cells.size();
  const Eigen::VectorXcd outgoing = c.total.matrix * incoming;

  std::vector<Eigen::VectorXcd> at(n_cells + 1, Eigen::VectorXcd(nm + np));
  at[n_cells] << incoming.head(nm), outgoing.tail(np);
  at[0] << outgoing.head(nm), incoming.tail(np);
  for (std::size_t i = n_cells - 1; i >= 1; --i) {
    Eigen::VectorXcd feed(nm + np);
    feed << at[i + 1].head(nm), incoming.tail(np);
    at[i] = c.intersections[i - 1] * feed;
  }
  return at;
}

}  // namespace dirac_scatter
