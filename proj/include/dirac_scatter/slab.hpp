#pragma once

// Forward scattering through one potential slab.
//
// The scattered field is represented by a density rho on the slab,
//     rho = -(I + V G_out)^{-1} V psi_in,
// discretized by Galerkin projection on the product basis e_c ⊗ phi_k ⊗ Ptil_j
// (spinor component, transverse oscillator level, longitudinal Legendre
// degree).  Outgoing amplitudes are read off from the dyadic form of the
// outgoing kernel beyond the support,
//     G_out(x ≷ x0) = (-E/theta_n) e^{i xi_{n,±} (x - x0)} phi_{n,±}(y) phi_{n,±}(y0)^T,
// which holds for propagating and evanescent channels alike when the spinor
// coefficients use the analytic normalizer c = 1/sqrt(2E(E - xi)).

#include <array>
#include <cmath>
#include <complex>
#include <stdexcept>
#include <vector>

#include <Eigen/Dense>
#include <Eigen/LU>

#include "dirac_scatter/fourier.hpp"
#include "dirac_scatter/greens.hpp"
#include "dirac_scatter/hermite.hpp"
#include "dirac_scatter/legendre.hpp"
#include "dirac_scatter/modes.hpp"
#include "dirac_scatter/overlaps.hpp"
#include "dirac_scatter/potential.hpp"
#include "dirac_scatter/quadrature.hpp"

namespace dirac_scatter {

// Mode data in the analytic normalization (see header comment).  For
// propagating channels comp1/comp2 agree with Mode's; for evanescent ones
// they are complex.  The slab solver requires E > 0.
struct TransferMode {
  ModeIndex idx;
  double energy = 0.0;
  cxd lambda;  // Lambda_n(E)
  cxd xi;      // eps * Lambda_n
  cxd theta;   // i * Lambda_n
  bool propagating = false;
  cxd comp1;   // coefficient of phi_{n-1}
  cxd comp2;   // coefficient of phi_n
};

inline TransferMode make_transfer_mode(double E, ModeIndex idx) {
  if (E <= 0.0) throw std::invalid_argument("make_transfer_mode: requires E > 0");
  if (idx.n == 0 && idx.eps != -1)
    throw std::invalid_argument("make_transfer_mode: level 0 carries only eps = -1");
  TransferMode m;
  m.idx = idx;
  m.energy = E;
  m.lambda = lambda_n(E, idx.n);
  m.xi = (idx.n == 0) ? cxd(-E, 0.0) : cxd(idx.eps) * m.lambda;
  m.theta = cxd(0, 1) * m.lambda;
  m.propagating = (m.lambda.imag() == 0.0);
  const cxd c = 1.0 / std::sqrt(2.0 * E * (E - m.xi));
  m.comp1 = (idx.n >= 1) ? c * std::sqrt(2.0 * idx.n) : cxd(0.0);
  m.comp2 = c * (E - m.xi);
  return m;
}

// Canonical order: eps = -1 for n = 0..K, then eps = +1 for n = 1..K.
inline std::vector<TransferMode> canonical_transfer_modes(double E, int n_levels) {
  std::vector<TransferMode> ms;
  ms.reserve(2 * n_levels + 1);
  for (int n = 0; n <= n_levels; ++n) ms.push_back(make_transfer_mode(E, {n, -1}));
  for (int n = 1; n <= n_levels; ++n) ms.push_back(make_transfer_mode(E, {n, +1}));
  return ms;
}

// Entry endpoint (where the incident amplitude is referenced) and exit
// endpoint (where the outgoing amplitude is measured).  eps = +1 modes enter
// at the left edge and leave at the right edge; eps = -1 the reverse.
inline double mode_entry(const SlabBasis& b, const TransferMode& m) {
  return m.idx.eps > 0 ? b.interval.left : b.interval.right;
}
inline double mode_exit(const SlabBasis& b, const TransferMode& m) {
  return m.idx.eps > 0 ? b.interval.right : b.interval.left;
}

// Galerkin coefficients of the incident field phi_m(y) e^{i xi (x - x_entry)}.
inline Eigen::VectorXcd incident_coefficients(const SlabBasis& b, const TransferMode& m) {
  Eigen::VectorXcd v = Eigen::VectorXcd::Zero(b.size());
  const Eigen::VectorXcd ell =
      planewave_legendre_projection(b.j_max, b.interval, m.xi, mode_entry(b, m));
  const int n = m.idx.n;
  if (n >= 1) {
    if (n - 1 > b.k_max) throw std::invalid_argument("incident_coefficients: level exceeds basis");
    for (int j = 0; j <= b.j_max; ++j) v(b.index(0, n - 1, j)) = m.comp1 * ell(j);
  }
  if (n <= b.k_max)
    for (int j = 0; j <= b.j_max; ++j) v(b.index(1, n, j)) = m.comp2 * ell(j);
  else
    throw std::invalid_argument("incident_coefficients: level exceeds basis");
  return v;
}

// Row r such that the outgoing amplitude of mode m at its exit endpoint is
// alpha_m = r^T rho (plain transpose, no conjugation):
//   alpha_m = (-E/theta_n) ∫ e^{-i xi_m (x0 - x_exit)} phi_m(y0)^T rho(x0, y0).
inline Eigen::RowVectorXcd measurement_row(const SlabBasis& b, const TransferMode& m) {
  Eigen::RowVectorXcd r = Eigen::RowVectorXcd::Zero(b.size());
  const Eigen::VectorXcd ell =
      planewave_legendre_projection(b.j_max, b.interval, -m.xi, mode_exit(b, m));
  const cxd pref = -m.energy / m.theta;
  const int n = m.idx.n;
  if (n >= 1)
    for (int j = 0; j <= b.j_max; ++j) r(b.index(0, n - 1, j)) = pref * m.comp1 * ell(j);
  for (int j = 0; j <= b.j_max; ++j) r(b.index(1, n, j)) = pref * m.comp2 * ell(j);
  return r;
}

// Precomputed per-energy scaffolding shared by every potential iterate.
struct SlabEnergyContext {
  double energy = 0.0;
  SlabBasis basis;
  std::vector<TransferMode> modes;  // canonical order, levels 0..k_max
  GreensOperator greens;
  Eigen::MatrixXcd psi_in;     // size × mode_count incident columns
  Eigen::MatrixXcd meas_rows;  // mode_count × size measurement rows
  Eigen::VectorXcd free_diag;  // e^{i Lambda_n d} per mode

  int mode_count() const { return static_cast<int>(modes.size()); }
};

inline SlabEnergyContext build_energy_context(double E, const SlabBasis& basis, int order = -1) {
  SlabEnergyContext ctx;
  ctx.energy = E;
  ctx.basis = basis;
  ctx.modes = canonical_transfer_modes(E, basis.k_max);
  ctx.greens = build_greens(basis, E, order);
  const int nm = ctx.mode_count();
  ctx.psi_in.resize(basis.size(), nm);
  ctx.meas_rows.resize(nm, basis.size());
  ctx.free_diag.resize(nm);
  const double d = basis.interval.width();
  for (int p = 0; p < nm; ++p) {
    ctx.psi_in.col(p) = incident_coefficients(basis, ctx.modes[p]);
    ctx.meas_rows.row(p) = measurement_row(basis, ctx.modes[p]);
    ctx.free_diag(p) = std::exp(cxd(0, 1) * ctx.modes[p].lambda * d);
  }
  return ctx;
}

// Factorization of (I + V G_out) for one potential iterate.
struct SlabFactor {
  Eigen::PartialPivLU<Eigen::MatrixXcd> lu;
  double rcond = 0.0;
};

inline SlabFactor factor_slab(const SlabEnergyContext& ctx, const Eigen::MatrixXcd& vhat) {
  SlabFactor f;
  Eigen::MatrixXcd a = vhat * ctx.greens.outgoing;
  a.diagonal().array() += 1.0;
  f.lu.compute(a);
  f.rcond = f.lu.rcond();
  if (!(f.rcond > 1e-12))
    throw std::runtime_error("factor_slab: (I + V G) numerically singular, rcond = " +
                             std::to_string(f.rcond));
  return f;
}

// rho = -(I + V G_out)^{-1} V psi_in for a block of incident columns.
inline Eigen::MatrixXcd solve_density(const SlabEnergyContext& ctx, const SlabFactor& f,
                                      const Eigen::MatrixXcd& vhat,
                                      const Eigen::MatrixXcd& psi_in_cols) {
  return -f.lu.solve(vhat * psi_in_cols);
}

// Transfer matrix over the canonical mode list: T = diag(e^{i Lambda d}) + R rho.
inline Eigen::MatrixXcd transfer_from_density(const SlabEnergyContext& ctx,
                                              const Eigen::MatrixXcd& rho) {
  Eigen::MatrixXcd t = ctx.meas_rows * rho;
  t.diagonal() += ctx.free_diag;
  return t;
}

// Convenience pipeline: full transfer matrix of one slab.
inline Eigen::MatrixXcd slab_transfer(const SlabEnergyContext& ctx, const Eigen::MatrixXcd& vhat) {
  const SlabFactor f = factor_slab(ctx, vhat);
  const Eigen::MatrixXcd rho = solve_density(ctx, f, vhat, ctx.psi_in);
  return transfer_from_density(ctx, rho);
}

// Galerkin assembly of multiplication by V, and of misfit gradients, with the
// quadrature tables and overlap tensors cached across descent iterations.
class SlabAssembler {
 public:
  SlabAssembler(const SlabBasis& basis, YFamily family, int rep_j_max, int rep_k_max)
      : basis_(basis), family_(family), rep_j_max_(rep_j_max), rep_k_max_(rep_k_max),
        overlaps_(basis.k_max, rep_k_max, family) {
    // Longitudinal rule: exact for degree 2 j_max + rep_j_max.
    const int xdeg = 2 * basis.j_max + rep_j_max;
    const QuadratureRule xr = gauss_legendre(xdeg / 2 + 2, basis.interval.left,
                                             basis.interval.right);
    xw_ = Eigen::Map<const Eigen::VectorXd>(xr.weights.data(),
                                            static_cast<long>(xr.weights.size()));
    px_ = Eigen::MatrixXd(static_cast<long>(xr.nodes.size()), basis.j_max + 1);
    pv_ = Eigen::MatrixXd(static_cast<long>(xr.nodes.size()), rep_j_max + 1);
    for (std::size_t g = 0; g < xr.nodes.size(); ++g) {
      px_.row(static_cast<long>(g)) =
          legendre_orthonormal_values(basis.j_max, basis.interval, xr.nodes[g]).transpose();
      pv_.row(static_cast<long>(g)) =
          legendre_orthonormal_values(rep_j_max, basis.interval, xr.nodes[g]).transpose();
    }

    // Transverse rule for gradient quadrature: integrands are
    // phi_k phi_k' eta_kv ~ poly · exp(-rate y²), degree ≤ 2 k_max + rep_k_max.
    const double rate = yfamily_gaussian_rate(family);
    const int ynodes = basis.k_max + rep_k_max / 2 + 6;
    const QuadratureRule yr = gaussian_decay_rule(ynodes, rate);
    yw_ = Eigen::Map<const Eigen::VectorXd>(yr.weights.data(),
                                            static_cast<long>(yr.weights.size()));
    hy_ = Eigen::MatrixXd(static_cast<long>(yr.nodes.size()), basis.k_max + 1);
    ey_ = Eigen::MatrixXd(static_cast<long>(yr.nodes.size()), rep_k_max + 1);
    for (std::size_t g = 0; g < yr.nodes.size(); ++g) {
      hy_.row(static_cast<long>(g)) = hermite_values(basis.k_max, yr.nodes[g]).transpose();
      ey_.row(static_cast<long>(g)) =
          yfamily_values(family, rep_k_max, yr.nodes[g]).transpose();
    }
  }

  const SlabBasis& basis() const { return basis_; }
  YFamily family() const { return family_; }
  int rep_j_max() const { return rep_j_max_; }
  int rep_k_max() const { return rep_k_max_; }
  const TripleOverlapTensor& overlaps() const { return overlaps_; }

  bool matches(const PotentialRep& rep) const {
    return rep.interval == basis_.interval && rep.family == family_ &&
           rep.j_max == rep_j_max_ && rep.k_max == rep_k_max_;
  }

  // Hermitian Galerkin matrix of multiplication by V.
  Eigen::MatrixXcd potential_matrix(const PotentialRep& rep) const {
    if (!matches(rep)) throw std::invalid_argument("SlabAssembler: representation mismatch");
    const int K = basis_.k_max;
    const int nx = basis_.x_count();
    const int ky = K + 1;
    Eigen::MatrixXcd vhat = Eigen::MatrixXcd::Zero(basis_.size(), basis_.size());

    const long ng = px_.rows();
    for (long g = 0; g < ng; ++g) {
      // Profile values at this x for each component: prof(i, kv).
      Eigen::Matrix<double, 4, Eigen::Dynamic> prof(4, rep_k_max_ + 1);
      for (int i = 0; i <= 3; ++i)
        prof.row(i) = (pv_.row(g) * rep.kappa[static_cast<std::size_t>(i)]);

      // Y_i(k, k') = sum_kv prof(i, kv) O(k, k'; kv).
      std::array<Eigen::MatrixXd, 4> ymat;
      for (int i = 0; i <= 3; ++i) {
        ymat[static_cast<std::size_t>(i)] = Eigen::MatrixXd::Zero(ky, ky);
        for (int kv = 0; kv <= rep_k_max_; ++kv) {
          const double cval = prof(i, kv);
          if (cval != 0.0)
            ymat[static_cast<std::size_t>(i)] += cval * overlaps_.slice(kv);
        }
      }

      const Eigen::MatrixXd outer = xw_(g) * (px_.row(g).transpose() * px_.row(g));
      for (int c = 0; c <= 1; ++c)
        for (int cc = 0; cc <= 1; ++cc) {
          // sigma-weighted transverse coupling for this component pair.
          Eigen::MatrixXcd ycc = Eigen::MatrixXcd::Zero(ky, ky);
          for (int i = 0; i <= 3; ++i) {
            const cxd s = pauli_matrix(i)(c, cc);
            if (s != cxd(0.0)) ycc += s * ymat[static_cast<std::size_t>(i)];
          }
          for (int k = 0; k <= K; ++k)
            for (int kk = 0; kk <= K; ++kk) {
              const cxd f = ycc(k, kk);
              if (f != cxd(0.0))
                vhat.block(basis_.index(c, k, 0), basis_.index(cc, kk, 0), nx, nx) += f * outer;
            }
        }
    }
    return vhat;
  }

  // Gradient of -2 Re <g, (dV) psi> with respect to the coefficients kappa:
  //   grad_{jv,kv,i} = -2 Re ∫∫ (g(x,y)^dagger sigma_i psi(x,y)) Ptil_{jv}(x) eta_{kv}(y).
  // Returns a PotentialRep-shaped container of partial derivatives.
  PotentialRep misfit_gradient(const Eigen::VectorXcd& ghat, const Eigen::VectorXcd& psihat) const {
    PotentialRep grad = make_zero_potential(basis_.interval, family_, rep_j_max_, rep_k_max_);
    accumulate_misfit_gradient(grad, ghat, psihat, 1.0);
    return grad;
  }

  void accumulate_misfit_gradient(PotentialRep& grad, const Eigen::VectorXcd& ghat,
                                  const Eigen::VectorXcd& psihat, double scale) const {
    const int K = basis_.k_max;
    const int nx = basis_.x_count();
    // Coefficient matrices (k, j) per component.
    auto comp = [&](const Eigen::VectorXcd& v, int c) {
      return Eigen::Map<const Eigen::Matrix<cxd, Eigen::Dynamic, Eigen::Dynamic,
                                            Eigen::RowMajor>>(
          v.data() + basis_.index(c, 0, 0), K + 1, nx);
    };
    // Field values on the quadrature grid: F_c(y_g, x_g) = HY M_c PX^T.
    std::array<Eigen::MatrixXcd, 2> gf, pf;
    for (int c = 0; c <= 1; ++c) {
      gf[static_cast<std::size_t>(c)] = hy_ * comp(ghat, c) * px_.transpose();
      pf[static_cast<std::size_t>(c)] = hy_ * comp(psihat, c) * px_.transpose();
    }
    for (int i = 0; i <= 3; ++i) {
      const Eigen::Matrix2cd sig = pauli_matrix(i);
      Eigen::MatrixXcd dens =
          Eigen::MatrixXcd::Zero(hy_.rows(), px_.rows());
      for (int c = 0; c <= 1; ++c)
        for (int cc = 0; cc <= 1; ++cc) {
          const cxd s = sig(c, cc);
          if (s != cxd(0.0))
            dens += s * gf[static_cast<std::size_t>(c)].conjugate().cwiseProduct(
                            pf[static_cast<std::size_t>(cc)]);
        }
      // grad_i(jv, kv) = -2 Re [ PV^T (Wx ∘ dens^T ∘ Wy) EY ].
      const Eigen::MatrixXcd weighted =
          xw_.asDiagonal() * dens.transpose() * yw_.asDiagonal();
      grad.kappa[static_cast<std::size_t>(i)] +=
          (-2.0 * scale) * (pv_.transpose() * weighted * ey_).real();
    }
  }

 private:
  SlabBasis basis_;
  YFamily family_;
  int rep_j_max_;
  int rep_k_max_;
  TripleOverlapTensor overlaps_;
  Eigen::VectorXd xw_, yw_;
  Eigen::MatrixXd px_, pv_;  // Legendre tables at x nodes (basis / representation)
  Eigen::MatrixXd hy_, ey_;  // transverse tables at y nodes (oscillator / profile)
};

}  // namespace dirac_scatter
