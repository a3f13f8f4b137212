#include <catch2/catch_amalgamated.hpp>

#include <Eigen/Dense>

#include <cmath>
#include <complex>
#include <random>
#include <vector>

#include "dirac_scatter/greens.hpp"
#include "dirac_scatter/modes.hpp"
#include "dirac_scatter/overlaps.hpp"
#include "dirac_scatter/potential.hpp"
#include "dirac_scatter/quadrature.hpp"
#include "dirac_scatter/slab.hpp"
#include "dirac_scatter/tr_matrix.hpp"

using namespace dirac_scatter;

namespace {

// Iterated Gauss-Legendre evaluation of
//   ∬_{x > x0} f(x) K(x - x0) g(x0) dx dx0
// with smooth K, used as an independent oracle for the closed-form moment
// assembly (which maps the triangle to the unit square instead).
cxd triangle_quadrature(const Interval& iv, const std::function<cxd(double)>& f,
                        const std::function<cxd(double, double)>& kern,
                        const std::function<cxd(double)>& g, int order) {
  const QuadratureRule outer = gauss_legendre(order, iv.left, iv.right);
  cxd acc = 0.0;
  for (Eigen::Index a = 0; a < outer.nodes.size(); ++a) {
    const double x = outer.nodes[a];
    const QuadratureRule inner = gauss_legendre(order, iv.left, x);
    cxd row = 0.0;
    for (Eigen::Index b = 0; b < inner.nodes.size(); ++b)
      row += inner.weights[b] * kern(x, inner.nodes[b]) * g(inner.nodes[b]);
    acc += outer.weights[a] * f(x) * row;
  }
  return acc;
}

cxd legendre_fn(int j, const Interval& iv, double x) {
  return legendre_orthonormal_values(j, iv, x)(j);
}

}  // namespace

TEST_CASE("one-sided exponential moments match iterated quadrature") {
  const Interval iv{-0.3, 0.5};
  const int jmax = 5;
  for (const cxd theta : {cxd(0.0, 2.3), cxd(-1.7, 0.0), cxd(-0.9, 3.1)}) {
    const Eigen::MatrixXcd a = exponential_triangle_moments(iv, jmax, theta);
    REQUIRE(a.rows() == jmax + 1);
    for (int j = 0; j <= jmax; ++j) {
      for (int jp = 0; jp <= jmax; ++jp) {
        const cxd direct = triangle_quadrature(
            iv, [&](double x) { return legendre_fn(j, iv, x); },
            [&](double x, double x0) { return std::exp(theta * (x - x0)); },
            [&](double x0) { return legendre_fn(jp, iv, x0); }, 48);
        REQUIRE(std::abs(a(j, jp) - direct) < 1e-12 * (1.0 + std::abs(direct)));
      }
    }
  }
}

TEST_CASE("channel kernel solves the channel equation away from the source") {
  const double E = 3.7;
  // n = 1, 2 propagating at this energy; n = 7 evanescent.
  for (int n : {1, 2, 7}) {
    const double cn = std::sqrt(2.0 * n);
    for (double X : {-0.83, -0.21, 0.37, 1.49}) {
      const double h = 1e-4;
      // Fourth-order central difference of the 2x2 kernel.
      const Eigen::Matrix2cd gm2 = channel_greens_kernel(E, n, X - 2 * h);
      const Eigen::Matrix2cd gm1 = channel_greens_kernel(E, n, X - h);
      const Eigen::Matrix2cd gp1 = channel_greens_kernel(E, n, X + h);
      const Eigen::Matrix2cd gp2 = channel_greens_kernel(E, n, X + 2 * h);
      const Eigen::Matrix2cd dg = (gm2 - 8.0 * gm1 + 8.0 * gp1 - gp2) / (12.0 * h);
      const Eigen::Matrix2cd g = channel_greens_kernel(E, n, X);
      // Channel operator rows: (-i d/dX - E, cn; cn, +i d/dX - E).
      Eigen::Matrix2cd resid;
      resid.row(0) = cxd(0, -1) * dg.row(0) - E * g.row(0) + cn * g.row(1);
      resid.row(1) = cxd(0, 1) * dg.row(1) - E * g.row(1) + cn * g.row(0);
      REQUIRE(resid.cwiseAbs().maxCoeff() < 1e-7);
    }
    // Distributional jump at the source matches the first-order coefficient:
    // (-i, 0; 0, +i) (g(0+) - g(0-)) = I, i.e. g(0+) - g(0-) = (i, 0; 0, -i).
    const Eigen::Matrix2cd jump =
        channel_greens_kernel(E, n, 1e-12) - channel_greens_kernel(E, n, -1e-12);
    REQUIRE(std::abs(jump(0, 0) - cxd(0, 1)) < 1e-9);
    REQUIRE(std::abs(jump(1, 1) - cxd(0, -1)) < 1e-9);
    REQUIRE(std::abs(jump(0, 1)) < 1e-9);
    REQUIRE(std::abs(jump(1, 0)) < 1e-9);
  }
  // Radiation behavior: propagating channels oscillate outward, evanescent
  // channels decay, on both sides of the source.
  for (int n : {1, 7}) {
    const cxd th = theta_n(E, n);
    for (double X : {0.9, -1.1}) {
      const double step = (X > 0) ? 0.05 : -0.05;
      const Eigen::Matrix2cd g0 = channel_greens_kernel(E, n, X);
      const Eigen::Matrix2cd g1 = channel_greens_kernel(E, n, X + step);
      const cxd expect = std::exp(th * std::abs(step));
      REQUIRE(std::abs(g1(0, 0) / g0(0, 0) - expect) < 1e-10);
      REQUIRE(std::abs(g1(1, 1) / g0(1, 1) - expect) < 1e-10);
    }
  }
}

TEST_CASE("level-zero kernel is a single outgoing left-mover") {
  const double E = 2.6;
  // Only the second spinor component of channel 0 enters the operator; it
  // must be i e^{-i E X} supported on X < 0.
  for (double X : {-1.3, -0.4, 0.6, 1.7}) {
    const cxd g22 = channel_greens_kernel(E, 0, X)(1, 1);
    const cxd expect = (X < 0) ? cxd(0, 1) * std::exp(cxd(0, -E * X)) : cxd(0.0);
    REQUIRE(std::abs(g22 - expect) < 1e-12);
  }
}

TEST_CASE("assembled Galerkin blocks match direct kernel quadrature") {
  const SlabBasis basis{Interval{-0.4, 0.3}, 2, 3};
  const double E = 2.2;
  const GreensOperator gop = build_greens(basis, E);
  REQUIRE(gop.outgoing.rows() == basis.size());
  REQUIRE(((gop.incoming - gop.outgoing.adjoint()).cwiseAbs().maxCoeff()) == 0.0);

  auto channel_of = [](int c, int k) { return (c == 0) ? k + 1 : k; };
  const double scale = gop.outgoing.cwiseAbs().maxCoeff();
  for (int c = 0; c <= 1; ++c)
    for (int k = 0; k <= basis.k_max; ++k)
      for (int cc = 0; cc <= 1; ++cc)
        for (int kk = 0; kk <= basis.k_max; ++kk) {
          // The free dynamics is truncated to channels 0..k_max, so component 1
          // of level k_max (channel k_max + 1) carries no kernel block.
          const bool couple = channel_of(c, k) == channel_of(cc, kk) &&
                              channel_of(c, k) <= basis.k_max;
          const int n = channel_of(c, k);
          for (int j = 0; j <= basis.j_max; ++j)
            for (int jj = 0; jj <= basis.j_max; ++jj) {
              const cxd got = gop.outgoing(basis.index(c, k, j), basis.index(cc, kk, jj));
              if (!couple) {
                REQUIRE(std::abs(got) == 0.0);
                continue;
              }
              auto kern_upper = [&](double x, double x0) {
                return channel_greens_kernel(E, n, x - x0)(c, cc);
              };
              auto kern_lower = [&](double x0, double x) {
                return channel_greens_kernel(E, n, x - x0)(c, cc);
              };
              auto pj = [&](double x) { return legendre_fn(j, basis.interval, x); };
              auto pjj = [&](double x) { return legendre_fn(jj, basis.interval, x); };
              // Split the square at the kink x = x0; the second piece swaps
              // the roles of outer and inner variables.
              const cxd direct = triangle_quadrature(basis.interval, pj, kern_upper, pjj, 40) +
                                 triangle_quadrature(basis.interval, pjj, kern_lower, pj, 40);
              REQUIRE(std::abs(got - direct) < 1e-10 * (1.0 + scale));
            }
        }
}

TEST_CASE("assembled potential matrix matches direct quadrature and is Hermitian") {
  std::mt19937 rng(401);
  std::uniform_real_distribution<double> amp(-0.4, 0.4);
  const Interval iv{-0.35, 0.45};
  PotentialRep rep = make_zero_potential(iv, YFamily::hermite, 2, 2);
  for (auto& comp : rep.kappa)
    for (int j = 0; j < comp.rows(); ++j)
      for (int k = 0; k < comp.cols(); ++k) comp(j, k) = amp(rng);

  const SlabBasis basis{iv, 3, 4};
  SlabAssembler assembler(basis, rep.family, rep.j_max, rep.k_max);
  const Eigen::MatrixXcd vhat = assembler.potential_matrix(rep);
  REQUIRE(((vhat - vhat.adjoint()).cwiseAbs().maxCoeff()) < 1e-13);

  const QuadratureRule xr = gauss_legendre(30, iv.left, iv.right);
  const QuadratureRule yr = gaussian_decay_rule(70, 1.5);
  Eigen::MatrixXcd direct = Eigen::MatrixXcd::Zero(basis.size(), basis.size());
  for (Eigen::Index gx = 0; gx < xr.nodes.size(); ++gx) {
    const double x = xr.nodes[gx];
    const Eigen::VectorXd px = legendre_orthonormal_values(basis.j_max, iv, x);
    for (Eigen::Index gy = 0; gy < yr.nodes.size(); ++gy) {
      const double y = yr.nodes[gy];
      const Eigen::VectorXd hy = hermite_values(basis.k_max, y);
      const Eigen::Matrix2cd v = potential_matrix(rep, x, y);
      const double w = xr.weights[gx] * yr.weights[gy];
      for (int c = 0; c <= 1; ++c)
        for (int cc = 0; cc <= 1; ++cc) {
          if (v(c, cc) == cxd(0.0)) continue;
          for (int k = 0; k <= basis.k_max; ++k)
            for (int kk = 0; kk <= basis.k_max; ++kk) {
              const cxd f = w * hy(k) * hy(kk) * v(c, cc);
              for (int j = 0; j <= basis.j_max; ++j)
                for (int jj = 0; jj <= basis.j_max; ++jj)
                  direct(basis.index(c, k, j), basis.index(cc, kk, jj)) += f * px(j) * px(jj);
            }
        }
    }
  }
  REQUIRE(((vhat - direct).cwiseAbs().maxCoeff()) < 1e-10);
}

TEST_CASE("incident coefficients match direct projection of the incident wave") {
  const SlabBasis basis{Interval{-0.25, 0.55}, 4, 6};
  const double E = 2.3;  // levels 0..2 propagating, 3..4 evanescent
  const QuadratureRule xr = gauss_legendre(60, basis.interval.left, basis.interval.right);
  const QuadratureRule yr = gaussian_decay_rule(60, 1.0);
  for (ModeIndex idx : {ModeIndex{1, +1}, ModeIndex{0, -1}, ModeIndex{4, -1}}) {
    const TransferMode m = make_transfer_mode(E, idx);
    const Eigen::VectorXcd got = incident_coefficients(basis, m);
    const double x_entry = mode_entry(basis, m);
    Eigen::VectorXcd direct = Eigen::VectorXcd::Zero(basis.size());
    for (Eigen::Index gx = 0; gx < xr.nodes.size(); ++gx) {
      const double x = xr.nodes[gx];
      const Eigen::VectorXd px = legendre_orthonormal_values(basis.j_max, basis.interval, x);
      const cxd wave = std::exp(cxd(0, 1) * m.xi * (x - x_entry));
      for (Eigen::Index gy = 0; gy < yr.nodes.size(); ++gy) {
        const double y = yr.nodes[gy];
        const Eigen::VectorXd hy = hermite_values(basis.k_max, y);
        // Spinor components of the incident mode at (x, y).
        const cxd top = (idx.n >= 1) ? m.comp1 * hy(idx.n - 1) * wave : cxd(0.0);
        const cxd bot = m.comp2 * hy(idx.n) * wave;
        const double w = xr.weights[gx] * yr.weights[gy];
        for (int k = 0; k <= basis.k_max; ++k)
          for (int j = 0; j <= basis.j_max; ++j) {
            direct(basis.index(0, k, j)) += w * px(j) * hy(k) * top;
            direct(basis.index(1, k, j)) += w * px(j) * hy(k) * bot;
          }
      }
    }
    REQUIRE(((got - direct).cwiseAbs().maxCoeff()) < 1e-10);
  }
}

TEST_CASE("measurement rows integrate the density against the outgoing dual wave") {
  const SlabBasis basis{Interval{-0.25, 0.55}, 3, 5};
  const double E = 2.3;
  std::mt19937 rng(77);
  std::normal_distribution<double> gauss(0.0, 1.0);
  Eigen::VectorXcd rho(basis.size());
  for (Eigen::Index i = 0; i < rho.size(); ++i) rho(i) = cxd(gauss(rng), gauss(rng));

  const QuadratureRule xr = gauss_legendre(60, basis.interval.left, basis.interval.right);
  const QuadratureRule yr = gaussian_decay_rule(60, 1.0);
  for (ModeIndex idx : {ModeIndex{2, +1}, ModeIndex{0, -1}, ModeIndex{3, -1}}) {
    const TransferMode m = make_transfer_mode(E, idx);
    const cxd got = measurement_row(basis, m) * rho;
    const double x_exit = mode_exit(basis, m);
    const cxd pref = -E / m.theta;
    cxd direct = 0.0;
    for (Eigen::Index gx = 0; gx < xr.nodes.size(); ++gx) {
      const double x = xr.nodes[gx];
      const Eigen::VectorXd px = legendre_orthonormal_values(basis.j_max, basis.interval, x);
      const cxd wave = std::exp(cxd(0, -1) * m.xi * (x - x_exit));
      for (Eigen::Index gy = 0; gy < yr.nodes.size(); ++gy) {
        const double y = yr.nodes[gy];
        const Eigen::VectorXd hy = hermite_values(basis.k_max, y);
        cxd top = 0.0, bot = 0.0;
        for (int k = 0; k <= basis.k_max; ++k)
          for (int j = 0; j <= basis.j_max; ++j) {
            top += rho(basis.index(0, k, j)) * px(j) * hy(k);
            bot += rho(basis.index(1, k, j)) * px(j) * hy(k);
          }
        // Plain transpose pairing: phi_m(y)^T rho(x, y), no conjugation.
        const cxd mode_top = (idx.n >= 1) ? m.comp1 * hy(idx.n - 1) : cxd(0.0);
        const cxd mode_bot = m.comp2 * hy(idx.n);
        direct += xr.weights[gx] * yr.weights[gy] * wave * (mode_top * top + mode_bot * bot);
      }
    }
    direct *= pref;
    REQUIRE(std::abs(got - direct) < 1e-9 * (1.0 + std::abs(direct)));
  }
}

TEST_CASE("zero potential reproduces the free crossing phases") {
  const Interval iv{-0.4, 0.4};
  const PotentialRep rep = make_zero_potential(iv, YFamily::hermite, 3, 2);
  const TransferMatrix t = solve_slab_transfer(rep, 4, 8, 2.7);
  const TransferMatrix f = free_transfer(2.7, iv, 4);
  REQUIRE(((t.matrix - f.matrix).cwiseAbs().maxCoeff()) < 1e-12);
}
