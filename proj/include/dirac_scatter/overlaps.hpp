#pragma once

// Triple overlap integrals between two oscillator eigenfunctions and a member
// of a transverse profile family:
//
//     O(a, b; k) = ∫ φ_a(y) φ_b(y) η_k(y) dy,
//
// where {φ_n} is the orthonormal oscillator basis and {η_k} is one of the
// supported profile families (oscillator, width-rescaled oscillator, or the
// constant profile).  All integrands are polynomials times a Gaussian, so a
// rescaled Gauss–Hermite rule integrates them exactly once the node count
// covers the polynomial degree.

#include <cmath>
#include <numbers>
#include <stdexcept>
#include <vector>

#include <Eigen/Dense>

#include "dirac_scatter/hermite.hpp"
#include "dirac_scatter/quadrature.hpp"

namespace dirac_scatter {

// Total Gaussian decay rate c of φ_a φ_b η_k ~ poly · exp(-c y²).
inline double yfamily_gaussian_rate(YFamily family) {
  switch (family) {
    case YFamily::hermite:
      return 1.5;  // e^{-y²} from the pair, e^{-y²/2} from the profile
    case YFamily::hermite_rescaled:
      return 2.0;  // e^{-y²} from the pair, e^{-y²} from the profile
    case YFamily::constant:
      return 1.0;  // e^{-y²} from the pair only
  }
  throw std::invalid_argument("yfamily_gaussian_rate: unknown family");
}

// Quadrature rule for ∫ f(y) dy with f = polynomial · exp(-rate · y²).
// Exact for polynomial degree ≤ 2·nodes − 1.
inline QuadratureRule gaussian_decay_rule(int nodes, double rate) {
  if (rate <= 0.0) throw std::invalid_argument("gaussian_decay_rule: rate must be positive");
  QuadratureRule out = gauss_hermite_reweighted(nodes);
  const double scale = 1.0 / std::sqrt(rate);
  out.nodes *= scale;
  out.weights *= scale;
  return out;
}

// Dense tensor of overlaps O(a, b; k) for 0 ≤ a,b ≤ pair_max, 0 ≤ k ≤ profile_max.
class TripleOverlapTensor {
 public:
  TripleOverlapTensor() = default;

  TripleOverlapTensor(int pair_max, int profile_max, YFamily family, int nodes = -1)
      : pair_max_(pair_max), profile_max_(profile_max), family_(family) {
    if (pair_max < 0 || profile_max < 0)
      throw std::invalid_argument("TripleOverlapTensor: negative index bound");
    const int max_level = std::max(pair_max, profile_max);
    if (nodes < 0) nodes = 3 * max_level + 10;
    const int needed = (2 * pair_max + profile_max) / 2 + 2;
    if (nodes < needed) nodes = needed;
    const QuadratureRule rule = gaussian_decay_rule(nodes, yfamily_gaussian_rate(family));

    slices_.assign(static_cast<std::size_t>(profile_max + 1),
                   Eigen::MatrixXd::Zero(pair_max + 1, pair_max + 1));
    for (std::size_t i = 0; i < rule.nodes.size(); ++i) {
      const double y = rule.nodes[i];
      const double w = rule.weights[i];
      const Eigen::VectorXd pair_vals = hermite_values(pair_max, y);
      const Eigen::VectorXd prof_vals = yfamily_values(family, profile_max, y);
      for (int k = 0; k <= profile_max; ++k) {
        const double wk = w * prof_vals(k);
        if (wk == 0.0) continue;
        Eigen::MatrixXd& m = slices_[static_cast<std::size_t>(k)];
        for (int a = 0; a <= pair_max; ++a) {
          const double va = pair_vals(a) * wk;
          for (int b = 0; b <= a; ++b) m(a, b) += va * pair_vals(b);
        }
      }
    }
    for (auto& m : slices_) m.triangularView<Eigen::StrictlyUpper>() = m.transpose();
  }

  int pair_max() const { return pair_max_; }
  int profile_max() const { return profile_max_; }
  YFamily family() const { return family_; }

  double operator()(int a, int b, int k) const {
    if (a < 0 || b < 0 || a > pair_max_ || b > pair_max_ || k < 0 || k > profile_max_)
      throw std::out_of_range("TripleOverlapTensor: index out of range");
    return slices_[static_cast<std::size_t>(k)](a, b);
  }

  const Eigen::MatrixXd& slice(int k) const {
    if (k < 0 || k > profile_max_) throw std::out_of_range("TripleOverlapTensor: slice index");
    return slices_[static_cast<std::size_t>(k)];
  }

 private:
  int pair_max_ = -1;
  int profile_max_ = -1;
  YFamily family_ = YFamily::hermite_rescaled;
  std::vector<Eigen::MatrixXd> slices_;
};

// Closed forms for the width-rescaled profile family η_k = √2 π^{1/4} φ_k(√2 y).
// Both follow from the generating function of the Hermite polynomials; the
// quadrature tensor above is the independent ground truth used in tests.

// O(0, s; k): nonzero only for 0 ≤ k ≤ s with s − k even.
inline double overlap_ground_closed(int s, int k) {
  if (s < 0 || k < 0 || k > s || ((s - k) % 2) != 0) return 0.0;
  const int l = (s - k) / 2;
  const double mag = std::exp(0.5 * (std::lgamma(s + 1.0) - std::lgamma(k + 1.0)) -
                              std::lgamma(l + 1.0) + (0.5 * k - s) * std::numbers::ln2);
  return ((l % 2) ? -mag : mag);
}

// O(n−1, 1; k): nonzero only for 0 ≤ k ≤ n with n − k even (n ≥ 1).
inline double overlap_first_closed(int n, int k) {
  if (n < 1 || k < 0 || k > n || ((n - k) % 2) != 0) return 0.0;
  if (k == n) return std::pow(2.0, -0.5 * n) * std::sqrt(static_cast<double>(n));
  const int l = (n - k) / 2;  // l ≥ 1 here
  const double mag = std::exp(0.5 * (std::lgamma(static_cast<double>(n)) - std::lgamma(k + 1.0)) -
                              std::lgamma(l + 1.0) + (0.5 * k - n) * std::numbers::ln2);
  const double signed_val = ((l - 1) % 2 ? -1.0 : 1.0) * mag * (n - 2.0 * k);
  return signed_val;
}

}  // namespace dirac_scatter
