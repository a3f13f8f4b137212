#pragma once

// Error metrics for reconstruction runs.  Both y-profile families are
// orthogonal with a family-wide constant Gram factor, so relative L2 errors
// of the potential reduce to relative Frobenius errors of the coefficient
// arrays; the constant cancels in the ratio.

#include <cmath>
#include <stdexcept>

#include "potential.hpp"

namespace dirac_scatter {

// Relative coefficient error against a reference on the same layout.
inline double coefficient_error(const PotentialRep& rep, const PotentialRep& ref) {
    if (!rep.same_layout(ref))
        throw std::invalid_argument("coefficient_error: layout mismatch");
    double num = 0.0, den = 0.0;
    for (int i = 0; i <= 3; ++i) {
        num += (rep.kappa[static_cast<std::size_t>(i)] - ref.kappa[static_cast<std::size_t>(i)])
                   .squaredNorm();
        den += ref.kappa[static_cast<std::size_t>(i)].squaredNorm();
    }
    if (den == 0.0) throw std::invalid_argument("coefficient_error: zero reference");
    return std::sqrt(num / den);
}

// Integral over the support window of the k = 0 transverse channel of one
// component.  Orthonormal Legendre profiles integrate to zero except degree 0,
// whose integral is sqrt(width).
inline double window_mean_channel(const PotentialRep& rep, int component) {
    const double width = rep.interval.right - rep.interval.left;
    return rep.kappa[static_cast<std::size_t>(component)](0, 0) * std::sqrt(width);
}

// Relative error of the window-averaged leading transverse channel of one
// component.  Reconstructions from phase-dominated data pin down this average
// long before (or instead of) the pointwise shape.
inline double averaged_component_error(const PotentialRep& rep, const PotentialRep& ref,
                                       int component) {
    if (!rep.same_layout(ref))
        throw std::invalid_argument("averaged_component_error: layout mismatch");
    const double m_ref = window_mean_channel(ref, component);
    if (m_ref == 0.0) throw std::invalid_argument("averaged_component_error: zero reference mean");
    return std::abs(window_mean_channel(rep, component) - m_ref) / std::abs(m_ref);
}

}  // namespace dirac_scatter
