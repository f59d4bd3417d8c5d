#pragma once

#include <complex>
#include <stdexcept>

#include <Eigen/Dense>

namespace eventpovm {

using Real = double;
using Complex = std::complex<Real>;

// Momentum four-vector (k0, k1, k2, k3), metric signature (+,-,-,-).
using FourVector = Eigen::Matrix<Real, 4, 1>;

// Element of SL(2,C) acting on two-spinors; Wigner boosts are Hermitian
// positive with unit determinant.
using BoostMatrix = Eigen::Matrix<Complex, 2, 2>;

inline Real minkowski_dot(const FourVector& a, const FourVector& b) {
    return a[0] * b[0] - a[1] * b[1] - a[2] * b[2] - a[3] * b[3];
}

inline Real spatial_norm_squared(const FourVector& k) {
    return k[1] * k[1] + k[2] * k[2] + k[3] * k[3];
}

// Open future cone: k0 > 0 and k.k > 0.
inline bool in_future_cone(const FourVector& k) {
    return k[0] > 0 && minkowski_dot(k, k) > 0;
}

inline Real invariant_mass(const FourVector& k) {
    if (!in_future_cone(k))
        throw std::domain_error("invariant_mass: momentum not in the open future cone");
    return std::sqrt(minkowski_dot(k, k));
}

// Boost a_k carrying the rest-frame momentum (mu,0,0,0) to k:
//   a_k = (2 mu (mu + k0))^(-1/2) (mu + k0 + k^s sigma^s),
// so that a_k (mu I) a_k^dagger = k0 I + k^s sigma^s.
inline BoostMatrix wigner_boost(const FourVector& k) {
    const Real mu = invariant_mass(k);
    const Real norm = 1.0 / std::sqrt(2.0 * mu * (mu + k[0]));
    const Real d = mu + k[0];
    BoostMatrix a;
    a(0, 0) = Complex(d + k[3], 0);
    a(0, 1) = Complex(k[1], -k[2]);
    a(1, 0) = Complex(k[1], k[2]);
    a(1, 1) = Complex(d - k[3], 0);
    return norm * a;
}

}  // namespace eventpovm
