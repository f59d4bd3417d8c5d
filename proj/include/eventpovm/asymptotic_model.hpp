#pragma once

#include <array>
#include <functional>
#include <vector>

#include "eventpovm/povm_core.hpp"
#include "eventpovm/wavefunction.hpp"

namespace eventpovm {

// q-space profile with analytic gradient and a declared support box.
struct ProfileFunction {
    std::function<Complex(const FourVector&)> value;
    std::function<std::array<Complex, 4>(const FourVector&)> gradient;
    std::array<Real, 4> support_min{};
    std::array<Real, 4> support_max{};
};

// Profile g(q0, q3) for the closed-form transverse-Gaussian assembly.
struct PlanarProfile {
    std::function<Complex(Real, Real)> value;
    std::function<std::array<Complex, 2>(Real, Real)> gradient;
    std::array<Real, 2> support_min{};
    std::array<Real, 2> support_max{};
};

// Normalized Gaussian g with |g|^2 standard deviations (width0, width3).
PlanarProfile gaussian_planar_profile(Real center0, Real center3, Real width0,
                                      Real width3, Real span = 7.0);

// f(q) = (2 pi)^(-1/2) (q0)^(-1) exp(-((q1)^2+(q2)^2)/(2 q0)^2) g(q0, q3).
// transverse_half is the declared support half-width for q1 and q2.
ProfileFunction special_gaussian(const PlanarProfile& g, Real transverse_half,
                                 int check_points = 96);

ProfileFunction default_model_profile();

Real profile_norm_squared(const ProfileFunction& f, int points_per_axis = 48);

// A = integral of |f(q)|^2 (q0)^(-2) over the support.
Real compute_A(const ProfileFunction& f, int points_per_axis = 48);

struct ModelState {
    SpinLabel j;
    WaveFunction psi;
    Real raw_norm_squared = 0;
};

struct ModelGridOptions {
    int points_per_axis = 40;
    Real leak_tol = 0.02;
    // Amplitude is zeroed where mu < mass_floor * k0. Keeps inverse-mass
    // moments convergent when profile tails graze the cone boundary.
    Real mass_floor = 0.05;
    int threads = 1;
};

// psi_{j'm}(k) = delta_{j'j} delta_{mj} f(q) j^(-3/8) on the mapped support box,
// with q0 = j^(-1/2) k0, q1 = k1, q2 = k2, q3 = j^(-1/4) k3.
ModelState build_model_state(SpinLabel j, const ProfileFunction& f,
                             const ModelGridOptions& options = {});

struct LimitRow {
    Real j = 0;
    std::array<Real, 4> second_moment_x{};
    Real spin_mass_term = 0;
    Real cone_clip_fraction = 0;
    Real raw_norm_squared = 0;
};

struct LimitStudy {
    std::vector<LimitRow> rows;
    Real a_value = 0;
    // large-j targets per axis: {0, I1 + A/2, I2 + A/2, 0}
    std::array<Real, 4> limit_targets{};
};

LimitStudy limit_study(const ProfileFunction& f, const std::vector<int>& j_list,
                       const ModelGridOptions& options = {});

}  // namespace eventpovm
