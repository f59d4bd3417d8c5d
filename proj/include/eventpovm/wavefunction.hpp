#pragma once

#include <array>
#include <functional>
#include <memory>
#include <vector>

#include <Eigen/Dense>

#include "eventpovm/grid.hpp"
#include "eventpovm/kinematics.hpp"

namespace eventpovm {

using ComplexVector = Eigen::Matrix<Complex, Eigen::Dynamic, 1>;
using ValueFn = std::function<Complex(const FourVector&)>;
using GradientFn = std::function<std::array<Complex, 4>(const FourVector&)>;

// One (sigma, j, m) component. Values are materialized over the grid with
// out-of-cone points zeroed; gradient_fn returns d/dk^alpha and an empty
// gradient_fn selects the finite-difference fallback.
struct WaveComponent {
    int sigma = 0;
    int two_j = 0;
    int two_m = 0;
    ValueFn value_fn;
    GradientFn gradient_fn;
    ComplexVector values;
};

class WaveFunction {
  public:
    WaveFunction(std::shared_ptr<const MomentumGrid> grid,
                 std::vector<WaveComponent> components, int threads = 1);

    const MomentumGrid& grid() const { return *grid_; }
    const std::shared_ptr<const MomentumGrid>& grid_ptr() const { return grid_; }
    int component_count() const { return static_cast<int>(comps_.size()); }
    const WaveComponent& component(int i) const { return comps_[i]; }
    const std::vector<WaveComponent>& components() const { return comps_; }
    int find_component(int sigma, int two_j, int two_m) const;

    bool analytic_gradients() const;
    Real norm_squared(int threads = 1) const;
    // Scales to unit norm; throws std::runtime_error on a zero state.
    void normalize(int threads = 1);
    void scale(Real s);
    // Multiplies by exp(i a_beta k^beta) with a given in upper-index form;
    // shifts every coordinate mean by +a^alpha.
    WaveFunction phase_shifted(const FourVector& a, int threads = 1) const;

    // d phi / dk^alpha at one grid point, analytic or finite-difference.
    std::array<Complex, 4> gradient_at(int comp, std::int64_t flat) const;

    // |psi|^2 mass removed by the cone mask, relative to the unmasked box mass.
    Real cone_clip_fraction() const { return clip_fraction_; }
    // max |psi| over boundary cells divided by the global max |psi|.
    Real face_decay_ratio() const { return face_ratio_; }

    std::vector<int> sigma_list() const;
    std::vector<int> two_j_list() const;

  private:
    std::shared_ptr<const MomentumGrid> grid_;
    std::vector<WaveComponent> comps_;
    Real clip_fraction_ = 0;
    Real face_ratio_ = 0;
};

// Product Gaussian scalar state, unit-normalized in the continuum:
// prod_a (2 pi w_a^2)^{-1/4} exp(-(k^a - c^a)^2 / (4 w_a^2)), so that the
// |psi|^2 standard deviation along axis a is w_a.
WaveFunction gaussian_scalar(std::shared_ptr<const MomentumGrid> grid,
                             const FourVector& center, const FourVector& width,
                             int threads = 1);

// Polynomial-modulated product Gaussian building block for one component:
// value = prod_a p_a(u_a) exp(-u_a^2 / 4), u_a = (k^a - c^a) / w_a, with
// complex per-axis polynomial coefficients (constant term first; empty = 1).
struct PolynomialGaussian {
    FourVector center = FourVector::Zero();
    FourVector width = FourVector::Ones();
    std::array<std::vector<Complex>, 4> poly;
};

ValueFn polynomial_gaussian_value(const PolynomialGaussian& spec);
GradientFn polynomial_gaussian_gradient(const PolynomialGaussian& spec);
WaveComponent polynomial_gaussian_component(int sigma, int two_j, int two_m,
                                            const PolynomialGaussian& spec);

// The family is closed under multiplication by k^a and under d/dk^a; both
// return a profile exactly representing the transformed function.
PolynomialGaussian polynomial_gaussian_times_axis(const PolynomialGaussian& spec,
                                                  int axis);
PolynomialGaussian polynomial_gaussian_derivative(const PolynomialGaussian& spec,
                                                  int axis);

}  // namespace eventpovm
