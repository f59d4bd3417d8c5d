#pragma once

#include <array>
#include <cstdint>

#include "eventpovm/grid.hpp"
#include "eventpovm/povm_core.hpp"
#include "eventpovm/wavefunction.hpp"

namespace eventpovm {

using RealVector = Eigen::Matrix<Real, Eigen::Dynamic, 1>;

// Uniform midpoint-sampled box in x-space; x0 is slowest in the flat layout.
class SpacetimeGrid {
  public:
    explicit SpacetimeGrid(const std::array<AxisSpec, 4>& axes);

    std::int64_t num_points() const { return num_points_; }
    const AxisSpec& axis(int a) const { return axes_[a]; }
    Real step(int a) const { return steps_[a]; }
    Real cell_volume() const { return cell_volume_; }
    std::int64_t stride(int a) const { return strides_[a]; }
    Real node(int a, int i) const { return axes_[a].min + (i + 0.5) * steps_[a]; }
    std::array<int, 4> indices(std::int64_t flat) const;
    std::int64_t flatten(const std::array<int, 4>& idx) const;
    FourVector point(std::int64_t flat) const;

  private:
    std::array<AxisSpec, 4> axes_;
    std::array<Real, 4> steps_{};
    std::array<std::int64_t, 4> strides_{};
    std::int64_t num_points_ = 0;
    Real cell_volume_ = 0;
};

struct DensityField {
    SpacetimeGrid grid;
    RealVector values;
    Real total = 0;
    Real boundary_share = 0;
};

// Scalar-sector detection density: rho = sum of |(2 pi)^-2 int e^{-i x.k} phi d4k|^2.
DensityField density_scalar(const WaveFunction& phi, const SpacetimeGrid& grid,
                            int threads = 1);
DensityField density_scalar(const FilteredWaveFunction& phi, const SpacetimeGrid& grid,
                            int threads = 1);

Real check_total_probability(const DensityField& density, Real psi_norm_squared);

// Box of points_per_axis nodes per axis centered on the mean with half-width
// span * sqrt(second moment).
SpacetimeGrid centered_spacetime_grid(const std::array<Real, 4>& mean_x,
                                      const std::array<Real, 4>& second_moment_x,
                                      int points_per_axis, Real span = 4.3);

}  // namespace eventpovm
