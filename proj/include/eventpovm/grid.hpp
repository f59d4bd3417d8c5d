#pragma once

#include <array>
#include <cstdint>
#include <vector>

#include "eventpovm/kinematics.hpp"

namespace eventpovm {

struct AxisSpec {
    Real min = 0;
    Real max = 0;
    int n = 0;
};

// Uniform cell-centered product grid over a box in momentum space. Points
// outside the open future cone carry no amplitude (the mask is evaluated on
// the fly). Flat indices run with the k^3 axis fastest.
class MomentumGrid {
  public:
    MomentumGrid(const std::array<AxisSpec, 4>& axes, Real leak_tol = 1e-6);

    std::int64_t num_points() const { return npts_; }
    const AxisSpec& axis(int a) const { return axes_[a]; }
    Real node(int a, int i) const { return axes_[a].min + (i + 0.5) * steps_[a]; }
    Real step(int a) const { return steps_[a]; }
    Real cell_volume() const { return cell_volume_; }
    Real leak_tol() const { return leak_tol_; }
    std::int64_t stride(int a) const { return strides_[a]; }

    std::array<int, 4> indices(std::int64_t flat) const {
        std::array<int, 4> idx;
        for (int a = 0; a < 4; ++a) {
            idx[a] = static_cast<int>(flat / strides_[a]);
            flat -= idx[a] * strides_[a];
        }
        return idx;
    }
    std::int64_t flatten(const std::array<int, 4>& idx) const {
        return idx[0] * strides_[0] + idx[1] * strides_[1] + idx[2] * strides_[2] +
               idx[3] * strides_[3];
    }
    FourVector point(std::int64_t flat) const {
        const auto idx = indices(flat);
        return FourVector(node(0, idx[0]), node(1, idx[1]), node(2, idx[2]), node(3, idx[3]));
    }
    bool in_cone(std::int64_t flat) const { return in_future_cone(point(flat)); }
    // True when any coordinate sits in the outermost cell layer of the box.
    bool on_face(std::int64_t flat) const {
        const auto idx = indices(flat);
        for (int a = 0; a < 4; ++a)
            if (idx[a] == 0 || idx[a] == axes_[a].n - 1) return true;
        return false;
    }

  private:
    std::array<AxisSpec, 4> axes_;
    std::array<Real, 4> steps_;
    std::array<std::int64_t, 4> strides_;
    std::int64_t npts_ = 0;
    Real cell_volume_ = 0;
    Real leak_tol_ = 0;
};

// Gauss-Legendre nodes and weights on [a, b].
void gauss_legendre(int n, Real a, Real b, std::vector<Real>& nodes,
                    std::vector<Real>& weights);

}  // namespace eventpovm
