#include "eventpovm/grid.hpp"

#include <cmath>
#include <stdexcept>
#include <string>

namespace eventpovm {

MomentumGrid::MomentumGrid(const std::array<AxisSpec, 4>& axes, Real leak_tol)
    : axes_(axes), leak_tol_(leak_tol) {
    for (int a = 0; a < 4; ++a) {
        const auto& ax = axes_[a];
        if (ax.n < 1) throw std::invalid_argument("grid axis needs at least one point");
        if (!(ax.max > ax.min))
            throw std::invalid_argument("grid axis box is empty (max <= min)");
        steps_[a] = (ax.max - ax.min) / ax.n;
    }
    if (axes_[0].min < 0)
        throw std::invalid_argument("box exits future cone (k0 range reaches below zero)");
    if (!(leak_tol_ >= 0)) throw std::invalid_argument("leak_tol must be non-negative");
    strides_[3] = 1;
    strides_[2] = axes_[3].n;
    strides_[1] = strides_[2] * axes_[2].n;
    strides_[0] = strides_[1] * axes_[1].n;
    npts_ = strides_[0] * axes_[0].n;
    cell_volume_ = steps_[0] * steps_[1] * steps_[2] * steps_[3];
}

void gauss_legendre(int n, Real a, Real b, std::vector<Real>& nodes,
                    std::vector<Real>& weights) {
    if (n < 1) throw std::invalid_argument("gauss_legendre needs n >= 1");
    if (!(b > a)) throw std::invalid_argument("gauss_legendre needs b > a");
    nodes.assign(n, 0);
    weights.assign(n, 0);
    const Real mid = 0.5 * (a + b);
    const Real half = 0.5 * (b - a);
    const int half_count = (n + 1) / 2;
    for (int i = 0; i < half_count; ++i) {
        Real x = std::cos(M_PI * (i + 0.75) / (n + 0.5));
        Real dp = 1;
        for (int iter = 0; iter < 100; ++iter) {
            Real p0 = 1, p1 = x;
            for (int k = 2; k <= n; ++k) {
                const Real p2 = ((2 * k - 1) * x * p1 - (k - 1) * p0) / k;
                p0 = p1;
                p1 = p2;
            }
            dp = n * (x * p1 - p0) / (x * x - 1);
            const Real dx = p1 / dp;
            x -= dx;
            if (std::abs(dx) < 1e-15) break;
        }
        nodes[i] = mid - half * x;
        nodes[n - 1 - i] = mid + half * x;
        const Real w = 2.0 / ((1 - x * x) * dp * dp);
        weights[i] = half * w;
        weights[n - 1 - i] = half * w;
    }
}

}  // namespace eventpovm
