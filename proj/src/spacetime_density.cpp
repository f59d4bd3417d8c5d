#include "eventpovm/spacetime_density.hpp"

#include <cmath>
#include <stdexcept>

#include "eventpovm/reduction.hpp"

namespace eventpovm {

SpacetimeGrid::SpacetimeGrid(const std::array<AxisSpec, 4>& axes) : axes_(axes) {
    num_points_ = 1;
    cell_volume_ = 1;
    for (int a = 0; a < 4; ++a) {
        if (axes_[a].n < 1)
            throw std::invalid_argument("grid axis needs at least one point");
        if (!(axes_[a].max > axes_[a].min))
            throw std::invalid_argument("grid axis box is empty (max <= min)");
        steps_[a] = (axes_[a].max - axes_[a].min) / axes_[a].n;
        num_points_ *= axes_[a].n;
        cell_volume_ *= steps_[a];
    }
    strides_[3] = 1;
    for (int a = 2; a >= 0; --a)
        strides_[a] = strides_[a + 1] * axes_[a + 1].n;
}

std::array<int, 4> SpacetimeGrid::indices(std::int64_t flat) const {
    std::array<int, 4> idx;
    for (int a = 0; a < 4; ++a) {
        idx[a] = static_cast<int>(flat / strides_[a]);
        flat %= strides_[a];
    }
    return idx;
}

std::int64_t SpacetimeGrid::flatten(const std::array<int, 4>& idx) const {
    std::int64_t flat = 0;
    for (int a = 0; a < 4; ++a) flat += idx[a] * strides_[a];
    return flat;
}

FourVector SpacetimeGrid::point(std::int64_t flat) const {
    const auto idx = indices(flat);
    FourVector x;
    for (int a = 0; a < 4; ++a) x[a] = node(a, idx[a]);
    return x;
}

namespace {

using RowMajorC =
    Eigen::Matrix<Complex, Eigen::Dynamic, Eigen::Dynamic, Eigen::RowMajor>;

void accumulate_component(const MomentumGrid& kg, const ComplexVector& values,
                          const SpacetimeGrid& xg, int threads, RealVector& rho) {
    const Complex kI(0, 1);
    const int n0 = kg.axis(0).n, n1 = kg.axis(1).n, n2 = kg.axis(2).n,
              n3 = kg.axis(3).n;
    const int m0 = xg.axis(0).n, m1 = xg.axis(1).n, m2 = xg.axis(2).n,
              m3 = xg.axis(3).n;

    Eigen::MatrixXcd t0(m0, n0), t1(m1, n1), t2(m2, n2), t3(m3, n3);
    for (int p = 0; p < m0; ++p)
        for (int q = 0; q < n0; ++q)
            t0(p, q) = std::exp(-kI * xg.node(0, p) * kg.node(0, q));
    for (int p = 0; p < m1; ++p)
        for (int q = 0; q < n1; ++q)
            t1(p, q) = std::exp(kI * xg.node(1, p) * kg.node(1, q));
    for (int p = 0; p < m2; ++p)
        for (int q = 0; q < n2; ++q)
            t2(p, q) = std::exp(kI * xg.node(2, p) * kg.node(2, q));
    for (int p = 0; p < m3; ++p)
        for (int q = 0; q < n3; ++q)
            t3(p, q) = std::exp(kI * xg.node(3, p) * kg.node(3, q));

    const Real pi = std::acos(Real(-1));
    const Real scale = kg.cell_volume() / (4 * pi * pi);
    const Real scale2 = scale * scale;

    const Eigen::Map<const RowMajorC> phi(values.data(), n0,
                                          static_cast<std::int64_t>(n1) * n2 * n3);

    parallel_for(m0, threads, [&](std::int64_t p0) {
        const Eigen::RowVectorXcd folded = t0.row(p0) * phi;
        const Eigen::Map<const RowMajorC> s(folded.data(), n1,
                                            static_cast<std::int64_t>(n2) * n3);
        const Eigen::MatrixXcd a1 = t1 * s;
        Eigen::MatrixXcd m2mat(static_cast<std::int64_t>(m1) * m2, n3);
        Eigen::RowVectorXcd line(a1.cols());
        for (int i1 = 0; i1 < m1; ++i1) {
            line = a1.row(i1);
            const Eigen::Map<const RowMajorC> block(line.data(), n2, n3);
            m2mat.middleRows(static_cast<std::int64_t>(i1) * m2, m2) = t2 * block;
        }
        const Eigen::MatrixXcd d = m2mat * t3.transpose();
        const std::int64_t base = p0 * xg.stride(0);
        for (int i1 = 0; i1 < m1; ++i1)
            for (int i2 = 0; i2 < m2; ++i2) {
                const std::int64_t row = static_cast<std::int64_t>(i1) * m2 + i2;
                const std::int64_t off =
                    base + i1 * xg.stride(1) + i2 * xg.stride(2);
                for (int i3 = 0; i3 < m3; ++i3)
                    rho[off + i3] += scale2 * std::norm(d(row, i3));
            }
    });
}

void finalize(DensityField& field, int threads) {
    const std::int64_t n = field.grid.num_points();
    field.total = field.grid.cell_volume() *
                  deterministic_sum(n, threads,
                                    [&](std::int64_t i) { return field.values[i]; });
    const Real boundary =
        field.grid.cell_volume() *
        deterministic_sum(n, threads, [&](std::int64_t i) {
            const auto idx = field.grid.indices(i);
            for (int a = 0; a < 4; ++a)
                if (idx[a] == 0 || idx[a] == field.grid.axis(a).n - 1)
                    return field.values[i];
            return Real(0);
        });
    field.boundary_share = field.total > 0 ? boundary / field.total : 0;
}

}  // namespace

DensityField density_scalar(const WaveFunction& phi, const SpacetimeGrid& grid,
                            int threads) {
    DensityField field{grid, RealVector::Zero(grid.num_points()), 0, 0};
    for (const auto& c : phi.components()) {
        if (c.two_j != 0)
            throw std::invalid_argument("density covers only the scalar sector");
        accumulate_component(phi.grid(), c.values, grid, std::max(1, threads),
                             field.values);
    }
    finalize(field, std::max(1, threads));
    return field;
}

DensityField density_scalar(const FilteredWaveFunction& phi, const SpacetimeGrid& grid,
                            int threads) {
    DensityField field{grid, RealVector::Zero(grid.num_points()), 0, 0};
    for (const auto& ch : phi.channels)
        for (const auto& c : ch.phi.components()) {
            if (c.two_j != 0)
                throw std::invalid_argument("density covers only the scalar sector");
            accumulate_component(ch.phi.grid(), c.values, grid, std::max(1, threads),
                                 field.values);
        }
    finalize(field, std::max(1, threads));
    return field;
}

Real check_total_probability(const DensityField& density, Real psi_norm_squared) {
    return std::abs(density.total - psi_norm_squared);
}

SpacetimeGrid centered_spacetime_grid(const std::array<Real, 4>& mean_x,
                                      const std::array<Real, 4>& second_moment_x,
                                      int points_per_axis, Real span) {
    std::array<AxisSpec, 4> axes;
    for (int a = 0; a < 4; ++a) {
        if (!(second_moment_x[a] > 0))
            throw std::invalid_argument("second moment must be positive to size the box");
        const Real half = span * std::sqrt(second_moment_x[a]);
        axes[a] = AxisSpec{mean_x[a] - half, mean_x[a] + half, points_per_axis};
    }
    return SpacetimeGrid(axes);
}

}  // namespace eventpovm
