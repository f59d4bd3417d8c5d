#include <array>
#include <cmath>
#include <complex>
#include <memory>
#include <random>
#include <stdexcept>
#include <vector>

#include "doctest.h"
#include "eventpovm/variance_engine.hpp"

using namespace eventpovm;

namespace {

const Complex kI(0, 1);

std::shared_ptr<const MomentumGrid> box_grid(const FourVector& center,
                                             const FourVector& width, Real span,
                                             int n) {
    std::array<AxisSpec, 4> axes;
    for (int a = 0; a < 4; ++a)
        axes[a] = AxisSpec{center[a] - span * width[a], center[a] + span * width[a], n};
    return std::make_shared<MomentumGrid>(axes);
}

WaveFunction single_spin_state(std::shared_ptr<const MomentumGrid> grid,
                               int two_j, const FourVector& center,
                               const FourVector& width) {
    PolynomialGaussian base;
    base.center = center;
    base.width = width;
    std::vector<WaveComponent> comps;
    int which = 0;
    for (int two_m = two_j; two_m >= -two_j; two_m -= 2) {
        PolynomialGaussian p = base;
        if (which == 1) p.poly[1] = {Complex(0.4, 0.0), Complex(0.0, 0.8)};
        if (which == 2) p.poly[3] = {Complex(1.0, 0.0), Complex(-0.3, 0.2)};
        comps.push_back(polynomial_gaussian_component(0, two_j, two_m, p));
        ++which;
    }
    WaveFunction psi(std::move(grid), std::move(comps));
    psi.normalize();
    return psi;
}

}  // namespace

TEST_CASE("momentum statistics of a gaussian state") {
    const FourVector center{10.0, 0.0, 0.0, 0.0};
    const FourVector width{0.5, 0.5, 0.5, 0.5};
    auto grid = box_grid(center, width, 7.0, 28);
    WaveFunction psi = gaussian_scalar(grid, center, width);

    const MomentumStats st = momentum_stats(psi);
    for (int a = 0; a < 4; ++a) {
        CHECK(std::abs(st.mean_k[a] - center[a]) < 1e-9);
        CHECK(std::abs(st.var_k[a] - 0.25) < 1e-9);
    }
    CHECK(st.spin_mass_term == 0.0);

    auto grid2 = box_grid(FourVector{2.5, 0.01, -0.02, 0.015},
                          FourVector{0.03, 0.03, 0.03, 0.03}, 7.0, 20);
    WaveFunction chi = single_spin_state(grid2, 4, FourVector{2.5, 0.01, -0.02, 0.015},
                                         FourVector{0.03, 0.03, 0.03, 0.03});
    const MomentumStats st2 = momentum_stats(chi);
    CHECK(st2.spin_mass_term ==
          doctest::Approx(3.0 / (2.5 * 2.5)).epsilon(1e-3));
}

TEST_CASE("trivial representation leaves only the derivative term") {
    const FourVector center{8.0, 0.2, -0.1, 0.3};
    const FourVector width{0.5, 0.4, 0.4, 0.4};
    auto grid = box_grid(center, width, 6.5, 10);
    WaveFunction psi = gaussian_scalar(grid, center, width);
    const RepLabel trivial{0, 1.0, 0.0};

    for (int alpha = 0; alpha < 4; ++alpha) {
        const ComplexField out = apply_Y(alpha, trivial, psi);
        REQUIRE(out.size() == 1);
        CHECK(out[0].two_j == 0);
        CHECK(out[0].two_m == 0);
        Real worst = 0;
        for (std::int64_t i = 0; i < grid->num_points(); ++i) {
            const Complex expected =
                grid->in_cone(i) ? -kI * psi.gradient_at(0, i)[alpha] : Complex(0, 0);
            worst = std::max(worst, std::abs(out[0].values[i] - expected));
        }
        CHECK(worst < 1e-14);
    }
}

TEST_CASE("operator image matches the element route") {
    const std::array<AxisSpec, 4> axes{AxisSpec{4.0, 6.0, 6}, AxisSpec{-0.8, 0.8, 6},
                                       AxisSpec{-0.8, 0.8, 6}, AxisSpec{-0.8, 0.8, 6}};
    auto grid = std::make_shared<MomentumGrid>(axes);
    PolynomialGaussian base;
    base.center = FourVector{5.0, 0.0, 0.0, 0.0};
    base.width = FourVector{0.4, 0.3, 0.3, 0.3};
    std::vector<WaveComponent> comps;
    PolynomialGaussian a = base;
    a.poly[2] = {Complex(0.3, 0.0), Complex(0.0, 1.0)};
    comps.push_back(polynomial_gaussian_component(0, 2, 2, a));
    comps.push_back(polynomial_gaussian_component(0, 2, 0, base));
    PolynomialGaussian b = base;
    b.poly[1] = {Complex(1.0, 0.0), Complex(-0.5, 0.2)};
    comps.push_back(polynomial_gaussian_component(0, 4, -2, b));
    WaveFunction psi(grid, std::move(comps));
    psi.normalize();

    const RepLabel rep{2, 0.0, 1.5};
    for (int alpha = 0; alpha < 4; ++alpha) {
        const ComplexField out = apply_Y(alpha, rep, psi);
        Real worst = 0, scale = 0;
        for (const auto& slot : out) {
            for (std::int64_t i = 0; i < grid->num_points(); ++i) {
                Complex expected(0, 0);
                if (grid->in_cone(i)) {
                    const FourVector k = grid->point(i);
                    for (int ci = 0; ci < psi.component_count(); ++ci) {
                        const auto& c = psi.component(ci);
                        if (std::abs(c.two_j - slot.two_j) > 2) continue;
                        expected += s_element(alpha, rep, slot.two_j, slot.two_m,
                                              c.two_j, c.two_m, k) *
                                    c.values[i];
                        if (c.two_j == slot.two_j && c.two_m == slot.two_m)
                            expected += -kI * psi.gradient_at(ci, i)[alpha];
                    }
                }
                worst = std::max(worst, std::abs(slot.values[i] - expected));
                scale = std::max(scale, std::abs(expected));
            }
        }
        CHECK(worst < 1e-13 * std::max<Real>(1, scale));
    }
}

TEST_CASE("diagonal image for quasi-baricentric channels") {
    const FourVector center{6.0, 0.1, 0.0, -0.2};
    const FourVector width{0.4, 0.35, 0.35, 0.35};
    auto grid = box_grid(center, width, 6.5, 10);

    WaveFunction chi = single_spin_state(grid, 2, center, width);
    const RepLabel qb{2, 0.0, 0.0};
    const ComplexField z0 = apply_Z(0, qb, chi);
    Real worst = 0;
    for (const auto& slot : z0) {
        const int ci = chi.find_component(0, slot.two_j, slot.two_m);
        REQUIRE(ci >= 0);
        for (std::int64_t i = 0; i < grid->num_points(); ++i) {
            const Complex expected =
                grid->in_cone(i) ? -kI * chi.gradient_at(ci, i)[0] : Complex(0, 0);
            worst = std::max(worst, std::abs(slot.values[i] - expected));
        }
    }
    CHECK(worst < 1e-14);

    WaveFunction psi = gaussian_scalar(grid, center, width);
    const RepLabel trivial{0, 1.0, 0.0};
    for (int alpha = 1; alpha < 4; ++alpha) {
        const ComplexField zr = apply_Z(alpha, trivial, psi);
        REQUIRE(zr.size() == 1);
        Real w2 = 0;
        for (std::int64_t i = 0; i < grid->num_points(); ++i) {
            const Complex expected =
                grid->in_cone(i) ? -kI * psi.gradient_at(0, i)[alpha] : Complex(0, 0);
            w2 = std::max(w2, std::abs(zr[0].values[i] - expected));
        }
        CHECK(w2 < 1e-14);
    }
}

TEST_CASE("mean coordinates track phase shifts") {
    const FourVector center{10.0, 0.3, -0.2, 0.4};
    const FourVector width{0.5, 0.5, 0.5, 0.5};
    auto grid = box_grid(center, width, 6.5, 24);
    WaveFunction psi = gaussian_scalar(grid, center, width);
    const PovmSpec spec = identity_quasi_baricentric({{0, 0}});

    Real imag = -1;
    const FilteredWaveFunction phi = filter_wavefunction(spec, psi);
    const auto mean = mean_coordinates(spec, phi, &imag);
    for (int a = 0; a < 4; ++a) CHECK(std::abs(mean[a]) < 1e-9);
    CHECK(imag >= 0);
    CHECK(imag < 1e-9);

    const FourVector a{0.7, -0.3, 0.2, -0.5};
    WaveFunction shifted = psi.phase_shifted(a);
    const FilteredWaveFunction phi2 = filter_wavefunction(spec, shifted);
    const auto mean2 = mean_coordinates(spec, phi2, &imag);
    for (int al = 0; al < 4; ++al) CHECK(std::abs(mean2[al] - a[al]) < 1e-8);
    CHECK(imag < 1e-8);
}

TEST_CASE("second moment of a gaussian saturates the dispersion floor") {
    const FourVector center{10.0, 0.0, 0.0, 0.0};
    const FourVector width{0.5, 0.5, 0.5, 0.5};
    auto grid = box_grid(center, width, 7.0, 24);
    WaveFunction psi = gaussian_scalar(grid, center, width);
    const PovmSpec spec = identity_quasi_baricentric({{0, 0}});
    const FilteredWaveFunction phi = filter_wavefunction(spec, psi);

    for (int alpha = 0; alpha < 4; ++alpha) {
        const Real sm = second_moment(alpha, spec, phi);
        CHECK(sm == doctest::Approx(1.0).epsilon(1e-7));
    }
}

TEST_CASE("raising term reproduces the spin mass correction") {
    const FourVector center{2.5, 0.01, -0.02, 0.015};
    const FourVector width{0.03, 0.03, 0.03, 0.03};
    auto grid = box_grid(center, width, 7.0, 20);
    WaveFunction chi = single_spin_state(grid, 2, center, width);
    const RepLabel qb{2, 0.0, 0.0};

    const MomentumStats st = momentum_stats(chi);
    Real raising = 0;
    for (int alpha = 1; alpha < 4; ++alpha) {
        const SecondMomentBreakdown b = second_moment_terms(alpha, qb, chi);
        CHECK(b.lowering_term == 0.0);
        raising += b.raising_term;
    }
    CHECK(raising == doctest::Approx(st.spin_mass_term).epsilon(5e-4));
}

TEST_CASE("term split agrees with the full image") {
    const std::array<AxisSpec, 4> axes{AxisSpec{4.0, 6.0, 8}, AxisSpec{-0.7, 0.7, 8},
                                       AxisSpec{-0.7, 0.7, 8}, AxisSpec{-0.7, 0.7, 8}};
    auto grid = std::make_shared<MomentumGrid>(axes);
    const FourVector center{5.0, 0.05, -0.1, 0.2};
    const FourVector width{0.35, 0.25, 0.25, 0.25};
    WaveFunction chi = single_spin_state(grid, 2, center, width);
    const RepLabel rep{2, 0.0, 2.0};
    const BoostGeneratorBlocks blocks = boost_generator_blocks(rep, 4);
    const SpinLabel j{2};

    for (int alpha = 0; alpha < 4; ++alpha) {
        const Real full = second_moment_full(alpha, rep, chi);
        const SecondMomentBreakdown split = second_moment_terms(alpha, rep, chi);
        CHECK(std::abs(full - split.total()) <= 1e-9 * std::max<Real>(1, full));

        Real dense = 0;
        for (std::int64_t i = 0; i < grid->num_points(); ++i) {
            if (!grid->in_cone(i)) continue;
            const FourVector k = grid->point(i);
            ComplexVector vec = ComplexVector::Zero(j.dim());
            ComplexVector grad = ComplexVector::Zero(j.dim());
            for (int ci = 0; ci < chi.component_count(); ++ci) {
                const auto& c = chi.component(ci);
                const int row = m_row(c.two_j, c.two_m);
                vec[row] = c.values[i];
                grad[row] = chi.gradient_at(ci, i)[alpha];
            }
            for (int dj = -2; dj <= 2; dj += 2) {
                const int two_to = j.two_j + dj;
                if (two_to < rep.two_j_min()) continue;
                ComplexVector image =
                    s_matrix(alpha, rep, blocks, j, SpinLabel{two_to}, k) * vec;
                if (dj == 0) image -= kI * grad;
                dense += image.squaredNorm();
            }
        }
        dense *= grid->cell_volume();
        CHECK(std::abs(full - dense) <= 1e-10 * std::max<Real>(1, full));
    }
}

TEST_CASE("variance report for a gaussian") {
    const FourVector center{10.0, 0.0, 0.0, 0.0};
    const FourVector width{0.5, 0.5, 0.5, 0.5};
    auto grid = box_grid(center, width, 7.0, 24);
    WaveFunction psi = gaussian_scalar(grid, center, width);
    const PovmSpec spec = identity_quasi_baricentric({{0, 0}});

    const VarianceReport rep = variance_report(spec, psi);
    for (int a = 0; a < 4; ++a) {
        CHECK(std::abs(rep.mean_x[a]) < 1e-9);
        CHECK(std::abs(rep.second_moment_x[a] - 1.0) < 1e-6);
        CHECK(std::abs(rep.heisenberg_margin[a]) < 1e-6);
    }
    CHECK(std::abs(rep.angular_bound_margin) < 1e-5);
    CHECK(rep.angular_bound_applicable);
    CHECK(rep.spin_mass_term == 0.0);
    CHECK(rep.provenance.second_moment_path == "quasi-baricentric");
    CHECK(rep.provenance.gradient_source == "analytic");
    CHECK(rep.provenance.total_probability == doctest::Approx(1.0).epsilon(1e-10));
    CHECK(rep.provenance.convergent);
    CHECK(rep.provenance.mean_imag_residue < 1e-9);

    const FourVector a{1.1, -0.6, 0.4, 0.9};
    const VarianceReport rep2 = variance_report(spec, psi.phase_shifted(a));
    for (int al = 0; al < 4; ++al) {
        CHECK(rep2.mean_x[al] == doctest::Approx(a[al]).epsilon(1e-8));
        CHECK(std::abs(rep2.second_moment_x[al] - 1.0) < 1e-6);
    }
    CHECK(rep2.provenance.recentered);

    WaveFunction off = gaussian_scalar(grid, center, width);
    off.scale(1.2);
    CHECK_THROWS_AS(variance_report(spec, off), std::invalid_argument);
}

TEST_CASE("uncertainty margins hold on a randomized battery") {
    std::mt19937 rng(20260818);
    std::uniform_real_distribution<Real> u(-1.0, 1.0);

    auto random_poly = [&](PolynomialGaussian& p) {
        for (int axis = 0; axis < 4; ++axis) {
            if (u(rng) < 0) continue;
            p.poly[axis] = {Complex(1.0, 0.0), Complex(0.5 * u(rng), 0.5 * u(rng)),
                            Complex(0.3 * u(rng), 0.3 * u(rng))};
        }
    };

    for (int trial = 0; trial < 8; ++trial) {
        const FourVector center{7.5 + 1.5 * u(rng), 0.5 * u(rng), 0.5 * u(rng),
                                0.5 * u(rng)};
        FourVector width;
        for (int a = 0; a < 4; ++a) width[a] = 0.45 + 0.15 * u(rng);
        auto grid = box_grid(center, width, 6.5, 18);

        const bool scalar = trial % 2 == 0;
        const int two_j = scalar ? 0 : 2;
        std::vector<WaveComponent> comps;
        for (int two_m = two_j; two_m >= -two_j; two_m -= 2) {
            PolynomialGaussian p;
            p.center = center;
            p.width = width;
            random_poly(p);
            comps.push_back(polynomial_gaussian_component(0, two_j, two_m, p));
        }
        WaveFunction psi(grid, std::move(comps));
        psi.normalize();
        const PovmSpec spec = identity_quasi_baricentric({{0, two_j}});

        const VarianceReport rep = variance_report(spec, psi);
        for (int a = 0; a < 4; ++a) CHECK(rep.heisenberg_margin[a] >= -1e-6);
        CHECK(rep.angular_bound_applicable);
        CHECK(rep.angular_bound_margin >= -1e-6);
    }
}

TEST_CASE("translation covariance of the report") {
    const FourVector center{6.0, 0.2, -0.1, 0.3};
    const FourVector width{0.4, 0.35, 0.35, 0.35};
    auto grid = box_grid(center, width, 6.5, 16);
    WaveFunction chi = single_spin_state(grid, 2, center, width);
    const PovmSpec spec = identity_quasi_baricentric({{0, 2}});

    const FourVector a{1.3, -0.4, 0.8, 0.25};
    const VarianceReport r1 = variance_report(spec, chi);
    const VarianceReport r2 = variance_report(spec, chi.phase_shifted(a));

    for (int al = 0; al < 4; ++al) {
        CHECK(std::abs(r2.mean_x[al] - r1.mean_x[al] - a[al]) < 1e-8);
        CHECK(std::abs(r2.second_moment_x[al] - r1.second_moment_x[al]) <
              1e-8 * std::max<Real>(1, r1.second_moment_x[al]));
        CHECK(std::abs(r2.var_k[al] - r1.var_k[al]) < 1e-12);
        CHECK(std::abs(r2.heisenberg_margin[al] - r1.heisenberg_margin[al]) < 1e-8);
    }
    CHECK(std::abs(r2.angular_bound_margin - r1.angular_bound_margin) < 1e-8);
}

TEST_CASE("rotation about the z axis permutes the transverse report") {
    const Real w12 = 0.4;
    const FourVector width{0.5, w12, w12, 0.35};
    const FourVector center{8.0, 0.5, -0.3, 0.6};
    PolynomialGaussian p;
    p.center = center;
    p.width = width;
    p.poly[0] = {Complex(1.0, 0.0), Complex(0.0, 0.1)};
    p.poly[3] = {Complex(0.2, 0.0), Complex(1.0, 0.0)};

    const FourVector center2{8.0, 0.3, 0.5, 0.6};
    PolynomialGaussian q = p;
    q.center = center2;

    auto grid1 = box_grid(center, width, 6.5, 16);
    auto grid2 = box_grid(center2, width, 6.5, 16);
    WaveFunction psi1(grid1, {polynomial_gaussian_component(0, 0, 0, p)});
    psi1.normalize();
    WaveFunction psi2(grid2, {polynomial_gaussian_component(0, 0, 0, q)});
    psi2.normalize();

    const FourVector a1{0.9, -0.2, 0.7, 0.1};
    const FourVector a2{0.9, -0.7, -0.2, 0.1};
    const PovmSpec spec = identity_quasi_baricentric({{0, 0}});
    const VarianceReport r1 = variance_report(spec, psi1.phase_shifted(a1));
    const VarianceReport r2 = variance_report(spec, psi2.phase_shifted(a2));

    CHECK(std::abs(r2.mean_x[1] + r1.mean_x[2]) < 1e-9);
    CHECK(std::abs(r2.mean_x[2] - r1.mean_x[1]) < 1e-9);
    CHECK(std::abs(r2.mean_x[0] - r1.mean_x[0]) < 1e-9);
    CHECK(std::abs(r2.mean_x[3] - r1.mean_x[3]) < 1e-9);
    CHECK(std::abs(r2.second_moment_x[0] - r1.second_moment_x[0]) < 1e-9);
    CHECK(std::abs(r2.second_moment_x[1] - r1.second_moment_x[2]) < 1e-9);
    CHECK(std::abs(r2.second_moment_x[2] - r1.second_moment_x[1]) < 1e-9);
    CHECK(std::abs(r2.second_moment_x[3] - r1.second_moment_x[3]) < 1e-9);
}

TEST_CASE("commutator residual table") {
    const RepLabel qb{2, 0.0, 0.0};
    const BoostGeneratorBlocks blocks = boost_generator_blocks(qb, 6);
    const FourVector k{2.0, 0.3, -0.2, 0.4};

    const CommutatorResiduals res = commutator_checks(qb, blocks, k, SpinLabel{2});
    CHECK(res.z_k_max < 1e-10);
    CHECK(res.y_k_max < 1e-10);
    CHECK(res.z0_zr_max < 5e-6);
    CHECK(res.zr_zs_max < 5e-6);
    REQUIRE(res.entries.size() == 4);
    CHECK(res.entries[0].first == "z_k");
    CHECK(res.entries[3].second == res.zr_zs_max);

    const RepLabel trivial{0, 1.0, 0.0};
    const BoostGeneratorBlocks tb = boost_generator_blocks(trivial, 2);
    const CommutatorResiduals tr =
        commutator_checks(trivial, tb, FourVector{1.5, 0.1, 0.0, -0.1}, SpinLabel{0});
    CHECK(tr.z_k_max < 1e-12);
    CHECK(tr.z0_zr_max < 1e-12);
    CHECK(tr.zr_zs_max < 1e-12);

    const CommutatorResiduals rest =
        commutator_checks(qb, blocks, FourVector{2.0, 0.0, 0.0, 0.0}, SpinLabel{2});
    CHECK(rest.z0_zr_max < 5e-6);

    // the momentum commutators do not need the quasi-baricentric form
    const RepLabel gen{2, 0.0, 1.2};
    const BoostGeneratorBlocks gb = boost_generator_blocks(gen, 6);
    const CommutatorResiduals gr = commutator_checks(gen, gb, k, SpinLabel{2});
    CHECK(gr.z_k_max < 1e-10);
    CHECK(gr.y_k_max < 1e-10);
}

TEST_CASE("gravity estimates") {
    const GravityEstimate a = gravity_estimator(100.0, 10.0, 1.0);
    CHECK(a.impact_parameter == doctest::Approx(20.0));
    CHECK(a.peripherality_ratio == doctest::Approx(1.0));
    CHECK(a.position_bound == doctest::Approx(1.0));

    const GravityEstimate b = gravity_estimator(0.0, 1.0, 1.0);
    CHECK(b.impact_parameter == 0.0);
    CHECK(b.peripherality_ratio == 0.0);

    const GravityEstimate c = gravity_estimator(1e6, 1e3, 1.0);
    CHECK(c.impact_parameter == doctest::Approx(2000.0));
    CHECK(c.peripherality_ratio == doctest::Approx(1.0));

    CHECK_THROWS_AS(gravity_estimator(-1.0, 1.0, 1.0), std::domain_error);
    CHECK_THROWS_AS(gravity_estimator(1.0, 0.0, 1.0), std::domain_error);
    CHECK_THROWS_AS(gravity_estimator(1.0, 1.0, 0.0), std::domain_error);
}

TEST_CASE("spin cap and input validation") {
    const std::array<AxisSpec, 4> axes{AxisSpec{4.0, 6.0, 5}, AxisSpec{-0.6, 0.6, 5},
                                       AxisSpec{-0.6, 0.6, 5}, AxisSpec{-0.6, 0.6, 5}};
    auto grid = std::make_shared<MomentumGrid>(axes);
    PolynomialGaussian base;
    base.center = FourVector{5.0, 0.0, 0.0, 0.0};
    base.width = FourVector{0.4, 0.3, 0.3, 0.3};

    PovmChannel mixed;
    mixed.nu = 0;
    mixed.rep = RepLabel{0, 0.5, 0.0};
    mixed.active = {{0, 0}, {0, 2}};
    mixed.mu_independent = true;
    mixed.amplitude = [](int, int, Real) { return Complex(1, 0); };
    const PovmSpec spec = make_povm_spec({mixed});
    CHECK_FALSE(spec.quasi_baricentric);

    WaveFunction psi(grid, {polynomial_gaussian_component(0, 0, 0, base),
                            polynomial_gaussian_component(0, 2, 0, base)});
    psi.normalize();
    const FilteredWaveFunction phi = filter_wavefunction(spec, psi);
    CHECK_THROWS_AS(second_moment(0, spec, phi, 1, 2), std::runtime_error);
    CHECK_NOTHROW(second_moment(0, spec, phi, 1, -1));
    CHECK_NOTHROW(second_moment(0, spec, phi, 1, 4));

    CHECK_THROWS_AS(second_moment(4, spec, phi), std::invalid_argument);
    CHECK_THROWS_AS(apply_Y(-1, mixed.rep, psi), std::invalid_argument);
    CHECK_THROWS_AS(second_moment_terms(0, mixed.rep, psi), std::invalid_argument);

    WaveFunction two_sigma(grid, {polynomial_gaussian_component(0, 0, 0, base),
                                  polynomial_gaussian_component(1, 0, 0, base)});
    two_sigma.normalize();
    CHECK_THROWS_AS(apply_Y(0, mixed.rep, two_sigma), std::invalid_argument);

    const RepLabel rep{2, 0.0, 1.2};
    const BoostGeneratorBlocks blocks = boost_generator_blocks(rep, 4);
    CHECK_THROWS_AS(
        commutator_checks(rep, blocks, FourVector{0.5, 1.0, 0.0, 0.0}, SpinLabel{2}),
        std::domain_error);
    CHECK_THROWS_AS(
        commutator_checks(rep, blocks, FourVector{2.0, 0.0, 0.0, 0.0}, SpinLabel{4}),
        std::invalid_argument);
    const RepLabel other{4, 0.0, 1.2};
    const BoostGeneratorBlocks wrong = boost_generator_blocks(other, 6);
    CHECK_THROWS_AS(
        commutator_checks(rep, wrong, FourVector{2.0, 0.0, 0.0, 0.0}, SpinLabel{2}),
        std::invalid_argument);
}
