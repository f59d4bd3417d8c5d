#include "eventpovm/asymptotic_model.hpp"

#include <algorithm>
#include <cmath>
#include <memory>
#include <stdexcept>
#include <utility>

#include "eventpovm/povm_core.hpp"
#include "eventpovm/reduction.hpp"
#include "eventpovm/variance_engine.hpp"

namespace eventpovm {

namespace {

constexpr Real kInvSqrt2Pi = 0.3989422804014327;

struct AxisRule {
    std::vector<Real> nodes;
    std::vector<Real> weights;
};

AxisRule plain_rule(Real a, Real b, int n) {
    AxisRule r;
    gauss_legendre(n, a, b, r.nodes, r.weights);
    return r;
}

// Log-graded panels toward zero so features whose width shrinks with |q|
// stay resolved; plain Gauss-Legendre when the box does not straddle zero.
AxisRule graded_rule(Real a, Real b, int per_panel) {
    if (!(a < 0.0 && b > 0.0)) return plain_rule(a, b, 4 * per_panel);
    AxisRule r;
    auto add_panels = [&](Real lo_mag, Real hi_mag, Real sign) {
        std::vector<Real> n, w;
        Real lo = sign * lo_mag;
        Real hi = sign * hi_mag;
        if (lo > hi) std::swap(lo, hi);
        gauss_legendre(per_panel, lo, hi, n, w);
        r.nodes.insert(r.nodes.end(), n.begin(), n.end());
        r.weights.insert(r.weights.end(), w.begin(), w.end());
    };
    for (Real sign : {-1.0, 1.0}) {
        const Real edge = sign < 0 ? -a : b;
        const std::array<Real, 5> cuts = {0.0, edge / 64, edge / 16, edge / 4, edge};
        for (int p = 0; p < 4; ++p) add_panels(cuts[p], cuts[p + 1], sign);
    }
    return r;
}

std::array<AxisRule, 4> profile_rules(const ProfileFunction& f, int points_per_axis) {
    if (points_per_axis < 4) throw std::invalid_argument("quadrature needs at least 4 points per axis");
    const int per_panel = std::max(4, points_per_axis / 4);
    std::array<AxisRule, 4> rules;
    for (int a = 0; a < 4; ++a) {
        if (!(f.support_max[a] > f.support_min[a]))
            throw std::invalid_argument("profile support box is empty");
        rules[a] = graded_rule(f.support_min[a], f.support_max[a], per_panel);
    }
    return rules;
}

template <typename F>
Real integrate4(const std::array<AxisRule, 4>& rules, int threads, F&& integrand) {
    const std::int64_t n0 = static_cast<std::int64_t>(rules[0].nodes.size());
    const std::int64_t n1 = static_cast<std::int64_t>(rules[1].nodes.size());
    const std::int64_t n2 = static_cast<std::int64_t>(rules[2].nodes.size());
    const std::int64_t n3 = static_cast<std::int64_t>(rules[3].nodes.size());
    const std::int64_t total = n0 * n1 * n2 * n3;
    return deterministic_sum(total, threads, [&](std::int64_t flat) {
        const std::int64_t i3 = flat % n3;
        const std::int64_t i2 = (flat / n3) % n2;
        const std::int64_t i1 = (flat / (n3 * n2)) % n1;
        const std::int64_t i0 = flat / (n3 * n2 * n1);
        FourVector q;
        q << rules[0].nodes[i0], rules[1].nodes[i1], rules[2].nodes[i2],
            rules[3].nodes[i3];
        const Real w = rules[0].weights[i0] * rules[1].weights[i1] *
                       rules[2].weights[i2] * rules[3].weights[i3];
        return w * integrand(q);
    });
}

void require_positive_time_support(const ProfileFunction& f) {
    if (f.support_min[0] <= 0.0)
        throw std::domain_error("profile support touches q0 = 0");
}

}  // namespace

PlanarProfile gaussian_planar_profile(Real center0, Real center3, Real width0,
                                      Real width3, Real span) {
    if (!(width0 > 0.0) || !(width3 > 0.0))
        throw std::invalid_argument("planar profile widths must be positive");
    if (!(span > 0.0)) throw std::invalid_argument("planar profile span must be positive");
    const Real amp = 1.0 / std::sqrt(2.0 * M_PI * width0 * width3);
    const Real inv0 = 1.0 / (4.0 * width0 * width0);
    const Real inv3 = 1.0 / (4.0 * width3 * width3);
    PlanarProfile g;
    g.value = [=](Real q0, Real q3) -> Complex {
        const Real d0 = q0 - center0;
        const Real d3 = q3 - center3;
        return amp * std::exp(-d0 * d0 * inv0 - d3 * d3 * inv3);
    };
    g.gradient = [=](Real q0, Real q3) -> std::array<Complex, 2> {
        const Real d0 = q0 - center0;
        const Real d3 = q3 - center3;
        const Complex v = amp * std::exp(-d0 * d0 * inv0 - d3 * d3 * inv3);
        return {-2.0 * d0 * inv0 * v, -2.0 * d3 * inv3 * v};
    };
    g.support_min = {center0 - span * width0, center3 - span * width3};
    g.support_max = {center0 + span * width0, center3 + span * width3};
    return g;
}

ProfileFunction special_gaussian(const PlanarProfile& g, Real transverse_half,
                                 int check_points) {
    if (!(transverse_half > 0.0))
        throw std::invalid_argument("transverse half-width must be positive");
    if (!(g.support_max[0] > g.support_min[0]) || !(g.support_max[1] > g.support_min[1]))
        throw std::invalid_argument("planar profile support box is empty");
    AxisRule r0 = plain_rule(g.support_min[0], g.support_max[0], check_points);
    AxisRule r3 = plain_rule(g.support_min[1], g.support_max[1], check_points);
    CompensatedSum norm;
    for (std::size_t i = 0; i < r0.nodes.size(); ++i)
        for (std::size_t k = 0; k < r3.nodes.size(); ++k)
            norm.add(r0.weights[i] * r3.weights[k] *
                     std::norm(g.value(r0.nodes[i], r3.nodes[k])));
    if (std::abs(norm.value() - 1.0) > 1e-8)
        throw std::invalid_argument("planar profile must be normalized to unit L2 norm");

    ProfileFunction f;
    auto gval = g.value;
    auto ggrad = g.gradient;
    f.value = [gval](const FourVector& q) -> Complex {
        if (q[0] <= 0.0) return Complex(0.0, 0.0);
        const Real perp2 = q[1] * q[1] + q[2] * q[2];
        const Real pref = kInvSqrt2Pi / q[0] * std::exp(-perp2 / (4.0 * q[0] * q[0]));
        return pref * gval(q[0], q[3]);
    };
    f.gradient = [gval, ggrad](const FourVector& q) -> std::array<Complex, 4> {
        if (q[0] <= 0.0) return {Complex(0, 0), Complex(0, 0), Complex(0, 0), Complex(0, 0)};
        const Real q0 = q[0];
        const Real perp2 = q[1] * q[1] + q[2] * q[2];
        const Real pref = kInvSqrt2Pi / q0 * std::exp(-perp2 / (4.0 * q0 * q0));
        const Complex gv = gval(q0, q[3]);
        const std::array<Complex, 2> gg = ggrad(q0, q[3]);
        const Complex fv = pref * gv;
        std::array<Complex, 4> out;
        out[0] = fv * (-1.0 / q0 + perp2 / (2.0 * q0 * q0 * q0)) + pref * gg[0];
        out[1] = fv * (-q[1] / (2.0 * q0 * q0));
        out[2] = fv * (-q[2] / (2.0 * q0 * q0));
        out[3] = pref * gg[1];
        return out;
    };
    f.support_min = {g.support_min[0], -transverse_half, -transverse_half, g.support_min[1]};
    f.support_max = {g.support_max[0], transverse_half, transverse_half, g.support_max[1]};
    return f;
}

ProfileFunction default_model_profile() {
    const Real center0 = 1.5;
    const Real width0 = 0.2;
    const PlanarProfile g = gaussian_planar_profile(center0, 0.0, width0, 1.0);
    return special_gaussian(g, 7.0 * (center0 + 3.0 * width0));
}

Real profile_norm_squared(const ProfileFunction& f, int points_per_axis) {
    const auto rules = profile_rules(f, points_per_axis);
    return integrate4(rules, 1, [&](const FourVector& q) { return std::norm(f.value(q)); });
}

Real compute_A(const ProfileFunction& f, int points_per_axis) {
    require_positive_time_support(f);
    const auto rules = profile_rules(f, points_per_axis);
    return integrate4(rules, 1, [&](const FourVector& q) {
        return std::norm(f.value(q)) / (q[0] * q[0]);
    });
}

ModelState build_model_state(SpinLabel j, const ProfileFunction& f,
                             const ModelGridOptions& options) {
    if (j.two_j <= 0) throw std::invalid_argument("the model needs a positive spin");
    require_positive_time_support(f);
    const Real jr = j.j();
    const Real s0 = std::pow(jr, -0.5);
    const Real s3 = std::pow(jr, -0.25);
    const Real amp = std::pow(jr, -0.375);

    std::array<AxisSpec, 4> axes;
    axes[0] = {f.support_min[0] / s0, f.support_max[0] / s0, options.points_per_axis};
    axes[1] = {f.support_min[1], f.support_max[1], options.points_per_axis};
    axes[2] = {f.support_min[2], f.support_max[2], options.points_per_axis};
    axes[3] = {f.support_min[3] / s3, f.support_max[3] / s3, options.points_per_axis};
    auto grid = std::make_shared<MomentumGrid>(axes, options.leak_tol);

    auto fval = f.value;
    auto fgrad = f.gradient;
    auto to_q = [s0, s3](const FourVector& k) {
        FourVector q;
        q << s0 * k[0], k[1], k[2], s3 * k[3];
        return q;
    };
    if (options.mass_floor < 0.0 || options.mass_floor >= 1.0)
        throw std::invalid_argument("mass floor must lie in [0, 1)");
    const Real floor2 = options.mass_floor * options.mass_floor;
    auto above_floor = [floor2](const FourVector& k) {
        const Real m2 = k[0] * k[0] - spatial_norm_squared(k);
        return m2 >= floor2 * k[0] * k[0];
    };
    WaveComponent comp;
    comp.sigma = 0;
    comp.two_j = j.two_j;
    comp.two_m = j.two_j;
    comp.value_fn = [fval, to_q, amp, above_floor](const FourVector& k) -> Complex {
        if (!above_floor(k)) return Complex(0.0, 0.0);
        return amp * fval(to_q(k));
    };
    comp.gradient_fn = [fgrad, to_q, amp, s0, s3,
                        above_floor](const FourVector& k) -> std::array<Complex, 4> {
        if (!above_floor(k)) return {Complex(0, 0), Complex(0, 0), Complex(0, 0), Complex(0, 0)};
        std::array<Complex, 4> g = fgrad(to_q(k));
        return {amp * s0 * g[0], amp * g[1], amp * g[2], amp * s3 * g[3]};
    };

    WaveFunction psi(grid, {std::move(comp)}, options.threads);
    const Real raw = psi.norm_squared(options.threads);
    psi.normalize(options.threads);
    return ModelState{j, std::move(psi), raw};
}

LimitStudy limit_study(const ProfileFunction& f, const std::vector<int>& j_list,
                       const ModelGridOptions& options) {
    if (j_list.empty()) throw std::invalid_argument("the study needs at least one spin");
    for (std::size_t i = 0; i < j_list.size(); ++i) {
        if (j_list[i] < 1) throw std::invalid_argument("the study needs spins j >= 1");
        if (i > 0 && j_list[i] <= j_list[i - 1])
            throw std::invalid_argument("the spin list must increase strictly");
    }
    require_positive_time_support(f);

    LimitStudy study;
    const int qpoints = std::max(40, options.points_per_axis);
    study.a_value = compute_A(f, qpoints);

    const auto rules = profile_rules(f, qpoints);
    auto limit_integral = [&](int grad_axis, int weight_axis, Real sign) {
        return integrate4(rules, options.threads, [&](const FourVector& q) {
            const Complex fv = f.value(q);
            const Complex dv = f.gradient(q)[grad_axis];
            const Complex term =
                sign * 0.5 * q[weight_axis] / (q[0] * q[0]) * fv - Complex(0, 1) * dv;
            return std::norm(term);
        });
    };
    study.limit_targets[0] = 0.0;
    study.limit_targets[1] = limit_integral(1, 2, 1.0) + 0.5 * study.a_value;
    study.limit_targets[2] = limit_integral(2, 1, -1.0) + 0.5 * study.a_value;
    study.limit_targets[3] = 0.0;

    for (int jint : j_list) {
        const SpinLabel j{2 * jint};
        ModelState state = build_model_state(j, f, options);
        const PovmSpec spec = identity_quasi_baricentric({{0, j.two_j}});
        EngineOptions eopts;
        eopts.threads = options.threads;
        const VarianceReport report = variance_report(spec, state.psi, eopts);
        LimitRow row;
        row.j = j.j();
        row.second_moment_x = report.second_moment_x;
        row.spin_mass_term = report.spin_mass_term;
        row.cone_clip_fraction = report.provenance.cone_clip_fraction;
        row.raw_norm_squared = state.raw_norm_squared;
        study.rows.push_back(row);
    }
    return study;
}

}  // namespace eventpovm
