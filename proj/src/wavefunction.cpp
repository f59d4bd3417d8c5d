#include "eventpovm/wavefunction.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>

#include "eventpovm/reduction.hpp"

namespace eventpovm {

namespace {

const Complex kI(0, 1);

// 4th-order five-point first-derivative stencils; row = offset of the
// leftmost sample relative to the evaluation point.
Real stencil_weight(int variant, int tap) {
    static const Real w[5][5] = {
        {-25.0 / 12, 4.0, -3.0, 4.0 / 3, -1.0 / 4},
        {-1.0 / 4, -5.0 / 6, 3.0 / 2, -1.0 / 2, 1.0 / 12},
        {1.0 / 12, -2.0 / 3, 0.0, 2.0 / 3, -1.0 / 12},
        {-1.0 / 12, 1.0 / 2, -3.0 / 2, 5.0 / 6, 1.0 / 4},
        {1.0 / 4, -4.0 / 3, 3.0, -4.0, 25.0 / 12},
    };
    return w[variant][tap];
}

}  // namespace

WaveFunction::WaveFunction(std::shared_ptr<const MomentumGrid> grid,
                           std::vector<WaveComponent> components, int threads)
    : grid_(std::move(grid)), comps_(std::move(components)) {
    if (!grid_) throw std::invalid_argument("wave function needs a grid");
    if (comps_.empty()) throw std::invalid_argument("wave function needs components");
    for (std::size_t a = 0; a < comps_.size(); ++a) {
        const auto& c = comps_[a];
        if (c.two_j < 0 || std::abs(c.two_m) > c.two_j ||
            ((c.two_j - c.two_m) & 1) != 0)
            throw std::invalid_argument("component has an invalid (j, m) pair");
        for (std::size_t b = 0; b < a; ++b)
            if (comps_[b].sigma == c.sigma && comps_[b].two_j == c.two_j &&
                comps_[b].two_m == c.two_m)
                throw std::invalid_argument("duplicate (sigma, j, m) component");
    }
    const std::int64_t n = grid_->num_points();
    for (auto& c : comps_) {
        if (c.values.size() == 0) {
            if (!c.value_fn)
                throw std::invalid_argument("component lacks both values and value_fn");
            c.values.resize(n);
            Complex* out = c.values.data();
            const auto& g = *grid_;
            const auto& fn = c.value_fn;
            parallel_for(n, threads,
                         [out, &g, &fn](std::int64_t i) { out[i] = fn(g.point(i)); });
        } else if (c.values.size() != n) {
            throw std::invalid_argument("component values do not match the grid size");
        }
    }
    // cone mask and diagnostics
    Real box_mass = 0, kept_mass = 0, peak = 0, face_peak = 0;
    for (auto& c : comps_) {
        Complex* v = c.values.data();
        box_mass += deterministic_sum(n, threads,
                                      [v](std::int64_t i) { return std::norm(v[i]); });
        const auto& g = *grid_;
        parallel_for(n, threads, [v, &g](std::int64_t i) {
            if (!g.in_cone(i)) v[i] = Complex(0, 0);
        });
        kept_mass += deterministic_sum(n, threads,
                                       [v](std::int64_t i) { return std::norm(v[i]); });
        for (std::int64_t i = 0; i < n; ++i) {
            const Real m = std::abs(v[i]);
            peak = std::max(peak, m);
            if (grid_->on_face(i)) face_peak = std::max(face_peak, m);
        }
    }
    clip_fraction_ = box_mass > 0 ? std::max<Real>(0, 1 - kept_mass / box_mass) : 0;
    face_ratio_ = peak > 0 ? face_peak / peak : 0;
}

int WaveFunction::find_component(int sigma, int two_j, int two_m) const {
    for (std::size_t i = 0; i < comps_.size(); ++i)
        if (comps_[i].sigma == sigma && comps_[i].two_j == two_j &&
            comps_[i].two_m == two_m)
            return static_cast<int>(i);
    return -1;
}

bool WaveFunction::analytic_gradients() const {
    for (const auto& c : comps_)
        if (!c.gradient_fn) return false;
    return true;
}

Real WaveFunction::norm_squared(int threads) const {
    const std::int64_t n = grid_->num_points();
    Real total = 0;
    for (const auto& c : comps_) {
        const Complex* v = c.values.data();
        total += grid_->cell_volume() *
                 deterministic_sum(n, threads,
                                   [v](std::int64_t i) { return std::norm(v[i]); });
    }
    return total;
}

void WaveFunction::scale(Real s) {
    for (auto& c : comps_) {
        c.values *= Complex(s, 0);
        if (c.value_fn) {
            auto old = c.value_fn;
            c.value_fn = [old, s](const FourVector& k) { return s * old(k); };
        }
        if (c.gradient_fn) {
            auto old = c.gradient_fn;
            c.gradient_fn = [old, s](const FourVector& k) {
                auto g = old(k);
                for (auto& gi : g) gi *= s;
                return g;
            };
        }
    }
}

void WaveFunction::normalize(int threads) {
    const Real n2 = norm_squared(threads);
    if (!(n2 > 0) || !std::isfinite(n2))
        throw std::runtime_error("cannot normalize a state with zero norm");
    scale(1.0 / std::sqrt(n2));
}

WaveFunction WaveFunction::phase_shifted(const FourVector& a, int threads) const {
    const FourVector lower(a[0], -a[1], -a[2], -a[3]);
    std::vector<WaveComponent> out = comps_;
    const auto& g = *grid_;
    for (std::size_t ci = 0; ci < out.size(); ++ci) {
        auto& c = out[ci];
        Complex* v = c.values.data();
        parallel_for(g.num_points(), threads, [v, &g, &a](std::int64_t i) {
            v[i] *= std::exp(kI * minkowski_dot(a, g.point(i)));
        });
        if (c.value_fn) {
            auto old = c.value_fn;
            c.value_fn = [old, a](const FourVector& k) {
                return std::exp(kI * minkowski_dot(a, k)) * old(k);
            };
        }
        if (c.gradient_fn && comps_[ci].value_fn) {
            auto old_grad = c.gradient_fn;
            auto old_val = comps_[ci].value_fn;
            c.gradient_fn = [old_grad, old_val, lower, a](const FourVector& k) {
                const Complex phase = std::exp(kI * minkowski_dot(a, k));
                const Complex val = old_val(k);
                auto grad = old_grad(k);
                for (int al = 0; al < 4; ++al)
                    grad[al] = phase * (grad[al] + kI * lower[al] * val);
                return grad;
            };
        } else {
            c.gradient_fn = GradientFn();
        }
    }
    return WaveFunction(grid_, std::move(out), threads);
}

std::array<Complex, 4> WaveFunction::gradient_at(int comp, std::int64_t flat) const {
    const auto& c = comps_[comp];
    if (c.gradient_fn) return c.gradient_fn(grid_->point(flat));
    std::array<Complex, 4> out{};
    const auto idx = grid_->indices(flat);
    for (int a = 0; a < 4; ++a) {
        const int n = grid_->axis(a).n;
        if (n < 5)
            throw std::runtime_error(
                "finite-difference gradients need at least 5 points per axis");
        int variant, left;
        if (idx[a] <= 1) {
            variant = idx[a];
            left = -idx[a];
        } else if (idx[a] >= n - 2) {
            variant = 4 - (n - 1 - idx[a]);
            left = (n - 5) - idx[a];
        } else {
            variant = 2;
            left = -2;
        }
        Complex acc(0, 0);
        const std::int64_t base = flat + left * grid_->stride(a);
        for (int t = 0; t < 5; ++t)
            acc += stencil_weight(variant, t) * c.values[base + t * grid_->stride(a)];
        out[a] = acc / grid_->step(a);
    }
    return out;
}

std::vector<int> WaveFunction::sigma_list() const {
    std::vector<int> out;
    for (const auto& c : comps_)
        if (std::find(out.begin(), out.end(), c.sigma) == out.end())
            out.push_back(c.sigma);
    std::sort(out.begin(), out.end());
    return out;
}

std::vector<int> WaveFunction::two_j_list() const {
    std::vector<int> out;
    for (const auto& c : comps_)
        if (std::find(out.begin(), out.end(), c.two_j) == out.end())
            out.push_back(c.two_j);
    std::sort(out.begin(), out.end());
    return out;
}

ValueFn polynomial_gaussian_value(const PolynomialGaussian& spec) {
    return [spec](const FourVector& k) {
        Complex prod(1, 0);
        for (int a = 0; a < 4; ++a) {
            const Real u = (k[a] - spec.center[a]) / spec.width[a];
            Complex p(1, 0);
            if (!spec.poly[a].empty()) {
                p = Complex(0, 0);
                Real un = 1;
                for (const Complex& coef : spec.poly[a]) {
                    p += coef * un;
                    un *= u;
                }
            }
            prod *= p * std::exp(-0.25 * u * u);
        }
        return prod;
    };
}

GradientFn polynomial_gaussian_gradient(const PolynomialGaussian& spec) {
    return [spec](const FourVector& k) {
        std::array<Complex, 4> factor, dfactor;
        for (int a = 0; a < 4; ++a) {
            const Real u = (k[a] - spec.center[a]) / spec.width[a];
            Complex p(1, 0), dp(0, 0);
            if (!spec.poly[a].empty()) {
                p = Complex(0, 0);
                Real un = 1;
                for (std::size_t d = 0; d < spec.poly[a].size(); ++d) {
                    p += spec.poly[a][d] * un;
                    if (d + 1 < spec.poly[a].size())
                        dp += spec.poly[a][d + 1] * Real(d + 1) * un;
                    un *= u;
                }
            }
            const Real env = std::exp(-0.25 * u * u);
            factor[a] = p * env;
            dfactor[a] = (dp - 0.5 * u * p) * env / spec.width[a];
        }
        std::array<Complex, 4> grad;
        for (int a = 0; a < 4; ++a) {
            Complex g = dfactor[a];
            for (int b = 0; b < 4; ++b)
                if (b != a) g *= factor[b];
            grad[a] = g;
        }
        return grad;
    };
}

WaveComponent polynomial_gaussian_component(int sigma, int two_j, int two_m,
                                            const PolynomialGaussian& spec) {
    WaveComponent c;
    c.sigma = sigma;
    c.two_j = two_j;
    c.two_m = two_m;
    c.value_fn = polynomial_gaussian_value(spec);
    c.gradient_fn = polynomial_gaussian_gradient(spec);
    return c;
}

WaveFunction gaussian_scalar(std::shared_ptr<const MomentumGrid> grid,
                             const FourVector& center, const FourVector& width,
                             int threads) {
    PolynomialGaussian spec;
    spec.center = center;
    spec.width = width;
    Real prefactor = 1;
    for (int a = 0; a < 4; ++a) {
        if (!(width[a] > 0)) throw std::invalid_argument("gaussian width must be positive");
        prefactor *= std::pow(2 * M_PI * width[a] * width[a], -0.25);
    }
    WaveComponent c = polynomial_gaussian_component(0, 0, 0, spec);
    auto val = c.value_fn;
    auto grad = c.gradient_fn;
    c.value_fn = [val, prefactor](const FourVector& k) { return prefactor * val(k); };
    c.gradient_fn = [grad, prefactor](const FourVector& k) {
        auto g = grad(k);
        for (auto& gi : g) gi *= prefactor;
        return g;
    };
    std::vector<WaveComponent> comps;
    comps.push_back(std::move(c));
    return WaveFunction(std::move(grid), std::move(comps), threads);
}

PolynomialGaussian polynomial_gaussian_times_axis(const PolynomialGaussian& spec,
                                                  int axis) {
    if (axis < 0 || axis > 3) throw std::invalid_argument("axis must be 0..3");
    // k^a = c + w u, so the axis polynomial p(u) becomes c p(u) + w u p(u).
    std::vector<Complex> p = spec.poly[axis];
    if (p.empty()) p = {Complex(1, 0)};
    const Complex c(spec.center[axis], 0), w(spec.width[axis], 0);
    std::vector<Complex> out(p.size() + 1, Complex(0, 0));
    for (std::size_t n = 0; n < p.size(); ++n) {
        out[n] += c * p[n];
        out[n + 1] += w * p[n];
    }
    PolynomialGaussian result = spec;
    result.poly[axis] = std::move(out);
    return result;
}

PolynomialGaussian polynomial_gaussian_derivative(const PolynomialGaussian& spec,
                                                  int axis) {
    if (axis < 0 || axis > 3) throw std::invalid_argument("axis must be 0..3");
    // d/dk^a = (1/w) d/du maps p(u) to (p'(u) - u p(u)/2) / w.
    std::vector<Complex> p = spec.poly[axis];
    if (p.empty()) p = {Complex(1, 0)};
    const Real w = spec.width[axis];
    std::vector<Complex> out(p.size() + 1, Complex(0, 0));
    for (std::size_t n = 0; n + 1 < p.size(); ++n)
        out[n] += Real(n + 1) * p[n + 1];
    for (std::size_t n = 0; n < p.size(); ++n) out[n + 1] -= Real(0.5) * p[n];
    for (auto& v : out) v /= w;
    PolynomialGaussian result = spec;
    result.poly[axis] = std::move(out);
    return result;
}

}  // namespace eventpovm
