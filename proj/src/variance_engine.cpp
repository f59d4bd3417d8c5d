#include "eventpovm/variance_engine.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>
#include <utility>

#include "eventpovm/reduction.hpp"

namespace eventpovm {

namespace {

const Complex kI(0, 1);
constexpr std::size_t kMaxTargets = 64;

Real eps_sign(int r, int s, int t) {
    if (r == s || s == t || r == t) return 0;
    return ((s - r + 3) % 3 == 1) ? 1 : -1;
}

struct PointCache {
    FourVector k;
    Real inv_mu = 0;
    Real inv_mu2 = 0;
    Real g1 = 0;  // 1 / (mu (mu + k0))
    Real g2 = 0;  // 1 / (mu^2 (mu + k0))
    bool in_cone = false;
};

PointCache point_cache(const MomentumGrid& grid, std::int64_t i) {
    PointCache pc;
    pc.in_cone = grid.in_cone(i);
    if (!pc.in_cone) return pc;
    pc.k = grid.point(i);
    const Real mu = invariant_mass(pc.k);
    pc.inv_mu = 1 / mu;
    pc.inv_mu2 = pc.inv_mu * pc.inv_mu;
    pc.g1 = pc.inv_mu / (mu + pc.k[0]);
    pc.g2 = pc.inv_mu2 / (mu + pc.k[0]);
    return pc;
}

struct PairTerm {
    int target = 0;
    int source = 0;
    bool diagonal = false;
    std::array<Complex, 3> n{};
    std::array<Complex, 3> mrot{};
};

Complex pair_value(const PairTerm& t, int alpha, const PointCache& pc) {
    const Complex kn =
        pc.k[1] * t.n[0] + pc.k[2] * t.n[1] + pc.k[3] * t.n[2];
    if (alpha == 0) return kn * pc.inv_mu2;
    const int r = alpha - 1;
    Complex val = -t.n[r] * pc.inv_mu - (pc.k[alpha] * pc.g2) * kn;
    if (t.diagonal) {
        const int s = (r + 1) % 3, u = (r + 2) % 3;
        val += (pc.k[s + 1] * t.mrot[u] - pc.k[u + 1] * t.mrot[s]) * pc.g1;
    }
    return val;
}

struct TargetInfo {
    int two_j = 0;
    int two_m = 0;
    int phi_comp = -1;
};

enum class KernelMode { Full, Diagonal, Raising, Lowering };

struct ChannelKernel {
    std::vector<TargetInfo> targets;
    std::vector<PairTerm> terms;
    std::vector<int> diag_target_of_source;
    bool with_derivative = false;
};

std::vector<int> mode_steps(KernelMode mode) {
    switch (mode) {
        case KernelMode::Full: return {0, 2, -2};
        case KernelMode::Diagonal: return {0};
        case KernelMode::Raising: return {2};
        case KernelMode::Lowering: return {-2};
    }
    return {};
}

bool step_allowed(const RepLabel& rep, int two_j_from, int dj) {
    const int two_j_to = two_j_from + dj;
    if (two_j_to < rep.two_j_min()) return false;
    if (dj == 2 && q_coefficient(SpinLabel{two_j_to}, rep) == 0) return false;
    if (dj == -2 && q_coefficient(SpinLabel{two_j_from}, rep) == 0) return false;
    return true;
}

ChannelKernel build_kernel(const RepLabel& rep, const WaveFunction& phi,
                           KernelMode mode, int two_j_cap) {
    const auto sigmas = phi.sigma_list();
    if (sigmas.size() != 1)
        throw std::invalid_argument("operator application needs a single-sigma state");
    const int sigma0 = sigmas[0];

    ChannelKernel ker;
    ker.with_derivative =
        mode == KernelMode::Full || mode == KernelMode::Diagonal;
    const std::vector<int> djs = mode_steps(mode);

    std::vector<std::pair<int, int>> keys;
    auto add_key = [&](int tj, int tm) {
        const auto key = std::make_pair(tj, tm);
        if (std::find(keys.begin(), keys.end(), key) == keys.end())
            keys.push_back(key);
    };
    for (const auto& c : phi.components()) {
        if (c.two_j < rep.two_j_min() ||
            ((c.two_j - rep.two_j_min()) & 1) != 0)
            throw std::invalid_argument(
                "state spin outside the representation tower");
        for (const int dj : djs) {
            if (!step_allowed(rep, c.two_j, dj)) continue;
            const int tj = c.two_j + dj;
            if (two_j_cap >= 0 && tj > two_j_cap)
                throw std::runtime_error(
                    "required spin coupling exceeds the configured cap");
            for (const int dm : {2, 0, -2}) {
                const int tm = c.two_m + dm;
                if (std::abs(tm) <= tj) add_key(tj, tm);
            }
        }
        if (ker.with_derivative) add_key(c.two_j, c.two_m);
    }
    std::sort(keys.begin(), keys.end(), [](const auto& a, const auto& b) {
        return a.first != b.first ? a.first < b.first : a.second > b.second;
    });
    if (keys.size() > kMaxTargets)
        throw std::runtime_error("too many coupled spin components in one channel");

    for (const auto& [tj, tm] : keys)
        ker.targets.push_back(TargetInfo{tj, tm, phi.find_component(sigma0, tj, tm)});
    auto index_of = [&](int tj, int tm) {
        for (std::size_t t = 0; t < keys.size(); ++t)
            if (keys[t].first == tj && keys[t].second == tm)
                return static_cast<int>(t);
        throw std::logic_error("kernel target lookup failed");
    };

    for (std::size_t ci = 0; ci < phi.components().size(); ++ci) {
        const auto& c = phi.component(static_cast<int>(ci));
        for (const int dj : djs) {
            if (!step_allowed(rep, c.two_j, dj)) continue;
            const int tj = c.two_j + dj;
            for (const int dm : {2, 0, -2}) {
                const int tm = c.two_m + dm;
                if (std::abs(tm) > tj) continue;
                PairTerm t;
                t.target = index_of(tj, tm);
                t.source = static_cast<int>(ci);
                t.diagonal = dj == 0;
                bool nonzero = false;
                for (int r = 0; r < 3; ++r) {
                    if (dj == 0)
                        t.n[r] = n_diagonal_element(rep, r, c.two_j, tm, c.two_m);
                    else if (dj == 2)
                        t.n[r] = n_raising_element(rep, r, c.two_j, tm, c.two_m);
                    else
                        t.n[r] = n_lowering_element(rep, r, c.two_j, tm, c.two_m);
                    if (t.diagonal)
                        t.mrot[r] =
                            angular_momentum_element(r, c.two_j, tm, c.two_m);
                    nonzero = nonzero || t.n[r] != Complex(0, 0) ||
                              (t.diagonal && t.mrot[r] != Complex(0, 0));
                }
                if (nonzero) ker.terms.push_back(t);
            }
        }
        ker.diag_target_of_source.push_back(
            ker.with_derivative ? index_of(c.two_j, c.two_m) : -1);
    }
    return ker;
}

void eval_kernel(const ChannelKernel& ker, int alpha, const WaveFunction& phi,
                 std::int64_t i, Complex* acc) {
    const std::size_t nt = ker.targets.size();
    std::fill(acc, acc + nt, Complex(0, 0));
    const auto& grid = phi.grid();
    if (!grid.in_cone(i)) return;
    const PointCache pc = point_cache(grid, i);
    for (const PairTerm& t : ker.terms)
        acc[t.target] += pair_value(t, alpha, pc) * phi.component(t.source).values[i];
    if (ker.with_derivative)
        for (std::size_t s = 0; s < ker.diag_target_of_source.size(); ++s)
            acc[ker.diag_target_of_source[s]] +=
                -kI * phi.gradient_at(static_cast<int>(s), i)[alpha];
}

Real field_norm_squared(const ChannelKernel& ker, int alpha, const WaveFunction& phi,
                        int threads) {
    const std::size_t nt = ker.targets.size();
    if (nt == 0) return 0;
    const Real sum = deterministic_sum(
        phi.grid().num_points(), threads, [&](std::int64_t i) {
            std::array<Complex, kMaxTargets> acc;
            eval_kernel(ker, alpha, phi, i, acc.data());
            Real s = 0;
            for (std::size_t t = 0; t < nt; ++t) s += std::norm(acc[t]);
            return s;
        });
    return sum * phi.grid().cell_volume();
}

Complex mean_contraction(const ChannelKernel& ker, int alpha, const WaveFunction& phi,
                         int threads) {
    const std::size_t nt = ker.targets.size();
    const Complex sum = deterministic_sum_complex(
        phi.grid().num_points(), threads, [&](std::int64_t i) {
            std::array<Complex, kMaxTargets> acc;
            eval_kernel(ker, alpha, phi, i, acc.data());
            Complex s(0, 0);
            for (std::size_t t = 0; t < nt; ++t) {
                const int pc = ker.targets[t].phi_comp;
                if (pc < 0) continue;
                s += std::conj(phi.component(pc).values[i]) * acc[t];
            }
            return s;
        });
    return sum * phi.grid().cell_volume();
}

ComplexField apply_field(int alpha, const RepLabel& rep, const WaveFunction& phi,
                         KernelMode mode, int threads) {
    if (alpha < 0 || alpha > 3) throw std::invalid_argument("alpha must be 0..3");
    const ChannelKernel ker = build_kernel(rep, phi, mode, -1);
    const std::int64_t n = phi.grid().num_points();
    ComplexField out(ker.targets.size());
    for (std::size_t t = 0; t < ker.targets.size(); ++t) {
        out[t].two_j = ker.targets[t].two_j;
        out[t].two_m = ker.targets[t].two_m;
        out[t].values = ComplexVector::Zero(n);
    }
    parallel_for(n, threads, [&](std::int64_t i) {
        std::array<Complex, kMaxTargets> acc;
        eval_kernel(ker, alpha, phi, i, acc.data());
        for (std::size_t t = 0; t < ker.targets.size(); ++t)
            out[t].values[i] = acc[t];
    });
    return out;
}

enum class MomentPath { Full, SingleJ, QuasiBaricentric };

MomentPath choose_path(const PovmSpec& spec, const FilteredWaveFunction& phi) {
    if (spec.quasi_baricentric) return MomentPath::QuasiBaricentric;
    for (const auto& ch : phi.channels)
        if (ch.phi.two_j_list().size() != 1) return MomentPath::Full;
    return MomentPath::SingleJ;
}

const char* path_name(MomentPath p) {
    switch (p) {
        case MomentPath::Full: return "full";
        case MomentPath::SingleJ: return "single-j";
        case MomentPath::QuasiBaricentric: return "quasi-baricentric";
    }
    return "";
}

}  // namespace

MomentumStats momentum_stats(const WaveFunction& psi, int threads) {
    MomentumStats st;
    const auto& grid = psi.grid();
    const std::int64_t n = grid.num_points();
    const Real vol = grid.cell_volume();

    for (int alpha = 0; alpha < 4; ++alpha) {
        Real acc = 0;
        for (const auto& c : psi.components())
            acc += deterministic_sum(n, threads, [&](std::int64_t i) {
                return grid.point(i)[alpha] * std::norm(c.values[i]);
            });
        st.mean_k[alpha] = acc * vol;
    }
    for (int alpha = 0; alpha < 4; ++alpha) {
        const Real mean = st.mean_k[alpha];
        Real acc = 0;
        for (const auto& c : psi.components())
            acc += deterministic_sum(n, threads, [&](std::int64_t i) {
                const Real d = grid.point(i)[alpha] - mean;
                return d * d * std::norm(c.values[i]);
            });
        st.var_k[alpha] = acc * vol;
    }
    Real spin = 0;
    for (const auto& c : psi.components()) {
        if (c.two_j == 0) continue;
        const Real j = 0.5 * c.two_j;
        spin += (j + 1) * deterministic_sum(n, threads, [&](std::int64_t i) {
            if (!grid.in_cone(i)) return Real(0);
            const Real mu = invariant_mass(grid.point(i));
            return std::norm(c.values[i]) / (mu * mu);
        });
    }
    st.spin_mass_term = spin * vol;
    return st;
}

ComplexField apply_Y(int alpha, const RepLabel& rep, const WaveFunction& phi,
                     int threads) {
    return apply_field(alpha, rep, phi, KernelMode::Full, threads);
}

ComplexField apply_Z(int alpha, const RepLabel& rep, const WaveFunction& phi,
                     int threads) {
    return apply_field(alpha, rep, phi, KernelMode::Diagonal, threads);
}

std::array<Real, 4> mean_coordinates(const PovmSpec& spec,
                                     const FilteredWaveFunction& phi,
                                     Real* imag_residue, int threads) {
    std::array<Real, 4> mean{};
    Real worst = 0;
    for (const auto& ch : phi.channels) {
        if (ch.channel_index < 0 ||
            ch.channel_index >= static_cast<int>(spec.channels.size()))
            throw std::invalid_argument("filtered channel index out of range");
        const ChannelKernel ker =
            build_kernel(ch.rep, ch.phi, KernelMode::Full, -1);
        for (int alpha = 0; alpha < 4; ++alpha) {
            const Complex c = mean_contraction(ker, alpha, ch.phi, threads);
            mean[alpha] += (alpha == 0 ? 1 : -1) * c.real();
            worst = std::max(worst, std::abs(c.imag()));
        }
    }
    if (imag_residue) *imag_residue = worst;
    return mean;
}

Real second_moment(int alpha, const PovmSpec& spec, const FilteredWaveFunction& phi,
                   int threads, int two_j_cap) {
    if (alpha < 0 || alpha > 3) throw std::invalid_argument("alpha must be 0..3");
    const MomentPath path = choose_path(spec, phi);
    Real total = 0;
    for (const auto& ch : phi.channels) {
        switch (path) {
            case MomentPath::QuasiBaricentric:
                total += field_norm_squared(
                    build_kernel(ch.rep, ch.phi, KernelMode::Diagonal, two_j_cap),
                    alpha, ch.phi, threads);
                total += field_norm_squared(
                    build_kernel(ch.rep, ch.phi, KernelMode::Raising, two_j_cap),
                    alpha, ch.phi, threads);
                break;
            case MomentPath::SingleJ: {
                const SecondMomentBreakdown b =
                    second_moment_terms(alpha, ch.rep, ch.phi, threads);
                total += b.total();
                break;
            }
            case MomentPath::Full:
                total += field_norm_squared(
                    build_kernel(ch.rep, ch.phi, KernelMode::Full, two_j_cap),
                    alpha, ch.phi, threads);
                break;
        }
    }
    return total;
}

SecondMomentBreakdown second_moment_terms(int alpha, const RepLabel& rep,
                                          const WaveFunction& phi, int threads) {
    if (alpha < 0 || alpha > 3) throw std::invalid_argument("alpha must be 0..3");
    if (phi.two_j_list().size() != 1)
        throw std::invalid_argument("term split needs a single-spin state");
    SecondMomentBreakdown b;
    b.z_term = field_norm_squared(
        build_kernel(rep, phi, KernelMode::Diagonal, -1), alpha, phi, threads);
    b.raising_term = field_norm_squared(
        build_kernel(rep, phi, KernelMode::Raising, -1), alpha, phi, threads);
    b.lowering_term = field_norm_squared(
        build_kernel(rep, phi, KernelMode::Lowering, -1), alpha, phi, threads);
    return b;
}

Real second_moment_full(int alpha, const RepLabel& rep, const WaveFunction& phi,
                        int threads, int two_j_cap) {
    if (alpha < 0 || alpha > 3) throw std::invalid_argument("alpha must be 0..3");
    return field_norm_squared(build_kernel(rep, phi, KernelMode::Full, two_j_cap),
                              alpha, phi, threads);
}

VarianceReport variance_report(const PovmSpec& spec, const WaveFunction& psi,
                               const EngineOptions& options) {
    const int threads = std::max(1, options.threads);
    VarianceReport rep;

    const Real norm2 = psi.norm_squared(threads);
    if (std::abs(norm2 - 1) > options.norm_tol)
        throw std::invalid_argument("state must be normalized before reporting");

    const MomentumStats stats = momentum_stats(psi, threads);
    rep.mean_k = stats.mean_k;
    rep.var_k = stats.var_k;
    rep.spin_mass_term = stats.spin_mass_term;

    FilteredWaveFunction phi = filter_wavefunction(spec, psi, threads);
    rep.provenance.total_probability = phi.total_norm_squared(threads);

    Real imag = 0;
    rep.mean_x = mean_coordinates(spec, phi, &imag, threads);
    rep.provenance.mean_imag_residue = imag;

    Real max_mean = 0;
    for (const Real m : rep.mean_x) max_mean = std::max(max_mean, std::abs(m));
    if (options.recenter && max_mean > 0) {
        const FourVector shift{-rep.mean_x[0], -rep.mean_x[1], -rep.mean_x[2],
                               -rep.mean_x[3]};
        for (auto& ch : phi.channels)
            ch.phi = ch.phi.phase_shifted(shift, threads);
        rep.provenance.recentered = true;
    }

    for (int alpha = 0; alpha < 4; ++alpha)
        rep.second_moment_x[alpha] =
            second_moment(alpha, spec, phi, threads, options.two_j_cap);

    for (int alpha = 0; alpha < 4; ++alpha)
        rep.heisenberg_margin[alpha] =
            std::sqrt(rep.second_moment_x[alpha] * rep.var_k[alpha]) - 0.5;

    Real spatial = 0, momentum_floor = 0;
    for (int r = 1; r < 4; ++r) {
        spatial += rep.second_moment_x[r];
        momentum_floor += 1 / (4 * rep.var_k[r]);
    }
    rep.angular_bound_margin = spatial - momentum_floor - rep.spin_mass_term;
    rep.angular_bound_applicable =
        spec.quasi_baricentric || psi.two_j_list().size() == 1;

    rep.provenance.second_moment_path = path_name(choose_path(spec, phi));
    bool analytic = true;
    Real face = 0;
    for (const auto& ch : phi.channels) {
        analytic = analytic && ch.phi.analytic_gradients();
        face = std::max(face, ch.phi.face_decay_ratio());
    }
    rep.provenance.gradient_source = analytic ? "analytic" : "finite-difference";
    rep.provenance.face_decay_ratio = face;
    rep.provenance.cone_clip_fraction = psi.cone_clip_fraction();
    rep.provenance.convergent = face <= options.face_tol;
    return rep;
}

namespace {

ComplexMatrix diag_block_derivative(int alpha, int beta, const RepLabel& rep,
                                    const BoostGeneratorBlocks& blocks, SpinLabel j,
                                    const FourVector& p) {
    const Real mu = invariant_mass(p);
    Real h = std::min<Real>(0.01 * (1 + std::abs(p[beta])), 0.05 * mu);
    auto shifted = [&](Real step) {
        FourVector q = p;
        q[beta] += step;
        return q;
    };
    while (!in_future_cone(shifted(2 * h)) || !in_future_cone(shifted(-2 * h)))
        h *= 0.5;
    const ComplexMatrix m2n = s_matrix(alpha, rep, blocks, j, j, shifted(-2 * h));
    const ComplexMatrix m1n = s_matrix(alpha, rep, blocks, j, j, shifted(-h));
    const ComplexMatrix m1p = s_matrix(alpha, rep, blocks, j, j, shifted(h));
    const ComplexMatrix m2p = s_matrix(alpha, rep, blocks, j, j, shifted(2 * h));
    return (m2n - 8 * m1n + 8 * m1p - m2p) / (12 * h);
}

}  // namespace

CommutatorResiduals commutator_checks(const RepLabel& rep,
                                      const BoostGeneratorBlocks& blocks,
                                      const FourVector& k, SpinLabel j) {
    if (!in_future_cone(k))
        throw std::domain_error("momentum outside the open future cone");
    if (blocks.rep.two_m != rep.two_m || blocks.rep.c_re != rep.c_re ||
        blocks.rep.c_im != rep.c_im)
        throw std::invalid_argument("blocks were built for a different representation");
    if (!blocks.contains(j.two_j) || !blocks.contains(j.two_j + 2))
        throw std::invalid_argument("blocks must cover j and j+1");
    const int d = j.dim();
    const bool has_down = j.two_j - 2 >= rep.two_j_min();
    const SpinMatrixSet set = angular_momentum_matrices(j);

    std::vector<PolynomialGaussian> basket(3);
    for (auto& b : basket) {
        b.center = k;
        b.width = FourVector{0.3, 0.3, 0.3, 0.3};
    }
    basket[1].poly[0] = {Complex(0.4, 0.0), Complex(0.0, 0.9)};
    basket[1].poly[2] = {Complex(1.0, 0.0), Complex(-0.3, 0.2)};
    basket[2].poly[1] = {Complex(0.0, 0.0), Complex(1.0, 0.0)};
    basket[2].poly[3] = {Complex(0.5, 0.0), Complex(0.0, 0.0), Complex(0.8, -0.1)};

    std::vector<FourVector> probes{k};
    const Real steps[4] = {0.07, -0.05, 0.06, -0.04};
    for (int a = 0; a < 4; ++a) {
        FourVector p = k;
        p[a] += steps[a];
        if (in_future_cone(p) && invariant_mass(p) > 0.2) probes.push_back(p);
    }

    CommutatorResiduals out;
    for (const auto& profile : basket) {
        const ValueFn value = polynomial_gaussian_value(profile);
        std::array<ValueFn, 4> dvalue;
        std::array<std::array<ValueFn, 4>, 4> ddvalue;
        std::array<PolynomialGaussian, 4> dspec;
        for (int a = 0; a < 4; ++a) {
            dspec[a] = polynomial_gaussian_derivative(profile, a);
            dvalue[a] = polynomial_gaussian_value(dspec[a]);
            for (int b = 0; b < 4; ++b)
                ddvalue[a][b] = polynomial_gaussian_value(
                    polynomial_gaussian_derivative(dspec[a], b));
        }
        std::array<ValueFn, 4> kvalue;   // k^beta f
        std::array<std::array<ValueFn, 4>, 4> dkvalue;  // d_alpha (k^beta f)
        for (int b = 0; b < 4; ++b) {
            const PolynomialGaussian kb = polynomial_gaussian_times_axis(profile, b);
            kvalue[b] = polynomial_gaussian_value(kb);
            for (int a = 0; a < 4; ++a)
                dkvalue[b][a] = polynomial_gaussian_value(
                    polynomial_gaussian_derivative(kb, a));
        }

        for (const FourVector& p : probes) {
            const Real mu = invariant_mass(p);
            const Complex v = value(p);
            const Real scale = std::max<Real>(1, std::abs(v));

            std::array<ComplexMatrix, 4> diag;
            for (int a = 0; a < 4; ++a) diag[a] = s_matrix(a, rep, blocks, j, j, p);
            std::array<ComplexMatrix, 4> up;
            for (int a = 0; a < 4; ++a)
                up[a] = s_matrix(a, rep, blocks, j, SpinLabel{j.two_j + 2}, p);
            std::array<ComplexMatrix, 4> down;
            if (has_down)
                for (int a = 0; a < 4; ++a)
                    down[a] = s_matrix(a, rep, blocks, j, SpinLabel{j.two_j - 2}, p);

            for (int col = 0; col < d; ++col) {
                for (int alpha = 0; alpha < 4; ++alpha) {
                    const ComplexVector z_col =
                        diag[alpha].col(col) * v -
                        kI * dvalue[alpha](p) * ComplexVector::Unit(d, col);
                    for (int beta = 0; beta < 4; ++beta) {
                        const Complex delta(alpha == beta ? 1.0 : 0.0, 0.0);
                        // [Z_alpha, K^beta] + i delta
                        ComplexVector res =
                            diag[alpha].col(col) * kvalue[beta](p) -
                            kI * dkvalue[beta][alpha](p) * ComplexVector::Unit(d, col);
                        res -= p[beta] * z_col;
                        res += kI * delta * v * ComplexVector::Unit(d, col);
                        out.z_k_max = std::max(
                            out.z_k_max, res.cwiseAbs().maxCoeff() / scale);

                        // same with the full operator image
                        Real y_res = res.cwiseAbs().maxCoeff();
                        const ComplexVector up_res =
                            up[alpha].col(col) * kvalue[beta](p) -
                            p[beta] * (up[alpha].col(col) * v);
                        y_res = std::max(y_res, up_res.cwiseAbs().maxCoeff());
                        if (has_down) {
                            const ComplexVector dn_res =
                                down[alpha].col(col) * kvalue[beta](p) -
                                p[beta] * (down[alpha].col(col) * v);
                            y_res = std::max(y_res, dn_res.cwiseAbs().maxCoeff());
                        }
                        out.y_k_max = std::max(out.y_k_max, y_res / scale);
                    }
                }

                // first applications and their derivatives
                std::array<ComplexVector, 4> zf;
                std::array<std::array<ComplexVector, 4>, 4> dzf;
                for (int a = 0; a < 4; ++a) {
                    zf[a] = diag[a].col(col) * v -
                            kI * dvalue[a](p) * ComplexVector::Unit(d, col);
                    for (int b = 0; b < 4; ++b) {
                        const ComplexMatrix dd =
                            diag_block_derivative(a, b, rep, blocks, j, p);
                        dzf[a][b] = dd.col(col) * v +
                                    diag[a].col(col) * dvalue[b](p) -
                                    kI * ddvalue[a][b](p) *
                                        ComplexVector::Unit(d, col);
                    }
                }
                auto z_apply = [&](int b, const ComplexVector& f,
                                   const ComplexVector& df) {
                    return ComplexVector(diag[b] * f - kI * df);
                };

                const Real inv_mu3 = 1 / (mu * mu * mu);
                for (int r = 0; r < 3; ++r) {
                    // [Z_0, Z_r]
                    const ComplexVector comm =
                        z_apply(0, zf[r + 1], dzf[r + 1][0]) -
                        z_apply(r + 1, zf[0], dzf[0][r + 1]);
                    const int s = (r + 1) % 3, u = (r + 2) % 3;
                    const ComplexMatrix cross =
                        p[s + 1] * set.m[u] - p[u + 1] * set.m[s];
                    const ComplexVector want =
                        kI * inv_mu3 * (cross.col(col) * v);
                    const Real wscale = std::max<Real>(
                        1, std::max(scale, want.cwiseAbs().maxCoeff()));
                    out.z0_zr_max =
                        std::max(out.z0_zr_max,
                                 (comm - want).cwiseAbs().maxCoeff() / wscale);
                }
                for (int r = 0; r < 3; ++r) {
                    for (int s = r + 1; s < 3; ++s) {
                        const ComplexVector comm =
                            z_apply(r + 1, zf[s + 1], dzf[s + 1][r + 1]) -
                            z_apply(s + 1, zf[r + 1], dzf[r + 1][s + 1]);
                        Complex c_rs(0, 0);
                        for (int t = 0; t < 3; ++t)
                            c_rs += eps_sign(r, s, t) * p[t + 1];
                        ComplexMatrix w = ComplexMatrix::Zero(d, d);
                        for (int u = 0; u < 3; ++u) {
                            const Complex coeff =
                                p[0] * eps_sign(r, s, u) -
                                c_rs * p[u + 1] / (mu + p[0]);
                            w += coeff * set.m[u];
                        }
                        const ComplexVector want = kI * inv_mu3 * (w.col(col) * v);
                        const Real wscale = std::max<Real>(
                            1, std::max(scale, want.cwiseAbs().maxCoeff()));
                        out.zr_zs_max =
                            std::max(out.zr_zs_max,
                                     (comm - want).cwiseAbs().maxCoeff() / wscale);
                    }
                }
            }
        }
    }
    out.entries = {{"z_k", out.z_k_max},
                   {"y_k", out.y_k_max},
                   {"z0_zr", out.z0_zr_max},
                   {"zr_zs", out.zr_zs_max}};
    return out;
}

GravityEstimate gravity_estimator(Real j, Real mu, Real big_g) {
    if (j < 0) throw std::domain_error("spin must be non-negative");
    if (!(mu > 0)) throw std::domain_error("mass must be positive");
    if (!(big_g > 0)) throw std::domain_error("gravitational constant must be positive");
    GravityEstimate est;
    est.impact_parameter = 2 * j / mu;
    est.peripherality_ratio = j / (mu * mu * big_g);
    est.position_bound = big_g;
    return est;
}

}  // namespace eventpovm
