#include "eventpovm/povm_core.hpp"

#include <algorithm>
#include <cmath>
#include <random>
#include <stdexcept>

#include "eventpovm/reduction.hpp"

namespace eventpovm {

namespace {

const Complex kI(0, 1);

void require_channel_valid(const PovmChannel& ch) {
    if (!ch.rep.valid()) throw std::invalid_argument("channel representation label is invalid");
    if (!ch.amplitude) throw std::invalid_argument("channel lacks an amplitude callable");
    if (ch.active.empty()) throw std::invalid_argument("channel has no active components");
    for (const auto& [sigma, two_j] : ch.active) {
        (void)sigma;
        if (two_j < ch.rep.two_j_min() || ((two_j - ch.rep.two_j_min()) & 1) != 0)
            throw std::invalid_argument(
                "channel is active at a spin outside its representation's tower");
    }
}

bool channel_is_quasi_baricentric(const PovmChannel& ch) {
    for (const auto& [sigma, two_j] : ch.active) {
        (void)sigma;
        if (ch.rep.two_m != two_j) return false;
        if (two_j == 0) {
            if (!ch.rep.is_trivial()) return false;
        } else {
            if (ch.rep.c_re != 0 || ch.rep.c_im != 0) return false;
        }
    }
    return true;
}

Real probe_mass(const MassWindow& w) {
    if (std::isfinite(w.mu_max)) return 0.5 * (w.mu_min + w.mu_max);
    return std::max<Real>(w.mu_min, 1);
}

Complex n_block_element(const RepLabel& rep, int r, int two_j_to, int two_m_to,
                        int two_j_from, int two_m_from) {
    if (two_j_to == two_j_from)
        return n_diagonal_element(rep, r, two_j_from, two_m_to, two_m_from);
    if (two_j_to == two_j_from + 2)
        return n_raising_element(rep, r, two_j_from, two_m_to, two_m_from);
    return n_lowering_element(rep, r, two_j_from, two_m_to, two_m_from);
}

Complex k_dot_n_block_element(const RepLabel& rep, int two_j_to, int two_m_to,
                              int two_j_from, int two_m_from, const FourVector& k) {
    if (two_j_to == two_j_from) {
        if (two_j_from == 0 || rep.is_trivial()) return Complex(0, 0);
        const Real j = 0.5 * two_j_from;
        return (rep.diag_coefficient() / (j * (j + 1))) *
               k_dot_m_element(two_j_from, two_m_to, two_m_from, k);
    }
    if (two_j_to == two_j_from + 2)
        return k_dot_n_raising_element(rep, two_j_from, two_m_to, two_m_from, k);
    if (two_j_to < rep.two_j_min()) return Complex(0, 0);
    return std::conj(
        k_dot_n_raising_element(rep, two_j_to, two_m_from, two_m_to, k));
}

}  // namespace

PovmSpec make_povm_spec(std::vector<PovmChannel> channels, MassWindow window) {
    if (!(window.mu_min >= 0) || !(window.mu_max > window.mu_min))
        throw std::invalid_argument("mass window must satisfy 0 <= mu_min < mu_max");
    PovmSpec spec;
    spec.channels = std::move(channels);
    spec.window = window;
    for (const auto& ch : spec.channels) require_channel_valid(ch);
    spec.quasi_baricentric = is_quasi_baricentric(spec);
    if (spec.channels.empty())
        spec.warnings.push_back("empty filter: vacuously quasi-baricentric");
    return spec;
}

bool is_quasi_baricentric(const PovmSpec& spec) {
    for (const auto& ch : spec.channels)
        if (!channel_is_quasi_baricentric(ch)) return false;
    return true;
}

Real validate_normalization(const PovmSpec& spec, const std::vector<int>& two_j_list,
                            const std::vector<Real>& mu_samples, int sigma_count) {
    // sigma_count > 0 checks the full 0..sigma_count-1 rectangle at every spin;
    // otherwise each spin is checked over the sigmas some channel touches there.
    const auto sigmas_at = [&](int two_j) {
        std::vector<int> sigmas;
        if (sigma_count > 0) {
            for (int s = 0; s < sigma_count; ++s) sigmas.push_back(s);
            return sigmas;
        }
        for (const auto& ch : spec.channels)
            for (const auto& [sigma, a_two_j] : ch.active) {
                if (a_two_j != two_j) continue;
                if (std::find(sigmas.begin(), sigmas.end(), sigma) == sigmas.end())
                    sigmas.push_back(sigma);
            }
        std::sort(sigmas.begin(), sigmas.end());
        return sigmas;
    };
    Real worst = 0;
    for (const Real mu : mu_samples) {
        if (!spec.window.contains(mu))
            throw std::domain_error("mass sample outside the declared window");
        for (const int two_j : two_j_list) {
            const std::vector<int> sigmas = sigmas_at(two_j);
            for (const int s : sigmas) {
                for (const int sp : sigmas) {
                    Complex acc(0, 0);
                    for (const auto& ch : spec.channels) {
                        const bool has_s =
                            std::find(ch.active.begin(), ch.active.end(),
                                      std::make_pair(s, two_j)) != ch.active.end();
                        const bool has_sp =
                            std::find(ch.active.begin(), ch.active.end(),
                                      std::make_pair(sp, two_j)) != ch.active.end();
                        if (!has_s || !has_sp) continue;
                        acc += std::conj(ch.amplitude(two_j, s, mu)) *
                               ch.amplitude(two_j, sp, mu);
                    }
                    const Real want = (s == sp) ? 1.0 : 0.0;
                    worst = std::max(worst, std::abs(acc - Complex(want, 0)));
                }
            }
        }
    }
    return worst;
}

Real FilteredWaveFunction::total_norm_squared(int threads) const {
    Real total = 0;
    for (const auto& ch : channels) total += ch.phi.norm_squared(threads);
    return total;
}

FilteredWaveFunction filter_wavefunction(const PovmSpec& spec, const WaveFunction& psi,
                                         int threads) {
    const auto psi_sigmas = psi.sigma_list();
    for (const auto& ch : spec.channels)
        for (const auto& [sigma, two_j] : ch.active) {
            (void)two_j;
            if (std::find(psi_sigmas.begin(), psi_sigmas.end(), sigma) ==
                psi_sigmas.end())
                throw std::invalid_argument(
                    "filter references a sigma index the state does not carry");
        }

    FilteredWaveFunction out;
    const auto& grid = psi.grid();
    const std::int64_t n = grid.num_points();
    for (std::size_t ci = 0; ci < spec.channels.size(); ++ci) {
        const auto& ch = spec.channels[ci];
        std::vector<int> js;
        for (const auto& [sigma, two_j] : ch.active) {
            (void)sigma;
            if (std::find(js.begin(), js.end(), two_j) == js.end()) js.push_back(two_j);
        }
        std::sort(js.begin(), js.end());
        std::vector<WaveComponent> comps;
        for (const int two_j : js) {
            // sources grouped by m over every sigma active at this j
            for (int two_m = -two_j; two_m <= two_j; two_m += 2) {
                std::vector<std::pair<int, int>> sources;  // (sigma, psi comp index)
                for (const auto& [sigma, a_two_j] : ch.active) {
                    if (a_two_j != two_j) continue;
                    const int idx = psi.find_component(sigma, two_j, two_m);
                    if (idx >= 0) sources.emplace_back(sigma, idx);
                }
                if (sources.empty()) continue;
                WaveComponent comp;
                comp.sigma = 0;
                comp.two_j = two_j;
                comp.two_m = two_m;
                if (ch.mu_independent) {
                    const Real mu0 = probe_mass(spec.window);
                    std::vector<Complex> coef(sources.size());
                    bool all_values = true, all_grads = true;
                    for (std::size_t s = 0; s < sources.size(); ++s) {
                        coef[s] = ch.amplitude(two_j, sources[s].first, mu0);
                        const auto& src = psi.component(sources[s].second);
                        all_values = all_values && bool(src.value_fn);
                        all_grads = all_grads && bool(src.gradient_fn);
                    }
                    comp.values.setZero(n);
                    for (std::size_t s = 0; s < sources.size(); ++s)
                        comp.values += coef[s] * psi.component(sources[s].second).values;
                    if (all_values) {
                        std::vector<ValueFn> fns;
                        for (const auto& [sigma, idx] : sources) {
                            (void)sigma;
                            fns.push_back(psi.component(idx).value_fn);
                        }
                        comp.value_fn = [fns, coef](const FourVector& k) {
                            Complex acc(0, 0);
                            for (std::size_t s = 0; s < fns.size(); ++s)
                                acc += coef[s] * fns[s](k);
                            return acc;
                        };
                    }
                    if (all_grads) {
                        std::vector<GradientFn> fns;
                        for (const auto& [sigma, idx] : sources) {
                            (void)sigma;
                            fns.push_back(psi.component(idx).gradient_fn);
                        }
                        comp.gradient_fn = [fns, coef](const FourVector& k) {
                            std::array<Complex, 4> acc{};
                            for (std::size_t s = 0; s < fns.size(); ++s) {
                                const auto g = fns[s](k);
                                for (int a = 0; a < 4; ++a) acc[a] += coef[s] * g[a];
                            }
                            return acc;
                        };
                    }
                } else {
                    comp.values.setZero(n);
                    Complex* out_v = comp.values.data();
                    std::vector<const Complex*> src_v(sources.size());
                    for (std::size_t s = 0; s < sources.size(); ++s)
                        src_v[s] = psi.component(sources[s].second).values.data();
                    const auto& window = spec.window;
                    const auto& amplitude = ch.amplitude;
                    parallel_for(n, threads, [&](std::int64_t i) {
                        if (!grid.in_cone(i)) return;
                        const Real mu = invariant_mass(grid.point(i));
                        if (!window.contains(mu))
                            throw std::domain_error(
                                "grid point mass outside the declared window");
                        Complex acc(0, 0);
                        for (std::size_t s = 0; s < sources.size(); ++s)
                            acc += amplitude(two_j, sources[s].first, mu) * src_v[s][i];
                        out_v[i] = acc;
                    });
                }
                comps.push_back(std::move(comp));
            }
        }
        if (comps.empty()) continue;
        out.channels.push_back(FilteredChannel{static_cast<int>(ci), ch.nu, ch.rep,
                                               WaveFunction(psi.grid_ptr(),
                                                            std::move(comps), threads)});
    }
    return out;
}

PovmSpec identity_quasi_baricentric(const std::vector<std::pair<int, int>>& sigma_two_j,
                                    MassWindow window) {
    std::vector<PovmChannel> channels;
    int nu = 0;
    for (const auto& [sigma0, two_j0] : sigma_two_j) {
        PovmChannel ch;
        ch.nu = nu++;
        ch.rep = two_j0 == 0 ? RepLabel{0, 1, 0} : RepLabel{two_j0, 0, 0};
        ch.active = {{sigma0, two_j0}};
        ch.mu_independent = true;
        const int sigma_match = sigma0, two_j_match = two_j0;
        ch.amplitude = [sigma_match, two_j_match](int two_j, int sigma, Real) {
            return Complex(sigma == sigma_match && two_j == two_j_match ? 1.0 : 0.0, 0);
        };
        channels.push_back(std::move(ch));
    }
    return make_povm_spec(std::move(channels), window);
}

PovmSpec rotated_identity(Real alpha, int sigma, const std::vector<int>& two_j_list,
                          MassWindow window) {
    std::vector<PovmChannel> channels;
    int nu = 0;
    for (const int two_j0 : two_j_list) {
        for (int leg = 0; leg < 2; ++leg) {
            PovmChannel ch;
            ch.nu = nu++;
            ch.rep = two_j0 == 0 ? RepLabel{0, 1, 0} : RepLabel{two_j0, 0, 0};
            ch.active = {{sigma, two_j0}};
            ch.mu_independent = true;
            const Real weight = leg == 0 ? std::cos(alpha) : std::sin(alpha);
            const int sigma_match = sigma, two_j_match = two_j0;
            ch.amplitude = [weight, sigma_match, two_j_match](int two_j, int s, Real) {
                return Complex(
                    s == sigma_match && two_j == two_j_match ? weight : 0.0, 0);
            };
            channels.push_back(std::move(ch));
        }
    }
    return make_povm_spec(std::move(channels), window);
}

Complex s_element(int alpha, const RepLabel& rep, int two_j_to, int two_m_to,
                  int two_j_from, int two_m_from, const FourVector& k) {
    if (alpha < 0 || alpha > 3) throw std::invalid_argument("alpha must be 0..3");
    if (!in_future_cone(k))
        throw std::domain_error("momentum outside the open future cone");
    const int dj = two_j_to - two_j_from;
    if (dj != 0 && dj != 2 && dj != -2)
        throw std::invalid_argument("S blocks connect only adjacent spins");
    if (two_j_to < rep.two_j_min() || two_j_from < rep.two_j_min()) return Complex(0, 0);
    if (((two_j_from - rep.two_j_min()) & 1) != 0) return Complex(0, 0);
    if (std::abs(two_m_to) > two_j_to || std::abs(two_m_from) > two_j_from)
        return Complex(0, 0);
    if (((two_j_to - two_m_to) & 1) != 0 || ((two_j_from - two_m_from) & 1) != 0)
        return Complex(0, 0);
    const Real mu = invariant_mass(k);
    if (alpha == 0)
        return k_dot_n_block_element(rep, two_j_to, two_m_to, two_j_from, two_m_from, k) /
               (mu * mu);
    const int r = alpha - 1;
    Complex val = -n_block_element(rep, r, two_j_to, two_m_to, two_j_from, two_m_from) / mu;
    val -= k[alpha] *
           k_dot_n_block_element(rep, two_j_to, two_m_to, two_j_from, two_m_from, k) /
           (mu * mu * (mu + k[0]));
    if (dj == 0)
        val += cross_m_element(r, two_j_from, two_m_to, two_m_from, k) /
               (mu * (mu + k[0]));
    return val;
}

ComplexMatrix s_matrix(int alpha, const RepLabel& rep, const BoostGeneratorBlocks& blocks,
                       SpinLabel j_from, SpinLabel j_to, const FourVector& k) {
    if (alpha < 0 || alpha > 3) throw std::invalid_argument("alpha must be 0..3");
    if (!in_future_cone(k))
        throw std::domain_error("momentum outside the open future cone");
    const int dj = j_to.two_j - j_from.two_j;
    if (dj != 0 && dj != 2 && dj != -2)
        throw std::invalid_argument("S blocks connect only adjacent spins");
    if (!blocks.contains(j_from.two_j) || !blocks.contains(j_to.two_j))
        throw std::invalid_argument("S block outside the materialized spin range");
    const Real mu = invariant_mass(k);
    std::array<ComplexMatrix, 3> nblk;
    for (int r = 0; r < 3; ++r) {
        if (dj == 0)
            nblk[r] = blocks.diagonal_block(j_from.two_j, r);
        else if (dj == 2)
            nblk[r] = blocks.raising_block(j_from.two_j, r);
        else
            nblk[r] = blocks.lowering_block(j_from.two_j, r);
    }
    ComplexMatrix kn = k[1] * nblk[0] + k[2] * nblk[1] + k[3] * nblk[2];
    if (alpha == 0) return kn / (mu * mu);
    const int r = alpha - 1;
    ComplexMatrix out = -nblk[r] / mu - (k[alpha] / (mu * mu * (mu + k[0]))) * kn;
    if (dj == 0) {
        const auto set = angular_momentum_matrices(j_from);
        const int s = (r + 1) % 3, t = (r + 2) % 3;
        out += (k[s + 1] * set.m[t] - k[t + 1] * set.m[s]) / (mu * (mu + k[0]));
    }
    return out;
}

Real s_transversality_check(const RepLabel& rep, const BoostGeneratorBlocks& blocks,
                            SpinLabel j_from, SpinLabel j_to, const FourVector& k) {
    ComplexMatrix acc = k[0] * s_matrix(0, rep, blocks, j_from, j_to, k);
    Real scale = acc.cwiseAbs().maxCoeff();
    for (int alpha = 1; alpha < 4; ++alpha) {
        const ComplexMatrix part = k[alpha] * s_matrix(alpha, rep, blocks, j_from, j_to, k);
        scale = std::max(scale, part.cwiseAbs().maxCoeff());
        acc += part;
    }
    return acc.cwiseAbs().maxCoeff() / std::max<Real>(1, scale);
}

Real s_bilinear_check(const RepLabel& rep, const BoostGeneratorBlocks& blocks, SpinLabel j,
                      const FourVector& k) {
    const SpinLabel j_up{j.two_j + 2};
    const Real mu = invariant_mass(k);
    const Real q_up = q_coefficient(j_up, rep);
    const ComplexMatrix a = a_matrix(j, k);
    const int d = j.dim();

    const ComplexMatrix s0_up = s_matrix(0, rep, blocks, j, j_up, k);
    const ComplexMatrix time_product = s0_up.adjoint() * s0_up;
    const ComplexMatrix time_want = (q_up / std::pow(mu, 4)) * a;

    ComplexMatrix space_product = ComplexMatrix::Zero(d, d);
    for (int alpha = 1; alpha < 4; ++alpha) {
        const ComplexMatrix sr_up = s_matrix(alpha, rep, blocks, j, j_up, k);
        space_product += sr_up.adjoint() * sr_up;
    }
    const Real jj = j.j();
    ComplexMatrix space_want =
        (q_up / (mu * mu)) * (jj + 1) * (2 * jj + 3) * ComplexMatrix::Identity(d, d);
    space_want += (q_up / std::pow(mu, 4)) * a;

    const Real scale_t =
        std::max<Real>(1, std::max(time_product.cwiseAbs().maxCoeff(),
                                   time_want.cwiseAbs().maxCoeff()));
    const Real scale_s =
        std::max<Real>(1, std::max(space_product.cwiseAbs().maxCoeff(),
                                   space_want.cwiseAbs().maxCoeff()));
    return std::max((time_product - time_want).cwiseAbs().maxCoeff() / scale_t,
                    (space_product - space_want).cwiseAbs().maxCoeff() / scale_s);
}

namespace {

int eps_sign(int r, int s, int t) {
    if (r == s || s == t || r == t) return 0;
    return ((s - r + 3) % 3 == 1) ? 1 : -1;
}

Real relative_block_residual(const ComplexMatrix& got, const ComplexMatrix& want) {
    const Real scale = std::max<Real>(1, want.cwiseAbs().maxCoeff());
    return (got - want).cwiseAbs().maxCoeff() / scale;
}

Real commutator_scan_residual(const BoostGeneratorBlocks& blocks) {
    Real worst = 0;
    for (int two_j = blocks.two_j_min; two_j <= blocks.two_j_max; two_j += 2) {
        const auto set_j = angular_momentum_matrices(SpinLabel{two_j});
        const int d = two_j + 1;
        const bool has_up = two_j + 2 <= blocks.two_j_max;
        for (int r = 0; r < 3; ++r) {
            for (int s = 0; s < 3; ++s) {
                ComplexMatrix want = ComplexMatrix::Zero(d, d);
                for (int t = 0; t < 3; ++t)
                    want += Complex(0, eps_sign(r, s, t)) * blocks.diagonal_block(two_j, t);
                const ComplexMatrix got = set_j.m[r] * blocks.diagonal_block(two_j, s) -
                                          blocks.diagonal_block(two_j, s) * set_j.m[r];
                worst = std::max(worst, relative_block_residual(got, want));
            }
        }
        if (!has_up) continue;
        const auto set_up = angular_momentum_matrices(SpinLabel{two_j + 2});
        for (int r = 0; r < 3; ++r) {
            for (int s = 0; s < 3; ++s) {
                ComplexMatrix want = ComplexMatrix::Zero(d + 2, d);
                for (int t = 0; t < 3; ++t)
                    want += Complex(0, eps_sign(r, s, t)) * blocks.raising_block(two_j, t);
                const ComplexMatrix got = set_up.m[r] * blocks.raising_block(two_j, s) -
                                          blocks.raising_block(two_j, s) * set_j.m[r];
                worst = std::max(worst, relative_block_residual(got, want));
            }
        }
        for (int r = 0; r < 3; ++r) {
            for (int s = 0; s < 3; ++s) {
                ComplexMatrix got =
                    blocks.diagonal_block(two_j, r) * blocks.diagonal_block(two_j, s) -
                    blocks.diagonal_block(two_j, s) * blocks.diagonal_block(two_j, r);
                const ComplexMatrix up_r = blocks.raising_block(two_j, r);
                const ComplexMatrix up_s = blocks.raising_block(two_j, s);
                got += up_r.adjoint() * up_s - up_s.adjoint() * up_r;
                if (two_j - 2 >= blocks.two_j_min) {
                    const ComplexMatrix dn_r = blocks.raising_block(two_j - 2, r);
                    const ComplexMatrix dn_s = blocks.raising_block(two_j - 2, s);
                    got += dn_r * dn_s.adjoint() - dn_s * dn_r.adjoint();
                }
                ComplexMatrix want = ComplexMatrix::Zero(d, d);
                for (int t = 0; t < 3; ++t)
                    want -= Complex(0, eps_sign(r, s, t)) * set_j.m[t];
                worst = std::max(worst, relative_block_residual(got, want));

                const ComplexMatrix mixed =
                    blocks.diagonal_block(two_j + 2, r) * blocks.raising_block(two_j, s) +
                    blocks.raising_block(two_j, r) * blocks.diagonal_block(two_j, s) -
                    blocks.diagonal_block(two_j + 2, s) * blocks.raising_block(two_j, r) -
                    blocks.raising_block(two_j, s) * blocks.diagonal_block(two_j, r);
                worst = std::max(worst, mixed.cwiseAbs().maxCoeff());
            }
        }
    }
    return worst;
}

Real n_bilinear_scan_residual(const RepLabel& rep, const BoostGeneratorBlocks& blocks) {
    Real worst = 0;
    for (int two_j = blocks.two_j_min; two_j + 2 <= blocks.two_j_max; two_j += 2) {
        const auto set = angular_momentum_matrices(SpinLabel{two_j});
        const int d = two_j + 1;
        const Real j = 0.5 * two_j;
        const Real q_up = q_coefficient(SpinLabel{two_j + 2}, rep);
        for (int r = 0; r < 3; ++r) {
            for (int s = 0; s < 3; ++s) {
                const ComplexMatrix got =
                    blocks.raising_block(two_j, r).adjoint() * blocks.raising_block(two_j, s);
                ComplexMatrix want = -set.m[r] * set.m[s];
                if (r == s) want += (j + 1) * (j + 1) * ComplexMatrix::Identity(d, d);
                for (int t = 0; t < 3; ++t)
                    want -= Complex(0, (j + 1) * eps_sign(r, s, t)) * set.m[t];
                worst = std::max(worst, relative_block_residual(got, q_up * want));
            }
        }
        if (two_j - 2 >= blocks.two_j_min) {
            const Real q_dn = q_coefficient(SpinLabel{two_j}, rep);
            for (int r = 0; r < 3; ++r) {
                for (int s = 0; s < 3; ++s) {
                    const ComplexMatrix got = blocks.raising_block(two_j - 2, r) *
                                              blocks.raising_block(two_j - 2, s).adjoint();
                    ComplexMatrix want = -set.m[r] * set.m[s];
                    if (r == s) want += j * j * ComplexMatrix::Identity(d, d);
                    for (int t = 0; t < 3; ++t)
                        want += Complex(0, j * eps_sign(r, s, t)) * set.m[t];
                    worst = std::max(worst, relative_block_residual(got, q_dn * want));
                }
            }
        }
    }
    return worst;
}

}  // namespace

AlgebraScanResult algebra_scan(int two_j_max, int samples, std::uint64_t seed) {
    if (two_j_max < 0) throw std::invalid_argument("algebra scan needs two_j_max >= 0");
    if (samples < 1) throw std::invalid_argument("algebra scan needs at least one sample");

    std::vector<RepLabel> reps;
    for (int two_m = -two_j_max; two_m <= two_j_max; ++two_m) {
        reps.push_back(RepLabel{two_m, 0.0, 0.0});
        if (two_m == 0) reps.push_back(RepLabel{0, 0.5, 0.0});
        if (two_m != 0) reps.push_back(RepLabel{two_m, 0.0, 2.0});
    }

    std::mt19937_64 rng(seed);
    std::uniform_real_distribution<Real> time_dist(1.5, 6.0);
    std::uniform_real_distribution<Real> dir_dist(-1.0, 1.0);
    std::uniform_real_distribution<Real> rho_dist(0.0, 0.9);
    std::vector<FourVector> momenta;
    momenta.reserve(samples);
    while (static_cast<int>(momenta.size()) < samples) {
        FourVector k;
        k << time_dist(rng), dir_dist(rng), dir_dist(rng), dir_dist(rng);
        const Real sp = std::sqrt(spatial_norm_squared(k));
        if (sp == 0.0) continue;
        const Real scale = rho_dist(rng) * k[0] / sp;
        for (int a = 1; a < 4; ++a) k[a] *= scale;
        momenta.push_back(k);
    }

    AlgebraScanResult result;
    result.rep_count = static_cast<int>(reps.size());
    result.momentum_samples = samples;
    for (const auto& rep : reps) {
        const int top = two_j_max - ((two_j_max - rep.two_j_min()) & 1);
        const auto blocks = boost_generator_blocks(rep, top);
        AlgebraScanRow commutators{"commutators", rep, commutator_scan_residual(blocks)};
        AlgebraScanRow n_bilinear{"n_bilinear", rep, n_bilinear_scan_residual(rep, blocks)};
        AlgebraScanRow s_bilinear{"s_bilinear", rep, 0.0};
        AlgebraScanRow transversality{"transversality", rep, 0.0};
        for (const FourVector& k : momenta) {
            for (int base = rep.two_j_min(); base <= top; base += 2) {
                const SpinLabel j{base};
                transversality.max_residual = std::max(
                    transversality.max_residual, s_transversality_check(rep, blocks, j, j, k));
                if (base + 2 <= top) {
                    const SpinLabel up{base + 2};
                    transversality.max_residual =
                        std::max(transversality.max_residual,
                                 s_transversality_check(rep, blocks, j, up, k));
                    transversality.max_residual =
                        std::max(transversality.max_residual,
                                 s_transversality_check(rep, blocks, up, j, k));
                    s_bilinear.max_residual =
                        std::max(s_bilinear.max_residual, s_bilinear_check(rep, blocks, j, k));
                }
            }
        }
        for (auto& row : {commutators, n_bilinear, s_bilinear, transversality}) {
            result.max_residual = std::max(result.max_residual, row.max_residual);
            result.rows.push_back(row);
        }
    }
    return result;
}

}  // namespace eventpovm
