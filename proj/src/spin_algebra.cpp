#include "eventpovm/spin_algebra.hpp"

#include <cmath>
#include <stdexcept>
#include <string>

namespace eventpovm {

namespace {

const Complex kI(0, 1);

Real sq(long a, long b) { return std::sqrt(Real(a) * Real(b)); }

void require_valid(const RepLabel& rep, const char* where) {
    if (!rep.valid())
        throw std::invalid_argument(std::string(where) +
                                    ": invalid representation label (M != 0 needs imaginary c, "
                                    "M = 0 needs real c with c^2 < 1 or the trivial point c = 1)");
}

}  // namespace

Complex angular_momentum_element(int r, int two_j, int two_m_to, int two_m_from) {
    if (std::abs(two_m_to) > two_j || std::abs(two_m_from) > two_j) return 0;
    if (r == 2) {
        if (two_m_to != two_m_from) return 0;
        return Complex(0.5 * two_m_from, 0);
    }
    if (two_m_to == two_m_from + 2) {
        const Real lp = sq(two_j - two_m_from, two_j + two_m_from + 2) / 2;
        return r == 0 ? Complex(lp / 2, 0) : Complex(0, -lp / 2);
    }
    if (two_m_to == two_m_from - 2) {
        const Real lm = sq(two_j + two_m_from, two_j - two_m_from + 2) / 2;
        return r == 0 ? Complex(lm / 2, 0) : Complex(0, lm / 2);
    }
    return 0;
}

Complex k_dot_m_element(int two_j, int two_m_to, int two_m_from, const FourVector& k) {
    if (std::abs(two_m_to) > two_j || std::abs(two_m_from) > two_j) return 0;
    if (two_m_to == two_m_from) return Complex(k[3] * 0.5 * two_m_from, 0);
    if (two_m_to == two_m_from + 2) {
        const Real lp = sq(two_j - two_m_from, two_j + two_m_from + 2) / 2;
        return Complex(k[1], -k[2]) * (lp / 2);
    }
    if (two_m_to == two_m_from - 2) {
        const Real lm = sq(two_j + two_m_from, two_j - two_m_from + 2) / 2;
        return Complex(k[1], k[2]) * (lm / 2);
    }
    return 0;
}

Complex cross_m_element(int r, int two_j, int two_m_to, int two_m_from, const FourVector& k) {
    const int s = (r + 1) % 3;
    const int t = (r + 2) % 3;
    return k[s + 1] * angular_momentum_element(t, two_j, two_m_to, two_m_from) -
           k[t + 1] * angular_momentum_element(s, two_j, two_m_to, two_m_from);
}

Real q_coefficient(SpinLabel level, const RepLabel& rep) {
    require_valid(rep, "q_coefficient");
    if (level.two_j < 2)
        throw std::domain_error("q_coefficient: formula index j must be >= 1");
    const long tj = level.two_j;
    const long tm = rep.two_m;
    const Real j_sq = Real(tj * tj) / 4;
    const Real num = (Real(tj * tj - tm * tm) / 4) * (j_sq - rep.c_squared());
    const Real den = j_sq * Real((tj + 1) * (tj - 1));
    return num / den;
}

Real q_lower_bound_margin(SpinLabel state, const RepLabel& rep) {
    require_valid(rep, "q_lower_bound_margin");
    if (std::abs(rep.two_m) > state.two_j)
        throw std::invalid_argument("q_lower_bound_margin: requires |M| <= j");
    const Real q = q_coefficient(SpinLabel{state.two_j + 2}, rep);
    if (state.two_j == 0) return q;
    return q - 1.0 / (state.two_j + 3);
}

Complex raising_factor(const RepLabel& rep, int two_j_from) {
    require_valid(rep, "raising_factor");
    if (rep.is_trivial()) return 0;
    if (two_j_from < rep.two_j_min()) return 0;
    return kI * std::sqrt(q_coefficient(SpinLabel{two_j_from + 2}, rep));
}

namespace {

// Wigner-Eckart structure of a vector operator's j+1 <- j block; the reduced
// factor is split off so k-contractions reuse the same three amplitudes.
Complex v_raising_element(int r, int two_j, int two_m_to, int two_m_from) {
    if (std::abs(two_m_from) > two_j || std::abs(two_m_to) > two_j + 2) return 0;
    if (r == 2) {
        if (two_m_to != two_m_from) return 0;
        return Complex(sq(two_j + 2 - two_m_from, two_j + 2 + two_m_from) / 2, 0);
    }
    if (two_m_to == two_m_from + 2) {
        const Real p = sq(two_j + two_m_from + 2, two_j + two_m_from + 4) / 2;
        return r == 0 ? Complex(-p / 2, 0) : Complex(0, p / 2);
    }
    if (two_m_to == two_m_from - 2) {
        const Real q = sq(two_j - two_m_from + 2, two_j - two_m_from + 4) / 2;
        return r == 0 ? Complex(q / 2, 0) : Complex(0, q / 2);
    }
    return 0;
}

}  // namespace

Complex n_raising_element(const RepLabel& rep, int r, int two_j_from, int two_m_to,
                          int two_m_from) {
    const Complex xi = raising_factor(rep, two_j_from);
    if (xi == Complex(0, 0)) return 0;
    return xi * v_raising_element(r, two_j_from, two_m_to, two_m_from);
}

Complex k_dot_n_raising_element(const RepLabel& rep, int two_j_from, int two_m_to,
                                int two_m_from, const FourVector& k) {
    const Complex xi = raising_factor(rep, two_j_from);
    if (xi == Complex(0, 0)) return 0;
    const int two_j = two_j_from;
    if (std::abs(two_m_from) > two_j || std::abs(two_m_to) > two_j + 2) return 0;
    Complex v;
    if (two_m_to == two_m_from) {
        v = Complex(k[3] * sq(two_j + 2 - two_m_from, two_j + 2 + two_m_from) / 2, 0);
    } else if (two_m_to == two_m_from + 2) {
        const Real p = sq(two_j + two_m_from + 2, two_j + two_m_from + 4) / 2;
        v = Complex(-k[1], k[2]) * (p / 2);
    } else if (two_m_to == two_m_from - 2) {
        const Real q = sq(two_j - two_m_from + 2, two_j - two_m_from + 4) / 2;
        v = Complex(k[1], k[2]) * (q / 2);
    } else {
        return 0;
    }
    return xi * v;
}

Complex n_lowering_element(const RepLabel& rep, int r, int two_j_from, int two_m_to,
                           int two_m_from) {
    if (two_j_from - 2 < rep.two_j_min()) return 0;
    return std::conj(n_raising_element(rep, r, two_j_from - 2, two_m_from, two_m_to));
}

Complex n_diagonal_element(const RepLabel& rep, int r, int two_j, int two_m_to,
                           int two_m_from) {
    if (rep.is_trivial() || two_j == 0) return 0;
    const Real coef = rep.diag_coefficient();
    if (coef == 0) return 0;
    const Real jjp1 = Real(two_j) * Real(two_j + 2) / 4;
    return (coef / jjp1) * angular_momentum_element(r, two_j, two_m_to, two_m_from);
}

SpinMatrixSet angular_momentum_matrices(SpinLabel spin) {
    if (!spin.valid())
        throw std::invalid_argument("angular_momentum_matrices: negative spin");
    SpinMatrixSet set;
    set.spin = spin;
    const int d = spin.dim();
    for (int r = 0; r < 3; ++r) {
        set.m[r] = ComplexMatrix::Zero(d, d);
        for (int a = 0; a < d; ++a) {
            for (int b = 0; b < d; ++b) {
                set.m[r](a, b) = angular_momentum_element(r, spin.two_j, spin.two_j - 2 * a,
                                                          spin.two_j - 2 * b);
            }
        }
    }
    return set;
}

ComplexMatrix a_matrix(SpinLabel spin, const FourVector& k) {
    const SpinMatrixSet set = angular_momentum_matrices(spin);
    const int d = spin.dim();
    const Real k_sq = spatial_norm_squared(k);
    const Real jp1 = 0.5 * spin.two_j + 1;
    ComplexMatrix a = k_sq * jp1 * jp1 * ComplexMatrix::Identity(d, d);
    for (int r = 0; r < 3; ++r)
        for (int s = 0; s < 3; ++s)
            a -= k[r + 1] * k[s + 1] * (set.m[r] * set.m[s]);
    return a;
}

int BoostGeneratorBlocks::level_index(int two_j) const {
    if (!contains(two_j) || (two_j - two_j_min) % 2 != 0)
        throw std::out_of_range("BoostGeneratorBlocks: spin outside the materialized tower");
    return (two_j - two_j_min) / 2;
}

const ComplexMatrix& BoostGeneratorBlocks::diagonal_block(int two_j, int r) const {
    return diagonal[level_index(two_j)][r];
}

const ComplexMatrix& BoostGeneratorBlocks::raising_block(int two_j_from, int r) const {
    const int i = level_index(two_j_from);
    if (i + 1 >= static_cast<int>(diagonal.size()))
        throw std::out_of_range("BoostGeneratorBlocks: raising block beyond the top level");
    return raising[i][r];
}

ComplexMatrix BoostGeneratorBlocks::lowering_block(int two_j_from, int r) const {
    const int i = level_index(two_j_from);
    if (i == 0)
        throw std::out_of_range("BoostGeneratorBlocks: no level below the tower bottom");
    return raising[i - 1][r].adjoint();
}

BoostGeneratorBlocks boost_generator_blocks(const RepLabel& rep, int two_j_max) {
    require_valid(rep, "boost_generator_blocks");
    BoostGeneratorBlocks blocks;
    blocks.rep = rep;
    blocks.two_j_min = rep.two_j_min();
    blocks.two_j_max = two_j_max;
    if (two_j_max < blocks.two_j_min || (two_j_max - blocks.two_j_min) % 2 != 0)
        throw std::invalid_argument(
            "boost_generator_blocks: j_max must sit in the representation's spin tower");
    for (int two_j = blocks.two_j_min; two_j <= two_j_max; two_j += 2) {
        const int d = two_j + 1;
        std::array<ComplexMatrix, 3> diag;
        for (int r = 0; r < 3; ++r) {
            diag[r] = ComplexMatrix::Zero(d, d);
            for (int a = 0; a < d; ++a)
                for (int b = 0; b < d; ++b)
                    diag[r](a, b) =
                        n_diagonal_element(rep, r, two_j, two_j - 2 * a, two_j - 2 * b);
        }
        blocks.diagonal.push_back(std::move(diag));
        if (two_j + 2 <= two_j_max) {
            std::array<ComplexMatrix, 3> up;
            for (int r = 0; r < 3; ++r) {
                up[r] = ComplexMatrix::Zero(d + 2, d);
                for (int a = 0; a < d + 2; ++a)
                    for (int b = 0; b < d; ++b)
                        up[r](a, b) =
                            n_raising_element(rep, r, two_j, two_j + 2 - 2 * a, two_j - 2 * b);
            }
            blocks.raising.push_back(std::move(up));
        }
    }
    return blocks;
}

}  // namespace eventpovm
