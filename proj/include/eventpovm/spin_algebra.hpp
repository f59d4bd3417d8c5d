#pragma once

#include <array>
#include <vector>

#include <Eigen/Dense>

#include "eventpovm/kinematics.hpp"

namespace eventpovm {

using ComplexMatrix = Eigen::Matrix<Complex, Eigen::Dynamic, Eigen::Dynamic>;

// Spins are carried as doubled integers so half-integer values stay exact:
// j = two_j / 2. Multiplet bases are ordered by decreasing m, so row a of a
// (2j+1)-dimensional block corresponds to two_m = two_j - 2a.
struct SpinLabel {
    int two_j = 0;

    Real j() const { return 0.5 * two_j; }
    int dim() const { return two_j + 1; }
    bool valid() const { return two_j >= 0; }
};

inline int m_row(int two_j, int two_m) { return (two_j - two_m) / 2; }

// Irreducible unitary representation label (M, c). M is doubled like spins.
// Valid labels: M = 0 with real c, c^2 < 1 (plus the trivial point c = 1),
// or M != 0 with purely imaginary c (c_re = 0).
struct RepLabel {
    int two_m = 0;
    Real c_re = 0;
    Real c_im = 0;

    Real big_m() const { return 0.5 * two_m; }
    Real c_squared() const { return c_re * c_re - c_im * c_im; }
    // -i M c, real for every valid label; scales the j-diagonal blocks.
    Real diag_coefficient() const { return big_m() * c_im; }
    bool is_trivial() const { return two_m == 0 && c_re == 1.0 && c_im == 0.0; }
    bool valid() const {
        if (is_trivial()) return true;
        if (two_m == 0) return c_im == 0.0 && c_re * c_re < 1.0;
        return c_re == 0.0;
    }
    // Lowest spin contained in the representation (doubled).
    int two_j_min() const { return std::abs(two_m); }
};

// Angular momentum matrices M^1, M^2, M^3 for one spin-j multiplet.
struct SpinMatrixSet {
    SpinLabel spin;
    std::array<ComplexMatrix, 3> m;

    const ComplexMatrix& operator[](int r) const { return m[r]; }
};

SpinMatrixSet angular_momentum_matrices(SpinLabel spin);

// A^j_{m m'}(k) = |k_sp|^2 (j+1)^2 delta - k^r k^s (M^r M^s), spatial k only.
ComplexMatrix a_matrix(SpinLabel spin, const FourVector& k);

// Q^{Mc}_j = (j^2 - M^2)(j^2 - c^2) / (j^2 (2j+1)(2j-1)); formula index j >= 1.
Real q_coefficient(SpinLabel level, const RepLabel& rep);

// Q^{Mc}_{j+1} - theta_j / (2j+3) for a state of spin j, theta_0 = 0 and
// theta_j = 1 otherwise. Requires |M| <= j; zero exactly at M = j, c = 0.
Real q_lower_bound_margin(SpinLabel state, const RepLabel& rep);

// --- scalar matrix elements -------------------------------------------------
//
// The engine assembles operator actions from these closed forms instead of
// dense blocks, so large j with few active m stays cheap. r is 0,1,2 for the
// generator components 1,2,3.

// <j, m_to | M^r | j, m_from>
Complex angular_momentum_element(int r, int two_j, int two_m_to, int two_m_from);

// <j, m_to | sum_s k^s M^s | j, m_from>
Complex k_dot_m_element(int two_j, int two_m_to, int two_m_from, const FourVector& k);

// <j, m_to | eps^{rst} k^s M^t | j, m_from>
Complex cross_m_element(int r, int two_j, int two_m_to, int two_m_from, const FourVector& k);

// Reduced raising factor xi_{j+1} multiplying the j+1 <- j block; the phase
// convention makes the third component's raising entries i * (positive).
Complex raising_factor(const RepLabel& rep, int two_j_from);

// <j+1, m_to | N^r | j, m_from> and the k-contracted version.
Complex n_raising_element(const RepLabel& rep, int r, int two_j_from, int two_m_to,
                          int two_m_from);
Complex k_dot_n_raising_element(const RepLabel& rep, int two_j_from, int two_m_to,
                                int two_m_from, const FourVector& k);

// <j-1, m_to | N^r | j, m_from> = conj(<j, m_from | N^r | j-1, m_to>).
Complex n_lowering_element(const RepLabel& rep, int r, int two_j_from, int two_m_to,
                           int two_m_from);

// <j, m_to | N^r | j, m_from> = -iMc / (j(j+1)) * M^r, zero at j = 0.
Complex n_diagonal_element(const RepLabel& rep, int r, int two_j, int two_m_to,
                           int two_m_from);

// --- dense blocks -----------------------------------------------------------

// Boost generator blocks of a representation, materialized for j_min..j_max.
// raising[i] holds the j+1 <- j block (absent for the top level); lowering
// blocks are adjoints of the raising blocks one step down.
struct BoostGeneratorBlocks {
    RepLabel rep;
    int two_j_min = 0;
    int two_j_max = 0;
    std::vector<std::array<ComplexMatrix, 3>> diagonal;
    std::vector<std::array<ComplexMatrix, 3>> raising;

    bool contains(int two_j) const { return two_j >= two_j_min && two_j <= two_j_max; }
    int level_index(int two_j) const;
    const ComplexMatrix& diagonal_block(int two_j, int r) const;
    const ComplexMatrix& raising_block(int two_j_from, int r) const;
    ComplexMatrix lowering_block(int two_j_from, int r) const;
};

BoostGeneratorBlocks boost_generator_blocks(const RepLabel& rep, int two_j_max);

}  // namespace eventpovm
