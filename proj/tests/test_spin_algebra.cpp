#include <doctest.h>

#include <algorithm>
#include <cmath>
#include <stdexcept>
#include <vector>

#include "eventpovm/spin_algebra.hpp"

using namespace eventpovm;

namespace {

constexpr int eps_sign[3][3][3] = {
    {{0, 0, 0}, {0, 0, 1}, {0, -1, 0}},
    {{0, 0, -1}, {0, 0, 0}, {1, 0, 0}},
    {{0, 1, 0}, {-1, 0, 0}, {0, 0, 0}},
};

Real block_residual(const ComplexMatrix& got, const ComplexMatrix& want) {
    const Real scale = std::max({Real(1), got.cwiseAbs().maxCoeff(), want.cwiseAbs().maxCoeff()});
    return (got - want).cwiseAbs().maxCoeff() / scale;
}

std::vector<RepLabel> survey_reps() {
    std::vector<RepLabel> reps;
    for (int two_m : {0, 1, -1, 2, 3, 4}) {
        if (two_m == 0) {
            for (Real c : {0.0, 0.5, -0.5, 0.99}) reps.push_back({two_m, c, 0});
        } else {
            for (Real ci : {0.0, 2.0, -5.0}) reps.push_back({two_m, 0, ci});
        }
    }
    return reps;
}

}  // namespace

TEST_CASE("angular momentum matrices: ordering, ladder values, commutators, Casimir") {
    SUBCASE("j = 1/2 gives the Pauli matrices over two") {
        const auto set = angular_momentum_matrices(SpinLabel{1});
        CHECK(set.m[2](0, 0) == Complex(0.5, 0));
        CHECK(set.m[2](1, 1) == Complex(-0.5, 0));
        CHECK(set.m[0](0, 1) == Complex(0.5, 0));
        CHECK(set.m[0](1, 0) == Complex(0.5, 0));
        CHECK(set.m[1](0, 1) == Complex(0, -0.5));
        CHECK(set.m[1](1, 0) == Complex(0, 0.5));
    }
    SUBCASE("j = 1: the m = +j row comes first") {
        const auto set = angular_momentum_matrices(SpinLabel{2});
        CHECK(set.m[2](0, 0) == Complex(1, 0));
        CHECK(set.m[2](2, 2) == Complex(-1, 0));
        CHECK(set.m[0](0, 1).real() == doctest::Approx(std::sqrt(2.0) / 2));
    }
    for (int two_j : {0, 1, 2, 3, 4, 10}) {
        CAPTURE(two_j);
        const auto set = angular_momentum_matrices(SpinLabel{two_j});
        const int d = two_j + 1;
        for (int r = 0; r < 3; ++r) {
            CHECK((set.m[r] - set.m[r].adjoint()).cwiseAbs().maxCoeff() < 1e-13);
            for (int s = 0; s < 3; ++s) {
                ComplexMatrix want = ComplexMatrix::Zero(d, d);
                for (int t = 0; t < 3; ++t)
                    want += Complex(0, eps_sign[r][s][t]) * set.m[t];
                const ComplexMatrix got = set.m[r] * set.m[s] - set.m[s] * set.m[r];
                CHECK(block_residual(got, want) < 1e-13);
            }
        }
        ComplexMatrix casimir = ComplexMatrix::Zero(d, d);
        for (int r = 0; r < 3; ++r) casimir += set.m[r] * set.m[r];
        const Real jjp1 = 0.5 * two_j * (0.5 * two_j + 1);
        CHECK(block_residual(casimir, jjp1 * ComplexMatrix::Identity(d, d)) < 1e-13);
    }
}

TEST_CASE("q coefficient: frozen values and domain") {
    CHECK(q_coefficient(SpinLabel{2}, RepLabel{0, 0, 0}) == doctest::Approx(1.0 / 3).epsilon(1e-15));
    CHECK(q_coefficient(SpinLabel{4}, RepLabel{2, 0, 0}) == doctest::Approx(0.2).epsilon(1e-15));
    CHECK(q_coefficient(SpinLabel{2}, RepLabel{2, 0, 0}) == 0.0);
    CHECK(q_coefficient(SpinLabel{4}, RepLabel{2, 0, 2}) == doctest::Approx(0.4).epsilon(1e-15));
    // half-integer formula index is fine as long as j >= 1
    CHECK(q_coefficient(SpinLabel{3}, RepLabel{1, 0, 0}) ==
          doctest::Approx((9.0 / 4 - 1.0 / 4) * (9.0 / 4) / ((9.0 / 4) * 4 * 2)).epsilon(1e-15));
    CHECK_THROWS_AS(q_coefficient(SpinLabel{1}, RepLabel{1, 0, 0}), std::domain_error);
    CHECK_THROWS_AS(q_coefficient(SpinLabel{2}, RepLabel{0, 0, 2}), std::invalid_argument);
    CHECK_THROWS_AS(q_coefficient(SpinLabel{2}, RepLabel{2, 0.5, 0}), std::invalid_argument);
}

TEST_CASE("q lower bound margin: frozen values, equality cases, positivity scan") {
    CHECK(std::abs(q_lower_bound_margin(SpinLabel{2}, RepLabel{2, 0, 0})) <= 1e-15);
    CHECK(q_lower_bound_margin(SpinLabel{0}, RepLabel{0, 1, 0}) == 0.0);
    CHECK(q_lower_bound_margin(SpinLabel{2}, RepLabel{2, 0, 2}) ==
          doctest::Approx(0.2).epsilon(1e-14));
    CHECK_THROWS_AS(q_lower_bound_margin(SpinLabel{2}, RepLabel{4, 0, 0}),
                    std::invalid_argument);

    for (int two_j = 0; two_j <= 12; ++two_j) {
        for (int two_m = -two_j; two_m <= two_j; two_m += 2) {
            std::vector<RepLabel> reps;
            if (two_m == 0) {
                for (Real c : {0.0, 0.5, -0.5, 0.99, 0.999}) reps.push_back({two_m, c, 0});
            } else {
                for (Real ci : {0.0, 1.0, -2.0, 5.0, 10.0}) reps.push_back({two_m, 0, ci});
            }
            for (const auto& rep : reps) {
                CAPTURE(two_j);
                CAPTURE(two_m);
                CHECK(q_lower_bound_margin(SpinLabel{two_j}, rep) >= -1e-14);
            }
        }
        if (two_j > 0) {
            CHECK(std::abs(q_lower_bound_margin(SpinLabel{two_j}, RepLabel{two_j, 0, 0})) <=
                  1e-15);
        }
    }
}

TEST_CASE("boost generator blocks: Hermitian structure and phase pin") {
    for (const auto& rep : survey_reps()) {
        const int two_j_max = rep.two_j_min() + 8;
        const auto blocks = boost_generator_blocks(rep, two_j_max);
        for (int two_j = blocks.two_j_min; two_j <= two_j_max; two_j += 2) {
            for (int r = 0; r < 3; ++r) {
                const auto& diag = blocks.diagonal_block(two_j, r);
                CHECK((diag - diag.adjoint()).cwiseAbs().maxCoeff() < 1e-13);
            }
        }
        for (int two_j = blocks.two_j_min; two_j < two_j_max; two_j += 2) {
            // raising entries of the third component are i * (non-negative)
            const auto& up3 = blocks.raising_block(two_j, 2);
            for (int b = 0; b <= two_j; ++b) {
                const Complex corner = up3(b + 1, b);
                CHECK(std::abs(corner.real()) < 1e-15);
                CHECK(corner.imag() >= 0);
            }
            for (int r = 0; r < 3; ++r) {
                const ComplexMatrix low = blocks.lowering_block(two_j + 2, r);
                CHECK((low - blocks.raising_block(two_j, r).adjoint()).cwiseAbs().maxCoeff() ==
                      0.0);
            }
        }
    }
}

TEST_CASE("boost generator blocks: rotation covariance and boost commutators") {
    for (const auto& rep : survey_reps()) {
        const int two_j_max = rep.two_j_min() + 8;
        const auto blocks = boost_generator_blocks(rep, two_j_max);
        for (int two_j = blocks.two_j_min; two_j <= two_j_max; two_j += 2) {
            const auto set_j = angular_momentum_matrices(SpinLabel{two_j});
            const int d = two_j + 1;
            CAPTURE(rep.two_m);
            CAPTURE(rep.c_im);
            CAPTURE(two_j);

            // [M^r, N^s] = i eps^{rst} N^t on the diagonal blocks
            for (int r = 0; r < 3; ++r) {
                for (int s = 0; s < 3; ++s) {
                    ComplexMatrix want = ComplexMatrix::Zero(d, d);
                    for (int t = 0; t < 3; ++t)
                        want += Complex(0, eps_sign[r][s][t]) * blocks.diagonal_block(two_j, t);
                    const ComplexMatrix got = set_j.m[r] * blocks.diagonal_block(two_j, s) -
                                              blocks.diagonal_block(two_j, s) * set_j.m[r];
                    CHECK(block_residual(got, want) < 1e-12);
                }
            }
            if (two_j + 2 <= two_j_max) {
                const auto set_j1 = angular_momentum_matrices(SpinLabel{two_j + 2});
                for (int r = 0; r < 3; ++r) {
                    for (int s = 0; s < 3; ++s) {
                        ComplexMatrix want = ComplexMatrix::Zero(d + 2, d);
                        for (int t = 0; t < 3; ++t)
                            want += Complex(0, eps_sign[r][s][t]) * blocks.raising_block(two_j, t);
                        const ComplexMatrix got = set_j1.m[r] * blocks.raising_block(two_j, s) -
                                                  blocks.raising_block(two_j, s) * set_j.m[r];
                        CHECK(block_residual(got, want) < 1e-12);
                    }
                }
            }

            // [N^r, N^s] = -i eps^{rst} M^t, away from the truncation level
            if (two_j + 2 <= two_j_max) {
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
                            want -= Complex(0, eps_sign[r][s][t]) * set_j.m[t];
                        CHECK(block_residual(got, want) < 1e-12);
                    }
                }
                // mixed block of the commutator vanishes
                for (int r = 0; r < 3; ++r) {
                    for (int s = 0; s < 3; ++s) {
                        const ComplexMatrix got =
                            blocks.diagonal_block(two_j + 2, r) * blocks.raising_block(two_j, s) +
                            blocks.raising_block(two_j, r) * blocks.diagonal_block(two_j, s) -
                            blocks.diagonal_block(two_j + 2, s) * blocks.raising_block(two_j, r) -
                            blocks.raising_block(two_j, s) * blocks.diagonal_block(two_j, r);
                        CHECK(got.cwiseAbs().maxCoeff() < 1e-12);
                    }
                }
            }
        }
    }
}

TEST_CASE("boost generator blocks: bilinear product identities") {
    for (const auto& rep : survey_reps()) {
        const int two_j_max = rep.two_j_min() + 10;
        const auto blocks = boost_generator_blocks(rep, two_j_max);
        for (int two_j = blocks.two_j_min; two_j + 2 <= two_j_max; two_j += 2) {
            const auto set = angular_momentum_matrices(SpinLabel{two_j});
            const int d = two_j + 1;
            const Real j = 0.5 * two_j;
            const Real q_up = q_coefficient(SpinLabel{two_j + 2}, rep);
            for (int r = 0; r < 3; ++r) {
                for (int s = 0; s < 3; ++s) {
                    // raising route: N^r_{j,j+1} N^s_{j+1,j}
                    const ComplexMatrix got =
                        blocks.raising_block(two_j, r).adjoint() * blocks.raising_block(two_j, s);
                    ComplexMatrix want = -set.m[r] * set.m[s];
                    if (r == s) want += (j + 1) * (j + 1) * ComplexMatrix::Identity(d, d);
                    for (int t = 0; t < 3; ++t)
                        want -= Complex(0, (j + 1) * eps_sign[r][s][t]) * set.m[t];
                    CHECK(block_residual(got, q_up * want) < 1e-12);
                }
            }
            if (two_j - 2 >= blocks.two_j_min) {
                const Real q_dn = q_coefficient(SpinLabel{two_j}, rep);
                for (int r = 0; r < 3; ++r) {
                    for (int s = 0; s < 3; ++s) {
                        // lowering route: N^r_{j,j-1} N^s_{j-1,j}
                        const ComplexMatrix got = blocks.raising_block(two_j - 2, r) *
                                                  blocks.raising_block(two_j - 2, s).adjoint();
                        ComplexMatrix want = -set.m[r] * set.m[s];
                        if (r == s) want += j * j * ComplexMatrix::Identity(d, d);
                        for (int t = 0; t < 3; ++t)
                            want += Complex(0, j * eps_sign[r][s][t]) * set.m[t];
                        CHECK(block_residual(got, q_dn * want) < 1e-12);
                    }
                }
            }
        }
    }
}

TEST_CASE("trivial representation carries no boost generators") {
    const RepLabel trivial{0, 1, 0};
    CHECK(trivial.is_trivial());
    const auto blocks = boost_generator_blocks(trivial, 4);
    for (const auto& level : blocks.diagonal)
        for (const auto& mat : level) CHECK(mat.cwiseAbs().maxCoeff() == 0.0);
    for (const auto& level : blocks.raising)
        for (const auto& mat : level) CHECK(mat.cwiseAbs().maxCoeff() == 0.0);
}

TEST_CASE("element functions match the dense blocks under k-contraction") {
    const RepLabel rep{2, 0, 1.5};
    const FourVector k(7, 0.4, -1.1, 2.0);
    const auto blocks = boost_generator_blocks(rep, 6);
    for (int two_j = 2; two_j < 6; two_j += 2) {
        ComplexMatrix kn = ComplexMatrix::Zero(two_j + 3, two_j + 1);
        for (int r = 0; r < 3; ++r) kn += k[r + 1] * blocks.raising_block(two_j, r);
        for (int a = 0; a <= two_j + 2; ++a) {
            for (int b = 0; b <= two_j; ++b) {
                const Complex el = k_dot_n_raising_element(rep, two_j, two_j + 2 - 2 * a,
                                                           two_j - 2 * b, k);
                CHECK(std::abs(el - kn(a, b)) < 1e-13);
            }
        }
        const auto set = angular_momentum_matrices(SpinLabel{two_j});
        for (int r = 0; r < 3; ++r) {
            ComplexMatrix cross = ComplexMatrix::Zero(two_j + 1, two_j + 1);
            const int s = (r + 1) % 3, t = (r + 2) % 3;
            cross = k[s + 1] * set.m[t] - k[t + 1] * set.m[s];
            for (int a = 0; a <= two_j; ++a)
                for (int b = 0; b <= two_j; ++b)
                    CHECK(std::abs(cross_m_element(r, two_j, two_j - 2 * a, two_j - 2 * b, k) -
                                   cross(a, b)) < 1e-13);
        }
    }
}

TEST_CASE("a matrix: axis values, scalar case, positivity") {
    SUBCASE("j = 1 along the third axis gives diag(3, 4, 3)") {
        const ComplexMatrix a = a_matrix(SpinLabel{2}, FourVector(5, 0, 0, 1));
        CHECK(a(0, 0).real() == doctest::Approx(3.0));
        CHECK(a(1, 1).real() == doctest::Approx(4.0));
        CHECK(a(2, 2).real() == doctest::Approx(3.0));
        CHECK(a.cwiseAbs().sum() == doctest::Approx(10.0));
    }
    SUBCASE("j = 0 reduces to |k_spatial|^2") {
        const ComplexMatrix a = a_matrix(SpinLabel{0}, FourVector(5, 1, 2, 2));
        CHECK(a(0, 0).real() == doctest::Approx(9.0));
    }
    SUBCASE("lowest eigenvalue is |k_spatial|^2 (2j+1)") {
        const FourVector ks[] = {FourVector(9, 1.2, -0.7, 2.2), FourVector(9, 0, 3, -4),
                                 FourVector(9, -2, 0.5, 0.1)};
        for (int two_j : {1, 2, 3, 4, 7}) {
            for (const auto& k : ks) {
                const ComplexMatrix a = a_matrix(SpinLabel{two_j}, k);
                Eigen::SelfAdjointEigenSolver<ComplexMatrix> es(a);
                const Real k_sq = spatial_norm_squared(k);
                CHECK(es.eigenvalues().minCoeff() >=
                      k_sq * (two_j + 1) * (1 - 1e-9));
                CHECK(es.eigenvalues().minCoeff() ==
                      doctest::Approx(k_sq * (two_j + 1)).epsilon(1e-10));
            }
        }
    }
}

TEST_CASE("boost generator blocks: argument validation") {
    CHECK_THROWS_AS(boost_generator_blocks(RepLabel{1, 0, 0}, 4), std::invalid_argument);
    CHECK_THROWS_AS(boost_generator_blocks(RepLabel{2, 0, 0}, 0), std::invalid_argument);
    CHECK_THROWS_AS(boost_generator_blocks(RepLabel{0, 0.3, 0.7}, 4), std::invalid_argument);
}
