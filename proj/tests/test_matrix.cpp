#include "liequant/lie.hpp"
#include "liequant/matrix.hpp"
#include "test_support.hpp"

#include <gtest/gtest.h>
#include <unsupported/Eigen/MatrixFunctions>

#include <cmath>
#include <numbers>

using namespace liequant;
using liequant::testing::random_hermitian;
using liequant::testing::random_matrix;
using liequant::testing::to_eigen;

TEST(Matrix, RejectsEmptyShapes) {
    EXPECT_THROW(ComplexMatrix(0, 3), Error);
    EXPECT_THROW(ComplexMatrix(2, 2, std::vector<cplx>(3)), Error);
}

TEST(Matrix, ShapeMismatchThrowsShape) {
    try {
        (void)commutator(ComplexMatrix(2, 2), ComplexMatrix(3, 3));
        FAIL() << "expected shape error";
    } catch (const Error& e) {
        EXPECT_EQ(e.code(), "shape");
    }
}

TEST(Matrix, PauliCommutator) {
    EXPECT_EQ(commutator(lie::pauli(1), lie::pauli(2)), 2.0 * I_unit * lie::pauli(3));
}

TEST(Matrix, UnitMatrixCommutator) {
    const ComplexMatrix c = commutator(ComplexMatrix::unit(2, 0, 1), ComplexMatrix::unit(2, 1, 0));
    EXPECT_EQ(c, ComplexMatrix::diagonal(std::vector<double>{1.0, -1.0}));
}

TEST(Matrix, CommutatorAntisymmetryExact) {
    std::mt19937_64 gen(1);
    for (int i = 0; i < 20; ++i) {
        const ComplexMatrix a = random_matrix(5, 5, gen), b = random_matrix(5, 5, gen);
        EXPECT_TRUE((commutator(a, b) + commutator(b, a)).is_zero());
        EXPECT_TRUE(commutator(a, a).is_zero());
    }
}

TEST(Matrix, ProductMatchesEigen) {
    std::mt19937_64 gen(2);
    const ComplexMatrix a = random_matrix(4, 6, gen), b = random_matrix(6, 3, gen);
    const auto e = liequant::testing::from_eigen(to_eigen(a) * to_eigen(b));
    EXPECT_LE(max_abs_diff(a * b, e), 1e-13);
}

TEST(Matrix, KronMatchesEigenBlocks) {
    std::mt19937_64 gen(3);
    const ComplexMatrix a = random_matrix(2, 3, gen), b = random_matrix(3, 2, gen);
    const ComplexMatrix k = kron(a, b);
    ASSERT_EQ(k.rows(), 6u);
    ASSERT_EQ(k.cols(), 6u);
    for (std::size_t i = 0; i < 2; ++i)
        for (std::size_t j = 0; j < 3; ++j)
            for (std::size_t p = 0; p < 3; ++p)
                for (std::size_t q = 0; q < 2; ++q) EXPECT_EQ(k(i * 3 + p, j * 2 + q), a(i, j) * b(p, q));
}

TEST(Expm, ZeroIsIdentity) { EXPECT_EQ(expm(ComplexMatrix(4, 4)), ComplexMatrix::identity(4)); }

TEST(Expm, StrictlyUpperTriangularTruncatesExactly) {
    const ComplexMatrix a{{0.0, 2.0, -3.0}, {0.0, 0.0, 0.5}, {0.0, 0.0, 0.0}};
    const ComplexMatrix expect = ComplexMatrix::identity(3) + a + a * a / 2.0;
    EXPECT_EQ(expm(a), expect);
}

TEST(Expm, MatchesEigenMatrixExponential) {
    std::mt19937_64 gen(4);
    for (double scale : {0.1, 1.0, 3.0}) {
        const ComplexMatrix a = random_matrix(5, 5, gen, scale);
        const Eigen::MatrixXcd oracle = to_eigen(a).exp();
        const ComplexMatrix e = expm(a);
        EXPECT_LE(max_abs_diff(e, liequant::testing::from_eigen(oracle)), 1e-12 * std::max(1.0, e.norm_max()));
    }
}

TEST(Expm, RelativeAccuracyUpToNormTwenty) {
    // skew-Hermitian input keeps the result unitary, so entries stay O(1)
    std::mt19937_64 gen(5);
    ComplexMatrix h = random_hermitian(4, gen);
    h = h * (20.0 / h.norm_fro());
    const ComplexMatrix e = expm(I_unit * h);
    const Eigen::MatrixXcd oracle = (to_eigen(h) * cplx{0.0, 1.0}).exp();
    EXPECT_LE(max_abs_diff(e, liequant::testing::from_eigen(oracle)), 1e-12 * 20.0);
}

TEST(Expm, SeriesOracleForHatMatrix) {
    const ComplexMatrix x{{0.0, -0.7, -1.1}, {0.7, 0.0, -0.3}, {1.1, 0.3, 0.0}};
    ComplexMatrix term = ComplexMatrix::identity(3), sum = term;
    for (int k = 1; k <= 60; ++k) {
        term = term * x / static_cast<double>(k);
        sum += term;
    }
    EXPECT_LE(max_abs_diff(expm(x), sum), 1e-14);
}

TEST(Expm, InverseProperty) {
    std::mt19937_64 gen(6);
    for (int i = 0; i < 20; ++i) {
        ComplexMatrix a = random_matrix(4, 4, gen);
        a = a * (5.0 / a.norm_fro());
        EXPECT_LE(max_abs_diff(expm(a) * expm(-1.0 * a), ComplexMatrix::identity(4)), 1e-10);
    }
}

TEST(Expm, CommutingSum) {
    std::mt19937_64 gen(7);
    for (int i = 0; i < 10; ++i) {
        const ComplexMatrix m = random_matrix(4, 4, gen, 0.5);
        const ComplexMatrix a = 0.3 * m + 0.2 * m * m, b = -0.5 * m + ComplexMatrix::identity(4);
        const ComplexMatrix lhs = expm(a + b), rhs = expm(a) * expm(b);
        EXPECT_LE(max_abs_diff(lhs, rhs), 1e-9 * std::max(1.0, lhs.norm_max()));
    }
}

TEST(Predicates, SpecialOrthogonal) {
    EXPECT_TRUE(is_special_orthogonal(ComplexMatrix::identity(3)));
    EXPECT_FALSE(is_special_orthogonal(ComplexMatrix::diagonal(std::vector<double>{1.0, 1.0, -1.0})));
    EXPECT_FALSE(is_special_orthogonal(I_unit * ComplexMatrix::identity(3)));
}

TEST(Predicates, UnitaryHermitian) {
    const cplx x{0.6, 0.0}, y{0.0, 0.8};
    const ComplexMatrix u{{x, y}, {-std::conj(y), std::conj(x)}};
    EXPECT_TRUE(is_unitary(u));
    EXPECT_FALSE(is_unitary(2.0 * u));
    EXPECT_TRUE(is_hermitian(lie::pauli(2)));
    EXPECT_FALSE(is_hermitian(I_unit * lie::pauli(2)));
    EXPECT_TRUE(is_antihermitian(I_unit * lie::pauli(2)));
}

TEST(Predicates, ToleranceValidation) {
    EXPECT_THROW(Tolerance(0.0, 0.0).validate(), Error);
    EXPECT_THROW(Tolerance(-1.0, 1e-3).validate(), Error);
    EXPECT_NO_THROW(Tolerance(0.0, 1e-3).validate());
}

TEST(Linear, DeterminantAndInverseMatchEigen) {
    std::mt19937_64 gen(8);
    const ComplexMatrix a = random_matrix(5, 5, gen);
    const Eigen::MatrixXcd e = to_eigen(a);
    EXPECT_LE(std::abs(determinant(a) - e.determinant()), 1e-11 * std::abs(e.determinant()));
    EXPECT_LE(max_abs_diff(inverse(a), liequant::testing::from_eigen(e.inverse())), 1e-10);
}

TEST(Linear, SingularInverseThrows) {
    const ComplexMatrix s{{1.0, 2.0}, {2.0, 4.0}};
    EXPECT_EQ(determinant(s), cplx{});
    EXPECT_THROW((void)inverse(s), Error);
}

TEST(EigHermitian, PauliThree) {
    const auto e = eig_hermitian(lie::pauli(3));
    EXPECT_EQ(e.values, (std::vector<double>{-1.0, 1.0}));
}

TEST(EigHermitian, IdentityHasRepeatedOne) {
    const auto e = eig_hermitian(ComplexMatrix::identity(4));
    for (double v : e.values) EXPECT_DOUBLE_EQ(v, 1.0);
}

TEST(EigHermitian, PauliOneVectors) {
    const auto e = eig_hermitian(lie::pauli(1));
    EXPECT_NEAR(e.values[0], -1.0, 1e-15);
    EXPECT_NEAR(e.values[1], 1.0, 1e-15);
    // (1, -1)/sqrt2 for -1 and (1, 1)/sqrt2 for +1, up to phase
    const double s = 1.0 / std::sqrt(2.0);
    EXPECT_NEAR(std::abs(e.vectors(0, 0) * s - e.vectors(1, 0) * s), 1.0, 1e-12);
    EXPECT_NEAR(std::abs(e.vectors(0, 1) * s + e.vectors(1, 1) * s), 1.0, 1e-12);
}

TEST(EigHermitian, NonHermitianRejected) {
    try {
        (void)eig_hermitian(ComplexMatrix::unit(2, 0, 1));
        FAIL();
    } catch (const Error& e) {
        EXPECT_EQ(e.code(), "not_hermitian");
    }
}

TEST(EigHermitian, RandomAgainstSelfAdjointSolver) {
    std::mt19937_64 gen(9);
    for (std::size_t n : {2u, 5u, 12u, 30u}) {
        const ComplexMatrix a = random_hermitian(n, gen);
        const auto e = eig_hermitian(a);
        Eigen::SelfAdjointEigenSolver<Eigen::MatrixXcd> oracle(to_eigen(a));
        for (std::size_t k = 0; k < n; ++k) EXPECT_NEAR(e.values[k], oracle.eigenvalues()(k), 1e-10);
        for (std::size_t k = 1; k < n; ++k) EXPECT_LE(e.values[k - 1], e.values[k]);
        EXPECT_TRUE(is_unitary(e.vectors));
        const ComplexMatrix rec = e.vectors * ComplexMatrix::diagonal(e.values) * e.vectors.adjoint();
        EXPECT_LE(max_abs_diff(rec, a), 1e-10 * (1.0 + a.norm_fro()));
    }
}

TEST(EigHermitian, DegenerateClusterOrthonormal) {
    std::mt19937_64 gen(10);
    const ComplexMatrix q = eig_hermitian(random_hermitian(5, gen)).vectors;
    const ComplexMatrix a = q * ComplexMatrix::diagonal(std::vector<double>{2.0, 2.0, 2.0, -1.0, 5.0}) * q.adjoint();
    const auto e = eig_hermitian(a);
    EXPECT_TRUE(is_unitary(e.vectors));
    EXPECT_LE(max_abs_diff(a * e.vectors, e.vectors * ComplexMatrix::diagonal(e.values)), 1e-10);
}

TEST(NullSpace, RankDeficient) {
    const ComplexMatrix a{{1.0, 2.0, 3.0}, {2.0, 4.0, 6.0}};
    const auto ns = null_space(a);
    ASSERT_EQ(ns.size(), 2u);
    for (const auto& v : ns) {
        EXPECT_NEAR(norm2(v), 1.0, 1e-12);
        EXPECT_LE(norm2(a * v), 1e-12);
    }
    EXPECT_NEAR(std::abs(inner(ns[0], ns[1])), 0.0, 1e-12);
    EXPECT_TRUE(null_space(ComplexMatrix::identity(3)).empty());
}
