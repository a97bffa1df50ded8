#include "liequant/lie.hpp"
#include "liequant/su2.hpp"
#include "test_support.hpp"

#include <gtest/gtest.h>

#include <numbers>
#include <random>

using namespace liequant;
using namespace liequant::su2;

TEST(Irrep, SpinHalfIsHalfPauli) {
    const auto r = build_irrep(1);
    EXPECT_EQ(r.t3, lie::pauli(3) / 2.0);
    EXPECT_LE(max_abs_diff(r.t1(), lie::pauli(1) / 2.0), 1e-15);
    EXPECT_LE(max_abs_diff(r.t2(), lie::pauli(2) / 2.0), 1e-15);
}

TEST(Irrep, SpinZeroAndOne) {
    const auto r0 = build_irrep(0);
    EXPECT_EQ(r0.dim(), 1u);
    EXPECT_TRUE(r0.t3.is_zero());
    EXPECT_TRUE(r0.Lplus.is_zero());
    const auto r1 = build_irrep(2);
    EXPECT_NEAR(r1.Lplus(0, 1).real(), std::sqrt(2.0), 1e-15);
    EXPECT_NEAR(r1.Lplus(1, 2).real(), std::sqrt(2.0), 1e-15);
    EXPECT_EQ(r1.Lplus(0, 2), cplx{});
}

TEST(Irrep, TwiceSpinValidation) {
    EXPECT_EQ(twice_spin(1.5), 3);
    EXPECT_EQ(twice_spin(0.0), 0);
    for (double bad : {-0.5, 0.3, std::nan("")}) {
        try {
            (void)twice_spin(bad);
            FAIL() << bad;
        } catch (const Error& e) {
            EXPECT_EQ(e.code(), "bad_spin");
        }
    }
    EXPECT_THROW((void)build_irrep(-1), Error);
}

TEST(Irrep, CommutationRelations) {
    for (int tj = 0; tj <= 10; ++tj) {
        const auto r = build_irrep(tj);
        EXPECT_NEAR(std::abs(r.t3.trace()), 0.0, 1e-15);
        for (std::size_t i = 0; i < r.dim(); ++i) EXPECT_EQ(r.t3(i, i), cplx(r.j() - static_cast<double>(i)));
        EXPECT_LE(max_abs_diff(commutator(r.t3, r.Lplus), r.Lplus), 1e-12);
        EXPECT_LE(max_abs_diff(commutator(r.t3, r.Lminus), -1.0 * r.Lminus), 1e-12);
        EXPECT_LE(max_abs_diff(commutator(r.Lplus, r.Lminus), 2.0 * r.t3), 1e-12);
        EXPECT_EQ(r.Lminus, r.Lplus.adjoint());
    }
}

TEST(Irrep, RealizesSu2Table) {
    // t_k / i satisfy the so(3) structure constants
    for (int tj = 1; tj <= 6; ++tj) {
        const auto r = build_irrep(tj);
        const std::vector<ComplexMatrix> mats{r.t1() / I_unit, r.t2() / I_unit, r.t3 / I_unit};
        const auto b = lie::structure_constants("d", {"1", "2", "3"}, mats);
        const auto o = lie::builtin_algebra("so3").basis;
        for (std::size_t p = 0; p < 3; ++p)
            for (std::size_t q = 0; q < 3; ++q)
                for (std::size_t s = 0; s < 3; ++s) EXPECT_LE(std::abs(b(p, q, s) - o(p, q, s)), 1e-12);
    }
}

TEST(Casimir, Values) {
    EXPECT_LE(max_abs_diff(casimir(build_irrep(1)), 0.75 * ComplexMatrix::identity(2)), 1e-15);
    EXPECT_TRUE(casimir(build_irrep(0)).is_zero());
    EXPECT_LE(max_abs_diff(casimir(build_irrep(3)), 3.75 * ComplexMatrix::identity(4)), 1e-14);
    for (int tj = 0; tj <= 10; ++tj) {
        const auto r = build_irrep(tj);
        const ComplexMatrix c = casimir(r);
        EXPECT_LE(max_abs_diff(c, r.j() * (r.j() + 1.0) * ComplexMatrix::identity(r.dim())), 1e-12);
        // J^2 = t1^2 + t2^2 + t3^2
        EXPECT_LE(max_abs_diff(c, r.t1() * r.t1() + r.t2() * r.t2() + r.t3 * r.t3), 1e-12);
        for (const auto& t : {r.t1(), r.t2(), r.t3}) EXPECT_LE(commutator(c, t).norm_max(), 1e-12);
    }
}

TEST(Irrep, ExponentialsUnitaryAndPeriod) {
    std::mt19937_64 gen(1);
    std::normal_distribution<double> g(0.0, 2.0);
    for (int tj = 0; tj <= 10; ++tj) {
        const auto r = build_irrep(tj);
        const ComplexMatrix h = g(gen) * r.t1() + g(gen) * r.t2() + g(gen) * r.t3;
        EXPECT_TRUE(is_unitary(expm(I_unit * h), Tolerance(1e-9, 0.0)));
        const double sign = tj % 2 == 0 ? 1.0 : -1.0;
        EXPECT_LE(max_abs_diff(expm(2.0 * std::numbers::pi * I_unit * r.t3), sign * ComplexMatrix::identity(r.dim())),
                  1e-9);
    }
}

TEST(ClebschGordan, Examples) {
    const auto a = clebsch_gordan(1, 1);
    ASSERT_EQ(a.components.size(), 2u);
    EXPECT_EQ(a.components[0].two_j, 2);
    EXPECT_EQ(a.components[1].two_j, 0);
    const auto b = clebsch_gordan(4, 0);
    ASSERT_EQ(b.components.size(), 1u);
    EXPECT_EQ(b.components[0].two_j, 4);
    const auto c = clebsch_gordan(2, 1);
    ASSERT_EQ(c.components.size(), 2u);
    EXPECT_EQ(c.components[0].two_j, 3);
    EXPECT_EQ(c.components[1].two_j, 1);
}

TEST(ClebschGordan, SingletCoefficients) {
    // |0,0> = (|up,down> - |down,up>)/sqrt2 with the first nonzero entry positive
    const auto r = clebsch_gordan(1, 1);
    const double s = 1.0 / std::sqrt(2.0);
    const ComplexMatrix& v = r.isometry;
    EXPECT_NEAR(std::abs(v(1, 3) - s), 0.0, 1e-12);
    EXPECT_NEAR(std::abs(v(2, 3) + s), 0.0, 1e-12);
    EXPECT_NEAR(std::abs(v(0, 0) - 1.0), 0.0, 1e-12);
    EXPECT_NEAR(std::abs(v(1, 1) - s), 0.0, 1e-12);
}

TEST(ClebschGordan, StepOneRuleAndBlockStructure) {
    for (int tk = 0; tk <= 6; ++tk)
        for (int tl = 0; tl <= 6; ++tl) {
            const auto res = clebsch_gordan(tk, tl);
            int expect = tk + tl, total = 0;
            for (const auto& c : res.components) {
                EXPECT_EQ(c.two_j, expect);
                EXPECT_EQ(c.multiplicity, 1);
                expect -= 2;
                total += c.two_j + 1;
            }
            EXPECT_EQ(expect + 2, std::abs(tk - tl));
            EXPECT_EQ(total, (tk + 1) * (tl + 1));

            const auto t = tensor(build_irrep(tk), build_irrep(tl));
            const ComplexMatrix& v = res.isometry;
            EXPECT_TRUE(is_unitary(v));
            const ComplexMatrix j2 = v.adjoint() * casimir(t.t3, t.Lplus, t.Lminus) * v;
            const ComplexMatrix t3 = v.adjoint() * t.t3 * v;
            const ComplexMatrix lp = v.adjoint() * t.Lplus * v;
            std::size_t col = 0;
            for (const auto& c : res.components) {
                const auto irr = build_irrep(c.two_j);
                for (std::size_t p = 0; p < irr.dim(); ++p)
                    for (std::size_t q = 0; q < irr.dim(); ++q) {
                        // each block reproduces D_j exactly in its standard basis
                        EXPECT_LE(std::abs(lp(col + p, col + q) - irr.Lplus(p, q)), 1e-10);
                        EXPECT_LE(std::abs(t3(col + p, col + q) - irr.t3(p, q)), 1e-10);
                        const double jj = 0.5 * c.two_j * (0.5 * c.two_j + 1.0);
                        EXPECT_LE(std::abs(j2(col + p, col + q) - (p == q ? jj : 0.0)), 1e-10);
                    }
                col += irr.dim();
            }
            // off-block entries vanish
            const ComplexMatrix id = ComplexMatrix::identity(v.cols());
            EXPECT_LE(max_abs_diff(v.adjoint() * v, id), 1e-10);
        }
}

TEST(ClebschGordan, HighestVectorPhase) {
    const auto res = clebsch_gordan(3, 2);
    std::size_t col = 0;
    for (const auto& c : res.components) {
        for (std::size_t i = 0; i < res.isometry.rows(); ++i) {
            const cplx x = res.isometry(i, col);
            if (std::abs(x) > 1e-10) {
                EXPECT_GT(x.real(), 0.0);
                EXPECT_NEAR(x.imag(), 0.0, 1e-12);
                break;
            }
        }
        col += static_cast<std::size_t>(c.two_j) + 1;
    }
}

TEST(Spinor, InnerProducts) {
    const std::array<cplx, 2> e1{1.0, 0.0};
    for (int ts = 0; ts <= 6; ++ts) EXPECT_EQ(spinor_inner(e1, e1, ts), cplx(1.0));
    std::mt19937_64 gen(2);
    std::normal_distribution<double> g(0.0, 1.0);
    for (int t = 0; t < 20; ++t) {
        const std::array<cplx, 2> x{cplx{g(gen), g(gen)}, cplx{g(gen), g(gen)}};
        const std::array<cplx, 2> y{cplx{g(gen), g(gen)}, cplx{g(gen), g(gen)}};
        const std::array<cplx, 2> mx{-x[0], -x[1]};
        for (int ts = 0; ts <= 7; ++ts) {
            const cplx d = spinor_inner(x, y, ts);
            EXPECT_LE(std::abs(d - spinor_inner_expansion(x, y, ts)), 1e-10 * std::max(1.0, std::abs(d)));
            EXPECT_LE(std::abs(spinor_inner(x, mx, ts) - (ts % 2 ? -1.0 : 1.0) * spinor_inner(x, x, ts)),
                      1e-10 * std::max(1.0, std::abs(d)));
        }
    }
}

TEST(Spinor, GammaAndBinomial) {
    EXPECT_DOUBLE_EQ(spinor_gamma(2), std::numbers::pi * std::numbers::pi / 12.0);
    EXPECT_EQ(binomial(6, 3), 20u);
    EXPECT_EQ(binomial(10, 0), 1u);
}

TEST(Restriction, Sl3DefiningToSu2Block) {
    // sl(3) generators, and the su(2) sitting in the upper-left 2x2 block
    const auto sl3 = lie::builtin_algebra("sl(3)");
    const ComplexMatrix e12 = ComplexMatrix::unit(3, 0, 1), e21 = ComplexMatrix::unit(3, 1, 0);
    const ComplexMatrix h = ComplexMatrix::unit(3, 0, 0) - ComplexMatrix::unit(3, 1, 1);
    const auto dims = decompose_restriction(sl3.mats, {e12, e21, h});
    EXPECT_EQ(dims, (std::vector<std::size_t>{2, 1}));
}

TEST(Restriction, IrrepToItself) {
    for (int tj : {1, 2, 5}) {
        const auto r = build_irrep(tj);
        const auto dims = decompose_restriction({r.t1(), r.t2(), r.t3}, {r.t1(), r.t2(), r.t3});
        EXPECT_EQ(dims, (std::vector<std::size_t>{static_cast<std::size_t>(tj) + 1}));
    }
}

TEST(Restriction, TensorProductUnderDiagonal) {
    const auto t = tensor(build_irrep(1), build_irrep(1));
    const ComplexMatrix t1 = (t.Lplus + t.Lminus) / 2.0, t2 = (t.Lplus - t.Lminus) / (2.0 * I_unit);
    EXPECT_EQ(decompose_restriction({t1, t2, t.t3}, {t1, t2, t.t3}), (std::vector<std::size_t>{3, 1}));
    const auto t3 = tensor(build_irrep(2), build_irrep(2));
    const ComplexMatrix u1 = (t3.Lplus + t3.Lminus) / 2.0, u2 = (t3.Lplus - t3.Lminus) / (2.0 * I_unit);
    EXPECT_EQ(decompose_restriction({u1, u2, t3.t3}, {u1, u2, t3.t3}), (std::vector<std::size_t>{5, 3, 1}));
}

TEST(Restriction, RepeatedIsotypicComponentsSplit) {
    // D_{1/2} (x) C^2 restricted to su(2) acting on the first factor: [2, 2]
    const auto r = build_irrep(1);
    const ComplexMatrix id2 = ComplexMatrix::identity(2);
    const std::vector<ComplexMatrix> sub{kron(r.t1(), id2), kron(r.t2(), id2), kron(r.t3, id2)};
    EXPECT_EQ(decompose_restriction(sub, sub), (std::vector<std::size_t>{2, 2}));
}

TEST(Restriction, NotSubalgebra) {
    const auto sl3 = lie::builtin_algebra("sl(3)");
    try {
        (void)decompose_restriction(sl3.mats, {ComplexMatrix::unit(3, 0, 1), ComplexMatrix::unit(3, 1, 2)});
        FAIL();
    } catch (const Error& e) {
        EXPECT_EQ(e.code(), "not_subalgebra");
    }
}
