// hypair: pairings on genus-2 hyperelliptic curves
// Copyright 2026 The hypair Authors.
// SPDX-License-Identifier: Apache-2.0

#include "hypair/jacobian.hpp"

#include <gtest/gtest.h>

#include "oracle/point_oracle.hpp"
#include "test_util.hpp"

using namespace hypair;

namespace {

struct F7Fixture : ::testing::Test {
    CurveParams curve = fixtures::curve_f7_x5p1();
    LiftedCurve lc = lift_curve(curve, curve.base);
    Rng rng{41};
};

}  // namespace

TEST_F(F7Fixture, GroupAxioms) {
    auto id = identity_divisor(lc);
    for (int t = 0; t < 50; ++t) {
        auto d = random_divisor(lc, rng);
        EXPECT_EQ(compose_reduce(lc, d, id), d);
        EXPECT_TRUE(compose_reduce(lc, d, negate(lc, d)).is_identity());
        auto a = random_divisor(lc, rng), b = random_divisor(lc, rng);
        EXPECT_EQ(compose_reduce(lc, a, b), compose_reduce(lc, b, a));
    }
}

TEST_F(F7Fixture, FullTableMatchesPointOracle) {
    oracle::PointOracle po(curve);
    auto sets = po.enumerate_reduced();
    EXPECT_EQ(sets.size(), 50u);  // #Jac = P(1) = 50

    std::vector<ReducedDivisor> divs;
    for (const auto& s : sets) divs.push_back(po.to_divisor(lc, s));

    for (size_t i = 0; i < sets.size(); ++i)
        for (size_t j = i; j < sets.size(); ++j) {
            ReducedDivisor lib = compose_reduce(lc, divs[i], divs[j]);
            ReducedDivisor orc = po.to_divisor(lc, po.add(sets[i], sets[j]));
            ASSERT_EQ(lib, orc) << "table mismatch at (" << i << "," << j << ")";
        }
}

TEST_F(F7Fixture, MumfordInvariantsOnRandomSums) {
    for (int t = 0; t < 500; ++t) {
        auto d = compose_reduce(lc, random_divisor(lc, rng), random_divisor(lc, rng));
        EXPECT_NO_THROW(check_divisor(lc, d));
        EXPECT_LE(d.u.degree(), 2);
        if (!d.v.is_zero()) EXPECT_LT(d.v.degree(), d.u.degree());
    }
}

TEST_F(F7Fixture, CantorWithFunctionsIdentitySummand) {
    // adding the zero divisor contributes a function with empty divisor:
    // f/g must come out a nonzero constant modulo the evaluation context
    for (int t = 0; t < 20; ++t) {
        auto d = random_divisor(lc, rng);
        auto e = random_divisor(lc, rng);
        if (e.u.degree() < 1) continue;
        auto cf = cantor_with_functions(lc, d, identity_divisor(lc), e.u, e.v);
        EXPECT_EQ(cf.sum, d);
        EXPECT_TRUE(cf.f.is_constant());
        EXPECT_TRUE(cf.g.is_constant());
        EXPECT_FALSE(cf.f.is_zero());
        EXPECT_TRUE(cf.lc.is_one());
    }
}

TEST_F(F7Fixture, CantorWithFunctionsMatchesComposeReduce) {
    for (int t = 0; t < 200; ++t) {
        auto a = random_divisor(lc, rng), b = random_divisor(lc, rng);
        auto e = random_divisor(lc, rng);
        if (e.u.degree() < 1) continue;
        try {
            auto cf = cantor_with_functions(lc, a, b, e.u, e.v);
            EXPECT_EQ(cf.sum, compose_reduce(lc, a, b));
            EXPECT_FALSE(cf.lc.is_zero());
        } catch (const ZeroEncountered&) {
            // legitimate support collision; resample
        }
    }
}

TEST_F(F7Fixture, CantorFunctionValueMatchesOracle) {
    // h_{A,B} from Algorithm 2 equals the oracle's explicitly constructed
    // function rho(A) + rho(B) - rho(A+B), normalized, on disjoint support.
    oracle::PointOracle po(curve);
    auto sets = po.enumerate_reduced();
    Rng prng(7);
    int checked = 0;
    for (int t = 0; t < 400 && checked < 60; ++t) {
        const auto& A = sets[prng() % sets.size()];
        const auto& B = sets[prng() % sets.size()];
        const auto& E = sets[prng() % sets.size()];
        if (A.empty() || B.empty() || E.size() != 2) continue;
        auto da = po.to_divisor(lc, A), db = po.to_divisor(lc, B), de = po.to_divisor(lc, E);
        try {
            auto cf = cantor_with_functions(lc, da, db, de.u, de.v);
            FieldElement num = eval_at_roots(cf.f, de.u);
            FieldElement den = pow(cf.lc, Int(de.u.degree())) * eval_at_roots(cf.g, de.u);
            if (num.is_zero() || den.is_zero()) continue;
            FieldElement lib = num / den;
            po.add(A, B);
            // library value lives in F_7; oracle computes in F_{7^4}
            FieldElement orc = po.eval_aux_normalized(po.last_aux, E);
            ASSERT_TRUE(subfield_test(orc, 1));
            EXPECT_EQ(orc.coeffs()[0], lib.coeffs()[0]);
            ++checked;
        } catch (const ZeroEncountered&) {
        }
    }
    EXPECT_GE(checked, 40);
}

TEST_F(F7Fixture, ScalarMultiplication) {
    auto id = identity_divisor(lc);
    for (int t = 0; t < 20; ++t) {
        auto d = random_divisor(lc, rng);
        EXPECT_TRUE(scalar_mul(lc, d, 0).is_identity());
        EXPECT_EQ(scalar_mul(lc, d, 1), d);
        EXPECT_EQ(scalar_mul(lc, d, -1), negate(lc, d));
        EXPECT_TRUE(scalar_mul(lc, d, 50).is_identity());  // #Jac = 50
        Int ord = divisor_order(lc, d, 50);
        EXPECT_TRUE(scalar_mul(lc, d, ord).is_identity());
        if (ord > 1) EXPECT_FALSE(scalar_mul(lc, d, ord / 2).is_identity());
    }
    EXPECT_TRUE(scalar_mul(lc, id, 12345).is_identity());
}

TEST(Jacobian, GaloisEquivariance) {
    auto curve = fixtures::curve_f7_x5p1();
    auto f2401 = build_extension(7, 4, 0);
    LiftedCurve lc = lift_curve(curve, f2401);
    Rng rng(5);
    for (int t = 0; t < 100; ++t) {
        auto a = random_divisor(lc, rng), b = random_divisor(lc, rng);
        EXPECT_EQ(frobenius_on_divisor(lc, compose_reduce(lc, a, b)),
                  compose_reduce(lc, frobenius_on_divisor(lc, a), frobenius_on_divisor(lc, b)));
    }
    // pi fixes base-field divisors; pi^k is the identity over F_{q^k}
    LiftedCurve base_lc = lift_curve(curve, curve.base);
    for (int t = 0; t < 10; ++t) {
        auto d = random_divisor(base_lc, rng);
        EXPECT_EQ(frobenius_on_divisor(base_lc, d), d);
        auto e = random_divisor(lc, rng);
        auto x = e;
        for (int i = 0; i < 4; ++i) x = frobenius_on_divisor(lc, x);
        EXPECT_EQ(x, e);
    }
}

TEST(Jacobian, ExtDegreeTag) {
    auto ctx = fixtures::context_f19();
    Rng rng(6);
    auto base_lc = lift_curve(ctx.curve, ctx.curve.base);
    auto d = random_divisor(base_lc, rng);
    auto lifted = lift_divisor(ctx, ctx.base_embed, d);
    EXPECT_EQ(lifted.ext_degree, 1u);
    auto big = random_divisor(ctx.lifted, rng);
    EXPECT_EQ(ctx.k % big.ext_degree, 0u);
}

TEST(Jacobian, TorsionSampling) {
    auto ctx = fixtures::context_f19();
    Rng rng(7);
    for (int t = 0; t < 10; ++t) {
        auto x = sample_r_torsion(ctx, ctx.k, rng);
        EXPECT_FALSE(x.is_identity());
        EXPECT_TRUE(scalar_mul(ctx.lifted, x, ctx.r).is_identity());
    }
    EXPECT_THROW(sample_r_torsion_raw(ctx.lifted, ctx.jac_order_k, 1009, rng), NoTorsion);
}

TEST(Jacobian, TorsionSamplingHitsSeveralSubgroups) {
    // Jac(F_{q^k})[r] is at least 2-dimensional for k > 1: within 50 samples
    // at least 2 of the r+1 rank-1 subgroups must show up.
    auto ctx = fixtures::context_f19();
    Rng rng(8);
    auto first = sample_r_torsion(ctx, ctx.k, rng);
    bool independent_found = false;
    for (int t = 0; t < 50 && !independent_found; ++t) {
        auto x = sample_r_torsion(ctx, ctx.k, rng);
        bool multiple = false;
        auto acc = identity_divisor(ctx.lifted);
        for (Int c = 1; c < ctx.r; ++c) {
            acc = compose_reduce(ctx.lifted, acc, first);
            if (acc == x) {
                multiple = true;
                break;
            }
        }
        independent_found = !multiple;
    }
    EXPECT_TRUE(independent_found);
}

TEST(Jacobian, EigenspaceProjection) {
    auto ctx = fixtures::context_f19();
    Rng rng(9);
    Int qm = mod_floor(ctx.q, ctx.r);
    for (int t = 0; t < 25; ++t) {
        auto d = sample_r_torsion(ctx, ctx.k, rng);
        auto g1 = project_G1(ctx, d);
        auto g2 = project_G2(ctx, d);
        if (!g1.is_identity()) EXPECT_EQ(frobenius_on_divisor(ctx.lifted, g1), g1);
        if (!g2.is_identity())
            EXPECT_EQ(frobenius_on_divisor(ctx.lifted, g2), scalar_mul(ctx.lifted, g2, qm));
    }
    // projector acts as a scalar on its own eigenspace
    auto g1 = sample_G1(ctx, rng);
    auto again = project_G1(ctx, g1);
    bool is_multiple = false;
    auto acc = identity_divisor(ctx.lifted);
    for (Int c = 1; c < ctx.r && !is_multiple; ++c) {
        acc = compose_reduce(ctx.lifted, acc, g1);
        if (acc == again) is_multiple = true;
    }
    EXPECT_TRUE(is_multiple || again.is_identity());

    // G1 and G2 are independent for k > 1 (small-r multiple scan)
    auto g2 = sample_G2(ctx, rng);
    acc = identity_divisor(ctx.lifted);
    bool dependent = g2.is_identity();
    for (Int c = 1; c < ctx.r && !dependent; ++c) {
        acc = compose_reduce(ctx.lifted, acc, g1);
        if (acc == g2) dependent = true;
    }
    EXPECT_FALSE(dependent);
}

TEST(Jacobian, ProjectionDegenerateReported) {
    // k = 1 context: lambda = 1 = q mod r is a double root of P mod r
    auto f7 = FieldDescriptor::prime_field(7);
    CurveParams cv = fixtures::curve_f7_x5p1();
    auto cp = frobenius_charpoly(cv);
    LiftedCurve lc = lift_curve(cv, f7);
    Rng rng(10);
    auto d = sample_r_torsion_raw(lc, cp.eval(1), 5, rng);
    // P(x) = x^4 + 49: mod 5 both 1 and q=7=2 are roots; 1 is a double root
    // exactly when (x-1)^2 | x^4 + 4 mod 5, which holds: x^4+4 = (x^2+x+2)(x^2+4x+2)... verify via the API
    try {
        auto p1 = project_eigenspace(lc, d, cp, 5, 1);
        (void)p1;  // acceptable if simple root; the API contract is "report, not guess"
    } catch (const ProjectionDegenerate&) {
        SUCCEED();
    }
}

TEST(Jacobian, DegenerateClassifier) {
    auto curve = fixtures::curve_f7_x5p1();
    LiftedCurve lc = lift_curve(curve, curve.base);
    Rng rng(11);
    AffinePoint pt = random_point(lc, rng);
    auto single = point_divisor(lc, pt);
    EXPECT_TRUE(is_degenerate(lc, single));       // deg u = 1, g = 2
    EXPECT_FALSE(is_degenerate(lc, identity_divisor(lc)));
    for (int t = 0; t < 40; ++t) {
        auto d = random_divisor(lc, rng);
        if (d.u.degree() == 2) {
            EXPECT_FALSE(is_degenerate(lc, d));
            break;
        }
    }
}

TEST(Jacobian, MalformedInputsRejected) {
    auto curve = fixtures::curve_f7_x5p1();
    LiftedCurve lc = lift_curve(curve, curve.base);
    auto f7 = curve.base;
    // non-monic u
    ReducedDivisor bad1{poly_from_ints(f7, {1, 2}), poly_zero(f7), 1};
    EXPECT_THROW(check_divisor(lc, bad1), InvariantViolation);
    // u does not divide F - vH - v^2
    ReducedDivisor bad2{poly_from_ints(f7, {1, 1}), poly_from_ints(f7, {1}), 1};
    EXPECT_THROW(check_divisor(lc, bad2), InvariantViolation);
    EXPECT_THROW(compose_reduce(lc, bad2, identity_divisor(lc)), InvariantViolation);
    // deg v >= deg u
    ReducedDivisor bad3{poly_from_ints(f7, {6, 1}), poly_from_ints(f7, {0, 1}), 1};
    EXPECT_THROW(check_divisor(lc, bad3), InvariantViolation);
}

TEST_F(F7Fixture, StageOneProducesSemiReducedDivisors) {
    for (int t = 0; t < 100; ++t) {
        auto a = random_divisor(lc, rng), b = random_divisor(lc, rng);
        auto st = detail::cantor_stage1(lc, a, b);
        check_semi_reduced(lc, st.semi);
        EXPECT_LE(st.semi.u.degree(), 4);  // deg u1 + deg u2
        EXPECT_TRUE(st.d.is_monic() || st.d.degree() == 0);
        // reducing the semi-reduced pair gives the composed class
        Poly U = st.semi.u, V = st.semi.v;
        while (U.degree() > 2) {
            auto [Un, Vn] = detail::cantor_reduce_step(lc, U, V);
            U = Un;
            V = Vn;
        }
        EXPECT_EQ(make_divisor(lc, U, V), compose_reduce(lc, a, b));
    }
}
