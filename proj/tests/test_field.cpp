// hypair: pairings on genus-2 hyperelliptic curves
// Copyright 2026 The hypair Authors.
// SPDX-License-Identifier: Apache-2.0

#include "hypair/field.hpp"

#include <gtest/gtest.h>

using namespace hypair;

TEST(Field, PrimeFieldBasics) {
    auto f7 = FieldDescriptor::prime_field(7);
    EXPECT_EQ(f7->degree(), 1u);
    auto a = from_uint(f7, 3), b = from_uint(f7, 5);
    EXPECT_TRUE((a * b).is_one());  // 15 mod 7 = 1
    EXPECT_EQ((a + b).coeffs()[0], 1u);
    EXPECT_EQ((a - b).coeffs()[0], 5u);
    EXPECT_EQ((-a).coeffs()[0], 4u);
    EXPECT_TRUE((a * a.inverse()).is_one());
    EXPECT_EQ(from_int(f7, Int(-9)).coeffs()[0], 5u);
}

TEST(Field, BuildExtensionExamples) {
    // (p=7, d=1): no modulus
    auto f7 = build_extension(7, 1);
    EXPECT_EQ(f7->degree(), 1u);
    EXPECT_TRUE(f7->modulus().empty());

    // (p=7, d=2): monic irreducible quadratic, verified by exhaustive root
    // check over the 7 base-field elements
    auto f49 = build_extension(7, 2, 3);
    ASSERT_EQ(f49->degree(), 2u);
    const auto& mod = f49->modulus();
    ASSERT_EQ(mod.size(), 3u);
    EXPECT_EQ(mod.back(), 1u);
    for (std::uint64_t x = 0; x < 7; ++x) {
        std::uint64_t val = (mod[0] + mod[1] * x + mod[2] * x * x) % 7;
        EXPECT_NE(val, 0u) << "modulus has a root at " << x;
    }

    // (p=9, d=1): composite characteristic
    EXPECT_THROW(build_extension(9, 1), CompositeCharacteristic);
    EXPECT_THROW(build_extension(3, 2), CompositeCharacteristic);  // p >= 5 contract
}

TEST(Field, BuildExtensionDeterministicInSeed) {
    auto a = build_extension(13, 4, 7);
    auto b = build_extension(13, 4, 7);
    auto c = build_extension(13, 4, 8);
    EXPECT_EQ(a->modulus(), b->modulus());
    (void)c;  // different seed may or may not differ; construction must still succeed
    EXPECT_TRUE(wordpoly::is_irreducible(c->modulus(), 13));
}

TEST(Field, DescriptorMismatch) {
    auto f7 = FieldDescriptor::prime_field(7);
    auto f11 = FieldDescriptor::prime_field(11);
    EXPECT_THROW(from_uint(f7, 1) + from_uint(f11, 1), DescriptorMismatch);
    EXPECT_THROW(zero(f7).inverse(), DivisionByZero);
}

TEST(Field, ProductDifferenceIdentity) {
    // F_{7^2} random a, b: (a+b)(a-b) = a^2 - b^2
    auto f49 = build_extension(7, 2, 0);
    Rng rng(5);
    for (int t = 0; t < 100; ++t) {
        auto a = random_element(f49, rng), b = random_element(f49, rng);
        EXPECT_EQ((a + b) * (a - b), a * a - b * b);
    }
}

TEST(Field, PowExamples) {
    auto f7 = FieldDescriptor::prime_field(7);
    EXPECT_TRUE(pow(zero(f7), 0).is_one());  // 0^0 = 1
    EXPECT_TRUE(pow(from_uint(f7, 3), 6).is_one());
    auto f2401 = build_extension(7, 4, 0);
    Rng rng(6);
    for (int t = 0; t < 100; ++t) {
        auto a = random_nonzero(f2401, rng);
        EXPECT_TRUE(pow(a, f2401->order() - 1).is_one());  // Lagrange
    }
}

TEST(Field, FrobeniusHomomorphismAndOrbit) {
    auto f49 = build_extension(7, 2, 0);
    auto f2401 = build_extension(7, 4, 0);
    Rng rng(7);
    for (int t = 0; t < 50; ++t) {
        auto a = random_element(f49, rng);
        auto b = random_element(f49, rng);
        EXPECT_EQ(frobenius_power(a * b, 1), frobenius_power(a, 1) * frobenius_power(b, 1));
        EXPECT_EQ(frobenius_power(a + b, 1), frobenius_power(a, 1) + frobenius_power(b, 1));
        EXPECT_EQ(frobenius_power(a, 2), a);  // full orbit, d = 2
    }
    // prime subfield fixed
    for (std::uint64_t c = 0; c < 7; ++c)
        EXPECT_EQ(frobenius_power(from_uint(f2401, c), 1), from_uint(f2401, c));
    // frobenius_power(a, d) = a
    for (int t = 0; t < 20; ++t) {
        auto a = random_element(f2401, rng);
        EXPECT_EQ(frobenius_power(a, 4), a);
    }
}

TEST(Field, SubfieldTest) {
    auto f2401 = build_extension(7, 4, 0);
    Rng rng(8);
    auto a = random_element(f2401, rng);
    EXPECT_TRUE(subfield_test(a, 4));                       // l = d
    EXPECT_TRUE(subfield_test(from_uint(f2401, 5), 1));     // prime-subfield constant
    EXPECT_THROW(subfield_test(a, 3), NotADivisor);         // 3 does not divide 4

    // a generator of F_{7^4}* is not in F_{7^2}: its order exceeds 7^2 - 1
    Int full = f2401->order() - 1;
    auto fac = factorize(full);
    for (int t = 0; t < 200; ++t) {
        auto g = random_nonzero(f2401, rng);
        bool generator = true;
        for (const auto& [p, e] : fac.factors)
            if (pow(g, full / p).is_one()) generator = false;
        if (!generator) continue;
        EXPECT_FALSE(subfield_test(g, 2));
        EXPECT_FALSE(subfield_test(g, 1));
        return;
    }
    FAIL() << "no generator found in 200 samples";
}

TEST(Field, SqrtRoundTrip) {
    auto f = build_extension(19, 4, 1);
    Rng rng(9);
    int residues = 0;
    for (int t = 0; t < 60; ++t) {
        auto a = random_nonzero(f, rng);
        auto s = sqrt(a * a);
        ASSERT_TRUE(s.has_value());
        EXPECT_TRUE(*s == a || *s == -a);
        auto maybe = sqrt(a);
        if (maybe) {
            ++residues;
            EXPECT_EQ(*maybe * *maybe, a);
        }
    }
    EXPECT_GT(residues, 10);  // about half should be squares
    EXPECT_TRUE(sqrt(zero(f)).has_value());
}

TEST(Field, QuadraticCharacter) {
    auto f7 = FieldDescriptor::prime_field(7);
    EXPECT_EQ(quadratic_character(from_uint(f7, 2)), 1);   // 3^2 = 2
    EXPECT_EQ(quadratic_character(from_uint(f7, 3)), -1);
    EXPECT_EQ(quadratic_character(zero(f7)), 0);
}

// Even-degree towers with binomial modulus t^d - c: conjugation replaces
// inversion under the half-Frobenius exponent.
TEST(Field, ConjugationInversionIdentity) {
    // p = 19 carries a degree-2 binomial; p = 13 = 1 mod 4 carries a
    // degree-4 one (no t^4 - c is irreducible when p = 3 mod 4: -4c is
    // always a fourth power there)
    for (auto [p, d] : {std::pair<std::uint64_t, unsigned>{19, 2}, {13, 4}, {13, 2}}) {
        auto f = build_extension(p, d, 0);
        ASSERT_TRUE(f->binomial_modulus()) << "binomial preference failed for p=" << p << " d=" << d;
        Rng rng(10 + d);
        Int e = int_pow(Int(p), d / 2) - 1;
        for (int t = 0; t < 100; ++t) {
            auto v = random_nonzero(f, rng);
            auto conj = conjugate_half(v);
            EXPECT_EQ(conj, frobenius_power(v, d / 2));
            EXPECT_EQ(pow(v.inverse(), e), pow(conj, e));
        }
    }
    // the identity is modulus-independent: the p = 19, d = 4 field has no
    // binomial modulus and conjugate_half falls back to the Frobenius
    auto f = build_extension(19, 4, 0);
    EXPECT_FALSE(f->binomial_modulus());
    Rng rng(99);
    Int e = int_pow(Int(19), 2) - 1;
    for (int t = 0; t < 50; ++t) {
        auto v = random_nonzero(f, rng);
        EXPECT_EQ(pow(v.inverse(), e), pow(conjugate_half(v), e));
    }
}

TEST(Field, CharacteristicCap) {
    EXPECT_THROW(FieldDescriptor::prime_field(Int("2305843009213693951")), TooLarge);
}

TEST(Field, RingAxiomsProperty) {
    auto f = build_extension(19, 4, 0);
    Rng rng(12);
    for (int t = 0; t < 200; ++t) {
        auto a = random_element(f, rng), b = random_element(f, rng), c = random_element(f, rng);
        EXPECT_EQ((a * b) * c, a * (b * c));
        EXPECT_EQ(a * (b + c), a * b + a * c);
        EXPECT_EQ(a + b, b + a);
        EXPECT_EQ(a * b, b * a);
        EXPECT_TRUE((a - a).is_zero());
        if (!c.is_zero()) EXPECT_EQ(a * c / c, a);
    }
}
