// hypair: pairings on genus-2 hyperelliptic curves
// Copyright 2026 The hypair Authors.
// SPDX-License-Identifier: Apache-2.0
#pragma once

#include <numeric>
#include <tuple>
#include <utility>
#include <vector>

#include "hypair/curve.hpp"

namespace hypair {

/// Divisor class in Mumford representation (u monic, deg v < deg u <= g,
/// u | F - vH - v^2). ext_degree records the field of definition as an
/// extension of the curve's base field; coefficients live in whatever ambient
/// field the polynomials carry.
struct ReducedDivisor {
    Poly u;
    Poly v;
    unsigned ext_degree = 1;

    bool is_identity() const { return u.degree() == 0; }

    bool operator==(const ReducedDivisor& o) const { return u == o.u && v == o.v; }
    bool operator!=(const ReducedDivisor& o) const { return !(*this == o); }
};

inline ReducedDivisor identity_divisor(const LiftedCurve& lc) {
    return {poly_one(lc.field), poly_zero(lc.field), 1};
}

/// Minimal l (dividing ambient/base) with all coefficients of u, v fixed by
/// the p^(base_degree * l) power map: the lcm of the q-Frobenius orbit
/// lengths of the coefficients.
inline unsigned compute_ext_degree(const LiftedCurve& lc, const Poly& u, const Poly& v) {
    unsigned rel = lc.field->degree() / lc.base_degree;
    unsigned l = 1;
    for (const Poly* poly : {&u, &v}) {
        for (const auto& c : poly->coeffs()) {
            FieldElement b = frobenius_iterate(lc, c, lc.base_degree);
            unsigned period = 1;
            while (b != c) {
                b = frobenius_iterate(lc, b, lc.base_degree);
                if (++period > rel)
                    throw InvariantViolation("divisor coefficient escapes every subfield orbit");
            }
            l = std::lcm(l, period);
        }
    }
    return l;
}

/// Validates the Mumford invariants; throws InvariantViolation.
inline void check_divisor(const LiftedCurve& lc, const ReducedDivisor& d) {
    if (!same_field(d.u.field(), lc.field) || !same_field(d.v.field(), lc.field))
        throw DescriptorMismatch("divisor is not defined over the expected ambient field");
    if (!d.u.is_monic()) throw InvariantViolation("u must be monic");
    if (d.u.degree() > static_cast<int>(lc.genus))
        throw InvariantViolation("deg u must be at most g");
    if (!d.v.is_zero() && d.v.degree() >= d.u.degree())
        throw InvariantViolation("deg v must be less than deg u");
    Poly rem = (lc.F - d.v * lc.H - d.v * d.v) % d.u;
    if (!rem.is_zero()) throw InvariantViolation("u does not divide F - vH - v^2");
}

inline ReducedDivisor make_divisor(const LiftedCurve& lc, Poly u, Poly v) {
    ReducedDivisor d{std::move(u), std::move(v), 1};
    check_divisor(lc, d);
    d.ext_degree = compute_ext_degree(lc, d.u, d.v);
    return d;
}

/// Degree-one divisor (P) - (infinity).
inline ReducedDivisor point_divisor(const LiftedCurve& lc, const AffinePoint& pt) {
    if (!on_curve(lc, pt)) throw PointNotOnCurve("divisor support must lie on the curve");
    return make_divisor(lc, Poly(lc.field, {-pt.x, one(lc.field)}), poly_const(lc.field, pt.y));
}

inline ReducedDivisor negate(const LiftedCurve& lc, const ReducedDivisor& d) {
    if (d.is_identity()) return d;
    return {d.u, (-lc.H - d.v) % d.u, d.ext_degree};
}

/// True iff the divisor is degenerate: fewer than g affine points but not zero.
inline bool is_degenerate(const LiftedCurve& lc, const ReducedDivisor& d) {
    return d.u.degree() > 0 && d.u.degree() < static_cast<int>(lc.genus);
}

/// Mumford pair with the degree bound dropped: u monic and
/// u | F - vH - v^2, but deg u may exceed g. Stage 1 of Cantor's algorithm
/// produces these; stage 2 reduces them.
struct SemiReducedDivisor {
    Poly u;
    Poly v;
};

inline void check_semi_reduced(const LiftedCurve& lc, const SemiReducedDivisor& d) {
    if (!d.u.is_monic()) throw InvariantViolation("u must be monic");
    if (!d.v.is_zero() && d.v.degree() >= d.u.degree())
        throw InvariantViolation("deg v must be less than deg u");
    if (!((lc.F - d.v * lc.H - d.v * d.v) % d.u).is_zero())
        throw InvariantViolation("u does not divide F - vH - v^2");
}

namespace detail {

struct CompositionState {
    SemiReducedDivisor semi;  // ~ D1 + D2
    Poly d;                   // gcd pulled out by stage 1 (monic)
};

/// Cantor stage 1: semi-reduced (U, V) ~ D1 + D2, with
/// D1 + D2 - (U,V)-divisor = div(d).
inline CompositionState cantor_stage1(const LiftedCurve& lc, const ReducedDivisor& a,
                                      const ReducedDivisor& b) {
    auto [d1, e1, e2] = poly_xgcd(a.u, b.u);
    Poly w = a.v + b.v + lc.H;
    auto [d, c1, c2] = poly_xgcd(d1, w);
    Poly s1 = c1 * e1, s2 = c1 * e2, s3 = c2;
    Poly U = (a.u * b.u).divmod(d * d).first;
    Poly num = s1 * a.u * b.v + s2 * b.u * a.v + s3 * (a.v * b.v + lc.F);
    auto [V0, rem] = num.divmod(d);
    if (!rem.is_zero()) throw InvariantViolation("stage-1 numerator is not divisible by the gcd");
    Poly V = V0 % U;
    return {{std::move(U), std::move(V)}, std::move(d)};
}

/// One reduction step. Returns the monic U' together with its pre-monic
/// leading coefficient (needed only by callers that track functions).
inline std::tuple<Poly, Poly> cantor_reduce_step(const LiftedCurve& lc, const Poly& U, const Poly& V) {
    auto [Unext, rem] = (lc.F - V * lc.H - V * V).divmod(U);
    if (!rem.is_zero()) throw InvariantViolation("reduction step: U does not divide F - VH - V^2");
    Poly Umon = Unext.make_monic();
    Poly Vnext = (-lc.H - V) % Umon;
    if (Umon.degree() >= U.degree())
        throw InvariantViolation("reduction step failed to decrease deg u");
    return {std::move(Umon), std::move(Vnext)};
}

}  // namespace detail

/// Cantor's algorithm: the unique reduced representative of D1 + D2.
inline ReducedDivisor compose_reduce(const LiftedCurve& lc, const ReducedDivisor& a,
                                     const ReducedDivisor& b) {
    check_divisor(lc, a);
    check_divisor(lc, b);
    auto st = detail::cantor_stage1(lc, a, b);
    Poly U = std::move(st.semi.u), V = std::move(st.semi.v);
    while (U.degree() > static_cast<int>(lc.genus)) {
        auto [Un, Vn] = detail::cantor_reduce_step(lc, U, V);
        U = std::move(Un);
        V = std::move(Vn);
    }
    ReducedDivisor out{U.make_monic(), std::move(V), 1};
    out.ext_degree = compute_ext_degree(lc, out.u, out.v);
    return out;
}

/// Result of the function-tracking Cantor variant: the reduced sum plus the
/// auxiliary function h_{D1,D2} = f/g with divisor rho(D1)+rho(D2)-rho(D1+D2),
/// maintained modulo the evaluation context's u with y -> v(x), and the
/// accumulated leading coefficient at infinity of f/g.
struct CantorFunctions {
    ReducedDivisor sum;
    Poly f;          // numerator mod u_eval
    Poly g;          // denominator mod u_eval
    FieldElement lc; // lc_infinity(h_{D1,D2})
};

/// Function-tracking Cantor. The evaluation context (u, v) caps the degrees
/// of f and g; a zero accumulator means the context shares support with the
/// function's zeros or poles and the caller must arrange fresh
/// representatives (ZeroEncountered).
inline CantorFunctions cantor_with_functions(const LiftedCurve& lc, const ReducedDivisor& a,
                                             const ReducedDivisor& b, const Poly& u_eval,
                                             const Poly& v_eval) {
    check_divisor(lc, a);
    check_divisor(lc, b);
    const FieldPtr& Fq = lc.field;
    auto st = detail::cantor_stage1(lc, a, b);
    Poly U = std::move(st.semi.u), V = std::move(st.semi.v);

    Poly f = st.d % u_eval;
    Poly g = poly_one(Fq);
    FieldElement lcoeff = one(Fq);
    if (f.is_zero()) throw ZeroEncountered("evaluation context meets the cancelled support");

    while (U.degree() > static_cast<int>(lc.genus)) {
        auto [Unext, rem] = (lc.F - V * lc.H - V * V).divmod(U);
        if (!rem.is_zero()) throw InvariantViolation("reduction step: U does not divide F - VH - V^2");
        Poly Umon = Unext.make_monic();
        Poly Vnext = (-lc.H - V) % Umon;
        if (Umon.degree() >= U.degree())
            throw InvariantViolation("reduction step failed to decrease deg u");

        // step function (y - V(x)) / U'(x), evaluated with y -> v_eval(x);
        // U' enters monically, so lc_infinity picks up -leadingcoeff(V)
        // exactly when deg V exceeds g (pole order 2 deg V beats 2g+1).
        f = f * ((v_eval - V) % u_eval) % u_eval;
        g = g * (Umon % u_eval) % u_eval;
        if (V.degree() > static_cast<int>(lc.genus)) lcoeff = lcoeff * (-V.lc());
        if (f.is_zero() || g.is_zero())
            throw ZeroEncountered("evaluation context meets the step function's support");

        U = std::move(Umon);
        V = std::move(Vnext);
    }
    ReducedDivisor sum{U.make_monic(), std::move(V), 1};
    sum.ext_degree = compute_ext_degree(lc, sum.u, sum.v);
    return {std::move(sum), std::move(f), std::move(g), std::move(lcoeff)};
}

/// n-fold sum by double-and-add; negative n through the involution.
inline ReducedDivisor scalar_mul(const LiftedCurve& lc, const ReducedDivisor& d, const Int& n) {
    if (n == 0) return identity_divisor(lc);
    if (n < 0) return scalar_mul(lc, negate(lc, d), -n);
    ReducedDivisor acc = identity_divisor(lc);
    for (int i = static_cast<int>(bit_length(n)) - 1; i >= 0; --i) {
        acc = compose_reduce(lc, acc, acc);
        if (bit_test(n, static_cast<unsigned>(i))) acc = compose_reduce(lc, acc, d);
    }
    return acc;
}

/// Coefficient-wise q-power Frobenius; Galois commutes with reduction, so the
/// image is the reduced representative of the conjugate class.
inline ReducedDivisor frobenius_on_divisor(const LiftedCurve& lc, const ReducedDivisor& d) {
    auto apply = [&](const Poly& p) {
        std::vector<FieldElement> c;
        c.reserve(p.coeffs().size());
        for (const auto& x : p.coeffs()) c.push_back(frobenius_iterate(lc, x, lc.base_degree));
        return Poly(lc.field, std::move(c));
    };
    return {apply(d.u), apply(d.v), d.ext_degree};
}

/// Random divisor class: compose two random points (the class of
/// (P1) + (P2) - 2(infinity)).
inline ReducedDivisor random_divisor(const LiftedCurve& lc, Rng& rng) {
    AffinePoint p1 = random_point(lc, rng);
    AffinePoint p2 = random_point(lc, rng);
    return compose_reduce(lc, point_divisor(lc, p1), point_divisor(lc, p2));
}

/// Exact order of a divisor given (a multiple of) the group order.
inline Int divisor_order(const LiftedCurve& lc, const ReducedDivisor& d, const Int& group_order) {
    Int order = group_order;
    auto fac = factorize(group_order);
    if (!fac.complete) throw TooLarge("cannot factor the group order at desk scale");
    for (const auto& [p, e] : fac.factors)
        for (unsigned i = 0; i < e; ++i) {
            if (!scalar_mul(lc, d, order / p).is_identity()) break;
            order /= p;
        }
    return order;
}

/// Uniformly-sampled-in-practice nonzero element of Jac(F)[r]: random class,
/// cofactor multiply, then r-power adjustment; retries until nonzero.
inline ReducedDivisor sample_r_torsion_raw(const LiftedCurve& lc, const Int& group_order,
                                           const Int& r, Rng& rng, unsigned max_retries = 64) {
    if (group_order % r != 0) throw NoTorsion("r does not divide the group order");
    unsigned e = 0;
    Int cof = group_order;
    while (cof % r == 0) {
        cof /= r;
        ++e;
    }
    for (unsigned attempt = 0; attempt < max_retries; ++attempt) {
        ReducedDivisor d = random_divisor(lc, rng);
        d = scalar_mul(lc, d, cof);
        for (unsigned i = 0; i + 1 < e; ++i) {
            ReducedDivisor next = scalar_mul(lc, d, r);
            if (next.is_identity()) break;
            d = next;
        }
        if (!d.is_identity() && scalar_mul(lc, d, r).is_identity()) return d;
    }
    throw RetriesExhausted("could not sample a nonzero r-torsion divisor");
}

/// Projection of an r-torsion divisor onto the Frobenius eigenspace of
/// lambda, via Q(pi) with Q(x) = P(x)/(x - lambda) mod r. The result may be
/// the identity; callers resample.
inline ReducedDivisor project_eigenspace(const LiftedCurve& lc, const ReducedDivisor& d,
                                         const CharPoly& cp, const Int& r, const Int& lambda) {
    std::vector<Int> pm;  // P mod r, low to high
    pm.reserve(cp.c.size());
    for (const auto& c : cp.c) pm.push_back(mod_floor(c, r));
    Int lam = mod_floor(lambda, r);

    // synthetic division by (x - lam) over Z/r
    size_t n = pm.size() - 1;
    std::vector<Int> Q(n, 0);
    Int carry = pm[n];
    for (size_t i = n; i-- > 0;) {
        Q[i] = carry;
        carry = mod_floor(pm[i] + carry * lam, r);
    }
    if (carry != 0) throw InvariantViolation("lambda is not a root of P mod r");
    Int at_lambda = 0;
    for (size_t i = Q.size(); i-- > 0;) at_lambda = mod_floor(at_lambda * lam + Q[i], r);
    if (at_lambda == 0)
        throw ProjectionDegenerate("lambda is a multiple root of P mod r; projector is degenerate");

    ReducedDivisor acc = identity_divisor(lc);
    ReducedDivisor power = d;
    for (size_t i = 0; i < Q.size(); ++i) {
        if (Q[i] != 0) acc = compose_reduce(lc, acc, scalar_mul(lc, power, Q[i]));
        if (i + 1 < Q.size()) power = frobenius_on_divisor(lc, power);
    }
    return acc;
}

}  // namespace hypair
