// hypair: pairings on genus-2 hyperelliptic curves
// Copyright 2026 The hypair Authors.
// SPDX-License-Identifier: Apache-2.0
#pragma once

#include <utility>
#include <vector>

#include "hypair/jacobian.hpp"

namespace hypair {

/// Miller loop state: the current function is f1/f2 (kept modulo the
/// evaluation context's u with y -> v(x)) and f3 = lc_infinity(f1/f2).
struct MillerAccumulator {
    Poly f1;
    Poly f2;
    FieldElement f3;
};

/// Where a function gets evaluated: the effective part of one divisor, or a
/// pair (A, B) representing the class A - B; the value is then f(eps(A))/f(eps(B)).
struct EvalTarget {
    Poly uA, vA;
    bool pair = false;
    Poly uB, vB;

    static EvalTarget at(const ReducedDivisor& d) {
        if (d.u.degree() < 1) throw InvariantViolation("evaluation divisor must have affine support");
        return {d.u, d.v, false, {}, {}};
    }
    static EvalTarget at_pair(const ReducedDivisor& a, const ReducedDivisor& b) {
        if (a.u.degree() < 1 || b.u.degree() < 1)
            throw InvariantViolation("evaluation divisors must have affine support");
        return {a.u, a.v, true, b.u, b.v};
    }
};

/// Pole order at infinity and leading coefficient (with respect to the
/// uniformizer z = x^g / y) of the curve function a(x) + b(x) y. With F
/// monic, x = z^-2 (1 + O(z)) and y = z^-(2g+1) (1 + O(z)), so a polynomial
/// part of degree n contributes pole order 2n with its own leading
/// coefficient and b y contributes 2 deg b + 2g + 1 with coefficient lc(b).
inline std::pair<int, FieldElement> infinity_order_and_lc(const LiftedCurve& lc, const Poly& a,
                                                          const Poly& b) {
    if (a.is_zero() && b.is_zero()) throw ZeroInput("the zero function has no leading coefficient");
    int ord_a = a.is_zero() ? -1 : 2 * a.degree();
    int ord_b = b.is_zero() ? -1 : 2 * b.degree() + 2 * static_cast<int>(lc.genus) + 1;
    if (ord_a > ord_b) return {ord_a, a.lc()};
    return {ord_b, b.lc()};  // orders have distinct parity, never equal
}

/// lc_infinity(f) for f = a(x) + b(x) y, checked against the expected pole
/// order (OrderMismatch otherwise).
inline FieldElement leading_coeff_at_infinity(const LiftedCurve& lc, int order, const Poly& a,
                                              const Poly& b) {
    auto [ord, coeff] = infinity_order_and_lc(lc, a, b);
    if (ord != order)
        throw OrderMismatch("function has pole order " + std::to_string(ord) + ", expected " +
                            std::to_string(order));
    return coeff;
}

namespace detail {

/// prod w(alpha) over the roots of monic u; ZeroEncountered when it vanishes.
inline FieldElement eval_nonzero(const Poly& w, const Poly& u) {
    FieldElement v = eval_at_roots(w % u, u);
    if (v.is_zero()) throw ZeroEncountered("function support meets the evaluation divisor");
    return v;
}

}  // namespace detail

struct MillerOptions {
    bool denominator_elimination = false;  // drop f2 and f3 (valid under a final exponentiation
                                           // with base-field first argument and subfield u2)
    bool assert_base_field = false;        // check loop divisors stay over the curve's base field
};

/// Miller's algorithm: the normalized Miller function f_{s,D1} evaluated at
/// the effective divisor (u2, v2), i.e.
/// Res(f1,u2) / (f3^deg(u2) Res(f2,u2)); s >= 1.
inline FieldElement miller_loop_eval(const LiftedCurve& lc, const ReducedDivisor& d1, const Int& s,
                                     const Poly& u2, const Poly& v2,
                                     const MillerOptions& opts = {}) {
    if (s < 1) throw InvariantViolation("Miller loop scalar must be positive");
    if (d1.is_identity()) throw InvariantViolation("Miller first argument must be nonzero");
    if (u2.degree() < 1) throw InvariantViolation("evaluation divisor must have affine support");
    const FieldPtr& f = lc.field;

    ReducedDivisor d = d1;
    MillerAccumulator acc{poly_one(f), poly_one(f), one(f)};
    auto absorb = [&](const CantorFunctions& step) {
        acc.f1 = acc.f1 * step.f % u2;
        acc.f2 = acc.f2 * step.g % u2;
        acc.f3 = acc.f3 * step.lc;
        if (acc.f1.is_zero() || acc.f2.is_zero())
            throw ZeroEncountered("Miller accumulator vanished on the evaluation divisor");
    };

    for (int i = static_cast<int>(bit_length(s)) - 2; i >= 0; --i) {
        acc.f1 = acc.f1 * acc.f1 % u2;
        acc.f2 = acc.f2 * acc.f2 % u2;
        acc.f3 = acc.f3 * acc.f3;
        auto dbl = cantor_with_functions(lc, d, d, u2, v2);
        d = dbl.sum;
        absorb(dbl);
        if (bit_test(s, static_cast<unsigned>(i))) {
            auto add = cantor_with_functions(lc, d, d1, u2, v2);
            d = add.sum;
            absorb(add);
        }
        if (opts.assert_base_field && d.ext_degree != 1)
            throw InvariantViolation("Miller loop left the base field");
    }

    FieldElement num = detail::eval_nonzero(acc.f1, u2);
    if (opts.denominator_elimination) return num;
    FieldElement den = pow(acc.f3, Int(u2.degree())) * detail::eval_nonzero(acc.f2, u2);
    return num / den;
}

/// f_{s,D1}^norm evaluated at a target (single divisor or pair).
inline FieldElement miller_at_target(const LiftedCurve& lc, const ReducedDivisor& d1, const Int& s,
                                     const EvalTarget& t, const MillerOptions& opts = {}) {
    FieldElement v = miller_loop_eval(lc, d1, s, t.uA, t.vA, opts);
    if (t.pair) v = v / miller_loop_eval(lc, d1, s, t.uB, t.vB, opts);
    return v;
}

/// Normalized Miller-function evaluation with an exponent, following the
/// double-and-add loop exactly: f_{s,D1}^norm(eps(D2))^d.
inline FieldElement miller_eval(const LiftedCurve& lc, const ReducedDivisor& d1,
                                const ReducedDivisor& d2, const Int& s, const Int& d) {
    return pow_signed(miller_loop_eval(lc, d1, s, d2.u, d2.v), d);
}

/// w(x) evaluated at a target.
inline FieldElement poly_at_target(const Poly& w, const EvalTarget& t) {
    FieldElement v = detail::eval_nonzero(w, t.uA);
    if (t.pair) v = v / detail::eval_nonzero(w, t.uB);
    return v;
}

/// Normalized Cantor auxiliary h_{A,B} (divisor rho(A)+rho(B)-rho(A+B))
/// evaluated at a target; also returns the reduced sum.
inline std::pair<ReducedDivisor, FieldElement> cantor_aux_at_target(const LiftedCurve& lc,
                                                                    const ReducedDivisor& a,
                                                                    const ReducedDivisor& b,
                                                                    const EvalTarget& t) {
    auto ca = cantor_with_functions(lc, a, b, t.uA, t.vA);
    FieldElement v = detail::eval_nonzero(ca.f, t.uA) /
                     (pow(ca.lc, Int(t.uA.degree())) * detail::eval_nonzero(ca.g, t.uA));
    if (t.pair) {
        auto cb = cantor_with_functions(lc, a, b, t.uB, t.vB);
        v = v * pow(cb.lc, Int(t.uB.degree())) * detail::eval_nonzero(cb.g, t.uB) /
            detail::eval_nonzero(cb.f, t.uB);
    }
    return {ca.sum, v};
}

/// Loop-length accounting: a Miller loop on s costs bit_length(s) iterations;
/// scalars 0 and +-1 need no loop.
inline unsigned loop_bits_for(const Int& s) {
    Int a = abs_int(s);
    return a <= 1 ? 0 : bit_length(a);
}

struct GeneralizedMillerResult {
    FieldElement value;
    unsigned loop_bits = 0;
};

/// f_{m,D}^norm evaluated at the target for any integer m: negative scalars
/// go through the exact inverse f_{-m,D} = 1 / (f_{m,D} u_{rho(mD)}), whose
/// divisor identity needs no final exponentiation to hold.
inline FieldElement signed_miller_at_target(const LiftedCurve& lc, const ReducedDivisor& d,
                                            const Int& m, const Int& r, const EvalTarget& t) {
    Int n = abs_int(m);
    FieldElement v = one(lc.field);
    if (n > 1 && !d.is_identity()) v = miller_at_target(lc, d, n, t);
    if (m < 0) {
        ReducedDivisor nd = scalar_mul(lc, d, mod_floor(n, r));
        if (!nd.is_identity()) v = v * poly_at_target(nd.u, t);
        v = v.inverse();
    }
    return v;
}

/// Evaluation of the generalized Miller function for the HV pairing family:
///     prod_i f_{h_i s^i, D2}(target) * prod_j g_j(target),
/// whose total divisor telescopes to h(s) D2, so the value is exactly
/// f_{r,D2}^norm(target)^(h(s)/r). Per-digit factors are decomposed as
/// f_{h_i s^i, D2} = f_{s^i,D2}^{h_i} * f_{h_i,D2}^{pi^{ij}} with the
/// f_{s^i,D2} chain built from a single Miller loop on s and Frobenius
/// powers; this requires a pi-stable target (e.g. eps(D1) for D1 in G1).
/// base_degree is the degree of F_q over F_p and j the index with
/// s = q^j mod r.
inline GeneralizedMillerResult generalized_miller_eval_at(const LiftedCurve& lc,
                                                          const ReducedDivisor& d2, const Int& s,
                                                          unsigned j, const std::vector<Int>& h,
                                                          const Int& r, const EvalTarget& t) {
    Int hs = 0;
    for (size_t i = h.size(); i-- > 0;) hs = hs * s + h[i];
    if (mod_floor(hs, r) != 0) throw BadH("h(s) is not divisible by r");

    const unsigned m = lc.base_degree;
    GeneralizedMillerResult out{one(lc.field), 0};
    ReducedDivisor partial = identity_divisor(lc);
    bool first = true;

    // chain of V_i = f_{s^i,D2}^norm(target): V_i = V_{i-1}^s * w^(q^(j(i-1)))
    FieldElement w = one(lc.field);
    bool w_ready = false;
    FieldElement V = one(lc.field);

    for (size_t i = 0; i < h.size(); ++i) {
        if (i > 0) {
            if (!w_ready) {
                w = s > 1 ? miller_at_target(lc, d2, s, t) : one(lc.field);
                w_ready = true;
            }
            V = pow_signed(V, s) * frobenius_power(w, m * j * static_cast<unsigned>(i - 1));
        }
        if (h[i] == 0) continue;

        FieldElement piece = signed_miller_at_target(lc, d2, h[i], r, t);
        out.loop_bits += loop_bits_for(h[i]);
        out.value = out.value * frobenius_power(piece, m * j * static_cast<unsigned>(i)) *
                    pow_signed(V, h[i]);

        // rho(h_i s^i D2) for the telescoping auxiliaries
        ReducedDivisor term = scalar_mul(lc, d2, mod_floor(h[i], r));
        for (unsigned step = 0; step < (j * i) % (lc.field->degree() / m); ++step)
            term = frobenius_on_divisor(lc, term);
        if (first) {
            partial = term;
            first = false;
        } else if (!term.is_identity()) {
            auto [sum, aux] = cantor_aux_at_target(lc, partial, term, t);
            out.value = out.value * aux;
            partial = sum;
        }
    }
    if (!partial.is_identity())
        throw BadH("partial sums did not telescope to zero; h(s) != 0 mod r?");
    return out;
}

}  // namespace hypair
