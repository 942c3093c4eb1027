// hypair: pairings on genus-2 hyperelliptic curves
// Copyright 2026 The hypair Authors.
// SPDX-License-Identifier: Apache-2.0
#pragma once

#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "hypair/miller.hpp"

namespace hypair {

/// One pairing instance: curve over F_q, prime subgroup order r with
/// embedding degree k, the Frobenius characteristic polynomial, and the
/// pairing field F_{q^k} (flat over F_p).
struct PairingContext {
    CurveParams curve;
    CharPoly cp;
    Int q;
    Int r;
    unsigned k = 1;
    Int final_exponent;   // (q^k - 1)/r
    FieldPtr pairing_field;
    LiftedCurve lifted;   // curve over the pairing field
    Int jac_order_k;      // #Jac(F_{q^k})
    unsigned r_val_k = 0; // e with r^e || jac_order_k
    SubfieldEmbedding base_embed;  // F_q -> F_{q^k}, shared by all lifts
};

/// HV pairing a_{s,h}: s must be congruent to a power of q mod r and
/// h(s) = 0 mod r; the pairing is non-degenerate iff h(s) != 0 mod r^2.
struct HVSpec {
    Int s;
    std::vector<Int> h;  // low-to-high coefficients
};

/// R-ate instance: T_i = a T_j + b with T_i = q^i mod r, T_j = q^j mod r and
/// the remainder convention 0 <= b < T_j.
struct RateSpec {
    unsigned i = 0;
    unsigned j = 0;
    Int a;
    Int b;
};

enum class FinalExpMode { plain, split };

struct PairingResult {
    FieldElement value;
    std::string pairing;
    unsigned loop_bits = 0;
    bool final_exp = true;
};

struct PairingOptions {
    bool denominator_elimination = false;
    bool debug_raw_tate = false;  // expose the unexponentiated Tate coset value
};

namespace detail {

/// Rank of an integer matrix reduced mod r (Gaussian elimination over F_r).
inline unsigned rank_mod(IntMatrix m, const Int& r) {
    size_t n = m.size(), rank = 0;
    for (auto& row : m)
        for (auto& x : row) x = mod_floor(x, r);
    for (size_t col = 0; col < n && rank < n; ++col) {
        size_t pivot = rank;
        while (pivot < n && m[pivot][col] == 0) ++pivot;
        if (pivot == n) continue;
        std::swap(m[rank], m[pivot]);
        Int inv = mod_inverse(m[rank][col], r);
        for (auto& x : m[rank]) x = x * inv % r;
        for (size_t i = 0; i < n; ++i) {
            if (i == rank || m[i][col] == 0) continue;
            Int factor = m[i][col];
            for (size_t j2 = 0; j2 < n; ++j2) m[i][j2] = mod_floor(m[i][j2] - factor * m[rank][j2], r);
        }
        ++rank;
    }
    return static_cast<unsigned>(rank);
}

}  // namespace detail

/// Builds and validates a pairing context. Checks: r prime, r | P(1),
/// k = ord_r(q) (so r | q^k - 1 minimally), and that Jac(F_{q^k}) has no
/// elements of order r^2 — equivalently every r-elementary divisor of
/// pi^k - 1 on the Tate module is exactly r, i.e. v_r(#Jac(F_{q^k})) equals
/// the r-corank of (M^k - I) mod r.
inline PairingContext make_pairing_context(const CurveParams& curve, const Int& r,
                                           std::uint64_t seed = 0) {
    validate_curve(curve);
    PairingContext ctx;
    ctx.curve = curve;
    ctx.q = curve.base->order();
    ctx.r = r;
    if (!is_probable_prime(r)) throw InvariantViolation("subgroup order r must be prime");
    ctx.cp = frobenius_charpoly(curve);
    if (ctx.cp.eval(1) % r != 0) throw NoTorsion("r does not divide #Jac(F_q)");
    if (ctx.q % r == 0) throw NotCoprime("r must not divide q");
    ctx.k = static_cast<unsigned>(multiplicative_order(ctx.q, r));
    if (curve.base->degree() * ctx.k > 64)
        throw TooLarge("pairing field degree " + std::to_string(curve.base->degree() * ctx.k) +
                       " exceeds the desk-scale limit 64");
    Int qk = int_pow(ctx.q, ctx.k);
    ctx.final_exponent = (qk - 1) / r;
    ctx.pairing_field = ctx.k == 1 && curve.base->degree() == 1
                            ? curve.base
                            : build_extension(Int(curve.base->p()), curve.base->degree() * ctx.k, seed);
    ctx.lifted = lift_curve(curve, ctx.pairing_field);
    ctx.jac_order_k = jacobian_order(ctx.cp, ctx.k);
    ctx.r_val_k = valuation(ctx.jac_order_k, r);

    auto mk = detail::mat_pow(detail::companion(ctx.cp), ctx.k);
    for (size_t i = 0; i < mk.size(); ++i) mk[i][i] -= 1;
    unsigned corank = static_cast<unsigned>(mk.size()) - detail::rank_mod(mk, r);
    if (corank != ctx.r_val_k)
        throw InvariantViolation("Jac(F_{q^k}) contains elements of order r^2");
    ctx.base_embed = SubfieldEmbedding(curve.base, ctx.pairing_field);
    return ctx;
}

/// Divisor over a subfield carried into the pairing field.
inline ReducedDivisor lift_divisor(const PairingContext& ctx, const SubfieldEmbedding& emb,
                                   const ReducedDivisor& d) {
    ReducedDivisor out{emb(d.u), emb(d.v), d.ext_degree};
    check_divisor(ctx.lifted, out);
    return out;
}

// --- torsion and eigenspace sampling -----------------------------------------

/// Nonzero element of Jac(F_{q^d})[r] lifted into the pairing field (d | k).
inline ReducedDivisor sample_r_torsion(const PairingContext& ctx, unsigned d, Rng& rng) {
    if (d == 0 || ctx.k % d != 0) throw NotADivisor("extension degree must divide k");
    if (d == ctx.k) return sample_r_torsion_raw(ctx.lifted, ctx.jac_order_k, ctx.r, rng);
    Int order_d = jacobian_order(ctx.cp, d);
    if (order_d % ctx.r != 0) throw NoTorsion("r does not divide #Jac(F_{q^d})");
    FieldPtr sub = d == 1 ? ctx.curve.base
                          : build_extension(Int(ctx.curve.base->p()), ctx.curve.base->degree() * d, 0);
    LiftedCurve lc_sub = lift_curve(ctx.curve, sub);
    ReducedDivisor t = sample_r_torsion_raw(lc_sub, order_d, ctx.r, rng);
    SubfieldEmbedding emb(sub, ctx.pairing_field);
    return lift_divisor(ctx, emb, t);
}

inline bool in_G1(const PairingContext& ctx, const ReducedDivisor& d) {
    if (!scalar_mul(ctx.lifted, d, ctx.r).is_identity()) return false;
    return frobenius_on_divisor(ctx.lifted, d) == d;
}

inline bool in_G2(const PairingContext& ctx, const ReducedDivisor& d) {
    if (!scalar_mul(ctx.lifted, d, ctx.r).is_identity()) return false;
    return frobenius_on_divisor(ctx.lifted, d) == scalar_mul(ctx.lifted, d, mod_floor(ctx.q, ctx.r));
}

inline ReducedDivisor project_G1(const PairingContext& ctx, const ReducedDivisor& d) {
    return project_eigenspace(ctx.lifted, d, ctx.cp, ctx.r, 1);
}

inline ReducedDivisor project_G2(const PairingContext& ctx, const ReducedDivisor& d) {
    return project_eigenspace(ctx.lifted, d, ctx.cp, ctx.r, ctx.q);
}

/// Random nonzero element of the requested Frobenius eigenspace.
inline ReducedDivisor sample_eigenspace(const PairingContext& ctx, bool g2, Rng& rng,
                                        unsigned max_retries = 64) {
    for (unsigned attempt = 0; attempt < max_retries; ++attempt) {
        ReducedDivisor t = sample_r_torsion(ctx, ctx.k, rng);
        ReducedDivisor p = g2 ? project_G2(ctx, t) : project_G1(ctx, t);
        if (p.is_identity()) continue;
        if (g2 ? in_G2(ctx, p) : in_G1(ctx, p)) return p;
    }
    throw RetriesExhausted("could not sample a nonzero eigenspace divisor");
}

inline ReducedDivisor sample_G1(const PairingContext& ctx, Rng& rng) {
    return sample_eigenspace(ctx, false, rng);
}
inline ReducedDivisor sample_G2(const PairingContext& ctx, Rng& rng) {
    return sample_eigenspace(ctx, true, rng);
}

/// Diagnostic fallback for degenerate projectors: plain rejection sampling
/// of r-torsion until the Frobenius eigenvalue test passes. Far slower than
/// the charpoly projector (the eigenspaces are a 1/r^2-ish fraction of the
/// torsion) and only meant to cross-check it.
inline ReducedDivisor sample_eigenspace_rejection(const PairingContext& ctx, bool g2, Rng& rng,
                                                  unsigned max_retries = 4096) {
    for (unsigned attempt = 0; attempt < max_retries; ++attempt) {
        ReducedDivisor t = sample_r_torsion(ctx, ctx.k, rng);
        if (g2 ? in_G2(ctx, t) : in_G1(ctx, t)) return t;
    }
    throw RetriesExhausted("rejection sampling found no eigenspace divisor");
}

/// Degenerate (single-point) divisor of order exactly r over F_{q^d}, if one
/// shows up within the bounded point scan.
inline std::optional<ReducedDivisor> find_degenerate_r_torsion(const PairingContext& ctx, unsigned d,
                                                               Rng& rng, unsigned tries = 256) {
    FieldPtr sub = d == ctx.k ? ctx.pairing_field
                   : d == 1  ? ctx.curve.base
                             : build_extension(Int(ctx.curve.base->p()), ctx.curve.base->degree() * d, 0);
    LiftedCurve lc_sub = lift_curve(ctx.curve, sub);
    SubfieldEmbedding emb(sub, ctx.pairing_field);
    for (unsigned i = 0; i < tries; ++i) {
        ReducedDivisor pd = point_divisor(lc_sub, random_point(lc_sub, rng));
        ReducedDivisor lifted{emb(pd.u), emb(pd.v), pd.ext_degree};
        if (!lifted.is_identity() && scalar_mul(ctx.lifted, lifted, ctx.r).is_identity())
            return lifted;
    }
    return std::nullopt;
}

// --- final exponentiation -----------------------------------------------------

/// v^((q^k-1)/r). Split mode (even k) first computes v^(q^(k/2)-1) through
/// the Frobenius (one conjugation and one inversion) and then raises to the
/// cofactor (q^(k/2)+1)/r; it agrees with plain mode exactly.
inline FieldElement final_exponentiation(const FieldElement& v, const PairingContext& ctx,
                                         FinalExpMode mode = FinalExpMode::plain) {
    if (v.is_zero()) throw ZeroInput("final exponentiation of zero");
    if (mode == FinalExpMode::plain) return pow(v, ctx.final_exponent);
    if (ctx.k % 2 != 0) throw BadSpec("split final exponentiation needs an even embedding degree");
    Int qh = int_pow(ctx.q, ctx.k / 2);
    if ((qh + 1) % ctx.r != 0)
        throw InvariantViolation("r does not divide q^(k/2)+1; embedding degree not minimal?");
    unsigned half = ctx.pairing_field->degree() / 2;
    FieldElement w = frobenius_power(v, half) / v;  // v^(q^(k/2)-1)
    return pow(w, (qh + 1) / ctx.r);
}

// --- evaluation plumbing ------------------------------------------------------

namespace detail {

/// Runs fn at eps(second); on support collisions it refreshes the second
/// argument's representative as the pair (rho(D + S), rho(S)) for fresh
/// random classes S, with bounded retries. When pi_stable is set, S is drawn
/// from base-field classes so the refreshed representatives stay fixed by
/// the q-power Frobenius (the Galois shortcuts in the generalized Miller
/// machinery need that).
template <typename Fn>
FieldElement eval_with_refresh(const PairingContext& ctx, const ReducedDivisor& second, Fn&& fn,
                               Rng& rng, bool pi_stable = false, unsigned retries = 16) {
    if (second.is_identity()) return one(ctx.pairing_field);
    try {
        return fn(EvalTarget::at(second));
    } catch (const ZeroEncountered&) {
    }
    LiftedCurve base_lc;
    if (pi_stable) base_lc = lift_curve(ctx.curve, ctx.curve.base);
    for (unsigned attempt = 0; attempt < retries; ++attempt) {
        ReducedDivisor s = pi_stable
                               ? lift_divisor(ctx, ctx.base_embed, random_divisor(base_lc, rng))
                               : random_divisor(ctx.lifted, rng);
        ReducedDivisor a = compose_reduce(ctx.lifted, second, s);
        if (s.is_identity() || a.is_identity()) continue;
        try {
            return fn(EvalTarget::at_pair(a, s));
        } catch (const ZeroEncountered&) {
        }
    }
    throw RetriesExhausted("could not find a collision-free representative for evaluation");
}

inline void require_r_torsion(const PairingContext& ctx, const ReducedDivisor& d, const char* who) {
    if (!scalar_mul(ctx.lifted, d, ctx.r).is_identity())
        throw InvariantViolation(std::string(who) + " must be r-torsion");
}

inline void check_den_elim_preconditions(const PairingContext& ctx, const ReducedDivisor& first,
                                         const ReducedDivisor& second) {
    if (ctx.k % 2 != 0) throw InvariantViolation("denominator elimination needs even k");
    if (first.ext_degree != 1)
        throw InvariantViolation("denominator elimination needs a base-field first argument");
    unsigned half = ctx.pairing_field->degree() / 2;
    for (const auto& c : second.u.coeffs())
        if (!subfield_test(c, half))
            throw InvariantViolation("denominator elimination needs u2 over the half-degree subfield");
}

}  // namespace detail

// --- the pairings --------------------------------------------------------------

/// Unexponentiated Tate-Lichtenbaum value f_{r,D1}^norm(eps(D2)): a coset
/// representative modulo (K*)^r, exposed for debugging only.
inline FieldElement tate_raw(const PairingContext& ctx, const ReducedDivisor& d1,
                             const ReducedDivisor& d2, Rng& rng) {
    detail::require_r_torsion(ctx, d1, "tate first argument");
    if (d1.is_identity() || d2.is_identity()) return one(ctx.pairing_field);
    return detail::eval_with_refresh(ctx, d2, [&](const EvalTarget& t) {
        return miller_at_target(ctx.lifted, d1, ctx.r, t);
    }, rng);
}

/// Modified Tate-Lichtenbaum pairing: f_{r,D1}(D2)^((q^k-1)/r) in mu_r.
inline PairingResult tate(const PairingContext& ctx, const ReducedDivisor& d1,
                          const ReducedDivisor& d2, Rng& rng, const PairingOptions& opts = {}) {
    detail::require_r_torsion(ctx, d1, "tate first argument");
    PairingResult out{one(ctx.pairing_field), "tate", loop_bits_for(ctx.r), true};
    if (d1.is_identity() || d2.is_identity()) return out;
    MillerOptions mopts;
    if (opts.denominator_elimination) {
        detail::check_den_elim_preconditions(ctx, d1, d2);
        mopts.denominator_elimination = true;
        out.value = final_exponentiation(
            miller_at_target(ctx.lifted, d1, ctx.r, EvalTarget::at(d2), mopts), ctx);
        return out;
    }
    FieldElement v = detail::eval_with_refresh(ctx, d2, [&](const EvalTarget& t) {
        return miller_at_target(ctx.lifted, d1, ctx.r, t);
    }, rng);
    out.value = final_exponentiation(v, ctx);
    return out;
}

namespace detail {

/// Weil pairing on representatives with disjoint affine support:
/// (-1)^(deg u1 deg u2 r) f^norm_{r,D1}(eps(D2)) / f^norm_{r,D2}(eps(D1)).
/// The sign is exactly what Weil reciprocity at the shared infinite place
/// demands for the value to land in mu_r.
inline FieldElement weil_direct(const PairingContext& ctx, const ReducedDivisor& d1,
                                const ReducedDivisor& d2) {
    if (poly_gcd(d1.u, d2.u).degree() > 0)
        throw ZeroEncountered("weil representatives share affine x-support");
    FieldElement num = miller_loop_eval(ctx.lifted, d1, ctx.r, d2.u, d2.v);
    FieldElement den = miller_loop_eval(ctx.lifted, d2, ctx.r, d1.u, d1.v);
    FieldElement v = num / den;
    bool flip = (d1.u.degree() & 1) && (d2.u.degree() & 1) && boost::multiprecision::bit_test(ctx.r, 0);
    return flip ? -v : v;
}

}  // namespace detail

/// Weil pairing e_r(D1, D2) = tau(D1,D2) tau(D2,D1)^{-1}: bilinear,
/// alternating, values in mu_r, no final exponentiation. Support collisions
/// are resolved by shifting D2 by a fresh r-torsion class S and using
/// bilinearity: e(D1, D2) = e(D1, D2+S) / e(D1, S).
inline PairingResult weil(const PairingContext& ctx, const ReducedDivisor& d1,
                          const ReducedDivisor& d2, Rng& rng) {
    detail::require_r_torsion(ctx, d1, "weil first argument");
    detail::require_r_torsion(ctx, d2, "weil second argument");
    PairingResult out{one(ctx.pairing_field), "weil", 2 * loop_bits_for(ctx.r), false};
    if (d1.is_identity() || d2.is_identity()) return out;
    try {
        out.value = detail::weil_direct(ctx, d1, d2);
        return out;
    } catch (const ZeroEncountered&) {
    }
    for (unsigned attempt = 0; attempt < 16; ++attempt) {
        ReducedDivisor s = sample_r_torsion(ctx, ctx.k, rng);
        ReducedDivisor a = compose_reduce(ctx.lifted, d2, s);
        if (s.is_identity() || a.is_identity()) continue;
        try {
            out.value = detail::weil_direct(ctx, d1, a) / detail::weil_direct(ctx, d1, s);
            return out;
        } catch (const ZeroEncountered&) {
        }
    }
    // a persistently entangled pair is dependent (e.g. a rank-1 torsion
    // group): e(D1, c D1) = 1 by the alternating property
    ReducedDivisor acc = identity_divisor(ctx.lifted);
    for (Int cmul = 1; cmul < ctx.r; ++cmul) {
        acc = compose_reduce(ctx.lifted, acc, d1);
        if (acc == d2) return out;  // value 1
    }
    throw RetriesExhausted("weil: no disjoint-support arrangement found");
}

/// Hyperelliptic Ate pairing: f_{q,rho(D2)}^norm(eps(D1)), no final
/// exponentiation; the raw value already lies in mu_r (checked).
inline PairingResult ate(const PairingContext& ctx, const ReducedDivisor& d2,
                         const ReducedDivisor& d1) {
    if (!in_G2(ctx, d2)) throw NotInEigenspace("ate first argument must lie in G2");
    if (!in_G1(ctx, d1)) throw NotInEigenspace("ate second argument must lie in G1");
    PairingResult out{one(ctx.pairing_field), "ate", static_cast<unsigned>(bit_length(ctx.q)), false};
    if (d2.is_identity() || d1.is_identity()) return out;
    // the reduced representative is mandatory here; evaluation refresh would
    // change the value because no final exponentiation cleans it up
    out.value = miller_at_target(ctx.lifted, d2, ctx.q, EvalTarget::at(d1));
    if (!pow(out.value, ctx.r).is_one())
        throw InvariantViolation("ate value escaped mu_r; inputs not in the stated eigenspaces?");
    return out;
}

/// Values F_t = f_{q^t,D2}^norm(target) for t <= max_t, from a single Miller
/// loop on q and Frobenius powers (pi-stable target), via the exact chain
/// f_{q^t,D2} = f_{q^{t-1},D2}^q * f_{q,D2}^{pi^{t-1}}.
inline std::vector<FieldElement> frobenius_miller_chain(const PairingContext& ctx,
                                                        const ReducedDivisor& d2, unsigned max_t,
                                                        const EvalTarget& t) {
    std::vector<FieldElement> F(max_t + 1, one(ctx.pairing_field));
    if (max_t == 0) return F;
    unsigned m = ctx.curve.base->degree();
    FieldElement w = miller_at_target(ctx.lifted, d2, ctx.q, t);
    F[1] = w;
    for (unsigned i = 2; i <= max_t; ++i)
        F[i] = pow(F[i - 1], ctx.q) * frobenius_power(w, m * (i - 1));
    return F;
}

/// Looks up j with s = q^j (mod r); BadH when s is not a power of q.
inline unsigned hv_power_index(const PairingContext& ctx, const Int& s) {
    Int sm = mod_floor(s, ctx.r);
    Int qj = 1;
    for (unsigned j = 0; j < ctx.k; ++j) {
        if (sm == qj) return j;
        qj = qj * mod_floor(ctx.q, ctx.r) % ctx.r;
    }
    throw BadH("s is not congruent to a power of q mod r");
}

inline Int hv_h_at_s(const HVSpec& spec) {
    Int hs = 0;
    for (size_t i = spec.h.size(); i-- > 0;) hs = hs * spec.s + spec.h[i];
    return hs;
}

/// HV pairing a_{s,h}(D2, D1) = f_{s,h,D2}(D1)^((q^k-1)/r); equals the
/// modified Tate pairing raised to h(s)/r, and is degenerate exactly when
/// h(s) = 0 mod r^2.
inline PairingResult hv(const PairingContext& ctx, const ReducedDivisor& d2,
                        const ReducedDivisor& d1, const HVSpec& spec, Rng& rng) {
    unsigned j = hv_power_index(ctx, spec.s);
    if (spec.s < 1) throw BadH("the loop scalar s must be positive");
    if (mod_floor(hv_h_at_s(spec), ctx.r) != 0) throw BadH("h(s) is not divisible by r");
    if (!in_G2(ctx, d2)) throw NotInEigenspace("hv first argument must lie in G2");
    if (!in_G1(ctx, d1)) throw NotInEigenspace("hv second argument must lie in G1");
    PairingResult out{one(ctx.pairing_field), "hv", 0, true};
    if (d2.is_identity() || d1.is_identity()) return out;
    unsigned bits = 0;
    FieldElement v = detail::eval_with_refresh(ctx, d1, [&](const EvalTarget& t) {
        auto res = generalized_miller_eval_at(ctx.lifted, d2, spec.s, j, spec.h, ctx.r, t);
        bits = res.loop_bits;
        return res.value;
    }, rng, /*pi_stable=*/true);
    out.loop_bits = bits;
    out.value = final_exponentiation(v, ctx);
    return out;
}

/// Ate_i pairing: one Miller loop on s = q^j mod r divided by the
/// f_{q^j,D2} chain value (the exact form of the h(x) = x - q^j HV pairing:
/// f_{s,D2} = f_{r,D2}^{(s-q^j)/r} f_{q^j,D2} as normalized functions), then
/// the final exponentiation.
inline PairingResult ate_i(const PairingContext& ctx, const ReducedDivisor& d2,
                           const ReducedDivisor& d1, unsigned j, Rng& rng) {
    if (j == 0 || j >= ctx.k) throw BadSpec("ate_i needs 0 < j < k");
    if (!in_G2(ctx, d2)) throw NotInEigenspace("ate_i first argument must lie in G2");
    if (!in_G1(ctx, d1)) throw NotInEigenspace("ate_i second argument must lie in G1");
    Int s = modpow(ctx.q, Int(j), ctx.r);
    PairingResult out{one(ctx.pairing_field), "ate_i", loop_bits_for(s), true};
    if (d2.is_identity() || d1.is_identity()) return out;
    FieldElement v = detail::eval_with_refresh(ctx, d1, [&](const EvalTarget& t) {
        FieldElement w = s > 1 ? miller_at_target(ctx.lifted, d2, s, t) : one(ctx.pairing_field);
        return w / frobenius_miller_chain(ctx, d2, j, t)[j];
    }, rng, /*pi_stable=*/true);
    out.value = final_exponentiation(v, ctx);
    return out;
}

/// Vercauteren pairing a_{[h_0..h_n]} for mr = sum h_i q^i:
/// (prod_i f_{h_i q^i, D2}(D1) * prod_j g_j(D1))^((q^k-1)/r) = tate^m, with
/// f_{h_i q^i, D2}(D1) = f_{q^i,D2}(D1)^{h_i} f_{h_i,D2}(D1)^{q^i} and the
/// g_j telescoping the partial sums of the expansion. Reported loop bits
/// follow the digit accounting sum_i log2 |h_i|.
inline PairingResult vercauteren(const PairingContext& ctx, const ReducedDivisor& d2,
                                 const ReducedDivisor& d1, const std::vector<Int>& h, const Int& m,
                                 Rng& rng) {
    if (gcd_int(mod_floor(m, ctx.r), ctx.r) != 1) throw BadSpec("m must be coprime to r");
    Int total = 0, qi = 1;
    for (size_t i = 0; i < h.size(); ++i, qi *= ctx.q) total += h[i] * qi;
    if (total != m * ctx.r) throw BadExpansion("sum h_i q^i != m r");
    if (!in_G2(ctx, d2)) throw NotInEigenspace("vercauteren first argument must lie in G2");
    if (!in_G1(ctx, d1)) throw NotInEigenspace("vercauteren second argument must lie in G1");

    PairingResult out{one(ctx.pairing_field), "vercauteren", 0, true};
    if (d2.is_identity() || d1.is_identity()) {
        for (const auto& hi : h) out.loop_bits += loop_bits_for(hi);
        return out;
    }
    unsigned bits = 0;
    FieldElement v = detail::eval_with_refresh(ctx, d1, [&](const EvalTarget& t) {
        auto res = generalized_miller_eval_at(ctx.lifted, d2, ctx.q, 1, h, ctx.r, t);
        bits = res.loop_bits;
        return res.value;
    }, rng, /*pi_stable=*/true);
    out.loop_bits = bits;
    out.value = final_exponentiation(v, ctx);
    return out;
}

struct VercauterenExpansion {
    std::vector<Int> h;  // low-to-high digits, sum h_i q^i = m r
    Int m;
    unsigned loop_bits = 0;
};

/// Bounded enumeration for a short Vercauteren expansion: signed digit
/// vectors with |h_i| <= bound and degree below k, sum h_i q^i = m r with
/// gcd(m, r) = 1, minimizing the summed Miller loop bits (deterministic
/// tie-break on the digit vector). The digit box is scanned exhaustively
/// while it fits the budget; beyond that the search falls back to
/// balanced-digit expansions of small multiples of r.
inline VercauterenExpansion shortest_vercauteren_expansion(const PairingContext& ctx,
                                                           const Int& bound = 0,
                                                           std::uint64_t box_budget = 4000000) {
    Int B = bound > 0 ? bound : ctx.q;
    unsigned n = ctx.k;  // digits h_0 .. h_{k-1}
    VercauterenExpansion best;

    auto consider = [&](const std::vector<Int>& h) {
        Int total = 0, qi = 1;
        unsigned bits = 0;
        for (unsigned i = 0; i < h.size(); ++i, qi *= ctx.q) {
            total += h[i] * qi;
            bits += loop_bits_for(h[i]);
        }
        if (total <= 0 || total % ctx.r != 0) return;
        Int m = total / ctx.r;
        if (gcd_int(mod_floor(m, ctx.r), ctx.r) != 1) return;
        if (best.m == 0 || bits < best.loop_bits ||
            (bits == best.loop_bits && h < best.h)) {
            best = {h, m, bits};
        }
    };

    Int box_size = 1;
    for (unsigned i = 0; i < n && box_size <= box_budget; ++i) box_size *= 2 * B + 1;
    if (box_size <= box_budget) {
        std::vector<Int> h(n, -B);
        while (true) {
            consider(h);
            unsigned i = 0;
            while (i < n && h[i] == B) h[i++] = -B;
            if (i == n) break;
            h[i] += 1;
        }
    } else {
        for (Int m = 1; m <= 4096; ++m) {
            std::vector<Int> h;
            Int x = m * ctx.r;
            while (x != 0) {
                Int d = mod_floor(x, ctx.q);
                if (d > ctx.q / 2) d -= ctx.q;
                h.push_back(d);
                x = (x - d) / ctx.q;
            }
            consider(h);
        }
    }
    if (best.m == 0) throw SearchExhausted("no short expansion found within the digit bound");
    while (!best.h.empty() && best.h.back() == 0) best.h.pop_back();
    return best;
}

/// Builds the R-ate coefficients for indices 0 < i < j < k by dividing
/// T_i = a T_j + b with 0 <= b < T_j.
inline RateSpec make_rate_spec(const PairingContext& ctx, unsigned i, unsigned j) {
    if (!(0 < i && i < j && j < ctx.k)) throw BadSpec("r-ate needs 0 < i < j < k");
    Int Ti = modpow(ctx.q, Int(i), ctx.r);
    Int Tj = modpow(ctx.q, Int(j), ctx.r);
    if (Tj == 0) throw BadSpec("T_j vanishes mod r");
    return {i, j, Ti / Tj, Ti % Tj};
}

inline void validate_rate_spec(const PairingContext& ctx, const RateSpec& spec) {
    if (!(0 < spec.i && spec.i < spec.j && spec.j < ctx.k)) throw BadSpec("r-ate needs 0 < i < j < k");
    Int Ti = modpow(ctx.q, Int(spec.i), ctx.r);
    Int Tj = modpow(ctx.q, Int(spec.j), ctx.r);
    if (spec.b < 0 || spec.b >= Tj || spec.a * Tj + spec.b != Ti)
        throw BadSpec("R-ate spec does not satisfy T_i = a T_j + b with 0 <= b < T_j");
}

/// R-ate pairing, product form:
/// (f_{a,D2}(D1)^{q^j} f_{b,D2}(D1) g(D1))^M with g joining rho(a T_j D2)
/// and rho(b D2). Equals the HV pairing with h(x) = a x^j - x^i + b.
inline PairingResult rate(const PairingContext& ctx, const ReducedDivisor& d2,
                          const ReducedDivisor& d1, const RateSpec& spec, Rng& rng) {
    validate_rate_spec(ctx, spec);
    if (!in_G2(ctx, d2)) throw NotInEigenspace("r-ate first argument must lie in G2");
    if (!in_G1(ctx, d1)) throw NotInEigenspace("r-ate second argument must lie in G1");
    PairingResult out{one(ctx.pairing_field), "rate",
                      loop_bits_for(spec.a) + loop_bits_for(spec.b), true};
    if (d2.is_identity() || d1.is_identity()) return out;

    Int Tj = modpow(ctx.q, Int(spec.j), ctx.r);
    unsigned base_deg = ctx.curve.base->degree();
    FieldElement v = detail::eval_with_refresh(ctx, d1, [&](const EvalTarget& t) {
        FieldElement acc = one(ctx.pairing_field);
        if (spec.a > 1) {
            FieldElement fa = miller_at_target(ctx.lifted, d2, spec.a, t);
            acc = acc * frobenius_power(fa, base_deg * spec.j);
        }
        if (spec.b > 1) acc = acc * miller_at_target(ctx.lifted, d2, spec.b, t);
        ReducedDivisor upper = scalar_mul(ctx.lifted, d2, mod_floor(spec.a * Tj, ctx.r));
        ReducedDivisor term = scalar_mul(ctx.lifted, d2, mod_floor(spec.b, ctx.r));
        if (!upper.is_identity() && !term.is_identity()) {
            auto [sum, aux] = cantor_aux_at_target(ctx.lifted, upper, term, t);
            (void)sum;
            acc = acc * aux;
        }
        // exact correction f_{q^j}^a / f_{q^i}: the product form's divisor is
        // a pi^j D2 + b D2 - rho(T_i D2); this lifts it to h(q) D2 with
        // h(x) = a x^j - x^i + b, so the value is t^{h(q)/r} on the nose.
        auto F = frobenius_miller_chain(ctx, d2, spec.j, t);
        return acc * pow_signed(F[spec.j], spec.a) / F[spec.i];
    }, rng, /*pi_stable=*/true);
    out.value = final_exponentiation(v, ctx);
    return out;
}

/// R-ate ratio form (f_{T_i,D2}(D1) / f_{T_j,D2}(D1)^a)^M; agrees with the
/// product form exactly.
inline PairingResult rate_ratio_form(const PairingContext& ctx, const ReducedDivisor& d2,
                                     const ReducedDivisor& d1, const RateSpec& spec, Rng& rng) {
    validate_rate_spec(ctx, spec);
    if (!in_G2(ctx, d2)) throw NotInEigenspace("r-ate first argument must lie in G2");
    if (!in_G1(ctx, d1)) throw NotInEigenspace("r-ate second argument must lie in G1");
    Int Ti = modpow(ctx.q, Int(spec.i), ctx.r);
    Int Tj = modpow(ctx.q, Int(spec.j), ctx.r);
    PairingResult out{one(ctx.pairing_field), "rate_ratio",
                      loop_bits_for(Ti) + loop_bits_for(Tj), true};
    if (d2.is_identity() || d1.is_identity()) return out;
    FieldElement v = detail::eval_with_refresh(ctx, d1, [&](const EvalTarget& t) {
        FieldElement num = Ti > 1 ? miller_at_target(ctx.lifted, d2, Ti, t) : one(ctx.pairing_field);
        FieldElement den = Tj > 1 ? miller_at_target(ctx.lifted, d2, Tj, t) : one(ctx.pairing_field);
        // same exact correction as the product form (see rate above)
        auto F = frobenius_miller_chain(ctx, d2, spec.j, t);
        return num / pow_signed(den, spec.a) * pow_signed(F[spec.j], spec.a) / F[spec.i];
    }, rng, /*pi_stable=*/true);
    out.value = final_exponentiation(v, ctx);
    return out;
}

/// Twisted Ate pairing f_{q^e, D1}(D2) with e = k/gcd(k, twist degree),
/// exponentiated to (q^k-1)/r. The whole Miller loop runs over the base
/// field since D1 is Frobenius-fixed (asserted).
inline PairingResult twisted_ate(const PairingContext& ctx, const ReducedDivisor& d1,
                                 const ReducedDivisor& d2, unsigned e, Rng& rng,
                                 const PairingOptions& opts = {}) {
    if (e == 0 || ctx.k % e != 0) throw BadTwistExponent("twist exponent e must divide k");
    if (!in_G1(ctx, d1)) throw NotInEigenspace("twisted-ate first argument must lie in G1");
    if (!in_G2(ctx, d2)) throw NotInEigenspace("twisted-ate second argument must lie in G2");
    Int s = int_pow(ctx.q, e);
    PairingResult out{one(ctx.pairing_field), "twisted_ate", static_cast<unsigned>(bit_length(s)), true};
    if (d1.is_identity() || d2.is_identity()) return out;
    MillerOptions mopts;
    mopts.assert_base_field = true;
    if (opts.denominator_elimination) {
        detail::check_den_elim_preconditions(ctx, d1, d2);
        mopts.denominator_elimination = true;
        out.value = final_exponentiation(
            miller_at_target(ctx.lifted, d1, s, EvalTarget::at(d2), mopts), ctx);
        return out;
    }
    FieldElement v = detail::eval_with_refresh(ctx, d2, [&](const EvalTarget& t) {
        return miller_at_target(ctx.lifted, d1, s, t, mopts);
    }, rng);
    out.value = final_exponentiation(v, ctx);
    return out;
}

// --- dispatch -------------------------------------------------------------------

struct DispatchParams {
    std::optional<HVSpec> hv_spec;
    std::optional<RateSpec> rate_spec;
    std::vector<Int> vercauteren_h;
    Int vercauteren_m = 0;
    unsigned ate_i_j = 1;
    unsigned twist_e = 0;
    PairingOptions options;
};

/// Routes a pairing by name. D_a and D_b are the first and second pairing
/// arguments in each pairing's own convention (G2 x G1 for the Ate family,
/// G1 x G2 for the twisted Ate).
inline PairingResult pairing_dispatch(const PairingContext& ctx, const std::string& name,
                                      const ReducedDivisor& da, const ReducedDivisor& db,
                                      const DispatchParams& params, Rng& rng) {
    if (name == "tate") {
        if (params.options.debug_raw_tate) {
            PairingResult out{tate_raw(ctx, da, db, rng), "tate_raw", loop_bits_for(ctx.r), false};
            return out;
        }
        return tate(ctx, da, db, rng, params.options);
    }
    if (name == "weil") return weil(ctx, da, db, rng);
    if (name == "ate") return ate(ctx, da, db);
    if (name == "hv") {
        if (!params.hv_spec) throw BadSpec("hv requires --hv-s and --hv-h");
        return hv(ctx, da, db, *params.hv_spec, rng);
    }
    if (name == "ate_i") return ate_i(ctx, da, db, params.ate_i_j, rng);
    if (name == "vercauteren") {
        if (params.vercauteren_h.empty()) throw BadSpec("vercauteren requires an h expansion");
        return vercauteren(ctx, da, db, params.vercauteren_h, params.vercauteren_m, rng);
    }
    if (name == "rate") {
        RateSpec spec = params.rate_spec ? *params.rate_spec : make_rate_spec(ctx, 1, 2);
        return rate(ctx, da, db, spec, rng);
    }
    if (name == "twisted_ate") {
        unsigned e = params.twist_e != 0 ? params.twist_e : (ctx.k % 2 == 0 ? ctx.k / 2 : ctx.k);
        return twisted_ate(ctx, da, db, e, rng, params.options);
    }
    throw UnknownPairing("unknown pairing: " + name);
}

}  // namespace hypair
