// hypair: pairings on genus-2 hyperelliptic curves
// Copyright 2026 The hypair Authors.
// SPDX-License-Identifier: Apache-2.0
#pragma once

#include <functional>
#include <ostream>
#include <string>
#include <vector>

#include "hypair/pairings.hpp"

namespace hypair {

struct VerifyOptions {
    unsigned trials = 20;
    std::uint64_t seed = 1;
};

struct VerifyReport {
    unsigned passed = 0;
    unsigned failed = 0;
    std::vector<std::string> lines;

    void check(const std::string& name, bool ok) {
        (ok ? passed : failed)++;
        lines.push_back(std::string(ok ? "PASS " : "FAIL ") + name);
    }
    void skip(const std::string& name) { lines.push_back("SKIP " + name); }
    bool all_passed() const { return failed == 0; }
};

/// Picks an ate_i index whose loop scalar is not exactly q^j (so the pairing
/// is non-degenerate); falls back to 1.
inline unsigned default_ate_i_index(const PairingContext& ctx) {
    Int qj = ctx.q;
    for (unsigned j = 1; j < ctx.k; ++j, qj *= ctx.q)
        if (qj > ctx.r) return j;
    return 1;
}

/// Picks R-ate indices with a non-degenerate h (h(q)/r != 0 mod r).
inline RateSpec default_rate_spec(const PairingContext& ctx) {
    for (unsigned i = 1; i + 1 < ctx.k; ++i)
        for (unsigned j = i + 1; j < ctx.k; ++j) {
            RateSpec spec = make_rate_spec(ctx, i, j);
            Int hq = spec.a * int_pow(ctx.q, j) - int_pow(ctx.q, i) + spec.b;
            if (mod_floor(hq, ctx.r) == 0 && mod_floor(hq / ctx.r, ctx.r) != 0) return spec;
        }
    return make_rate_spec(ctx, 1, 2);
}

/// Random HV spec with h(s) = 0 mod r; non-degenerate unless degenerate is
/// requested (then h(s) = 0 mod r^2).
inline HVSpec random_hv_spec(const PairingContext& ctx, Rng& rng, bool degenerate = false) {
    while (true) {
        unsigned j = 1 + static_cast<unsigned>(rng() % (ctx.k > 1 ? ctx.k - 1 : 1));
        Int s = modpow(ctx.q, Int(j), ctx.r) + Int(rng() % 3) * ctx.r;
        unsigned n = 2 + static_cast<unsigned>(rng() % 3);
        std::vector<Int> h(n + 1, 0);
        Int partial = 0, spow = 1;
        for (size_t i = 1; i < h.size(); ++i) {
            h[i] = Int(rng() % 9) - 4;
            spow = spow * s;
            partial += h[i] * spow;
        }
        Int modulus = degenerate ? ctx.r * ctx.r : ctx.r;
        h[0] = mod_floor(-partial, modulus);
        Int hs = h[0] + partial;
        bool deg = mod_floor(hs, ctx.r * ctx.r) == 0;
        if (deg != degenerate) continue;
        if (h[0] == 0 && partial == 0) continue;
        return {s, h};
    }
}

inline Int hv_exponent(const PairingContext& ctx, const HVSpec& spec) {
    return mod_floor(hv_h_at_s(spec) / ctx.r, ctx.r);
}

/// The bilinearity / framework-identity suite for one context. Every check
/// is an exact mu_r equality.
inline VerifyReport run_verification(const PairingContext& ctx, const VerifyOptions& opts,
                                     std::ostream* out = nullptr) {
    VerifyReport rep;
    Rng rng(opts.seed);
    auto emit = [&](const std::string& name, bool ok) {
        rep.check(name, ok);
        if (out) (*out) << rep.lines.back() << "\n";
    };
    const Int scalars[] = {2, 3, 5, ctx.r - 1};
    auto emit_skip = [&](const std::string& name) {
        rep.skip(name);
        if (out) (*out) << rep.lines.back() << "\n";
    };

    // bilinearity per pairing, opts.trials trials per argument
    DispatchParams params;
    params.ate_i_j = default_ate_i_index(ctx);
    if (ctx.k >= 3) params.rate_spec = default_rate_spec(ctx);
    params.twist_e = ctx.k % 2 == 0 ? ctx.k / 2 : ctx.k;
    {
        Int m = 2;
        Int mr = m * ctx.r;
        std::vector<Int> digits;
        for (Int x = mr; x > 0; x /= ctx.q) digits.push_back(x % ctx.q);
        params.vercauteren_h = digits;
        params.vercauteren_m = m;
    }

    for (const std::string name :
         {"tate", "weil", "ate", "ate_i", "hv", "vercauteren", "rate", "twisted_ate"}) {
        bool eigenspace_pairing = name != "tate" && name != "weil";
        if ((name == "rate" && ctx.k < 3) || (eigenspace_pairing && ctx.k < 2)) {
            // k = 1 leaves no distinct Frobenius eigenspaces to sample from
            emit_skip("bilinearity: " + name + " (embedding degree too small)");
            continue;
        }
        bool first_ok = true, second_ok = true, order_ok = true;
        unsigned resamples = 0;
        for (unsigned t = 0; t < opts.trials; ++t) {
            if (name == "hv") params.hv_spec = random_hv_spec(ctx, rng);
            ReducedDivisor da, db;
            if (name == "tate") {
                da = sample_r_torsion(ctx, ctx.k, rng);
                db = random_divisor(ctx.lifted, rng);
            } else if (name == "weil") {
                da = sample_r_torsion(ctx, ctx.k, rng);
                db = sample_r_torsion(ctx, ctx.k, rng);
            } else if (name == "twisted_ate") {
                da = sample_G1(ctx, rng);
                db = sample_G2(ctx, rng);
            } else {
                da = sample_G2(ctx, rng);
                db = sample_G1(ctx, rng);
            }
            const Int& a = scalars[t % 4];
            try {
                FieldElement base = pairing_dispatch(ctx, name, da, db, params, rng).value;
                if (!pow(base, ctx.r).is_one()) order_ok = false;
                FieldElement lhs1 =
                    pairing_dispatch(ctx, name, scalar_mul(ctx.lifted, da, a), db, params, rng).value;
                if (lhs1 != pow(base, a)) first_ok = false;
                FieldElement lhs2 =
                    pairing_dispatch(ctx, name, da, scalar_mul(ctx.lifted, db, a), params, rng).value;
                if (lhs2 != pow(base, a)) second_ok = false;
            } catch (const ZeroEncountered&) {
                if (++resamples > 200) { order_ok = false; break; }
                --t;  // resample the inputs (ate has no internal refresh)
                continue;
            }
        }
        emit("bilinearity first argument: " + name, first_ok);
        emit("bilinearity second argument: " + name, second_ok);
        emit("values lie in mu_r: " + name, order_ok);
    }

    // framework identities
    if (ctx.k >= 2) {
        bool hv_ok = true, hv_deg_ok = true, ate_ok = true, atetate_ok = true;
        bool rate_ok = true, verc_ok = true, atei_ok = true, weil_ok = true;
        unsigned resamples = 0;
        for (unsigned t = 0; t < opts.trials; ++t) {
            ReducedDivisor d2 = sample_G2(ctx, rng);
            ReducedDivisor d1 = sample_G1(ctx, rng);
            FieldElement tv;
            try {
                tv = tate(ctx, d2, d1, rng).value;

                HVSpec spec = random_hv_spec(ctx, rng);
                if (hv(ctx, d2, d1, spec, rng).value != pow(tv, hv_exponent(ctx, spec)))
                    hv_ok = false;
                HVSpec dspec = random_hv_spec(ctx, rng, true);
                if (!hv(ctx, d2, d1, dspec, rng).value.is_one()) hv_deg_ok = false;

                FieldElement av = ate(ctx, d2, d1).value;
                if (!pow(av, ctx.r).is_one()) ate_ok = false;
                Int e = mod_floor(Int(ctx.k) * modpow(ctx.q, Int(ctx.k - 1), ctx.r), ctx.r);
                if (tv != pow(av, e)) atetate_ok = false;

                if (ctx.k >= 3) {
                    RateSpec rs = *params.rate_spec;
                    FieldElement rv = rate(ctx, d2, d1, rs, rng).value;
                    if (rv != rate_ratio_form(ctx, d2, d1, rs, rng).value) rate_ok = false;
                    std::vector<Int> h(rs.j + 1, 0);
                    h[rs.j] = rs.a;
                    h[rs.i] -= 1;
                    h[0] += rs.b;
                    if (rv != hv(ctx, d2, d1, HVSpec{ctx.q, h}, rng).value) rate_ok = false;
                }

                if (vercauteren(ctx, d2, d1, params.vercauteren_h, params.vercauteren_m, rng)
                        .value != pow(tv, params.vercauteren_m))
                    verc_ok = false;

                unsigned j = params.ate_i_j;
                Int s = modpow(ctx.q, Int(j), ctx.r);
                std::vector<Int> hj{-int_pow(ctx.q, j), 1};  // h(x) = x - q^j
                if (ate_i(ctx, d2, d1, j, rng).value !=
                    hv(ctx, d2, d1, HVSpec{s, hj}, rng).value)
                    atei_ok = false;

                ReducedDivisor w1 = sample_r_torsion(ctx, ctx.k, rng);
                ReducedDivisor w2 = sample_r_torsion(ctx, ctx.k, rng);
                FieldElement wv = weil(ctx, w1, w2, rng).value;
                if (!(weil(ctx, w2, w1, rng).value * wv).is_one()) weil_ok = false;
                if (!weil(ctx, w1, w1, rng).value.is_one()) weil_ok = false;
            } catch (const ZeroEncountered&) {
                if (++resamples > 200) { hv_ok = false; break; }
                --t;
                continue;
            }
        }
        emit("hv equals tate^(h(s)/r)", hv_ok);
        emit("hv degenerate when h(s) = 0 mod r^2", hv_deg_ok);
        emit("raw ate lies in mu_r without final exponentiation", ate_ok);
        emit("tate equals ate^(k q^(k-1))", atetate_ok);
        if (ctx.k >= 3)
            emit("rate: product form = ratio form = hv form", rate_ok);
        else
            emit_skip("rate routes (embedding degree too small)");
        emit("vercauteren equals tate^m", verc_ok);
        emit("ate_i equals hv with h = x - q^j", atei_ok);
        emit("weil is alternating and antisymmetric", weil_ok);
    }

    // final exponentiation modes
    if (ctx.k % 2 == 0) {
        bool ok = true;
        for (unsigned t = 0; t < 100; ++t) {
            FieldElement v = random_nonzero(ctx.pairing_field, rng);
            if (final_exponentiation(v, ctx, FinalExpMode::plain) !=
                final_exponentiation(v, ctx, FinalExpMode::split))
                ok = false;
        }
        emit("split final exponentiation agrees with plain", ok);
    }

    // non-degeneracy at desk scale
    {
        ReducedDivisor d2 = ctx.k >= 2 ? sample_G2(ctx, rng) : sample_r_torsion(ctx, ctx.k, rng);
        bool hit = false;
        for (unsigned t = 0; t < 20 && !hit; ++t) {
            ReducedDivisor d1 =
                ctx.k >= 2 ? sample_G1(ctx, rng) : sample_r_torsion(ctx, ctx.k, rng);
            try {
                if (!tate(ctx, d2, d1, rng).value.is_one()) hit = true;
            } catch (const ZeroEncountered&) {
            }
        }
        emit("non-degeneracy: nontrivial value within 20 samples", hit);
    }

    return rep;
}

}  // namespace hypair
