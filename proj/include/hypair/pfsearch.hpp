// hypair: pairings on genus-2 hyperelliptic curves
// Copyright 2026 The hypair Authors.
// SPDX-License-Identifier: Apache-2.0
#pragma once

#include <cmath>
#include <functional>
#include <string>
#include <vector>

#include "hypair/curve.hpp"

namespace hypair {

/// Exhaustive pairing-friendly parameter scan over H = 0 monic quintics.
struct SearchConfig {
    Int p_min = 5;
    Int p_max = 13;
    unsigned genus = 2;  // the scan enumerates genus-2 quintic models only
    unsigned max_k = 20;
    unsigned min_r_bits = 2;
    bool sample_all = true;        // enumerate every F (or a seeded random subset)
    std::uint64_t sample_count = 1000;
    bool dedupe = false;           // emit one curve per affine-substitution orbit
    std::uint64_t seed = 0;
    std::uint64_t trial_division_budget = 1000000;
    std::uint64_t rho_iteration_budget = 10000;
};

struct CurveRecord {
    CurveParams curve;
    std::vector<Int> charpoly;  // low-to-high
    Int jac_order;              // P(1)
    Int r;                      // chosen prime subgroup order
    unsigned k = 0;             // embedding degree of Jac w.r.t. r
    double rho = 0.0;
    Classification cls = Classification::other;
    bool simple = true;         // false when P splits into elliptic Weil factors
    unsigned mef_degree = 0;    // ord_r(p)
};

/// Smallest k with r | q^k - 1: the multiplicative order of q mod r.
inline unsigned embedding_degree(const Int& q, const Int& r) {
    if (gcd_int(q, r) != 1) throw NotCoprime("embedding degree needs gcd(q, r) = 1");
    return static_cast<unsigned>(multiplicative_order(q, r));
}

/// rho = g log q / log r.
inline double rho_value(unsigned g, const Int& q, const Int& r) {
    if (q < 2 || r < 2) throw BadSpec("rho_value needs q, r >= 2");
    return g * std::log(q.convert_to<double>()) / std::log(r.convert_to<double>());
}

/// Degree of the minimal embedding field F_{p^{ord_r p}} over F_p.
inline unsigned minimal_embedding_field(const Int& p, unsigned m, const Int& r) {
    (void)m;  // the minimal field depends on p alone; m enters only through q = p^m
    if (gcd_int(p, r) != 1) throw NotCoprime("minimal embedding field needs gcd(p, r) = 1");
    return static_cast<unsigned>(multiplicative_order(p, r));
}

/// Embedding degree required for a target extension-field size:
/// (extfield_bits / subgroup_bits) * (g / rho).
inline double recommended_k(double subgroup_bits, double extfield_bits, double rho, unsigned g) {
    return (extfield_bits / subgroup_bits) * (static_cast<double>(g) / rho);
}

/// True when the genus-2 charpoly factors as a product of two elliptic Weil
/// polynomials (x^2 - t x + q): the Jacobian is then isogenous over F_q to a
/// product of elliptic curves and is not simple.
inline bool splits_into_elliptic_product(const CharPoly& cp) {
    if (cp.genus != 2) return false;
    // P = x^4 + a1 x^3 + a2 x^2 + q a1 x + q^2 splits iff z^2 + a1 z + (a2 - 2q)
    // has integer roots t1, t2 with |t_i| <= 2 sqrt(q).
    const Int& a1 = cp.c[3];
    const Int& a2 = cp.c[2];
    Int disc = a1 * a1 - 4 * (a2 - 2 * cp.q);
    if (disc < 0) return false;
    Int s = isqrt(disc);
    if (s * s != disc) return false;
    if (mod_floor(-a1 + s, 2) != 0) return false;
    Int t1 = (-a1 + s) / 2;
    Int t2 = (-a1 - s) / 2;
    return t1 * t1 <= 4 * cp.q && t2 * t2 <= 4 * cp.q;
}

namespace detail {

/// Word-level F_{p^2} = F_p[t]/(t^2 - c) scratch arithmetic for the hot
/// counting loop (avoids FieldElement allocations).
struct Fp2Counter {
    std::uint64_t p, c;               // t^2 = c, c a non-residue
    std::vector<int> chi_table;       // quadratic character on F_p

    explicit Fp2Counter(std::uint64_t p_) : p(p_) {
        chi_table.assign(p, -1);
        chi_table[0] = 0;
        for (std::uint64_t i = 1; i < p; ++i) chi_table[i * i % p] = 1;
        c = 2;
        while (chi_table[c] != -1) ++c;
    }

    /// #affine points of y^2 = F(x) over F_{p^2} (F given by word coefficients).
    std::uint64_t affine_count_ext(const wordpoly::Vec& F) const {
        std::uint64_t count = 0;
        for (std::uint64_t a = 0; a < p; ++a)
            for (std::uint64_t b = 0; b < p; ++b) {
                // Horner evaluate F at x = a + b t
                std::uint64_t ra = 0, rb = 0;
                for (size_t i = F.size(); i-- > 0;) {
                    std::uint64_t na = (ra * a + rb * b % p * c) % p;
                    std::uint64_t nb = (ra * b + rb * a) % p;
                    ra = (na + F[i]) % p;
                    rb = nb;
                }
                // chi over F_{p^2} via the norm ra^2 - c rb^2
                std::uint64_t norm = (ra * ra % p + (p - c) * (rb * rb % p)) % p;
                count += 1 + chi_table[norm];
            }
        return count;
    }

    std::uint64_t affine_count_base(const wordpoly::Vec& F) const {
        std::uint64_t count = 0;
        for (std::uint64_t x = 0; x < p; ++x) {
            std::uint64_t r = 0;
            for (size_t i = F.size(); i-- > 0;) r = (r * x + F[i]) % p;
            count += 1 + chi_table[r];
        }
        return count;
    }
};

/// Lexicographically minimal coefficient tuple of u^-2 F(a x + b) over the
/// substitutions x -> a x + b, y -> u y with u^2 = a^5 (so a must be a
/// square); used to deduplicate isomorphic curves.
inline wordpoly::Vec canonical_quintic(const wordpoly::Vec& F, const Fp2Counter& fp) {
    std::uint64_t p = fp.p;
    wordpoly::Vec best = F;
    for (std::uint64_t s = 1; s < p; ++s) {
        std::uint64_t a = s * s % p;  // squares only
        std::uint64_t a5 = a;
        for (int i = 0; i < 4; ++i) a5 = a5 * a % p;
        std::uint64_t inv_a5 = wordpoly::inv_mod_p(a5, p);
        for (std::uint64_t b = 0; b < p; ++b) {
            // G(x) = F(a x + b) / a^5, computed by Horner in (a x + b)
            wordpoly::Vec g{F.back()};
            for (size_t i = F.size() - 1; i-- > 0;) {
                wordpoly::Vec next(g.size() + 1, 0);
                for (size_t j = 0; j < g.size(); ++j) {
                    next[j + 1] = (next[j + 1] + g[j] * a) % p;
                    next[j] = (next[j] + g[j] * b) % p;
                }
                next[0] = (next[0] + F[i]) % p;
                g = std::move(next);
            }
            for (auto& x : g) x = x * inv_a5 % p;
            // compare high-to-low after the forced monic lead
            if (g < best) best = g;  // lexicographic on low-to-high vectors
        }
    }
    return best;
}

}  // namespace detail

/// Streams CurveRecords for every (deduped, nonsingular) H = 0 quintic over
/// the primes in [p_min, p_max]. Deterministic for a fixed config. Curves
/// whose Jacobian order cannot be factored within the budget are skipped with
/// a notice, as are records whose r collides with p.
inline void search(const SearchConfig& cfg, const std::function<void(const CurveRecord&)>& emit,
                   const std::function<void(const std::string&)>& notice = {}) {
    if (cfg.p_min < 5) throw BadSpec("search needs p_min >= 5");
    if (cfg.genus != 2) throw BadSpec("the search scans genus-2 curves only");
    auto note = [&](const std::string& s) {
        if (notice) notice(s);
    };

    for (Int p = cfg.p_min; p <= cfg.p_max; ++p) {
        if (!is_probable_prime(p)) continue;
        auto pw = static_cast<std::uint64_t>(p);
        detail::Fp2Counter counter(pw);
        FieldPtr base = FieldDescriptor::prime_field(p);
        Rng rng(cfg.seed ^ (pw * 0x9e3779b97f4a7c15ULL));

        std::uint64_t total = 1;
        for (int i = 0; i < 5; ++i) total *= pw;
        std::uint64_t todo = cfg.sample_all ? total : cfg.sample_count;

        for (std::uint64_t idx = 0; idx < todo; ++idx) {
            std::uint64_t code = cfg.sample_all ? idx : rng() % total;
            wordpoly::Vec F(6, 0);
            F[5] = 1;
            std::uint64_t rem = code;
            for (int i = 0; i < 5; ++i) {
                F[i] = rem % pw;
                rem /= pw;
            }
            // nonsingular iff F squarefree (H = 0, odd characteristic)
            wordpoly::Vec dF(5, 0);
            for (int i = 1; i <= 5; ++i) dF[i - 1] = F[i] * i % pw;
            wordpoly::trim(dF);
            if (wordpoly::gcd(F, dF, pw).size() > 1) continue;
            if (cfg.dedupe && detail::canonical_quintic(F, counter) != F) continue;

            Int N1 = Int(counter.affine_count_base(F)) + 1;
            Int N2 = Int(counter.affine_count_ext(F)) + 1;
            Int a1 = N1 - (p + 1);
            Int a2 = (a1 * a1 + N2 - p * p - 1) / 2;
            CharPoly cp;
            cp.q = p;
            cp.genus = 2;
            cp.c = {p * p, p * a1, a2, a1, 1};
            Int order = cp.eval(1);

            auto fac = factorize(order, cfg.trial_division_budget, cfg.rho_iteration_budget,
                                 cfg.seed + 1);
            if (!fac.complete) {
                note("factorization budget exhausted for p=" + p.str() + " curve #" +
                     std::to_string(code));
                continue;
            }
            Int r = 0;
            for (const auto& [prime, e] : fac.factors) {
                (void)e;
                if (bit_length(prime) >= cfg.min_r_bits && prime > r) r = prime;
            }
            if (r == 0) continue;
            if (r == p) {
                note("largest prime factor equals p for p=" + p.str() + " curve #" +
                     std::to_string(code) + "; embedding degree undefined");
                continue;
            }

            unsigned k = embedding_degree(p, r);
            if (k > cfg.max_k) continue;

            CurveRecord rec;
            std::vector<FieldElement> coeffs;
            for (auto w : F) coeffs.push_back(from_uint(base, w));
            rec.curve = CurveParams{2, poly_zero(base), Poly(base, std::move(coeffs)), base};
            rec.charpoly = cp.c;
            rec.jac_order = order;
            rec.r = r;
            rec.k = k;
            rec.rho = rho_value(2, p, r);
            rec.cls = classify(cp, p);
            rec.simple = !splits_into_elliptic_product(cp);
            rec.mef_degree = minimal_embedding_field(p, 1, r);
            emit(rec);
        }
    }
}

}  // namespace hypair
