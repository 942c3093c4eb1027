// hypair: pairings on genus-2 hyperelliptic curves
// Copyright 2026 The hypair Authors.
// SPDX-License-Identifier: Apache-2.0
#pragma once

#include <boost/multiprecision/cpp_int.hpp>
#include <cstdint>
#include <map>
#include <random>
#include <vector>

#include "hypair/errors.hpp"

namespace hypair {

using Int = boost::multiprecision::cpp_int;
using Rng = std::mt19937_64;

inline Int abs_int(const Int& a) { return a < 0 ? Int(-a) : a; }

inline Int gcd_int(Int a, Int b) { return boost::multiprecision::gcd(a, b); }

/// Number of bits in |n|; bit_length(0) == 0.
inline unsigned bit_length(const Int& n) {
    if (n == 0) return 0;
    return static_cast<unsigned>(boost::multiprecision::msb(abs_int(n))) + 1;
}

inline bool bit_test(const Int& n, unsigned i) { return boost::multiprecision::bit_test(n, i); }

inline Int isqrt(const Int& n) { return boost::multiprecision::sqrt(n); }

/// base^exp mod m, exp >= 0, m > 1.
inline Int modpow(Int base, const Int& exp, const Int& m) {
    Int result = 1;
    base %= m;
    if (base < 0) base += m;
    for (int i = static_cast<int>(bit_length(exp)) - 1; i >= 0; --i) {
        result = result * result % m;
        if (bit_test(exp, static_cast<unsigned>(i))) result = result * base % m;
    }
    return result;
}

inline Int mod_floor(Int a, const Int& m) {
    a %= m;
    if (a < 0) a += m;
    return a;
}

/// Inverse of a mod m via extended Euclid; throws DivisionByZero when gcd != 1.
inline Int mod_inverse(const Int& a, const Int& m) {
    Int r0 = m, r1 = mod_floor(a, m), s0 = 0, s1 = 1;
    while (r1 != 0) {
        Int quot = r0 / r1;
        Int r2 = r0 - quot * r1;
        Int s2 = s0 - quot * s1;
        r0 = r1; r1 = r2;
        s0 = s1; s1 = s2;
    }
    if (r0 != 1) throw DivisionByZero("no inverse: gcd(" + a.str() + ", " + m.str() + ") != 1");
    return mod_floor(s0, m);
}

namespace detail {

inline bool miller_rabin_witness(const Int& n, const Int& a, const Int& d, unsigned s) {
    Int x = modpow(a, d, n);
    if (x == 1 || x == n - 1) return false;
    for (unsigned i = 1; i < s; ++i) {
        x = x * x % n;
        if (x == n - 1) return false;
    }
    return true;  // a witnesses compositeness
}

}  // namespace detail

/// Miller-Rabin primality test. Deterministic witness set below 2^64, 40
/// pseudo-random rounds (seeded from n, so the answer is reproducible) above.
inline bool is_probable_prime(const Int& n) {
    if (n < 2) return false;
    for (int smallp : {2, 3, 5, 7, 11, 13, 17, 19, 23, 29, 31, 37}) {
        if (n == smallp) return true;
        if (n % smallp == 0) return false;
    }
    Int d = n - 1;
    unsigned s = 0;
    while (d % 2 == 0) {
        d /= 2;
        ++s;
    }
    if (n < Int("18446744073709551616")) {  // 2^64: fixed witnesses are exact
        for (int a : {2, 3, 5, 7, 11, 13, 17, 19, 23, 29, 31, 37})
            if (detail::miller_rabin_witness(n, a, d, s)) return false;
        return true;
    }
    Rng rng(static_cast<std::uint64_t>(n % Int("18446744073709551557")));
    for (int round = 0; round < 40; ++round) {
        Int a = 2 + Int(rng()) % (n - 3);
        if (detail::miller_rabin_witness(n, a, d, s)) return false;
    }
    return true;
}

/// Pollard rho (Brent variant) bounded by max_iters; returns a nontrivial
/// factor of composite n or 0 when the budget runs out.
inline Int pollard_rho(const Int& n, Rng& rng, std::uint64_t max_iters) {
    if (n % 2 == 0) return 2;
    for (std::uint64_t attempt = 0; attempt < 16; ++attempt) {
        Int c = 1 + Int(rng()) % (n - 1);
        Int x = Int(rng()) % n, y = x, d = 1;
        std::uint64_t it = 0;
        while (d == 1) {
            if (++it > max_iters) break;
            x = (x * x + c) % n;
            y = (y * y + c) % n;
            y = (y * y + c) % n;
            d = gcd_int(abs_int(x - y), n);
        }
        if (d != 1 && d != n) return d;
        if (it > max_iters) return 0;
    }
    return 0;
}

struct Factorization {
    std::map<Int, unsigned> factors;  // prime -> exponent
    bool complete = true;             // false when the budget ran out
    Int unfactored = 1;               // residual composite when incomplete
};

/// Trial division up to trial_bound followed by recursive Pollard rho with a
/// per-split iteration budget. Deterministic for a fixed seed.
inline Factorization factorize(Int n, std::uint64_t trial_bound = 1000000,
                               std::uint64_t rho_iters = 10000, std::uint64_t seed = 1) {
    Factorization out;
    if (n < 0) n = -n;
    if (n <= 1) return out;
    for (Int p = 2; p * p <= n && p <= trial_bound; p += (p == 2 ? 1 : 2)) {
        while (n % p == 0) {
            ++out.factors[p];
            n /= p;
        }
    }
    Rng rng(seed);
    std::vector<Int> stack{n};
    while (!stack.empty()) {
        Int m = stack.back();
        stack.pop_back();
        if (m == 1) continue;
        if (is_probable_prime(m)) {
            ++out.factors[m];
            continue;
        }
        Int d = pollard_rho(m, rng, rho_iters);
        if (d == 0) {
            out.complete = false;
            out.unfactored *= m;
            continue;
        }
        stack.push_back(d);
        stack.push_back(m / d);
    }
    return out;
}

/// Multiplicative order of a modulo r (prime r, gcd(a,r)=1); needs the
/// factorization of r-1.
inline Int multiplicative_order(const Int& a, const Int& r, const Factorization& rm1) {
    if (gcd_int(mod_floor(a, r), r) != 1) throw NotCoprime("order undefined: gcd(a, r) != 1");
    Int order = r - 1;
    for (const auto& [p, e] : rm1.factors) {
        for (unsigned i = 0; i < e; ++i) {
            if (modpow(a, order / p, r) == 1)
                order /= p;
            else
                break;
        }
    }
    return order;
}

inline Int multiplicative_order(const Int& a, const Int& r) {
    Factorization f = factorize(r - 1);
    if (!f.complete) throw TooLarge("cannot factor r-1 within the desk-scale budget");
    return multiplicative_order(a, r, f);
}

/// Largest e with p^e | n.
inline unsigned valuation(Int n, const Int& p) {
    unsigned v = 0;
    while (n != 0 && n % p == 0) {
        n /= p;
        ++v;
    }
    return v;
}

inline Int int_pow(Int base, unsigned e) {
    Int r = 1;
    while (e) {
        if (e & 1) r *= base;
        base *= base;
        e >>= 1;
    }
    return r;
}

/// Uniform integer in [0, bound) from 64-bit draws; bound > 0.
inline Int random_below(Rng& rng, const Int& bound) {
    unsigned bits = bit_length(bound);
    unsigned words = (bits + 63) / 64;
    while (true) {
        Int x = 0;
        for (unsigned i = 0; i < words; ++i) x = (x << 64) | Int(rng());
        x &= (Int(1) << bits) - 1;
        if (x < bound) return x;
    }
}

}  // namespace hypair
