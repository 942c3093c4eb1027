// hypair: pairings on genus-2 hyperelliptic curves
// Copyright 2026 The hypair Authors.
// SPDX-License-Identifier: Apache-2.0
#pragma once

#include <algorithm>
#include <cstdint>
#include <memory>
#include <optional>
#include <utility>
#include <vector>

#include "hypair/errors.hpp"
#include "hypair/integers.hpp"

namespace hypair {

class FieldDescriptor;
using FieldPtr = std::shared_ptr<const FieldDescriptor>;

namespace wordpoly {

// Word-level polynomials over Z_p with p < 2^32: coefficients low-to-high,
// no trailing zeros. Used for the descriptor modulus and element arithmetic;
// everything above this layer works with FieldElement instead.

using Vec = std::vector<std::uint64_t>;

inline void trim(Vec& a) {
    while (!a.empty() && a.back() == 0) a.pop_back();
}

inline Vec add(const Vec& a, const Vec& b, std::uint64_t p) {
    Vec r(std::max(a.size(), b.size()), 0);
    for (size_t i = 0; i < r.size(); ++i) {
        std::uint64_t s = (i < a.size() ? a[i] : 0) + (i < b.size() ? b[i] : 0);
        r[i] = s >= p ? s - p : s;
    }
    trim(r);
    return r;
}

inline Vec sub(const Vec& a, const Vec& b, std::uint64_t p) {
    Vec r(std::max(a.size(), b.size()), 0);
    for (size_t i = 0; i < r.size(); ++i) {
        std::uint64_t x = i < a.size() ? a[i] : 0;
        std::uint64_t y = i < b.size() ? b[i] : 0;
        r[i] = x >= y ? x - y : x + p - y;
    }
    trim(r);
    return r;
}

inline Vec mul(const Vec& a, const Vec& b, std::uint64_t p) {
    if (a.empty() || b.empty()) return {};
    Vec r(a.size() + b.size() - 1, 0);
    for (size_t i = 0; i < a.size(); ++i) {
        if (a[i] == 0) continue;
        for (size_t j = 0; j < b.size(); ++j) r[i + j] = (r[i + j] + a[i] * b[j]) % p;
    }
    trim(r);
    return r;
}

inline Vec scale(const Vec& a, std::uint64_t c, std::uint64_t p) {
    c %= p;
    Vec r(a.size());
    for (size_t i = 0; i < a.size(); ++i) r[i] = a[i] * c % p;
    trim(r);
    return r;
}

inline std::uint64_t inv_mod_p(std::uint64_t a, std::uint64_t p) {
    if (a == 0) throw DivisionByZero("inverse of zero mod p");
    std::int64_t r0 = static_cast<std::int64_t>(p), r1 = static_cast<std::int64_t>(a % p);
    std::int64_t s0 = 0, s1 = 1;
    while (r1 != 0) {
        std::int64_t quot = r0 / r1;
        std::int64_t r2 = r0 - quot * r1, s2 = s0 - quot * s1;
        r0 = r1; r1 = r2;
        s0 = s1; s1 = s2;
    }
    std::int64_t s = s0 % static_cast<std::int64_t>(p);
    if (s < 0) s += static_cast<std::int64_t>(p);
    return static_cast<std::uint64_t>(s);
}

/// Remainder of a modulo monic-or-not b (b nonzero).
inline Vec rem(Vec a, const Vec& b, std::uint64_t p) {
    std::uint64_t lcinv = inv_mod_p(b.back(), p);
    while (a.size() >= b.size()) {
        std::uint64_t c = a.back() * lcinv % p;
        size_t shift = a.size() - b.size();
        if (c != 0)
            for (size_t j = 0; j < b.size(); ++j) {
                std::uint64_t t = b[j] * c % p;
                a[shift + j] = a[shift + j] >= t ? a[shift + j] - t : a[shift + j] + p - t;
            }
        a.pop_back();
        trim(a);
        if (a.empty()) break;
    }
    return a;
}

inline Vec make_monic(Vec a, std::uint64_t p) {
    if (a.empty()) return a;
    return scale(a, inv_mod_p(a.back(), p), p);
}

inline Vec gcd(Vec a, Vec b, std::uint64_t p) {
    while (!b.empty()) {
        Vec r = rem(a, b, p);
        a = std::move(b);
        b = std::move(r);
    }
    return make_monic(a, p);
}

/// x^e mod f (f monic, deg f >= 1), e >= 0 arbitrary precision.
inline Vec xpow_mod(const Int& e, const Vec& f, std::uint64_t p) {
    Vec result{1};
    Vec base = rem(Vec{0, 1}, f, p);
    for (int i = static_cast<int>(bit_length(e)) - 1; i >= 0; --i) {
        result = rem(mul(result, result, p), f, p);
        if (bit_test(e, static_cast<unsigned>(i))) result = rem(mul(result, base, p), f, p);
    }
    return result;
}

/// Rabin test: f (monic, degree d >= 1) is irreducible over F_p iff
/// x^(p^d) == x mod f and gcd(x^(p^(d/l)) - x, f) = 1 for every prime l | d.
inline bool is_irreducible(const Vec& f, std::uint64_t p) {
    size_t d = f.size() - 1;
    if (d == 0) return false;
    Int P(p);
    Vec x{0, 1};
    Vec xq = xpow_mod(int_pow(P, static_cast<unsigned>(d)), f, p);
    if (sub(xq, x, p) != Vec{}) return false;
    auto fac = factorize(Int(d));
    for (const auto& [l, e] : fac.factors) {
        (void)e;
        unsigned dl = static_cast<unsigned>(d / static_cast<std::uint64_t>(l));
        Vec g = sub(xpow_mod(int_pow(P, dl), f, p), x, p);
        if (gcd(g, f, p).size() > 1) return false;
    }
    return true;
}

}  // namespace wordpoly

/// A finite field F_{p^d}, represented flat over F_p as F_p[t]/(modulus).
/// Immutable; share via FieldPtr. Characteristic is limited to p < 2^32 (a
/// desk-scale fast path: coefficients then fit machine words).
class FieldDescriptor {
public:
    static FieldPtr prime_field(const Int& p) { return make(p, 1, {}); }

    static FieldPtr extension(const Int& p, const std::vector<std::uint64_t>& modulus) {
        if (modulus.size() < 2) throw DegreeOutOfRange("extension modulus must have degree >= 1");
        return make(p, static_cast<unsigned>(modulus.size() - 1), modulus);
    }

    std::uint64_t p() const noexcept { return p_; }
    unsigned degree() const noexcept { return degree_; }
    const wordpoly::Vec& modulus() const noexcept { return modulus_; }
    Int order() const { return int_pow(Int(p_), degree_); }

    /// True when the modulus has the binomial form t^d - c.
    bool binomial_modulus() const noexcept {
        if (degree_ < 2) return false;
        for (unsigned i = 1; i < degree_; ++i)
            if (modulus_[i] != 0) return false;
        return true;
    }

    bool operator==(const FieldDescriptor& o) const noexcept {
        return p_ == o.p_ && degree_ == o.degree_ && modulus_ == o.modulus_;
    }
    bool operator!=(const FieldDescriptor& o) const noexcept { return !(*this == o); }

private:
    friend class FieldElement;

    static FieldPtr make(const Int& p, unsigned degree, wordpoly::Vec modulus) {
        if (!is_probable_prime(p)) throw CompositeCharacteristic("characteristic " + p.str() + " is not prime");
        if (p >= Int("2147483648")) throw TooLarge("characteristic exceeds the desk-scale limit 2^31");
        auto pw = static_cast<std::uint64_t>(p);
        if (degree > 1) {
            if (modulus.size() != degree + 1 || modulus.back() != 1)
                throw NotMonic("field modulus must be monic of degree d");
            for (auto& c : modulus) c %= pw;
            modulus.back() = 1;
            if (!wordpoly::is_irreducible(modulus, pw))
                throw InvariantViolation("field modulus is reducible over F_p");
        } else {
            modulus.clear();
        }
        return FieldPtr(new FieldDescriptor(pw, degree, std::move(modulus)));
    }

    FieldDescriptor(std::uint64_t p, unsigned degree, wordpoly::Vec modulus)
        : p_(p), degree_(degree), modulus_(std::move(modulus)) {}

    std::uint64_t p_;
    unsigned degree_;
    wordpoly::Vec modulus_;
};

inline bool same_field(const FieldPtr& a, const FieldPtr& b) {
    return a == b || (a && b && *a == *b);
}

/// An element of F_{p^d}: d coefficients in [0, p), low-to-high in t.
class FieldElement {
public:
    FieldElement() = default;

    FieldElement(FieldPtr field, wordpoly::Vec coeffs) : f_(std::move(field)), c_(std::move(coeffs)) {
        c_.resize(f_->degree(), 0);
        for (auto& x : c_) x %= f_->p_;
    }

    const FieldPtr& field() const noexcept { return f_; }
    const wordpoly::Vec& coeffs() const noexcept { return c_; }

    bool is_zero() const noexcept {
        for (auto x : c_)
            if (x != 0) return false;
        return true;
    }

    bool is_one() const noexcept {
        if (c_.empty() || c_[0] != 1) return false;
        for (size_t i = 1; i < c_.size(); ++i)
            if (c_[i] != 0) return false;
        return true;
    }

    bool operator==(const FieldElement& o) const {
        check_same(o);
        return c_ == o.c_;
    }
    bool operator!=(const FieldElement& o) const { return !(*this == o); }

    FieldElement operator+(const FieldElement& o) const {
        check_same(o);
        FieldElement r(*this);
        for (size_t i = 0; i < c_.size(); ++i) {
            std::uint64_t s = r.c_[i] + o.c_[i];
            r.c_[i] = s >= p() ? s - p() : s;
        }
        return r;
    }

    FieldElement operator-(const FieldElement& o) const {
        check_same(o);
        FieldElement r(*this);
        for (size_t i = 0; i < c_.size(); ++i)
            r.c_[i] = r.c_[i] >= o.c_[i] ? r.c_[i] - o.c_[i] : r.c_[i] + p() - o.c_[i];
        return r;
    }

    FieldElement operator-() const {
        FieldElement r(*this);
        for (auto& x : r.c_) x = x == 0 ? 0 : p() - x;
        return r;
    }

    FieldElement operator*(const FieldElement& o) const {
        check_same(o);
        FieldElement r(*this);
        r.c_ = reduce(wordpoly::mul(c_, o.c_, p()));
        return r;
    }

    FieldElement operator/(const FieldElement& o) const { return *this * o.inverse(); }

    FieldElement inverse() const {
        if (is_zero()) throw DivisionByZero("inverse of zero field element");
        if (f_->degree() == 1) {
            FieldElement r(*this);
            r.c_[0] = wordpoly::inv_mod_p(c_[0], p());
            return r;
        }
        // extended Euclid of the coefficient polynomial against the modulus
        wordpoly::Vec r0 = f_->modulus_, r1 = c_;
        wordpoly::trim(r1);
        wordpoly::Vec s0{}, s1{1};
        while (!r1.empty() && r1.size() > 1) {
            auto [quot, rem] = divmod(r0, r1);
            r0 = std::move(r1);
            r1 = std::move(rem);
            wordpoly::Vec s2 = wordpoly::sub(s0, wordpoly::mul(quot, s1, p()), p());
            s0 = std::move(s1);
            s1 = std::move(s2);
        }
        if (r1.empty()) throw DivisionByZero("element not invertible (modulus not irreducible?)");
        FieldElement r(*this);
        r.c_ = wordpoly::scale(s1, wordpoly::inv_mod_p(r1[0], p()), p());
        r.c_.resize(f_->degree(), 0);
        return r;
    }

    std::uint64_t p() const noexcept { return f_->p_; }

private:
    void check_same(const FieldElement& o) const {
        if (!same_field(f_, o.f_))
            throw DescriptorMismatch("field elements belong to different descriptors");
    }

    wordpoly::Vec reduce(wordpoly::Vec prod) const {
        const auto pw = p();
        const unsigned d = f_->degree();
        if (d == 1) {
            prod.resize(1, 0);
            return prod;
        }
        if (prod.size() > d) {
            if (f_->binomial_modulus()) {
                // t^d = c: fold the upper half down with one multiply per word
                std::uint64_t c = pw - f_->modulus_[0];  // modulus = t^d - c stored as (-c, 0, .., 1)
                c %= pw;
                for (size_t i = prod.size(); i-- > d;) {
                    prod[i - d] = (prod[i - d] + prod[i] * c) % pw;
                    prod[i] = 0;
                }
                wordpoly::trim(prod);
            } else {
                prod = wordpoly::rem(std::move(prod), f_->modulus_, pw);
            }
        }
        prod.resize(d, 0);
        return prod;
    }

    std::pair<wordpoly::Vec, wordpoly::Vec> divmod(wordpoly::Vec a, const wordpoly::Vec& b) const {
        const auto pw = p();
        std::uint64_t lcinv = wordpoly::inv_mod_p(b.back(), pw);
        wordpoly::Vec q(a.size() >= b.size() ? a.size() - b.size() + 1 : 0, 0);
        while (a.size() >= b.size() && !a.empty()) {
            std::uint64_t c = a.back() * lcinv % pw;
            size_t shift = a.size() - b.size();
            q[shift] = c;
            if (c != 0)
                for (size_t j = 0; j < b.size(); ++j) {
                    std::uint64_t t = b[j] * c % pw;
                    a[shift + j] = a[shift + j] >= t ? a[shift + j] - t : a[shift + j] + pw - t;
                }
            a.pop_back();
            wordpoly::trim(a);
        }
        wordpoly::trim(q);
        return {q, a};
    }

    FieldPtr f_;
    wordpoly::Vec c_;
};

// --- element construction helpers -----------------------------------------

inline FieldElement make_element(const FieldPtr& f, wordpoly::Vec coeffs) {
    return FieldElement(f, std::move(coeffs));
}

inline FieldElement from_uint(const FieldPtr& f, std::uint64_t v) {
    return FieldElement(f, {v % f->p()});
}

inline FieldElement from_int(const FieldPtr& f, const Int& v) {
    Int m = mod_floor(v, Int(f->p()));
    return from_uint(f, static_cast<std::uint64_t>(m));
}

inline FieldElement zero(const FieldPtr& f) { return FieldElement(f, {}); }
inline FieldElement one(const FieldPtr& f) { return from_uint(f, 1); }

inline FieldElement random_element(const FieldPtr& f, Rng& rng) {
    wordpoly::Vec c(f->degree());
    for (auto& x : c) x = rng() % f->p();
    return FieldElement(f, std::move(c));
}

inline FieldElement random_nonzero(const FieldPtr& f, Rng& rng) {
    while (true) {
        FieldElement a = random_element(f, rng);
        if (!a.is_zero()) return a;
    }
}

// --- exponentiation and Frobenius ------------------------------------------

/// a^e for e >= 0 (0^0 == 1) by square-and-multiply.
inline FieldElement pow(const FieldElement& a, const Int& e) {
    FieldElement result = one(a.field());
    for (int i = static_cast<int>(bit_length(e)) - 1; i >= 0; --i) {
        result = result * result;
        if (bit_test(e, static_cast<unsigned>(i))) result = result * a;
    }
    return result;
}

/// a^e for any integer e; negative exponents go through the inverse.
inline FieldElement pow_signed(const FieldElement& a, const Int& e) {
    if (e >= 0) return pow(a, e);
    return pow(a.inverse(), -e);
}

/// a^(p^e). Exponent reduces to p^(e mod d) because a^(p^d) = a.
inline FieldElement frobenius_power(const FieldElement& a, unsigned e) {
    unsigned d = a.field()->degree();
    e %= d;
    if (e == 0) return a;
    return pow(a, int_pow(Int(a.field()->p()), e));
}

/// True iff a lies in the subfield F_{p^l}; l must divide the field degree.
inline bool subfield_test(const FieldElement& a, unsigned l) {
    unsigned d = a.field()->degree();
    if (l == 0 || d % l != 0) throw NotADivisor("subfield degree must divide the field degree");
    if (l == d) return true;
    return frobenius_power(a, l) == a;
}

/// a^(p^(d/2)) for even-degree fields. For a binomial modulus t^d - c this is
/// coefficient-wise sign flip on odd powers of t (t -> -t).
inline FieldElement conjugate_half(const FieldElement& a) {
    unsigned d = a.field()->degree();
    if (d % 2 != 0) throw NotADivisor("conjugate_half needs an even-degree field");
    if (a.field()->binomial_modulus()) {
        wordpoly::Vec c = a.coeffs();
        for (size_t i = 1; i < c.size(); i += 2) c[i] = c[i] == 0 ? 0 : a.field()->p() - c[i];
        return FieldElement(a.field(), std::move(c));
    }
    return frobenius_power(a, d / 2);
}

// --- quadratic character and square roots ----------------------------------

/// Euler criterion: 1 for nonzero squares, -1 for non-squares, 0 for zero.
inline int quadratic_character(const FieldElement& a) {
    if (a.is_zero()) return 0;
    FieldElement e = pow(a, (a.field()->order() - 1) / 2);
    return e.is_one() ? 1 : -1;
}

/// Tonelli-Shanks in F_{p^d}; nullopt for non-residues. Deterministic: the
/// auxiliary non-residue search is seeded from (p, d).
inline std::optional<FieldElement> sqrt(const FieldElement& a) {
    const FieldPtr& f = a.field();
    if (a.is_zero()) return zero(f);
    Int qm1 = f->order() - 1;
    if (pow(a, qm1 / 2) != one(f)) return std::nullopt;
    unsigned s = 0;
    Int m = qm1;
    while (m % 2 == 0) {
        m /= 2;
        ++s;
    }
    if (s == 1) return pow(a, (f->order() + 1) / 4);
    Rng rng(0x9e3779b97f4a7c15ULL ^ (f->p() * 1000003ULL + f->degree()));
    FieldElement z = zero(f);
    do {
        z = random_nonzero(f, rng);
    } while (pow(z, qm1 / 2).is_one());
    FieldElement c = pow(z, m);
    FieldElement t = pow(a, m);
    FieldElement r = pow(a, (m + 1) / 2);
    unsigned e = s;
    while (!t.is_one()) {
        FieldElement t2 = t;
        unsigned i = 0;
        while (!t2.is_one()) {
            t2 = t2 * t2;
            ++i;
        }
        FieldElement b = c;
        for (unsigned j = 0; j + i + 1 < e; ++j) b = b * b;
        r = r * b;
        c = b * b;
        t = t * c;
        e = i;
    }
    return r;
}

// --- extension construction -------------------------------------------------

/// Deterministic irreducible-modulus search for F_{p^d}. Even degrees prefer
/// binomials t^d - c (so conjugate_half is a sign flip); the fallback is a
/// seeded random monic search verified by the Rabin test.
inline FieldPtr build_extension(const Int& p, unsigned d, std::uint64_t seed = 0) {
    if (!is_probable_prime(p)) throw CompositeCharacteristic("characteristic " + p.str() + " is not prime");
    if (p < 5) throw CompositeCharacteristic("characteristic must be at least 5");
    if (d == 0) throw DegreeOutOfRange("extension degree must be positive");
    if (d == 1) return FieldDescriptor::prime_field(p);
    if (p >= Int("2147483648")) throw TooLarge("characteristic exceeds the desk-scale limit 2^31");
    auto pw = static_cast<std::uint64_t>(p);

    // Binomial candidates first. Irreducibility of t^d - c already forces c to
    // be a non-residue for even d.
    Rng rng(seed * 0x9e3779b97f4a7c15ULL + pw + d);
    std::vector<std::uint64_t> cs;
    for (std::uint64_t c = 1; c < pw && cs.size() < 4096; ++c) cs.push_back(c);
    std::shuffle(cs.begin(), cs.end(), rng);
    for (std::uint64_t c : cs) {
        wordpoly::Vec f(d + 1, 0);
        f[0] = pw - c;
        f[d] = 1;
        if (wordpoly::is_irreducible(f, pw)) return FieldDescriptor::extension(p, f);
    }
    for (unsigned attempt = 0; attempt < 4096; ++attempt) {
        wordpoly::Vec f(d + 1, 0);
        for (unsigned i = 0; i < d; ++i) f[i] = rng() % pw;
        f[d] = 1;
        if (f[0] == 0) f[0] = 1;
        if (wordpoly::is_irreducible(f, pw)) return FieldDescriptor::extension(p, f);
    }
    throw SearchExhausted("no irreducible modulus found within the attempt budget");
}

}  // namespace hypair
