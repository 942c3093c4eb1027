// hypair: pairings on genus-2 hyperelliptic curves
// Copyright 2026 The hypair Authors.
// SPDX-License-Identifier: Apache-2.0
#pragma once

#include <initializer_list>
#include <optional>
#include <tuple>
#include <utility>
#include <vector>

#include "hypair/field.hpp"

namespace hypair {

/// Univariate polynomial over one FieldDescriptor, coefficients low-to-high,
/// normalized (no trailing zeros). The zero polynomial has degree -1.
class Poly {
public:
    Poly() = default;
    explicit Poly(FieldPtr f) : f_(std::move(f)) {}
    Poly(FieldPtr f, std::vector<FieldElement> c) : f_(std::move(f)), c_(std::move(c)) { trim(); }

    const FieldPtr& field() const noexcept { return f_; }
    int degree() const noexcept { return static_cast<int>(c_.size()) - 1; }
    bool is_zero() const noexcept { return c_.empty(); }
    const std::vector<FieldElement>& coeffs() const noexcept { return c_; }

    FieldElement coeff(size_t i) const { return i < c_.size() ? c_[i] : zero(f_); }
    FieldElement lc() const { return c_.empty() ? zero(f_) : c_.back(); }
    bool is_monic() const { return !c_.empty() && c_.back().is_one(); }

    bool is_constant() const noexcept { return c_.size() <= 1; }

    bool operator==(const Poly& o) const {
        if (!same_field(f_, o.f_)) throw DescriptorMismatch("polynomials over different fields");
        return c_ == o.c_;
    }
    bool operator!=(const Poly& o) const { return !(*this == o); }

    Poly operator+(const Poly& o) const {
        check(o);
        std::vector<FieldElement> r;
        size_t n = std::max(c_.size(), o.c_.size());
        r.reserve(n);
        for (size_t i = 0; i < n; ++i) r.push_back(coeff(i) + o.coeff(i));
        return Poly(f_, std::move(r));
    }

    Poly operator-(const Poly& o) const {
        check(o);
        std::vector<FieldElement> r;
        size_t n = std::max(c_.size(), o.c_.size());
        r.reserve(n);
        for (size_t i = 0; i < n; ++i) r.push_back(coeff(i) - o.coeff(i));
        return Poly(f_, std::move(r));
    }

    Poly operator-() const {
        std::vector<FieldElement> r;
        r.reserve(c_.size());
        for (const auto& x : c_) r.push_back(-x);
        return Poly(f_, std::move(r));
    }

    Poly operator*(const Poly& o) const {
        check(o);
        if (is_zero() || o.is_zero()) return Poly(f_);
        std::vector<FieldElement> r(c_.size() + o.c_.size() - 1, zero(f_));
        for (size_t i = 0; i < c_.size(); ++i) {
            if (c_[i].is_zero()) continue;
            for (size_t j = 0; j < o.c_.size(); ++j) r[i + j] = r[i + j] + c_[i] * o.c_[j];
        }
        return Poly(f_, std::move(r));
    }

    Poly operator*(const FieldElement& s) const {
        std::vector<FieldElement> r;
        r.reserve(c_.size());
        for (const auto& x : c_) r.push_back(x * s);
        return Poly(f_, std::move(r));
    }

    /// Euclidean division; divisor must be nonzero.
    std::pair<Poly, Poly> divmod(const Poly& b) const {
        check(b);
        if (b.is_zero()) throw DivisionByZero("polynomial division by zero");
        if (degree() < b.degree()) return {Poly(f_), *this};
        FieldElement lcinv = b.lc().inverse();
        std::vector<FieldElement> rem = c_;
        std::vector<FieldElement> quot(c_.size() - b.c_.size() + 1, zero(f_));
        for (size_t top = rem.size(); top >= b.c_.size(); --top) {
            if (rem[top - 1].is_zero()) continue;
            size_t shift = top - b.c_.size();
            FieldElement q = rem[top - 1] * lcinv;
            quot[shift] = q;
            for (size_t j = 0; j < b.c_.size(); ++j) rem[shift + j] = rem[shift + j] - q * b.c_[j];
        }
        return {Poly(f_, std::move(quot)), Poly(f_, std::move(rem))};
    }

    Poly operator/(const Poly& b) const { return divmod(b).first; }
    Poly operator%(const Poly& b) const { return divmod(b).second; }

    FieldElement eval(const FieldElement& x) const {
        FieldElement r = zero(f_);
        for (size_t i = c_.size(); i-- > 0;) r = r * x + c_[i];
        return r;
    }

    Poly make_monic() const {
        if (is_zero()) return *this;
        return *this * lc().inverse();
    }

    Poly derivative() const {
        if (c_.size() <= 1) return Poly(f_);
        std::vector<FieldElement> r;
        r.reserve(c_.size() - 1);
        for (size_t i = 1; i < c_.size(); ++i) r.push_back(c_[i] * from_uint(f_, static_cast<std::uint64_t>(i)));
        return Poly(f_, std::move(r));
    }

    /// x^k * this.
    Poly shift(size_t k) const {
        if (is_zero()) return *this;
        std::vector<FieldElement> r(k, zero(f_));
        r.insert(r.end(), c_.begin(), c_.end());
        return Poly(f_, std::move(r));
    }

private:
    void check(const Poly& o) const {
        if (!same_field(f_, o.f_)) throw DescriptorMismatch("polynomials over different fields");
    }
    void trim() {
        while (!c_.empty() && c_.back().is_zero()) c_.pop_back();
    }

    FieldPtr f_;
    std::vector<FieldElement> c_;
};

inline Poly poly_zero(const FieldPtr& f) { return Poly(f); }
inline Poly poly_const(const FieldPtr& f, const FieldElement& c) { return Poly(f, {c}); }
inline Poly poly_one(const FieldPtr& f) { return poly_const(f, one(f)); }
inline Poly poly_x(const FieldPtr& f) { return Poly(f, {zero(f), one(f)}); }

inline Poly poly_from_ints(const FieldPtr& f, std::initializer_list<std::int64_t> cs) {
    std::vector<FieldElement> c;
    for (auto v : cs) c.push_back(from_int(f, Int(v)));
    return Poly(f, std::move(c));
}

/// Monic gcd; gcd(0, 0) = 0.
inline Poly poly_gcd(Poly a, Poly b) {
    while (!b.is_zero()) {
        Poly r = a % b;
        a = std::move(b);
        b = std::move(r);
    }
    return a.make_monic();
}

/// Extended Euclid: returns (g, s, t) with s*a + t*b = g, g monic (or zero).
inline std::tuple<Poly, Poly, Poly> poly_xgcd(const Poly& a, const Poly& b) {
    const FieldPtr& f = a.field();
    Poly r0 = a, r1 = b;
    Poly s0 = poly_one(f), s1 = poly_zero(f);
    Poly t0 = poly_zero(f), t1 = poly_one(f);
    while (!r1.is_zero()) {
        auto [quot, rem] = r0.divmod(r1);
        Poly s2 = s0 - quot * s1;
        Poly t2 = t0 - quot * t1;
        r0 = std::move(r1); r1 = std::move(rem);
        s0 = std::move(s1); s1 = std::move(s2);
        t0 = std::move(t1); t1 = std::move(t2);
    }
    if (r0.is_zero()) return {r0, s0, t0};
    FieldElement inv = r0.lc().inverse();
    return {r0 * inv, s0 * inv, t0 * inv};
}

/// Res(A, B) with the convention Res(A, B) = lc(A)^deg(B) * prod B(alpha_i)
/// over the roots of A, so Res(x - a, u) = u(a) and Res(A, const c) = c^deg A.
inline FieldElement resultant(const Poly& a, const Poly& b) {
    const FieldPtr& f = a.field();
    if (a.is_zero() || b.is_zero()) return zero(f);
    if (a.degree() == 0) return pow(a.lc(), Int(b.degree()));
    if (b.degree() == 0) return pow(b.lc(), Int(a.degree()));
    Poly r = a % b;
    if (r.is_zero()) return zero(f);
    FieldElement sign = one(f);
    if ((a.degree() & 1) && (b.degree() & 1)) sign = -sign;
    return sign * pow(b.lc(), Int(a.degree() - r.degree())) * resultant(b, r);
}

/// prod_{u(alpha)=0} g(alpha) for monic u (empty product = 1).
inline FieldElement eval_at_roots(const Poly& g, const Poly& u) {
    if (!u.is_monic() && u.degree() != 0)
        throw InvariantViolation("eval_at_roots expects a monic polynomial");
    if (u.degree() <= 0) return one(g.field());
    if (g.is_zero()) return zero(g.field());
    return resultant(u, g);
}

/// base^e mod m (m nonzero, deg m >= 1).
inline Poly poly_powmod(const Poly& base, const Int& e, const Poly& m) {
    Poly result = poly_one(base.field());
    Poly b = base % m;
    for (int i = static_cast<int>(bit_length(e)) - 1; i >= 0; --i) {
        result = result * result % m;
        if (bit_test(e, static_cast<unsigned>(i))) result = result * b % m;
    }
    return result;
}

/// Lagrange interpolation through distinct-x points.
inline Poly interpolate(const FieldPtr& f, const std::vector<std::pair<FieldElement, FieldElement>>& pts) {
    Poly acc = poly_zero(f);
    for (size_t i = 0; i < pts.size(); ++i) {
        Poly li = poly_one(f);
        FieldElement denom = one(f);
        for (size_t j = 0; j < pts.size(); ++j) {
            if (i == j) continue;
            li = li * Poly(f, {-pts[j].first, one(f)});
            denom = denom * (pts[i].first - pts[j].first);
        }
        acc = acc + li * (pts[i].second / denom);
    }
    return acc;
}

/// One root of f inside its coefficient field, if any: Cantor-Zassenhaus
/// equal-degree splitting restricted to the part of f that splits over F.
inline std::optional<FieldElement> find_root(const Poly& f, Rng& rng) {
    const FieldPtr& F = f.field();
    if (f.degree() < 1) return std::nullopt;
    Int Q = F->order();
    Poly x = poly_x(F);
    Poly w = poly_gcd(f, poly_powmod(x, Q, f) - x);
    if (w.degree() < 1) return std::nullopt;
    for (int attempt = 0; w.degree() > 1; ++attempt) {
        if (attempt > 256) throw SearchExhausted("equal-degree splitting failed to converge");
        Poly shifted = Poly(F, {random_element(F, rng), one(F)});
        Poly g = poly_gcd(w, poly_powmod(shifted, (Q - 1) / 2, w) - poly_one(F));
        if (g.degree() > 0 && g.degree() < w.degree())
            w = 2 * g.degree() <= w.degree() ? g : (w / g).make_monic();
    }
    return -w.coeff(0);
}

/// Embedding F_{p^s} -> F_{p^t} for s | t, realized by mapping the source
/// generator to a root of the source modulus in the target field.
class SubfieldEmbedding {
public:
    SubfieldEmbedding() = default;

    SubfieldEmbedding(FieldPtr src, FieldPtr dst) : src_(std::move(src)), dst_(std::move(dst)) {
        if (src_->p() != dst_->p() || dst_->degree() % src_->degree() != 0)
            throw NotADivisor("no subfield embedding: source degree must divide target degree");
        if (src_->degree() == 1) {
            root_ = zero(dst_);  // unused: prime-subfield elements are constants
            return;
        }
        if (same_field(src_, dst_)) {  // identity, not an arbitrary automorphism
            root_ = make_element(dst_, {0, 1});
            return;
        }
        std::vector<FieldElement> mod;
        for (auto c : src_->modulus()) mod.push_back(from_uint(dst_, c));
        Rng rng(0x706f6c79ULL + src_->degree() * 131071ULL + dst_->degree());
        auto r = find_root(Poly(dst_, std::move(mod)), rng);
        if (!r) throw InvariantViolation("source modulus has no root in the target field");
        root_ = *r;
    }

    const FieldPtr& source() const noexcept { return src_; }
    const FieldPtr& target() const noexcept { return dst_; }

    FieldElement operator()(const FieldElement& a) const {
        if (!same_field(a.field(), src_)) throw DescriptorMismatch("embedding applied to foreign element");
        FieldElement r = zero(dst_);
        for (size_t i = a.coeffs().size(); i-- > 0;) r = r * root_ + from_uint(dst_, a.coeffs()[i]);
        return r;
    }

    Poly operator()(const Poly& g) const {
        std::vector<FieldElement> c;
        c.reserve(g.coeffs().size());
        for (const auto& x : g.coeffs()) c.push_back((*this)(x));
        return Poly(dst_, std::move(c));
    }

private:
    FieldPtr src_, dst_;
    FieldElement root_;
};

}  // namespace hypair
