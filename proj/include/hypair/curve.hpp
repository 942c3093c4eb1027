// hypair: pairings on genus-2 hyperelliptic curves
// Copyright 2026 The hypair Authors.
// SPDX-License-Identifier: Apache-2.0
#pragma once

#include <functional>
#include <thread>
#include <utility>
#include <vector>

#include "hypair/poly.hpp"

namespace hypair {

/// A hyperelliptic curve y^2 + H(x) y = F(x) over `base`, with F monic of
/// degree 2g+1 and deg H <= g, so there is a single point at infinity.
struct CurveParams {
    unsigned genus = 2;
    Poly H;
    Poly F;
    FieldPtr base;
};

namespace detail {
class FrobeniusMap;
}

/// Curve coefficients carried into an ambient extension field. base_degree is
/// the degree over F_p of the field the curve was defined over, so the
/// q-power Frobenius on the ambient field is base_degree applications of the
/// p-power map.
struct LiftedCurve {
    FieldPtr field;
    Poly H;
    Poly F;
    unsigned genus = 2;
    unsigned base_degree = 1;
    std::shared_ptr<const detail::FrobeniusMap> frob;  // cached p-power map
};

struct AffinePoint {
    FieldElement x;
    FieldElement y;
};

/// Characteristic polynomial of the q-power Frobenius on the Jacobian,
/// integer coefficients low-to-high, degree 2g, monic.
struct CharPoly {
    std::vector<Int> c;
    Int q;
    unsigned genus = 2;

    Int eval(const Int& x) const {
        Int r = 0;
        for (size_t i = c.size(); i-- > 0;) r = r * x + c[i];
        return r;
    }
};

enum class Classification { ordinary, supersingular, other };

inline const char* to_string(Classification c) {
    switch (c) {
        case Classification::ordinary: return "ordinary";
        case Classification::supersingular: return "supersingular";
        default: return "other";
    }
}

// --- basic curve helpers ----------------------------------------------------

LiftedCurve lift_curve(const CurveParams& cp, const FieldPtr& ambient);  // defined after FrobeniusMap

inline FieldElement curve_rhs(const LiftedCurve& c, const AffinePoint& pt) {
    return pt.y * pt.y + c.H.eval(pt.x) * pt.y - c.F.eval(pt.x);
}

inline bool on_curve(const LiftedCurve& c, const AffinePoint& pt) {
    return curve_rhs(c, pt).is_zero();
}

/// The hyperelliptic involution (x, y) -> (x, -y - H(x)).
inline AffinePoint involution(const LiftedCurve& c, const AffinePoint& pt) {
    if (!on_curve(c, pt)) throw PointNotOnCurve("involution input does not satisfy the curve equation");
    return {pt.x, -pt.y - c.H.eval(pt.x)};
}

/// Enumerate every element of a flat field (odometer over coefficients).
inline void for_each_element(const FieldPtr& f, const std::function<void(const FieldElement&)>& fn) {
    wordpoly::Vec c(f->degree(), 0);
    while (true) {
        fn(FieldElement(f, c));
        unsigned i = 0;
        while (i < f->degree()) {
            if (++c[i] < f->p()) break;
            c[i] = 0;
            ++i;
        }
        if (i == f->degree()) return;
    }
}

/// Element with index n in the base-p odometer order used above.
inline FieldElement element_at_index(const FieldPtr& f, std::uint64_t n) {
    wordpoly::Vec c(f->degree());
    for (auto& w : c) {
        w = n % f->p();
        n /= f->p();
    }
    return FieldElement(f, std::move(c));
}

/// Random point with x in the given ambient field (y solved from the curve
/// equation; non-residue x values are resampled).
inline AffinePoint random_point(const LiftedCurve& c, Rng& rng) {
    const FieldPtr& f = c.field;
    FieldElement inv2 = from_uint(f, 2).inverse();
    while (true) {
        FieldElement x = random_element(f, rng);
        FieldElement hx = c.H.eval(x);
        FieldElement disc = hx * hx + from_uint(f, 4) * c.F.eval(x);
        auto s = sqrt(disc);
        if (!s) continue;
        FieldElement y = (*s - hx) * inv2;
        if (rng() & 1) y = -y - hx;  // pick either sheet
        return {x, y};
    }
}

// --- validation ---------------------------------------------------------

namespace detail {

/// Affine singular points satisfy 2y + H = 0, so (with p odd) they are the
/// double roots of G = F + H^2/4. gcd(G, G') sees all of them over the
/// algebraic closure.
inline bool singular_gcd_check(const CurveParams& cp) {
    FieldElement quarter = from_uint(cp.base, 4).inverse();
    Poly G = cp.F + cp.H * cp.H * quarter;
    return poly_gcd(G, G.derivative()).degree() > 0;
}

inline bool singular_scan_check(const CurveParams& cp) {
    unsigned m = cp.base->degree();
    FieldPtr ext = build_extension(Int(cp.base->p()), 2 * m, 0);
    LiftedCurve lc = lift_curve(cp, ext);
    Poly Hp = lc.H.derivative(), Fp = lc.F.derivative();
    FieldElement inv2 = from_uint(ext, 2).inverse();
    bool singular = false;
    for_each_element(ext, [&](const FieldElement& x) {
        if (singular) return;
        FieldElement y = -lc.H.eval(x) * inv2;  // forced by d/dy = 0
        if (!curve_rhs(lc, {x, y}).is_zero()) return;
        if ((Hp.eval(x) * y - Fp.eval(x)).is_zero()) singular = true;
    });
    return singular;
}

}  // namespace detail

/// Checks the CurveParams invariants; throws on the first violation.
/// Singularity detection scans F_{q^2} exhaustively on small fields and falls
/// back to the equivalent gcd(F + H^2/4, ...) criterion above 2^20 elements;
/// a double root of F + H^2/4 has degree <= g over F_q, so both are exact.
inline void validate_curve(const CurveParams& cp) {
    if (cp.genus != 1 && cp.genus != 2)
        throw DegreeOutOfRange("genus must be 1 or 2");
    if (cp.base->p() < 5)
        throw InvariantViolation("characteristic must be at least 5");
    if (cp.F.degree() != static_cast<int>(2 * cp.genus + 1))
        throw DegreeOutOfRange("F must have degree exactly 2g+1");
    if (!cp.F.is_monic()) throw NotMonic("F must be monic");
    if (cp.H.degree() > static_cast<int>(cp.genus))
        throw DegreeOutOfRange("H must have degree at most g");
    if (!same_field(cp.H.field(), cp.base) || !same_field(cp.F.field(), cp.base))
        throw DescriptorMismatch("curve coefficients must live in the base field");
    Int scan_size = int_pow(Int(cp.base->p()), 2 * cp.base->degree());
    bool singular = scan_size <= (Int(1) << 20) ? detail::singular_scan_check(cp)
                                                : detail::singular_gcd_check(cp);
    if (singular) throw SingularCurve("curve has an affine singular point");
}

// --- point counting ---------------------------------------------------------

namespace detail {

/// sigma(a) = a^p as a linear map over F_p, tabulated once per field.
class FrobeniusMap {
public:
    explicit FrobeniusMap(const FieldPtr& f) : f_(f) {
        unsigned d = f->degree();
        cols_.resize(d);
        for (unsigned i = 0; i < d; ++i) {
            wordpoly::Vec basis(i + 1, 0);
            basis[i] = 1;
            cols_[i] = pow(FieldElement(f, basis), Int(f->p())).coeffs();
        }
    }

    FieldElement operator()(const FieldElement& a) const {
        unsigned d = f_->degree();
        wordpoly::Vec out(d, 0);
        for (unsigned i = 0; i < d; ++i) {
            std::uint64_t ai = a.coeffs()[i];
            if (ai == 0) continue;
            for (unsigned j = 0; j < d; ++j) out[j] = (out[j] + ai * cols_[i][j]) % f_->p();
        }
        return FieldElement(f_, std::move(out));
    }

private:
    FieldPtr f_;
    std::vector<wordpoly::Vec> cols_;
};

/// Quadratic character on F_{p^d} via the norm down to F_p and a residue
/// table; avoids a modpow per evaluation in the counting loop.
class QuadraticCharacter {
public:
    explicit QuadraticCharacter(const FieldPtr& f) : f_(f), frob_(f) {
        std::uint64_t p = f->p();
        table_.assign(p, -1);
        table_[0] = 0;
        for (std::uint64_t i = 1; i < p; ++i) table_[i * i % p] = 1;
    }

    int operator()(const FieldElement& a) const {
        if (a.is_zero()) return 0;
        FieldElement n = a;
        FieldElement acc = a;
        for (unsigned j = 1; j < f_->degree(); ++j) {
            n = frob_(n);
            acc = acc * n;
        }
        return table_[acc.coeffs()[0]];
    }

private:
    FieldPtr f_;
    FrobeniusMap frob_;
    std::vector<int> table_;
};

}  // namespace detail

inline LiftedCurve lift_curve(const CurveParams& cp, const FieldPtr& ambient) {
    LiftedCurve out;
    out.field = ambient;
    out.genus = cp.genus;
    out.base_degree = cp.base->degree();
    out.frob = std::make_shared<const detail::FrobeniusMap>(ambient);
    if (same_field(cp.base, ambient)) {
        out.H = Poly(ambient, cp.H.coeffs());
        out.F = Poly(ambient, cp.F.coeffs());
    } else {
        SubfieldEmbedding emb(cp.base, ambient);
        out.H = emb(cp.H);
        out.F = emb(cp.F);
    }
    return out;
}

/// a^(p^e) through the cached linear map (e is taken mod the field degree).
inline FieldElement frobenius_iterate(const LiftedCurve& lc, FieldElement a, unsigned e) {
    e %= lc.field->degree();
    for (unsigned i = 0; i < e; ++i) a = (*lc.frob)(a);
    return a;
}

/// N_i = #C(F_{q^i}) by enumeration (including the point at infinity).
/// Guarded at q^i <= 2^24. The x-range is partitioned across threads and
/// the per-chunk tallies merged by summation, so the count is independent
/// of the worker count.
inline Int count_points(const CurveParams& cp, unsigned i) {
    if (i == 0) throw DegreeOutOfRange("extension degree must be positive");
    Int size = int_pow(Int(cp.base->p()), cp.base->degree() * i);
    if (size > (Int(1) << 24)) throw TooLarge("q^i exceeds the enumeration guard 2^24");
    FieldPtr ext = i == 1 ? cp.base : build_extension(Int(cp.base->p()), cp.base->degree() * i, 0);
    LiftedCurve lc = lift_curve(cp, ext);
    detail::QuadraticCharacter chi(ext);
    auto total = static_cast<std::uint64_t>(size);

    auto tally = [&](std::uint64_t lo, std::uint64_t hi) {
        std::int64_t acc = 0;
        for (std::uint64_t n = lo; n < hi; ++n) {
            FieldElement x = element_at_index(ext, n);
            FieldElement hx = lc.H.eval(x);
            FieldElement disc = hx * hx + from_uint(ext, 4) * lc.F.eval(x);
            acc += 1 + chi(disc);
        }
        return acc;
    };

    unsigned workers = std::min<unsigned>(std::thread::hardware_concurrency(), 8);
    if (workers < 2 || total < (1u << 14)) return Int(1) + tally(0, total);

    std::vector<std::int64_t> partial(workers, 0);
    std::vector<std::thread> pool;
    std::uint64_t chunk = total / workers + 1;
    for (unsigned w = 0; w < workers; ++w)
        pool.emplace_back([&, w] {
            std::uint64_t lo = w * chunk;
            std::uint64_t hi = std::min<std::uint64_t>(lo + chunk, total);
            if (lo < hi) partial[w] = tally(lo, hi);
        });
    for (auto& th : pool) th.join();
    Int count = 1;  // P_infinity
    for (auto p : partial) count += p;
    return count;
}

// --- Frobenius characteristic polynomial ------------------------------------

/// P(x) from N_1..N_g via Newton's identities on the power sums
/// q^i + 1 - N_i, completed by the functional equation
/// x^{2g} P(q/x) = q^g P(x).
inline CharPoly frobenius_charpoly(const CurveParams& cp) {
    unsigned g = cp.genus;
    Int q = cp.base->order();
    std::vector<Int> power_sums(g + 1);  // power_sums[i] = sum alpha_j^i
    for (unsigned i = 1; i <= g; ++i) power_sums[i] = int_pow(q, i) + 1 - count_points(cp, i);

    std::vector<Int> e(g + 1);  // elementary symmetric functions of the roots
    e[0] = 1;
    for (unsigned i = 1; i <= g; ++i) {
        Int acc = 0;
        for (unsigned j = 1; j <= i; ++j) acc += (j & 1 ? 1 : -1) * e[i - j] * power_sums[j];
        if (acc % i != 0) throw InvariantViolation("Newton identity produced a non-integer coefficient");
        e[i] = acc / i;
    }

    CharPoly out;
    out.q = q;
    out.genus = g;
    out.c.assign(2 * g + 1, 0);
    out.c[2 * g] = 1;
    for (unsigned i = 1; i <= g; ++i) out.c[2 * g - i] = (i & 1 ? -e[i] : e[i]);
    for (unsigned i = 0; i < g; ++i) out.c[i] = int_pow(q, g - i) * out.c[2 * g - i];
    if (out.eval(1) <= 0) throw InvariantViolation("P(1) must be positive");
    return out;
}

// --- Jacobian order over extensions ------------------------------------------

namespace detail {

using IntMatrix = std::vector<std::vector<Int>>;

inline IntMatrix identity_matrix(size_t n) {
    IntMatrix m(n, std::vector<Int>(n, 0));
    for (size_t i = 0; i < n; ++i) m[i][i] = 1;
    return m;
}

inline IntMatrix mat_mul(const IntMatrix& a, const IntMatrix& b) {
    size_t n = a.size();
    IntMatrix r(n, std::vector<Int>(n, 0));
    for (size_t i = 0; i < n; ++i)
        for (size_t k = 0; k < n; ++k) {
            if (a[i][k] == 0) continue;
            for (size_t j = 0; j < n; ++j) r[i][j] += a[i][k] * b[k][j];
        }
    return r;
}

inline IntMatrix mat_pow(IntMatrix base, unsigned e) {
    IntMatrix r = identity_matrix(base.size());
    while (e) {
        if (e & 1) r = mat_mul(r, base);
        base = mat_mul(base, base);
        e >>= 1;
    }
    return r;
}

/// Fraction-free Bareiss determinant.
inline Int mat_det(IntMatrix m) {
    size_t n = m.size();
    Int sign = 1, prev = 1;
    for (size_t k = 0; k + 1 < n; ++k) {
        if (m[k][k] == 0) {
            size_t swap_row = k + 1;
            while (swap_row < n && m[swap_row][k] == 0) ++swap_row;
            if (swap_row == n) return 0;
            std::swap(m[k], m[swap_row]);
            sign = -sign;
        }
        for (size_t i = k + 1; i < n; ++i)
            for (size_t j = k + 1; j < n; ++j)
                m[i][j] = (m[i][j] * m[k][k] - m[i][k] * m[k][j]) / prev;
        prev = m[k][k];
    }
    return sign * m[n - 1][n - 1];
}

/// Companion matrix of the (monic) charpoly.
inline IntMatrix companion(const CharPoly& cp) {
    size_t n = cp.c.size() - 1;
    IntMatrix m(n, std::vector<Int>(n, 0));
    for (size_t i = 1; i < n; ++i) m[i][i - 1] = 1;
    for (size_t i = 0; i < n; ++i) m[i][n - 1] = -cp.c[i];
    return m;
}

}  // namespace detail

/// #Jac(F_{q^k}) = prod (1 - alpha_j^k) = det(I - M^k) with M the companion
/// matrix of P.
inline Int jacobian_order(const CharPoly& cp, unsigned k) {
    if (k == 0) throw DegreeOutOfRange("extension degree must be positive");
    if (k == 1) return cp.eval(1);
    auto mk = detail::mat_pow(detail::companion(cp), k);
    auto id = detail::identity_matrix(mk.size());
    for (size_t i = 0; i < mk.size(); ++i)
        for (size_t j = 0; j < mk.size(); ++j) mk[i][j] = id[i][j] - mk[i][j];
    Int order = detail::mat_det(mk);
    Int s = isqrt(int_pow(cp.q, k));
    Int lower = int_pow(s - 1 > 0 ? s - 1 : Int(0), 2 * cp.genus);
    Int upper = int_pow(s + 2, 2 * cp.genus);
    if (order < lower || order > upper)
        throw InvariantViolation("Jacobian order escaped the Weil interval");
    return order;
}

// --- ordinary / supersingular classification ---------------------------------

/// p-adic Newton polygon of P. Ordinary: slopes {0,1} in equal number;
/// supersingular: all slopes 1/2 (valuations normalized by m where q = p^m).
inline Classification classify(const CharPoly& cp, const Int& p) {
    unsigned m = 0;
    {
        Int q = cp.q;
        while (q > 1) {
            q /= p;
            ++m;
        }
    }
    std::vector<std::pair<long, long>> pts;  // (i, v_p(c_i)) for c_i != 0
    for (size_t i = 0; i < cp.c.size(); ++i)
        if (cp.c[i] != 0) pts.emplace_back(static_cast<long>(i), static_cast<long>(valuation(cp.c[i], p)));

    // lower convex hull, left to right
    std::vector<std::pair<long, long>> hull;
    for (const auto& pt : pts) {
        while (hull.size() >= 2) {
            auto& a = hull[hull.size() - 2];
            auto& b = hull[hull.size() - 1];
            // keep turn strictly convex downward
            if ((b.first - a.first) * (pt.second - a.second) -
                    (pt.first - a.first) * (b.second - a.second) <=
                0)
                hull.pop_back();
            else
                break;
        }
        hull.push_back(pt);
    }

    // root valuations: each segment of horizontal length L and fall D
    // contributes L roots of valuation D/L (in units of v_p)
    unsigned g = cp.genus;
    long zeros = 0, fulls = 0;
    bool all_half = true;
    for (size_t s = 0; s + 1 < hull.size(); ++s) {
        long L = hull[s + 1].first - hull[s].first;
        long D = hull[s].second - hull[s + 1].second;  // valuation drop
        if (D == 0) zeros += L;
        if (D == static_cast<long>(m) * L) fulls += L;  // slope m -> valuation m
        if (2 * D != static_cast<long>(m) * L) all_half = false;
    }
    if (all_half) return Classification::supersingular;
    if (zeros == static_cast<long>(g) && fulls == static_cast<long>(g)) return Classification::ordinary;
    return Classification::other;
}

/// Quadratic twist of y^2 = F(x) (H = 0) by a non-residue d:
/// F*(x) = d^{2g+1} F(x/d), the monic model of d*y^2 = F.
inline CurveParams quadratic_twist(const CurveParams& cp) {
    if (!cp.H.is_zero()) throw InvariantViolation("quadratic_twist expects an H = 0 model");
    FieldElement d = zero(cp.base);
    for (std::uint64_t c = 2; c < cp.base->p(); ++c) {
        d = from_uint(cp.base, c);
        if (quadratic_character(d) == -1) break;
    }
    if (quadratic_character(d) != -1) throw SearchExhausted("no quadratic non-residue found");
    std::vector<FieldElement> coeffs;
    FieldElement scale = one(cp.base);
    unsigned deg = 2 * cp.genus + 1;
    for (size_t j = 0; j <= deg; ++j) coeffs.push_back(zero(cp.base));
    for (size_t j = 0; j <= deg; ++j) {
        coeffs[deg - j] = cp.F.coeff(deg - j) * scale;
        scale = scale * d;
    }
    CurveParams out{cp.genus, cp.H, Poly(cp.base, std::move(coeffs)), cp.base};
    return out;
}

}  // namespace hypair
