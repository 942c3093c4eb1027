// hypair: pairings on genus-2 hyperelliptic curves
// Copyright 2026 The hypair Authors.
// SPDX-License-Identifier: Apache-2.0
#pragma once

#include <optional>
#include <sstream>
#include <string>

#include <nlohmann/json.hpp>

#include "hypair/pairings.hpp"
#include "hypair/pfsearch.hpp"

namespace hypair {

using json = nlohmann::json;

// Interchange conventions: big integers travel as decimal strings; field
// elements are decimal strings over prime fields and low-to-high arrays of
// decimal strings over extensions. Parsers are tolerant (numbers, strings,
// or arrays) and cite a JSON-pointer-style path on failure.

inline Int int_from_json(const json& j, const std::string& path) {
    try {
        if (j.is_number_integer()) return Int(j.get<long long>());
        if (j.is_string()) return Int(j.get<std::string>());
    } catch (const std::exception&) {
    }
    throw ParseError(path + ": expected an integer or decimal string");
}

inline json int_to_json(const Int& v) { return v.str(); }

inline json field_element_to_json(const FieldElement& a) {
    if (a.field()->degree() == 1) return std::to_string(a.coeffs()[0]);
    json arr = json::array();
    for (auto c : a.coeffs()) arr.push_back(std::to_string(c));
    return arr;
}

inline FieldElement field_element_from_json(const FieldPtr& f, const json& j,
                                            const std::string& path) {
    if (j.is_array()) {
        if (j.size() > f->degree())
            throw ParseError(path + ": coefficient vector longer than the field degree");
        wordpoly::Vec c;
        for (size_t i = 0; i < j.size(); ++i) {
            Int v = int_from_json(j[i], path + "/" + std::to_string(i));
            c.push_back(static_cast<std::uint64_t>(mod_floor(v, Int(f->p()))));
        }
        return FieldElement(f, std::move(c));
    }
    return from_int(f, int_from_json(j, path));
}

inline json poly_to_json(const Poly& p) {
    json arr = json::array();
    for (const auto& c : p.coeffs()) arr.push_back(field_element_to_json(c));
    return arr;
}

inline Poly poly_from_json(const FieldPtr& f, const json& j, const std::string& path) {
    if (!j.is_array()) throw ParseError(path + ": expected a coefficient array (low to high)");
    std::vector<FieldElement> c;
    for (size_t i = 0; i < j.size(); ++i)
        c.push_back(field_element_from_json(f, j[i], path + "/" + std::to_string(i)));
    return Poly(f, std::move(c));
}

struct CurveInput {
    CurveParams curve;
    std::optional<Int> r;  // optional pinned subgroup order
};

inline json curve_to_json(const CurveParams& cp, const std::optional<Int>& r = std::nullopt) {
    json j;
    j["p"] = std::to_string(cp.base->p());
    j["base_degree"] = cp.base->degree();
    if (cp.base->degree() > 1) {
        json mod = json::array();
        for (auto c : cp.base->modulus()) mod.push_back(c);
        j["base_modulus"] = mod;
    }
    j["genus"] = cp.genus;
    j["H"] = poly_to_json(cp.H);
    j["F"] = poly_to_json(cp.F);
    if (r) j["r"] = int_to_json(*r);
    return j;
}

inline CurveInput curve_from_json(const json& j) {
    if (!j.is_object()) throw ParseError("/: expected a curve object");
    for (const char* key : {"p", "genus", "H", "F"})
        if (!j.contains(key)) throw ParseError(std::string("/") + key + ": missing required field");
    Int p = int_from_json(j.at("p"), "/p");
    unsigned degree = j.value("base_degree", 1u);
    FieldPtr base;
    try {
        if (degree == 1) {
            base = FieldDescriptor::prime_field(p);
        } else {
            if (!j.contains("base_modulus"))
                throw ParseError("/base_modulus: required when base_degree > 1");
            wordpoly::Vec mod;
            for (size_t i = 0; i < j.at("base_modulus").size(); ++i)
                mod.push_back(static_cast<std::uint64_t>(
                    mod_floor(int_from_json(j.at("base_modulus")[i],
                                            "/base_modulus/" + std::to_string(i)),
                              p) ));
            mod.back() = 1;
            base = FieldDescriptor::extension(p, mod);
        }
    } catch (const ParseError&) {
        throw;
    } catch (const Error& e) {
        throw ParseError(std::string("/p: ") + e.what());
    }
    CurveInput out;
    out.curve.genus = j.at("genus").get<unsigned>();
    out.curve.base = base;
    out.curve.H = poly_from_json(base, j.at("H"), "/H");
    out.curve.F = poly_from_json(base, j.at("F"), "/F");
    try {
        validate_curve(out.curve);
    } catch (const Error& e) {
        throw ParseError(std::string("/F: invalid curve: ") + e.what());
    }
    if (j.contains("r")) out.r = int_from_json(j.at("r"), "/r");
    return out;
}

inline json divisor_to_json(const ReducedDivisor& d) {
    json j;
    j["u"] = poly_to_json(d.u);
    j["v"] = poly_to_json(d.v);
    j["ext_degree"] = d.ext_degree;
    return j;
}

/// Parses and fully validates a divisor over the given lifted curve. The
/// Mumford invariants are re-checked at the boundary with pointer-carrying
/// errors; a stored ext_degree inconsistent with the coefficients is also
/// rejected.
inline ReducedDivisor divisor_from_json(const LiftedCurve& lc, const json& j) {
    if (!j.is_object()) throw ParseError("/: expected a divisor object");
    for (const char* key : {"u", "v"})
        if (!j.contains(key)) throw ParseError(std::string("/") + key + ": missing required field");
    Poly u = poly_from_json(lc.field, j.at("u"), "/u");
    Poly v = poly_from_json(lc.field, j.at("v"), "/v");
    if (!u.is_monic()) throw ParseError("/u: u(x) must be monic (Mumford condition (1))");
    if (!v.is_zero() && v.degree() >= u.degree())
        throw ParseError("/v: deg v must be less than deg u (Mumford condition (2))");
    ReducedDivisor d;
    try {
        d = make_divisor(lc, std::move(u), std::move(v));
    } catch (const Error& e) {
        throw ParseError(std::string("/u: ") + e.what() + " (Mumford condition (3))");
    }
    if (j.contains("ext_degree")) {
        unsigned claimed = j.at("ext_degree").get<unsigned>();
        unsigned rel = lc.field->degree() / lc.base_degree;
        if (claimed == 0 || rel % claimed != 0)
            throw ParseError("/ext_degree: must divide the pairing-field extension degree");
        if (claimed < d.ext_degree)
            throw ParseError("/ext_degree: coefficients are not defined over the claimed subfield");
        // the stored tag stays the computed minimal field of definition
    }
    return d;
}

inline json pairing_result_to_json(const PairingResult& res) {
    json j;
    j["value"] = field_element_to_json(res.value);
    j["pairing"] = res.pairing;
    j["loop_bits"] = res.loop_bits;
    j["final_exp"] = res.final_exp;
    return j;
}

inline json record_to_json(const CurveRecord& rec) {
    json j;
    j["p"] = std::to_string(rec.curve.base->p());
    j["F"] = poly_to_json(rec.curve.F);
    j["H"] = poly_to_json(rec.curve.H);
    json cp = json::array();
    for (const auto& c : rec.charpoly) cp.push_back(int_to_json(c));
    j["charpoly"] = cp;
    j["jac_order"] = int_to_json(rec.jac_order);
    j["r"] = int_to_json(rec.r);
    j["k"] = rec.k;
    j["rho"] = rec.rho;
    j["class"] = to_string(rec.cls);
    j["simple"] = rec.simple;
    j["mef_degree"] = rec.mef_degree;
    return j;
}

inline std::string record_csv_header() {
    return "p,F,jac_order,r,k,rho,class,simple,mef_degree";
}

inline std::string record_to_csv(const CurveRecord& rec) {
    std::ostringstream os;
    os << rec.curve.base->p() << ",\"";
    for (size_t i = 0; i < rec.curve.F.coeffs().size(); ++i) {
        if (i) os << ' ';
        os << rec.curve.F.coeffs()[i].coeffs()[0];
    }
    os << "\"," << rec.jac_order << ',' << rec.r << ',' << rec.k << ',' << rec.rho << ','
       << to_string(rec.cls) << ',' << (rec.simple ? 1 : 0) << ',' << rec.mef_degree;
    return os.str();
}

/// Builds a pairing context from a parsed curve: uses the pinned r when
/// present, otherwise the largest prime factor of #Jac(F_q) coprime to q.
inline PairingContext context_from_curve(const CurveInput& input, std::uint64_t seed = 0) {
    Int r;
    if (input.r) {
        r = *input.r;
    } else {
        CharPoly cp = frobenius_charpoly(input.curve);
        auto fac = factorize(cp.eval(1));
        if (!fac.complete) throw TooLarge("cannot factor #Jac within the desk-scale budget");
        for (const auto& [prime, e] : fac.factors) {
            (void)e;
            if (prime > r && input.curve.base->order() % prime != 0) r = prime;
        }
        if (r == 0) throw NoTorsion("no usable prime subgroup order found");
    }
    return make_pairing_context(input.curve, r, seed);
}

}  // namespace hypair
