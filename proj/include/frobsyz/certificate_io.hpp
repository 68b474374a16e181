#ifndef FROBSYZ_CERTIFICATE_IO_HPP
#define FROBSYZ_CERTIFICATE_IO_HPP

#include <cstdint>
#include <string>

#include <json.hpp>

#include "semistability.hpp"
#include "tight_closure.hpp"

namespace frobsyz {

using Json = nlohmann::ordered_json;

inline constexpr int kSchemaVersion = 1;
inline constexpr const char* kToolVersion = "frobsyz 0.1.0";

inline Json to_json(const DestabCertificate& c) {
    Json j;
    j["schema"] = kSchemaVersion;
    j["kind"] = "destabilization_certificate";
    j["source"] = c.source;
    j["p"] = c.p;
    j["a"] = c.a;
    j["d"] = c.d;
    j["e"] = c.e;
    j["q"] = c.q;
    j["k"] = c.k;
    j["twist"] = c.twist;
    j["section"] = Json::array({c.section[0].to_string(), c.section[1].to_string(), c.section[2].to_string()});
    j["degree"] = c.degree;
    j["slope"] = c.slope.str();
    j["slope_sub"] = c.slope_sub.str();
    j["slope_quotient"] = c.slope_quotient.str();
    j["normalized_gap"] = c.normalized_gap.str();
    j["smooth"] = c.smooth;
    j["inconclusive"] = false;
    return j;
}

inline Json to_json(const HNData& h) {
    return Json{{"bundle_degree", h.bundle_degree},
                {"sub_slope", h.sub_slope.str()},
                {"quotient_slope", h.quotient_slope.str()},
                {"normalized_gap", h.normalized_gap.str()}};
}

inline std::string to_string(const LaurentTerm& t) {
    return std::string(t.sign < 0 ? "-" : "") + "X^" + std::to_string(t.x) + "*Y^" + std::to_string(t.y) + "*Z^" +
           std::to_string(t.z);
}

inline Json to_json(const TCReport& r) {
    const TCParameters& t = r.params;
    Json j;
    j["schema"] = kSchemaVersion;
    j["kind"] = "tight_closure_report";
    j["p"] = t.p;
    j["b"] = t.b;
    j["a"] = t.a;
    j["e"] = t.e;
    j["d"] = t.d;
    j["q"] = t.q;
    j["u"] = t.u;
    j["k"] = t.k;
    j["m"] = t.m;
    j["preconditions"] = Json{{"ud_ge_bq_plus_p", t.ud_ge_bq_plus_p()},
                              {"u_minus_1_d_lt_bq", t.u_minus_1_d_lt_bq()},
                              {"p_not_dividing_u", t.p_not_dividing_u()}};
    j["smooth"] = t.smooth();
    j["formula_star"] = Json{{"ideal", r.formula.ideal}, {"threshold", r.formula.threshold.str()}};
    j["test_element"] = GradedPoly::monomial(PrimeField(t.p), {t.b, t.b, t.b}).to_string();
    j["test_element_in_ideal"] = r.test_element_in_ideal;
    j["curve_class"] = Json{{"syzygy_components",
                             Json::array({to_string(r.curve_class.syzygy_components[0]),
                                          to_string(r.curve_class.syzygy_components[1]), "0"})},
                            {"image", to_string(r.curve_class.image)},
                            {"image_reduced", to_string(r.curve_class.image_reduced)},
                            {"sheaf_degree", r.curve_class.image_sheaf_degree}};
    j["class_degree"] = r.p1_class.degree;
    j["global_sign"] = r.p1_class.global_sign;
    Json terms = Json::array();
    for (const auto& [ij, c] : r.p1_class.coefficients) terms.push_back(Json{{"coeff", c}, {"x", ij.first}, {"y", ij.second}});
    j["surviving_terms"] = terms;
    j["class_nonzero"] = !r.p1_class.is_zero();
    j["failing"] = r.failing;
    j["steps"] = r.steps;
    j["verdict"] = r.verdict == TCVerdict::certified ? "certified" : "inconclusive";
    return j;
}

inline Json to_json(std::uint64_t p, std::uint64_t a, std::uint64_t e, const DeviationBound& b) {
    Json j;
    j["schema"] = kSchemaVersion;
    j["kind"] = "deviation_bound";
    j["p"] = p;
    j["a"] = a;
    j["e"] = e;
    j["d"] = b.d;
    j["q"] = b.q;
    j["gap"] = b.gap.str();
    j["bound"] = b.bound.str();
    j["gap_ge_bound"] = b.gap >= b.bound;
    return j;
}

/// Outcome of re-checking a stored certificate or scan record.
struct VerifyResult {
    bool ok;
    std::string failure;  // name of the first failing check

    static VerifyResult pass() { return {true, {}}; }
    static VerifyResult fail(std::string what) { return {false, std::move(what)}; }
};

/// Thrown for JSON that lacks required fields or has the wrong types.
class MalformedInput : public Error {
public:
    using Error::Error;
};

namespace detail {

template <typename T>
T field_as(const Json& j, const char* key) {
    if (!j.is_object() || !j.contains(key)) throw MalformedInput(std::string("missing field '") + key + "'");
    try {
        return j.at(key).get<T>();
    } catch (const nlohmann::json::exception&) {
        throw MalformedInput(std::string("field '") + key + "' has the wrong type");
    }
}

inline std::uint64_t uint_field(const Json& j, const char* key) {
    const Json v = j.contains(key) ? j.at(key) : Json();
    if (!v.is_number_integer() || (v.is_number_integer() && !v.is_number_unsigned() && v.get<std::int64_t>() < 0))
        throw MalformedInput(std::string("field '") + key + "' must be a nonnegative integer");
    return v.get<std::uint64_t>();
}

inline std::int64_t int_field(const Json& j, const char* key) {
    const Json v = j.contains(key) ? j.at(key) : Json();
    if (!v.is_number_integer()) throw MalformedInput(std::string("field '") + key + "' must be an integer");
    return v.get<std::int64_t>();
}

inline Rational rational_field(const Json& j, const char* key) {
    const auto s = field_as<std::string>(j, key);
    try {
        return Rational::parse(s);
    } catch (const std::exception&) {
        throw MalformedInput(std::string("field '") + key + "' is not a canonical rational");
    }
}

}  // namespace detail

/// Re-checks every relation a destabilization certificate claims, without searching:
/// parameter bookkeeping, the slope inequality, the section's syzygy relation under
/// normal_form, and the HN slope fields. Throws MalformedInput for structural problems.
inline VerifyResult verify_certificate(const Json& j) {
    using detail::int_field;
    using detail::uint_field;
    if (detail::field_as<int>(j, "schema") != kSchemaVersion) return VerifyResult::fail("schema version");
    const std::uint64_t p = uint_field(j, "p"), a = uint_field(j, "a"), d = uint_field(j, "d"), e = uint_field(j, "e"),
                        q = uint_field(j, "q");
    const std::int64_t k = int_field(j, "k"), twist = int_field(j, "twist"), degree = int_field(j, "degree");
    const bool smooth = detail::field_as<bool>(j, "smooth");
    const bool inconclusive = detail::field_as<bool>(j, "inconclusive");
    const auto source = detail::field_as<std::string>(j, "source");
    const Rational slope = detail::rational_field(j, "slope"), slope_sub = detail::rational_field(j, "slope_sub"),
                   slope_quotient = detail::rational_field(j, "slope_quotient"),
                   gap = detail::rational_field(j, "normalized_gap");
    const Json section = j.contains("section") ? j.at("section") : Json();
    if (!section.is_array() || section.size() != 3) throw MalformedInput("field 'section' must hold three polynomials");
    for (const auto& s : section)
        if (!s.is_string()) throw MalformedInput("section entries must be strings");

    if (p >= (std::uint64_t{1} << 31) || !is_prime(p)) return VerifyResult::fail("p is not prime");
    if (a == 0) return VerifyResult::fail("a must be positive");
    if (d == 0) return VerifyResult::fail("d must be positive");
    if (inconclusive) return VerifyResult::fail("certificate marked inconclusive");
    if (smooth != (d % p != 0)) return VerifyResult::fail("smooth flag disagrees with p | d");
    if (!smooth) return VerifyResult::fail("curve is not smooth");
    if (source != "construction" && source != "search") return VerifyResult::fail("unknown source");

    std::uint64_t pe;
    try {
        pe = detail::checked_pow(p, e, "q");
    } catch (const OverflowError&) {
        return VerifyResult::fail("q = p^e");
    }
    if (q != pe) return VerifyResult::fail("q = p^e");
    std::uint64_t aq_u, dp_u;
    if (__builtin_mul_overflow(a, q, &aq_u) || __builtin_mul_overflow(d, p, &dp_u) || aq_u > INT64_MAX / 4 ||
        dp_u > INT64_MAX / 4)
        return VerifyResult::fail("parameters out of range");
    const auto aq = static_cast<std::int64_t>(aq_u);
    if (twist < 0 || twist > INT64_MAX / 4) return VerifyResult::fail("twist out of range");
    if (k != twist - aq) return VerifyResult::fail("k = twist - aq");
    if (k <= 0) return VerifyResult::fail("twist window: twist must exceed aq");
    if (source == "construction" && twist != static_cast<std::int64_t>(dp_u))
        return VerifyResult::fail("construction twist = dp");

    // slope inequality: slope(O_C) = 0 > slope of the bundle
    if (degree >= 0 || 2 * twist >= 3 * aq) return VerifyResult::fail("slope inequality: bundle degree must be negative");
    if (static_cast<__int128>(degree) != static_cast<__int128>(2 * twist - 3 * aq) * static_cast<__int128>(d)) return VerifyResult::fail("degree = (2 twist - 3aq) d");
    if (!(slope == Rational(degree, 2))) return VerifyResult::fail("bundle slope = degree / 2");
    if (!(slope_sub == Rational(0))) return VerifyResult::fail("sub-bundle slope = 0");
    if (!(slope_quotient == Rational(degree) - slope_sub)) return VerifyResult::fail("degree additivity");
    if (!(gap == (slope_sub - slope_quotient) / Rational(static_cast<std::int64_t>(q))))
        return VerifyResult::fail("normalized gap = (slope_sub - slope_quotient) / q");

    const PrimeField field(p);
    const SyzygySpec spec = SyzygySpec::uniform(field, d, aq_u);
    const FermatRing ring = spec.ring();
    std::array<GradedPoly, 3> comps{GradedPoly(field, 0), GradedPoly(field, 0), GradedPoly(field, 0)};
    for (int i = 0; i < 3; ++i) {
        const auto text = section[static_cast<std::size_t>(i)].get<std::string>();
        try {
            comps[i] = GradedPoly::parse(field, static_cast<std::uint64_t>(twist - aq), text);
        } catch (const std::exception& ex) {
            return VerifyResult::fail("section component " + std::to_string(i + 1) + ": " + ex.what());
        }
        if (!(ring.reduce(comps[i]) == comps[i]))
            return VerifyResult::fail("section component " + std::to_string(i + 1) + " not in normal form");
    }
    if (comps[0].is_zero() && comps[1].is_zero() && comps[2].is_zero()) return VerifyResult::fail("nonzero section");
    const auto gens = spec.generators();
    GradedPoly sum(field, static_cast<std::uint64_t>(twist));
    for (int i = 0; i < 3; ++i) sum += comps[i] * gens[i];
    if (!ring.reduce(sum).is_zero()) return VerifyResult::fail("syzygy relation s1 X^aq + s2 Y^aq + s3 Z^aq = 0");
    return VerifyResult::pass();
}

/// Accepts a certificate or a scan record (any outcome).
inline VerifyResult verify_record(const Json& j) {
    if (!j.is_object()) throw MalformedInput("expected a JSON object");
    const auto kind = detail::field_as<std::string>(j, "kind");
    if (kind == "destabilization_certificate") return verify_certificate(j);
    if (kind != "scan_record") throw MalformedInput("unknown kind '" + kind + "'");
    const auto outcome = detail::field_as<std::string>(j, "outcome");
    if (outcome == "certificate") return verify_certificate(j);
    const std::uint64_t p = detail::uint_field(j, "p"), d = detail::uint_field(j, "d");
    const bool smooth = detail::field_as<bool>(j, "smooth");
    const bool inconclusive = detail::field_as<bool>(j, "inconclusive");
    if (p >= (std::uint64_t{1} << 31) || !is_prime(p)) return VerifyResult::fail("p is not prime");
    if (d == 0) return VerifyResult::fail("d must be positive");
    if (smooth != (d % p != 0)) return VerifyResult::fail("smooth flag disagrees with p | d");
    if (!inconclusive) return VerifyResult::fail("record without certificate must be inconclusive");
    if (outcome == "skipped") return smooth ? VerifyResult::fail("skipped record on a smooth curve") : VerifyResult::pass();
    if (outcome == "error") return VerifyResult::pass();
    if (outcome == "none") return smooth ? VerifyResult::pass() : VerifyResult::fail("searched a singular curve");
    throw MalformedInput("unknown outcome '" + outcome + "'");
}

}  // namespace frobsyz

#endif  // FROBSYZ_CERTIFICATE_IO_HPP
