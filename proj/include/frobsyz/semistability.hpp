#ifndef FROBSYZ_SEMISTABILITY_HPP
#define FROBSYZ_SEMISTABILITY_HPP

#include <cstdint>
#include <optional>
#include <string>

#include "syzygy_bundle.hpp"

namespace frobsyz {

/// Frobenius level e and curve degree d for which Syz(X^a,Y^a,Z^a) restricted to
/// the Fermat curve of degree d >= d0 loses semistability after e pullbacks.
struct ParameterChoice {
    std::uint32_t p;
    std::uint64_t a, d0;
    std::uint64_t e, q, d;
    std::int64_t k, m;  // k = dp - aq, m = dp
};

/// Smallest e >= 1 with a p^(e-1) >= d0 whose window a p^(e-1) < d < 3 a p^(e-1) / 2
/// holds some d not divisible by p; d = a p^(e-1) + 1 when admissible, otherwise
/// the smallest admissible d.
inline ParameterChoice find_parameters(std::uint64_t p, std::uint64_t a, std::uint64_t d0) {
    const PrimeField field(p);
    if (a == 0 || d0 == 0) throw std::invalid_argument("a and d0 must be at least 1");
    try {
        for (std::uint64_t e = 1;; ++e) {
            const std::uint64_t base = detail::checked_mul(a, detail::checked_pow(p, e - 1, "p^(e-1)"), "a p^(e-1)");
            if (base < d0) continue;
            const std::uint64_t upper = detail::checked_mul(base, 3, "window");  // 2d < upper
            std::optional<std::uint64_t> pick;
            for (std::uint64_t d = base + 1; 2 * d < upper; ++d)
                if (d % p != 0) {
                    pick = d;
                    break;
                }
            if (!pick) continue;
            const std::uint64_t q = detail::checked_mul(base, p, "q") / a;
            const auto dp = static_cast<std::int64_t>(detail::checked_mul(*pick, p, "dp"));
            const auto aq = static_cast<std::int64_t>(detail::checked_mul(a, q, "aq"));
            return {static_cast<std::uint32_t>(p), a, d0, e, q, *pick, dp - aq, dp};
        }
    } catch (const OverflowError&) {
        throw OverflowError("p^e overflows 64 bits before a valid degree is found; try smaller p, a or d0");
    }
}

/// A nonzero section of Syz(X^aq, Y^aq, Z^aq)(twist) on the Fermat curve whose
/// bundle degree is negative: O_C -> S(twist) destabilizes the e-th Frobenius
/// pullback of Syz(X^a, Y^a, Z^a).
struct DestabCertificate {
    std::uint32_t p;
    std::uint64_t a, d, e, q;
    std::int64_t k;      // twist - aq
    std::int64_t twist;  // degree of the syzygy; dp for the explicit construction
    SectionVector section;
    std::int64_t degree;
    Rational slope;
    Rational slope_sub;       // O_C
    Rational slope_quotient;  // degree - slope_sub, a line bundle
    Rational normalized_gap;  // (slope_sub - slope_quotient) / q
    bool smooth;
    std::string source;  // "construction" or "search"

    SyzygySpec bundle() const { return SyzygySpec::uniform(PrimeField(p), d, a * q, twist); }
};

namespace detail {

inline DestabCertificate make_certificate(const SectionVector& s, std::uint64_t a, std::uint64_t e, std::uint64_t q,
                                          std::string source) {
    const SyzygySpec& pulled = s.spec();
    if (s.is_zero()) throw InternalError("zero section cannot certify");
    if (!s.relation_holds()) throw InternalError("section fails its relation");
    const SyzygySpec bundle(pulled.field, pulled.d, pulled.exponents, s.total_twist());
    const DegreeSlope ds = degree_and_slope(bundle);
    if (ds.degree >= 0) throw InapplicableError("bundle degree " + std::to_string(ds.degree) + " is not negative");
    const Rational sub(0);
    const Rational quotient = Rational(ds.degree) - sub;
    const auto aq = static_cast<std::int64_t>(a * q);
    return DestabCertificate{pulled.field.characteristic(),
                             a,
                             pulled.d,
                             e,
                             q,
                             s.total_twist() - aq,
                             s.total_twist(),
                             s,
                             ds.degree,
                             ds.slope,
                             sub,
                             quotient,
                             (sub - quotient) / Rational(static_cast<std::int64_t>(q)),
                             bundle.ring().smooth(),
                             std::move(source)};
}

inline void require_smooth(std::uint64_t p, std::uint64_t d) {
    if (d != 0 && d % p == 0)
        throw SmoothnessError(std::to_string(p) + " divides " + std::to_string(d) + ": the Fermat curve is not smooth");
}

}  // namespace detail

/// The explicit destabilizing section (X^k, Y^k, Z^k) of Syz(X^aq,Y^aq,Z^aq)(dp),
/// coming from 0 = (X^d+Y^d+Z^d)^p = X^k X^aq + Y^k Y^aq + Z^k Z^aq with k = dp - aq.
inline DestabCertificate certify_destabilization(std::uint64_t p, std::uint64_t a, std::uint64_t d) {
    const PrimeField field(p);
    if (a == 0 || d == 0) throw std::invalid_argument("a and d must be at least 1");
    detail::require_smooth(p, d);
    const std::uint64_t dp = detail::checked_mul(d, p, "dp");
    std::optional<std::uint64_t> level;
    std::uint64_t q = 1;
    for (std::uint64_t e = 0;; ++e) {
        const std::uint64_t aq = detail::checked_mul(a, q, "aq");
        if (aq >= dp) break;
        if (detail::checked_mul(dp, 2, "2dp") < detail::checked_mul(aq, 3, "3aq")) {
            level = e;
            break;
        }
        q = detail::checked_mul(q, p, "q");
    }
    if (!level)
        throw InapplicableError("construction inapplicable for (p,a,d) = (" + std::to_string(p) + "," + std::to_string(a) +
                                "," + std::to_string(d) + "): no e with aq < dp < 3aq/2");

    const std::uint64_t aq = a * q;
    const std::uint64_t k = dp - aq;
    const FermatRelation rel(field, d);

    // (X^d+Y^d+Z^d)^p as a Frobenius power, compared with sum X^k X^aq, and zero in R
    const GradedPoly fp = frobenius_power(rel.polynomial(), 1);
    const GradedPoly koszul_form = x_pow(field, k) * x_pow(field, aq) + y_pow(field, k) * y_pow(field, aq) +
                                   z_pow(field, k) * z_pow(field, aq);
    if (!(fp == koszul_form) || !normal_form(fp, rel).is_zero())
        throw InternalError("Frobenius identity for the Fermat relation failed");

    const SyzygySpec pulled = SyzygySpec::uniform(field, d, aq);
    // k >= d is possible, so components are stored in normal form
    SectionVector s(pulled, static_cast<std::int64_t>(dp),
                    {normal_form(x_pow(field, k), rel), y_pow(field, k), z_pow(field, k)});
    return detail::make_certificate(s, a, *level, q, "construction");
}

/// Bounded search for a destabilizing section. For e = 0..e_max, examines twists
/// n in [aq + 1, ceil(3aq/2) - 1], the range where a section forces negative
/// degree, and returns the certificate at the smallest (e, n).
///
/// R is a domain (smooth curve or P^2), so a section at n times X is a section at
/// n + 1; existence is monotone in n and the smallest n is found by bisection.
/// std::nullopt means nothing was found within the bounds, not that the bundle
/// is strongly semistable.
inline std::optional<DestabCertificate> search_destabilization(std::uint64_t p, std::uint64_t d, std::uint64_t a,
                                                               std::uint64_t e_max,
                                                               Elimination path = Elimination::sparse) {
    const PrimeField field(p);
    if (a == 0) throw std::invalid_argument("a must be at least 1");
    detail::require_smooth(p, d);
    std::uint64_t q = 1;
    for (std::uint64_t e = 0; e <= e_max; ++e) {
        if (e > 0) q = detail::checked_mul(q, p, "q");
        const auto aq = static_cast<std::int64_t>(detail::checked_mul(a, q, "aq"));
        const SyzygySpec spec = SyzygySpec::uniform(field, d, static_cast<std::uint64_t>(aq));
        const std::int64_t lo = aq + 1;
        const std::int64_t hi = (3 * aq + 1) / 2 - 1;
        if (lo > hi || !has_section(spec, hi, path)) continue;
        std::int64_t left = lo, right = hi;  // invariant: section at right
        while (left < right) {
            const std::int64_t mid = left + (right - left) / 2;
            if (has_section(spec, mid, path))
                right = mid;
            else
                left = mid + 1;
        }
        const auto sections = section_space(spec, right, path);
        if (sections.empty()) throw InternalError("section vanished between existence and basis computation");
        return detail::make_certificate(sections.front(), a, e, q, "search");
    }
    return std::nullopt;
}

/// Harder-Narasimhan data of the certificate bundle twisted by t:
/// 0 -> O_C(t) -> S(twist + t) -> quotient -> 0.
struct HNData {
    std::int64_t bundle_degree;
    Rational sub_slope;
    Rational quotient_slope;
    Rational normalized_gap;  // (mu_max - mu_min) / q
};

inline HNData hn_data(const DestabCertificate& cert, std::int64_t extra_twist = 0) {
    const SyzygySpec b = cert.bundle();
    const SyzygySpec twisted(b.field, b.d, b.exponents, detail::checked_add(b.twist, extra_twist, "twist"));
    const std::int64_t deg = degree_and_slope(twisted).degree;
    const std::int64_t dd = b.on_curve() ? static_cast<std::int64_t>(b.d) : 1;
    const Rational sub(detail::checked_mul(extra_twist, dd, "sub degree"));
    const Rational quotient = Rational(deg) - sub;
    if (!(sub + quotient == Rational(deg))) throw InternalError("HN degree additivity failed");
    if (extra_twist == 0 && (!(sub == cert.slope_sub) || !(quotient == cert.slope_quotient)))
        throw InternalError("HN slopes disagree with certificate");
    return {deg, sub, quotient, (sub - quotient) / Rational(static_cast<std::int64_t>(cert.q))};
}

struct DeviationBound {
    std::uint64_t d, q;
    Rational gap;    // d (aq - 2p) / q
    Rational bound;  // a^2 p^(e-1) - 2a
};

/// Normalized HN gap at level e for d = a p^(e-1) + 1, with its closed-form lower bound.
inline DeviationBound deviation_lower_bound(std::uint64_t p, std::uint64_t a, std::uint64_t e) {
    const PrimeField field(p);
    if (e == 0) throw InapplicableError("deviation bound needs e >= 1");
    if (a == 0) throw std::invalid_argument("a must be at least 1");
    const std::uint64_t base = detail::checked_mul(a, detail::checked_pow(p, e - 1, "p^(e-1)"), "a p^(e-1)");
    const std::uint64_t d = base + 1;
    if (2 * d >= 3 * base)
        throw InapplicableError("d = a p^(e-1) + 1 = " + std::to_string(d) + " is outside the window (a p^(e-1), 3 a p^(e-1) / 2)");
    detail::require_smooth(p, d);
    const auto q = static_cast<std::int64_t>(detail::checked_mul(base, p, "q") / a);
    const auto sa = static_cast<std::int64_t>(a), sp = static_cast<std::int64_t>(p), sd = static_cast<std::int64_t>(d);
    const std::int64_t aq = detail::checked_mul(sa, q, "aq");
    const Rational gap(detail::checked_mul(sd, aq - 2 * sp, "gap"), q);
    const Rational direct(detail::checked_mul(3 * aq - 2 * sd * sp, sd, "gap"), q);
    if (!(gap == direct)) throw InternalError("gap closed form disagrees with (3aq - 2dp) d / q");
    const Rational bound(detail::checked_mul(sa * sa, static_cast<std::int64_t>(base / a), "bound") - 2 * sa);
    if (gap < bound) throw InternalError("gap below closed-form bound");
    return {d, static_cast<std::uint64_t>(q), gap, bound};
}

}  // namespace frobsyz

#endif  // FROBSYZ_SEMISTABILITY_HPP
