#ifndef FROBSYZ_TIGHT_CLOSURE_HPP
#define FROBSYZ_TIGHT_CLOSURE_HPP

#include <array>
#include <cstdint>
#include <functional>
#include <map>
#include <string>
#include <utility>
#include <vector>

#include "semistability.hpp"

namespace frobsyz {

/// Right-hand side of the expected closure formula
/// (X^a,Y^a,Z^a)^* = (X^a,Y^a,Z^a) + R_{>= 3a/2}. Nothing is computed here.
struct FormulaStar {
    std::uint64_t a;
    std::array<std::string, 3> ideal;
    Rational threshold;
};

inline FormulaStar formula_star(std::uint64_t a) {
    if (a == 0) throw std::invalid_argument("a must be at least 1");
    const std::string s = std::to_string(a);
    return {a, {"X^" + s, "Y^" + s, "Z^" + s}, Rational(3 * static_cast<std::int64_t>(a), 2)};
}

/// Whether homogeneous f (normal form) lies in (X^a, Y^a, Z^a) R, decided in degree deg f:
/// f is in the image of R_{n-a}^3 -> R_n iff appending f as a column keeps the rank.
inline bool ideal_membership(const GradedPoly& f, std::uint64_t a, const FermatRing& ring) {
    if (f.is_zero()) return true;
    const auto n = static_cast<std::int64_t>(f.degree());
    const SyzygySpec spec = SyzygySpec::uniform(ring.field(), ring.degree(), a);
    SparseMatrixModP m = syzygy_matrix(spec, n);
    const std::size_t base_rank = m.rank();
    SparseMatrixModP::Column col;
    const auto coords = ring.coordinates(ring.reduce(f));
    for (std::size_t i = 0; i < coords.size(); ++i)
        if (coords[i] != 0) col.emplace_back(i, coords[i]);
    m.push_column(std::move(col));
    return m.rank() == base_rank;
}

/// Parameters of the tight-closure counterexample for a = 2b:
/// q = p^e, d = a p^(e-1) + 1, k = dp - aq = p, u = ceil(p/2), m = 3bq, r = s = t = bq.
struct TCParameters {
    std::uint32_t p;
    std::uint64_t b, e, a, q, d, k, u, m, r;

    bool ud_ge_bq_plus_p() const { return u * d >= b * q + p; }
    bool u_minus_1_d_lt_bq() const { return (u - 1) * d < b * q; }
    bool p_not_dividing_u() const { return u % p != 0; }
    bool smooth() const { return d % p != 0; }
};

inline TCParameters make_tc_parameters(std::uint64_t p, std::uint64_t b, std::uint64_t e) {
    const PrimeField field(p);
    if (b == 0) throw InapplicableError("b must be at least 1 (a = 2b >= 2)");
    if (e == 0) throw InapplicableError("e must be at least 1");
    const std::uint64_t a = 2 * b;
    const std::uint64_t base = detail::checked_mul(a, detail::checked_pow(p, e - 1, "p^(e-1)"), "a p^(e-1)");
    const std::uint64_t q = detail::checked_pow(p, e, "q");
    const std::uint64_t d = base + 1;
    const std::uint64_t k = detail::checked_mul(d, p, "dp") - detail::checked_mul(a, q, "aq");
    const std::uint64_t u = (p + 1) / 2;
    (void)detail::checked_mul(u, d, "ud");
    const std::uint64_t bq = detail::checked_mul(b, q, "bq");
    TCParameters t{static_cast<std::uint32_t>(p), b, e, a, q, d, k, u, detail::checked_mul(bq, 3, "3bq"), bq};
    if (t.k != p) throw InternalError("k = dp - aq should equal p");
    return t;
}

/// Laurent monomial c * X^x Y^y Z^z with a sign.
struct LaurentTerm {
    int sign;
    std::int64_t x, y, z;
    std::int64_t degree() const { return x + y + z; }
};

/// The class (f/X^aq, -f/Y^aq, 0) in H^1(C, Syz(X^aq,Y^aq,Z^aq)(m)) for f = X^r Y^s Z^t,
/// its image -f Z^k / (X^aq Y^aq) in H^1(C, O_C(m + k - 2aq)), and the reduced form
/// -Z^(bq+k) / (X^bq Y^bq).
struct CurveClass {
    std::array<LaurentTerm, 2> syzygy_components;  // third component is 0
    LaurentTerm image;
    LaurentTerm image_reduced;
    std::int64_t image_sheaf_degree;  // m + k - 2aq = k - bq
};

inline CurveClass cech_class_curve(const TCParameters& t) {
    const auto aq = static_cast<std::int64_t>(t.a * t.q);
    const auto r = static_cast<std::int64_t>(t.r);
    const auto k = static_cast<std::int64_t>(t.k);
    const auto m = static_cast<std::int64_t>(t.m);
    CurveClass c{{LaurentTerm{+1, r - aq, r, r}, LaurentTerm{-1, r, r - aq, r}},
                 LaurentTerm{-1, r - aq, r - aq, r + k},
                 LaurentTerm{-1, -r, -r, r + k},
                 m + k - 2 * aq};
    if (c.image_sheaf_degree != k - r || c.image.degree() != c.image_sheaf_degree ||
        c.image_reduced.degree() != c.image_sheaf_degree || r + r + r != m)
        throw InternalError("degree bookkeeping of the curve class failed");
    for (const auto& comp : c.syzygy_components)
        if (comp.degree() != m - aq) throw InternalError("syzygy class component has wrong degree");
    return c;
}

/// An element of H^1(P^1, O(n)) on the Cech basis X^i Y^j, i, j <= -1, i + j = n.
struct CechClassP1 {
    std::int64_t degree;
    std::map<std::pair<std::int64_t, std::int64_t>, std::uint32_t, std::greater<>> coefficients;
    int global_sign;  // class of -Z^ud / (X^bq Y^bq) = global_sign * this

    bool is_zero() const { return coefficients.empty(); }
};

/// (X^d + Y^d)^u / (X^bq Y^bq) on P^1 = Proj K[X,Y]: binomial expansion, terms with
/// a nonnegative exponent vanish in H^1. On the curve Z^d = -(X^d + Y^d), so
/// -Z^ud = (-1)^(u+1) (X^d + Y^d)^u; that sign is global_sign.
inline CechClassP1 cech_class_p1(const TCParameters& t) {
    const PrimeField field(t.p);
    const auto d = static_cast<std::int64_t>(t.d);
    const auto u = static_cast<std::int64_t>(t.u);
    const auto bq = static_cast<std::int64_t>(t.r);
    CechClassP1 c{u * d - 2 * bq, {}, (t.u % 2 == 1) ? +1 : -1};
    for (std::int64_t s = 0; s <= u; ++s) {
        const std::int64_t i = (u - s) * d - bq;
        const std::int64_t j = s * d - bq;
        if (i >= 0 || j >= 0) continue;
        const std::uint32_t coeff = binomial_mod_p(static_cast<std::uint64_t>(u), static_cast<std::uint64_t>(s), field).value();
        if (coeff == 0) continue;
        if (i + j != c.degree) throw InternalError("Cech term degree mismatch");
        c.coefficients.emplace(std::make_pair(i, j), coeff);
    }
    return c;
}

enum class TCVerdict { certified, inconclusive };

struct TCReport {
    TCParameters params;
    FormulaStar formula;
    bool test_element_in_ideal;  // (XYZ)^b in (X^a,Y^a,Z^a) R, plain membership
    CurveClass curve_class;
    CechClassP1 p1_class;
    std::vector<std::string> failing;  // names of failed preconditions, in check order
    std::vector<std::string> steps;
    TCVerdict verdict;
};

inline constexpr const char* kAssumedImplication =
    "assumed, not recomputed: a nonzero class in H^1(P^1, O(ud-2bq)) is not in 0* because K[X,Y] is F-regular; "
    "the torsor of the curve class is then affine, and so is the torsor of the syzygy class, "
    "hence (XYZ)^b is not in the tight closure";

/// Runs the argument (XYZ)^b not in (X^2b, Y^2b, Z^2b)^* in F_p[X,Y,Z]/(X^d+Y^d+Z^d).
/// "certified" requires every precondition and a nonzero class on P^1.
inline TCReport tc_counterexample(std::uint64_t p, std::uint64_t b, std::uint64_t e) {
    const TCParameters t = make_tc_parameters(p, b, e);
    if (!t.smooth()) throw SmoothnessError(std::to_string(p) + " divides d = " + std::to_string(t.d));
    const PrimeField field(p);
    const FermatRing ring(field, t.d);

    const GradedPoly test_element = GradedPoly::monomial(field, {b, b, b});
    TCReport rep{t,  formula_star(t.a), ideal_membership(ring.reduce(test_element), t.a, ring), cech_class_curve(t),
                 cech_class_p1(t), {}, {}, TCVerdict::inconclusive};

    if (!t.ud_ge_bq_plus_p()) rep.failing.emplace_back("ud_ge_bq_plus_p");
    if (!t.u_minus_1_d_lt_bq()) rep.failing.emplace_back("u_minus_1_d_lt_bq");
    if (!t.p_not_dividing_u()) rep.failing.emplace_back("p_not_dividing_u");

    auto& st = rep.steps;
    st.push_back("test element (XYZ)^" + std::to_string(b) + " has degree " + std::to_string(3 * b) +
                 " = threshold " + rep.formula.threshold.str() + " of the expected formula");
    st.push_back(std::string("plain ideal membership of the test element: ") + (rep.test_element_in_ideal ? "yes" : "no"));
    st.push_back("k = dp - aq = " + std::to_string(t.k) + " = p, curve class lives in H^1(C, O_C(" +
                 std::to_string(rep.curve_class.image_sheaf_degree) + "))");
    st.push_back("ud = " + std::to_string(t.u * t.d) + (t.ud_ge_bq_plus_p() ? " >= " : " < ") + "bq + p = " +
                 std::to_string(t.r + t.p) + ", so Z^ud is a multiple of Z^(bq+k)");
    st.push_back("(u-1)d = " + std::to_string((t.u - 1) * t.d) + (t.u_minus_1_d_lt_bq() ? " < " : " >= ") +
                 "bq = " + std::to_string(t.r));
    st.push_back("u = " + std::to_string(t.u) + (t.p_not_dividing_u() ? " is" : " is not") + " a unit mod p");
    st.push_back("class of (X^d+Y^d)^u / (X^bq Y^bq) in H^1(P^1, O(" + std::to_string(rep.p1_class.degree) + ")) has " +
                 std::to_string(rep.p1_class.coefficients.size()) + " surviving terms");
    st.push_back(kAssumedImplication);

    if (rep.failing.empty() && !rep.p1_class.is_zero() && !rep.test_element_in_ideal) rep.verdict = TCVerdict::certified;
    if (rep.failing.empty() && rep.p1_class.is_zero()) rep.failing.emplace_back("p1_class_nonzero");
    return rep;
}

}  // namespace frobsyz

#endif  // FROBSYZ_TIGHT_CLOSURE_HPP
