#ifndef FROBSYZ_GRADED_POLY_HPP
#define FROBSYZ_GRADED_POLY_HPP

#include <cstdint>
#include <functional>
#include <map>
#include <ostream>
#include <sstream>
#include <string>
#include <string_view>
#include <tuple>
#include <vector>

#include "error.hpp"
#include "prime_field.hpp"

namespace frobsyz {

/// X^x Y^y Z^z.
struct Monomial {
    std::uint64_t x = 0, y = 0, z = 0;

    std::uint64_t degree() const {
        return detail::checked_add(detail::checked_add(x, y, "monomial degree"), z, "monomial degree");
    }

    friend Monomial operator*(const Monomial& a, const Monomial& b) {
        Monomial r{detail::checked_add(a.x, b.x, "monomial product"),
                   detail::checked_add(a.y, b.y, "monomial product"),
                   detail::checked_add(a.z, b.z, "monomial product")};
        (void)r.degree();
        return r;
    }

    friend bool operator==(const Monomial&, const Monomial&) = default;
};

/// Lexicographic with X > Y > Z, largest first. This is the iteration and
/// serialization order of every polynomial and every graded basis.
struct TermOrder {
    bool operator()(const Monomial& a, const Monomial& b) const {
        return std::tie(a.x, a.y, a.z) > std::tie(b.x, b.y, b.z);
    }
};

/// Homogeneous polynomial in F_p[X,Y,Z]. The zero polynomial still carries a degree.
class GradedPoly {
public:
    using TermMap = std::map<Monomial, std::uint32_t, TermOrder>;

    GradedPoly(const PrimeField& field, std::uint64_t degree) : field_(field), degree_(degree) {}

    static GradedPoly monomial(const PrimeField& field, const Monomial& m, std::int64_t coeff = 1) {
        GradedPoly f(field, m.degree());
        f.add_term(m, coeff);
        return f;
    }

    /// Sum of terms; all monomials must share one degree.
    static GradedPoly from_terms(const PrimeField& field, std::uint64_t degree,
                                 const std::vector<std::pair<Monomial, std::int64_t>>& terms) {
        GradedPoly f(field, degree);
        for (const auto& [m, c] : terms) f.add_term(m, c);
        return f;
    }

    const PrimeField& field() const { return field_; }
    std::uint64_t degree() const { return degree_; }
    const TermMap& terms() const { return terms_; }
    bool is_zero() const { return terms_.empty(); }
    std::size_t size() const { return terms_.size(); }

    FieldElement coefficient(const Monomial& m) const {
        auto it = terms_.find(m);
        return FieldElement(field_, it == terms_.end() ? 0 : it->second);
    }

    void add_term(const Monomial& m, std::int64_t coeff) { add_raw(m, field_.reduce(coeff)); }

    /// Adds a coefficient already reduced mod p.
    void add_raw(const Monomial& m, std::uint32_t c) {
        if (m.degree() != degree_)
            throw std::invalid_argument("term of degree " + std::to_string(m.degree()) +
                                        " in polynomial of degree " + std::to_string(degree_));
        if (c == 0) return;
        auto [it, inserted] = terms_.try_emplace(m, c);
        if (!inserted) {
            it->second = field_.add(it->second, c);
            if (it->second == 0) terms_.erase(it);
        }
    }

    GradedPoly& operator+=(const GradedPoly& g) {
        check_compatible(g, true);
        for (const auto& [m, c] : g.terms_) add_raw(m, c);
        return *this;
    }
    GradedPoly& operator-=(const GradedPoly& g) {
        check_compatible(g, true);
        for (const auto& [m, c] : g.terms_) add_raw(m, field_.neg(c));
        return *this;
    }
    friend GradedPoly operator+(GradedPoly f, const GradedPoly& g) { return f += g; }
    friend GradedPoly operator-(GradedPoly f, const GradedPoly& g) { return f -= g; }

    GradedPoly scaled(std::uint32_t c) const {
        GradedPoly r(field_, degree_);
        if (c % field_.characteristic() == 0) return r;
        for (const auto& [m, v] : terms_) r.terms_.emplace_hint(r.terms_.end(), m, field_.mul(v, c));
        return r;
    }

    friend GradedPoly operator*(const GradedPoly& f, const GradedPoly& g) {
        f.check_compatible(g, false);
        GradedPoly r(f.field_, detail::checked_add(f.degree_, g.degree_, "product degree"));
        for (const auto& [mf, cf] : f.terms_)
            for (const auto& [mg, cg] : g.terms_) r.add_raw(mf * mg, f.field_.mul(cf, cg));
        return r;
    }

    friend bool operator==(const GradedPoly& f, const GradedPoly& g) {
        return f.field_ == g.field_ && f.degree_ == g.degree_ && f.terms_ == g.terms_;
    }

    /// `c*X^i*Y^j*Z^l` terms in TermOrder joined by " + "; the zero polynomial is "0".
    std::string to_string() const {
        if (terms_.empty()) return "0";
        std::ostringstream os;
        bool first = true;
        for (const auto& [m, c] : terms_) {
            if (!first) os << " + ";
            first = false;
            os << c << "*X^" << m.x << "*Y^" << m.y << "*Z^" << m.z;
        }
        return os.str();
    }

    /// Strict inverse of to_string(). Coefficients must lie in [1, p), terms must be
    /// strictly decreasing in TermOrder and all of the given degree.
    static GradedPoly parse(const PrimeField& field, std::uint64_t degree, std::string_view text) {
        GradedPoly f(field, degree);
        if (text == "0") return f;
        const Monomial* prev = nullptr;
        Monomial last;
        std::size_t pos = 0;
        while (true) {
            std::size_t end = text.find(" + ", pos);
            std::string_view term = text.substr(pos, end == std::string_view::npos ? std::string_view::npos : end - pos);
            auto [coeff, m] = parse_term(term);
            if (coeff == 0 || coeff >= field.characteristic())
                throw std::invalid_argument("coefficient out of range in term '" + std::string(term) + "'");
            if (prev && !TermOrder{}(last, m))
                throw std::invalid_argument("terms not in canonical order at '" + std::string(term) + "'");
            f.add_raw(m, static_cast<std::uint32_t>(coeff));
            last = m;
            prev = &last;
            if (end == std::string_view::npos) break;
            pos = end + 3;
        }
        return f;
    }

    friend std::ostream& operator<<(std::ostream& os, const GradedPoly& f) { return os << f.to_string(); }

private:
    static std::uint64_t parse_uint(std::string_view s, std::size_t& pos) {
        if (pos >= s.size() || s[pos] < '0' || s[pos] > '9') throw std::invalid_argument("expected digit in '" + std::string(s) + "'");
        std::uint64_t v = 0;
        while (pos < s.size() && s[pos] >= '0' && s[pos] <= '9') {
            v = detail::checked_add(detail::checked_mul(v, std::uint64_t{10}, "parse"),
                                    static_cast<std::uint64_t>(s[pos] - '0'), "parse");
            ++pos;
        }
        return v;
    }
    static void expect(std::string_view s, std::size_t& pos, std::string_view lit) {
        if (s.substr(pos, lit.size()) != lit) throw std::invalid_argument("malformed term '" + std::string(s) + "'");
        pos += lit.size();
    }
    static std::pair<std::uint64_t, Monomial> parse_term(std::string_view s) {
        std::size_t pos = 0;
        std::uint64_t c = parse_uint(s, pos);
        Monomial m;
        expect(s, pos, "*X^");
        m.x = parse_uint(s, pos);
        expect(s, pos, "*Y^");
        m.y = parse_uint(s, pos);
        expect(s, pos, "*Z^");
        m.z = parse_uint(s, pos);
        if (pos != s.size()) throw std::invalid_argument("trailing characters in term '" + std::string(s) + "'");
        return {c, m};
    }

    void check_compatible(const GradedPoly& g, bool same_degree) const {
        if (!(field_ == g.field_)) throw std::invalid_argument("polynomials over different fields");
        if (same_degree && degree_ != g.degree_) throw std::invalid_argument("adding polynomials of different degree");
    }

    PrimeField field_;
    std::uint64_t degree_;
    TermMap terms_;
};

inline GradedPoly x_pow(const PrimeField& f, std::uint64_t k) { return GradedPoly::monomial(f, {k, 0, 0}); }
inline GradedPoly y_pow(const PrimeField& f, std::uint64_t k) { return GradedPoly::monomial(f, {0, k, 0}); }
inline GradedPoly z_pow(const PrimeField& f, std::uint64_t k) { return GradedPoly::monomial(f, {0, 0, k}); }

/// f^(p^e): exponents scaled by q = p^e and coefficients raised to the q-th power.
inline GradedPoly frobenius_power(const GradedPoly& f, std::uint64_t e) {
    const PrimeField& field = f.field();
    const std::uint64_t q = detail::checked_pow(field.characteristic(), e, "q = p^e");
    GradedPoly r(field, detail::checked_mul(f.degree(), q, "Frobenius degree"));
    for (const auto& [m, c] : f.terms()) {
        Monomial mq{detail::checked_mul(m.x, q, "Frobenius exponent"), detail::checked_mul(m.y, q, "Frobenius exponent"),
                    detail::checked_mul(m.z, q, "Frobenius exponent")};
        r.add_raw(mq, field.pow(c, q));
    }
    return r;
}

/// The Fermat relation X^d + Y^d + Z^d.
class FermatRelation {
public:
    FermatRelation(const PrimeField& field, std::uint64_t d) : field_(field), d_(d) {
        if (d == 0) throw std::invalid_argument("Fermat degree must be at least 1");
    }

    const PrimeField& field() const { return field_; }
    std::uint64_t degree() const { return d_; }

    GradedPoly polynomial() const { return x_pow(field_, d_) + y_pow(field_, d_) + z_pow(field_, d_); }

    /// Calls sink(monomial, coeff) for every term of the normal form of c*m.
    /// X^(td+r) = (-1)^t X^r (Y^d + Z^d)^t, expanded with Lucas coefficients.
    template <typename Sink>
    void reduce_monomial(const Monomial& m, std::uint32_t c, Sink&& sink) const {
        if (c == 0) return;
        const std::uint64_t t = m.x / d_, r = m.x % d_;
        if (t == 0) {
            sink(m, c);
            return;
        }
        const std::uint32_t sign_c = (t % 2 == 0) ? c : field_.neg(c);
        for (std::uint64_t s = 0; s <= t; ++s) {
            std::uint32_t b = binomial_mod_p(t, s, field_).value();
            if (b == 0) continue;
            Monomial out{r, detail::checked_add(m.y, detail::checked_mul(s, d_, "normal form"), "normal form"),
                         detail::checked_add(m.z, detail::checked_mul(t - s, d_, "normal form"), "normal form")};
            sink(out, field_.mul(sign_c, b));
        }
    }

    friend bool operator==(const FermatRelation&, const FermatRelation&) = default;

private:
    PrimeField field_;
    std::uint64_t d_;
};

/// Canonical representative of f modulo X^d + Y^d + Z^d: every X-exponent is below d.
inline GradedPoly normal_form(const GradedPoly& f, const FermatRelation& rel) {
    if (!(f.field() == rel.field())) throw std::invalid_argument("normal_form: field mismatch");
    GradedPoly r(f.field(), f.degree());
    for (const auto& [m, c] : f.terms()) rel.reduce_monomial(m, c, [&](const Monomial& mm, std::uint32_t cc) { r.add_raw(mm, cc); });
    return r;
}

}  // namespace frobsyz

#endif  // FROBSYZ_GRADED_POLY_HPP
