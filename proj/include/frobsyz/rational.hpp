#ifndef FROBSYZ_RATIONAL_HPP
#define FROBSYZ_RATIONAL_HPP

#include <compare>
#include <cstdint>
#include <numeric>
#include <ostream>
#include <string>

#include "error.hpp"

namespace frobsyz {

/// Exact rational with 64-bit numerator and positive denominator, always reduced.
/// Used for slopes and normalized gaps; arithmetic goes through 128-bit
/// intermediates and throws OverflowError if the reduced result does not fit.
class Rational {
public:
    constexpr Rational() = default;
    Rational(std::int64_t num) : num_(num), den_(1) {}  // NOLINT(google-explicit-constructor)
    Rational(std::int64_t num, std::int64_t den) {
        if (den == 0) throw DivisionByZero();
        assign(static_cast<__int128>(num), static_cast<__int128>(den));
    }

    std::int64_t num() const { return num_; }
    std::int64_t den() const { return den_; }
    bool is_integer() const { return den_ == 1; }

    /// "num/den", or just "num" for integers.
    std::string str() const {
        return den_ == 1 ? std::to_string(num_) : std::to_string(num_) + "/" + std::to_string(den_);
    }

    /// Inverse of str(); rejects non-canonical spellings such as "4/2" or "3/1".
    static Rational parse(const std::string& s) {
        const auto slash = s.find('/');
        std::size_t used = 0;
        Rational r;
        try {
            if (slash == std::string::npos) {
                r = Rational(std::stoll(s, &used));
                if (used != s.size()) throw std::invalid_argument("bad rational: " + s);
            } else {
                const std::int64_t n = std::stoll(s.substr(0, slash), &used);
                if (used != slash) throw std::invalid_argument("bad rational: " + s);
                const std::string rest = s.substr(slash + 1);
                const std::int64_t d = std::stoll(rest, &used);
                if (used != rest.size()) throw std::invalid_argument("bad rational: " + s);
                r = Rational(n, d);
            }
        } catch (const std::out_of_range&) {
            throw std::invalid_argument("rational out of range: " + s);
        }
        if (r.str() != s) throw std::invalid_argument("non-canonical rational: " + s);
        return r;
    }

    friend Rational operator+(const Rational& a, const Rational& b) {
        Rational r;
        r.assign(static_cast<__int128>(a.num_) * b.den_ + static_cast<__int128>(b.num_) * a.den_,
                 static_cast<__int128>(a.den_) * b.den_);
        return r;
    }
    friend Rational operator-(const Rational& a) {
        Rational r;
        r.assign(-static_cast<__int128>(a.num_), a.den_);
        return r;
    }
    friend Rational operator-(const Rational& a, const Rational& b) { return a + (-b); }
    friend Rational operator*(const Rational& a, const Rational& b) {
        Rational r;
        r.assign(static_cast<__int128>(a.num_) * b.num_, static_cast<__int128>(a.den_) * b.den_);
        return r;
    }
    friend Rational operator/(const Rational& a, const Rational& b) {
        if (b.num_ == 0) throw DivisionByZero();
        Rational r;
        r.assign(static_cast<__int128>(a.num_) * b.den_, static_cast<__int128>(a.den_) * b.num_);
        return r;
    }

    friend bool operator==(const Rational& a, const Rational& b) = default;
    friend std::strong_ordering operator<=>(const Rational& a, const Rational& b) {
        __int128 lhs = static_cast<__int128>(a.num_) * b.den_;
        __int128 rhs = static_cast<__int128>(b.num_) * a.den_;
        if (lhs < rhs) return std::strong_ordering::less;
        if (lhs > rhs) return std::strong_ordering::greater;
        return std::strong_ordering::equal;
    }

    friend std::ostream& operator<<(std::ostream& os, const Rational& r) { return os << r.str(); }

private:
    void assign(__int128 n, __int128 d) {
        if (d < 0) {
            n = -n;
            d = -d;
        }
        __int128 a = n < 0 ? -n : n;
        __int128 b = d;
        while (b != 0) {
            __int128 t = a % b;
            a = b;
            b = t;
        }
        __int128 g = a == 0 ? d : a;
        n /= g;
        d /= g;
        constexpr __int128 lo = INT64_MIN, hi = INT64_MAX;
        if (n < lo || n > hi || d > hi) throw OverflowError("rational out of 64-bit range");
        num_ = static_cast<std::int64_t>(n);
        den_ = static_cast<std::int64_t>(d);
    }

    std::int64_t num_ = 0;
    std::int64_t den_ = 1;
};

}  // namespace frobsyz

#endif  // FROBSYZ_RATIONAL_HPP
