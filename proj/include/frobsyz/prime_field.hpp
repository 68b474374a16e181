#ifndef FROBSYZ_PRIME_FIELD_HPP
#define FROBSYZ_PRIME_FIELD_HPP

#include <cstdint>
#include <ostream>
#include <stdexcept>
#include <string>

#include "error.hpp"

namespace frobsyz {

/// Deterministic trial division; p < 2^31 keeps this under 50k divisions.
constexpr bool is_prime(std::uint64_t n) {
    if (n < 2) return false;
    if (n % 2 == 0) return n == 2;
    for (std::uint64_t f = 3; f * f <= n; f += 2)
        if (n % f == 0) return false;
    return true;
}

/// The prime field F_p, 2 <= p < 2^31. Products of two residues fit in 64 bits.
class PrimeField {
public:
    explicit PrimeField(std::uint64_t p) : p_(static_cast<std::uint32_t>(p)) {
        if (p >= (std::uint64_t{1} << 31)) throw std::invalid_argument("p must be below 2^31");
        if (!is_prime(p)) throw std::invalid_argument(std::to_string(p) + " is not prime");
    }

    std::uint32_t characteristic() const { return p_; }

    std::uint32_t reduce(std::int64_t v) const {
        std::int64_t r = v % static_cast<std::int64_t>(p_);
        return static_cast<std::uint32_t>(r < 0 ? r + p_ : r);
    }
    std::uint32_t add(std::uint32_t a, std::uint32_t b) const {
        std::uint32_t s = a + b;
        return s >= p_ ? s - p_ : s;
    }
    std::uint32_t sub(std::uint32_t a, std::uint32_t b) const { return a >= b ? a - b : a + p_ - b; }
    std::uint32_t neg(std::uint32_t a) const { return a == 0 ? 0 : p_ - a; }
    std::uint32_t mul(std::uint32_t a, std::uint32_t b) const {
        return static_cast<std::uint32_t>(static_cast<std::uint64_t>(a) * b % p_);
    }

    /// Extended Euclid.
    std::uint32_t inv(std::uint32_t a) const {
        if (a % p_ == 0) throw DivisionByZero();
        std::int64_t r0 = p_, r1 = a % p_, s0 = 0, s1 = 1;
        while (r1 != 0) {
            std::int64_t quot = r0 / r1;
            std::int64_t t = r0 - quot * r1;
            r0 = r1;
            r1 = t;
            t = s0 - quot * s1;
            s0 = s1;
            s1 = t;
        }
        return reduce(s0);
    }

    std::uint32_t pow(std::uint32_t a, std::uint64_t e) const {
        std::uint64_t r = 1 % p_, x = a % p_;
        while (e) {
            if (e & 1) r = r * x % p_;
            x = x * x % p_;
            e >>= 1;
        }
        return static_cast<std::uint32_t>(r);
    }

    friend bool operator==(const PrimeField&, const PrimeField&) = default;

private:
    std::uint32_t p_;
};

/// A residue in [0, p) tagged with its field.
class FieldElement {
public:
    FieldElement(const PrimeField& field, std::int64_t v) : field_(field), value_(field.reduce(v)) {}

    std::uint32_t value() const { return value_; }
    const PrimeField& field() const { return field_; }
    bool is_zero() const { return value_ == 0; }

    FieldElement inv() const { return raw(field_, field_.inv(value_)); }
    FieldElement pow(std::uint64_t e) const { return raw(field_, field_.pow(value_, e)); }

    friend FieldElement operator+(const FieldElement& a, const FieldElement& b) {
        check_same(a, b);
        return raw(a.field_, a.field_.add(a.value_, b.value_));
    }
    friend FieldElement operator-(const FieldElement& a, const FieldElement& b) {
        check_same(a, b);
        return raw(a.field_, a.field_.sub(a.value_, b.value_));
    }
    friend FieldElement operator-(const FieldElement& a) { return raw(a.field_, a.field_.neg(a.value_)); }
    friend FieldElement operator*(const FieldElement& a, const FieldElement& b) {
        check_same(a, b);
        return raw(a.field_, a.field_.mul(a.value_, b.value_));
    }
    friend FieldElement operator/(const FieldElement& a, const FieldElement& b) { return a * b.inv(); }

    friend bool operator==(const FieldElement&, const FieldElement&) = default;
    friend std::ostream& operator<<(std::ostream& os, const FieldElement& x) { return os << x.value_; }

private:
    static FieldElement raw(const PrimeField& f, std::uint32_t v) {
        FieldElement x(f, 0);
        x.value_ = v;
        return x;
    }
    static void check_same(const FieldElement& a, const FieldElement& b) {
        if (!(a.field_ == b.field_)) throw std::invalid_argument("field elements from different fields");
    }

    PrimeField field_;
    std::uint32_t value_;
};

inline FieldElement inv(const FieldElement& x) { return x.inv(); }

/// C(n, k) mod p by Lucas' theorem: product of binomials of the base-p digits.
inline FieldElement binomial_mod_p(std::uint64_t n, std::uint64_t k, const PrimeField& field) {
    const std::uint64_t p = field.characteristic();
    if (k > n) return FieldElement(field, 0);
    std::uint32_t result = 1;
    while (k > 0 || n > 0) {
        std::uint64_t ni = n % p, ki = k % p;
        if (ki > ni) return FieldElement(field, 0);
        std::uint64_t kk = ki < ni - ki ? ki : ni - ki;
        std::uint32_t num = 1, den = 1;
        for (std::uint64_t j = 0; j < kk; ++j) {
            num = field.mul(num, static_cast<std::uint32_t>(ni - j));
            den = field.mul(den, static_cast<std::uint32_t>(j + 1));
        }
        result = field.mul(result, field.mul(num, field.inv(den)));
        n /= p;
        k /= p;
    }
    return FieldElement(field, result);
}

}  // namespace frobsyz

#endif  // FROBSYZ_PRIME_FIELD_HPP
