#include <gtest/gtest.h>

#include "test_support.hpp"

namespace frobsyz {
namespace {

using testing::exact_binomial;
using testing::uniform;

TEST(PrimeField, RejectsCompositeAndOutOfRange) {
    EXPECT_THROW(PrimeField(0), std::invalid_argument);
    EXPECT_THROW(PrimeField(1), std::invalid_argument);
    EXPECT_THROW(PrimeField(4), std::invalid_argument);
    EXPECT_THROW(PrimeField(91), std::invalid_argument);
    EXPECT_THROW(PrimeField(std::uint64_t{1} << 31), std::invalid_argument);
    EXPECT_NO_THROW(PrimeField(2));
    EXPECT_NO_THROW(PrimeField(2147483647));  // 2^31 - 1
}

TEST(PrimeField, IsPrimeMatchesTrialDivision) {
    for (std::uint64_t n = 0; n < 2000; ++n) {
        bool oracle = n >= 2;
        for (std::uint64_t t = 2; t * t <= n; ++t)
            if (n % t == 0) oracle = false;
        EXPECT_EQ(is_prime(n), oracle) << n;
    }
}

TEST(FieldElement, ValuesAreReduced) {
    const PrimeField f(7);
    EXPECT_EQ(FieldElement(f, -1).value(), 6u);
    EXPECT_EQ(FieldElement(f, 15).value(), 1u);
    EXPECT_EQ(FieldElement(f, INT64_MIN).value(), static_cast<std::uint32_t>(((INT64_MIN % 7) + 7) % 7));
    const PrimeField big(2147483647);
    const FieldElement x(big, 2147483646);
    EXPECT_EQ((x + x).value(), 2147483645u);
    EXPECT_EQ((x * x).value(), 1u);
}

TEST(FieldElement, InverseExamples) {
    for (std::uint64_t p : {2, 3, 5, 7, 11}) EXPECT_EQ(inv(FieldElement(PrimeField(p), 1)).value(), 1u);
    EXPECT_EQ(inv(FieldElement(PrimeField(5), 2)).value(), 3u);
    EXPECT_EQ(inv(FieldElement(PrimeField(7), 3)).value(), 5u);
}

TEST(FieldElement, InverseMatchesBruteForceScan) {
    for (std::uint64_t p : {2, 3, 5, 7, 11, 13, 101, 257}) {
        const PrimeField f(p);
        for (std::uint64_t x = 1; x < p; ++x) {
            std::uint64_t oracle = 0;
            for (std::uint64_t y = 1; y < p; ++y)
                if (x * y % p == 1) oracle = y;
            EXPECT_EQ(inv(FieldElement(f, static_cast<std::int64_t>(x))).value(), oracle) << "p=" << p << " x=" << x;
        }
    }
}

TEST(FieldElement, InverseOfZeroThrows) {
    const PrimeField f(5);
    EXPECT_THROW(inv(FieldElement(f, 0)), DivisionByZero);
    EXPECT_THROW(inv(FieldElement(f, 10)), DivisionByZero);
    EXPECT_THROW(FieldElement(f, 1) / FieldElement(f, 0), DivisionByZero);
}

TEST(FieldElement, InverseIsInvolutionProperty) {
    for (int trial = 0; trial < 2000; ++trial) {
        const PrimeField f(2147483647);
        const FieldElement x(f, static_cast<std::int64_t>(uniform(1, 2147483646)));
        EXPECT_EQ(inv(inv(x)), x);
        EXPECT_EQ((x * inv(x)).value(), 1u);
    }
}

TEST(FieldElement, MixedFieldsRejected) {
    EXPECT_THROW(FieldElement(PrimeField(5), 1) + FieldElement(PrimeField(7), 1), std::invalid_argument);
}

TEST(FieldElement, PowMatchesRepeatedProduct) {
    const PrimeField f(13);
    for (std::int64_t x = 0; x < 13; ++x) {
        FieldElement acc(f, 1);
        for (std::uint64_t e = 0; e < 30; ++e) {
            EXPECT_EQ(FieldElement(f, x).pow(e), acc);
            acc = acc * FieldElement(f, x);
        }
    }
}

TEST(Binomial, Examples) {
    for (std::uint64_t p : {3, 5, 7, 11}) {
        const PrimeField f(p);
        const std::uint64_t u = (p + 1) / 2;
        EXPECT_EQ(binomial_mod_p(u, 1, f).value(), u % p);
        EXPECT_NE(binomial_mod_p(u, 1, f).value(), 0u);
        EXPECT_EQ(binomial_mod_p(p, 1, f).value(), 0u);
    }
    EXPECT_EQ(exact_binomial(25, 5), 53130u);
    EXPECT_EQ(binomial_mod_p(25, 5, PrimeField(5)).value(), 0u);
    EXPECT_EQ(binomial_mod_p(3, 7, PrimeField(5)).value(), 0u);
    EXPECT_EQ(binomial_mod_p(0, 0, PrimeField(5)).value(), 1u);
}

TEST(Binomial, MatchesExactPascalTriangle) {
    for (std::uint64_t p : {2, 3, 5, 7, 11})
        for (std::uint64_t n = 0; n <= 50; ++n)
            for (std::uint64_t k = 0; k <= n; ++k)
                EXPECT_EQ(binomial_mod_p(n, k, PrimeField(p)).value(), exact_binomial(n, k) % p)
                    << "C(" << n << "," << k << ") mod " << p;
}

// Kummer: p divides C(n, k) iff adding k and n - k in base p carries.
TEST(Binomial, VanishingMatchesKummerCarriesProperty) {
    for (int trial = 0; trial < 3000; ++trial) {
        const std::uint64_t p = std::vector<std::uint64_t>{2, 3, 5, 7, 11, 13}[uniform(0, 5)];
        const std::uint64_t n = uniform(0, 1'000'000'000'000);
        const std::uint64_t k = uniform(0, n);
        std::uint64_t a = k, b = n - k, carry = 0;
        bool carries = false;
        while (a > 0 || b > 0 || carry > 0) {
            const std::uint64_t s = a % p + b % p + carry;
            carry = s >= p ? 1 : 0;
            carries = carries || carry;
            a /= p;
            b /= p;
        }
        EXPECT_EQ(binomial_mod_p(n, k, PrimeField(p)).is_zero(), carries) << n << " " << k << " " << p;
    }
}

TEST(Binomial, PascalRecurrenceForLargeArgumentsProperty) {
    for (int trial = 0; trial < 2000; ++trial) {
        const PrimeField f(std::vector<std::uint64_t>{3, 5, 7, 101}[uniform(0, 3)]);
        const std::uint64_t n = uniform(1, 1'000'000'000'000);
        const std::uint64_t k = uniform(1, n);
        EXPECT_EQ(binomial_mod_p(n, k, f), binomial_mod_p(n - 1, k - 1, f) + binomial_mod_p(n - 1, k, f));
    }
}

TEST(Rational, CanonicalFormAndPrinting) {
    EXPECT_EQ(Rational(440, 25).str(), "88/5");
    EXPECT_EQ(Rational(-440, 2).str(), "-220");
    EXPECT_EQ(Rational(3, -6).str(), "-1/2");
    EXPECT_EQ(Rational(0, 7).str(), "0");
    EXPECT_THROW(Rational(1, 0), DivisionByZero);
    EXPECT_THROW(Rational(1) / Rational(0), DivisionByZero);
}

TEST(Rational, ParseIsStrictInverseOfStr) {
    for (const char* s : {"0", "-220", "88/5", "-1/2", "2448/25"}) EXPECT_EQ(Rational::parse(s).str(), s);
    for (const char* s : {"4/2", "3/1", "-0", "+5", " 5", "5 ", "1/-2", "1/0", "", "x", "1/2/3", "99999999999999999999"})
        EXPECT_ANY_THROW(Rational::parse(s)) << s;
}

TEST(Rational, ArithmeticAndOrderProperty) {
    for (int trial = 0; trial < 2000; ++trial) {
        const auto n1 = static_cast<std::int64_t>(uniform(0, 2000)) - 1000, d1 = static_cast<std::int64_t>(uniform(1, 300));
        const auto n2 = static_cast<std::int64_t>(uniform(0, 2000)) - 1000, d2 = static_cast<std::int64_t>(uniform(1, 300));
        const Rational a(n1, d1), b(n2, d2);
        EXPECT_EQ(a + b - b, a);
        EXPECT_EQ(a + b, Rational(n1 * d2 + n2 * d1, d1 * d2));
        EXPECT_EQ(a * b, Rational(n1 * n2, d1 * d2));
        EXPECT_EQ(a < b, n1 * d2 < n2 * d1);
        if (n2 != 0) EXPECT_EQ(a / b * b, a);
    }
}

}  // namespace
}  // namespace frobsyz
