#include <gtest/gtest.h>

#include "test_support.hpp"

namespace frobsyz {
namespace {

using testing::oracle_rank;
using testing::uniform;

std::uint64_t ipow(std::uint64_t b, std::uint64_t e) {
    std::uint64_t r = 1;
    while (e--) r *= b;
    return r;
}

bool window_ok(std::uint64_t p, std::uint64_t a, std::uint64_t d, std::uint64_t e) {
    const std::uint64_t base = a * ipow(p, e - 1);
    return base < d && 2 * d < 3 * base && d % p != 0;
}

TEST(FindParameters, Examples) {
    const ParameterChoice c = find_parameters(5, 2, 8);
    EXPECT_EQ(c.e, 2u);
    EXPECT_EQ(c.d, 11u);
    EXPECT_EQ(c.q, 25u);
    EXPECT_EQ(c.k, 5);
    EXPECT_EQ(c.m, 55);
    EXPECT_EQ(c.k, static_cast<std::int64_t>(c.p));  // d = a p^(e-1) + 1 gives k = p

    const ParameterChoice two = find_parameters(2, 1, 1);
    EXPECT_EQ(two.e, 3u);
    EXPECT_EQ(two.d, 5u);
    EXPECT_EQ(two.k, 2);
}

TEST(FindParameters, InvariantsAndMinimalityProperty) {
    for (int trial = 0; trial < 400; ++trial) {
        const std::uint64_t p = std::vector<std::uint64_t>{2, 3, 5, 7, 11, 13}[uniform(0, 5)];
        const std::uint64_t a = uniform(1, 6), d0 = uniform(1, 300);
        const ParameterChoice c = find_parameters(p, a, d0);
        const std::uint64_t base = a * ipow(p, c.e - 1);
        EXPECT_GE(base, d0);
        EXPECT_TRUE(window_ok(p, a, c.d, c.e));
        EXPECT_EQ(c.q, ipow(p, c.e));
        EXPECT_EQ(c.m, static_cast<std::int64_t>(c.d * p));
        EXPECT_EQ(c.k, static_cast<std::int64_t>(c.d * p - a * c.q));
        EXPECT_GT(c.k, 0);
        EXPECT_LT(2 * c.d * p, 3 * a * c.q);
        // brute force: no smaller e, no smaller d at this e
        for (std::uint64_t e = 1; e < c.e; ++e) {
            if (a * ipow(p, e - 1) < d0) continue;
            for (std::uint64_t d = 1; d < 3 * a * ipow(p, e - 1); ++d) EXPECT_FALSE(window_ok(p, a, d, e)) << p << " " << a << " " << d0;
        }
        if (window_ok(p, a, base + 1, c.e))
            EXPECT_EQ(c.d, base + 1);
        else
            for (std::uint64_t d = base + 1; d < c.d; ++d) EXPECT_FALSE(window_ok(p, a, d, c.e));
    }
}

TEST(FindParameters, Errors) {
    EXPECT_THROW(find_parameters(4, 2, 8), std::invalid_argument);
    EXPECT_THROW(find_parameters(5, 0, 8), std::invalid_argument);
    EXPECT_THROW(find_parameters(5, 2, 0), std::invalid_argument);
    EXPECT_THROW(find_parameters(2147483647, 1000, 1'000'000'000'000'000'000), OverflowError);
}

TEST(Certify, FermatDegree11) {
    const DestabCertificate c = certify_destabilization(5, 2, 11);
    const PrimeField f(5);
    EXPECT_EQ(c.e, 2u);
    EXPECT_EQ(c.q, 25u);
    EXPECT_EQ(c.k, 5);
    EXPECT_EQ(c.twist, 55);
    EXPECT_EQ(c.degree, -440);
    EXPECT_EQ(c.slope, Rational(-220));
    EXPECT_EQ(c.slope_sub, Rational(0));
    EXPECT_EQ(c.slope_quotient, Rational(-440));
    EXPECT_EQ(c.normalized_gap, Rational(88, 5));
    EXPECT_TRUE(c.smooth);
    EXPECT_EQ(c.source, "construction");
    EXPECT_EQ(c.section[0], x_pow(f, 5));
    EXPECT_EQ(c.section[1], y_pow(f, 5));
    EXPECT_EQ(c.section[2], z_pow(f, 5));
}

TEST(Certify, BoundaryAndSmoothnessRejected) {
    EXPECT_THROW(certify_destabilization(5, 2, 3), InapplicableError);  // 2dp = 3aq = 30
    EXPECT_THROW(certify_destabilization(5, 2, 10), SmoothnessError);
    EXPECT_THROW(certify_destabilization(5, 0, 11), std::invalid_argument);
    EXPECT_THROW(certify_destabilization(6, 2, 11), std::invalid_argument);
    try {
        certify_destabilization(5, 2, 3);
    } catch (const InapplicableError& ex) {
        EXPECT_NE(std::string(ex.what()).find("construction inapplicable for (p,a,d) = (5,2,3)"), std::string::npos);
    }
}

TEST(Certify, InequalityFormsAgreeAndSectionReverifiesProperty) {
    int accepted = 0;
    for (int trial = 0; trial < 300; ++trial) {
        const std::uint64_t p = std::vector<std::uint64_t>{2, 3, 5, 7}[uniform(0, 3)];
        const std::uint64_t a = uniform(1, 4), d = uniform(1, 30);
        if (d % p == 0) {
            EXPECT_THROW(certify_destabilization(p, a, d), SmoothnessError);
            continue;
        }
        std::optional<std::uint64_t> level;
        for (std::uint64_t e = 0; a * ipow(p, e) < d * p; ++e)
            if (2 * d * p < 3 * a * ipow(p, e)) {
                level = e;
                break;
            }
        if (!level) {
            EXPECT_THROW(certify_destabilization(p, a, d), InapplicableError);
            continue;
        }
        const DestabCertificate c = certify_destabilization(p, a, d);
        ++accepted;
        const auto aq = static_cast<std::int64_t>(a * c.q);
        const auto dp = static_cast<std::int64_t>(d * p);
        EXPECT_EQ(c.e, *level);
        EXPECT_EQ(aq < dp && 2 * dp < 3 * aq, c.k > 0 && 2 * dp - 3 * aq < 0);
        EXPECT_EQ(c.degree, (2 * dp - 3 * aq) * static_cast<std::int64_t>(d));
        EXPECT_TRUE(c.section.relation_holds());
        EXPECT_FALSE(c.section.is_zero());
        // independent membership: appending the section to a kernel basis keeps the rank
        const auto basis = section_space(c.bundle(), 0);
        ASSERT_FALSE(basis.empty());
        const FermatRing ring = c.bundle().ring();
        auto flat = [&](const SectionVector& s) {
            std::vector<std::uint32_t> out;
            for (int i = 0; i < 3; ++i) {
                const auto v = ring.coordinates(s[i]);
                out.insert(out.end(), v.begin(), v.end());
            }
            return out;
        };
        std::vector<std::vector<std::uint32_t>> rows;
        for (const auto& b : basis) rows.push_back(flat(b));
        const std::size_t r0 = oracle_rank(rows, static_cast<std::uint32_t>(p));
        rows.push_back(flat(c.section));
        EXPECT_EQ(oracle_rank(rows, static_cast<std::uint32_t>(p)), r0);
    }
    EXPECT_GT(accepted, 50);
}

// Linear scan over (e, n) with a from-scratch dimension count.
std::optional<std::pair<std::uint64_t, std::int64_t>> oracle_search(std::uint64_t p, std::uint64_t d, std::uint64_t a,
                                                                    std::uint64_t e_max) {
    for (std::uint64_t e = 0; e <= e_max; ++e) {
        const auto aq = static_cast<std::int64_t>(a * ipow(p, e));
        const SyzygySpec spec = SyzygySpec::uniform(PrimeField(p), d, static_cast<std::uint64_t>(aq));
        for (std::int64_t n = aq + 1; 2 * n < 3 * aq; ++n)
            if (section_dimension(spec, n, Elimination::dense) > 0) return std::make_pair(e, n);
    }
    return std::nullopt;
}

TEST(Search, FindsSmallestLevelAndTwistProperty) {
    for (std::uint64_t p : {2, 3, 5})
        for (std::uint64_t d = 1; d <= 9; ++d)
            for (std::uint64_t a = 1; a <= 3; ++a) {
                if (d % p == 0) {
                    EXPECT_THROW(search_destabilization(p, d, a, 2), SmoothnessError);
                    continue;
                }
                const std::uint64_t e_max = p == 5 ? 1 : 2;
                const auto got = search_destabilization(p, d, a, e_max);
                const auto dense = search_destabilization(p, d, a, e_max, Elimination::dense);
                const auto want = oracle_search(p, d, a, e_max);
                ASSERT_EQ(got.has_value(), want.has_value()) << p << " " << d << " " << a;
                ASSERT_EQ(dense.has_value(), want.has_value());
                if (!want) continue;
                EXPECT_EQ(got->e, want->first);
                EXPECT_EQ(got->twist, want->second);
                EXPECT_TRUE(got->section == dense->section);
                EXPECT_EQ(got->source, "search");
                EXPECT_LT(got->degree, 0);
                EXPECT_TRUE(got->section.relation_holds());
                EXPECT_EQ(got->k, got->twist - static_cast<std::int64_t>(a * got->q));
            }
}

TEST(Search, Fermat11FindsLevelOneBeforeConstruction) {
    const auto c = search_destabilization(5, 11, 2, 2);
    ASSERT_TRUE(c.has_value());
    EXPECT_LE(c->e, 2u);
    EXPECT_LE(c->twist, 55);
    // 10 < 11 < 15: the relation itself gives (X, Y, Z) at level 1, twist 11
    EXPECT_EQ(c->e, 1u);
    EXPECT_EQ(c->twist, 11);
    EXPECT_EQ(c->degree, (22 - 30) * 11);
    const auto dense = search_destabilization(5, 11, 2, 0, Elimination::dense);
    const auto sparse = search_destabilization(5, 11, 2, 0, Elimination::sparse);
    EXPECT_EQ(dense.has_value(), sparse.has_value());
}

TEST(Search, PlaneHasNoCertificate) {
    for (std::uint64_t p : {2, 3, 5})
        for (std::uint64_t a = 1; a <= 3; ++a) EXPECT_FALSE(search_destabilization(p, 0, a, 2).has_value());
}

TEST(Search, Errors) {
    EXPECT_THROW(search_destabilization(5, 11, 0, 1), std::invalid_argument);
    EXPECT_THROW(search_destabilization(5, 10, 2, 1), SmoothnessError);
    EXPECT_THROW(search_destabilization(8, 11, 2, 1), std::invalid_argument);
}

TEST(HN, CertificateFiltration) {
    const DestabCertificate c = certify_destabilization(5, 2, 11);
    const HNData h = hn_data(c);
    EXPECT_EQ(h.sub_slope, Rational(0));
    EXPECT_EQ(h.quotient_slope, Rational((2 * 55 - 150) * 11));
    EXPECT_EQ(h.sub_slope + h.quotient_slope, Rational(h.bundle_degree));
    EXPECT_EQ(h.bundle_degree, c.degree);
    EXPECT_EQ(h.normalized_gap, Rational(88, 5));
}

TEST(HN, GapIsTwistInvariantProperty) {
    for (int trial = 0; trial < 200; ++trial) {
        const std::uint64_t p = std::vector<std::uint64_t>{2, 3, 5, 7}[uniform(0, 3)];
        const ParameterChoice pc = find_parameters(p, uniform(1, 4), uniform(1, 50));
        const DestabCertificate c = certify_destabilization(p, pc.a, pc.d);
        const auto t = static_cast<std::int64_t>(uniform(0, 400)) - 200;
        const HNData h = hn_data(c, t);
        EXPECT_EQ(h.normalized_gap, c.normalized_gap);
        EXPECT_EQ(h.sub_slope, Rational(t * static_cast<std::int64_t>(c.d)));
        EXPECT_EQ(h.sub_slope + h.quotient_slope, Rational(h.bundle_degree));
        EXPECT_EQ(h.bundle_degree, c.degree + 2 * t * static_cast<std::int64_t>(c.d));
    }
}

TEST(Deviation, Examples) {
    const DeviationBound b2 = deviation_lower_bound(5, 2, 2);
    EXPECT_EQ(b2.d, 11u);
    EXPECT_EQ(b2.gap, Rational(88, 5));
    EXPECT_EQ(b2.bound, Rational(16));
    const DeviationBound b3 = deviation_lower_bound(5, 2, 3);
    EXPECT_EQ(b3.d, 51u);
    EXPECT_EQ(b3.gap, Rational(51 * (250 - 10), 125));
    EXPECT_EQ(b3.gap, Rational(9792, 100));
    EXPECT_EQ(b3.bound, Rational(96));
    EXPECT_THROW(deviation_lower_bound(5, 1, 1), InapplicableError);
    EXPECT_THROW(deviation_lower_bound(5, 2, 0), InapplicableError);
    EXPECT_THROW(deviation_lower_bound(5, 4, 1), SmoothnessError);  // d = 5
}

TEST(Deviation, MatchesCertificateGapAndGrowsProperty) {
    for (std::uint64_t p : {3, 5, 7})
        for (std::uint64_t a = 1; a <= 4; ++a) {
            std::optional<Rational> prev_bound, prev_gap;
            for (std::uint64_t e = 1; e <= 5; ++e) {
                const std::uint64_t base = a * ipow(p, e - 1);
                if (2 * (base + 1) >= 3 * base || (base + 1) % p == 0) {
                    EXPECT_THROW(deviation_lower_bound(p, a, e), InapplicableError);
                    continue;
                }
                const DeviationBound b = deviation_lower_bound(p, a, e);
                EXPECT_GE(b.gap, b.bound);
                EXPECT_EQ(b.bound, Rational(static_cast<std::int64_t>(a * a * ipow(p, e - 1)) - 2 * static_cast<std::int64_t>(a)));
                const DestabCertificate c = certify_destabilization(p, a, b.d);
                EXPECT_EQ(c.e, e);
                EXPECT_EQ(c.normalized_gap, b.gap);
                if (prev_gap) {
                    EXPECT_GT(b.gap, *prev_gap);
                    EXPECT_GT(b.bound, *prev_bound);
                }
                prev_gap = b.gap;
                prev_bound = b.bound;
            }
        }
}

TEST(Deviation, BoundRatioTendsToP) {
    Rational prev = deviation_lower_bound(5, 2, 2).bound;
    std::optional<Rational> prev_excess;
    for (std::uint64_t e = 3; e <= 12; ++e) {
        const Rational cur = deviation_lower_bound(5, 2, e).bound;
        const Rational excess = cur / prev - Rational(5);
        EXPECT_GT(excess, Rational(0));
        if (prev_excess) EXPECT_LT(excess, *prev_excess);
        prev_excess = excess;
        prev = cur;
    }
    EXPECT_LT(*prev_excess, Rational(1, 1000));
}

}  // namespace
}  // namespace frobsyz
