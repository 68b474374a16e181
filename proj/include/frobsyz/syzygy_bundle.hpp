#ifndef FROBSYZ_SYZYGY_BUNDLE_HPP
#define FROBSYZ_SYZYGY_BUNDLE_HPP

#include <array>
#include <cstdint>
#include <stdexcept>
#include <string>
#include <vector>

#include "fermat_ring.hpp"
#include "rational.hpp"

namespace frobsyz {

enum class Elimination { dense, sparse };

/// Syz(X^a1, Y^a2, Z^a3)(m) on the Fermat curve of degree d, or on P^2 when d == 0.
/// Pure variable powers never vanish simultaneously on P^2, so the three
/// generators define a rank-2 bundle on every curve.
struct SyzygySpec {
    PrimeField field;
    std::uint64_t d = 0;
    std::array<std::uint64_t, 3> exponents{1, 1, 1};
    std::int64_t twist = 0;

    SyzygySpec(const PrimeField& f, std::uint64_t curve_degree, std::array<std::uint64_t, 3> a, std::int64_t m = 0)
        : field(f), d(curve_degree), exponents(a), twist(m) {
        for (auto ai : exponents)
            if (ai == 0) throw std::invalid_argument("syzygy exponents must be at least 1");
        std::uint64_t s = 0;
        for (auto ai : exponents) s = detail::checked_add(s, ai, "exponent sum");
        if (s > static_cast<std::uint64_t>(INT64_MAX)) throw OverflowError("exponent sum exceeds 64-bit range");
    }

    static SyzygySpec uniform(const PrimeField& f, std::uint64_t curve_degree, std::uint64_t a, std::int64_t m = 0) {
        return SyzygySpec(f, curve_degree, {a, a, a}, m);
    }

    FermatRing ring() const { return FermatRing(field, d); }
    bool on_curve() const { return d != 0; }
    std::int64_t exponent_sum() const {
        return static_cast<std::int64_t>(exponents[0] + exponents[1] + exponents[2]);
    }

    std::array<GradedPoly, 3> generators() const {
        return {x_pow(field, exponents[0]), y_pow(field, exponents[1]), z_pow(field, exponents[2])};
    }

    friend bool operator==(const SyzygySpec&, const SyzygySpec&) = default;
};

/// (s1, s2, s3) with s1 X^a1 + s2 Y^a2 + s3 Z^a3 = 0 in R, deg s_i = t - a_i.
/// The relation is re-checked on construction.
class SectionVector {
public:
    SectionVector(const SyzygySpec& spec, std::int64_t total_twist, std::array<GradedPoly, 3> components)
        : spec_(spec), twist_(total_twist), s_(std::move(components)) {
        const FermatRing ring = spec_.ring();
        for (int i = 0; i < 3; ++i) {
            const std::int64_t want = total_twist - static_cast<std::int64_t>(spec_.exponents[i]);
            if (want < 0) {
                if (!s_[i].is_zero()) throw std::invalid_argument("section component in negative degree");
                s_[i] = GradedPoly(spec_.field, 0);
                continue;
            }
            if (!(s_[i].field() == spec_.field) || s_[i].degree() != static_cast<std::uint64_t>(want))
                throw std::invalid_argument("section component " + std::to_string(i + 1) + " has wrong degree");
            if (!(ring.reduce(s_[i]) == s_[i]))
                throw std::invalid_argument("section component " + std::to_string(i + 1) + " not in normal form");
        }
        if (!relation_holds()) throw std::invalid_argument("section does not satisfy the syzygy relation");
    }

    const SyzygySpec& spec() const { return spec_; }
    std::int64_t total_twist() const { return twist_; }
    const std::array<GradedPoly, 3>& components() const { return s_; }
    const GradedPoly& operator[](std::size_t i) const { return s_[i]; }
    bool is_zero() const { return s_[0].is_zero() && s_[1].is_zero() && s_[2].is_zero(); }

    /// normal_form(s1 X^a1 + s2 Y^a2 + s3 Z^a3) == 0.
    bool relation_holds() const {
        const FermatRing ring = spec_.ring();
        const auto gens = spec_.generators();
        if (twist_ < 0) return is_zero();
        GradedPoly sum(spec_.field, static_cast<std::uint64_t>(twist_));
        for (int i = 0; i < 3; ++i) {
            if (static_cast<std::int64_t>(spec_.exponents[i]) > twist_) continue;
            sum += s_[i] * gens[i];
        }
        return ring.reduce(sum).is_zero();
    }

    friend bool operator==(const SectionVector& a, const SectionVector& b) {
        return a.spec_ == b.spec_ && a.twist_ == b.twist_ && a.s_ == b.s_;
    }

private:
    SyzygySpec spec_;
    std::int64_t twist_;
    std::array<GradedPoly, 3> s_;
};

/// F^{e*}: exponents and twist scale by q = p^e, the curve is unchanged.
inline SyzygySpec frobenius_pullback(const SyzygySpec& spec, std::uint64_t e) {
    const std::uint64_t q = detail::checked_pow(spec.field.characteristic(), e, "q = p^e");
    std::array<std::uint64_t, 3> a{};
    for (int i = 0; i < 3; ++i) a[i] = detail::checked_mul(spec.exponents[i], q, "pulled-back exponent");
    if (q > static_cast<std::uint64_t>(INT64_MAX)) throw OverflowError("q exceeds 64-bit range");
    return SyzygySpec(spec.field, spec.d, a, detail::checked_mul(spec.twist, static_cast<std::int64_t>(q), "pulled-back twist"));
}

/// The q-th power of a section is a section of the pulled-back bundle.
inline SectionVector frobenius_pullback(const SectionVector& s, std::uint64_t e) {
    const SyzygySpec pulled = frobenius_pullback(s.spec(), e);
    const FermatRing ring = pulled.ring();
    const auto q = static_cast<std::int64_t>(detail::checked_pow(s.spec().field.characteristic(), e, "q = p^e"));
    std::array<GradedPoly, 3> comps{ring.reduce(frobenius_power(s[0], e)), ring.reduce(frobenius_power(s[1], e)),
                                    ring.reduce(frobenius_power(s[2], e))};
    return SectionVector(pulled, detail::checked_mul(s.total_twist(), q, "pulled-back twist"), std::move(comps));
}

/// The evaluation map R_{t-a1} + R_{t-a2} + R_{t-a3} -> R_t at total twist t,
/// columns grouped by generator.
inline SparseMatrixModP syzygy_matrix(const SyzygySpec& spec, std::int64_t total_twist) {
    const FermatRing ring = spec.ring();
    SparseMatrixModP m(spec.field, ring.basis(total_twist).size());
    const auto gens = spec.generators();
    for (int i = 0; i < 3; ++i)
        ring.append_multiplication_columns(m, gens[i], total_twist - static_cast<std::int64_t>(spec.exponents[i]));
    return m;
}

namespace detail {

inline std::vector<SectionVector> unpack_kernel(const SyzygySpec& spec, std::int64_t t,
                                                const std::vector<VectorModP>& kernel) {
    const FermatRing ring = spec.ring();
    std::array<std::size_t, 3> dims{};
    for (int i = 0; i < 3; ++i) dims[i] = ring.basis(t - static_cast<std::int64_t>(spec.exponents[i])).size();
    std::vector<SectionVector> out;
    out.reserve(kernel.size());
    for (const auto& v : kernel) {
        std::array<GradedPoly, 3> comps{GradedPoly(spec.field, 0), GradedPoly(spec.field, 0), GradedPoly(spec.field, 0)};
        std::size_t off = 0;
        for (int i = 0; i < 3; ++i) {
            const std::int64_t deg = t - static_cast<std::int64_t>(spec.exponents[i]);
            if (deg >= 0)
                comps[i] = ring.from_coordinates(deg, std::span<const std::uint32_t>(v).subspan(off, dims[i]));
            off += dims[i];
        }
        out.emplace_back(spec, t, std::move(comps));
    }
    return out;
}

}  // namespace detail

/// Basis of the degree-(m + n) module syzygies, i.e. global sections of
/// Syz(...)(m)(n) realized in R. On the curve this may be strictly smaller than
/// H^0 in low degrees, so its dimension is a lower bound.
inline std::vector<SectionVector> section_space(const SyzygySpec& spec, std::int64_t n,
                                                Elimination path = Elimination::sparse) {
    const std::int64_t t = detail::checked_add(spec.twist, n, "twist");
    const SparseMatrixModP m = syzygy_matrix(spec, t);
    auto kernel = path == Elimination::sparse ? m.kernel_basis() : m.to_dense().kernel_basis();
    return detail::unpack_kernel(spec, t, kernel);
}

inline std::size_t section_dimension(const SyzygySpec& spec, std::int64_t n, Elimination path = Elimination::sparse) {
    const SparseMatrixModP m = syzygy_matrix(spec, detail::checked_add(spec.twist, n, "twist"));
    return m.cols() - (path == Elimination::sparse ? m.rank() : m.to_dense().rank());
}

inline bool has_section(const SyzygySpec& spec, std::int64_t n, Elimination path = Elimination::sparse) {
    const SparseMatrixModP m = syzygy_matrix(spec, detail::checked_add(spec.twist, n, "twist"));
    if (path == Elimination::sparse) return m.has_nontrivial_kernel();
    return m.to_dense().rank() < m.cols();
}

struct DegreeSlope {
    std::int64_t degree;
    Rational slope;
};

/// deg Syz(...)(m) = 2m - (a1+a2+a3) on P^2 w.r.t. O(1); on the curve every
/// degree is multiplied by d = deg O_C(1). Rank is 2.
inline DegreeSlope degree_and_slope(const SyzygySpec& spec) {
    std::int64_t deg = detail::checked_sub(detail::checked_mul(std::int64_t{2}, spec.twist, "degree"), spec.exponent_sum(), "degree");
    if (spec.on_curve()) deg = detail::checked_mul(deg, static_cast<std::int64_t>(spec.d), "degree");
    return {deg, Rational(deg, 2)};
}

}  // namespace frobsyz

#endif  // FROBSYZ_SYZYGY_BUNDLE_HPP
