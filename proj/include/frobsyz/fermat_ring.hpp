#ifndef FROBSYZ_FERMAT_RING_HPP
#define FROBSYZ_FERMAT_RING_HPP

#include <cstdint>
#include <optional>
#include <stdexcept>
#include <vector>

#include "graded_poly.hpp"
#include "matrix.hpp"

namespace frobsyz {

/// Ordered monomial basis of the degree-n piece: total degree n and, on the
/// curve, X-exponent below d. Order is TermOrder (largest X first, then Y).
class GradedPieceBasis {
public:
    /// d == 0 means no relation.
    GradedPieceBasis(std::int64_t n, std::uint64_t d) : n_(n), d_(d) {
        if (n < 0) return;
        const std::uint64_t un = static_cast<std::uint64_t>(n);
        imax_ = (d == 0 || un < d) ? un : d - 1;
        size_ = 0;
        for (std::uint64_t i = 0; i <= imax_; ++i) size_ += un - i + 1;
    }

    std::int64_t degree() const { return n_; }
    std::size_t size() const { return static_cast<std::size_t>(size_); }

    Monomial at(std::size_t idx) const {
        const std::uint64_t un = static_cast<std::uint64_t>(n_);
        std::uint64_t rest = idx;
        for (std::uint64_t i = imax_ + 1; i-- > 0;) {
            std::uint64_t block = un - i + 1;
            if (rest < block) return {i, un - i - rest, rest};
            rest -= block;
        }
        throw std::out_of_range("basis index");
    }

    std::vector<Monomial> monomials() const {
        std::vector<Monomial> out;
        out.reserve(size());
        if (n_ < 0) return out;
        const std::uint64_t un = static_cast<std::uint64_t>(n_);
        for (std::uint64_t i = imax_ + 1; i-- > 0;)
            for (std::uint64_t j = un - i + 1; j-- > 0;) out.push_back({i, j, un - i - j});
        return out;
    }

    std::optional<std::size_t> index_of(const Monomial& m) const {
        if (n_ < 0 || m.x > imax_ || m.degree() != static_cast<std::uint64_t>(n_)) return std::nullopt;
        const std::uint64_t un = static_cast<std::uint64_t>(n_);
        // blocks for X-exponents imax_, imax_-1, ..., m.x+1 come first
        const std::uint64_t cnt = imax_ - m.x;
        const std::uint64_t before = cnt * (un + 1) - (imax_ * (imax_ + 1) / 2 - m.x * (m.x + 1) / 2);
        return static_cast<std::size_t>(before + (un - m.x - m.y));
    }

private:
    std::int64_t n_;
    std::uint64_t d_;
    std::uint64_t imax_ = 0;
    std::uint64_t size_ = 0;
};

/// R = F_p[X,Y,Z]/(X^d + Y^d + Z^d), or the polynomial ring itself when d == 0.
class FermatRing {
public:
    FermatRing(const PrimeField& field, std::uint64_t d) : field_(field), d_(d) {}

    const PrimeField& field() const { return field_; }
    std::uint64_t degree() const { return d_; }
    bool is_polynomial_ring() const { return d_ == 0; }

    /// The Fermat curve is smooth iff p does not divide d.
    bool smooth() const { return d_ == 0 || d_ % field_.characteristic() != 0; }

    std::optional<FermatRelation> relation() const {
        if (d_ == 0) return std::nullopt;
        return FermatRelation(field_, d_);
    }

    /// dim R_n = C(n+2,2) - C(n-d+2,2).
    std::int64_t hilbert(std::int64_t n) const {
        auto c2 = [](std::int64_t m) { return m < 2 ? std::int64_t{0} : m * (m - 1) / 2; };
        if (n < 0) return 0;
        if (d_ == 0) return c2(n + 2);
        return c2(n + 2) - c2(n - static_cast<std::int64_t>(d_) + 2);
    }

    GradedPieceBasis basis(std::int64_t n) const { return GradedPieceBasis(n, d_); }

    template <typename Sink>
    void reduce_monomial(const Monomial& m, std::uint32_t c, Sink&& sink) const {
        if (d_ == 0) {
            if (c != 0) sink(m, c);
            return;
        }
        FermatRelation(field_, d_).reduce_monomial(m, c, sink);
    }

    GradedPoly reduce(const GradedPoly& f) const {
        if (d_ == 0) return f;
        return normal_form(f, FermatRelation(field_, d_));
    }

    /// Coordinates of a normal-form polynomial in basis(deg f).
    VectorModP coordinates(const GradedPoly& f) const {
        auto b = basis(static_cast<std::int64_t>(f.degree()));
        VectorModP v(b.size(), 0);
        for (const auto& [m, c] : f.terms()) {
            auto idx = b.index_of(m);
            if (!idx) throw std::invalid_argument("coordinates: polynomial not in normal form");
            v[*idx] = c;
        }
        return v;
    }

    GradedPoly from_coordinates(std::int64_t n, std::span<const std::uint32_t> v) const {
        auto b = basis(n);
        if (v.size() != b.size()) throw std::invalid_argument("from_coordinates: dimension mismatch");
        GradedPoly f(field_, static_cast<std::uint64_t>(n));
        for (std::size_t i = 0; i < v.size(); ++i)
            if (v[i] != 0) f.add_raw(b.at(i), v[i]);
        return f;
    }

    /// Columns of (. g): R_n -> R_{n + deg g}, appended to a sparse matrix whose
    /// rows are basis(n + deg g).
    void append_multiplication_columns(SparseMatrixModP& target, const GradedPoly& g, std::int64_t n) const {
        if (n < 0) return;
        const auto src = basis(n);
        const auto dst = basis(n + static_cast<std::int64_t>(g.degree()));
        for (const Monomial& m : src.monomials()) {
            SparseMatrixModP::Column col;
            for (const auto& [mg, cg] : g.terms())
                reduce_monomial(m * mg, cg, [&](const Monomial& out, std::uint32_t c) {
                    auto idx = dst.index_of(out);
                    if (!idx) throw InternalError("reduced monomial outside target basis");
                    col.emplace_back(*idx, c);
                });
            target.push_column(std::move(col));
        }
    }

    /// Dense matrix of (. g): R_n -> R_{n + deg g} in the graded bases.
    MatrixModP multiplication_matrix(const GradedPoly& g, std::int64_t n) const {
        SparseMatrixModP s(field_, basis(n + static_cast<std::int64_t>(g.degree())).size());
        append_multiplication_columns(s, g, n);
        if (n < 0) return MatrixModP(field_, s.rows(), 0);
        return s.to_dense();
    }

private:
    PrimeField field_;
    std::uint64_t d_;
};

}  // namespace frobsyz

#endif  // FROBSYZ_FERMAT_RING_HPP
