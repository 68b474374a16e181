#ifndef FROBSYZ_MATRIX_HPP
#define FROBSYZ_MATRIX_HPP

#include <algorithm>
#include <cstdint>
#include <numeric>
#include <span>
#include <stdexcept>
#include <unordered_map>
#include <utility>
#include <vector>

#include "prime_field.hpp"

namespace frobsyz {

using VectorModP = std::vector<std::uint32_t>;

/// Dense row-major matrix over F_p.
class MatrixModP {
public:
    MatrixModP(const PrimeField& field, std::size_t rows, std::size_t cols)
        : field_(field), rows_(rows), cols_(cols), a_(rows * cols, 0) {}

    static MatrixModP identity(const PrimeField& field, std::size_t n) {
        MatrixModP m(field, n, n);
        for (std::size_t i = 0; i < n; ++i) m.set(i, i, 1);
        return m;
    }

    const PrimeField& field() const { return field_; }
    std::size_t rows() const { return rows_; }
    std::size_t cols() const { return cols_; }

    std::uint32_t at(std::size_t r, std::size_t c) const { return a_[r * cols_ + c]; }
    void set(std::size_t r, std::size_t c, std::uint32_t v) { a_[r * cols_ + c] = v % field_.characteristic(); }

    VectorModP apply(std::span<const std::uint32_t> v) const {
        if (v.size() != cols_) throw std::invalid_argument("apply: dimension mismatch");
        VectorModP out(rows_, 0);
        const std::uint64_t p = field_.characteristic();
        for (std::size_t r = 0; r < rows_; ++r) {
            std::uint64_t acc = 0;
            const std::uint32_t* row = &a_[r * cols_];
            for (std::size_t c = 0; c < cols_; ++c) acc = (acc + static_cast<std::uint64_t>(row[c]) * v[c]) % p;
            out[r] = static_cast<std::uint32_t>(acc);
        }
        return out;
    }

    friend MatrixModP operator*(const MatrixModP& a, const MatrixModP& b) {
        if (a.cols_ != b.rows_ || !(a.field_ == b.field_)) throw std::invalid_argument("matrix product: shape mismatch");
        MatrixModP r(a.field_, a.rows_, b.cols_);
        const std::uint64_t p = a.field_.characteristic();
        for (std::size_t i = 0; i < a.rows_; ++i)
            for (std::size_t k = 0; k < a.cols_; ++k) {
                std::uint64_t x = a.at(i, k);
                if (x == 0) continue;
                for (std::size_t j = 0; j < b.cols_; ++j)
                    r.a_[i * r.cols_ + j] = static_cast<std::uint32_t>((r.a_[i * r.cols_ + j] + x * b.at(k, j)) % p);
            }
        return r;
    }

    friend bool operator==(const MatrixModP&, const MatrixModP&) = default;

    struct Echelon;

    /// Reduced row echelon form. Pivot: first nonzero entry, scanning columns left
    /// to right and rows top to bottom.
    Echelon rref() const;
    std::size_t rank() const;

    /// Basis of {v : Mv = 0}, one vector per non-pivot column f (in increasing f),
    /// with v[f] = 1 and zeros on the other non-pivot columns.
    std::vector<VectorModP> kernel_basis() const;

private:
    PrimeField field_;
    std::size_t rows_, cols_;
    std::vector<std::uint32_t> a_;
};

struct MatrixModP::Echelon {
    MatrixModP reduced;
    std::vector<std::size_t> pivot_cols;  // pivot_cols[i] is the pivot of row i
};

inline MatrixModP::Echelon MatrixModP::rref() const {
    MatrixModP m = *this;
    std::vector<std::size_t> pivots;
    const std::uint64_t p = field_.characteristic();
    std::size_t row = 0;
    for (std::size_t c = 0; c < cols_ && row < rows_; ++c) {
        std::size_t piv = row;
        while (piv < rows_ && m.at(piv, c) == 0) ++piv;
        if (piv == rows_) continue;
        if (piv != row)
            std::swap_ranges(m.a_.begin() + piv * cols_, m.a_.begin() + (piv + 1) * cols_, m.a_.begin() + row * cols_);
        std::uint32_t* prow = &m.a_[row * cols_];
        const std::uint64_t s = field_.inv(prow[c]);
        for (std::size_t j = c; j < cols_; ++j) prow[j] = static_cast<std::uint32_t>(prow[j] * s % p);
        for (std::size_t r = 0; r < rows_; ++r) {
            if (r == row) continue;
            std::uint32_t* rr = &m.a_[r * cols_];
            const std::uint64_t f = rr[c];
            if (f == 0) continue;
            const std::uint64_t nf = p - f;
            for (std::size_t j = c; j < cols_; ++j)
                if (prow[j] != 0) rr[j] = static_cast<std::uint32_t>((rr[j] + nf * prow[j]) % p);
        }
        pivots.push_back(c);
        ++row;
    }
    return {std::move(m), std::move(pivots)};
}

inline std::size_t MatrixModP::rank() const { return rref().pivot_cols.size(); }

inline std::vector<VectorModP> MatrixModP::kernel_basis() const {
    auto [red, pivots] = rref();
    std::vector<char> is_pivot(cols_, 0);
    for (auto c : pivots) is_pivot[c] = 1;
    std::vector<VectorModP> basis;
    for (std::size_t f = 0; f < cols_; ++f) {
        if (is_pivot[f]) continue;
        VectorModP v(cols_, 0);
        v[f] = 1;
        for (std::size_t i = 0; i < pivots.size(); ++i) v[pivots[i]] = field_.neg(red.at(i, f));
        basis.push_back(std::move(v));
    }
    return basis;
}

/// Column-sparse matrix over F_p. Elimination splits the matrix into connected
/// components of its row/column incidence graph and reduces each one densely.
/// kernel_basis() returns exactly what MatrixModP::kernel_basis() returns for the
/// same matrix: the reduced echelon kernel basis is unique, and a column is a
/// pivot iff it is a pivot inside its own component.
class SparseMatrixModP {
public:
    using Column = std::vector<std::pair<std::size_t, std::uint32_t>>;

    SparseMatrixModP(const PrimeField& field, std::size_t rows) : field_(field), rows_(rows) {}

    const PrimeField& field() const { return field_; }
    std::size_t rows() const { return rows_; }
    std::size_t cols() const { return cols_.size(); }

    /// Entries may repeat a row (they are summed) and may be zero.
    void push_column(Column col) {
        std::sort(col.begin(), col.end());
        Column merged;
        for (const auto& [r, v] : col) {
            if (r >= rows_) throw std::out_of_range("sparse column row index");
            const std::uint32_t rv = v % field_.characteristic();
            if (!merged.empty() && merged.back().first == r)
                merged.back().second = field_.add(merged.back().second, rv);
            else
                merged.emplace_back(r, rv);
        }
        std::erase_if(merged, [](const auto& e) { return e.second == 0; });
        cols_.push_back(std::move(merged));
    }

    const Column& column(std::size_t c) const { return cols_[c]; }

    MatrixModP to_dense() const {
        MatrixModP m(field_, rows_, cols_.size());
        for (std::size_t c = 0; c < cols_.size(); ++c)
            for (const auto& [r, v] : cols_[c]) m.set(r, c, v);
        return m;
    }

    std::vector<VectorModP> kernel_basis() const {
        std::vector<std::pair<std::size_t, VectorModP>> found;  // (free column, vector)
        for (const auto& comp : components()) {
            MatrixModP local = local_matrix(comp);
            auto [red, pivots] = local.rref();
            std::vector<char> is_pivot(comp.cols.size(), 0);
            for (auto c : pivots) is_pivot[c] = 1;
            for (std::size_t f = 0; f < comp.cols.size(); ++f) {
                if (is_pivot[f]) continue;
                VectorModP v(cols_.size(), 0);
                v[comp.cols[f]] = 1;
                for (std::size_t i = 0; i < pivots.size(); ++i) v[comp.cols[pivots[i]]] = field_.neg(red.at(i, f));
                found.emplace_back(comp.cols[f], std::move(v));
            }
        }
        std::sort(found.begin(), found.end(), [](const auto& a, const auto& b) { return a.first < b.first; });
        std::vector<VectorModP> basis;
        basis.reserve(found.size());
        for (auto& [f, v] : found) basis.push_back(std::move(v));
        return basis;
    }

    std::size_t rank() const {
        std::size_t r = 0;
        for (const auto& comp : components())
            if (!comp.rows.empty()) r += local_matrix(comp).rank();
        return r;
    }

    /// Whether some nonzero v has Mv = 0. Components with more columns than rows
    /// answer without elimination.
    bool has_nontrivial_kernel() const {
        auto comps = components();
        for (const auto& comp : comps)
            if (comp.cols.size() > comp.rows.size()) return true;
        for (const auto& comp : comps)
            if (local_matrix(comp).rank() < comp.cols.size()) return true;
        return false;
    }

private:
    struct Component {
        std::vector<std::size_t> rows;  // increasing
        std::vector<std::size_t> cols;  // increasing
    };

    std::vector<Component> components() const {
        std::vector<std::size_t> parent(rows_);
        std::iota(parent.begin(), parent.end(), std::size_t{0});
        auto find = [&](std::size_t x) {
            while (parent[x] != x) {
                parent[x] = parent[parent[x]];
                x = parent[x];
            }
            return x;
        };
        for (const auto& col : cols_)
            for (std::size_t i = 1; i < col.size(); ++i) {
                std::size_t a = find(col[0].first), b = find(col[i].first);
                if (a != b) parent[std::max(a, b)] = std::min(a, b);
            }
        std::vector<Component> comps;
        std::unordered_map<std::size_t, std::size_t> slot;  // root row -> component
        for (std::size_t c = 0; c < cols_.size(); ++c) {
            if (cols_[c].empty()) {
                comps.push_back({{}, {c}});
                continue;
            }
            std::size_t root = find(cols_[c][0].first);
            auto [it, inserted] = slot.try_emplace(root, comps.size());
            if (inserted) comps.emplace_back();
            comps[it->second].cols.push_back(c);
        }
        for (std::size_t r = 0; r < rows_; ++r) {
            auto it = slot.find(find(r));
            if (it != slot.end()) comps[it->second].rows.push_back(r);
        }
        return comps;
    }

    MatrixModP local_matrix(const Component& comp) const {
        MatrixModP m(field_, comp.rows.size(), comp.cols.size());
        for (std::size_t j = 0; j < comp.cols.size(); ++j)
            for (const auto& [r, v] : cols_[comp.cols[j]]) {
                auto pos = std::lower_bound(comp.rows.begin(), comp.rows.end(), r) - comp.rows.begin();
                m.set(static_cast<std::size_t>(pos), j, v);
            }
        return m;
    }

    PrimeField field_;
    std::size_t rows_;
    std::vector<Column> cols_;
};

}  // namespace frobsyz

#endif  // FROBSYZ_MATRIX_HPP
