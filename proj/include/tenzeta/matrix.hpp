#pragma once

#include <algorithm>
#include <cstdint>
#include <vector>

#include "tenzeta/gf.hpp"

namespace tenzeta {

/// Dense matrix over a finite field, row-major.
class MatrixGF {
public:
    MatrixGF() : rows_(0), cols_(0) {}
    MatrixGF(Field f, size_t rows, size_t cols)
        : field_(std::move(f)), rows_(rows), cols_(cols), a_(rows * cols, 0) {}
    MatrixGF(Field f, size_t rows, size_t cols, std::vector<gf_t> entries)
        : field_(std::move(f)), rows_(rows), cols_(cols), a_(std::move(entries)) {
        if (a_.size() != rows_ * cols_) throw std::invalid_argument("MatrixGF: entry count mismatch");
        for (gf_t v : a_)
            if (v >= field_.q()) throw std::invalid_argument("MatrixGF: entry not a field element");
    }

    const Field& field() const { return field_; }
    size_t rows() const { return rows_; }
    size_t cols() const { return cols_; }

    gf_t at(size_t r, size_t c) const { return a_[r * cols_ + c]; }
    void set(size_t r, size_t c, gf_t v) { a_[r * cols_ + c] = v; }

    std::vector<gf_t> row(size_t r) const {
        return std::vector<gf_t>(a_.begin() + static_cast<long>(r * cols_),
                                 a_.begin() + static_cast<long>((r + 1) * cols_));
    }
    void append_row(const std::vector<gf_t>& v) {
        if (v.size() != cols_) throw std::invalid_argument("MatrixGF: row length mismatch");
        a_.insert(a_.end(), v.begin(), v.end());
        ++rows_;
    }

    static MatrixGF identity(const Field& f, size_t n) {
        MatrixGF m(f, n, n);
        for (size_t i = 0; i < n; ++i) m.set(i, i, 1);
        return m;
    }

    /// Rows of `top` followed by rows of `bottom`.
    static MatrixGF stacked(const MatrixGF& top, const MatrixGF& bottom) {
        if (top.cols_ != bottom.cols_ || top.field_ != bottom.field_)
            throw std::invalid_argument("MatrixGF::stacked: incompatible matrices");
        MatrixGF m(top.field_, 0, top.cols_);
        m.a_.reserve(top.a_.size() + bottom.a_.size());
        m.a_ = top.a_;
        m.a_.insert(m.a_.end(), bottom.a_.begin(), bottom.a_.end());
        m.rows_ = top.rows_ + bottom.rows_;
        return m;
    }

    bool operator==(const MatrixGF& o) const {
        return field_ == o.field_ && rows_ == o.rows_ && cols_ == o.cols_ && a_ == o.a_;
    }
    bool operator!=(const MatrixGF& o) const { return !(*this == o); }

private:
    Field field_;
    size_t rows_, cols_;
    std::vector<gf_t> a_;
};

struct RrefResult {
    MatrixGF reduced;           // full RREF, zero rows included
    size_t rank = 0;
    std::vector<size_t> pivots;  // pivot column per nonzero row
};

namespace detail {

// GF(2) kernel for matrices with at most 64 columns; rows packed into words.
inline size_t bit_rref(std::vector<std::uint64_t>& rows, size_t cols, std::vector<size_t>* pivots) {
    size_t rank = 0;
    for (size_t c = 0; c < cols && rank < rows.size(); ++c) {
        size_t sel = rank;
        while (sel < rows.size() && !((rows[sel] >> c) & 1u)) ++sel;
        if (sel == rows.size()) continue;
        std::swap(rows[rank], rows[sel]);
        for (size_t i = 0; i < rows.size(); ++i)
            if (i != rank && ((rows[i] >> c) & 1u)) rows[i] ^= rows[rank];
        if (pivots) pivots->push_back(c);
        ++rank;
    }
    return rank;
}

}  // namespace detail

/// Reduced row-echelon form. The result is the unique canonical form of the row
/// space; `rank` counts the nonzero rows, which come first.
inline RrefResult rref(const MatrixGF& m) {
    const Field& f = m.field();
    RrefResult out;
    if (f.q() == 2 && m.cols() <= 64) {
        std::vector<std::uint64_t> rows(m.rows(), 0);
        for (size_t r = 0; r < m.rows(); ++r)
            for (size_t c = 0; c < m.cols(); ++c)
                if (m.at(r, c)) rows[r] |= 1ull << c;
        out.rank = detail::bit_rref(rows, m.cols(), &out.pivots);
        MatrixGF red(f, m.rows(), m.cols());
        for (size_t r = 0; r < m.rows(); ++r)
            for (size_t c = 0; c < m.cols(); ++c) red.set(r, c, static_cast<gf_t>((rows[r] >> c) & 1u));
        out.reduced = std::move(red);
        return out;
    }
    MatrixGF red = m;
    size_t rank = 0;
    for (size_t c = 0; c < m.cols() && rank < m.rows(); ++c) {
        size_t sel = rank;
        while (sel < m.rows() && red.at(sel, c) == 0) ++sel;
        if (sel == m.rows()) continue;
        if (sel != rank)
            for (size_t j = 0; j < m.cols(); ++j) {
                gf_t t = red.at(rank, j);
                red.set(rank, j, red.at(sel, j));
                red.set(sel, j, t);
            }
        gf_t piv_inv = f.inv(red.at(rank, c));
        for (size_t j = 0; j < m.cols(); ++j) red.set(rank, j, f.mul(red.at(rank, j), piv_inv));
        for (size_t i = 0; i < m.rows(); ++i) {
            if (i == rank) continue;
            gf_t v = red.at(i, c);
            if (v == 0) continue;
            for (size_t j = 0; j < m.cols(); ++j) red.set(i, j, f.sub(red.at(i, j), f.mul(v, red.at(rank, j))));
        }
        out.pivots.push_back(c);
        ++rank;
    }
    out.rank = rank;
    out.reduced = std::move(red);
    return out;
}

inline size_t rank_of(const MatrixGF& m) { return rref(m).rank; }

/// Canonical basis of the right kernel {v : M v = 0}, returned in RREF.
inline MatrixGF nullspace(const MatrixGF& m) {
    RrefResult r = rref(m);
    const Field& f = m.field();
    std::vector<bool> is_pivot(m.cols(), false);
    for (size_t c : r.pivots) is_pivot[c] = true;
    MatrixGF basis(f, 0, m.cols());
    for (size_t c = 0; c < m.cols(); ++c) {
        if (is_pivot[c]) continue;
        std::vector<gf_t> v(m.cols(), 0);
        v[c] = 1;
        for (size_t i = 0; i < r.rank; ++i) v[r.pivots[i]] = f.neg(r.reduced.at(i, c));
        basis.append_row(v);
    }
    return rref(basis).reduced;  // canonical form (nonzero rows = all rows here)
}

}  // namespace tenzeta
