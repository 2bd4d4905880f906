#pragma once

#include <functional>
#include <vector>

#include "tenzeta/matrix.hpp"
#include "tenzeta/qbinom.hpp"

namespace tenzeta {

/// A subspace of F_q^m held by its reduced row-echelon basis with no zero rows.
/// Two Subspace values compare equal iff they are the same subspace.
class Subspace {
public:
    Subspace() = default;

    /// The zero subspace of F_q^m.
    Subspace(Field f, size_t ambient) : basis_(std::move(f), 0, ambient) {}

    /// Canonicalize the row space of `gen`.
    static Subspace span(const MatrixGF& gen) {
        RrefResult r = rref(gen);
        Subspace s;
        s.basis_ = MatrixGF(gen.field(), 0, gen.cols());
        for (size_t i = 0; i < r.rank; ++i) s.basis_.append_row(r.reduced.row(i));
        return s;
    }

    static Subspace full(const Field& f, size_t ambient) { return span(MatrixGF::identity(f, ambient)); }

    const MatrixGF& basis() const { return basis_; }
    const Field& field() const { return basis_.field(); }
    size_t ambient() const { return basis_.cols(); }
    size_t dim() const { return basis_.rows(); }
    bool is_zero() const { return dim() == 0; }
    bool is_full() const { return dim() == ambient(); }

    /// Reduce v against the basis; true iff v lies in the subspace.
    bool contains(std::vector<gf_t> v) const {
        const Field& f = field();
        if (v.size() != ambient()) throw std::invalid_argument("Subspace::contains: ambient mismatch");
        for (size_t i = 0; i < dim(); ++i) {
            size_t p = pivot_col(i);
            gf_t c = v[p];
            if (c == 0) continue;
            for (size_t j = 0; j < ambient(); ++j) v[j] = f.sub(v[j], f.mul(c, basis_.at(i, j)));
        }
        for (gf_t x : v)
            if (x != 0) return false;
        return true;
    }

    bool leq(const Subspace& other) const {
        require_compatible(other);
        if (dim() > other.dim()) return false;
        for (size_t i = 0; i < dim(); ++i)
            if (!other.contains(basis_.row(i))) return false;
        return true;
    }

    bool operator==(const Subspace& o) const { return basis_ == o.basis_; }
    bool operator!=(const Subspace& o) const { return !(*this == o); }
    bool operator<(const Subspace& o) const {  // arbitrary total order for map keys
        if (dim() != o.dim()) return dim() < o.dim();
        for (size_t r = 0; r < dim(); ++r)
            for (size_t c = 0; c < ambient(); ++c) {
                gf_t a = basis_.at(r, c), b = o.basis_.at(r, c);
                if (a != b) return a < b;
            }
        return false;
    }

    friend Subspace sum(const Subspace& u, const Subspace& v) {
        u.require_compatible(v);
        return span(MatrixGF::stacked(u.basis_, v.basis_));
    }

    /// Zassenhaus: rref the block matrix [U | U; V | 0]; rows whose left block is
    /// zero carry an intersection basis in their right block.
    friend Subspace intersect(const Subspace& u, const Subspace& v) {
        u.require_compatible(v);
        const Field& f = u.field();
        size_t n = u.ambient();
        MatrixGF blk(f, u.dim() + v.dim(), 2 * n);
        for (size_t i = 0; i < u.dim(); ++i)
            for (size_t j = 0; j < n; ++j) {
                blk.set(i, j, u.basis_.at(i, j));
                blk.set(i, n + j, u.basis_.at(i, j));
            }
        for (size_t i = 0; i < v.dim(); ++i)
            for (size_t j = 0; j < n; ++j) blk.set(u.dim() + i, j, v.basis_.at(i, j));
        RrefResult r = rref(blk);
        MatrixGF inter(f, 0, n);
        for (size_t i = 0; i < r.rank; ++i) {
            bool left_zero = true;
            for (size_t j = 0; j < n && left_zero; ++j) left_zero = (r.reduced.at(i, j) == 0);
            if (!left_zero) continue;
            std::vector<gf_t> row(n);
            for (size_t j = 0; j < n; ++j) row[j] = r.reduced.at(i, n + j);
            inter.append_row(row);
        }
        return span(inter);
    }

    /// Orthogonal complement under the coordinatewise dot product.
    Subspace orthogonal() const {
        if (dim() == 0) return full(field(), ambient());
        return span(nullspace(basis_));
    }

private:
    size_t pivot_col(size_t row) const {
        for (size_t c = 0; c < ambient(); ++c)
            if (basis_.at(row, c) != 0) return c;
        throw std::logic_error("Subspace: zero basis row");
    }
    void require_compatible(const Subspace& o) const {
        if (ambient() != o.ambient() || field() != o.field())
            throw std::invalid_argument("Subspace: ambient/field mismatch");
    }
    MatrixGF basis_;
};

/// Visit every d-dimensional subspace of F_q^m exactly once, as canonical RREF
/// matrices, ordered by pivot-column set (lex) then free entries (odometer).
inline void enumerate_subspaces(size_t m, size_t d, const Field& f,
                                const std::function<void(const Subspace&)>& visit) {
    if (d > m) return;
    if (d == 0) {
        visit(Subspace(f, m));
        return;
    }
    std::vector<size_t> piv(d);
    for (size_t i = 0; i < d; ++i) piv[i] = i;
    auto next_combo = [&]() {
        size_t i = d;
        while (i-- > 0) {
            if (piv[i] < m - d + i) {
                ++piv[i];
                for (size_t j = i + 1; j < d; ++j) piv[j] = piv[j - 1] + 1;
                return true;
            }
        }
        return false;
    };
    do {
        std::vector<bool> is_piv(m, false);
        for (size_t p : piv) is_piv[p] = true;
        std::vector<std::pair<size_t, size_t>> free_pos;  // (row, col)
        for (size_t i = 0; i < d; ++i)
            for (size_t c = piv[i] + 1; c < m; ++c)
                if (!is_piv[c]) free_pos.emplace_back(i, c);
        std::vector<gf_t> vals(free_pos.size(), 0);
        while (true) {
            MatrixGF b(f, d, m);
            for (size_t i = 0; i < d; ++i) b.set(i, piv[i], 1);
            for (size_t t = 0; t < free_pos.size(); ++t) b.set(free_pos[t].first, free_pos[t].second, vals[t]);
            Subspace s;
            s = Subspace::span(b);  // already RREF; span() just revalidates
            visit(s);
            size_t t = vals.size();
            bool carried = false;
            while (t-- > 0) {
                if (vals[t] + 1 < f.q()) {
                    ++vals[t];
                    for (size_t u = t + 1; u < vals.size(); ++u) vals[u] = 0;
                    carried = true;
                    break;
                }
            }
            if (!carried) break;
        }
    } while (next_combo());
}

/// All subspaces of F_q^m, every dimension, in enumeration order.
inline std::vector<Subspace> all_subspaces(size_t m, const Field& f) {
    std::vector<Subspace> out;
    for (size_t d = 0; d <= m; ++d) enumerate_subspaces(m, d, f, [&](const Subspace& s) { out.push_back(s); });
    return out;
}

}  // namespace tenzeta
