#pragma once

#include <algorithm>
#include <optional>
#include <set>
#include <sstream>
#include <string>
#include <vector>

#include "tenzeta/budget.hpp"
#include "tenzeta/subspace.hpp"

namespace tenzeta {

/// Tensor shape (n_1, ..., n_r) with the derived mode sets used throughout:
/// S = modes of minimal size, P = modes of maximal size, delta(i) = modes sharing
/// size n_i, and Delta = the size values {n_i} minus the maximum when the maximum
/// is attained exactly once.
class Shape {
public:
    Shape() = default;
    explicit Shape(std::vector<int> dims) : dims_(std::move(dims)) {
        if (dims_.size() < 2) throw std::invalid_argument("Shape: need r >= 2 modes");
        for (int d : dims_)
            if (d < 2) throw std::invalid_argument("Shape: every mode size must be >= 2");
        n_ = 1;
        for (int d : dims_) n_ *= d;
    }

    int r() const { return static_cast<int>(dims_.size()); }
    int dim(int i) const { return dims_[static_cast<size_t>(i)]; }
    const std::vector<int>& dims() const { return dims_; }
    long long n() const { return n_; }
    int n_min() const { return *std::min_element(dims_.begin(), dims_.end()); }
    int n_max() const { return *std::max_element(dims_.begin(), dims_.end()); }

    std::vector<int> min_modes() const { return modes_of_size(n_min()); }
    std::vector<int> max_modes() const { return modes_of_size(n_max()); }
    std::vector<int> delta(int i) const { return modes_of_size(dim(i)); }

    /// Size values, excluding the maximum when it is attained exactly once.
    std::vector<int> Delta_values() const {
        std::set<int> vals(dims_.begin(), dims_.end());
        if (max_modes().size() == 1) vals.erase(n_max());
        return std::vector<int>(vals.begin(), vals.end());
    }

    bool operator==(const Shape& o) const { return dims_ == o.dims_; }
    bool operator!=(const Shape& o) const { return !(*this == o); }

private:
    std::vector<int> modes_of_size(int v) const {
        std::vector<int> out;
        for (int i = 0; i < r(); ++i)
            if (dim(i) == v) out.push_back(i);
        return out;
    }
    std::vector<int> dims_;
    long long n_ = 0;
};

/// Flattened coordinate of the 1-based multi-index (j_1, ..., j_r): positions are
/// ordered lexicographically by the key (j_r, j_1, j_2, ..., j_{r-1}). For r = 3
/// this is the slice-then-row-major layout (j_3-1)*n_1*n_2 + (j_1-1)*n_2 + (j_2-1).
inline long long flat_index(const Shape& s, const std::vector<int>& j) {
    if (static_cast<int>(j.size()) != s.r()) throw std::invalid_argument("flat_index: wrong index arity");
    for (int i = 0; i < s.r(); ++i)
        if (j[static_cast<size_t>(i)] < 1 || j[static_cast<size_t>(i)] > s.dim(i))
            throw std::out_of_range("flat_index: index out of range");
    int r = s.r();
    long long pos = j[static_cast<size_t>(r - 1)] - 1;
    for (int i = 0; i < r - 1; ++i) pos = pos * s.dim(i) + (j[static_cast<size_t>(i)] - 1);
    return pos;
}

/// Inverse of flat_index; returns the 1-based multi-index.
inline std::vector<int> unflat_index(const Shape& s, long long pos) {
    if (pos < 0 || pos >= s.n()) throw std::out_of_range("unflat_index");
    int r = s.r();
    std::vector<int> j(static_cast<size_t>(r));
    for (int i = r - 2; i >= 0; --i) {
        j[static_cast<size_t>(i)] = static_cast<int>(pos % s.dim(i)) + 1;
        pos /= s.dim(i);
    }
    j[static_cast<size_t>(r - 1)] = static_cast<int>(pos) + 1;
    return j;
}

/// Flattened rank-1 tensor x^(1) (x) ... (x) x^(r): the entry at (j_1,...,j_r) is
/// the product of the factor coordinates.
inline std::vector<gf_t> simple_tensor(const Shape& s, const Field& f, const std::vector<std::vector<gf_t>>& x) {
    if (static_cast<int>(x.size()) != s.r()) throw std::invalid_argument("simple_tensor: wrong factor count");
    for (int i = 0; i < s.r(); ++i)
        if (static_cast<int>(x[static_cast<size_t>(i)].size()) != s.dim(i))
            throw std::invalid_argument("simple_tensor: factor length mismatch");
    std::vector<gf_t> out(static_cast<size_t>(s.n()), 0);
    for (long long pos = 0; pos < s.n(); ++pos) {
        std::vector<int> idx = unflat_index(s, pos);
        gf_t v = 1;
        for (int i = 0; i < s.r(); ++i)
            v = f.mul(v, x[static_cast<size_t>(i)][static_cast<size_t>(idx[static_cast<size_t>(i)] - 1)]);
        out[static_cast<size_t>(pos)] = v;
    }
    return out;
}

/// Span of the mode-i fibers of the given flattened tensors: the column space of
/// the mode-i unfolding, a subspace of F_q^{n_i}.
inline Subspace fiber_span(const Shape& s, const Field& f, const std::vector<std::vector<gf_t>>& vecs, int mode) {
    if (mode < 0 || mode >= s.r()) throw std::invalid_argument("fiber_span: bad mode");
    int ni = s.dim(mode);
    MatrixGF rows(f, 0, static_cast<size_t>(ni));
    for (const auto& v : vecs) {
        if (static_cast<long long>(v.size()) != s.n()) throw std::invalid_argument("fiber_span: vector length");
        for (long long pos = 0; pos < s.n(); ++pos) {
            std::vector<int> idx = unflat_index(s, pos);
            if (idx[static_cast<size_t>(mode)] != 1) continue;
            std::vector<gf_t> fiber(static_cast<size_t>(ni));
            for (int ji = 1; ji <= ni; ++ji) {
                idx[static_cast<size_t>(mode)] = ji;
                fiber[static_cast<size_t>(ji - 1)] = v[static_cast<size_t>(flat_index(s, idx))];
            }
            rows.append_row(fiber);
        }
    }
    return Subspace::span(rows);
}

/// A tensor code: a subspace of the flattened tensor space F_q^n, carried with its
/// shape. The generator is always canonical, so k = generator.dim().
struct TensorCode {
    Field field;
    Shape shape;
    Subspace generator;

    TensorCode() = default;
    TensorCode(Field f, Shape s, const MatrixGF& gen)
        : field(std::move(f)), shape(std::move(s)), generator(Subspace::span(gen)) {
        if (static_cast<long long>(gen.cols()) != shape.n())
            throw std::invalid_argument("TensorCode: generator width != n");
    }
    TensorCode(Field f, Shape s, Subspace gen)
        : field(std::move(f)), shape(std::move(s)), generator(std::move(gen)) {
        if (static_cast<long long>(generator.ambient()) != shape.n())
            throw std::invalid_argument("TensorCode: generator ambient != n");
    }

    long long n() const { return shape.n(); }
    long long k() const { return static_cast<long long>(generator.dim()); }

    bool operator==(const TensorCode& o) const {
        return field == o.field && shape == o.shape && generator == o.generator;
    }
};

/// Dual code under the coordinatewise bilinear form on flattened coordinates.
inline TensorCode dual_code(const TensorCode& c) {
    return TensorCode(c.field, c.shape, c.generator.orthogonal());
}

namespace detail {

// All rank-1 tensors up to scalar: factor tuples with each factor's first nonzero
// coordinate equal to 1.
inline std::vector<std::vector<gf_t>> rank1_representatives(const Shape& s, const Field& f) {
    std::vector<std::vector<gf_t>> out;
    std::vector<std::vector<std::vector<gf_t>>> per_mode(static_cast<size_t>(s.r()));
    for (int i = 0; i < s.r(); ++i) {
        int ni = s.dim(i);
        long long total = 1;
        for (int t = 0; t < ni; ++t) total *= static_cast<long long>(f.q());
        for (long long code = 1; code < total; ++code) {
            std::vector<gf_t> v(static_cast<size_t>(ni));
            long long c = code;
            for (int t = 0; t < ni; ++t) {
                v[static_cast<size_t>(t)] = static_cast<gf_t>(c % f.q());
                c /= static_cast<long long>(f.q());
            }
            // normalize: first nonzero coordinate == 1
            size_t lead = 0;
            while (v[lead] == 0) ++lead;
            if (v[lead] != 1) continue;
            per_mode[static_cast<size_t>(i)].push_back(std::move(v));
        }
    }
    std::vector<size_t> pick(static_cast<size_t>(s.r()), 0);
    while (true) {
        std::vector<std::vector<gf_t>> factors;
        for (int i = 0; i < s.r(); ++i) factors.push_back(per_mode[static_cast<size_t>(i)][pick[static_cast<size_t>(i)]]);
        out.push_back(simple_tensor(s, f, factors));
        int i = s.r();
        bool carried = false;
        while (i-- > 0) {
            if (++pick[static_cast<size_t>(i)] < per_mode[static_cast<size_t>(i)].size()) {
                carried = true;
                break;
            }
            pick[static_cast<size_t>(i)] = 0;
        }
        if (!carried) break;
    }
    return out;
}

inline bool rank_rec(const Shape& s, const Field& f, const std::vector<std::vector<gf_t>>& cands,
                     std::vector<gf_t>& x, int budget_terms, size_t from, long long& steps, long long cap) {
    bool zero = std::all_of(x.begin(), x.end(), [](gf_t v) { return v == 0; });
    if (zero) return true;
    if (budget_terms == 0) return false;
    for (size_t i = from; i < cands.size(); ++i) {
        if (++steps > cap) throw BudgetExceeded("tensor rank search", steps, cap);
        // try every scalar multiple of candidate i
        for (gf_t scal = 1; scal < f.q(); ++scal) {
            for (size_t t = 0; t < x.size(); ++t) x[t] = f.sub(x[t], f.mul(scal, cands[i][t]));
            if (rank_rec(s, f, cands, x, budget_terms - 1, i + 1, steps, cap)) {
                for (size_t t = 0; t < x.size(); ++t) x[t] = f.add(x[t], f.mul(scal, cands[i][t]));
                return true;
            }
            for (size_t t = 0; t < x.size(); ++t) x[t] = f.add(x[t], f.mul(scal, cands[i][t]));
        }
    }
    return false;
}

}  // namespace detail

/// Minimal R <= r_max such that X is a sum of R rank-1 tensors, or nullopt when the
/// rank exceeds r_max. Exhaustive over rank-1 representatives (deduplicated up to
/// scalar); throws BudgetExceeded rather than ever returning a wrong answer.
inline std::optional<int> tensor_rank_bounded(const Shape& s, const Field& f, const std::vector<gf_t>& x, int r_max,
                                              const Budget& budget = Budget{}) {
    if (static_cast<long long>(x.size()) != s.n()) throw std::invalid_argument("tensor_rank_bounded: vector length");
    std::vector<std::vector<gf_t>> cands = detail::rank1_representatives(s, f);
    std::vector<gf_t> work = x;
    long long steps = 0;
    for (int rank = 0; rank <= r_max; ++rank) {
        if (detail::rank_rec(s, f, cands, work, rank, 0, steps, budget.rank_search_cap)) return rank;
    }
    return std::nullopt;
}

// ---------------------------------------------------------------------------
// Code file format (UTF-8, bit-exact):
//   line 1: q=<integer>
//   line 2: shape=<n1>,<n2>,...,<nr>
//   optional: modulus=<c0>,<c1>,...,<ce>   (extension fields; ascending, monic)
//   then one row=<n digits> line per generator row, digits base-q in flattened
//   order; lines starting with '#' are ignored.
// ---------------------------------------------------------------------------

class ParseError : public std::runtime_error {
public:
    ParseError(const std::string& diag, size_t line) : std::runtime_error(diag + " (line " + std::to_string(line) + ")") {}
};

inline TensorCode parse_code(const std::string& text) {
    std::istringstream in(text);
    std::string line;
    size_t lineno = 0;
    std::optional<unsigned long> q;
    std::optional<std::vector<int>> shape_dims;
    std::vector<unsigned> modulus;
    std::vector<std::string> rows;
    auto split_ints = [](const std::string& s) {
        std::vector<long> out;
        std::istringstream ss(s);
        std::string tok;
        while (std::getline(ss, tok, ',')) {
            size_t idx = 0;
            long v = std::stol(tok, &idx);
            if (idx != tok.size()) throw std::invalid_argument("trailing junk");
            out.push_back(v);
        }
        return out;
    };
    while (std::getline(in, line)) {
        ++lineno;
        while (!line.empty() && (line.back() == '\r' || line.back() == ' ')) line.pop_back();
        if (line.empty() || line[0] == '#') continue;
        if (line.rfind("q=", 0) == 0) {
            try {
                q = std::stoul(line.substr(2));
            } catch (const std::exception&) {
                throw ParseError("malformed header: bad q value '" + line.substr(2) + "'", lineno);
            }
        } else if (line.rfind("shape=", 0) == 0) {
            try {
                std::vector<long> v = split_ints(line.substr(6));
                shape_dims = std::vector<int>(v.begin(), v.end());
            } catch (const std::exception&) {
                throw ParseError("malformed header: bad shape list", lineno);
            }
        } else if (line.rfind("modulus=", 0) == 0) {
            try {
                std::vector<long> v = split_ints(line.substr(8));
                modulus.assign(v.begin(), v.end());
            } catch (const std::exception&) {
                throw ParseError("malformed header: bad modulus list", lineno);
            }
        } else if (line.rfind("row=", 0) == 0) {
            rows.push_back(line.substr(4));
        } else {
            throw ParseError("malformed header: unknown line '" + line.substr(0, 16) + "'", lineno);
        }
    }
    if (!q) throw ParseError("malformed header: missing q=", lineno);
    if (!shape_dims) throw ParseError("malformed header: missing shape=", lineno);
    Field field = [&] {
        try {
            if (modulus.empty()) return Field(*q);
            Field probe(*q);  // determine (p, e) from q
            return Field(probe.p(), probe.e(), modulus);
        } catch (const std::exception& ex) {
            throw ParseError(std::string("malformed header: ") + ex.what(), lineno);
        }
    }();
    Shape shape = [&] {
        try {
            return Shape(*shape_dims);
        } catch (const std::exception& ex) {
            throw ParseError(std::string("malformed header: ") + ex.what(), lineno);
        }
    }();
    // digits are base-q; for q <= 10 single characters, otherwise dot-separated
    MatrixGF gen(field, 0, static_cast<size_t>(shape.n()));
    size_t rowno = 0;
    for (const std::string& rtext : rows) {
        ++rowno;
        std::vector<gf_t> v;
        if (field.q() <= 10) {
            for (char ch : rtext) {
                if (ch < '0' || ch >= static_cast<char>('0' + field.q()))
                    throw ParseError("non-field symbol '" + std::string(1, ch) + "' in row " + std::to_string(rowno),
                                     0);
                v.push_back(static_cast<gf_t>(ch - '0'));
            }
        } else {
            std::istringstream ss(rtext);
            std::string tok;
            while (std::getline(ss, tok, '.')) {
                unsigned long d = 0;
                try {
                    d = std::stoul(tok);
                } catch (const std::exception&) {
                    throw ParseError("non-field symbol '" + tok + "' in row " + std::to_string(rowno), 0);
                }
                if (d >= field.q())
                    throw ParseError("non-field symbol '" + tok + "' in row " + std::to_string(rowno), 0);
                v.push_back(static_cast<gf_t>(d));
            }
        }
        if (static_cast<long long>(v.size()) != shape.n())
            throw ParseError("wrong row length: row " + std::to_string(rowno) + " has " + std::to_string(v.size()) +
                                 " symbols, expected " + std::to_string(shape.n()),
                             0);
        gen.append_row(v);
    }
    return TensorCode(field, shape, gen);
}

inline std::string serialize_code(const TensorCode& c) {
    std::ostringstream os;
    os << "q=" << c.field.q() << "\n";
    os << "shape=";
    for (int i = 0; i < c.shape.r(); ++i) os << (i ? "," : "") << c.shape.dim(i);
    os << "\n";
    if (c.field.e() > 1) {
        os << "modulus=";
        for (size_t i = 0; i < c.field.modulus().size(); ++i) os << (i ? "," : "") << c.field.modulus()[i];
        os << "\n";
    }
    const MatrixGF& b = c.generator.basis();
    for (size_t r = 0; r < b.rows(); ++r) {
        os << "row=";
        for (size_t col = 0; col < b.cols(); ++col) {
            if (c.field.q() <= 10)
                os << static_cast<char>('0' + b.at(r, col));
            else
                os << (col ? "." : "") << b.at(r, col);
        }
        os << "\n";
    }
    return os.str();
}

}  // namespace tenzeta
