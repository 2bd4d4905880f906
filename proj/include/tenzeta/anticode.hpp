#pragma once

#include <functional>
#include <numeric>
#include <vector>

#include "tenzeta/tensor.hpp"

namespace tenzeta {

enum class Family { Closure, Delsarte, Ravagnani };

inline const char* family_name(Family f) {
    switch (f) {
        case Family::Closure: return "cl";
        case Family::Delsarte: return "D";
        case Family::Ravagnani: return "R";
    }
    return "?";
}

inline Family family_from_name(const std::string& s) {
    if (s == "cl" || s == "closure") return Family::Closure;
    if (s == "D" || s == "delsarte") return Family::Delsarte;
    if (s == "R" || s == "ravagnani") return Family::Ravagnani;
    throw std::invalid_argument("unknown anticode family '" + s + "'");
}

/// Modes a family anticode may shrink below the full space: every mode for the
/// closure family; the minimal modes for Ravagnani; for Delsarte all modes except
/// the maximal one when that is unique, otherwise every mode.
inline std::vector<int> family_free_modes(const Shape& s, Family fam) {
    switch (fam) {
        case Family::Closure: {
            std::vector<int> all(static_cast<size_t>(s.r()));
            std::iota(all.begin(), all.end(), 0);
            return all;
        }
        case Family::Ravagnani: return s.min_modes();
        case Family::Delsarte: {
            std::vector<int> maxm = s.max_modes();
            if (maxm.size() > 1) {
                std::vector<int> all(static_cast<size_t>(s.r()));
                std::iota(all.begin(), all.end(), 0);
                return all;
            }
            std::vector<int> out;
            for (int i = 0; i < s.r(); ++i)
                if (i != maxm[0]) out.push_back(i);
            return out;
        }
    }
    return {};
}

/// Per-mode dimension tuple of a closure anticode. Valid tuples are all-zero
/// (the zero anticode) or have every entry >= 1.
struct DimDist {
    std::vector<int> a;

    DimDist() = default;
    explicit DimDist(std::vector<int> v) : a(std::move(v)) {}

    int size() const { return static_cast<int>(a.size()); }
    int operator[](int i) const { return a[static_cast<size_t>(i)]; }
    long long product() const {
        long long p = 1;
        for (int x : a) p *= x;
        return p;
    }
    bool is_zero() const {
        return std::all_of(a.begin(), a.end(), [](int x) { return x == 0; });
    }
    bool all_positive() const {
        return std::all_of(a.begin(), a.end(), [](int x) { return x >= 1; });
    }
    bool leq(const DimDist& o) const {
        for (size_t i = 0; i < a.size(); ++i)
            if (a[i] > o.a[i]) return false;
        return true;
    }
    bool operator==(const DimDist& o) const { return a == o.a; }
    bool operator!=(const DimDist& o) const { return a != o.a; }
    bool operator<(const DimDist& o) const { return a < o.a; }

    std::string str() const {
        std::string out = "(";
        for (size_t i = 0; i < a.size(); ++i) out += (i ? "," : "") + std::to_string(a[i]);
        return out + ")";
    }

    static DimDist zero(int r) { return DimDist(std::vector<int>(static_cast<size_t>(r), 0)); }
    static DimDist of_shape(const Shape& s) { return DimDist(s.dims()); }
};

/// Does a dimension distribution index a member of the family (zero included)?
inline bool dd_in_family(const Shape& s, Family fam, const DimDist& dd) {
    if (dd.size() != s.r()) return false;
    if (dd.is_zero()) return true;
    if (!dd.all_positive()) return false;
    for (int i = 0; i < s.r(); ++i)
        if (dd[i] > s.dim(i)) return false;
    if (fam == Family::Closure) return true;
    std::vector<int> free = family_free_modes(s, fam);
    // at most one non-full mode, and it must be free
    int nonfull = -1;
    for (int i = 0; i < s.r(); ++i) {
        if (dd[i] == s.dim(i)) continue;
        if (nonfull >= 0) return false;
        nonfull = i;
    }
    if (nonfull < 0) return true;  // the full space
    return std::find(free.begin(), free.end(), nonfull) != free.end();
}

/// Anticode in closure representation: one subspace per mode. The zero anticode
/// carries the zero subspace in every mode.
class Anticode {
public:
    Anticode() = default;
    Anticode(Shape shape, Field field, std::vector<Subspace> modes)
        : shape_(std::move(shape)), field_(std::move(field)), modes_(std::move(modes)) {
        if (static_cast<int>(modes_.size()) != shape_.r()) throw std::invalid_argument("Anticode: mode count");
        bool any_zero = false;
        for (int i = 0; i < shape_.r(); ++i) {
            if (static_cast<int>(modes_[static_cast<size_t>(i)].ambient()) != shape_.dim(i))
                throw std::invalid_argument("Anticode: mode ambient mismatch");
            if (modes_[static_cast<size_t>(i)].dim() == 0) any_zero = true;
        }
        if (any_zero)  // the tensor product collapses; normalize to the zero anticode
            for (auto& m : modes_) m = Subspace(field_, m.ambient());
    }

    static Anticode zero(const Shape& s, const Field& f) {
        std::vector<Subspace> m;
        for (int i = 0; i < s.r(); ++i) m.emplace_back(f, static_cast<size_t>(s.dim(i)));
        return Anticode(s, f, std::move(m));
    }
    static Anticode full(const Shape& s, const Field& f) {
        std::vector<Subspace> m;
        for (int i = 0; i < s.r(); ++i) m.push_back(Subspace::full(f, static_cast<size_t>(s.dim(i))));
        return Anticode(s, f, std::move(m));
    }

    const Shape& shape() const { return shape_; }
    const Field& field() const { return field_; }
    const Subspace& mode(int i) const { return modes_[static_cast<size_t>(i)]; }
    const std::vector<Subspace>& modes() const { return modes_; }

    DimDist dd() const {
        std::vector<int> v(static_cast<size_t>(shape_.r()));
        for (int i = 0; i < shape_.r(); ++i) v[static_cast<size_t>(i)] = static_cast<int>(mode(i).dim());
        return DimDist(std::move(v));
    }
    long long dim() const { return is_zero() ? 0 : dd().product(); }
    bool is_zero() const { return mode(0).dim() == 0; }
    bool is_full() const {
        for (int i = 0; i < shape_.r(); ++i)
            if (!mode(i).is_full()) return false;
        return true;
    }

    bool operator==(const Anticode& o) const { return shape_ == o.shape_ && modes_ == o.modes_; }
    bool operator!=(const Anticode& o) const { return !(*this == o); }
    bool operator<(const Anticode& o) const { return modes_ < o.modes_; }

private:
    Shape shape_;
    Field field_;
    std::vector<Subspace> modes_;
};

inline bool in_family(const Anticode& a, Family fam) { return dd_in_family(a.shape(), fam, a.dd()); }

/// The anticode as a subspace of the flattened tensor space: the span of the
/// simple tensors of per-mode basis vectors.
inline Subspace as_subspace(const Anticode& a) {
    const Shape& s = a.shape();
    const Field& f = a.field();
    if (a.is_zero()) return Subspace(f, static_cast<size_t>(s.n()));
    MatrixGF rows(f, 0, static_cast<size_t>(s.n()));
    std::vector<size_t> pick(static_cast<size_t>(s.r()), 0);
    while (true) {
        std::vector<std::vector<gf_t>> factors;
        for (int i = 0; i < s.r(); ++i) factors.push_back(a.mode(i).basis().row(pick[static_cast<size_t>(i)]));
        rows.append_row(simple_tensor(s, f, factors));
        int i = s.r();
        bool carried = false;
        while (i-- > 0) {
            if (++pick[static_cast<size_t>(i)] < a.mode(i).dim()) {
                carried = true;
                break;
            }
            pick[static_cast<size_t>(i)] = 0;
        }
        if (!carried) break;
    }
    return Subspace::span(rows);
}

inline bool leq(const Anticode& a, const Anticode& b) {
    if (a.shape() != b.shape()) throw std::invalid_argument("Anticode leq: shape mismatch");
    if (a.is_zero()) return true;
    if (b.is_zero()) return false;
    for (int i = 0; i < a.shape().r(); ++i)
        if (!a.mode(i).leq(b.mode(i))) return false;
    return true;
}

inline Anticode meet(const Anticode& a, const Anticode& b) {
    if (a.shape() != b.shape()) throw std::invalid_argument("Anticode meet: shape mismatch");
    std::vector<Subspace> m;
    for (int i = 0; i < a.shape().r(); ++i) m.push_back(intersect(a.mode(i), b.mode(i)));
    return Anticode(a.shape(), a.field(), std::move(m));
}

inline Anticode join(const Anticode& a, const Anticode& b) {
    if (a.shape() != b.shape()) throw std::invalid_argument("Anticode join: shape mismatch");
    if (a.is_zero()) return b;
    if (b.is_zero()) return a;
    std::vector<Subspace> m;
    for (int i = 0; i < a.shape().r(); ++i) m.push_back(sum(a.mode(i), b.mode(i)));
    return Anticode(a.shape(), a.field(), std::move(m));
}

/// Dual of a Delsarte/Ravagnani anticode within its own family: the free mode is
/// replaced by its orthogonal complement. Equals the orthogonal complement of
/// as_subspace(a) in the tensor space.
inline Anticode dual_anticode(const Anticode& a) {
    const Shape& s = a.shape();
    if (a.is_zero()) return Anticode::full(s, a.field());
    if (a.is_full()) return Anticode::zero(s, a.field());
    std::vector<Subspace> m;
    int nonfull = -1;
    for (int i = 0; i < s.r(); ++i)
        if (!a.mode(i).is_full()) {
            if (nonfull >= 0) throw std::invalid_argument("dual_anticode: more than one non-full mode");
            nonfull = i;
        }
    for (int i = 0; i < s.r(); ++i)
        m.push_back(i == nonfull ? a.mode(i).orthogonal() : a.mode(i));
    return Anticode(s, a.field(), std::move(m));
}

/// Dual of a closure anticode, which is in general only a perfect space, not a
/// closure anticode: the orthogonal complement of as_subspace(a).
inline Subspace closure_dual_subspace(const Anticode& a) { return as_subspace(a).orthogonal(); }

/// Moebius value of a pair of dimension distributions in a product of subspace
/// lattices: prod_i (-1)^{d_i} q^{C(d_i,2)} with d_i = a_i - b_i; 0 unless b <= a.
inline Int mobius_product(const DimDist& b, const DimDist& a, const Int& q) {
    if (b.size() != a.size()) throw std::invalid_argument("mobius_product: arity mismatch");
    if (!b.leq(a)) return 0;
    Int out = 1;
    for (int i = 0; i < a.size(); ++i) {
        long d = a[i] - b[i];
        Int v = pow_int(q, static_cast<unsigned long>(d * (d - 1) / 2));
        if (d % 2 != 0) v = -v;
        out *= v;
    }
    return out;
}

/// Smallest closure anticode containing the subspace D: the tensor product of
/// the per-mode fiber spans of a basis of D.
inline Anticode closure_of(const Subspace& d, const Shape& s) {
    const Field& f = d.field();
    if (static_cast<long long>(d.ambient()) != s.n()) throw std::invalid_argument("closure_of: ambient mismatch");
    std::vector<std::vector<gf_t>> vecs;
    for (size_t i = 0; i < d.dim(); ++i) vecs.push_back(d.basis().row(i));
    std::vector<Subspace> m;
    for (int i = 0; i < s.r(); ++i) m.push_back(fiber_span(s, f, vecs, i));
    return Anticode(s, f, std::move(m));
}

/// Visit each family anticode with dimension distribution `dd` exactly once.
/// Distributions outside the family's support yield nothing.
inline void enumerate_by_dd(const Shape& s, const Field& f, Family fam, const DimDist& dd,
                            const std::function<void(const Anticode&)>& visit) {
    if (!dd_in_family(s, fam, dd)) return;
    if (dd.is_zero()) {
        visit(Anticode::zero(s, f));
        return;
    }
    // odometer over per-mode subspaces of the prescribed dimensions
    std::vector<std::vector<Subspace>> choices(static_cast<size_t>(s.r()));
    for (int i = 0; i < s.r(); ++i)
        enumerate_subspaces(static_cast<size_t>(s.dim(i)), static_cast<size_t>(dd[i]), f,
                            [&](const Subspace& sub) { choices[static_cast<size_t>(i)].push_back(sub); });
    std::vector<size_t> pick(static_cast<size_t>(s.r()), 0);
    while (true) {
        std::vector<Subspace> modes;
        for (int i = 0; i < s.r(); ++i) modes.push_back(choices[static_cast<size_t>(i)][pick[static_cast<size_t>(i)]]);
        visit(Anticode(s, f, std::move(modes)));
        int i = s.r();
        bool carried = false;
        while (i-- > 0) {
            if (++pick[static_cast<size_t>(i)] < choices[static_cast<size_t>(i)].size()) {
                carried = true;
                break;
            }
            pick[static_cast<size_t>(i)] = 0;
        }
        if (!carried) break;
    }
}

/// All valid dimension distributions of the family, zero and full included.
inline std::vector<DimDist> family_dds(const Shape& s, Family fam) {
    std::vector<DimDist> out;
    out.push_back(DimDist::zero(s.r()));
    if (fam == Family::Closure) {
        std::vector<int> cur(static_cast<size_t>(s.r()), 1);
        while (true) {
            out.emplace_back(cur);
            int i = s.r();
            bool carried = false;
            while (i-- > 0) {
                if (cur[static_cast<size_t>(i)] < s.dim(i)) {
                    ++cur[static_cast<size_t>(i)];
                    for (int j = i + 1; j < s.r(); ++j) cur[static_cast<size_t>(j)] = 1;
                    carried = true;
                    break;
                }
            }
            if (!carried) break;
        }
        return out;
    }
    for (int i : family_free_modes(s, fam)) {
        for (int d = 1; d < s.dim(i); ++d) {
            std::vector<int> v = s.dims();
            v[static_cast<size_t>(i)] = d;
            out.emplace_back(std::move(v));
        }
    }
    out.push_back(DimDist::of_shape(s));
    return out;
}

/// Visit each family anticode of dimension `a` exactly once.
inline void enumerate_by_dim(const Shape& s, const Field& f, Family fam, long long a,
                             const std::function<void(const Anticode&)>& visit) {
    if (a < 0 || a > s.n()) throw std::invalid_argument("enumerate_by_dim: dimension out of range");
    for (const DimDist& dd : family_dds(s, fam)) {
        long long dim = dd.is_zero() ? 0 : dd.product();
        if (dim == a) enumerate_by_dd(s, f, fam, dd, visit);
    }
}

/// Number of family anticodes of dimension a, by the product-lattice closed forms;
/// matches the enumeration cardinality.
inline Int count_closed_form(const Shape& s, Family fam, long long a, const Int& q) {
    if (a < 0 || a > s.n()) return 0;
    if (a == 0 || a == s.n()) return 1;
    Int total = 0;
    if (fam == Family::Closure) {
        for (const DimDist& dd : family_dds(s, fam)) {
            if (dd.is_zero() || dd.product() != a) continue;
            Int prod = 1;
            for (int i = 0; i < s.r(); ++i) prod *= qbin(s.dim(i), dd[i], q);
            total += prod;
        }
        return total;
    }
    // Delsarte/Ravagnani: one anticode per subspace of a free mode, with the
    // dimension scaled by the full complement; sum over free modes (per mode,
    // so equal sizes contribute with multiplicity)
    for (int i : family_free_modes(s, fam)) {
        long long scale = s.n() / s.dim(i);
        if (a % scale != 0) continue;
        long long ai = a / scale;
        if (ai >= s.dim(i)) continue;  // full space handled above, larger impossible
        total += qbin(s.dim(i), ai, q);
    }
    return total;
}

}  // namespace tenzeta
