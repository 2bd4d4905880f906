#pragma once

#include <atomic>
#include <map>
#include <memory>
#include <optional>
#include <thread>

#include "tenzeta/anticode.hpp"
#include "tenzeta/budget.hpp"

namespace tenzeta {

/// dim(C cap A) computed as k + dim A - dim(C + A).
inline long long intersection_dim(const TensorCode& c, const Subspace& a) {
    if (a.dim() == 0) return 0;
    size_t r = rank_of(MatrixGF::stacked(c.generator.basis(), a.basis()));
    return c.k() + static_cast<long long>(a.dim()) - static_cast<long long>(r);
}

struct AnticodeEntry {
    Anticode ac;
    DimDist dd;
    long long dim;
    long long cdim;  // dim(C cap A)
};

/// Every family anticode of one code, with intersection dimensions, in the
/// deterministic enumeration order. Enumeration is hard-capped by the budget.
class FamilyTable {
public:
    static FamilyTable build(const TensorCode& c, Family fam, const Budget& budget) {
        FamilyTable t;
        t.fam_ = fam;
        t.k_ = c.k();
        t.n_ = c.n();
        long long count = 0;
        for (const DimDist& dd : family_dds(c.shape, fam)) {
            enumerate_by_dd(c.shape, c.field, fam, dd, [&](const Anticode& a) {
                if (++count > budget.anticode_cap) throw BudgetExceeded("anticode enumeration", count, budget.anticode_cap);
                t.entries_.push_back(AnticodeEntry{a, dd, a.dim(), intersection_dim(c, as_subspace(a))});
            });
        }
        return t;
    }

    Family family() const { return fam_; }
    long long k() const { return k_; }
    long long n() const { return n_; }
    const std::vector<AnticodeEntry>& entries() const { return entries_; }

    /// t_j = min dim of a family anticode meeting the code in dimension >= j,
    /// for j = 1..k, all in one pass.
    std::vector<long long> t_profile() const {
        std::vector<long long> t(static_cast<size_t>(k_), -1);
        for (const auto& e : entries_) {
            for (long long j = 1; j <= e.cdim; ++j) {
                auto& slot = t[static_cast<size_t>(j - 1)];
                if (slot < 0 || e.dim < slot) slot = e.dim;
            }
        }
        return t;
    }

    std::map<long long, Int> counts_by_dim() const {
        std::map<long long, Int> m;
        for (const auto& e : entries_) m[e.dim] += 1;
        return m;
    }

    std::map<long long, Int> moments_by_dim(int j) const {
        std::map<long long, Int> m;
        for (const auto& e : entries_) m[e.dim] += 0;  // keep full support visible
        for (const auto& e : entries_) m[e.dim] += qbin(e.cdim, j, q());
        return m;
    }

    std::map<DimDist, Int> moments_by_dd(int j) const {
        std::map<DimDist, Int> m;
        for (const auto& e : entries_) m[e.dd] += qbin(e.cdim, j, q());
        return m;
    }

    Int q() const { return entries_.empty() ? Int(2) : Int(entries_.front().ac.field().q()); }

private:
    Family fam_ = Family::Closure;
    long long k_ = 0, n_ = 0;
    std::vector<AnticodeEntry> entries_;
};

/// Intersection dimensions of one code against every tuple of per-mode subspaces
/// on a chosen set of varying modes (the other modes pinned to the full space).
/// This is the lattice the Moebius weight path and the closure dual weights use.
class ClosureBox {
public:
    static ClosureBox build(const TensorCode& c, std::vector<int> varying, const Budget& budget) {
        ClosureBox b;
        b.modes_ = std::move(varying);
        const Shape& s = c.shape;
        long long tuples = 1;
        for (int mi : b.modes_) {
            b.subs_.push_back(all_subspaces(static_cast<size_t>(s.dim(mi)), c.field));
            tuples *= static_cast<long long>(b.subs_.back().size());
        }
        if (tuples > budget.anticode_cap) throw BudgetExceeded("closure lattice enumeration", tuples, budget.anticode_cap);
        b.stride_.assign(b.modes_.size(), 1);
        for (size_t t = b.modes_.size(); t-- > 1;)
            b.stride_[t - 1] = b.stride_[t] * static_cast<long long>(b.subs_[t].size());
        b.index_.resize(b.modes_.size());
        for (size_t t = 0; t < b.modes_.size(); ++t)
            for (size_t u = 0; u < b.subs_[t].size(); ++u) b.index_[t][b.subs_[t][u]] = static_cast<int>(u);
        // leq adjacency per varying mode
        b.below_.resize(b.modes_.size());
        for (size_t t = 0; t < b.modes_.size(); ++t) {
            b.below_[t].resize(b.subs_[t].size());
            for (size_t v = 0; v < b.subs_[t].size(); ++v)
                for (size_t u = 0; u < b.subs_[t].size(); ++u)
                    if (b.subs_[t][u].leq(b.subs_[t][v])) b.below_[t][v].push_back(static_cast<int>(u));
        }
        // intersection dims over all tuples
        b.cdim_.assign(static_cast<size_t>(tuples), 0);
        std::vector<size_t> pick(b.modes_.size(), 0);
        while (true) {
            std::vector<Subspace> m;
            for (int i = 0; i < s.r(); ++i) m.push_back(Subspace::full(c.field, static_cast<size_t>(s.dim(i))));
            bool any_zero = false;
            for (size_t t = 0; t < b.modes_.size(); ++t) {
                m[static_cast<size_t>(b.modes_[t])] = b.subs_[t][pick[t]];
                if (b.subs_[t][pick[t]].dim() == 0) any_zero = true;
            }
            long long idx = 0;
            for (size_t t = 0; t < b.modes_.size(); ++t) idx += static_cast<long long>(pick[t]) * b.stride_[t];
            b.cdim_[static_cast<size_t>(idx)] =
                any_zero ? 0 : intersection_dim(c, as_subspace(Anticode(s, c.field, std::move(m))));
            size_t t = b.modes_.size();
            bool carried = false;
            while (t-- > 0) {
                if (++pick[t] < b.subs_[t].size()) {
                    carried = true;
                    break;
                }
                pick[t] = 0;
            }
            if (!carried) break;
        }
        return b;
    }

    const std::vector<int>& modes() const { return modes_; }
    const std::vector<Subspace>& subspaces(size_t t) const { return subs_[t]; }
    const std::vector<int>& below(size_t t, int v) const { return below_[t][static_cast<size_t>(v)]; }
    int subspace_index(size_t t, const Subspace& s) const { return index_[t].at(s); }
    long long cdim(const std::vector<int>& idx) const {
        long long flat = 0;
        for (size_t t = 0; t < idx.size(); ++t) flat += static_cast<long long>(idx[t]) * stride_[t];
        return cdim_[static_cast<size_t>(flat)];
    }

private:
    std::vector<int> modes_;
    std::vector<std::vector<Subspace>> subs_;
    std::vector<std::vector<std::vector<int>>> below_;
    std::vector<std::map<Subspace, int>> index_;
    std::vector<long long> stride_;
    std::vector<long long> cdim_;
};

/// Caches the per-family tables, closure lattices and the dual analysis of one code.
class CodeAnalysis {
public:
    explicit CodeAnalysis(TensorCode code, Budget budget = Budget::from_env())
        : code_(std::move(code)), budget_(budget) {}

    const TensorCode& code() const { return code_; }
    const Budget& budget() const { return budget_; }
    long long k() const { return code_.k(); }
    long long n() const { return code_.n(); }
    long long step() const { return code_.n() / code_.shape.n_min(); }  // n / n_1

    const FamilyTable& table(Family fam) {
        auto it = tables_.find(fam);
        if (it == tables_.end()) it = tables_.emplace(fam, FamilyTable::build(code_, fam, budget_)).first;
        return it->second;
    }

    const ClosureBox& box(const std::vector<int>& varying) {
        auto it = boxes_.find(varying);
        if (it == boxes_.end()) it = boxes_.emplace(varying, ClosureBox::build(code_, varying, budget_)).first;
        return it->second;
    }

    CodeAnalysis& dual() {
        if (!dual_) dual_ = std::make_unique<CodeAnalysis>(dual_code(code_), budget_);
        return *dual_;
    }

    /// Generalized weights t_1..t_k with respect to the family.
    const std::vector<long long>& t(Family fam) {
        auto it = t_.find(fam);
        if (it == t_.end()) it = t_.emplace(fam, table(fam).t_profile()).first;
        return it->second;
    }

    /// Dual-anticode weights s_1..s_k. The Delsarte and Ravagnani families are
    /// closed under duality, so s = t there; for the closure family the dual
    /// anticodes are the orthogonal complements of closure anticodes, and
    /// dim(C cap A-perp) = k - dim A + dim(C-perp cap A).
    const std::vector<long long>& s(Family fam) {
        auto it = s_.find(fam);
        if (it != s_.end()) return it->second;
        if (fam != Family::Closure) return s_.emplace(fam, t(fam)).first->second;
        std::vector<long long> out(static_cast<size_t>(k()), -1);
        const FamilyTable& dual_tab = dual().table(Family::Closure);
        for (const auto& e : dual_tab.entries()) {
            long long dual_dim = n() - e.dim;
            long long cdim = k() - e.dim + e.cdim;
            for (long long j = 1; j <= cdim && j <= k(); ++j) {
                auto& slot = out[static_cast<size_t>(j - 1)];
                if (slot < 0 || dual_dim < slot) slot = dual_dim;
            }
        }
        return s_.emplace(fam, std::move(out)).first->second;
    }

    /// t_1 of the family with the zero-code convention t_1({0}) = n + n/n_1.
    long long t1_with_convention(Family fam) {
        if (k() == 0) return n() + step();
        return t(fam)[0];
    }

private:
    TensorCode code_;
    Budget budget_;
    std::map<Family, FamilyTable> tables_;
    std::map<std::vector<int>, ClosureBox> boxes_;
    std::unique_ptr<CodeAnalysis> dual_;
    std::map<Family, std::vector<long long>> t_, s_;
};

// ---------------------------------------------------------------------------
// Weight distributions
// ---------------------------------------------------------------------------

enum class WPath { Auto, GroundTruth, Moebius, Both };

struct WeightDistribution {
    Family fam = Family::Closure;
    int j = 1;
    std::vector<Int> per_anticode;  // aligned with FamilyTable::entries()
    std::map<long long, Int> by_dim;
    std::map<DimDist, Int> by_dd;
    bool ground_truth = false;
    bool moebius = false;
};

namespace detail {

inline bool bit_eligible(const TensorCode& c) { return c.field.q() == 2 && c.shape.n() <= 64; }

inline std::vector<std::uint64_t> to_bit_rows(const MatrixGF& m) {
    std::vector<std::uint64_t> rows(m.rows(), 0);
    for (size_t r = 0; r < m.rows(); ++r)
        for (size_t c = 0; c < m.cols(); ++c)
            if (m.at(r, c)) rows[r] |= 1ull << c;
    return rows;
}

// Flat positions of mode-i fibers: plan.pos[c*ni + t] is the coordinate of the
// fiber-c entry with mode index t+1.
struct FiberPlan {
    int mode = 0;
    int ni = 0;
    int want = 0;
    std::vector<int> pos;
};

inline FiberPlan make_fiber_plan(const Shape& s, int mode, int want) {
    FiberPlan p;
    p.mode = mode;
    p.ni = s.dim(mode);
    p.want = want;
    p.pos.reserve(static_cast<size_t>(s.n()));
    for (long long base = 0; base < s.n(); ++base) {
        std::vector<int> idx = unflat_index(s, base);
        if (idx[static_cast<size_t>(mode)] != 1) continue;
        for (int t = 1; t <= p.ni; ++t) {
            idx[static_cast<size_t>(mode)] = t;
            p.pos.push_back(static_cast<int>(flat_index(s, idx)));
        }
    }
    return p;
}

// Modes whose fiber span pins down minimality of the enclosing anticode, with
// the span dimensions that make A itself minimal.
inline std::pair<std::vector<int>, std::vector<int>> checked_modes(const Shape& s, Family fam, const Anticode& a) {
    std::vector<int> modes, want;
    if (fam == Family::Closure) {
        for (int i = 0; i < s.r(); ++i) {
            modes.push_back(i);
            want.push_back(static_cast<int>(a.mode(i).dim()));
        }
        return {modes, want};
    }
    if (a.is_full()) {
        for (int i : family_free_modes(s, fam)) {
            modes.push_back(i);
            want.push_back(s.dim(i));
        }
        return {modes, want};
    }
    for (int i = 0; i < s.r(); ++i)
        if (!a.mode(i).is_full()) {
            modes.push_back(i);
            want.push_back(static_cast<int>(a.mode(i).dim()));
        }
    return {modes, want};
}

// Fiber rank of a set of tensor rows (bit representation) in one mode.
// elim[lead] holds the reduced vector with leading bit `lead`, or 0.
inline int bit_fiber_rank(const std::uint64_t* vecs, int nvec, const FiberPlan& p) {
    std::uint64_t elim[64];
    for (int t = 0; t < p.ni; ++t) elim[t] = 0;
    int rank = 0;
    int fibers = static_cast<int>(p.pos.size()) / p.ni;
    for (int v = 0; v < nvec; ++v) {
        std::uint64_t x = vecs[v];
        if (!x) continue;
        const int* pp = p.pos.data();
        for (int c = 0; c < fibers; ++c, pp += p.ni) {
            std::uint64_t w = 0;
            for (int t = 0; t < p.ni; ++t) w |= ((x >> pp[t]) & 1ull) << t;
            while (w) {
                int lead = 63 - __builtin_clzll(w);
                if (elim[lead]) {
                    w ^= elim[lead];
                } else {
                    elim[lead] = w;
                    if (++rank == p.ni) return rank;
                    break;
                }
            }
        }
    }
    return rank;
}

// Count j-subspaces of the row space of `basis` whose fiber ranks match every
// plan. GF(2) kernel; parallel over chunks of the RREF coefficient enumeration.
long long count_matching_subspaces_gf2(const std::vector<std::uint64_t>& basis, int j,
                                       const std::vector<FiberPlan>& plans, int threads);

// Generic-field fallback.
Int count_matching_subspaces_generic(const TensorCode& c, const Subspace& inter, int j,
                                     const std::vector<int>& modes, const std::vector<int>& want);

}  // namespace detail

inline Int weight_ground_truth_anticode(CodeAnalysis& an, Family fam, const AnticodeEntry& e, int j, int threads) {
    if (e.dim == 0 || j < 1 || e.cdim < j) return 0;
    const TensorCode& c = an.code();
    Int total = qbin(e.cdim, j, c.field.q());
    if (total > an.budget().subspace_cap)
        throw BudgetExceeded("j-subspace enumeration", total.fits_slong_p() ? total.get_si() : an.budget().subspace_cap + 1,
                             an.budget().subspace_cap);
    Subspace inter = e.ac.is_full() ? c.generator : intersect(c.generator, as_subspace(e.ac));
    auto [modes, want] = detail::checked_modes(c.shape, fam, e.ac);
    if (detail::bit_eligible(c)) {
        std::vector<detail::FiberPlan> plans;
        for (size_t t = 0; t < modes.size(); ++t)
            plans.push_back(detail::make_fiber_plan(c.shape, modes[t], want[t]));
        return Int(detail::count_matching_subspaces_gf2(detail::to_bit_rows(inter.basis()), j, plans, threads));
    }
    return detail::count_matching_subspaces_generic(c, inter, j, modes, want);
}

inline Int weight_moebius_anticode(CodeAnalysis& an, Family fam, const AnticodeEntry& e, int j) {
    if (e.dim == 0 || j < 1) return 0;
    const Shape& s = an.code().shape;
    auto [modes, want] = detail::checked_modes(s, fam, e.ac);
    const ClosureBox& box = an.box(modes);
    const Int q(an.code().field.q());
    std::vector<int> vidx(modes.size());
    std::vector<int> vdim(modes.size());
    for (size_t t = 0; t < modes.size(); ++t) {
        vidx[t] = box.subspace_index(t, e.ac.mode(modes[t]));
        vdim[t] = static_cast<int>(e.ac.mode(modes[t]).dim());
    }
    Int out = 0;
    std::vector<int> u(modes.size(), 0);
    std::function<void(size_t, Int)> rec = [&](size_t t, Int mu) {
        if (t == modes.size()) {
            long long cd = box.cdim(u);
            if (cd >= j) out += mu * qbin(cd, j, q);
            return;
        }
        for (int uu : box.below(t, vidx[t])) {
            long d = vdim[t] - static_cast<long>(box.subspaces(t)[static_cast<size_t>(uu)].dim());
            Int f = pow_int(q, static_cast<unsigned long>(d * (d - 1) / 2));
            if (d % 2 != 0) f = -f;
            u[t] = uu;
            rec(t + 1, mu * f);
        }
    };
    rec(0, Int(1));
    return out;
}

/// The j-th weight distribution with respect to the family. The ground-truth path
/// counts j-subspaces by the fiber-span minimality predicate; the Moebius path
/// inverts the binomial moments over the family poset. When both run they must
/// agree exactly.
inline WeightDistribution weight_distribution(CodeAnalysis& an, Family fam, int j, WPath path = WPath::Auto,
                                              int threads = 0) {
    const FamilyTable& tab = an.table(fam);
    WeightDistribution w;
    w.fam = fam;
    w.j = j;
    bool want_gt = (path == WPath::GroundTruth || path == WPath::Both);
    bool want_mb = (path == WPath::Moebius || path == WPath::Both || path == WPath::Auto);
    std::vector<Int> gt, mb;
    if (want_gt) {
        for (const auto& e : tab.entries()) gt.push_back(weight_ground_truth_anticode(an, fam, e, j, threads));
        w.ground_truth = true;
    }
    if (want_mb) {
        for (const auto& e : tab.entries()) mb.push_back(weight_moebius_anticode(an, fam, e, j));
        w.moebius = true;
    }
    if (want_gt && want_mb && gt != mb) throw std::logic_error("weight_distribution: evaluation paths disagree");
    w.per_anticode = want_gt ? std::move(gt) : std::move(mb);
    for (size_t i = 0; i < tab.entries().size(); ++i) {
        const auto& e = tab.entries()[i];
        w.by_dim[e.dim] += w.per_anticode[i];
        w.by_dd[e.dd] += w.per_anticode[i];
    }
    return w;
}

// ---------------------------------------------------------------------------
// Duality: refined MacWilliams transform and Wei-type duality
// ---------------------------------------------------------------------------

/// Refined binomial moments of C computed from the moments of its dual:
/// B_a(C) = sum_s q^{s(k+[a]-n-j+s)} [k+[a]-n choose j-s]_q B_abar^(s)(C-perp),
/// abar = o when a = n, else n - (a mod n) componentwise. The binomial with a
/// possibly negative top is the rational continuation; results are integral.
/// Stated for the Delsarte and Ravagnani families only.
inline std::map<DimDist, Int> macwilliams_refined(CodeAnalysis& an, Family fam, int j) {
    if (fam == Family::Closure) throw std::invalid_argument("macwilliams_refined: unsupported for the closure family");
    const Shape& shape = an.code().shape;
    const Int q(an.code().field.q());
    long long k = an.k(), n = an.n();
    std::vector<std::map<DimDist, Int>> dual_tabs;
    for (int s = 0; s <= j; ++s) dual_tabs.push_back(an.dual().table(fam).moments_by_dd(s));
    std::map<DimDist, Int> out;
    for (const DimDist& dd : family_dds(shape, fam)) {
        long long prod = dd.is_zero() ? 0 : dd.product();
        DimDist bar = DimDist::zero(shape.r());
        if (dd != DimDist::of_shape(shape)) {
            std::vector<int> v(static_cast<size_t>(shape.r()));
            for (int i = 0; i < shape.r(); ++i) v[static_cast<size_t>(i)] = shape.dim(i) - (dd[i] % shape.dim(i));
            bar = DimDist(std::move(v));
        }
        Rat acc(0);
        for (int s = 0; s <= j; ++s) {
            auto it = dual_tabs[static_cast<size_t>(s)].find(bar);
            Int bdual = it == dual_tabs[static_cast<size_t>(s)].end() ? Int(0) : it->second;
            if (bdual == 0) continue;
            long long e = static_cast<long long>(s) * (k + prod - n - j + s);
            Rat qe = e >= 0 ? Rat(pow_int(q, static_cast<unsigned long>(e)))
                            : make_rat(1, pow_int(q, static_cast<unsigned long>(-e)));
            acc += qe * qbin_rational(k + prod - n, j - s, q) * Rat(bdual);
        }
        out[dd] = to_int(acc);
    }
    return out;
}

struct WeiDualityRow {
    long long p;
    std::vector<long long> s_dual;       // S_p(C-perp)
    std::vector<long long> complement;   // [n_1] minus Sbar_{p+k}(C)
    bool equal;
};

struct WeiDualityReport {
    bool holds = true;
    std::vector<WeiDualityRow> rows;
};

/// Wei-type duality for the Ravagnani weights: S_p(C-perp) = [n_1] \ Sbar_{p+k}(C)
/// for 1 <= p <= n/n_1.
inline WeiDualityReport wei_duality_check(CodeAnalysis& an) {
    WeiDualityReport rep;
    const Shape& shape = an.code().shape;
    long long n = an.n(), k = an.k(), m = an.step();
    long long n1 = shape.n_min();
    const std::vector<long long> tc = k > 0 ? an.t(Family::Ravagnani) : std::vector<long long>{};
    CodeAnalysis& du = an.dual();
    const std::vector<long long> td = du.k() > 0 ? du.t(Family::Ravagnani) : std::vector<long long>{};
    for (long long p = 1; p <= m; ++p) {
        WeiDualityRow row;
        row.p = p;
        std::set<long long> sp;
        for (long long jj = p; jj <= du.k(); jj += m)
            if (jj >= 1) sp.insert(td[static_cast<size_t>(jj - 1)] * n1 / n);
        std::set<long long> sbar;
        for (long long jj = ((p + k) % m + m) % m; jj <= k; jj += m)
            if (jj >= 1) sbar.insert(n1 + 1 - tc[static_cast<size_t>(jj - 1)] * n1 / n);
        std::set<long long> comp;
        for (long long v = 1; v <= n1; ++v)
            if (!sbar.count(v)) comp.insert(v);
        row.s_dual.assign(sp.begin(), sp.end());
        row.complement.assign(comp.begin(), comp.end());
        row.equal = (sp == comp);
        if (!row.equal) rep.holds = false;
        rep.rows.push_back(std::move(row));
    }
    return rep;
}

// ---------------------------------------------------------------------------
// Extremality classification
// ---------------------------------------------------------------------------

struct Classification {
    long long k = 0, n = 0, m = 1;        // m = n/n_1
    std::vector<bool> is_tmrd;            // j = 1..k
    std::vector<bool> is_tbmd;
    std::optional<long long> minimal_tbmd;
    long long t1_dual = 0;                // with the zero-code convention
    // matrix case (r = 2) labels
    bool r2 = false;
    bool mrd = false, qmrd = false, dually_qmrd = false;
};

/// TMRD/TBMD flags from the Ravagnani profiles of the code and its dual.
/// The zero code is 1-TMRD by the convention t_1({0}) = n + n/n_1.
inline Classification classify(CodeAnalysis& an) {
    Classification c;
    c.k = an.k();
    c.n = an.n();
    c.m = an.step();
    long long n1 = an.code().shape.n_min();
    c.t1_dual = an.dual().t1_with_convention(Family::Ravagnani);
    if (c.k > 0) {
        const auto& t = an.t(Family::Ravagnani);
        for (long long j = 1; j <= c.k; ++j) {
            long long tj = t[static_cast<size_t>(j - 1)];
            long long bound = c.n - c.m * ((n1 * (c.k - j)) / c.n);  // floor of n1(k-j)/n, k-j >= 0
            c.is_tmrd.push_back(tj == bound);
            bool tbmd = (c.n - c.t1_dual - tj) < 0;
            c.is_tbmd.push_back(tbmd);
            if (tbmd && !c.minimal_tbmd) c.minimal_tbmd = j;
        }
    }
    if (an.code().shape.r() == 2) {
        c.r2 = true;
        bool tmrd1 = c.k == 0 || (!c.is_tmrd.empty() && c.is_tmrd[0]);
        bool divides = (c.k % c.m) == 0;
        c.mrd = tmrd1 && divides;
        c.qmrd = tmrd1 && !divides;
        bool dual_tmrd1;
        {
            CodeAnalysis& du = an.dual();
            if (du.k() == 0)
                dual_tmrd1 = true;
            else {
                long long t1d = du.t(Family::Ravagnani)[0];
                dual_tmrd1 = t1d == c.n - c.m * ((n1 * (du.k() - 1)) / c.n);
            }
        }
        c.dually_qmrd = c.qmrd && dual_tmrd1;
    }
    return c;
}

inline bool is_tmrd_j(const Classification& c, long long j) {
    if (c.k == 0) return j == 1;  // zero-code convention
    if (j < 1 || j > c.k) throw std::out_of_range("is_tmrd_j");
    return c.is_tmrd[static_cast<size_t>(j - 1)];
}

}  // namespace tenzeta

// definitions that need more than a few lines live out of line below

namespace tenzeta::detail {

struct SubspaceEnumJob {
    // one pivot combination of the RREF coefficient matrices, split into ranges
    std::vector<int> piv;
    std::vector<std::pair<int, int>> free_pos;  // (row, col) of free coefficient bits
    unsigned long long lo = 0, hi = 0;          // odometer range over free bits
};

inline long long count_matching_subspaces_gf2_impl(const std::vector<std::uint64_t>& basis, int j,
                                                   const std::vector<FiberPlan>& plans, const SubspaceEnumJob& job) {
    long long hits = 0;
    size_t nf = job.free_pos.size();
    std::uint64_t coeff[64];
    std::uint64_t rows[64];
    for (unsigned long long v = job.lo; v < job.hi; ++v) {
        for (int t = 0; t < j; ++t) coeff[t] = 1ull << job.piv[static_cast<size_t>(t)];
        for (size_t b = 0; b < nf; ++b)
            if ((v >> b) & 1ull) coeff[job.free_pos[b].first] |= 1ull << job.free_pos[b].second;
        for (int t = 0; t < j; ++t) {
            std::uint64_t x = 0, cm = coeff[t];
            while (cm) {
                int bit = __builtin_ctzll(cm);
                cm &= cm - 1;
                x ^= basis[static_cast<size_t>(bit)];
            }
            rows[t] = x;
        }
        bool ok = true;
        for (const FiberPlan& p : plans) {
            if (bit_fiber_rank(rows, j, p) != p.want) {
                ok = false;
                break;
            }
        }
        if (ok) ++hits;
    }
    return hits;
}

inline long long count_matching_subspaces_gf2(const std::vector<std::uint64_t>& basis, int j,
                                              const std::vector<FiberPlan>& plans, int threads) {
    int d = static_cast<int>(basis.size());
    if (j > d) return 0;
    if (j == 0) return 0;
    // build jobs: pivot combinations, large free ranges split into chunks
    std::vector<SubspaceEnumJob> jobs;
    std::vector<int> piv(static_cast<size_t>(j));
    for (int t = 0; t < j; ++t) piv[static_cast<size_t>(t)] = t;
    const unsigned long long grain = 1ull << 18;
    while (true) {
        SubspaceEnumJob base;
        base.piv = piv;
        std::vector<bool> is_piv(static_cast<size_t>(d), false);
        for (int p : piv) is_piv[static_cast<size_t>(p)] = true;
        for (int t = 0; t < j; ++t)
            for (int c = piv[static_cast<size_t>(t)] + 1; c < d; ++c)
                if (!is_piv[static_cast<size_t>(c)]) base.free_pos.emplace_back(t, c);
        unsigned long long total = base.free_pos.size() >= 63 ? ~0ull : (1ull << base.free_pos.size());
        for (unsigned long long lo = 0; lo < total; lo += grain) {
            SubspaceEnumJob job = base;
            job.lo = lo;
            job.hi = std::min(total, lo + grain);
            jobs.push_back(std::move(job));
        }
        int t = j;
        bool carried = false;
        while (t-- > 0) {
            if (piv[static_cast<size_t>(t)] < d - j + t) {
                ++piv[static_cast<size_t>(t)];
                for (int u = t + 1; u < j; ++u) piv[static_cast<size_t>(u)] = piv[static_cast<size_t>(u - 1)] + 1;
                carried = true;
                break;
            }
        }
        if (!carried) break;
    }
    unsigned nthreads = threads > 0 ? static_cast<unsigned>(threads) : std::thread::hardware_concurrency();
    if (nthreads == 0) nthreads = 1;
    nthreads = std::min<unsigned>(nthreads, static_cast<unsigned>(jobs.size()) ? static_cast<unsigned>(jobs.size()) : 1);
    std::atomic<size_t> next{0};
    std::vector<long long> partial(nthreads, 0);
    auto worker = [&](unsigned id) {
        long long local = 0;
        while (true) {
            size_t i = next.fetch_add(1);
            if (i >= jobs.size()) break;
            local += count_matching_subspaces_gf2_impl(basis, j, plans, jobs[i]);
        }
        partial[id] = local;
    };
    if (nthreads == 1) {
        worker(0);
    } else {
        std::vector<std::thread> pool;
        for (unsigned t = 0; t < nthreads; ++t) pool.emplace_back(worker, t);
        for (auto& th : pool) th.join();
    }
    long long total = 0;
    for (long long v : partial) total += v;
    return total;
}

inline Int count_matching_subspaces_generic(const TensorCode& c, const Subspace& inter, int j,
                                            const std::vector<int>& modes, const std::vector<int>& want) {
    Int hits = 0;
    size_t d = inter.dim();
    const Field& f = c.field;
    enumerate_subspaces(d, static_cast<size_t>(j), f, [&](const Subspace& coeff) {
        std::vector<std::vector<gf_t>> rows;
        for (size_t t = 0; t < coeff.dim(); ++t) {
            std::vector<gf_t> x(static_cast<size_t>(c.n()), 0);
            for (size_t b = 0; b < d; ++b) {
                gf_t cc = coeff.basis().at(t, b);
                if (cc == 0) continue;
                for (size_t col = 0; col < x.size(); ++col)
                    x[col] = f.add(x[col], f.mul(cc, inter.basis().at(b, col)));
            }
            rows.push_back(std::move(x));
        }
        bool ok = true;
        for (size_t t = 0; t < modes.size() && ok; ++t)
            ok = fiber_span(c.shape, f, rows, modes[t]).dim() == static_cast<size_t>(want[t]);
        if (ok) hits += 1;
    });
    return hits;
}

}  // namespace tenzeta::detail
