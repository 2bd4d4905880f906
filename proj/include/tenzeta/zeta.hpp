#pragma once

#include <cmath>
#include <set>

#include "tenzeta/bell.hpp"
#include "tenzeta/bernstein.hpp"
#include "tenzeta/invariants.hpp"

namespace tenzeta {

// ---------------------------------------------------------------------------
// Normalized binomial moments and the univariate zeta function
// ---------------------------------------------------------------------------

enum class MomentBranch { MidRange, MidRangeEmpty, ClosedForm, PredicateFail };

/// Can d be written as a product over the modes with factors in [1, n_i]
/// (within = true) or factors >= n_i (within = false)?
inline bool product_realizable(const Shape& s, long long d, bool within, int mode = 0) {
    if (d <= 0) return false;
    if (mode == s.r()) return d == 1;
    int lo = within ? 1 : s.dim(mode);
    long long hi = within ? s.dim(mode) : d;
    for (long long a = lo; a <= hi; ++a)
        if (d % a == 0 && product_realizable(s, d / a, within, mode + 1)) return true;
    return false;
}

/// The support predicate of the closed-form branch, evaluated at the absolute
/// dimension `dim` (the shifted index a + t_j).
inline bool moment_predicate(const Shape& s, Family fam, long long dim, long long t_j) {
    switch (fam) {
        case Family::Ravagnani:
            return (dim * s.n_min()) % s.n() == 0;
        case Family::Delsarte: {
            for (int v : s.Delta_values())
                if ((dim * v) % s.n() == 0) return true;
            return false;
        }
        case Family::Closure: {
            if (dim <= s.n()) return dim == 0 || product_realizable(s, dim, true);
            return product_realizable(s, dim, false);
        }
    }
    (void)t_j;
    return false;
}

struct NormalizedMoments {
    Family fam = Family::Ravagnani;
    int j = 1;
    long long shift = 0;      // t_j
    long long s1_dual = 0;    // s_1 of the dual code w.r.t. the family
    long long mid_upper = 0;  // n - t_j - s1_dual
    long long trunc = 0;
    std::map<long long, Rat> b;               // raw exponent -> nonzero value
    std::map<long long, MomentBranch> branch; // recorded per exponent
    Rat at(long long a) const {
        auto it = b.find(a);
        return it == b.end() ? Rat(0) : it->second;
    }
};

/// s_1 of the dual code with respect to the family; the zero dual uses the
/// convention n + n/n_1. For the closure family the dual anticodes are orthogonal
/// complements of closure anticodes, evaluated through the primal table.
inline long long s1_of_dual(CodeAnalysis& an, Family fam) {
    long long n = an.n(), k = an.k();
    if (k == n) return n + an.step();  // dual is the zero code
    if (fam != Family::Closure) return an.dual().t1_with_convention(fam);
    long long best = -1;
    for (const auto& e : an.table(Family::Closure).entries()) {
        long long cdim_dual = (n - k) - e.dim + e.cdim;  // dim(C-perp cap A-perp)
        if (cdim_dual >= 1) {
            long long dual_dim = n - e.dim;
            if (best < 0 || dual_dim < best) best = dual_dim;
        }
    }
    return best;
}

/// Normalized tensor binomial moments b_a for raw exponents 0..trunc: zero below,
/// B_{a+t_j}/|A_{a+t_j}| in the middle range, and the closed form
/// [k+a+t_j-n choose j]_q under the family support predicate above it.
inline NormalizedMoments normalized_moments(CodeAnalysis& an, Family fam, int j, long long trunc) {
    NormalizedMoments m;
    m.fam = fam;
    m.j = j;
    m.trunc = trunc;
    long long n = an.n(), k = an.k();
    const Int q(an.code().field.q());
    if (k == 0) {
        if (fam != Family::Ravagnani || j != 1)
            throw std::invalid_argument("normalized_moments: the zero code is handled via the Ravagnani j=1 convention");
        m.shift = n + an.step();
    } else {
        if (j < 1 || j > k) throw std::invalid_argument("normalized_moments: j out of range");
        m.shift = an.t(fam)[static_cast<size_t>(j - 1)];
    }
    m.s1_dual = s1_of_dual(an, fam);
    m.mid_upper = n - m.shift - m.s1_dual;
    std::map<long long, Int> bmom, counts;
    if (k > 0 && m.mid_upper >= 0) {
        bmom = an.table(fam).moments_by_dim(j);
        counts = an.table(fam).counts_by_dim();
    }
    for (long long a = 0; a <= trunc; ++a) {
        if (a <= m.mid_upper) {
            long long dim = a + m.shift;
            auto itc = counts.find(dim);
            Int cnt = itc == counts.end() ? Int(0) : itc->second;
            if (cnt == 0) {
                m.branch[a] = MomentBranch::MidRangeEmpty;
                continue;
            }
            m.branch[a] = MomentBranch::MidRange;
            auto itb = bmom.find(dim);
            Int bv = itb == bmom.end() ? Int(0) : itb->second;
            if (bv != 0) m.b[a] = make_rat(bv, cnt);
        } else {
            if (moment_predicate(an.code().shape, fam, a + m.shift, m.shift)) {
                m.branch[a] = MomentBranch::ClosedForm;
                Int v = qbin(k + a + m.shift - n, j, q);
                if (v != 0) m.b[a] = Rat(v);
            } else {
                m.branch[a] = MomentBranch::PredicateFail;
            }
        }
    }
    return m;
}

/// Z_C^(j)(T) = sum_a b_a T^a, truncated.
inline SparseSeries zeta_series(CodeAnalysis& an, Family fam, int j, long long trunc) {
    NormalizedMoments m = normalized_moments(an, fam, j, trunc);
    SparseSeries z(trunc);
    for (const auto& [a, v] : m.b) z.set(a, v);
    return z;
}

// ---------------------------------------------------------------------------
// Zeta polynomial (Ravagnani family)
// ---------------------------------------------------------------------------

struct ZetaPolynomial {
    int j = 1;
    long long step = 1;          // n/n_1; the polynomial lives in T^step
    std::vector<Rat> p;          // p_a multiplies (T^step)^a
    long long degree_bound = 0;  // n_1 + j + 1 - (n_1/n)(t_j + t_1(dual))
    long long degree = -1;       // index of the last nonzero coefficient
};

/// Numerator of Z w.r.t. the q-geometric denominator: coefficients
/// p_a = sum_s [j+1 s]_{q^m} (-1)^s q^{m C(s,2)} b_{m(a-s)}, and
/// Z(T) prod_{s=0}^j (1 - q^{ms} T^m) = P(T^m) exactly (checked on construction).
inline ZetaPolynomial zeta_polynomial(CodeAnalysis& an, int j, const NormalizedMoments* precomputed = nullptr) {
    const Shape& shape = an.code().shape;
    long long m = an.step(), n1 = shape.n_min(), n = an.n();
    const Int q(an.code().field.q());
    const Int qm = pow_int(q, static_cast<unsigned long>(m));
    long long steps = n1 + j + 3;
    NormalizedMoments local;
    if (!precomputed || precomputed->trunc < m * steps) {
        local = normalized_moments(an, Family::Ravagnani, j, m * steps);
        precomputed = &local;
    }
    const NormalizedMoments& mom = *precomputed;
    ZetaPolynomial zp;
    zp.j = j;
    zp.step = m;
    long long t1d = an.dual().t1_with_convention(Family::Ravagnani);
    zp.degree_bound = n1 + j + 1 - (n1 * (mom.shift + t1d)) / n;
    for (long long a = 0; a <= n1 + j + 1; ++a) {
        Rat pa(0);
        for (long long s = 0; s <= j + 1; ++s) {
            if (m * (a - s) < 0) continue;
            Int coef = qbin(j + 1, s, qm) * pow_int(q, static_cast<unsigned long>(m * (s * (s - 1) / 2)));
            if (s % 2 != 0) coef = -coef;
            pa += Rat(coef) * mom.at(m * (a - s));
        }
        zp.p.push_back(pa);
        if (pa != 0) zp.degree = a;
    }
    // denominator identity, checked as far as the truncation allows
    SparseSeries z(mom.trunc);
    for (const auto& [a, v] : mom.b) z.set(a, v);
    SparseSeries denom(mom.trunc);
    denom.set(0, Rat(1));
    for (long long s = 0; s <= j; ++s) {
        SparseSeries f(mom.trunc);
        f.set(0, Rat(1));
        f.set(m, Rat(-pow_int(q, static_cast<unsigned long>(m * s))));
        denom = series_mul_trunc(denom, f, mom.trunc);
    }
    SparseSeries lhs = series_mul_trunc(z, denom, mom.trunc - m * (j + 1));
    SparseSeries rhs(mom.trunc - m * (j + 1));
    for (size_t a = 0; a < zp.p.size(); ++a) rhs.set(static_cast<long long>(a) * m, zp.p[a]);
    if (lhs != rhs) throw std::logic_error("zeta_polynomial: denominator identity failed");
    return zp;
}

// ---------------------------------------------------------------------------
// Weight enumerator from the zeta function (Ravagnani family)
// ---------------------------------------------------------------------------

/// W_C^(R,j)(X,Y) via the Bernstein expansion, cross-checked against the
/// coefficient of T^{n-t_j} in Z(T) phi_{n_1}(X^m, Y^m, T^m).
inline HomPoly2 enumerator_from_zeta(CodeAnalysis& an, int j, const NormalizedMoments* precomputed = nullptr) {
    const Shape& shape = an.code().shape;
    long long m = an.step(), n1 = shape.n_min(), n = an.n();
    const Int q(an.code().field.q());
    NormalizedMoments local;
    if (!precomputed || precomputed->trunc < n) {
        local = normalized_moments(an, Family::Ravagnani, j, n);
        precomputed = &local;
    }
    const NormalizedMoments& mom = *precomputed;
    long long t = mom.shift;
    HomPoly2 bern(n);
    for (long long a = (t * n1) / n; a <= n1; ++a) {
        Rat c = mom.at(a * m - t);
        if (c == 0) continue;
        bern = bern + bernstein(n1, a, q).stretch(m).scaled(c);
    }
    // coefficient of T^{n-t} in Z * phi: terms b_a B_{n1,b} with a + m(n1-b) = n-t
    HomPoly2 extract(n);
    for (long long b = 0; b <= n1; ++b) {
        long long a = n - t - m * (n1 - b);
        if (a < 0) continue;
        Rat c = mom.at(a);
        if (c == 0) continue;
        extract = extract + bernstein(n1, b, q).stretch(m).scaled(c);
    }
    if (bern != extract) throw std::logic_error("enumerator_from_zeta: Bernstein and extraction routes disagree");
    return bern;
}

/// The definitional enumerator sum_a W_a X^{n-a} Y^a from a weight distribution.
inline HomPoly2 enumerator_definitional(long long n, const WeightDistribution& w) {
    HomPoly2 out(n);
    for (const auto& [a, v] : w.by_dim)
        if (v != 0) out.add(a, Rat(v));
    return out;
}

// ---------------------------------------------------------------------------
// Reference objects of binomial-moment-determined codes
// ---------------------------------------------------------------------------

struct TbmdReference {
    long long rho = 0;
    int s = 1;
    long long step = 1;
    std::vector<Int> b;    // b_{rho,a}, step-indexed
    SparseSeries Z;        // raw exponents (multiples of step)
    std::vector<Rat> p;    // p_{rho,a}, step-indexed
    HomPoly2 W;            // W_{rho,ell} for the requested ell
};

inline Int tbmd_reference_moment(const Shape& shape, const Int& q, long long rho, int s, long long a) {
    long long m = shape.n() / shape.n_min();
    // floor((rho - s)/m), exact for negative numerators
    long long num = rho - s;
    long long fl = num >= 0 ? num / m : -(((-num) + m - 1) / m);
    return qbin(rho + m * (a - fl), s, q);
}

/// The five reference objects of a j-TBMD code with k = rho (mod n/n_1) and
/// t_s = (n/n_1) * ell: step-indexed moments, zeta series, zeta polynomial
/// coefficients, and the Bernstein-basis enumerator W_{rho,ell}.
inline TbmdReference tbmd_reference(const Shape& shape, const Int& q, long long rho, int s, int ell,
                                    long long trunc_steps) {
    long long m = shape.n() / shape.n_min(), n1 = shape.n_min();
    if (rho < 0 || rho >= m) throw std::invalid_argument("tbmd_reference: rho out of range");
    if (ell < 1 || ell > n1) throw std::invalid_argument("tbmd_reference: ell out of range");
    TbmdReference r;
    r.rho = rho;
    r.s = s;
    r.step = m;
    r.Z = SparseSeries(m * trunc_steps);
    for (long long a = 0; a <= trunc_steps; ++a) {
        Int v = tbmd_reference_moment(shape, q, rho, s, a);
        r.b.push_back(v);
        if (a * m <= m * trunc_steps) r.Z.set(a * m, Rat(v));
    }
    const Int qm = pow_int(q, static_cast<unsigned long>(m));
    for (long long a = 0; a <= trunc_steps; ++a) {
        Rat pa(0);
        for (long long t = 0; t <= s + 1; ++t) {
            if (a - t < 0) continue;
            Int coef = qbin(s + 1, t, qm) * pow_int(q, static_cast<unsigned long>(m * (t * (t - 1) / 2)));
            if (t % 2 != 0) coef = -coef;
            pa += Rat(coef * r.b[static_cast<size_t>(a - t)]);
        }
        r.p.push_back(pa);
    }
    r.W = HomPoly2(shape.n());
    for (long long a = 0; a + ell <= n1; ++a)
        r.W = r.W + bernstein(n1, a + ell, q).stretch(m).scaled(Rat(r.b[static_cast<size_t>(a)]));
    return r;
}

// ---------------------------------------------------------------------------
// Expansion in the reference enumerator basis
// ---------------------------------------------------------------------------

/// beta_{rho,a} with W_C^(R,j) = sum_a beta_{rho,a} W_{rho, t_j n_1/n + a}.
/// Computed by the Bell-polynomial formula and cross-checked against the series
/// quotient Z_C / Z_rho.
inline std::vector<Rat> beta_expansion(CodeAnalysis& an, int j, long long rho, long long terms,
                                       const NormalizedMoments* precomputed = nullptr) {
    long long m = an.step();
    const Int q(an.code().field.q());
    NormalizedMoments local;
    if (!precomputed || precomputed->trunc < m * (terms + 1)) {
        local = normalized_moments(an, Family::Ravagnani, j, m * (terms + 1));
        precomputed = &local;
    }
    const NormalizedMoments& mom = *precomputed;
    std::vector<Int> bref;
    for (long long a = 0; a <= terms; ++a) bref.push_back(tbmd_reference_moment(an.code().shape, q, rho, j, a));
    if (bref[0] == 0) throw std::logic_error("beta_expansion: reference moment b_{rho,0} vanishes");
    // Bell route
    std::vector<Rat> beta;
    for (long long a = 0; a <= terms; ++a) {
        Rat acc(0);
        for (long long b = 0; b <= a; ++b) {
            std::vector<Rat> xs;
            for (long long t = 0; t <= a - b; ++t) xs.push_back(t == 0 ? Rat(bref[0]) : Rat(-bref[static_cast<size_t>(t)]));
            Rat denom = pow_rat(Rat(bref[0]), static_cast<unsigned long>(a - b + 1));
            acc += mom.at(m * b) / denom * bell_full(a - b, xs);
        }
        beta.push_back(acc);
    }
    // series-quotient route
    SparseSeries zc(terms), zr(terms);
    for (long long a = 0; a <= terms; ++a) {
        zc.set(a, mom.at(m * a));
        zr.set(a, Rat(bref[static_cast<size_t>(a)]));
    }
    SparseSeries quotient = series_mul_trunc(zc, series_reciprocal(zr.scaled(make_rat(1, bref[0]))), terms)
                                .scaled(make_rat(1, bref[0]));
    for (long long a = 0; a <= terms; ++a)
        if (quotient.coefficient(a) != beta[static_cast<size_t>(a)])
            throw std::logic_error("beta_expansion: Bell and series routes disagree");
    return beta;
}

// ---------------------------------------------------------------------------
// Refined (multivariate) moments, zeta and enumerator
// ---------------------------------------------------------------------------

struct RefinedMoments {
    Family fam = Family::Ravagnani;
    int j = 1;
    long long t_j = 0;
    long long s1_dual = 0;
    std::vector<int> caps;
    std::map<std::vector<int>, Rat> b;  // absolute per-mode exponents -> nonzero value
    Rat at(const std::vector<int>& a) const {
        auto it = b.find(a);
        return it == b.end() ? Rat(0) : it->second;
    }
};

/// Index tuples of the family's refined lattice within the caps (the zero tuple
/// is omitted; its moment vanishes for j >= 1).
inline std::set<std::vector<int>> refined_index_set(const Shape& s, Family fam, const std::vector<int>& caps) {
    std::set<std::vector<int>> out;
    if (fam == Family::Closure) {
        std::vector<int> cur(static_cast<size_t>(s.r()), 0);
        while (true) {
            out.insert(cur);
            int i = s.r();
            bool carried = false;
            while (i-- > 0) {
                if (cur[static_cast<size_t>(i)] < caps[static_cast<size_t>(i)]) {
                    ++cur[static_cast<size_t>(i)];
                    for (int t = i + 1; t < s.r(); ++t) cur[static_cast<size_t>(t)] = 0;
                    carried = true;
                    break;
                }
            }
            if (!carried) break;
        }
        out.erase(std::vector<int>(static_cast<size_t>(s.r()), 0));
        return out;
    }
    for (int i : family_free_modes(s, fam)) {
        for (int a = 1; a <= caps[static_cast<size_t>(i)]; ++a) {
            std::vector<int> v = s.dims();
            v[static_cast<size_t>(i)] = a;
            out.insert(std::move(v));
        }
    }
    return out;
}

/// Refined normalized moments over the family lattice, indices not shifted.
inline RefinedMoments refined_normalized_moments(CodeAnalysis& an, Family fam, int j, std::vector<int> caps = {}) {
    const Shape& s = an.code().shape;
    const Int q(an.code().field.q());
    long long n = an.n(), k = an.k();
    if (j < 1 || j > k) throw std::invalid_argument("refined_normalized_moments: j out of range");
    if (caps.empty())
        for (int i = 0; i < s.r(); ++i) caps.push_back(3 * s.dim(i));
    RefinedMoments rm;
    rm.fam = fam;
    rm.j = j;
    rm.caps = caps;
    rm.t_j = an.t(fam)[static_cast<size_t>(j - 1)];
    rm.s1_dual = s1_of_dual(an, fam);
    std::map<DimDist, Int> bdd = an.table(fam).moments_by_dd(j);
    for (const std::vector<int>& a : refined_index_set(s, fam, caps)) {
        long long prod = 1;
        for (int x : a) prod *= x;
        if (prod < rm.t_j) continue;
        if (prod <= n - rm.s1_dual) {
            // middle range: only realizable distributions carry mass
            bool in_lattice = true;
            for (int i = 0; i < s.r(); ++i)
                if (a[static_cast<size_t>(i)] < 1 || a[static_cast<size_t>(i)] > s.dim(i)) in_lattice = false;
            if (!in_lattice) continue;
            auto it = bdd.find(DimDist(a));
            if (it == bdd.end() || it->second == 0) continue;
            Int denom = 1;
            for (int i = 0; i < s.r(); ++i) denom *= qbin(s.dim(i), a[static_cast<size_t>(i)], q);
            rm.b[a] = make_rat(it->second, denom);
        } else {
            // closed form; the lattice structure already enforces the support
            bool qp = true;
            if (fam == Family::Closure) {
                bool below = true, above = true;
                for (int i = 0; i < s.r(); ++i) {
                    if (a[static_cast<size_t>(i)] > s.dim(i)) below = false;
                    if (a[static_cast<size_t>(i)] < s.dim(i)) above = false;
                }
                qp = (below && prod <= n) || above;
            }
            if (!qp) continue;
            Int v = qbin(k + prod - n, j, q);
            if (v != 0) rm.b[a] = Rat(v);
        }
    }
    return rm;
}

/// Z_C(T_1,...,T_r) = sum b_a prod T_i^{a_i} over the refined lattice.
inline MultiPoly refined_zeta(CodeAnalysis& an, Family fam, int j, std::vector<int> caps = {}) {
    RefinedMoments rm = refined_normalized_moments(an, fam, j, std::move(caps));
    MultiPoly z(an.code().shape.r());
    for (const auto& [a, v] : rm.b) z.add(a, v);
    return z;
}

/// Definitional refined enumerator: arity 2r, X exponents then Y exponents.
inline MultiPoly refined_enumerator(CodeAnalysis& an, Family fam, int j, WPath path = WPath::Auto, int threads = 0) {
    const Shape& s = an.code().shape;
    WeightDistribution w = weight_distribution(an, fam, j, path, threads);
    MultiPoly out(2 * s.r());
    for (const auto& [dd, v] : w.by_dd) {
        if (v == 0 || dd.is_zero()) continue;
        std::vector<int> e(static_cast<size_t>(2 * s.r()));
        for (int i = 0; i < s.r(); ++i) {
            e[static_cast<size_t>(i)] = s.dim(i) - dd[i];
            e[static_cast<size_t>(s.r() + i)] = dd[i];
        }
        out.add(e, Rat(v));
    }
    return out;
}

/// Bernstein expansion of the refined enumerator:
/// sum over lattice a with [a] >= t_j of b_a prod_i B_{n_i,a_i}(X_i, Y_i; q).
inline MultiPoly refined_enumerator_bernstein(CodeAnalysis& an, Family fam, int j) {
    const Shape& s = an.code().shape;
    const Int q(an.code().field.q());
    std::vector<int> caps = s.dims();
    RefinedMoments rm = refined_normalized_moments(an, fam, j, caps);
    MultiPoly out(2 * s.r());
    for (const auto& [a, v] : rm.b) {
        // product of per-mode Bernstein polynomials, expanded into X/Y exponents
        MultiPoly term(2 * s.r());
        term.set(std::vector<int>(static_cast<size_t>(2 * s.r()), 0), v);
        for (int i = 0; i < s.r(); ++i) {
            HomPoly2 bp = bernstein(s.dim(i), a[static_cast<size_t>(i)], q);
            MultiPoly factor(2 * s.r());
            for (long e = 0; e <= bp.degree(); ++e) {
                if (bp.coefficient(e) == 0) continue;
                std::vector<int> exp(static_cast<size_t>(2 * s.r()), 0);
                exp[static_cast<size_t>(i)] = static_cast<int>(bp.degree() - e);
                exp[static_cast<size_t>(s.r() + i)] = static_cast<int>(e);
                factor.set(exp, bp.coefficient(e));
            }
            term = multi_mul_capped(term, factor, {});
        }
        out = out + term;
    }
    return out;
}

/// Coefficient of prod T_i^{n_i} in Z(T) phi_n(X,Y,T): equals the refined
/// enumerator. The T-extraction pairs a zeta term a with the phi term at n - a.
inline MultiPoly refined_enumerator_varphi(CodeAnalysis& an, Family fam, int j) {
    const Shape& s = an.code().shape;
    const Int q(an.code().field.q());
    std::vector<int> caps = s.dims();
    RefinedMoments rm = refined_normalized_moments(an, fam, j, caps);
    MultiPoly out(2 * s.r());
    for (const std::vector<int>& bexp : refined_index_set(s, fam, caps)) {
        bool positive = true;
        for (int x : bexp) positive = positive && x >= 1;
        if (!positive) continue;  // phi sums over the family's positive lattice
        Rat zc = rm.at(bexp);     // the matching zeta term has exponent n - (n - b) = b
        if (zc == 0) continue;
        MultiPoly term(2 * s.r());
        term.set(std::vector<int>(static_cast<size_t>(2 * s.r()), 0), zc);
        for (int i = 0; i < s.r(); ++i) {
            HomPoly2 bp = bernstein(s.dim(i), bexp[static_cast<size_t>(i)], q);
            MultiPoly factor(2 * s.r());
            for (long e = 0; e <= bp.degree(); ++e) {
                if (bp.coefficient(e) == 0) continue;
                std::vector<int> exp(static_cast<size_t>(2 * s.r()), 0);
                exp[static_cast<size_t>(i)] = static_cast<int>(bp.degree() - e);
                exp[static_cast<size_t>(s.r() + i)] = static_cast<int>(e);
                factor.set(exp, bp.coefficient(e));
            }
            term = multi_mul_capped(term, factor, {});
        }
        out = out + term;
    }
    return out;
}

// ---------------------------------------------------------------------------
// Refined zeta polynomials (Ravagnani family)
// ---------------------------------------------------------------------------

struct RefinedZetaPolynomials {
    int j = 1;
    std::vector<int> free_modes;          // delta_1
    std::vector<MultiPoly> polys;         // P_{C,i} per free mode, arity r
    long long degree_bound = 0;           // in T_i, absolute: n_1 + j + 1 - (n_1/n) t_1(dual)
    bool decomposition_ok = false;        // Z = sum_i Z_{C,i} - (|delta_1|-1) b_n prod T^n
    bool line_identity_ok = false;        // line * denominator = p-line, each free mode
};

inline RefinedZetaPolynomials refined_zeta_polynomials(CodeAnalysis& an, int j, std::vector<int> caps = {}) {
    const Shape& s = an.code().shape;
    const Int q(an.code().field.q());
    long long m = an.step(), n1 = s.n_min(), n = an.n();
    const Int qm = pow_int(q, static_cast<unsigned long>(m));
    if (caps.empty())
        for (int i = 0; i < s.r(); ++i) caps.push_back(3 * s.dim(i));
    RefinedZetaPolynomials out;
    out.j = j;
    out.free_modes = family_free_modes(s, Family::Ravagnani);
    long long t1d = an.dual().t1_with_convention(Family::Ravagnani);
    out.degree_bound = n1 + j + 1 - (n1 * t1d) / n;
    RefinedMoments rm = refined_normalized_moments(an, Family::Ravagnani, j, caps);
    MultiPoly z(s.r());
    for (const auto& [a, v] : rm.b) z.add(a, v);

    MultiPoly recomposed(s.r());
    out.line_identity_ok = true;
    for (int i : out.free_modes) {
        int cap = caps[static_cast<size_t>(i)];
        // the mode-i line of the zeta function
        std::vector<Rat> line(static_cast<size_t>(cap) + 1, Rat(0));
        for (int a = 0; a <= cap; ++a) {
            std::vector<int> idx = s.dims();
            idx[static_cast<size_t>(i)] = a;
            line[static_cast<size_t>(a)] = rm.at(idx);
        }
        // numerator coefficients along the line
        std::vector<Rat> pline(static_cast<size_t>(cap) + 1, Rat(0));
        for (int a = 0; a <= cap; ++a) {
            Rat pa(0);
            for (long long t = 0; t <= j + 1 && t <= a; ++t) {
                Int coef = qbin(j + 1, t, qm) * pow_int(q, static_cast<unsigned long>(m * (t * (t - 1) / 2)));
                if (t % 2 != 0) coef = -coef;
                pa += Rat(coef) * line[static_cast<size_t>(a - t)];
            }
            pline[static_cast<size_t>(a)] = pa;
        }
        // beyond the degree bound the numerator must vanish (checkable up to cap - (j+1))
        for (int a = static_cast<int>(out.degree_bound) + 1; a + j + 1 <= cap; ++a)
            if (pline[static_cast<size_t>(a)] != 0) out.line_identity_ok = false;
        MultiPoly poly(s.r());
        for (int a = 0; a <= cap; ++a) {
            if (pline[static_cast<size_t>(a)] == 0 || a > out.degree_bound) continue;
            std::vector<int> idx = s.dims();
            idx[static_cast<size_t>(i)] = a;
            poly.add(idx, pline[static_cast<size_t>(a)]);
        }
        out.polys.push_back(poly);
        MultiPoly zline(s.r());
        for (int a = 0; a <= cap; ++a) {
            if (line[static_cast<size_t>(a)] == 0) continue;
            std::vector<int> idx = s.dims();
            idx[static_cast<size_t>(i)] = a;
            zline.add(idx, line[static_cast<size_t>(a)]);
        }
        recomposed = recomposed + zline;
    }
    // remove the multiply counted all-full term
    std::vector<int> full = s.dims();
    Rat bn = rm.at(full);
    recomposed.add(full, -Rat(static_cast<long>(out.free_modes.size() - 1)) * bn);
    out.decomposition_ok = (recomposed == z);
    return out;
}

// ---------------------------------------------------------------------------
// Bounds
// ---------------------------------------------------------------------------

struct BoundOutcome {
    std::string name;
    std::string detail;
    bool applicable = false;
    bool satisfied = false;
    double approx_log10 = 0.0;  // decimal log of the bound value; informational only
};

namespace detail {

// q^{u/v} <= x, compared exactly as q^u <= x^v (v >= 1, x > 0).
inline bool q_power_leq(const Int& q, long long u, long long v, const Rat& x) {
    if (x <= 0) return false;
    Rat lhs = u >= 0 ? Rat(pow_int(q, static_cast<unsigned long>(u))) : make_rat(1, pow_int(q, static_cast<unsigned long>(-u)));
    return lhs <= pow_rat(x, static_cast<unsigned long>(v));
}

inline double approx_log10(const Rat& x) {
    if (x <= 0) return -1e300;
    signed long e_num, e_den;
    double dn = mpz_get_d_2exp(&e_num, x.get_num().get_mpz_t());
    double dd = mpz_get_d_2exp(&e_den, x.get_den().get_mpz_t());
    return (std::log10(std::fabs(dn)) + static_cast<double>(e_num) * std::log10(2.0)) -
           (std::log10(std::fabs(dd)) + static_cast<double>(e_den) * std::log10(2.0));
}

}  // namespace detail

/// Evaluate the zeta-side bounds on the generalized weights: the Ravagnani moment
/// bound, its zeta-polynomial corollary, the Delsarte floor bound, and the refined
/// Delsarte/Ravagnani moment bounds. Bounds whose hypotheses fail are reported
/// not-applicable. Comparisons are exact q-power inequalities.
inline std::vector<BoundOutcome> bounds_report(CodeAnalysis& an, int j) {
    std::vector<BoundOutcome> out;
    const Shape& s = an.code().shape;
    const Int q(an.code().field.q());
    long long n = an.n(), k = an.k(), m = an.step(), n1 = s.n_min();
    bool j_valid = k > 0 && j >= 1 && j <= k;

    // t_j >= j, all three families
    for (Family fam : {Family::Closure, Family::Delsarte, Family::Ravagnani}) {
        BoundOutcome b;
        b.name = std::string("tj_geq_j_") + family_name(fam);
        b.applicable = j_valid;
        if (b.applicable) {
            long long t = an.t(fam)[static_cast<size_t>(j - 1)];
            b.satisfied = t >= j;
            b.detail = "t_j = " + std::to_string(t) + " >= j = " + std::to_string(j);
        }
        out.push_back(b);
    }

    long long tR = j_valid ? an.t(Family::Ravagnani)[static_cast<size_t>(j - 1)] : -1;

    {  // Ravagnani moment bound: q^{t n1/n + 1} <= (b_m/b_0)(q-1) + 1
        BoundOutcome b;
        b.name = "boundR";
        b.applicable = j_valid && tR < n;
        if (b.applicable) {
            NormalizedMoments mom = normalized_moments(an, Family::Ravagnani, j, m);
            Rat b0 = mom.at(0), bm = mom.at(m);
            if (b0 == 0) {
                b.applicable = false;
            } else {
                Rat rhs = bm / b0 * Rat(q - 1) + 1;
                long long u = (tR * n1) / n + 1;
                b.satisfied = detail::q_power_leq(q, u, 1, rhs);
                b.detail = "q^" + std::to_string(u) + " <= " + to_string(rhs);
                b.approx_log10 = detail::approx_log10(rhs);
            }
        }
        out.push_back(b);
    }

    {  // zeta-polynomial corollary: alpha = p_1/p_0
        BoundOutcome b;
        b.name = "boundR1";
        b.applicable = j_valid && tR < n;
        if (b.applicable) {
            ZetaPolynomial zp = zeta_polynomial(an, j);
            if (zp.p.empty() || zp.p[0] == 0) {
                b.applicable = false;
            } else {
                Rat alpha = zp.p[1] / zp.p[0];
                Rat rhs = (alpha + Rat(qbin(j + 1, 1, pow_int(q, static_cast<unsigned long>(m))))) * Rat(q - 1) + 1;
                long long u = (tR * n1) / n + 1;
                b.satisfied = detail::q_power_leq(q, u, 1, rhs);
                b.detail = "alpha = " + to_string(alpha) + "; q^" + std::to_string(u) + " <= " + to_string(rhs);
                b.approx_log10 = detail::approx_log10(rhs);
            }
        }
        out.push_back(b);
    }

    {  // Delsarte floor bound: t_j^D <= min_i (n - (n/n_i) floor(n_i (k-j)/n))
        BoundOutcome b;
        b.name = "boundD_floor";
        b.applicable = j_valid;
        if (b.applicable) {
            long long tD = an.t(Family::Delsarte)[static_cast<size_t>(j - 1)];
            long long best = -1;
            for (int i = 0; i < s.r(); ++i) {
                long long v = n - (n / s.dim(i)) * ((s.dim(i) * (k - j)) / n);
                if (best < 0 || v < best) best = v;
            }
            b.satisfied = tD <= best;
            b.detail = "t_j^D = " + std::to_string(tD) + " <= " + std::to_string(best);
        }
        out.push_back(b);
    }

    // refined moment bounds: for each free mode i with c^(j,i) < n-dist, compare
    // q^{c_i + 1} <= (b_{c+e}/b_c)(q-1) + 1 where c_i = ceil(t_j n_i / n)
    auto refined_bound = [&](Family fam, const std::string& name) {
        BoundOutcome b;
        b.name = name;
        b.applicable = false;
        if (!j_valid) {
            out.push_back(b);
            return;
        }
        long long t = an.t(fam)[static_cast<size_t>(j - 1)];
        std::vector<int> caps;
        for (int i = 0; i < s.r(); ++i) caps.push_back(s.dim(i) + 1);
        RefinedMoments rm = refined_normalized_moments(an, fam, j, caps);
        bool all_ok = true;
        std::string detail_txt;
        for (int i : family_free_modes(s, fam)) {
            long long ni = s.dim(i);
            long long ci = (t * ni + n - 1) / n;  // ceil
            if (ci >= ni) continue;               // c^{(j,i)} = full: hypothesis fails
            std::vector<int> c = s.dims();
            c[static_cast<size_t>(i)] = static_cast<int>(ci);
            std::vector<int> ce = c;
            ce[static_cast<size_t>(i)] += 1;
            Rat bc = rm.at(c), bce = rm.at(ce);
            if (bc == 0) continue;  // ratio undefined; hypothesis fails
            Rat rhs = bce / bc * Rat(q - 1) + 1;
            bool ok = detail::q_power_leq(q, ci + 1, 1, rhs);
            all_ok = all_ok && ok;
            b.applicable = true;
            b.approx_log10 = detail::approx_log10(rhs);
            if (!detail_txt.empty()) detail_txt += "; ";
            detail_txt += "mode " + std::to_string(i + 1) + ": q^" + std::to_string(ci + 1) + " <= " + to_string(rhs);
        }
        b.satisfied = all_ok;
        b.detail = detail_txt;
        out.push_back(b);
    };
    refined_bound(Family::Delsarte, "boundD");
    refined_bound(Family::Ravagnani, "boundR_refined");
    return out;
}

}  // namespace tenzeta
