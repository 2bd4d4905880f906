#pragma once

#include <span>
#include <vector>

#include "tenzeta/exact.hpp"
#include "tenzeta/poly.hpp"

namespace tenzeta {

namespace detail {

// Enumerates multiplicity vectors (c_1,...,c_L) with sum c_i = b and sum i*c_i = a,
// accumulating the multinomial-weighted monomials of the partial Bell polynomial.
inline void bell_rec(long a, long b, long part, const std::span<const Rat>& xs, const Rat& acc, const Int& multyet,
                     Rat& out) {
    if (a == 0 && b == 0) {
        // weight b!/prod(c_i!): b! sits in acc, prod(c_i!) accumulated in multyet
        out += acc / Rat(multyet);
        return;
    }
    if (part < 1 || a < b || b <= 0) return;
    // c = number of parts equal to `part`
    Rat xpow(1);
    Int fact = 1;
    for (long c = 0; c * part <= a && c <= b; ++c) {
        if (c > 0) {
            xpow *= xs[static_cast<size_t>(part)];
            fact *= c;
        }
        bell_rec(a - c * part, b - c, part - 1, xs, acc * xpow, multyet * fact, out);
    }
}

}  // namespace detail

/// Homogeneous ordinary partial Bell polynomial P_{a,b}(x_0,...,x_{a-b+1}):
/// sum over compositions of a into b parts of [b!/prod c_i!] x_0^{a-b} prod x_i^{c_i},
/// where c_i counts the parts equal to i. P_{0,0} = 1; P_{a,0} = 0 for a > 0;
/// P_{0,b} = 0 for b > 0.
inline Rat bell_partial(long a, long b, std::span<const Rat> xs) {
    if (a == 0 && b == 0) return Rat(1);
    if (a <= 0 || b <= 0 || b > a) return Rat(0);
    if (static_cast<long>(xs.size()) < a - b + 2)
        throw std::invalid_argument("bell_partial: xs must supply x_0..x_{a-b+1}");
    Rat out(0);
    detail::bell_rec(a, b, a - b + 1, xs, pow_rat(xs[0], static_cast<unsigned long>(a - b)) * Rat(factorial(b)),
                     Int(1), out);
    return out;
}

/// Full Bell polynomial P_a = sum_{b=0}^{a} P_{a,b}.
inline Rat bell_full(long a, std::span<const Rat> xs) {
    Rat out(0);
    for (long b = 0; b <= a; ++b) out += bell_partial(a, b, xs);
    return out;
}

/// Reciprocal of a series with constant term 1, by long division:
/// r_0 = 1, r_e = -sum_{i=1}^{e} q_i r_{e-i}.
inline SparseSeries series_reciprocal_division(const SparseSeries& q) {
    if (q.coefficient(0) != 1) throw std::invalid_argument("series_reciprocal: constant term must be 1");
    SparseSeries r(q.truncation());
    std::vector<Rat> rc(static_cast<size_t>(q.truncation()) + 1);
    rc[0] = Rat(1);
    r.set(0, Rat(1));
    for (long e = 1; e <= q.truncation(); ++e) {
        Rat s(0);
        for (const auto& [i, qi] : q.terms()) {
            if (i < 1 || i > e) continue;
            s += qi * rc[static_cast<size_t>(e - i)];
        }
        rc[static_cast<size_t>(e)] = -s;
        r.set(e, -s);
    }
    return r;
}

/// Reciprocal via the Faa di Bruno / Bell route: write Q = 1 - sum_{e>=1} (c_e/c_0) T^e
/// with c_0 = 1; then d_e = (1/c_0)^e P_e(c_0, c_1, ..., c_e).
inline SparseSeries series_reciprocal_bell(const SparseSeries& q) {
    if (q.coefficient(0) != 1) throw std::invalid_argument("series_reciprocal: constant term must be 1");
    std::vector<Rat> c(static_cast<size_t>(q.truncation()) + 1);
    c[0] = Rat(1);
    for (long e = 1; e <= q.truncation(); ++e) c[static_cast<size_t>(e)] = -q.coefficient(e);
    SparseSeries r(q.truncation());
    r.set(0, Rat(1));
    for (long e = 1; e <= q.truncation(); ++e) r.set(e, bell_full(e, c));
    return r;
}

/// Reciprocal of a series with constant term 1. Computed by both long division and
/// the Bell-polynomial formula; the routes must agree.
inline SparseSeries series_reciprocal(const SparseSeries& q) {
    SparseSeries a = series_reciprocal_division(q);
    SparseSeries b = series_reciprocal_bell(q);
    if (a != b) throw std::logic_error("series_reciprocal: division and Bell routes disagree");
    return a;
}

}  // namespace tenzeta
