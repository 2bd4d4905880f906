#pragma once

#include <vector>

#include "tenzeta/poly.hpp"
#include "tenzeta/qbinom.hpp"

namespace tenzeta {

/// q-Bernstein polynomial B_{b,a}(X,Y;q) = [b a]_q Y^a prod_{c=0}^{b-a-1} (X - q^c Y),
/// homogeneous of degree b. Requires 0 <= a <= b.
inline HomPoly2 bernstein(long b, long a, const Int& q) {
    if (a < 0 || a > b) throw std::invalid_argument("bernstein: need 0 <= a <= b");
    HomPoly2 r = HomPoly2::monomial(a, a, Rat(qbin(b, a, q)));
    for (long c = 0; c <= b - a - 1; ++c) {
        HomPoly2 fac(1);
        fac.set(0, Rat(1));            // X
        fac.set(1, Rat(-pow_int(q, static_cast<unsigned long>(c))));  // -q^c Y
        r = r * fac;
    }
    return r;
}

/// Coefficients lambda_c with X^{b-a} Y^a = sum_{c=a}^{b} lambda_c B_{b,c}(X,Y;q).
/// Returned vector has size b+1; entries below index a are zero.
inline std::vector<Rat> monomial_in_bernstein(long b, long a, const Int& q) {
    if (a < 0 || a > b) throw std::invalid_argument("monomial_in_bernstein: need 0 <= a <= b");
    std::vector<Rat> lambda(static_cast<size_t>(b) + 1);
    Rat inv = make_rat(1, qbin(b, a, q));
    for (long c = a; c <= b; ++c) lambda[static_cast<size_t>(c)] = inv * Rat(qbin(c, a, q));
    return lambda;
}

/// phi_a(X,Y,T) = sum_{b=0}^{a} B_{a,b}(X,Y;q) T^{a-b}, represented as the vector of
/// homogeneous T-coefficients: result[e] multiplies T^e, so result[a-b] = B_{a,b}.
inline std::vector<HomPoly2> varphi(long a, const Int& q) {
    std::vector<HomPoly2> r(static_cast<size_t>(a) + 1, HomPoly2(a));
    for (long b = 0; b <= a; ++b) r[static_cast<size_t>(a - b)] = bernstein(a, b, q);
    return r;
}

}  // namespace tenzeta
