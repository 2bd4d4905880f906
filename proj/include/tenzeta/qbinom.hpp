#pragma once

#include <stdexcept>

#include "tenzeta/exact.hpp"

namespace tenzeta {

/// Gaussian binomial coefficient [a choose b]_q for arbitrary integers a, b.
///
/// Conventions: 1 if b == 0 (any a, including negative); 0 if b < 0 or a < b.
/// Otherwise the product formula, which is always an exact integer. The base
/// may be any integer >= 2, so [.]_{q^m} is qbin(a, b, pow_int(q, m)).
inline Int qbin(long a, long b, const Int& q) {
    if (q < 2) throw std::invalid_argument("qbin: base must be >= 2");
    if (b < 0) return 0;
    if (b == 0) return 1;
    if (a < b) return 0;
    Int num = 1, den = 1;
    for (long i = 0; i < b; ++i) {
        num *= pow_int(q, static_cast<unsigned long>(a - i)) - 1;
        den *= pow_int(q, static_cast<unsigned long>(i + 1)) - 1;
    }
    Int r;
    mpz_divexact(r.get_mpz_t(), num.get_mpz_t(), den.get_mpz_t());
    return r;
}

inline Int qbin(long a, long b, unsigned long q) { return qbin(a, b, Int(q)); }

/// Rational continuation of the Gaussian binomial: the product formula evaluated
/// for any integer top, so a negative top yields a nonzero rational instead of 0.
/// The q-Vandermonde identities hold for all integer tops in this form, which the
/// duality transforms rely on. Coincides with qbin() whenever a >= b or b == 0.
inline Rat qbin_rational(long a, long b, const Int& q) {
    if (b < 0) return Rat(0);
    if (b == 0) return Rat(1);
    if (a >= 0 && a < b) return Rat(0);
    Rat out(1);
    for (long i = 0; i < b; ++i) {
        long e = a - i;
        Rat top = e >= 0 ? Rat(pow_int(q, static_cast<unsigned long>(e))) - 1
                         : make_rat(1, pow_int(q, static_cast<unsigned long>(-e))) - 1;
        out *= top / (Rat(pow_int(q, static_cast<unsigned long>(i + 1))) - 1);
    }
    return out;
}

/// Number of subspaces of F_q^m over all dimensions.
inline Int subspace_total(long m, const Int& q) {
    Int total = 0;
    for (long d = 0; d <= m; ++d) total += qbin(m, d, q);
    return total;
}

}  // namespace tenzeta
