#pragma once

#include <gmpxx.h>

#include <cstdint>
#include <stdexcept>
#include <string>

namespace tenzeta {

/// Arbitrary-precision signed integer (exact, no overflow).
using Int = mpz_class;

/// Arbitrary-precision rational, kept canonical (lowest terms, positive denominator).
using Rat = mpq_class;

/// mpz_class lacks a long long constructor; on LP64 a long carries the value.
inline Int int_of(long long v) { return Int(static_cast<long>(v)); }

inline Rat make_rat(const Int& num, const Int& den) {
    if (den == 0) throw std::invalid_argument("make_rat: zero denominator");
    Rat r(num, den);
    r.canonicalize();
    return r;
}

inline Int pow_int(const Int& base, unsigned long e) {
    Int r;
    mpz_pow_ui(r.get_mpz_t(), base.get_mpz_t(), e);
    return r;
}

inline Rat pow_rat(const Rat& base, unsigned long e) {
    Rat r;
    mpq_class b = base;
    mpz_pow_ui(r.get_num_mpz_t(), b.get_num_mpz_t(), e);
    mpz_pow_ui(r.get_den_mpz_t(), b.get_den_mpz_t(), e);
    return r;
}

/// Ordinary binomial C(s,2) = s(s-1)/2, valid for any integer s (0 for s < 2).
inline Int choose2(long s) {
    if (s < 2) return 0;
    return Int(s) * (s - 1) / 2;
}

inline Int factorial(unsigned long s) {
    Int r;
    mpz_fac_ui(r.get_mpz_t(), s);
    return r;
}

inline std::string to_string(const Int& v) { return v.get_str(); }

/// Rationals render as "num" when integral, "num/den" otherwise.
inline std::string to_string(const Rat& v) {
    if (v.get_den() == 1) return v.get_num().get_str();
    return v.get_num().get_str() + "/" + v.get_den().get_str();
}

inline bool is_integral(const Rat& v) { return v.get_den() == 1; }

inline Int to_int(const Rat& v) {
    if (!is_integral(v)) throw std::domain_error("to_int: rational " + to_string(v) + " is not an integer");
    return v.get_num();
}

}  // namespace tenzeta
