#pragma once

#include <cstdint>
#include <memory>
#include <stdexcept>
#include <string>
#include <vector>

namespace tenzeta {

using gf_t = std::uint32_t;

namespace detail {

inline bool is_prime(unsigned long p) {
    if (p < 2) return false;
    for (unsigned long d = 2; d * d <= p; ++d)
        if (p % d == 0) return false;
    return true;
}

// Elements of F_{p^e} are encoded as integers in [0, p^e): the base-p digits are
// the coefficients of a polynomial residue modulo the defining polynomial.
struct ExtTables {
    std::vector<gf_t> exp_;  // exp_[i] = g^i for i in [0, q-1)
    std::vector<gf_t> log_;  // log_[x] for x != 0
};

inline std::vector<unsigned> to_digits(unsigned long v, unsigned long p, size_t len) {
    std::vector<unsigned> d(len);
    for (size_t i = 0; i < len; ++i) {
        d[i] = static_cast<unsigned>(v % p);
        v /= p;
    }
    return d;
}

inline unsigned long from_digits(const std::vector<unsigned>& d, unsigned long p) {
    unsigned long v = 0;
    for (size_t i = d.size(); i-- > 0;) v = v * p + d[i];
    return v;
}

// Product of encoded elements modulo the monic modulus (coefficients ascending).
inline unsigned long polymul_mod(unsigned long a, unsigned long b, unsigned long p,
                                 const std::vector<unsigned>& modulus) {
    size_t e = modulus.size() - 1;
    std::vector<unsigned> da = to_digits(a, p, e), db = to_digits(b, p, e);
    std::vector<unsigned long> prod(2 * e - 1, 0);
    for (size_t i = 0; i < e; ++i) {
        if (!da[i]) continue;
        for (size_t j = 0; j < e; ++j) prod[i + j] = (prod[i + j] + static_cast<unsigned long>(da[i]) * db[j]) % p;
    }
    for (size_t i = prod.size(); i-- > e;) {
        unsigned long c = prod[i];
        if (!c) continue;
        prod[i] = 0;
        // x^i = x^{i-e} * x^e = -x^{i-e} * (modulus - x^e)
        for (size_t j = 0; j < e; ++j) prod[i - e + j] = (prod[i - e + j] + c * (p - modulus[j] % p)) % p;
    }
    std::vector<unsigned> out(e);
    for (size_t i = 0; i < e; ++i) out[i] = static_cast<unsigned>(prod[i]);
    return from_digits(out, p);
}

// Remainder test: does the monic polynomial d divide f over F_p?
inline bool poly_divides(const std::vector<unsigned>& d, const std::vector<unsigned>& f, unsigned long p) {
    std::vector<unsigned long> rem(f.begin(), f.end());
    size_t dd = d.size() - 1;
    for (size_t i = rem.size(); i-- > dd;) {
        unsigned long lead = rem[i] % p;
        if (!lead) continue;
        for (size_t j = 0; j <= dd; ++j)
            rem[i - dd + j] = (rem[i - dd + j] + lead * (p - d[j] % p)) % p;
    }
    for (size_t i = 0; i < dd; ++i)
        if (rem[i] % p) return false;
    return true;
}

inline bool is_irreducible(const std::vector<unsigned>& modulus, unsigned long p) {
    size_t e = modulus.size() - 1;
    for (size_t deg = 1; deg * 2 <= e; ++deg) {
        unsigned long count = 1;
        for (size_t i = 0; i < deg; ++i) count *= p;
        for (unsigned long lo = 0; lo < count; ++lo) {
            std::vector<unsigned> d = to_digits(lo, p, deg);
            d.push_back(1);  // monic
            if (poly_divides(d, modulus, p)) return false;
        }
    }
    return true;
}

}  // namespace detail

/// A finite field F_q with q = p^e. Prime fields need no modulus; extension fields
/// use log/antilog tables over a configured irreducible monic modulus (coefficients
/// ascending, length e+1). Supported up to q <= 2^16.
class Field {
public:
    Field() : Field(2) {}

    explicit Field(unsigned long q) {
        unsigned long p = 0, e = 0;
        for (unsigned long cand = 2; cand * cand <= q; ++cand) {
            if (q % cand == 0) {
                p = cand;
                break;
            }
        }
        if (p == 0) p = q;  // q itself prime (or q < 2, rejected below)
        unsigned long v = q;
        while (v > 1 && v % p == 0) {
            v /= p;
            ++e;
        }
        if (q < 2 || v != 1) throw std::invalid_argument("Field: q must be a prime power >= 2");
        init(p, e, {});
    }

    Field(unsigned long p, unsigned long e, std::vector<unsigned> modulus) { init(p, e, std::move(modulus)); }

    unsigned long p() const { return p_; }
    unsigned long e() const { return e_; }
    unsigned long q() const { return q_; }
    const std::vector<unsigned>& modulus() const { return modulus_; }

    gf_t add(gf_t a, gf_t b) const {
        if (e_ == 1) return static_cast<gf_t>((static_cast<unsigned long>(a) + b) % p_);
        if (p_ == 2) return a ^ b;
        unsigned long x = a, y = b, out = 0, mul = 1;
        for (unsigned long i = 0; i < e_; ++i) {
            out += ((x + y) % p_) * mul;
            x /= p_;
            y /= p_;
            mul *= p_;
        }
        return static_cast<gf_t>(out);
    }

    gf_t neg(gf_t a) const {
        if (e_ == 1) return static_cast<gf_t>((p_ - a) % p_);
        if (p_ == 2) return a;
        unsigned long x = a, out = 0, mul = 1;
        for (unsigned long i = 0; i < e_; ++i) {
            out += ((p_ - x % p_) % p_) * mul;
            x /= p_;
            mul *= p_;
        }
        return static_cast<gf_t>(out);
    }

    gf_t sub(gf_t a, gf_t b) const { return add(a, neg(b)); }

    gf_t mul(gf_t a, gf_t b) const {
        if (a == 0 || b == 0) return 0;
        if (e_ == 1) return static_cast<gf_t>((static_cast<unsigned long>(a) * b) % p_);
        const auto& t = *tables_;
        unsigned long s = static_cast<unsigned long>(t.log_[a]) + t.log_[b];
        if (s >= q_ - 1) s -= q_ - 1;
        return t.exp_[s];
    }

    gf_t inv(gf_t a) const {
        if (a == 0) throw std::domain_error("Field::inv(0)");
        if (e_ == 1) {
            long t = 0, nt = 1, r = static_cast<long>(p_), nr = a;
            while (nr != 0) {
                long quo = r / nr;
                long tmp = t - quo * nt;
                t = nt;
                nt = tmp;
                tmp = r - quo * nr;
                r = nr;
                nr = tmp;
            }
            if (t < 0) t += static_cast<long>(p_);
            return static_cast<gf_t>(t);
        }
        const auto& t = *tables_;
        return t.exp_[(q_ - 1 - t.log_[a]) % (q_ - 1)];
    }

    gf_t div(gf_t a, gf_t b) const { return mul(a, inv(b)); }

    bool operator==(const Field& o) const { return p_ == o.p_ && e_ == o.e_ && modulus_ == o.modulus_; }
    bool operator!=(const Field& o) const { return !(*this == o); }

private:
    void init(unsigned long p, unsigned long e, std::vector<unsigned> modulus) {
        if (!detail::is_prime(p)) throw std::invalid_argument("Field: characteristic must be prime");
        if (e < 1) throw std::invalid_argument("Field: extension degree must be >= 1");
        p_ = p;
        e_ = e;
        q_ = 1;
        for (unsigned long i = 0; i < e; ++i) {
            q_ *= p;
            if (q_ > (1ul << 16)) throw std::invalid_argument("Field: q > 2^16 unsupported");
        }
        if (e_ == 1) {
            if (!modulus.empty()) throw std::invalid_argument("Field: modulus given for a prime field");
            return;
        }
        if (modulus.empty()) {
            // first irreducible monic of degree e in lex order on low coefficients
            unsigned long count = 1;
            for (unsigned long i = 0; i < e; ++i) count *= p;
            for (unsigned long lo = 1; lo < count; ++lo) {
                std::vector<unsigned> m = detail::to_digits(lo, p, e);
                m.push_back(1);
                if (detail::is_irreducible(m, p)) {
                    modulus = std::move(m);
                    break;
                }
            }
        } else {
            if (modulus.size() != e + 1 || modulus.back() != 1)
                throw std::invalid_argument("Field: modulus must be monic of degree e");
            for (unsigned c : modulus)
                if (c >= p) throw std::invalid_argument("Field: modulus coefficients must be < p");
            if (!detail::is_irreducible(modulus, p)) throw std::invalid_argument("Field: modulus is reducible");
        }
        modulus_ = std::move(modulus);
        build_tables();
    }

    void build_tables() {
        auto t = std::make_shared<detail::ExtTables>();
        t->exp_.assign(q_ - 1, 0);
        t->log_.assign(q_, 0);
        for (gf_t g = 2; g < q_; ++g) {
            unsigned long x = 1;
            bool gen = true;
            for (unsigned long i = 0; i < q_ - 1; ++i) {
                t->exp_[i] = static_cast<gf_t>(x);
                x = detail::polymul_mod(x, g, p_, modulus_);
                if (x == 1 && i + 1 < q_ - 1) {
                    gen = false;  // order of g divides i+1 < q-1
                    break;
                }
            }
            if (gen && x == 1) {
                for (unsigned long i = 0; i < q_ - 1; ++i) t->log_[t->exp_[i]] = static_cast<gf_t>(i);
                tables_ = std::move(t);
                return;
            }
        }
        throw std::logic_error("Field: no multiplicative generator found");
    }

    unsigned long p_ = 2, e_ = 1, q_ = 2;
    std::vector<unsigned> modulus_;
    std::shared_ptr<const detail::ExtTables> tables_;
};

}  // namespace tenzeta
