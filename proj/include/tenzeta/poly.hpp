#pragma once

#include <map>
#include <sstream>
#include <stdexcept>
#include <vector>

#include "tenzeta/exact.hpp"

namespace tenzeta {

/// Homogeneous bivariate polynomial in (X, Y) of fixed degree.
/// coefficient(e) multiplies X^(degree-e) Y^e.
class HomPoly2 {
public:
    HomPoly2() : degree_(0), c_(1) {}
    explicit HomPoly2(long degree) : degree_(degree), c_(static_cast<size_t>(degree) + 1) {
        if (degree < 0) throw std::invalid_argument("HomPoly2: negative degree");
    }

    long degree() const { return degree_; }
    const Rat& coefficient(long y_exp) const {
        if (y_exp < 0 || y_exp > degree_) throw std::out_of_range("HomPoly2::coefficient");
        return c_[static_cast<size_t>(y_exp)];
    }
    void set(long y_exp, Rat v) {
        if (y_exp < 0 || y_exp > degree_) throw std::out_of_range("HomPoly2::set");
        c_[static_cast<size_t>(y_exp)] = std::move(v);
    }
    void add(long y_exp, const Rat& v) { set(y_exp, coefficient(y_exp) + v); }

    bool is_zero() const {
        for (const auto& v : c_)
            if (v != 0) return false;
        return true;
    }

    HomPoly2 operator+(const HomPoly2& o) const {
        require_same_degree(o);
        HomPoly2 r(degree_);
        for (long e = 0; e <= degree_; ++e) r.set(e, coefficient(e) + o.coefficient(e));
        return r;
    }
    HomPoly2 operator-(const HomPoly2& o) const {
        require_same_degree(o);
        HomPoly2 r(degree_);
        for (long e = 0; e <= degree_; ++e) r.set(e, coefficient(e) - o.coefficient(e));
        return r;
    }
    HomPoly2 operator*(const HomPoly2& o) const {
        HomPoly2 r(degree_ + o.degree_);
        for (long e = 0; e <= degree_; ++e) {
            if (c_[static_cast<size_t>(e)] == 0) continue;
            for (long f = 0; f <= o.degree_; ++f) r.add(e + f, c_[static_cast<size_t>(e)] * o.coefficient(f));
        }
        return r;
    }
    HomPoly2 scaled(const Rat& s) const {
        HomPoly2 r(degree_);
        for (long e = 0; e <= degree_; ++e) r.set(e, coefficient(e) * s);
        return r;
    }

    /// Substitute X -> X^m, Y -> Y^m; the result is homogeneous of degree m*degree.
    HomPoly2 stretch(long m) const {
        if (m <= 0) throw std::invalid_argument("HomPoly2::stretch");
        HomPoly2 r(degree_ * m);
        for (long e = 0; e <= degree_; ++e) r.set(e * m, coefficient(e));
        return r;
    }

    bool operator==(const HomPoly2& o) const { return degree_ == o.degree_ && c_ == o.c_; }
    bool operator!=(const HomPoly2& o) const { return !(*this == o); }

    std::string str(const std::string& x = "X", const std::string& y = "Y") const {
        std::ostringstream os;
        bool first = true;
        for (long e = 0; e <= degree_; ++e) {
            const Rat& v = c_[static_cast<size_t>(e)];
            if (v == 0) continue;
            if (!first) os << " + ";
            os << to_string(v);
            if (degree_ - e > 0) os << "*" << x << "^" << (degree_ - e);
            if (e > 0) os << "*" << y << "^" << e;
            first = false;
        }
        if (first) os << "0";
        return os.str();
    }

    static HomPoly2 monomial(long degree, long y_exp, Rat coeff = Rat(1)) {
        HomPoly2 r(degree);
        r.set(y_exp, std::move(coeff));
        return r;
    }

private:
    void require_same_degree(const HomPoly2& o) const {
        if (degree_ != o.degree_) throw std::invalid_argument("HomPoly2: degree mismatch");
    }
    long degree_;
    std::vector<Rat> c_;
};

/// Truncated univariate power series with exact rational coefficients.
/// Zero coefficients are never stored; exponents beyond the truncation are discarded.
class SparseSeries {
public:
    SparseSeries() : trunc_(0) {}
    explicit SparseSeries(long trunc) : trunc_(trunc) {
        if (trunc < 0) throw std::invalid_argument("SparseSeries: negative truncation");
    }

    long truncation() const { return trunc_; }
    const std::map<long, Rat>& terms() const { return t_; }

    Rat coefficient(long e) const {
        auto it = t_.find(e);
        return it == t_.end() ? Rat(0) : it->second;
    }
    void set(long e, const Rat& v) {
        if (e < 0) throw std::out_of_range("SparseSeries::set: negative exponent");
        if (e > trunc_) return;
        if (v == 0)
            t_.erase(e);
        else
            t_[e] = v;
    }
    void add(long e, const Rat& v) {
        if (e < 0 || e > trunc_ || v == 0) return;
        Rat s = coefficient(e) + v;
        set(e, s);
    }

    SparseSeries truncated(long bound) const {
        SparseSeries r(bound);
        for (const auto& [e, v] : t_)
            if (e <= bound) r.t_[e] = v;
        return r;
    }

    SparseSeries operator+(const SparseSeries& o) const {
        SparseSeries r(std::min(trunc_, o.trunc_));
        for (const auto& [e, v] : t_) r.add(e, v);
        for (const auto& [e, v] : o.t_) r.add(e, v);
        return r;
    }
    SparseSeries operator-(const SparseSeries& o) const {
        SparseSeries r(std::min(trunc_, o.trunc_));
        for (const auto& [e, v] : t_) r.add(e, v);
        for (const auto& [e, v] : o.t_) r.add(e, -v);
        return r;
    }
    SparseSeries scaled(const Rat& s) const {
        SparseSeries r(trunc_);
        if (s == 0) return r;
        for (const auto& [e, v] : t_) r.t_[e] = v * s;
        return r;
    }

    bool operator==(const SparseSeries& o) const { return trunc_ == o.trunc_ && t_ == o.t_; }
    bool operator!=(const SparseSeries& o) const { return !(*this == o); }

    std::string str(const std::string& var = "T") const {
        std::ostringstream os;
        bool first = true;
        for (const auto& [e, v] : t_) {
            if (!first) os << " + ";
            os << to_string(v);
            if (e > 0) os << "*" << var << "^" << e;
            first = false;
        }
        if (first) os << "0";
        return os.str();
    }

private:
    long trunc_;
    std::map<long, Rat> t_;
};

/// Exact convolution of truncated series, discarding exponents beyond `bound`.
inline SparseSeries series_mul_trunc(const SparseSeries& a, const SparseSeries& b, long bound) {
    SparseSeries r(bound);
    for (const auto& [ea, va] : a.terms()) {
        if (ea > bound) break;
        for (const auto& [eb, vb] : b.terms()) {
            if (ea + eb > bound) break;
            r.add(ea + eb, va * vb);
        }
    }
    return r;
}

/// Sparse multivariate polynomial with exact rational coefficients.
/// Terms map an exponent vector of length `arity` to a nonzero coefficient.
class MultiPoly {
public:
    using Exp = std::vector<int>;

    MultiPoly() : arity_(1) {}
    explicit MultiPoly(int arity) : arity_(arity) {
        if (arity < 1) throw std::invalid_argument("MultiPoly: arity must be positive");
    }

    int arity() const { return arity_; }
    const std::map<Exp, Rat>& terms() const { return t_; }
    bool is_zero() const { return t_.empty(); }

    Rat coefficient(const Exp& e) const {
        check(e);
        auto it = t_.find(e);
        return it == t_.end() ? Rat(0) : it->second;
    }
    void set(const Exp& e, const Rat& v) {
        check(e);
        if (v == 0)
            t_.erase(e);
        else
            t_[e] = v;
    }
    void add(const Exp& e, const Rat& v) {
        if (v == 0) return;
        Rat s = coefficient(e) + v;
        set(e, s);
    }

    MultiPoly operator+(const MultiPoly& o) const {
        require_same_arity(o);
        MultiPoly r = *this;
        for (const auto& [e, v] : o.t_) r.add(e, v);
        return r;
    }
    MultiPoly operator-(const MultiPoly& o) const {
        require_same_arity(o);
        MultiPoly r = *this;
        for (const auto& [e, v] : o.t_) r.add(e, -v);
        return r;
    }
    MultiPoly scaled(const Rat& s) const {
        MultiPoly r(arity_);
        if (s == 0) return r;
        for (const auto& [e, v] : t_) r.t_[e] = v * s;
        return r;
    }

    bool operator==(const MultiPoly& o) const { return arity_ == o.arity_ && t_ == o.t_; }
    bool operator!=(const MultiPoly& o) const { return !(*this == o); }

    /// Maximum exponent of variable `i` over all terms (0 for the zero polynomial).
    int degree_in(int i) const {
        int d = 0;
        for (const auto& [e, v] : t_) d = std::max(d, e[static_cast<size_t>(i)]);
        return d;
    }

    std::string str(const std::vector<std::string>& names) const {
        std::ostringstream os;
        bool first = true;
        for (const auto& [e, v] : t_) {
            if (!first) os << " + ";
            os << to_string(v);
            for (int i = 0; i < arity_; ++i) {
                int x = e[static_cast<size_t>(i)];
                if (x == 0) continue;
                os << "*" << names[static_cast<size_t>(i)];
                if (x > 1) os << "^" << x;
            }
            first = false;
        }
        if (first) os << "0";
        return os.str();
    }

    static MultiPoly monomial(int arity, Exp e, Rat coeff = Rat(1)) {
        MultiPoly r(arity);
        r.set(std::move(e), std::move(coeff));
        return r;
    }

private:
    void check(const Exp& e) const {
        if (static_cast<int>(e.size()) != arity_) throw std::invalid_argument("MultiPoly: exponent arity mismatch");
    }
    void require_same_arity(const MultiPoly& o) const {
        if (arity_ != o.arity_) throw std::invalid_argument("MultiPoly: arity mismatch");
    }
    int arity_;
    std::map<Exp, Rat> t_;
};

/// Multivariate product with per-variable exponent caps (empty caps = uncapped).
inline MultiPoly multi_mul_capped(const MultiPoly& a, const MultiPoly& b, const std::vector<int>& caps) {
    if (!caps.empty() && static_cast<int>(caps.size()) != a.arity())
        throw std::invalid_argument("multi_mul_capped: caps arity mismatch");
    MultiPoly r(a.arity());
    for (const auto& [ea, va] : a.terms()) {
        for (const auto& [eb, vb] : b.terms()) {
            MultiPoly::Exp e(ea.size());
            bool keep = true;
            for (size_t i = 0; i < e.size(); ++i) {
                e[i] = ea[i] + eb[i];
                if (!caps.empty() && e[i] > caps[i]) {
                    keep = false;
                    break;
                }
            }
            if (keep) r.add(e, va * vb);
        }
    }
    return r;
}

}  // namespace tenzeta
