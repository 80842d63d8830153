#pragma once

// Bivariate polynomials over Q, stored recursively: coefficients in Q[x] per
// power of y. Supplies pseudo-division and subresultant-PRS resultants for
// elimination work (minimal polynomials, plane-curve singularities).

#include <pvi/polynomial.hpp>

#include <stdexcept>
#include <string>
#include <utility>
#include <vector>

namespace pvi {

namespace detail {

// Subresultant PRS resultant over a UFD R (Cohen, Algorithm 3.3.7).
// Polynomials are dense vectors of R, lowest degree first.
template <class R, class Ops>
R subresultant_resultant(std::vector<R> A, std::vector<R> B, const Ops &ops) {
    auto trim = [&](std::vector<R> &v) {
        while (!v.empty() && ops.is_zero(v.back())) v.pop_back();
    };
    auto deg = [](const std::vector<R> &v) { return static_cast<int>(v.size()) - 1; };

    trim(A);
    trim(B);
    if (A.empty() || B.empty()) return ops.zero();

    int sign = 1;
    if (deg(A) < deg(B)) {
        if ((deg(A) % 2) && (deg(B) % 2)) sign = -sign;
        std::swap(A, B);
    }

    auto prem = [&](const std::vector<R> &a, const std::vector<R> &b) {
        std::vector<R> r = a;
        const R &d = b.back();
        int e = deg(a) - deg(b) + 1;
        trim(r);
        while (!r.empty() && deg(r) >= deg(b)) {
            R lr = r.back();
            std::vector<R> nr(r.size() - 1, ops.zero());
            int off = deg(r) - deg(b);
            for (int i = 0; i < static_cast<int>(r.size()) - 1; ++i)
                nr[static_cast<std::size_t>(i)] = ops.mul(r[static_cast<std::size_t>(i)], d);
            for (int i = 0; i < static_cast<int>(b.size()) - 1; ++i) {
                auto k = static_cast<std::size_t>(i + off);
                nr[k] = ops.sub(nr[k], ops.mul(lr, b[static_cast<std::size_t>(i)]));
            }
            r = std::move(nr);
            trim(r);
            --e;
        }
        if (e > 0) {
            R dp = ops.pow(d, e);
            for (auto &c : r) c = ops.mul(c, dp);
        }
        return r;
    };

    R g = ops.one(), h = ops.one();
    while (deg(B) > 0) {
        int delta = deg(A) - deg(B);
        if ((deg(A) % 2) && (deg(B) % 2)) sign = -sign;
        std::vector<R> Rm = prem(A, B);
        A = std::move(B);
        R divisor = ops.mul(g, ops.pow(h, delta));
        for (auto &c : Rm) c = ops.exact_div(c, divisor);
        B = std::move(Rm);
        trim(B);
        if (B.empty()) return ops.zero();
        g = A.back();
        if (delta > 0) h = ops.exact_div(ops.pow(g, delta), ops.pow(h, delta - 1));
    }
    // B is a nonzero constant now.
    int dA = deg(A);
    R res = ops.exact_div(ops.pow(B[0], dA), ops.pow(h, dA - 1 > 0 ? dA - 1 : 0));
    if (dA == 0) res = ops.one();
    if (sign < 0) res = ops.neg(res);
    return res;
}

struct UniPolyOps {
    std::string var;
    UniPoly zero() const { return UniPoly(var); }
    UniPoly one() const { return UniPoly::constant(var, Rational(1)); }
    bool is_zero(const UniPoly &a) const { return a.is_zero(); }
    UniPoly mul(const UniPoly &a, const UniPoly &b) const { return a * b; }
    UniPoly sub(const UniPoly &a, const UniPoly &b) const { return a - b; }
    UniPoly neg(const UniPoly &a) const { return -a; }
    UniPoly exact_div(const UniPoly &a, const UniPoly &b) const { return pvi::exact_div(a, b); }
    UniPoly pow(const UniPoly &a, int e) const { return a.pow(e); }
};

}  // namespace detail

class BiPoly {
  public:
    BiPoly() : xvar_("x"), yvar_("y") {}
    BiPoly(std::string xvar, std::string yvar)
        : xvar_(std::move(xvar)), yvar_(std::move(yvar)) {}
    BiPoly(std::string xvar, std::string yvar, std::vector<UniPoly> coeffs)
        : xvar_(std::move(xvar)), yvar_(std::move(yvar)), c_(std::move(coeffs)) {
        for (auto &p : c_) p = rename(p, xvar_);
        trim();
    }

    static BiPoly from_x(const UniPoly &p, const std::string &yvar) {
        return BiPoly(p.var(), yvar, {p});
    }
    static BiPoly constant(std::string xvar, std::string yvar, const Rational &v) {
        UniPoly c = UniPoly::constant(xvar, v);
        return BiPoly(std::move(xvar), std::move(yvar), {std::move(c)});
    }
    static BiPoly x(const std::string &xvar, const std::string &yvar) {
        return BiPoly(xvar, yvar, {UniPoly::variable(xvar)});
    }
    static BiPoly y(const std::string &xvar, const std::string &yvar) {
        return BiPoly(xvar, yvar,
                      {UniPoly(xvar), UniPoly::constant(xvar, Rational(1))});
    }

    const std::string &xvar() const { return xvar_; }
    const std::string &yvar() const { return yvar_; }

    bool is_zero() const { return c_.empty(); }
    int degree_y() const { return static_cast<int>(c_.size()) - 1; }
    int degree_x() const {
        int d = -1;
        for (const auto &p : c_) d = std::max(d, p.degree());
        return d;
    }
    int total_degree() const {
        int d = -1;
        for (int j = 0; j < static_cast<int>(c_.size()); ++j)
            if (!c_[static_cast<std::size_t>(j)].is_zero())
                d = std::max(d, c_[static_cast<std::size_t>(j)].degree() + j);
        return d;
    }

    UniPoly coeff_y(int j) const {
        if (j < 0 || j >= static_cast<int>(c_.size())) return UniPoly(xvar_);
        return c_[static_cast<std::size_t>(j)];
    }
    const std::vector<UniPoly> &coeffs_y() const { return c_; }
    const UniPoly &lc_y() const {
        if (c_.empty()) throw std::domain_error("BiPoly: lc of zero");
        return c_.back();
    }

    Rational coeff_xy(int i, int j) const { return coeff_y(j).coeff(i); }

    friend bool operator==(const BiPoly &a, const BiPoly &b) { return a.c_ == b.c_; }
    friend bool operator!=(const BiPoly &a, const BiPoly &b) { return !(a == b); }

    BiPoly operator-() const {
        BiPoly r(*this);
        for (auto &p : r.c_) p = -p;
        return r;
    }
    friend BiPoly operator+(const BiPoly &a, const BiPoly &b) {
        BiPoly r(a.xvar_, a.yvar_);
        r.c_.resize(std::max(a.c_.size(), b.c_.size()), UniPoly(a.xvar_));
        for (std::size_t i = 0; i < r.c_.size(); ++i) {
            if (i < a.c_.size()) r.c_[i] += a.c_[i];
            if (i < b.c_.size()) r.c_[i] += b.c_[i];
        }
        r.trim();
        return r;
    }
    friend BiPoly operator-(const BiPoly &a, const BiPoly &b) { return a + (-b); }
    friend BiPoly operator*(const BiPoly &a, const BiPoly &b) {
        if (a.is_zero() || b.is_zero()) return BiPoly(a.xvar_, a.yvar_);
        BiPoly r(a.xvar_, a.yvar_);
        r.c_.assign(a.c_.size() + b.c_.size() - 1, UniPoly(a.xvar_));
        for (std::size_t i = 0; i < a.c_.size(); ++i) {
            if (a.c_[i].is_zero()) continue;
            for (std::size_t j = 0; j < b.c_.size(); ++j)
                if (!b.c_[j].is_zero()) r.c_[i + j] += a.c_[i] * b.c_[j];
        }
        r.trim();
        return r;
    }
    friend BiPoly operator*(const BiPoly &a, const Rational &s) {
        BiPoly r(a);
        for (auto &p : r.c_) p = p * s;
        r.trim();
        return r;
    }
    friend BiPoly operator*(const Rational &s, const BiPoly &a) { return a * s; }

    BiPoly &operator+=(const BiPoly &o) { return *this = *this + o; }
    BiPoly &operator-=(const BiPoly &o) { return *this = *this - o; }
    BiPoly &operator*=(const BiPoly &o) { return *this = *this * o; }

    BiPoly pow(int e) const {
        if (e < 0) throw std::invalid_argument("BiPoly: negative power");
        BiPoly r = constant(xvar_, yvar_, Rational(1));
        BiPoly base = *this;
        while (e) {
            if (e & 1) r *= base;
            if (e >>= 1) base *= base;
        }
        return r;
    }

    BiPoly swapped_vars() const {
        BiPoly r(yvar_, xvar_);
        r.c_.assign(static_cast<std::size_t>(std::max(degree_x(), -1)) + 1, UniPoly(yvar_));
        for (int j = 0; j <= degree_y(); ++j)
            for (int i = 0; i <= degree_x(); ++i) {
                Rational v = coeff_xy(i, j);
                if (v.is_zero()) continue;
                auto &target = r.c_[static_cast<std::size_t>(i)];
                target += UniPoly::monomial(yvar_, v, j);
            }
        r.trim();
        return r;
    }

    BiPoly derivative_y() const {
        if (c_.size() <= 1) return BiPoly(xvar_, yvar_);
        BiPoly r(xvar_, yvar_);
        r.c_.resize(c_.size() - 1);
        for (std::size_t j = 1; j < c_.size(); ++j)
            r.c_[j - 1] = c_[j] * Rational(static_cast<long>(j));
        r.trim();
        return r;
    }
    BiPoly derivative_x() const {
        BiPoly r(xvar_, yvar_);
        r.c_.resize(c_.size());
        for (std::size_t j = 0; j < c_.size(); ++j) r.c_[j] = c_[j].derivative();
        r.trim();
        return r;
    }

    // Substitute y := value in Q (or in Q[x]).
    UniPoly eval_y(const Rational &v) const {
        UniPoly acc(xvar_);
        for (auto it = c_.rbegin(); it != c_.rend(); ++it) acc = acc * UniPoly::constant(xvar_, v) + *it;
        return acc;
    }
    UniPoly eval_y_poly(const UniPoly &v) const {
        UniPoly acc(xvar_);
        for (auto it = c_.rbegin(); it != c_.rend(); ++it) acc = acc * v + *it;
        return acc;
    }
    UniPoly eval_x(const Rational &v) const {
        std::vector<Rational> cs(c_.size());
        for (std::size_t j = 0; j < c_.size(); ++j) cs[j] = c_[j].eval(v);
        return UniPoly(yvar_, std::move(cs));
    }

    // Horner in both variables over any ring.
    template <class T, class Conv>
    T eval_with(const T &xv, const T &yv, Conv conv) const {
        T acc = conv(Rational(0));
        for (auto it = c_.rbegin(); it != c_.rend(); ++it)
            acc = acc * yv + it->eval_with(xv, conv);
        return acc;
    }

    // gcd of the y-coefficients.
    UniPoly content_y() const {
        UniPoly g(xvar_);
        for (const auto &p : c_) g = poly_gcd(g, p);
        return g;
    }

    Rational rational_content() const {
        mpz_class num_gcd(0), den_lcm(1);
        bool any = false;
        int sign = 1;
        for (const auto &p : c_)
            for (const auto &q : p.coeffs()) {
                if (q.is_zero()) continue;
                any = true;
                num_gcd = gcd(num_gcd, q.num());
                den_lcm = lcm(den_lcm, q.den());
            }
        if (!any) return Rational(0);
        if (!c_.empty() && !c_.back().is_zero()) sign = c_.back().lc().sign();
        Rational r(num_gcd, den_lcm);
        return sign < 0 ? -r : r;
    }

    BiPoly primitive_part() const {
        Rational c = rational_content();
        if (c.is_zero() || c.is_one()) return *this;
        return *this * c.inverse();
    }

    std::string str() const {
        if (is_zero()) return "0";
        std::string out;
        for (int j = degree_y(); j >= 0; --j) {
            const UniPoly &p = coeff_y(j);
            if (p.is_zero()) continue;
            if (!out.empty()) out += " + ";
            out += "(" + p.str() + ")";
            if (j >= 1) {
                out += "*" + yvar_;
                if (j > 1) out += "^" + std::to_string(j);
            }
        }
        return out;
    }

  private:
    void trim() {
        while (!c_.empty() && c_.back().is_zero()) c_.pop_back();
    }
    static UniPoly rename(const UniPoly &p, const std::string &v) {
        if (p.var() == v) return p;
        return UniPoly(v, p.coeffs());
    }

    std::string xvar_, yvar_;
    std::vector<UniPoly> c_;
};

// Pseudo-remainder of a by b with respect to y: lc_y(b)^k * a mod b.
inline BiPoly pseudo_rem_y(const BiPoly &a, const BiPoly &b) {
    if (b.is_zero()) throw std::domain_error("pseudo_rem_y: zero divisor");
    BiPoly r = a;
    const UniPoly d = b.lc_y();
    while (!r.is_zero() && r.degree_y() >= b.degree_y()) {
        UniPoly lr = r.lc_y();
        int off = r.degree_y() - b.degree_y();
        // r = d*r - lr*y^off*b, which cancels the leading y-term
        std::vector<UniPoly> shifted(static_cast<std::size_t>(off), UniPoly(b.xvar()));
        for (int j = 0; j <= b.degree_y(); ++j) shifted.push_back(b.coeff_y(j) * lr);
        BiPoly sub(b.xvar(), b.yvar(), std::move(shifted));
        std::vector<UniPoly> sc;
        for (int j = 0; j <= r.degree_y(); ++j) sc.push_back(r.coeff_y(j) * d);
        r = BiPoly(b.xvar(), b.yvar(), std::move(sc)) - sub;
    }
    return r;
}

// True iff b divides a in Q[x][y] up to a power of lc_y(b)'s content; with a
// constant leading y-coefficient this is exact divisibility.
inline bool pseudo_divisible_y(const BiPoly &a, const BiPoly &b) {
    return pseudo_rem_y(a, b).is_zero();
}

// Resultant eliminating `sym`, which must be one of the two variables.
// The result is univariate in the surviving variable.
inline UniPoly resultant(const BiPoly &a0, const BiPoly &b0, const std::string &sym) {
    BiPoly a = a0, b = b0;
    if (sym == a0.xvar()) {
        a = a0.swapped_vars();
        b = b0.swapped_vars();
    } else if (sym != a0.yvar()) {
        throw std::invalid_argument("resultant: unknown symbol '" + sym + "'");
    }
    if (a.degree_y() <= 0 && b.degree_y() <= 0)
        throw std::invalid_argument("resultant: both inputs constant in '" + sym + "'");
    if (a.is_zero() || b.is_zero()) return UniPoly(a.xvar());
    detail::UniPolyOps ops{a.xvar()};
    UniPoly r = detail::subresultant_resultant<UniPoly>(a.coeffs_y(), b.coeffs_y(), ops);
    return r;
}

inline UniPoly discriminant_y(const BiPoly &f) {
    return resultant(f, f.derivative_y(), f.yvar());
}

}  // namespace pvi
