#pragma once

// Rational functions in one variable over Q, kept in canonical form:
// numerator and denominator coprime, denominator monic. Equality is then
// structural comparison.

#include <pvi/polynomial.hpp>

#include <stdexcept>
#include <string>
#include <utility>

namespace pvi {

class RatFunc {
  public:
    RatFunc() : num_("s"), den_(UniPoly::constant("s", Rational(1))) {}
    explicit RatFunc(UniPoly num)
        : num_(std::move(num)), den_(UniPoly::constant(num_.var(), Rational(1))) {}
    RatFunc(UniPoly num, UniPoly den) : num_(std::move(num)), den_(std::move(den)) {
        normalize();
    }
    static RatFunc constant(std::string var, Rational v) {
        return RatFunc(UniPoly::constant(std::move(var), std::move(v)));
    }
    static RatFunc variable(std::string var) {
        return RatFunc(UniPoly::variable(std::move(var)));
    }

    const UniPoly &num() const { return num_; }
    const UniPoly &den() const { return den_; }
    const std::string &var() const { return num_.var(); }

    bool is_zero() const { return num_.is_zero(); }
    bool is_one() const { return num_.is_one() && den_.is_one(); }
    bool is_polynomial() const { return den_.is_one(); }
    bool is_constant() const { return num_.is_constant() && den_.is_one(); }

    Rational constant_value() const {
        if (!is_constant()) throw std::domain_error("RatFunc: not a constant");
        return num_.constant_term();
    }

    friend bool operator==(const RatFunc &a, const RatFunc &b) {
        return a.num_ == b.num_ && a.den_ == b.den_;
    }
    friend bool operator!=(const RatFunc &a, const RatFunc &b) { return !(a == b); }

    RatFunc operator-() const {
        RatFunc r(*this);
        r.num_ = -r.num_;
        return r;
    }

    friend RatFunc operator+(const RatFunc &a, const RatFunc &b) {
        if (a.den_ == b.den_) return RatFunc(a.num_ + b.num_, a.den_);
        return RatFunc(a.num_ * b.den_ + b.num_ * a.den_, a.den_ * b.den_);
    }
    friend RatFunc operator-(const RatFunc &a, const RatFunc &b) { return a + (-b); }
    friend RatFunc operator*(const RatFunc &a, const RatFunc &b) {
        return RatFunc(a.num_ * b.num_, a.den_ * b.den_);
    }
    friend RatFunc operator/(const RatFunc &a, const RatFunc &b) {
        if (b.is_zero()) throw std::domain_error("RatFunc: division by zero");
        return RatFunc(a.num_ * b.den_, a.den_ * b.num_);
    }
    friend RatFunc operator*(const RatFunc &a, const Rational &s) {
        return RatFunc(a.num_ * s, a.den_);
    }
    friend RatFunc operator*(const Rational &s, const RatFunc &a) { return a * s; }

    RatFunc &operator+=(const RatFunc &o) { return *this = *this + o; }
    RatFunc &operator-=(const RatFunc &o) { return *this = *this - o; }
    RatFunc &operator*=(const RatFunc &o) { return *this = *this * o; }
    RatFunc &operator/=(const RatFunc &o) { return *this = *this / o; }

    RatFunc inverse() const {
        if (is_zero()) throw std::domain_error("RatFunc: inverse of zero");
        return RatFunc(den_, num_);
    }

    RatFunc pow(int e) const {
        if (e < 0) return inverse().pow(-e);
        RatFunc r = constant(var(), Rational(1));
        RatFunc base = *this;
        while (e) {
            if (e & 1) r *= base;
            if (e >>= 1) base *= base;
        }
        return r;
    }

    RatFunc derivative() const {
        if (is_polynomial()) return RatFunc(num_.derivative(), den_);
        return RatFunc(num_.derivative() * den_ - num_ * den_.derivative(), den_ * den_);
    }

    Rational eval(const Rational &x) const {
        Rational d = den_.eval(x);
        if (d.is_zero()) throw std::domain_error("RatFunc: pole at evaluation point");
        return num_.eval(x) / d;
    }

    template <class T, class Conv>
    T eval_with(const T &x, Conv conv) const {
        return num_.eval_with(x, conv) / den_.eval_with(x, conv);
    }

    // Substitution var -> g(newvar). Result lives in g's variable.
    RatFunc compose(const RatFunc &g) const {
        auto conv = [&](const Rational &c) { return RatFunc::constant(g.var(), c); };
        RatFunc n = num_.eval_with(g, conv);
        RatFunc d = den_.eval_with(g, conv);
        return n / d;
    }

    // Substitution var -> 1/newvar, exact: p(1/x)/q(1/x) as a RatFunc in x.
    RatFunc substitute_inverse(const std::string &newvar) const {
        if (is_zero()) return RatFunc(UniPoly(newvar));
        UniPoly rn = num_.reversed();
        UniPoly rd = den_.reversed();
        int dn = num_.degree(), dd = den_.degree();
        UniPoly n(newvar, rn.coeffs());
        UniPoly d(newvar, rd.coeffs());
        // num(1/x) = rev(num)(x)/x^dn, so the quotient picks up x^(dd-dn).
        if (dd >= dn)
            n = n.shifted(dd - dn);
        else
            d = d.shifted(dn - dd);
        return RatFunc(n, d);
    }

    std::string str() const {
        if (is_polynomial()) return num_.str();
        return "(" + num_.str() + ")/(" + den_.str() + ")";
    }

  private:
    void normalize() {
        if (den_.is_zero()) throw std::domain_error("RatFunc: zero denominator");
        if (num_.is_zero()) {
            den_ = UniPoly::constant(num_.var(), Rational(1));
            return;
        }
        if (!den_.is_constant()) {
            UniPoly g = poly_gcd(num_, den_);
            if (g.degree() > 0) {
                num_ = exact_div(num_, g);
                den_ = exact_div(den_, g);
            }
        }
        Rational s = den_.lc().inverse();
        num_ = num_ * s;
        den_ = den_ * s;
    }

    UniPoly num_, den_;
};

// f(1/x) for a polynomial, as a rational function in newvar.
inline RatFunc poly_substitute_inverse(const UniPoly &p, const std::string &newvar) {
    return RatFunc(p).substitute_inverse(newvar);
}

// Square-class reduction of a rational function: q = core * cofactor^2 with
// core a canonical squarefree polynomial (q = p/d = p*d / d^2).
inline std::pair<UniPoly, RatFunc> squarefree_part(const RatFunc &q) {
    if (q.is_zero()) throw std::domain_error("squarefree_part: zero input");
    auto [core, cof] = squarefree_part(q.num() * q.den());
    return {core, RatFunc(cof, q.den())};
}

}  // namespace pvi
