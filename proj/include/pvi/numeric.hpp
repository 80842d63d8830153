#pragma once

// Arbitrary-precision floating point and complex arithmetic on MPFR.
// Precision is carried per value and passed explicitly by the callers;
// binary operations work at the larger operand precision.

#include <pvi/ratfunc.hpp>
#include <pvi/rational.hpp>

#include <mpfr.h>

#include <stdexcept>
#include <string>
#include <utility>

namespace pvi {

struct NumericError : std::runtime_error {
    explicit NumericError(const std::string &m) : std::runtime_error(m) {}
};

class BigFloat {
  public:
    explicit BigFloat(long prec = 64) { mpfr_init2(v_, prec); mpfr_set_zero(v_, 1); }
    BigFloat(const Rational &q, long prec) {
        mpfr_init2(v_, prec);
        mpfr_set_q(v_, q.mpq().get_mpq_t(), MPFR_RNDN);
    }
    BigFloat(double d, long prec) {
        mpfr_init2(v_, prec);
        mpfr_set_d(v_, d, MPFR_RNDN);
    }
    BigFloat(const BigFloat &o) {
        mpfr_init2(v_, mpfr_get_prec(o.v_));
        mpfr_set(v_, o.v_, MPFR_RNDN);
    }
    BigFloat(BigFloat &&o) noexcept {
        mpfr_init2(v_, mpfr_get_prec(o.v_));
        mpfr_swap(v_, o.v_);
    }
    BigFloat &operator=(const BigFloat &o) {
        if (this != &o) {
            mpfr_set_prec(v_, mpfr_get_prec(o.v_));
            mpfr_set(v_, o.v_, MPFR_RNDN);
        }
        return *this;
    }
    BigFloat &operator=(BigFloat &&o) noexcept {
        mpfr_swap(v_, o.v_);
        return *this;
    }
    ~BigFloat() { mpfr_clear(v_); }

    long prec() const { return mpfr_get_prec(v_); }
    const mpfr_t &raw() const { return v_; }
    mpfr_t &raw() { return v_; }

    bool is_zero() const { return mpfr_zero_p(v_); }
    int sign() const { return mpfr_sgn(v_); }
    double to_double() const { return mpfr_get_d(v_, MPFR_RNDN); }

    static long join(const BigFloat &a, const BigFloat &b) {
        return std::max(a.prec(), b.prec());
    }

    friend BigFloat operator+(const BigFloat &a, const BigFloat &b) {
        BigFloat r(join(a, b));
        mpfr_add(r.v_, a.v_, b.v_, MPFR_RNDN);
        return r;
    }
    friend BigFloat operator-(const BigFloat &a, const BigFloat &b) {
        BigFloat r(join(a, b));
        mpfr_sub(r.v_, a.v_, b.v_, MPFR_RNDN);
        return r;
    }
    friend BigFloat operator*(const BigFloat &a, const BigFloat &b) {
        BigFloat r(join(a, b));
        mpfr_mul(r.v_, a.v_, b.v_, MPFR_RNDN);
        return r;
    }
    friend BigFloat operator/(const BigFloat &a, const BigFloat &b) {
        BigFloat r(join(a, b));
        mpfr_div(r.v_, a.v_, b.v_, MPFR_RNDN);
        return r;
    }
    BigFloat operator-() const {
        BigFloat r(prec());
        mpfr_neg(r.v_, v_, MPFR_RNDN);
        return r;
    }
    BigFloat &operator+=(const BigFloat &o) { return *this = *this + o; }
    BigFloat &operator-=(const BigFloat &o) { return *this = *this - o; }
    BigFloat &operator*=(const BigFloat &o) { return *this = *this * o; }
    BigFloat &operator/=(const BigFloat &o) { return *this = *this / o; }

    friend bool operator<(const BigFloat &a, const BigFloat &b) {
        return mpfr_cmp(a.v_, b.v_) < 0;
    }
    friend bool operator>(const BigFloat &a, const BigFloat &b) { return b < a; }
    friend bool operator<=(const BigFloat &a, const BigFloat &b) {
        return mpfr_cmp(a.v_, b.v_) <= 0;
    }
    friend bool operator>=(const BigFloat &a, const BigFloat &b) { return b <= a; }

    BigFloat abs() const {
        BigFloat r(prec());
        mpfr_abs(r.v_, v_, MPFR_RNDN);
        return r;
    }
    BigFloat sqrt() const {
        if (sign() < 0) throw NumericError("BigFloat::sqrt of negative value");
        BigFloat r(prec());
        mpfr_sqrt(r.v_, v_, MPFR_RNDN);
        return r;
    }
    static BigFloat pow2(long e, long prec) {
        BigFloat r(prec);
        mpfr_set_ui_2exp(r.v_, 1, e, MPFR_RNDN);
        return r;
    }

    std::string str(int digits = 20) const {
        char *s = nullptr;
        mpfr_asprintf(&s, "%.*Rg", digits, v_);
        std::string out(s);
        mpfr_free_str(s);
        return out;
    }

  private:
    mpfr_t v_;
};

struct BigComplex {
    BigFloat re, im;

    BigComplex() = default;
    explicit BigComplex(long prec) : re(prec), im(prec) {}
    BigComplex(BigFloat r, BigFloat i) : re(std::move(r)), im(std::move(i)) {}
    BigComplex(const Rational &q, long prec) : re(q, prec), im(prec) {}
    BigComplex(double r, double i, long prec) : re(r, prec), im(i, prec) {}

    long prec() const { return std::max(re.prec(), im.prec()); }
    bool is_zero() const { return re.is_zero() && im.is_zero(); }

    friend BigComplex operator+(const BigComplex &a, const BigComplex &b) {
        return {a.re + b.re, a.im + b.im};
    }
    friend BigComplex operator-(const BigComplex &a, const BigComplex &b) {
        return {a.re - b.re, a.im - b.im};
    }
    BigComplex operator-() const { return {-re, -im}; }
    friend BigComplex operator*(const BigComplex &a, const BigComplex &b) {
        return {a.re * b.re - a.im * b.im, a.re * b.im + a.im * b.re};
    }
    friend BigComplex operator/(const BigComplex &a, const BigComplex &b) {
        BigFloat d = b.re * b.re + b.im * b.im;
        if (d.is_zero()) throw NumericError("BigComplex: division by zero");
        return {(a.re * b.re + a.im * b.im) / d, (a.im * b.re - a.re * b.im) / d};
    }
    BigComplex &operator+=(const BigComplex &o) { return *this = *this + o; }
    BigComplex &operator-=(const BigComplex &o) { return *this = *this - o; }
    BigComplex &operator*=(const BigComplex &o) { return *this = *this * o; }
    BigComplex &operator/=(const BigComplex &o) { return *this = *this / o; }

    BigComplex conj() const { return {re, -im}; }

    BigFloat abs() const {
        BigFloat r(prec());
        mpfr_hypot(r.raw(), re.raw(), im.raw(), MPFR_RNDN);
        return r;
    }

    // principal branch
    BigComplex sqrt() const {
        long p = prec();
        BigFloat r = abs();
        BigFloat half(Rational(1, 2), p);
        if (r.is_zero()) return BigComplex(p);
        BigFloat a = ((r + re) * half).sqrt();
        BigFloat b = ((r - re) * half).sqrt();
        if (im.sign() < 0) b = -b;
        return {std::move(a), std::move(b)};
    }

    std::string str(int digits = 12) const {
        return re.str(digits) + (im.sign() < 0 ? " - " : " + ") + im.abs().str(digits) + "i";
    }
};

inline BigFloat distance(const BigComplex &a, const BigComplex &b) { return (a - b).abs(); }

// Horner evaluation of exact polynomials at high-precision points.
inline BigComplex eval_poly(const UniPoly &p, const BigComplex &x, long prec) {
    BigComplex acc(prec);
    for (auto it = p.coeffs().rbegin(); it != p.coeffs().rend(); ++it)
        acc = acc * x + BigComplex(*it, prec);
    return acc;
}

inline BigComplex eval_ratfunc(const RatFunc &r, const BigComplex &x, long prec) {
    BigComplex d = eval_poly(r.den(), x, prec);
    if (d.is_zero()) throw NumericError("eval_ratfunc: pole at evaluation point");
    return eval_poly(r.num(), x, prec) / d;
}

}  // namespace pvi
