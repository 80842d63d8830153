#pragma once

// Exact rational arithmetic. Thin value wrapper around GMP's mpq_class so the
// rest of the library can stay independent of the backing representation.
// Invariants (maintained by mpq canonicalization): gcd(num, den) = 1, den > 0.

#include <gmpxx.h>

#include <cstdint>
#include <stdexcept>
#include <string>

namespace pvi {

class Rational {
  public:
    Rational() : q_(0) {}
    Rational(long n) : q_(n) {}
    Rational(long n, long d) : q_(n, d) {
        if (d == 0) throw std::invalid_argument("Rational: zero denominator");
        q_.canonicalize();
    }
    explicit Rational(const mpz_class &z) : q_(z) {}
    Rational(const mpz_class &n, const mpz_class &d) : q_(n, d) {
        if (d == 0) throw std::invalid_argument("Rational: zero denominator");
        q_.canonicalize();
    }
    explicit Rational(const mpq_class &q) : q_(q) { q_.canonicalize(); }

    // Parses "p", "-p" or "p/q".
    static Rational from_string(const std::string &s) {
        mpq_class q;
        if (q.set_str(s, 10) != 0)
            throw std::invalid_argument("Rational: bad literal '" + s + "'");
        if (q.get_den() == 0)
            throw std::invalid_argument("Rational: zero denominator in '" + s + "'");
        q.canonicalize();
        return Rational(q);
    }

    const mpz_class &num() const { return q_.get_num(); }
    const mpz_class &den() const { return q_.get_den(); }
    const mpq_class &mpq() const { return q_; }

    bool is_zero() const { return sgn(q_) == 0; }
    bool is_one() const { return q_ == 1; }
    bool is_integer() const { return q_.get_den() == 1; }
    int sign() const { return sgn(q_); }

    Rational operator-() const { return Rational(mpq_class(-q_)); }
    Rational &operator+=(const Rational &o) { q_ += o.q_; return *this; }
    Rational &operator-=(const Rational &o) { q_ -= o.q_; return *this; }
    Rational &operator*=(const Rational &o) { q_ *= o.q_; return *this; }
    Rational &operator/=(const Rational &o) {
        if (o.is_zero()) throw std::domain_error("Rational: division by zero");
        q_ /= o.q_;
        return *this;
    }

    friend Rational operator+(Rational a, const Rational &b) { return a += b; }
    friend Rational operator-(Rational a, const Rational &b) { return a -= b; }
    friend Rational operator*(Rational a, const Rational &b) { return a *= b; }
    friend Rational operator/(Rational a, const Rational &b) { return a /= b; }

    friend bool operator==(const Rational &a, const Rational &b) { return a.q_ == b.q_; }
    friend bool operator!=(const Rational &a, const Rational &b) { return a.q_ != b.q_; }
    friend bool operator<(const Rational &a, const Rational &b) { return a.q_ < b.q_; }
    friend bool operator<=(const Rational &a, const Rational &b) { return a.q_ <= b.q_; }
    friend bool operator>(const Rational &a, const Rational &b) { return a.q_ > b.q_; }
    friend bool operator>=(const Rational &a, const Rational &b) { return a.q_ >= b.q_; }

    Rational inverse() const {
        if (is_zero()) throw std::domain_error("Rational: inverse of zero");
        return Rational(den(), num());
    }

    Rational abs() const { return sign() < 0 ? -*this : *this; }

    Rational pow(long e) const {
        if (e < 0) return inverse().pow(-e);
        mpz_class n, d;
        mpz_pow_ui(n.get_mpz_t(), num().get_mpz_t(), static_cast<unsigned long>(e));
        mpz_pow_ui(d.get_mpz_t(), den().get_mpz_t(), static_cast<unsigned long>(e));
        return Rational(n, d);
    }

    // True iff this is the square of a rational.
    bool is_square() const {
        if (sign() < 0) return false;
        return mpz_perfect_square_p(num().get_mpz_t()) &&
               mpz_perfect_square_p(den().get_mpz_t());
    }

    Rational sqrt() const {
        if (!is_square()) throw std::domain_error("Rational: not a perfect square");
        mpz_class n, d;
        mpz_sqrt(n.get_mpz_t(), num().get_mpz_t());
        mpz_sqrt(d.get_mpz_t(), den().get_mpz_t());
        return Rational(n, d);
    }

    std::string str() const { return q_.get_str(); }

    double to_double() const { return q_.get_d(); }

  private:
    mpq_class q_;
};

inline mpz_class gcd(const mpz_class &a, const mpz_class &b) {
    mpz_class g;
    mpz_gcd(g.get_mpz_t(), a.get_mpz_t(), b.get_mpz_t());
    return g;
}

inline mpz_class lcm(const mpz_class &a, const mpz_class &b) {
    mpz_class l;
    mpz_lcm(l.get_mpz_t(), a.get_mpz_t(), b.get_mpz_t());
    return l;
}

// Squarefree part of an integer: n = core * square, |core| squarefree, the sign
// stays on the core. Trial division up to a fixed bound; the contents met here
// are smooth, the perfect-square fallback covers the rest.
inline void squarefree_decompose(const mpz_class &n, mpz_class &core, mpz_class &sqrt_cofactor) {
    if (n == 0) throw std::domain_error("squarefree_decompose: zero");
    mpz_class m = ::abs(n);
    core = n < 0 ? -1 : 1;
    sqrt_cofactor = 1;
    const unsigned long bound = 1000000;
    for (mpz_class p = 2; p * p <= m && p <= bound;) {
        if (m % p == 0) {
            unsigned e = 0;
            while (m % p == 0) { m /= p; ++e; }
            if (e % 2) core *= p;
            mpz_class half;
            mpz_pow_ui(half.get_mpz_t(), p.get_mpz_t(), e / 2);
            sqrt_cofactor *= half;
        }
        p += (p == 2) ? 1 : 2;
    }
    if (m > 1 && mpz_perfect_square_p(m.get_mpz_t())) {
        mpz_class r;
        mpz_sqrt(r.get_mpz_t(), m.get_mpz_t());
        sqrt_cofactor *= r;
        m = 1;
    }
    core *= m;
}

}  // namespace pvi
