#pragma once

// Dense univariate polynomials over the rationals, plus the gcd / squarefree /
// content machinery everything downstream leans on. Coefficients are stored
// lowest degree first; the zero polynomial has an empty coefficient vector.

#include <pvi/detail/modular.hpp>
#include <pvi/rational.hpp>

#include <algorithm>
#include <optional>
#include <stdexcept>
#include <string>
#include <utility>
#include <vector>

namespace pvi {

class UniPoly {
  public:
    UniPoly() : var_("s") {}
    explicit UniPoly(std::string var) : var_(std::move(var)) {}
    UniPoly(std::string var, std::vector<Rational> coeffs)
        : var_(std::move(var)), c_(std::move(coeffs)) {
        trim();
    }

    static UniPoly constant(std::string var, Rational v) {
        return UniPoly(std::move(var), {std::move(v)});
    }
    static UniPoly variable(std::string var) {
        return UniPoly(std::move(var), {Rational(0), Rational(1)});
    }
    static UniPoly monomial(std::string var, Rational c, int deg) {
        std::vector<Rational> v(static_cast<std::size_t>(deg) + 1);
        v.back() = std::move(c);
        return UniPoly(std::move(var), std::move(v));
    }

    const std::string &var() const { return var_; }
    int degree() const { return static_cast<int>(c_.size()) - 1; }
    bool is_zero() const { return c_.empty(); }
    bool is_constant() const { return c_.size() <= 1; }
    bool is_one() const { return c_.size() == 1 && c_[0].is_one(); }

    const Rational &lc() const {
        if (c_.empty()) throw std::domain_error("UniPoly: lc of zero polynomial");
        return c_.back();
    }
    Rational coeff(int i) const {
        if (i < 0 || i >= static_cast<int>(c_.size())) return Rational(0);
        return c_[static_cast<std::size_t>(i)];
    }
    const std::vector<Rational> &coeffs() const { return c_; }

    Rational constant_term() const { return coeff(0); }

    friend bool operator==(const UniPoly &a, const UniPoly &b) {
        if (a.degree() < 1 || b.degree() < 1) return a.c_ == b.c_;
        return a.var_ == b.var_ && a.c_ == b.c_;
    }
    friend bool operator!=(const UniPoly &a, const UniPoly &b) { return !(a == b); }

    UniPoly operator-() const {
        UniPoly r(*this);
        for (auto &c : r.c_) c = -c;
        return r;
    }

    friend UniPoly operator+(const UniPoly &a, const UniPoly &b) {
        a.check_var(b);
        UniPoly r(result_var(a, b));
        r.c_.resize(std::max(a.c_.size(), b.c_.size()));
        for (std::size_t i = 0; i < r.c_.size(); ++i) {
            if (i < a.c_.size()) r.c_[i] += a.c_[i];
            if (i < b.c_.size()) r.c_[i] += b.c_[i];
        }
        r.trim();
        return r;
    }
    friend UniPoly operator-(const UniPoly &a, const UniPoly &b) { return a + (-b); }

    friend UniPoly operator*(const UniPoly &a, const UniPoly &b) {
        a.check_var(b);
        if (a.is_zero() || b.is_zero()) return UniPoly(result_var(a, b));
        UniPoly r(result_var(a, b));
        r.c_.assign(a.c_.size() + b.c_.size() - 1, Rational(0));
        for (std::size_t i = 0; i < a.c_.size(); ++i) {
            if (a.c_[i].is_zero()) continue;
            for (std::size_t j = 0; j < b.c_.size(); ++j) {
                if (b.c_[j].is_zero()) continue;
                r.c_[i + j] += a.c_[i] * b.c_[j];
            }
        }
        r.trim();
        return r;
    }

    friend UniPoly operator*(const UniPoly &a, const Rational &s) {
        if (s.is_zero()) return UniPoly(a.var_);
        UniPoly r(a);
        for (auto &c : r.c_) c *= s;
        return r;
    }
    friend UniPoly operator*(const Rational &s, const UniPoly &a) { return a * s; }
    friend UniPoly operator/(const UniPoly &a, const Rational &s) { return a * s.inverse(); }

    UniPoly &operator+=(const UniPoly &o) { return *this = *this + o; }
    UniPoly &operator-=(const UniPoly &o) { return *this = *this - o; }
    UniPoly &operator*=(const UniPoly &o) { return *this = *this * o; }

    // Multiply by var^k.
    UniPoly shifted(int k) const {
        if (is_zero() || k == 0) return *this;
        if (k < 0) throw std::invalid_argument("UniPoly: negative shift");
        UniPoly r(var_);
        r.c_.assign(c_.size() + static_cast<std::size_t>(k), Rational(0));
        std::copy(c_.begin(), c_.end(), r.c_.begin() + k);
        return r;
    }

    // Coefficient reversal: var^deg * p(1/var).
    UniPoly reversed() const {
        UniPoly r(*this);
        std::reverse(r.c_.begin(), r.c_.end());
        r.trim();
        return r;
    }

    UniPoly derivative() const {
        if (c_.size() <= 1) return UniPoly(var_);
        UniPoly r(var_);
        r.c_.resize(c_.size() - 1);
        for (std::size_t i = 1; i < c_.size(); ++i)
            r.c_[i - 1] = c_[i] * Rational(static_cast<long>(i));
        r.trim();
        return r;
    }

    UniPoly pow(int e) const {
        if (e < 0) throw std::invalid_argument("UniPoly: negative power");
        UniPoly r = constant(var_, Rational(1));
        UniPoly base = *this;
        while (e) {
            if (e & 1) r *= base;
            if (e >>= 1) base *= base;
        }
        return r;
    }

    Rational eval(const Rational &x) const {
        Rational acc(0);
        for (auto it = c_.rbegin(); it != c_.rend(); ++it) acc = acc * x + *it;
        return acc;
    }

    // Horner evaluation in any ring; conv embeds a Rational into T.
    template <class T, class Conv>
    T eval_with(const T &x, Conv conv) const {
        T acc = conv(Rational(0));
        for (auto it = c_.rbegin(); it != c_.rend(); ++it) acc = acc * x + conv(*it);
        return acc;
    }

    // Content c with p = c * pp, pp primitive integral with positive lc.
    Rational content() const {
        if (is_zero()) return Rational(0);
        mpz_class num_gcd(0), den_lcm(1);
        for (const auto &c : c_) {
            if (c.is_zero()) continue;
            num_gcd = gcd(num_gcd, c.num());
            den_lcm = lcm(den_lcm, c.den());
        }
        Rational c(num_gcd, den_lcm);
        if (lc().sign() < 0) c = -c;
        return c;
    }

    UniPoly primitive_part() const {
        if (is_zero()) return *this;
        return *this / content();
    }

    UniPoly monic() const {
        if (is_zero()) return *this;
        return *this / lc();
    }

    std::string str() const {
        if (is_zero()) return "0";
        std::string out;
        for (int i = degree(); i >= 0; --i) {
            Rational c = coeff(i);
            if (c.is_zero()) continue;
            bool neg = c.sign() < 0;
            if (out.empty()) {
                if (neg) out += "-";
            } else {
                out += neg ? " - " : " + ";
            }
            Rational a = c.abs();
            if (i == 0) {
                out += a.str();
            } else {
                if (!a.is_one()) out += a.str() + "*";
                out += var_;
                if (i > 1) out += "^" + std::to_string(i);
            }
        }
        return out;
    }

  private:
    void trim() {
        while (!c_.empty() && c_.back().is_zero()) c_.pop_back();
    }
    // Constants are variable-agnostic; only genuine cross-variable arithmetic
    // is rejected.
    void check_var(const UniPoly &o) const {
        if (degree() >= 1 && o.degree() >= 1 && var_ != o.var_)
            throw std::invalid_argument("UniPoly: variable mismatch '" + var_ + "' vs '" +
                                        o.var_ + "'");
    }
    static const std::string &result_var(const UniPoly &a, const UniPoly &b) {
        return a.degree() >= 1 || b.degree() < 1 ? a.var_ : b.var_;
    }

    std::string var_;
    std::vector<Rational> c_;
};

// Division with remainder over Q; divisor nonzero.
inline std::pair<UniPoly, UniPoly> divrem(const UniPoly &a, const UniPoly &b) {
    if (b.is_zero()) throw std::domain_error("divrem: division by zero polynomial");
    UniPoly q(a.var());
    UniPoly r = a;
    Rational binv = b.lc().inverse();
    std::vector<Rational> qc;
    if (r.degree() >= b.degree())
        qc.assign(static_cast<std::size_t>(r.degree() - b.degree()) + 1, Rational(0));
    while (!r.is_zero() && r.degree() >= b.degree()) {
        int k = r.degree() - b.degree();
        Rational c = r.lc() * binv;
        qc[static_cast<std::size_t>(k)] = c;
        r -= UniPoly::monomial(a.var(), c, k) * b;
    }
    return {UniPoly(a.var(), std::move(qc)), std::move(r)};
}

inline UniPoly exact_div(const UniPoly &a, const UniPoly &b) {
    auto [q, r] = divrem(a, b);
    if (!r.is_zero()) throw std::domain_error("exact_div: not divisible");
    return q;
}

namespace detail {

inline ZpPoly to_zp(const UniPoly &p, const PrimeField &F) {
    ZpPoly r(p.coeffs().size());
    for (std::size_t i = 0; i < r.size(); ++i) r[i] = mod_rational(p.coeffs()[i], F);
    zp_trim(r);
    return r;
}

// Primitive-PRS gcd fallback over Q: remainder then re-primitivize each step.
inline UniPoly gcd_prs(UniPoly a, UniPoly b) {
    a = a.primitive_part();
    b = b.primitive_part();
    if (a.degree() < b.degree()) std::swap(a, b);
    while (!b.is_zero()) {
        UniPoly r = divrem(a, b).second;
        a = std::move(b);
        b = r.is_zero() ? r : r.primitive_part();
    }
    return a.monic();
}

}  // namespace detail

// Monic gcd over Q. Modular images with CRT reconstruction; a handful of
// primes suffices since gcds seen here are small against the inputs.
inline UniPoly poly_gcd(const UniPoly &a0, const UniPoly &b0) {
    if (a0.is_zero()) return b0.monic();
    if (b0.is_zero()) return a0.monic();
    if (!a0.coeffs().empty() && !b0.coeffs().empty() && a0.var() != b0.var())
        throw std::invalid_argument("poly_gcd: variable mismatch");
    UniPoly a = a0.primitive_part();
    UniPoly b = b0.primitive_part();
    if (a.degree() == 0 || b.degree() == 0) return UniPoly::constant(a0.var(), Rational(1));

    mpz_class g_lc = gcd(a.lc().num(), b.lc().num());

    std::uint64_t p = std::uint64_t(1) << 62;
    std::vector<mpz_class> acc;   // symmetric-lifted candidate coefficients
    mpz_class modulus = 0;
    int acc_deg = -1;
    bool stable = false;
    int used = 0;

    while (used < 64) {
        p = detail::prev_prime(p);
        detail::PrimeField F{p};
        if (detail::mod_mpz(a.lc().num(), p) == 0 || detail::mod_mpz(b.lc().num(), p) == 0)
            continue;
        ++used;
        detail::ZpPoly gp = detail::zp_gcd(detail::to_zp(a, F), detail::to_zp(b, F), F);
        int dg = static_cast<int>(gp.size()) - 1;
        if (dg == 0) return UniPoly::constant(a.var(), Rational(1));
        std::uint64_t scale = detail::mod_mpz(g_lc, p);
        for (auto &c : gp) c = F.mul(c, scale);

        if (acc_deg < 0 || dg < acc_deg) {
            acc.assign(gp.size(), 0);
            for (std::size_t i = 0; i < gp.size(); ++i) acc[i] = detail::symmetric_lift(gp[i], p);
            modulus = mpz_class(static_cast<unsigned long>(p));
            acc_deg = dg;
            stable = false;
        } else if (dg > acc_deg) {
            continue;  // unlucky prime
        } else {
            bool changed = false;
            for (std::size_t i = 0; i < gp.size(); ++i) {
                mpz_class v = acc[i];
                mpz_class m = modulus;
                mpz_class nv = detail::crt_pair(((v % m) + m) % m, m, gp[i], p);
                mpz_class nm = m * mpz_class(static_cast<unsigned long>(p));
                if (nv > nm / 2) nv -= nm;
                if (nv != acc[i]) changed = true;
                acc[i] = nv;
            }
            modulus *= mpz_class(static_cast<unsigned long>(p));
            stable = !changed;
        }

        if (stable || acc_deg == 0) {
            std::vector<Rational> cs(acc.size());
            for (std::size_t i = 0; i < acc.size(); ++i) cs[i] = Rational(acc[i]);
            UniPoly cand = UniPoly(a.var(), std::move(cs)).primitive_part();
            if (divrem(a, cand).second.is_zero() && divrem(b, cand).second.is_zero())
                return cand.monic();
            stable = false;
        }
    }
    return detail::gcd_prs(a, b);
}

inline UniPoly poly_lcm(const UniPoly &a, const UniPoly &b) {
    if (a.is_zero() || b.is_zero()) return UniPoly(a.var());
    return exact_div(a * b, poly_gcd(a, b)).monic();
}

// Yun's squarefree decomposition: f = c * prod a_k^k, a_k squarefree, coprime.
inline std::vector<UniPoly> squarefree_decomposition(const UniPoly &f0) {
    if (f0.is_zero()) throw std::domain_error("squarefree_decomposition: zero input");
    std::vector<UniPoly> parts;  // parts[k-1] = a_k (monic)
    UniPoly f = f0.monic();
    if (f.degree() == 0) return parts;
    UniPoly fp = f.derivative();
    UniPoly g = poly_gcd(f, fp);
    UniPoly w = exact_div(f, g);
    UniPoly y = exact_div(fp, g);
    UniPoly z = y - w.derivative();
    while (!z.is_zero()) {
        UniPoly a = poly_gcd(w, z);
        parts.push_back(a);
        w = exact_div(w, a);
        y = exact_div(z, a);
        z = y - w.derivative();
    }
    parts.push_back(w);
    return parts;
}

// Writes f = core * cofactor^2 exactly, where core is squarefree with integer
// coefficients, squarefree content, and the sign of f's leading coefficient.
// cofactor has rational coefficients. core == 1 iff f is a rational square
// times a square polynomial.
inline std::pair<UniPoly, UniPoly> squarefree_part(const UniPoly &f) {
    if (f.is_zero()) throw std::domain_error("squarefree_part: zero input");
    Rational cont = f.content();  // carries lc sign
    UniPoly prim = f / cont;      // integer coefficients, lc > 0

    mpz_class ccore, csqrt;
    // cont = ccore * square, ccore a squarefree integer carrying cont's sign
    squarefree_decompose(cont.num() * cont.den(), ccore, csqrt);

    UniPoly core_poly = UniPoly::constant(f.var(), Rational(1));
    UniPoly cof_poly = UniPoly::constant(f.var(), Rational(1));
    auto parts = squarefree_decomposition(prim);
    for (std::size_t k = 0; k < parts.size(); ++k) {
        if (parts[k].degree() == 0) continue;
        if ((k + 1) % 2) core_poly *= parts[k];
        if (k + 1 >= 2) cof_poly *= parts[k].pow(static_cast<int>((k + 1) / 2));
    }
    UniPoly core = core_poly.primitive_part() * Rational(ccore);
    // Recover the exact relation f = core * cof^2; the leftover scale is a
    // positive rational square by construction.
    UniPoly ratio = exact_div(f, core);
    UniPoly cof = cof_poly;
    Rational r2 = ratio.lc() / cof.pow(2).lc();
    if (!r2.is_square())
        throw std::logic_error("squarefree_part: internal square extraction failed");
    cof = cof * r2.sqrt();
    if (!(core * cof * cof == f))
        throw std::logic_error("squarefree_part: round trip failed");
    return {core, cof};
}

// Canonical radicand form: integer coefficients, squarefree content, sign of
// the original leading coefficient. Result differs from input by a square.
inline UniPoly canonical_square_class(const UniPoly &f) {
    return squarefree_part(f).first;
}

}  // namespace pvi
