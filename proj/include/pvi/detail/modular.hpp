#pragma once

// Word-size prime fields and CRT, backing the modular polynomial gcd.
// Primes are taken just below 2^62 so products fit in __uint128_t.

#include <pvi/rational.hpp>

#include <cstdint>
#include <stdexcept>
#include <vector>

namespace pvi::detail {

struct PrimeField {
    std::uint64_t p;

    std::uint64_t add(std::uint64_t a, std::uint64_t b) const {
        std::uint64_t s = a + b;
        if (s >= p || s < a) s -= p;
        return s;
    }
    std::uint64_t sub(std::uint64_t a, std::uint64_t b) const {
        return a >= b ? a - b : a + (p - b);
    }
    std::uint64_t mul(std::uint64_t a, std::uint64_t b) const {
        return static_cast<std::uint64_t>((static_cast<unsigned __int128>(a) * b) % p);
    }
    std::uint64_t pow(std::uint64_t a, std::uint64_t e) const {
        std::uint64_t r = 1;
        while (e) {
            if (e & 1) r = mul(r, a);
            a = mul(a, a);
            e >>= 1;
        }
        return r;
    }
    std::uint64_t inv(std::uint64_t a) const {
        if (a == 0) throw std::domain_error("PrimeField: inverse of zero");
        return pow(a, p - 2);
    }
};

// Next prime strictly below `below`, moving downward.
inline std::uint64_t prev_prime(std::uint64_t below) {
    mpz_class n(static_cast<unsigned long>(below));
    n -= 1;
    while (mpz_probab_prime_p(n.get_mpz_t(), 30) == 0) n -= 1;
    return n.get_ui();
}

inline std::uint64_t mod_mpz(const mpz_class &z, std::uint64_t p) {
    mpz_class r = z % static_cast<unsigned long>(p);
    if (r < 0) r += static_cast<unsigned long>(p);
    return r.get_ui();
}

// Image of a rational mod p; throws if the denominator vanishes mod p
// (caller picks a different prime).
inline std::uint64_t mod_rational(const Rational &q, const PrimeField &F) {
    std::uint64_t d = mod_mpz(q.den(), F.p);
    if (d == 0) throw std::domain_error("mod_rational: denominator divisible by p");
    return F.mul(mod_mpz(q.num(), F.p), F.inv(d));
}

using ZpPoly = std::vector<std::uint64_t>;  // dense, low degree first, no trailing zeros

inline void zp_trim(ZpPoly &a) {
    while (!a.empty() && a.back() == 0) a.pop_back();
}

inline ZpPoly zp_monic(ZpPoly a, const PrimeField &F) {
    zp_trim(a);
    if (a.empty()) return a;
    std::uint64_t s = F.inv(a.back());
    for (auto &c : a) c = F.mul(c, s);
    return a;
}

// In-place remainder of a by b (b nonzero).
inline void zp_rem(ZpPoly &a, const ZpPoly &b, const PrimeField &F) {
    std::uint64_t binv = F.inv(b.back());
    while (a.size() >= b.size()) {
        std::uint64_t q = F.mul(a.back(), binv);
        std::size_t off = a.size() - b.size();
        if (q != 0)
            for (std::size_t i = 0; i < b.size(); ++i)
                a[off + i] = F.sub(a[off + i], F.mul(q, b[i]));
        a.pop_back();
        zp_trim(a);
        if (a.empty()) return;
    }
}

inline ZpPoly zp_gcd(ZpPoly a, ZpPoly b, const PrimeField &F) {
    zp_trim(a);
    zp_trim(b);
    while (!b.empty()) {
        zp_rem(a, b, F);
        std::swap(a, b);
    }
    return zp_monic(a, F);
}

// Symmetric representative in (-p/2, p/2].
inline mpz_class symmetric_lift(std::uint64_t r, std::uint64_t p) {
    mpz_class z(static_cast<unsigned long>(r));
    if (r > p / 2) z -= mpz_class(static_cast<unsigned long>(p));
    return z;
}

// CRT: value mod m with residue r mod p -> value mod m*p (non-symmetric).
inline mpz_class crt_pair(const mpz_class &v, const mpz_class &m, std::uint64_t r, std::uint64_t p) {
    PrimeField F{p};
    std::uint64_t mp = mod_mpz(m, p);
    std::uint64_t vp = mod_mpz(v, p);
    std::uint64_t d = F.mul(F.sub(r % p, vp), F.inv(mp));
    return v + m * mpz_class(static_cast<unsigned long>(d));
}

}  // namespace pvi::detail
