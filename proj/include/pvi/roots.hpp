#pragma once

// Certified complex root isolation for exact squarefree polynomials:
// simultaneous Aberth-Ehrlich iteration followed by a posteriori Weierstrass
// disk bounds. The union of the disks D(z_i, n |p(z_i)| / |lc prod (z_i-z_j)|)
// contains every root, and pairwise disjoint disks pin one root each.

#include <pvi/numeric.hpp>
#include <pvi/polynomial.hpp>

#include <vector>

namespace pvi {

struct RootDisk {
    BigComplex center;
    BigFloat radius;
};

namespace detail {

inline std::vector<BigComplex> to_complex_coeffs(const UniPoly &p, long prec) {
    std::vector<BigComplex> c;
    c.reserve(p.coeffs().size());
    for (const auto &q : p.coeffs()) c.emplace_back(q, prec);
    return c;
}

inline BigComplex horner(const std::vector<BigComplex> &c, const BigComplex &x, long prec) {
    BigComplex acc(prec);
    for (auto it = c.rbegin(); it != c.rend(); ++it) acc = acc * x + *it;
    return acc;
}

}  // namespace detail

// All complex roots of a squarefree polynomial with certified separation.
// Throws NumericError if the disks cannot be certified disjoint after the
// internal precision escalations.
inline std::vector<RootDisk> isolate_roots(const UniPoly &poly, long prec_bits) {
    if (poly.is_zero()) throw NumericError("isolate_roots: zero polynomial");
    int n = poly.degree();
    if (n == 0) return {};
    if (n == 1) {
        long p = prec_bits + 32;
        BigComplex root(-(poly.coeff(0) / poly.coeff(1)), p);
        return {{root, BigFloat::pow2(-p + 8, p)}};
    }

    for (int attempt = 0; attempt < 4; ++attempt) {
        long p = (prec_bits + 64) << attempt;
        auto c = detail::to_complex_coeffs(poly, p);
        // derivative coefficients
        std::vector<BigComplex> dc;
        for (std::size_t i = 1; i < c.size(); ++i)
            dc.push_back(c[i] * BigComplex(Rational(static_cast<long>(i)), p));

        // Cauchy-style inclusion radius
        BigFloat R(1.0, p);
        BigFloat lc_abs = c.back().abs();
        for (int i = 0; i < n; ++i) {
            BigFloat q = c[static_cast<std::size_t>(i)].abs() / lc_abs;
            if (R < q) R = q;
        }
        R = R + BigFloat(1.0, p);

        // initial guesses on a slightly eccentric circle
        std::vector<BigComplex> z;
        z.reserve(static_cast<std::size_t>(n));
        mpfr_t angle, cs, sn;
        mpfr_init2(angle, p);
        mpfr_init2(cs, p);
        mpfr_init2(sn, p);
        for (int k = 0; k < n; ++k) {
            mpfr_const_pi(angle, MPFR_RNDN);
            mpfr_mul_d(angle, angle, (2.0 * k + 0.353) / n, MPFR_RNDN);
            mpfr_sin_cos(sn, cs, angle, MPFR_RNDN);
            BigFloat x(p), y(p);
            mpfr_set(x.raw(), cs, MPFR_RNDN);
            mpfr_set(y.raw(), sn, MPFR_RNDN);
            BigFloat rk = R * BigFloat(0.5 + 0.4 * (k % 3) / 3.0, p);
            z.push_back(BigComplex(x * rk, y * rk));
        }
        mpfr_clear(angle);
        mpfr_clear(cs);
        mpfr_clear(sn);

        const BigFloat tiny = BigFloat::pow2(-p + 24, p);
        // |p(z)| computed in floating point carries rounding noise of order
        // 2^-p * sum |c_i| |z|^i; convergence and certification must both be
        // judged against that floor.
        auto noise_bound = [&](const BigComplex &x) {
            BigFloat ax = x.abs();
            BigFloat acc(p);
            for (auto it = c.rbegin(); it != c.rend(); ++it) acc = acc * ax + it->abs();
            return acc * BigFloat::pow2(-p + 16, p) *
                   BigFloat(static_cast<double>(4 * n), p);
        };
        bool converged = false;
        for (int iter = 0; iter < 800 && !converged; ++iter) {
            converged = true;
            for (int i = 0; i < n; ++i) {
                auto &zi = z[static_cast<std::size_t>(i)];
                BigComplex pv = detail::horner(c, zi, p);
                BigComplex dv = detail::horner(dc, zi, p);
                if (pv.is_zero()) continue;
                if (dv.is_zero()) {
                    zi = zi + BigComplex(tiny, tiny);  // nudge off a critical point
                    converged = false;
                    continue;
                }
                BigComplex nu = pv / dv;
                BigComplex sum(p);
                for (int jj = 0; jj < n; ++jj) {
                    if (jj == i) continue;
                    BigComplex diff = zi - z[static_cast<std::size_t>(jj)];
                    if (diff.is_zero()) diff = BigComplex(tiny, tiny);
                    sum += BigComplex(Rational(1), p) / diff;
                }
                BigComplex denom = BigComplex(Rational(1), p) - nu * sum;
                BigComplex w = denom.is_zero() ? nu : nu / denom;
                zi = zi - w;
                // done when the correction sits at the rounding floor
                BigFloat floor_w = noise_bound(zi) / dv.abs() + (zi.abs() + BigFloat(1.0, p)) * tiny;
                if (!(w.abs() <= floor_w)) converged = false;
            }
        }

        // a posteriori Weierstrass disks, inflated by the evaluation noise
        std::vector<RootDisk> disks;
        disks.reserve(static_cast<std::size_t>(n));
        bool ok = converged;
        if (ok) {
            for (int i = 0; i < n && ok; ++i) {
                const auto &zi = z[static_cast<std::size_t>(i)];
                BigComplex pv = detail::horner(c, zi, p);
                BigComplex prod = c.back();
                for (int jj = 0; jj < n; ++jj) {
                    if (jj == i) continue;
                    prod *= zi - z[static_cast<std::size_t>(jj)];
                }
                if (prod.is_zero()) {
                    ok = false;
                    break;
                }
                BigFloat radius = ((pv.abs() + noise_bound(zi)) / prod.abs()) *
                                  BigFloat(static_cast<double>(n), p);
                disks.push_back({zi, radius});
            }
        }
        if (ok) {
            for (int i = 0; i < n && ok; ++i)
                for (int jj = i + 1; jj < n; ++jj) {
                    BigFloat gap = distance(disks[static_cast<std::size_t>(i)].center,
                                            disks[static_cast<std::size_t>(jj)].center);
                    BigFloat need = disks[static_cast<std::size_t>(i)].radius +
                                    disks[static_cast<std::size_t>(jj)].radius;
                    if (!(need < gap)) {
                        ok = false;
                        break;
                    }
                }
        }
        if (ok) return disks;
    }
    throw NumericError("isolate_roots: could not certify disjoint root disks (degree " +
                       std::to_string(n) + ")");
}

}  // namespace pvi
