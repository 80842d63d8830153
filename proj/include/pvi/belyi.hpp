#pragma once

// Numeric-certified Belyi verification. All multiplicity bookkeeping rides on
// exact polynomial data (norm numerators, squarefree decompositions, minimal
// polynomials); floating point only locates roots and tells certified-distinct
// points apart. Ramification profiles come from counting the preimages of an
// exactly rational perturbed value near each of 0, 1, infinity, assigned to
// exact fiber points; the final Riemann-Hurwitz identity is checked in exact
// integers.

#include <pvi/curve.hpp>
#include <pvi/equation.hpp>
#include <pvi/numeric.hpp>
#include <pvi/roots.hpp>
#include <pvi/tower.hpp>

#include <algorithm>
#include <cmath>
#include <functional>
#include <map>
#include <optional>
#include <random>
#include <string>
#include <vector>

namespace pvi {

struct BelyiError : std::runtime_error {
    explicit BelyiError(const std::string &m) : std::runtime_error(m) {}
};

struct BelyiCertificate {
    int degree = 0;
    int genus = 0;
    std::vector<int> profile_0, profile_1, profile_inf;  // partitions of degree
    long precision_bits = 0;
    bool rh_consistent = false;
    int ramification_sum = 0;        // sum of (e-1) over the three fibers
    int critical_points_checked = 0;
    double max_critical_offset = 0;  // largest |t - nearest of {0,1}| or 1/|t| seen
};

namespace detail {

inline long height_bits(const UniPoly &p) {
    std::size_t h = 1;
    for (const auto &c : p.coeffs()) {
        h = std::max(h, mpz_sizeinbase(c.num().get_mpz_t(), 2));
        h = std::max(h, mpz_sizeinbase(c.den().get_mpz_t(), 2));
    }
    return static_cast<long>(h);
}

// One affine chart of the curve: the tower, the map, and everything exact
// derived from them.
struct BelyiChart {
    TowerPtr tower;
    FieldElement t;
    FieldElement dt;
    UniPoly candidates;             // squarefree union of all special s-values
    std::vector<RootDisk> cand_roots;
    std::vector<bool> f_ram, g_ram; // per candidate: radicand vanishes there
    BigFloat min_sep{64};
    UniPoly crit;                   // squarefree numerator of Norm(dt)
};

struct CurvePoint {
    int chart;      // 0 finite, 1 infinity
    int candidate;  // index into chart candidate roots
    int cls;        // residue class over the base point (0..3)
};

inline bool operator<(const CurvePoint &a, const CurvePoint &b) {
    if (a.chart != b.chart) return a.chart < b.chart;
    if (a.candidate != b.candidate) return a.candidate < b.candidate;
    return a.cls < b.cls;
}

inline BigComplex eval_element(const FieldElement &a, const BigComplex &s,
                               const std::vector<BigComplex> &lift, long prec) {
    BigComplex acc(prec);
    for (unsigned m = 0; m < a.coords().size(); ++m) {
        if (a.coord(m).is_zero()) continue;
        BigComplex term = eval_ratfunc(a.coord(m), s, prec);
        for (std::size_t i = 0; i < lift.size(); ++i)
            if (m & (1u << i)) term *= lift[i];
        acc += term;
    }
    return acc;
}

inline BelyiChart make_chart(const TowerPtr &tower, const FieldElement &t, long prec) {
    BelyiChart ch;
    ch.tower = tower;
    ch.t = t;
    ch.dt = differentiate(t);

    RatFunc norm_t = field_norm(t);
    FieldElement one = FieldElement::constant(tower, Rational(1));
    RatFunc norm_tm1 = field_norm(t - one);
    RatFunc norm_dt = field_norm(ch.dt);
    if (norm_dt.is_zero()) throw BelyiError("belyi: dt has zero norm (t constant?)");

    UniPoly prod = norm_t.num() * norm_tm1.num() * norm_t.den();
    for (const auto &f : tower->radicands()) prod *= f;
    ch.candidates = squarefree_part(prod).first;
    ch.crit = squarefree_part(norm_dt.num()).first;

    ch.cand_roots = isolate_roots(ch.candidates, prec + height_bits(ch.candidates));

    // which candidates sit on vanishing radicands (exact: radicand divides the
    // candidate polynomial, so shared roots are honest root matches)
    std::size_t nc = ch.cand_roots.size();
    ch.f_ram.assign(nc, false);
    ch.g_ram.assign(nc, false);
    for (int gi = 0; gi < tower->depth(); ++gi) {
        auto rad_roots = isolate_roots(tower->radicand(gi), prec);
        for (std::size_t i = 0; i < nc; ++i)
            for (const auto &rr : rad_roots) {
                BigFloat d = distance(ch.cand_roots[i].center, rr.center);
                if (d < (ch.cand_roots[i].radius + rr.radius) * BigFloat(4.0, 64)) {
                    (gi == 0 ? ch.f_ram : ch.g_ram)[i] = true;
                }
            }
    }

    // certified minimum separation between distinct candidates
    ch.min_sep = BigFloat(1e300, 64);
    for (std::size_t i = 0; i < nc; ++i)
        for (std::size_t j = i + 1; j < nc; ++j) {
            BigFloat d = distance(ch.cand_roots[i].center, ch.cand_roots[j].center);
            if (d < ch.min_sep) ch.min_sep = d;
        }
    if (nc <= 1) ch.min_sep = BigFloat(1.0, 64);
    return ch;
}

// Number of residue classes over a candidate and the class of a given lift.
inline int class_count(const BelyiChart &ch, std::size_t cand) {
    bool fr = ch.f_ram[cand], gr = ch.tower->depth() > 1 && ch.g_ram[cand];
    if (ch.tower->depth() == 0) return 1;
    if (ch.tower->depth() == 1) return fr ? 1 : 2;
    if (fr && gr) return 2;
    if (fr || gr) return 2;
    return 4;
}

// classify a preimage point (s, lift values) living near candidate `cand`
inline int classify_lift(const BelyiChart &ch, std::size_t cand, const BigComplex &s,
                         const std::vector<BigComplex> &lift, long prec) {
    const BigComplex &s0 = ch.cand_roots[cand].center;
    int depth = ch.tower->depth();
    if (depth == 0) return 0;
    auto sign_of = [&](const BigComplex &val, const BigComplex &ref) {
        return (distance(val, ref) < distance(val, -ref)) ? 0 : 1;
    };
    bool fr = ch.f_ram[cand];
    bool gr = depth > 1 && ch.g_ram[cand];
    if (depth == 1) {
        if (fr) return 0;  // the two sheets merge
        BigComplex rho = eval_poly(ch.tower->radicand(0), s0, prec).sqrt();
        return sign_of(lift[0], rho);
    }
    if (!fr && !gr) {
        BigComplex rho1 = eval_poly(ch.tower->radicand(0), s0, prec).sqrt();
        BigComplex rho2 = eval_poly(ch.tower->radicand(1), s0, prec).sqrt();
        return sign_of(lift[0], rho1) * 2 + sign_of(lift[1], rho2);
    }
    if (fr && !gr) {
        BigComplex rho2 = eval_poly(ch.tower->radicand(1), s0, prec).sqrt();
        return sign_of(lift[1], rho2);
    }
    if (!fr && gr) {
        BigComplex rho1 = eval_poly(ch.tower->radicand(0), s0, prec).sqrt();
        return sign_of(lift[0], rho1);
    }
    // both radicands vanish to first order: the two points are told apart by
    // the single-valued ratio r1 r2 / (s - s0) -> sqrt((fg)''(s0)/2)
    UniPoly fg = ch.tower->radicand(0) * ch.tower->radicand(1);
    BigComplex h = eval_poly(fg.derivative().derivative(), s0, prec) /
                   BigComplex(Rational(2), prec);
    BigComplex rho = h.sqrt();
    BigComplex mu = lift[0] * lift[1] / (s - s0);
    return sign_of(mu, rho);
}

}  // namespace detail

// Numeric consistency check of the PVI equation at random点 sample points:
// evaluates y'' - RHS via the chain rule at `count` non-excluded points and
// returns the largest |deviation| seen.
inline BigFloat pvi_residual_numeric(const PviSolution &sol, long prec, int count,
                                     unsigned seed) {
    const TowerPtr &tw = sol.tower;
    FieldElement dy = differentiate(sol.y);
    FieldElement dt = differentiate(sol.t);
    FieldElement ddy = differentiate(dy);
    FieldElement ddt = differentiate(dt);
    BigFloat worst(prec);
    std::mt19937 rng(seed);
    std::uniform_int_distribution<long> numd(2000, 40000);
    int done = 0;
    int guard = 0;
    while (done < count && guard < 400) {
        ++guard;
        Rational s0(numd(rng), 1000);
        // exclusion: radicand zeros and coordinate poles
        bool bad = false;
        for (const auto &f : tw->radicands())
            if (f.eval(s0).is_zero()) bad = true;
        auto check_elem = [&](const FieldElement &e) {
            for (const auto &c : e.coords())
                if (c.den().eval(s0).is_zero()) bad = true;
        };
        check_elem(sol.y);
        check_elem(sol.t);
        check_elem(dy);
        check_elem(dt);
        check_elem(ddy);
        check_elem(ddt);
        if (bad) continue;
        BigComplex s(s0, prec);
        std::vector<BigComplex> lift;
        for (const auto &f : tw->radicands()) lift.push_back(eval_poly(f, s, prec).sqrt());
        auto ev = [&](const FieldElement &e) { return detail::eval_element(e, s, lift, prec); };
        BigComplex yv = ev(sol.y), tv = ev(sol.t);
        BigComplex one(Rational(1), prec);
        BigComplex qv = ev(dt);
        if (qv.is_zero()) continue;
        BigComplex yp = ev(dy) / qv;
        BigComplex ypp = (ev(ddy) * qv - ev(dy) * ev(ddt)) / (qv * qv * qv);
        // exclusion: y in {0,1,t} or t in {0,1} at the sample point
        BigFloat small = BigFloat::pow2(-8, prec);
        if (yv.abs() < small || (yv - one).abs() < small || (yv - tv).abs() < small ||
            tv.abs() < small || (tv - one).abs() < small)
            continue;
        ++done;
        const ThetaParams &th = sol.theta;
        BigComplex half(Rational(1, 2), prec);
        BigComplex A = half * (one / yv + one / (yv - one) + one / (yv - tv));
        BigComplex B = one / tv + one / (tv - one) + one / (yv - tv);
        BigComplex C = yv * (yv - one) * (yv - tv) /
                       (BigComplex(Rational(2), prec) * tv * tv * (tv - one) * (tv - one));
        BigComplex E = BigComplex((th.t4 - Rational(1)) * (th.t4 - Rational(1)), prec) -
                       BigComplex(th.t1 * th.t1, prec) * tv / (yv * yv) +
                       BigComplex(th.t3 * th.t3, prec) * (tv - one) / ((yv - one) * (yv - one)) +
                       BigComplex(Rational(1) - th.t2 * th.t2, prec) * tv * (tv - one) /
                           ((yv - tv) * (yv - tv));
        BigComplex resid = ypp - (A * yp * yp - B * yp + C * E);
        BigFloat dev = resid.abs();
        if (worst < dev) worst = dev;
    }
    if (done < count)
        throw NumericError("pvi_residual_numeric: could not find enough sample points");
    return worst;
}

// Full Belyi certification. `genus_in` and `degree_in` are the exact values
// from curve analysis; the certificate re-derives the degree by counting and
// checks 2g - 2 = -2 deg + sum(e - 1) exactly.
inline BelyiCertificate belyi_certify(const TowerPtr &tower, const FieldElement &t,
                                      int genus_in, int degree_in, long prec_bits,
                                      const Rational &tolerance) {
    if (t.is_constant()) throw BelyiError("belyi: constant map");
    std::string err;
    // fiber perturbation scale: four fifths of the tolerance's decimal digits,
    // leaving room for the e-th-root spreading of ramified preimages
    double digits = -std::log10(std::max(tolerance.to_double(), 1e-300));
    int eps_digits = std::max(6, static_cast<int>(digits * 0.8));
    Rational eps = Rational(10).pow(-eps_digits);

    for (int attempt = 0; attempt < 4; ++attempt, prec_bits *= 2, eps = eps * eps) {
        try {
            long prec = prec_bits + 64;
            // charts: finite and at infinity
            detail::BelyiChart ch0 = detail::make_chart(tower, t, prec);
            auto inf = infinity_chart(tower, tower->var() + "_inf");
            detail::BelyiChart ch1 = detail::make_chart(inf.tower, inf.transport(t), prec);
            detail::BelyiChart *charts[2] = {&ch0, &ch1};

            // every preimage of a finite nonzero tau has finite s, so the
            // finite-chart minimal polynomial provides all preimage roots
            TPoly m0 = minimal_polynomial(t);
            BiPoly prim0 = tpoly_primitive_bivariate(m0, tower->var(), "T");
            int d0 = static_cast<int>(m0.size()) - 1;
            int lifts_per_root = static_cast<int>(tower->basis_size()) / d0;

            // chart boundary: keep |s| <= cut in chart 0, |sigma| < 1/cut in chart 1
            BigFloat cut(1.0, prec);
            {
                bool clash = true;
                double c = 1.0;
                for (int k = 0; k < 40 && clash; ++k) {
                    clash = false;
                    c = 1.0 + 0.19 * k;
                    for (const auto &rd : ch0.cand_roots) {
                        double m = rd.center.abs().to_double();
                        if (m > c / 1.45 && m < c * 1.45) clash = true;
                    }
                    for (const auto &rd : ch1.cand_roots) {
                        double m = rd.center.abs().to_double();
                        if (m > 1e-300 && 1.0 / m > c / 1.45 && 1.0 / m < c * 1.45) clash = true;
                    }
                }
                if (clash) throw NumericError("belyi: no clean chart boundary found");
                cut = BigFloat(c, prec);
            }

            std::map<detail::CurvePoint, std::pair<int, int>> assigned;  // -> (fiber, count)
            std::vector<std::vector<int>> profiles(3);

            for (int fib = 0; fib < 3; ++fib) {
                Rational tau = fib == 0 ? eps : (fib == 1 ? Rational(1) - eps : eps.inverse());
                // exact preimage polynomial on chart 0 covers all finite preimages
                UniPoly E = prim0.eval_y(tau);
                if (E.degree() != prim0.degree_x())
                    throw NumericError("belyi: unlucky tau (degree drop)");
                auto [Ecore, Ecof] = squarefree_part(E);
                if (Ecof.degree() > 0)
                    throw NumericError("belyi: unlucky tau (non-squarefree preimage)");
                auto pre = isolate_roots(Ecore, prec + detail::height_bits(Ecore));
                if (static_cast<int>(pre.size()) * lifts_per_root != degree_in)
                    throw NumericError("belyi: preimage count mismatch");

                std::map<detail::CurvePoint, int> counts;
                for (const auto &root : pre) {
                    int chart = (root.center.abs() <= cut) ? 0 : 1;
                    detail::BelyiChart &ch = *charts[chart];
                    BigComplex s = chart == 0
                                       ? root.center
                                       : BigComplex(Rational(1), prec) / root.center;
                    // lifts on this chart
                    std::vector<BigComplex> rho;
                    for (int gi = 0; gi < ch.tower->depth(); ++gi)
                        rho.push_back(eval_poly(ch.tower->radicand(gi), s, prec).sqrt());
                    BigComplex tauv(tau, prec);
                    int found = 0;
                    BigFloat match_tol =
                        (tauv.abs() + BigFloat(1.0, prec)) * BigFloat::pow2(-prec / 3, prec);
                    // nearest candidate on the chart
                    int cand = -1;
                    BigFloat best(1e300, 64);
                    for (std::size_t ci = 0; ci < ch.cand_roots.size(); ++ci) {
                        BigFloat d = distance(ch.cand_roots[ci].center, s);
                        if (d < best) {
                            best = d;
                            cand = static_cast<int>(ci);
                        }
                    }
                    if (cand < 0 || !(best < ch.min_sep * BigFloat(0.33, 64)))
                        throw NumericError("belyi: preimage far from every fiber candidate");
                    for (unsigned mask = 0; mask < (1u << ch.tower->depth()); ++mask) {
                        std::vector<BigComplex> lift = rho;
                        for (int gi = 0; gi < ch.tower->depth(); ++gi)
                            if (mask & (1u << gi)) lift[static_cast<std::size_t>(gi)] =
                                -lift[static_cast<std::size_t>(gi)];
                        BigComplex tv = detail::eval_element(ch.t, s, lift, prec);
                        if (distance(tv, tauv) < match_tol) {
                            ++found;
                            int cls = detail::classify_lift(ch, static_cast<std::size_t>(cand),
                                                            s, lift, prec);
                            ++counts[detail::CurvePoint{chart, cand, cls}];
                        }
                    }
                    if (found != lifts_per_root)
                        throw NumericError("belyi: lift match count " + std::to_string(found) +
                                           " != " + std::to_string(lifts_per_root));
                }
                int total = 0;
                for (auto &[pt, cnt] : counts) {
                    auto it = assigned.find(pt);
                    if (it != assigned.end() && it->second.first != fib)
                        throw NumericError("belyi: point assigned to two fibers");
                    assigned[pt] = {fib, cnt};
                    profiles[static_cast<std::size_t>(fib)].push_back(cnt);
                    total += cnt;
                }
                if (total != degree_in)
                    throw NumericError("belyi: fiber multiplicities sum to " +
                                       std::to_string(total));
            }

            BelyiCertificate cert;
            cert.degree = degree_in;
            cert.genus = genus_in;
            cert.precision_bits = prec_bits;
            for (auto &p : profiles) std::sort(p.begin(), p.end(), std::greater<int>());
            cert.profile_0 = profiles[0];
            cert.profile_1 = profiles[1];
            cert.profile_inf = profiles[2];
            int rsum = 0;
            for (const auto &p : profiles)
                for (int e : p) rsum += e - 1;
            cert.ramification_sum = rsum;
            cert.rh_consistent = (2 * genus_in - 2 == -2 * degree_in + rsum);

            // explicit critical-value scan: zeros of Norm(dt) on both charts.
            // This runs before the Riemann-Hurwitz escalation decision so a
            // genuine Belyi violation surfaces as the hard error it is.
            BigFloat tolf(tolerance, prec);
            BigFloat invtol = BigFloat(1.0, prec) / tolf;
            for (int chart = 0; chart < 2; ++chart) {
                detail::BelyiChart &ch = *charts[chart];
                if (ch.crit.degree() <= 0) continue;
                auto crit_roots = isolate_roots(ch.crit, prec + detail::height_bits(ch.crit));
                for (const auto &cr : crit_roots) {
                    if (chart == 0 && !(cr.center.abs() <= cut)) continue;
                    if (chart == 1 && !(cr.center.abs() < BigFloat(1.0, prec) / cut)) continue;
                    ++cert.critical_points_checked;
                    // candidate membership certifies the critical value lies in a fiber
                    bool near_candidate = false;
                    for (std::size_t ci = 0; ci < ch.cand_roots.size(); ++ci)
                        if (distance(ch.cand_roots[ci].center, cr.center) <
                            ch.min_sep * BigFloat(0.33, 64))
                            near_candidate = true;
                    // evaluate t at the lifts where dt vanishes
                    BigComplex s = cr.center;
                    std::vector<BigComplex> rho;
                    bool eval_ok = true;
                    for (int gi = 0; gi < ch.tower->depth(); ++gi)
                        rho.push_back(eval_poly(ch.tower->radicand(gi), s, prec).sqrt());
                    for (const auto &c : ch.dt.coords())
                        if (eval_poly(c.den(), s, prec).abs() < BigFloat::pow2(-prec / 2, prec))
                            eval_ok = false;
                    for (const auto &c : ch.t.coords())
                        if (eval_poly(c.den(), s, prec).abs() < BigFloat::pow2(-prec / 2, prec))
                            eval_ok = false;
                    if (!eval_ok) {
                        if (!near_candidate)
                            throw NumericError("belyi: unresolvable critical point");
                        continue;  // fiber membership already certifies it
                    }
                    BigFloat dt_scale(0.0, prec);
                    std::vector<BigFloat> dt_abs;
                    std::vector<BigComplex> t_vals;
                    for (unsigned mask = 0; mask < (1u << ch.tower->depth()); ++mask) {
                        std::vector<BigComplex> lift = rho;
                        for (int gi = 0; gi < ch.tower->depth(); ++gi)
                            if (mask & (1u << gi)) lift[static_cast<std::size_t>(gi)] =
                                -lift[static_cast<std::size_t>(gi)];
                        BigComplex dv = detail::eval_element(ch.dt, s, lift, prec);
                        dt_abs.push_back(dv.abs());
                        if (dt_scale < dv.abs()) dt_scale = dv.abs();
                        t_vals.push_back(detail::eval_element(ch.t, s, lift, prec));
                    }
                    BigFloat vanish_tol =
                        (dt_scale + BigFloat(1.0, prec)) * BigFloat::pow2(-prec / 3, prec);
                    for (std::size_t k = 0; k < dt_abs.size(); ++k) {
                        if (!(dt_abs[k] < vanish_tol)) continue;
                        const BigComplex &tv = t_vals[k];
                        BigFloat off0 = tv.abs();
                        BigFloat off1 = (tv - BigComplex(Rational(1), prec)).abs();
                        BigFloat offi = tv.is_zero() ? BigFloat(1e300, 64)
                                                     : BigFloat(1.0, prec) / tv.abs();
                        BigFloat off = off0;
                        if (off1 < off) off = off1;
                        if (offi < off) off = offi;
                        if (!(off < tolf)) {
                            if (near_candidate) continue;  // exact fiber membership wins
                            throw BelyiError(
                                "belyi: critical value away from {0,1,inf}: |t| = " +
                                tv.abs().str(8));
                        }
                        double offd = off.to_double();
                        if (offd > cert.max_critical_offset) cert.max_critical_offset = offd;
                    }
                }
            }
            if (!cert.rh_consistent)
                throw NumericError("belyi: Riemann-Hurwitz mismatch, sum(e-1) = " +
                                   std::to_string(rsum));
            return cert;
        } catch (const NumericError &e) {
            err = e.what();
            continue;  // escalate precision and shrink eps
        }
    }
    throw NumericError("belyi_certify: escalation exhausted: " + err);
}

}  // namespace pvi
