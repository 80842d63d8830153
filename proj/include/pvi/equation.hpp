#pragma once

// The sixth Painlevé equation: parameter bookkeeping and the exact residual
// certifying that (y, t) on a tower solves it for given theta.
//
// The residual is computed with all denominators cleared. Writing p = D(y),
// q = D(t) for the derivation of the tower, y' = p/q and y'' =
// (D(p)q - p D(q))/q^3, and multiplying the equation by
// 2 t^2 (t-1)^2 y (y-1) (y-t) q^3 turns it into a polynomial identity in the
// function field, so the zero test is exact and needs no field inversions.

#include <pvi/tower.hpp>

#include <map>
#include <stdexcept>
#include <string>
#include <utility>
#include <vector>

namespace pvi {

struct PviError : std::runtime_error {
    explicit PviError(const std::string &m) : std::runtime_error(m) {}
};

struct ThetaParams {
    Rational t1, t2, t3, t4;

    friend bool operator==(const ThetaParams &a, const ThetaParams &b) {
        return a.t1 == b.t1 && a.t2 == b.t2 && a.t3 == b.t3 && a.t4 == b.t4;
    }
    friend bool operator!=(const ThetaParams &a, const ThetaParams &b) { return !(a == b); }

    std::string str() const {
        return t1.str() + " " + t2.str() + " " + t3.str() + " " + t4.str();
    }
};

// The equation only sees (theta1^2, theta2^2, theta3^2, (theta4-1)^2).
inline bool theta_equivalent_up_to_signs(const ThetaParams &a, const ThetaParams &b) {
    auto sq = [](const Rational &x) { return x * x; };
    return sq(a.t1) == sq(b.t1) && sq(a.t2) == sq(b.t2) && sq(a.t3) == sq(b.t3) &&
           sq(a.t4 - Rational(1)) == sq(b.t4 - Rational(1));
}

// theta-bar = (t1, t2, t3, t4 - 1), the coordinates attached to the marked
// points (0, t, 1, infinity).
inline std::array<Rational, 4> theta_bar(const ThetaParams &th) {
    return {th.t1, th.t2, th.t3, th.t4 - Rational(1)};
}

// Equality of |theta-bar| multisets; the coarse invariant shared by all the
// sign/permutation conventions.
inline bool theta_bar_multiset_equal(const ThetaParams &a, const ThetaParams &b) {
    auto ma = theta_bar(a);
    auto mb = theta_bar(b);
    std::vector<Rational> va(ma.begin(), ma.end()), vb(mb.begin(), mb.end());
    for (auto &x : va) x = x.abs();
    for (auto &x : vb) x = x.abs();
    std::sort(va.begin(), va.end());
    std::sort(vb.begin(), vb.end());
    return va == vb;
}

struct PviSolution {
    TowerPtr tower;
    FieldElement y;
    FieldElement t;
    ThetaParams theta;

    // Non-degeneracy: t nonconstant, y not identically 0, 1 or t.
    void validate() const {
        if (!tower) throw PviError("PviSolution: missing tower");
        if (t.is_constant()) throw PviError("PviSolution: t is constant");
        if (y.is_zero()) throw PviError("PviSolution: y is identically 0");
        if ((y - FieldElement::constant(tower, Rational(1))).is_zero())
            throw PviError("PviSolution: y is identically 1");
        if ((y - t).is_zero()) throw PviError("PviSolution: y is identically t");
    }
};

struct ResidualReport {
    FieldElement residual;
    bool is_zero = false;
    int max_degree = 0;  // largest numerator degree reached while expanding
};

namespace detail {

// Field elements with a single factored denominator: a rational scale times
// a product of registered atom polynomials. Keeps the residual expansion
// free of gcd normalization.
struct ClearedContext {
    TowerPtr tower;
    std::vector<UniPoly> atoms;
    int max_degree = 0;

    int atom(const UniPoly &p) {
        for (std::size_t i = 0; i < atoms.size(); ++i)
            if (atoms[i] == p) return static_cast<int>(i);
        atoms.push_back(p);
        return static_cast<int>(atoms.size()) - 1;
    }
    void note_degree(const UniPoly &p) { max_degree = std::max(max_degree, p.degree()); }
};

struct Cleared {
    std::vector<UniPoly> num;       // one per basis monomial
    Rational scale = Rational(1);   // denominator = scale * prod atoms^exp
    std::vector<int> exp;           // parallel to ctx.atoms, missing = 0

    int e(std::size_t i) const { return i < exp.size() ? exp[i] : 0; }
};

inline Cleared cleared_zero(ClearedContext &ctx) {
    Cleared c;
    c.num.assign(ctx.tower->basis_size(), UniPoly(ctx.tower->var()));
    return c;
}

inline Cleared cleared_from_element(ClearedContext &ctx, const FieldElement &a) {
    UniPoly den = UniPoly::constant(ctx.tower->var(), Rational(1));
    for (const auto &c : a.coords()) den = poly_lcm(den, c.den());
    Cleared out = cleared_zero(ctx);
    for (std::size_t m = 0; m < a.coords().size(); ++m) {
        const RatFunc &c = a.coords()[m];
        if (c.is_zero()) continue;
        out.num[m] = c.num() * exact_div(den, c.den());
        ctx.note_degree(out.num[m]);
    }
    if (!den.is_one()) {
        int id = ctx.atom(den);
        out.exp.assign(static_cast<std::size_t>(id) + 1, 0);
        out.exp[static_cast<std::size_t>(id)] = 1;
    }
    return out;
}

inline Cleared cleared_scalar(ClearedContext &ctx, const Rational &v) {
    Cleared c = cleared_zero(ctx);
    c.num[0] = UniPoly::constant(ctx.tower->var(), v);
    return c;
}

inline Cleared cleared_mul(ClearedContext &ctx, const Cleared &a, const Cleared &b) {
    const Tower &tw = *ctx.tower;
    std::size_t n = a.num.size();
    Cleared out = cleared_zero(ctx);
    out.scale = a.scale * b.scale;
    out.exp.assign(std::max(a.exp.size(), b.exp.size()), 0);
    for (std::size_t i = 0; i < out.exp.size(); ++i)
        out.exp[i] = a.e(i) + b.e(i);
    for (unsigned i = 0; i < n; ++i) {
        if (a.num[i].is_zero()) continue;
        for (unsigned j = 0; j < n; ++j) {
            if (b.num[j].is_zero()) continue;
            unsigned meet = i & j;
            unsigned slot = i ^ j;
            UniPoly term = a.num[i] * b.num[j];
            if (meet) term *= tw.monomial_radicand(meet);
            out.num[slot] += term;
        }
    }
    for (const auto &p : out.num) ctx.note_degree(p);
    return out;
}

// Raise both sides onto the common denominator, then add numerators.
inline Cleared cleared_add(ClearedContext &ctx, const Cleared &a, const Cleared &b) {
    Cleared out = cleared_zero(ctx);
    std::size_t na = a.exp.size(), nb = b.exp.size();
    out.exp.assign(std::max(na, nb), 0);
    for (std::size_t i = 0; i < out.exp.size(); ++i) out.exp[i] = std::max(a.e(i), b.e(i));
    // deficit polynomials
    UniPoly da = UniPoly::constant(ctx.tower->var(), Rational(1));
    UniPoly db = UniPoly::constant(ctx.tower->var(), Rational(1));
    for (std::size_t i = 0; i < out.exp.size(); ++i) {
        int d_a = out.exp[i] - a.e(i);
        int d_b = out.exp[i] - b.e(i);
        if (d_a > 0) da *= ctx.atoms[i].pow(d_a);
        if (d_b > 0) db *= ctx.atoms[i].pow(d_b);
    }
    // a/(sa Da) + b/(sb Db): numerators pick up the opposite scale
    out.scale = a.scale * b.scale;
    for (std::size_t m = 0; m < out.num.size(); ++m) {
        UniPoly t1 = a.num[m].is_zero() ? UniPoly(ctx.tower->var()) : a.num[m] * da * b.scale;
        UniPoly t2 = b.num[m].is_zero() ? UniPoly(ctx.tower->var()) : b.num[m] * db * a.scale;
        out.num[m] = t1 + t2;
        ctx.note_degree(out.num[m]);
    }
    return out;
}

inline Cleared cleared_neg(const Cleared &a) {
    Cleared out = a;
    for (auto &p : out.num) p = -p;
    return out;
}

inline Cleared cleared_sub(ClearedContext &ctx, const Cleared &a, const Cleared &b) {
    return cleared_add(ctx, a, cleared_neg(b));
}

inline Cleared cleared_scale(const Cleared &a, const Rational &v) {
    Cleared out = a;
    for (auto &p : out.num) p = p * v;
    return out;
}

inline bool cleared_is_zero(const Cleared &a) {
    for (const auto &p : a.num)
        if (!p.is_zero()) return false;
    return true;
}

// Derivation: coordinates are num_m / D with D = scale * prod A_j^{e_j} and
// the monomial radicand contributes R'/(2R).
inline Cleared cleared_derivative(ClearedContext &ctx, const Cleared &a) {
    const Tower &tw = *ctx.tower;
    // W = prod of atoms present, S with D'/D = S/W
    UniPoly W = UniPoly::constant(tw.var(), Rational(1));
    std::vector<std::size_t> present;
    for (std::size_t i = 0; i < a.exp.size(); ++i)
        if (a.exp[i] > 0) present.push_back(i);
    for (auto i : present) W *= ctx.atoms[i];
    UniPoly S(tw.var());
    for (auto i : present) {
        UniPoly term = ctx.atoms[i].derivative() * Rational(a.exp[i]);
        for (auto j : present)
            if (j != i) term *= ctx.atoms[j];
        S += term;
    }
    // radicand product (depth-dependent)
    UniPoly FG = UniPoly::constant(tw.var(), Rational(1));
    for (int i = 0; i < tw.depth(); ++i) FG *= tw.radicand(i);

    Cleared out = cleared_zero(ctx);
    out.scale = a.scale * Rational(2);
    out.exp.assign(std::max(a.exp.size(), std::size_t(0)), 0);
    for (std::size_t i = 0; i < a.exp.size(); ++i)
        out.exp[i] = a.exp[i] + (a.exp[i] > 0 ? 1 : 0);
    if (!FG.is_one()) {
        int id = ctx.atom(FG);
        if (out.exp.size() <= static_cast<std::size_t>(id)) out.exp.resize(static_cast<std::size_t>(id) + 1, 0);
        out.exp[static_cast<std::size_t>(id)] += 1;
    }
    for (unsigned m = 0; m < a.num.size(); ++m) {
        if (a.num[m].is_zero()) continue;
        // (n' W - n S) * 2FG + n W * FG * R'/R with R | FG
        UniPoly base = (a.num[m].derivative() * W - a.num[m] * S) * FG * Rational(2);
        if (m) {
            UniPoly R = tw.monomial_radicand(m);
            base += a.num[m] * W * exact_div(FG, R) * R.derivative();
        }
        out.num[m] = base;
        ctx.note_degree(out.num[m]);
    }
    return out;
}

// Reduce a cleared element back to a FieldElement (gcd-normalized).
inline FieldElement cleared_to_element(const ClearedContext &ctx, const Cleared &a) {
    UniPoly den = UniPoly::constant(ctx.tower->var(), a.scale.inverse());
    for (std::size_t i = 0; i < a.exp.size(); ++i)
        if (a.e(i) > 0) den *= ctx.atoms[i].pow(a.exp[i]);
    std::vector<RatFunc> coords;
    for (const auto &n : a.num) coords.emplace_back(n, den);
    return FieldElement(ctx.tower, std::move(coords));
}

}  // namespace detail

// Exact residual of the PVI equation for (y, t, theta) on the tower.
// Errors: constant t (D(t) = 0) and degenerate y in {0, 1, t}.
inline ResidualReport pvi_residual(const PviSolution &sol) {
    sol.validate();
    using detail::Cleared;
    detail::ClearedContext ctx;
    ctx.tower = sol.tower;

    const Rational one(1);
    Cleared y = detail::cleared_from_element(ctx, sol.y);
    Cleared t = detail::cleared_from_element(ctx, sol.t);
    Cleared cone = detail::cleared_scalar(ctx, one);

    Cleared p = detail::cleared_derivative(ctx, y);   // D(y)
    Cleared q = detail::cleared_derivative(ctx, t);   // D(t)
    if (detail::cleared_is_zero(q)) throw PviError("pvi_residual: D(t) vanishes");
    Cleared dp = detail::cleared_derivative(ctx, p);  // D(D(y))
    Cleared dq = detail::cleared_derivative(ctx, q);  // D(D(t))

    auto mul = [&](const Cleared &a, const Cleared &b) { return detail::cleared_mul(ctx, a, b); };
    auto add = [&](const Cleared &a, const Cleared &b) { return detail::cleared_add(ctx, a, b); };
    auto sub = [&](const Cleared &a, const Cleared &b) { return detail::cleared_sub(ctx, a, b); };

    Cleared ym1 = sub(y, cone);
    Cleared tm1 = sub(t, cone);
    Cleared ymt = sub(y, t);
    Cleared t2 = mul(t, t);
    Cleared tm1_2 = mul(tm1, tm1);
    Cleared t2tm1_2 = mul(t2, tm1_2);

    Cleared y_ym1 = mul(y, ym1);
    Cleared y_ymt = mul(y, ymt);
    Cleared ym1_ymt = mul(ym1, ymt);
    Cleared yy1yt = mul(y_ym1, ymt);  // y (y-1) (y-t)

    // M = 2 t^2 (t-1)^2 y (y-1)(y-t)
    Cleared M = detail::cleared_scale(mul(t2tm1_2, yy1yt), Rational(2));
    // AM = t^2 (t-1)^2 [ (y-1)(y-t) + y(y-t) + y(y-1) ]
    Cleared S2 = add(add(ym1_ymt, y_ymt), y_ym1);
    Cleared AM = mul(t2tm1_2, S2);
    // BM = 2 [ t(t-1)^2 + t^2(t-1) ] y(y-1)(y-t) + 2 t^2 (t-1)^2 y(y-1)
    Cleared t_tm1sum = add(mul(t, tm1_2), mul(t2, tm1));
    Cleared BM = add(detail::cleared_scale(mul(t_tm1sum, yy1yt), Rational(2)),
                     detail::cleared_scale(mul(t2tm1_2, y_ym1), Rational(2)));
    // CEM = (th4-1)^2 [y(y-1)(y-t)]^2 - th1^2 t [(y-1)(y-t)]^2
    //       + th3^2 (t-1) [y(y-t)]^2 + (1-th2^2) t(t-1) [y(y-1)]^2
    const ThetaParams &th = sol.theta;
    Rational c4 = (th.t4 - one) * (th.t4 - one);
    Rational c1 = th.t1 * th.t1;
    Rational c3 = th.t3 * th.t3;
    Rational c2 = one - th.t2 * th.t2;
    Cleared CEM = detail::cleared_scale(mul(yy1yt, yy1yt), c4);
    CEM = sub(CEM, detail::cleared_scale(mul(t, mul(ym1_ymt, ym1_ymt)), c1));
    CEM = add(CEM, detail::cleared_scale(mul(tm1, mul(y_ymt, y_ymt)), c3));
    CEM = add(CEM, detail::cleared_scale(mul(mul(t, tm1), mul(y_ym1, y_ym1)), c2));

    Cleared q2 = mul(q, q);
    Cleared q3 = mul(q2, q);
    Cleared term1 = mul(M, sub(mul(dp, q), mul(p, dq)));
    Cleared term2 = mul(AM, mul(mul(p, p), q));
    Cleared term3 = mul(BM, mul(p, q2));
    Cleared term4 = mul(CEM, q3);

    Cleared R = add(sub(sub(term1, term2), term4), term3);

    ResidualReport report;
    report.is_zero = detail::cleared_is_zero(R);
    report.max_degree = ctx.max_degree;
    if (report.is_zero)
        report.residual = FieldElement::constant(sol.tower, Rational(0));
    else
        report.residual = detail::cleared_to_element(ctx, R);
    return report;
}

}  // namespace pvi
