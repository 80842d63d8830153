#pragma once

// Solution-generating machinery: fractional-linear symmetries, the seed-form
// detector, the quadratic transformation in both its raw (two square roots)
// and folded (u drops out) versions, and matching of solutions up to
// generator sign flips.

#include <pvi/equation.hpp>
#include <pvi/tower.hpp>

#include <array>
#include <optional>
#include <string>
#include <vector>

namespace pvi {

struct ShapeError : std::runtime_error {
    explicit ShapeError(const std::string &m) : std::runtime_error(m) {}
};

// ---------------------------------------------------------------------------
// Fractional-linear symmetries. Each acts on (y, t) by the listed map and on
// theta-bar = (th1, th2, th3, th4-1) by the permutation the map induces on
// the marked points (0, t, 1, inf); signs are free, so the result is
// normalized to nonnegative entries with th4 >= 1.

enum class MobiusKind {
    Identity,
    OneMinus,        // (1-y, 1-t)
    Reciprocal,      // (1/y, 1/t)
    YOverT,          // (y/t, 1/t)
    YOverYMinus1,    // (y/(y-1), t/(t-1))
    FixOneSwap,      // (y(t-1)/(t-y), 1-t)
    FixTSwap,        // ((y-t)/(y-1), t)
};

struct MobiusSymmetry {
    MobiusKind kind;
    const char *label;
    std::array<int, 4> perm;  // new theta-bar[i] = old theta-bar[perm[i]]
};

inline const std::vector<MobiusSymmetry> &mobius_symmetries() {
    static const std::vector<MobiusSymmetry> table = {
        {MobiusKind::Identity, "identity", {0, 1, 2, 3}},
        {MobiusKind::OneMinus, "one-minus", {2, 1, 0, 3}},
        {MobiusKind::Reciprocal, "reciprocal", {3, 1, 2, 0}},
        {MobiusKind::YOverT, "y-over-t", {0, 2, 1, 3}},
        {MobiusKind::YOverYMinus1, "y-over-y-minus-1", {0, 1, 3, 2}},
        {MobiusKind::FixOneSwap, "fix-one-swap", {0, 3, 2, 1}},
        {MobiusKind::FixTSwap, "fix-t-swap", {1, 0, 3, 2}},
    };
    return table;
}

inline const MobiusSymmetry &mobius_by_label(const std::string &label) {
    for (const auto &m : mobius_symmetries())
        if (label == m.label) return m;
    throw ShapeError("unknown symmetry label '" + label + "'");
}

inline ThetaParams mobius_theta(const MobiusSymmetry &sym, const ThetaParams &th) {
    auto tb = theta_bar(th);
    std::array<Rational, 4> p;
    for (int i = 0; i < 4; ++i) p[static_cast<std::size_t>(i)] =
        tb[static_cast<std::size_t>(sym.perm[static_cast<std::size_t>(i)])];
    // fundamental domain: nonnegative entries, th4 >= 1
    return ThetaParams{p[0].abs(), p[1].abs(), p[2].abs(), Rational(1) + p[3].abs()};
}

inline PviSolution apply_mobius(const MobiusSymmetry &sym, const PviSolution &sol) {
    const TowerPtr &tw = sol.tower;
    FieldElement one = FieldElement::constant(tw, Rational(1));
    FieldElement y = sol.y, t = sol.t;
    FieldElement ny = y, nt = t;
    switch (sym.kind) {
        case MobiusKind::Identity: break;
        case MobiusKind::OneMinus:
            ny = one - y;
            nt = one - t;
            break;
        case MobiusKind::Reciprocal:
            ny = invert(y);
            nt = invert(t);
            break;
        case MobiusKind::YOverT:
            ny = y / t;
            nt = invert(t);
            break;
        case MobiusKind::YOverYMinus1:
            ny = y / (y - one);
            nt = t / (t - one);
            break;
        case MobiusKind::FixOneSwap:
            ny = y * (t - one) / (t - y);
            nt = one - t;
            break;
        case MobiusKind::FixTSwap:
            ny = (y - t) / (y - one);
            nt = t;
            break;
    }
    PviSolution out{tw, std::move(ny), std::move(nt), mobius_theta(sym, sol.theta)};
    try {
        out.validate();
    } catch (const PviError &e) {
        throw PviError(std::string("apply_mobius: degenerate output: ") + e.what());
    }
    return out;
}

// ---------------------------------------------------------------------------
// Seed form y0 = 1/2 + a_y u, t0 = 1/2 + a_t u on u^2 = u2(s), theta1 = theta3 = 0.

struct SeedForm {
    RatFunc a_y;
    RatFunc a_t;
    UniPoly u2;
    ThetaParams theta;
    TowerPtr tower;  // the u^2 = u2 presentation

    PviSolution reconstruct() const {
        FieldElement u = FieldElement::generator(tower, 0);
        FieldElement half = FieldElement::constant(tower, Rational(1, 2));
        return PviSolution{tower, half + u * a_y, half + u * a_t, theta};
    }
};

// Shape detection; reports which condition fails.
inline SeedForm to_seed_form(const PviSolution &sol) {
    if (sol.tower->depth() != 1)
        throw ShapeError("seed form: tower shape (exactly one radicand required)");
    if (!sol.theta.t1.is_zero() || !sol.theta.t3.is_zero())
        throw ShapeError("seed form: theta shape (theta1 = theta3 = 0 required)");
    const Rational half(1, 2);
    auto check_half = [&](const FieldElement &x, const char *name) {
        if (!(x.coord(0).is_constant() && x.coord(0).constant_value() == half))
            throw ShapeError(std::string("seed form: ") + name +
                             " has no constant part 1/2");
    };
    check_half(sol.y, "y");
    check_half(sol.t, "t");
    SeedForm sf;
    sf.a_y = sol.y.coord(1);
    sf.a_t = sol.t.coord(1);
    sf.u2 = sol.tower->radicand(0);
    sf.theta = sol.theta;
    sf.tower = sol.tower;
    return sf;
}

// ---------------------------------------------------------------------------
// Folded quadratic transformation: from a seed on the double cover u^2 = u2
// to a solution on the four-fold cover with v^2 = A_y^2 - u2, w^2 = A_t^2 - u2,
// A_i = 2 a_i u2. Square factors of the radicands are absorbed into the new
// generators, so the stored radicands stay squarefree.

struct FoldedResult {
    PviSolution solution;
    FieldElement v;  // root with v^2 = A_y^2 - u2
    FieldElement w;  // root with w^2 = A_t^2 - u2
    RatFunc A_y, A_t;
};

inline FoldedResult folded_quadratic_transform(const SeedForm &seed) {
    const std::string &var = seed.u2.var();
    RatFunc u2(seed.u2);
    RatFunc Ay = seed.a_y * u2 * Rational(2);
    RatFunc At = seed.a_t * u2 * Rational(2);
    if (Ay == At) throw PviError("folded transform: A_y equals A_t identically");

    TowerPtr base = Tower::rational(var);
    auto ry = adjoin_root(base, Ay * Ay - u2, "v");
    if (ry.was_square)
        throw PviError("folded transform: A_y^2 - u2 is a square, cover degenerates");
    auto rt = adjoin_root(ry.tower, At * At - u2, "w");
    if (rt.was_square)
        throw PviError("folded transform: A_t^2 - u2 is a square, cover degenerates");
    TowerPtr tw = rt.tower;
    FieldElement v = rt.extended ? lift_to_extension(tw, ry.root) : ry.root;
    FieldElement w = rt.root;

    FieldElement half = FieldElement::constant(tw, Rational(1, 2));
    FieldElement denom = FieldElement::from_base(tw, (Ay - At) * Rational(2));
    FieldElement y = half + (w + v) / denom;
    FieldElement t = half - FieldElement::from_base(tw, At) / (w * Rational(2));

    const ThetaParams &th = seed.theta;
    Rational h = (Rational(1) - th.t4) / Rational(2);
    ThetaParams nth{h, th.t2 / Rational(2), h, (Rational(2) - th.t2) / Rational(2)};

    FoldedResult out{PviSolution{tw, std::move(y), std::move(t), nth}, std::move(v),
                     std::move(w), Ay, At};
    out.solution.validate();
    return out;
}

// ---------------------------------------------------------------------------
// Raw quadratic transformation (two square roots). Input must have
// theta = (0, th2, th3, 1) and y, t of the shape (A + u)/(A - u) over the
// double cover, which is exactly when the square roots stay inside a depth-2
// tower; B = A + sqrt(A^2 - u2) does not involve u.

struct RgtResult {
    PviSolution solution;
    FieldElement B_y, B_t;
    RatFunc A_y, A_t;
};

inline RgtResult rgt_transform(const PviSolution &sol, int branch_y = +1, int branch_t = +1) {
    if (sol.tower->depth() != 1)
        throw ShapeError("rgt: tower shape (exactly one radicand required)");
    if (!sol.theta.t1.is_zero() || sol.theta.t4 != Rational(1))
        throw ShapeError("rgt: theta shape (theta = (0, th2, th3, 1) required)");
    const std::string &var = sol.tower->var();
    UniPoly u2p = sol.tower->radicand(0);
    FieldElement one = FieldElement::constant(sol.tower, Rational(1));
    FieldElement u = FieldElement::generator(sol.tower, 0);

    auto extract_A = [&](const FieldElement &x, const char *name) {
        FieldElement num = u * (one + x);
        FieldElement den = x - one;
        if (den.is_zero()) throw ShapeError(std::string("rgt: ") + name + " equals 1");
        FieldElement a = num / den;
        if (!a.is_base())
            throw ShapeError(std::string("rgt: ") + name +
                             " is not of the (A+u)/(A-u) shape; the required square "
                             "roots leave the depth-2 budget");
        return a.coord(0);
    };
    RatFunc Ay = extract_A(sol.y, "y");
    RatFunc At = extract_A(sol.t, "t");

    RatFunc u2(u2p);
    TowerPtr base = Tower::rational(var);
    auto ry = adjoin_root(base, Ay * Ay - u2, "v");
    if (ry.was_square) throw PviError("rgt: A_y^2 - u2 is a square, cover degenerates");
    auto rt = adjoin_root(ry.tower, At * At - u2, "w");
    if (rt.was_square) throw PviError("rgt: A_t^2 - u2 is a square, cover degenerates");
    TowerPtr tw = rt.tower;
    FieldElement rooty = rt.extended ? lift_to_extension(tw, ry.root) : ry.root;
    FieldElement roott = rt.root;

    FieldElement By = FieldElement::from_base(tw, Ay) + rooty * Rational(branch_y >= 0 ? 1 : -1);
    FieldElement Bt = FieldElement::from_base(tw, At) + roott * Rational(branch_t >= 0 ? 1 : -1);
    FieldElement y = By / Bt;
    FieldElement invBt = invert(Bt);
    FieldElement t = FieldElement::from_base(tw, u2) * invBt * invBt;

    const ThetaParams &th = sol.theta;
    ThetaParams nth{th.t3 / Rational(2), th.t2 / Rational(2), th.t2 / Rational(2),
                    (Rational(2) - th.t3) / Rational(2)};
    RgtResult out{PviSolution{tw, std::move(y), std::move(t), nth}, std::move(By),
                  std::move(Bt), Ay, At};
    out.solution.validate();
    return out;
}

// ---------------------------------------------------------------------------
// Matching up to the group generated by generator sign flips. Returns the
// flip mask under which candidate (y, t) equals the reference, if any.

inline std::optional<unsigned> match_up_to_generator_signs(const PviSolution &candidate,
                                                           const PviSolution &reference) {
    if (!candidate.tower->same_field(*reference.tower)) return std::nullopt;
    FieldElement cy, ct;
    try {
        cy = express_in(reference.tower, candidate.y);
        ct = express_in(reference.tower, candidate.t);
    } catch (const TowerError &) {
        return std::nullopt;
    }
    for (unsigned mask = 0; mask < reference.tower->basis_size(); ++mask) {
        if (cy.conjugate(mask) == reference.y && ct.conjugate(mask) == reference.t)
            return mask;
    }
    return std::nullopt;
}

}  // namespace pvi
