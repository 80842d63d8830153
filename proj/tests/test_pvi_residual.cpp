#include <catch2/catch_amalgamated.hpp>

#include <pvi/equation.hpp>

using namespace pvi;

namespace {

UniPoly P(std::initializer_list<long> coeffs_low_first, const std::string &var = "s") {
    std::vector<Rational> c;
    for (long v : coeffs_low_first) c.emplace_back(v);
    return UniPoly(var, std::move(c));
}

// the 10-branch seed: u^2 = s, theta = (0, 1/5, 0, 1)
PviSolution seed10() {
    auto tw = Tower::make("s", {P({0, 1})}, {"u"});
    FieldElement u = FieldElement::generator(tw, 0);
    FieldElement half = FieldElement::constant(tw, Rational(1, 2));
    RatFunc ay(P({-1, 6, 3}) * Rational(-1), P({0, 0, 16}));
    UniPoly Pp = P({1, -25, 170, -370, -315, 27});
    RatFunc at(Pp, P({0, 0, 0, -256, 1280}));  // 256 (5s-1) s^3
    PviSolution sol;
    sol.tower = tw;
    sol.y = half + u * ay;
    sol.t = half + u * at;
    sol.theta = {Rational(0), Rational(1, 5), Rational(0), Rational(1)};
    return sol;
}

// icosahedral solution 45 exactly as printed: 20 branches, genus one
PviSolution sol45() {
    UniPoly f = P({1, -10, 9});   // (9s-1)(s-1)
    UniPoly g = P({1, -18, 1});   // s^2 - 18 s + 1
    auto tw = Tower::make("s", {f, g}, {"v", "w1"});
    FieldElement v = FieldElement::generator(tw, 0);
    FieldElement w = v * FieldElement::generator(tw, 1);  // w = v w1
    FieldElement half = FieldElement::constant(tw, Rational(1, 2));
    FieldElement s = FieldElement::base_variable(tw);
    UniPoly Pp = P({1, -25, 170, -370, -315, 27});
    auto base = [&](const UniPoly &p) { return FieldElement::from_base(tw, RatFunc(p)); };

    PviSolution sol;
    sol.tower = tw;
    sol.y = half - (base(P({0, -16, 80})) + v * w) / (base(P({1, -1}) * P({1, 3}) * Rational(2)) * v);
    sol.t = half - base(Pp) / (base(P({1, -1}) * Rational(2)) * v * v * w);
    sol.theta = {Rational(0), Rational(1, 10), Rational(0), Rational(9, 10)};
    return sol;
}

}  // namespace

TEST_CASE("theta equivalence up to irrelevant signs") {
    ThetaParams a{Rational(0), Rational(1, 5), Rational(0), Rational(1)};
    ThetaParams b{Rational(0), Rational(-1, 5), Rational(0), Rational(1)};
    CHECK(theta_equivalent_up_to_signs(a, b));
    ThetaParams c{Rational(0), Rational(1, 5), Rational(0), Rational(2)};
    CHECK_FALSE(theta_equivalent_up_to_signs(a, c));
    // (0,1,0,9)/10 vs (0,-1/10,0,11/10): (theta4-1)^2 = 1/100 on both sides
    ThetaParams d{Rational(0), Rational(1, 10), Rational(0), Rational(9, 10)};
    ThetaParams e{Rational(0), Rational(-1, 10), Rational(0), Rational(11, 10)};
    CHECK(theta_equivalent_up_to_signs(d, e));
}

TEST_CASE("pvi residual: 10-branch seed is an exact solution") {
    PviSolution sol = seed10();
    ResidualReport rep = pvi_residual(sol);
    CHECK(rep.is_zero);
    CHECK(rep.residual.is_zero());
    CHECK(rep.max_degree > 0);
}

TEST_CASE("pvi residual: perturbing theta2 off its sign orbit breaks it") {
    PviSolution sol = seed10();
    sol.theta.t2 = Rational(1, 5) + Rational(1);
    ResidualReport rep = pvi_residual(sol);
    CHECK_FALSE(rep.is_zero);
    CHECK_FALSE(rep.residual.is_zero());
    // flipping the sign instead keeps the residual zero
    PviSolution flip = seed10();
    flip.theta.t2 = Rational(-1, 5);
    CHECK(pvi_residual(flip).is_zero);
}

TEST_CASE("pvi residual: solution 45 on its depth-2 tower") {
    PviSolution sol = sol45();
    ResidualReport rep = pvi_residual(sol);
    CHECK(rep.is_zero);
}

TEST_CASE("pvi residual: corrupted coefficient is detected") {
    PviSolution sol = sol45();
    // one coefficient changed: 16 s (5s-1) -> 16 s (5s-2)
    auto tw = sol.tower;
    FieldElement v = FieldElement::generator(tw, 0);
    FieldElement w = v * FieldElement::generator(tw, 1);
    FieldElement half = FieldElement::constant(tw, Rational(1, 2));
    auto base = [&](const UniPoly &p) { return FieldElement::from_base(tw, RatFunc(p)); };
    sol.y = half - (base(P({0, -32, 80})) + v * w) /
                       (base(P({1, -1}) * P({1, 3}) * Rational(2)) * v);
    ResidualReport rep = pvi_residual(sol);
    CHECK_FALSE(rep.is_zero);
}

TEST_CASE("pvi residual: degenerate inputs are rejected") {
    auto tw = Tower::make("s", {P({0, 1})}, {"u"});
    FieldElement u = FieldElement::generator(tw, 0);
    PviSolution sol;
    sol.tower = tw;
    sol.y = u;
    sol.t = FieldElement::constant(tw, Rational(3));
    sol.theta = {Rational(0), Rational(0), Rational(0), Rational(1)};
    CHECK_THROWS_AS(pvi_residual(sol), PviError);  // constant t
    sol.t = u;
    sol.y = u;
    CHECK_THROWS_AS(pvi_residual(sol), PviError);  // y == t
}
