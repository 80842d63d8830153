#include <catch2/catch_amalgamated.hpp>

#include <pvi/curve.hpp>
#include <pvi/transforms.hpp>

#include "builders.hpp"

#include <complex>

using namespace pvi;
using testdata::P;

TEST_CASE("genus: depth-1 towers") {
    CHECK(genus(Tower::make("s", {P({0, 1})}, {"u"})).genus == 0);                    // u^2 = s
    CHECK(genus(Tower::make("s", {P({225, 270, 105, 12})}, {"u"})).genus == 1);       // deg 3
    CHECK(genus(Tower::make("s", {P({0, 8, -11, 8})}, {"u"})).genus == 1);            // deg 3
    CHECK(genus(Tower::make("s", {P({-1, 0, 0, 1})}, {"u"})).genus == 1);             // s^3 - 1
    CHECK(genus(Tower::make("s", {P({0, -1, 0, 0, 0, 1})}, {"u"})).genus == 2);       // deg 5
}

TEST_CASE("genus: the four depth-2 ledger entries") {
    // 20-branch curve: R = 4, genus 1
    auto tw20 = Tower::make("s", {P({1, -10, 9}), P({1, -18, 1})}, {"v", "w1"});
    CurveInvariants g20 = genus(tw20);
    CHECK(g20.ramified_place_count == 4);
    CHECK(g20.genus == 1);

    // 30-branch curve: s(s+5)(s+2)(s-3) and s(s+5)(s+2)(s+3); R = 5, genus 2
    UniPoly base30 = P({0, 1}) * P({5, 1}) * P({2, 1});
    auto tw30 = Tower::make("s", {base30 * P({-3, 1}), base30 * P({3, 1})}, {"v", "w"});
    CurveInvariants g30 = genus(tw30);
    CHECK(g30.ramified_place_count == 5);
    CHECK(g30.genus == 2);

    // 40-branch curve: -(j-1)(j-9)(5j^2-2j+13) and 2(j-9)(j^2-1); R = 6, genus 3
    UniPoly f40 = P({-1, 1}, "j") * P({-9, 1}, "j") * P({13, -2, 5}, "j") * Rational(-1);
    UniPoly g40 = P({-9, 1}, "j") * P({-1, 0, 1}, "j") * Rational(2);
    auto tw40 = Tower::make("j", {f40, g40}, {"v", "w"});
    CurveInvariants g3 = genus(tw40);
    CHECK(g3.ramified_place_count == 6);
    CHECK(g3.genus == 3);

    // 36-branch curve: (s-2)(2s-1)(2s^2+s+2) and s^2-7s+1; R = 6, genus 3
    auto tw36 = Tower::make("s", {P({4, -8, 3, -8, 4}), P({1, -7, 1})}, {"v", "w1"});
    CHECK(genus(tw36).genus == 3);

    // 72-branch curve: R = 10, genus 7
    UniPoly f72 = P({-1, -1}, "j") * P({6, -2, 1}, "j") * P({19, -13, 4}, "j");
    UniPoly g72 = P({-1, 1}, "j") * P({-7, 2}, "j") * P({1, 1}, "j") * P({17, 1, 2}, "j") *
                  P({19, -13, 4}, "j");
    auto tw72 = Tower::make("j", {f72, g72}, {"v", "w"});
    CurveInvariants g7 = genus(tw72);
    CHECK(g7.ramified_place_count == 10);
    CHECK(g7.genus == 7);
}

TEST_CASE("degree_of_map: seeds have 10, 15, 18 branches") {
    CHECK(degree_of_map(testdata::seed10().t) == 10);
    CHECK(degree_of_map(testdata::seed15().t) == 15);
    CHECK(degree_of_map(testdata::seed18().t) == 18);
}

TEST_CASE("degree_of_map: solution 45 has twenty branches") {
    CHECK(degree_of_map(testdata::sol45().t) == 20);
}

TEST_CASE("degree_of_map: t = s^2 on u^2 = s^3 - 1") {
    auto tw = Tower::make("s", {P({-1, 0, 0, 1})}, {"u"});
    FieldElement s = FieldElement::base_variable(tw);
    FieldElement t = s * s;
    int deg = degree_of_map(t);

    // independent oracle: count preimages of a generic value numerically
    std::complex<double> tau(0.37, 0.11);
    int count = 0;
    std::complex<double> roots[2] = {std::sqrt(tau), -std::sqrt(tau)};
    for (auto s0 : roots) {
        std::complex<double> f = s0 * s0 * s0 - 1.0;
        // two lifts u = +-sqrt(f), both valid points with t = s0^2 = tau
        count += (std::abs(f) > 1e-12) ? 2 : 1;
    }
    CHECK(deg == count);
    CHECK(deg == 4);
}

TEST_CASE("degree_of_map: invariant under generator sign flips") {
    PviSolution s45 = testdata::sol45();
    for (unsigned mask = 0; mask < 4; ++mask)
        CHECK(degree_of_map(s45.t.conjugate(mask)) == 20);
}

TEST_CASE("degree_of_map: invariant under symmetries fixing {0,1,inf}") {
    PviSolution s = testdata::seed10();
    for (const char *label : {"one-minus", "reciprocal", "y-over-y-minus-1"}) {
        PviSolution m = apply_mobius(mobius_by_label(label), s);
        CHECK(degree_of_map(m.t) == 10);
    }
}

TEST_CASE("genus is preserved by the implemented symmetries") {
    // the symmetries act on (y,t) but never change the tower
    PviSolution s = testdata::sol45();
    int g0 = genus(s.tower).genus;
    for (const auto &sym : mobius_symmetries()) {
        PviSolution m = apply_mobius(sym, s);
        CHECK(genus(m.tower).genus == g0);
    }
}

TEST_CASE("degree doubling along the folded transform") {
    FoldedResult f10 = folded_quadratic_transform(to_seed_form(testdata::seed10()));
    CHECK(degree_of_map(f10.solution.t) == 20);
    FoldedResult f15 = folded_quadratic_transform(to_seed_form(testdata::seed15()));
    CHECK(degree_of_map(f15.solution.t) == 30);
    FoldedResult f18 = folded_quadratic_transform(to_seed_form(testdata::seed18()));
    CHECK(degree_of_map(f18.solution.t) == 36);
}
