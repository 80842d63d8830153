#include <catch2/catch_amalgamated.hpp>

#include <pvi/catalog.hpp>
#include <pvi/curve.hpp>
#include <pvi/equation.hpp>

#include <random>

using namespace pvi;

static Catalog &catalog() {
    static Catalog cat = load_catalog(PVI_CATALOG_DIR);
    return cat;
}

TEST_CASE("catalog loads all eleven records and eight towers") {
    Catalog &cat = catalog();
    CHECK(cat.towers.size() == 8);
    REQUIRE(cat.records.size() == 11);
    for (const char *id : {"seed-10", "seed-15", "seed-18", "sol-44", "sol-45", "sol-47",
                           "sol-48", "sol-49", "sol-50", "sol-51", "sol-52"})
        CHECK(cat.records.count(id) == 1);
}

TEST_CASE("sibling pairs share tower presentations") {
    Catalog &cat = catalog();
    CHECK(cat.record("sol-44").tower_ref == cat.record("sol-45").tower_ref);
    CHECK(cat.record("sol-47").tower_ref == cat.record("sol-48").tower_ref);
    CHECK(cat.record("sol-50").tower_ref == cat.record("sol-51").tower_ref);
    // structural: same Belyi map t on the shared tower
    CHECK(cat.record("sol-44").solution.t == cat.record("sol-45").solution.t);
    CHECK(cat.record("sol-47").solution.t == cat.record("sol-48").solution.t);
    CHECK(cat.record("sol-50").solution.t == cat.record("sol-51").solution.t);
}

TEST_CASE("round trip: parse(serialize(parse(x))) is stable") {
    Catalog &cat = catalog();
    auto resolver = [&](const std::string &name) { return cat.tower(name); };
    for (const auto &[id, rec] : cat.records) {
        std::string once = serialize_record(rec);
        SolutionRecord reparsed = parse_record(once, resolver);
        CHECK(serialize_record(reparsed) == once);
        CHECK(reparsed.solution.y == rec.solution.y);
        CHECK(reparsed.solution.t == rec.solution.t);
        CHECK(reparsed.solution.theta == rec.solution.theta);
    }
    for (const auto &[name, spec] : cat.towers) {
        std::string once = serialize_tower(spec);
        TowerSpec reparsed = parse_tower(once);
        CHECK(serialize_tower(reparsed) == once);
        CHECK(*reparsed.tower == *spec.tower);
    }
}

TEST_CASE("sol-52 record reproduces the long y-numerator coefficients") {
    // spot check on the exact transcription: the cubic factor j^3+27j^2-57j+79
    const SolutionRecord &rec = catalog().record("sol-52");
    std::string text = serialize_record(rec);
    CHECK(text.find("j^3 + 27*j^2 - 57*j + 79") != std::string::npos);
    // and theta serializes as four reduced fractions
    CHECK(text.find("theta 1/12 1/12 1/12 11/12") != std::string::npos);
}

TEST_CASE("every shipped record has an exactly zero residual") {
    Catalog &cat = catalog();
    for (const auto &id : cat.record_order) {
        INFO("record " << id);
        ResidualReport rep = pvi_residual(cat.record(id).solution);
        CHECK(rep.is_zero);
    }
}

TEST_CASE("every shipped record matches its expected genus and degree") {
    Catalog &cat = catalog();
    for (const auto &id : cat.record_order) {
        INFO("record " << id);
        const SolutionRecord &rec = cat.record(id);
        CHECK(genus(rec.solution.tower).genus == rec.expected_genus);
        CHECK(degree_of_map(rec.solution.t) == rec.expected_degree);
    }
}

TEST_CASE("semantic errors carry diagnostics") {
    auto resolver = [](const std::string &) -> TowerSpec {
        throw CatalogError("no towers here");
    };
    // unknown generator x with no radicand declaration
    CHECK_THROWS_AS(parse_record("record bad\n"
                                 "base s\n"
                                 "radicand u = s\n"
                                 "theta 0 0 0 1\n"
                                 "y = 1/2 + x\n"
                                 "t = s\n",
                                 resolver),
                    CatalogError);
    // radicand not squarefree after normalization
    CHECK_THROWS_AS(parse_record("record bad2\n"
                                 "base s\n"
                                 "radicand u = s^2*(s - 1)\n"
                                 "theta 0 0 0 1\n"
                                 "y = u\n"
                                 "t = s\n",
                                 resolver),
                    TowerError);
    // tower depth exceeded
    CHECK_THROWS_AS(parse_tower("tower deep\n"
                                "base s\n"
                                "radicand a = s\n"
                                "radicand b = s - 1\n"
                                "radicand c = s - 2\n"),
                    TowerError);
    // syntax error with position
    try {
        parse_record("record bad3\nbase s\nradicand u = s\ntheta 0 0 0 1\ny = 1/2 + )\nt = s\n",
                     resolver);
        FAIL("expected ParseError");
    } catch (const ParseError &e) {
        CHECK(e.line == 5);
    }
}

TEST_CASE("parser fuzzing: mutations produce diagnostics, never crashes") {
    Catalog &cat = catalog();
    auto resolver = [&](const std::string &name) { return cat.tower(name); };
    std::string base = serialize_record(cat.record("sol-45"));
    std::mt19937 rng(424242);
    std::uniform_int_distribution<std::size_t> pos(0, base.size() - 1);
    std::uniform_int_distribution<int> mode(0, 2);
    const std::string junk = "()+-*/^=abc019 #\n";
    std::uniform_int_distribution<std::size_t> pick(0, junk.size() - 1);
    int parsed_ok = 0, diagnosed = 0;
    for (int i = 0; i < 300; ++i) {
        std::string mutated = base;
        int edits = 1 + (i % 3);
        for (int e = 0; e < edits; ++e) {
            std::size_t p = pos(rng);
            switch (mode(rng)) {
                case 0: mutated[p] = junk[pick(rng)]; break;
                case 1: mutated.insert(p, 1, junk[pick(rng)]); break;
                default: mutated.erase(p, 1); break;
            }
        }
        try {
            parse_record(mutated, resolver);
            ++parsed_ok;
        } catch (const std::runtime_error &) {
            ++diagnosed;  // ParseError, CatalogError, TowerError, PviError
        }
    }
    CHECK(parsed_ok + diagnosed == 300);
    CHECK(diagnosed > 0);
}
