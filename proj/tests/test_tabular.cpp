#include <doctest.h>

#include "hocat/json_io.hpp"
#include "support.hpp"

using namespace hocat;
using namespace hocat::testing;

namespace {

nlohmann::json load(const std::string& name) { return read_json_file(fixture("tabular/" + name + ".json")); }

TabularInstance load_tabular(const std::string& name) { return TabularInstance::from_json(load(name)); }

}  // namespace

TEST_CASE("validator verdicts on fixtures") {
    auto r = validate(load_tabular("walking_isomorphism"));
    CHECK(r.valid());
    CHECK(validate(load_tabular("grid")).valid());
    CHECK(validate(load_tabular("grid_nonfunctorial")).valid());

    auto e = validate(load_tabular("empty"));
    CHECK_FALSE(e.valid());
    CHECK(e.count("M1") == 2);

    auto a = validate(load_tabular("walking_arrow"));
    CHECK_FALSE(a.valid());
    CHECK(a.count("M2") == 2);
    CHECK(a.violations.size() == 2);

    auto g = validate(load_tabular("germ_toy"));
    CHECK_FALSE(g.valid());
    CHECK(g.count("M1") > 0);
}

TEST_CASE("validator properties") {
    auto grid = load_tabular("grid");
    auto r = validate(grid);
    CHECK(r.factorizations_functorial);
    CHECK(r.factorizations_normal);
    CHECK(r.two_for_one);
    CHECK(r.squares_checked > 0);
    auto nf = validate(load_tabular("grid_nonfunctorial"));
    CHECK(nf.factorizations_functorial);
    auto js = to_json(grid, r);
    CHECK(js["valid"] == true);
    CHECK(js["objects"] == 6);
    CHECK(js["violation_counts"]["M2"] == 0);
}

TEST_CASE("broken composition tables are reported") {
    auto j = load("walking_isomorphism");
    j["composition"][0][2] = j["composition"][1][2];
    auto c = TabularInstance::from_json(j);
    auto r = validate(c);
    CHECK_FALSE(r.valid());
    CHECK(r.count("category") > 0);
}

TEST_CASE("malformed fixtures are rejected") {
    CHECK_THROWS_AS(TabularInstance::from_json(nlohmann::json::array()), InvalidInput);
    auto j = load("grid");
    j["morphisms"][3]["dom"] = "nowhere";
    CHECK_THROWS_AS(TabularInstance::from_json(j), InvalidInput);
    auto k = load("grid");
    k.erase("objects");
    CHECK_THROWS_AS(TabularInstance::from_json(k), InvalidInput);
}

TEST_CASE("lifts are enumerated exhaustively") {
    auto c = load_tabular("grid");
    std::size_t squares = 0;
    for (auto i : c.morphisms())
        for (auto p : c.morphisms())
            for (auto u : c.hom(c.dom(i), c.dom(p)))
                for (auto v : c.hom(c.cod(i), c.cod(p))) {
                    LiftProblem<TabMorphism> sq{i, p, u, v};
                    if (!square_commutes(c, sq)) continue;
                    ++squares;
                    std::size_t brute = 0;
                    for (auto h : c.hom(c.cod(i), c.dom(p)))
                        if (lift_valid(c, sq, h)) ++brute;
                    auto ls = c.lifts(sq);
                    CHECK(ls.size() == brute);
                    for (auto h : ls) CHECK(lift_valid(c, sq, h));
                }
    CHECK(squares > 0);
}

TEST_CASE("oracle classes") {
    auto c = load_tabular("grid");
    TabularOracle o(c);
    CHECK(o.homotopy_count() == 80);
    CHECK(o.class_count() == 18);
    auto w = load_tabular("walking_isomorphism");
    TabularOracle ow(w);
    CHECK(ow.homotopy_count() == 16);
    CHECK(ow.class_count() == 4);

    // Identity homotopies in their different forms share a class.
    for (auto f : c.morphisms()) {
        auto a = identity_homotopy(c, f);
        auto b = identity_homotopy_on_codomain(c, f);
        CHECK(o.equal(a, b));
        CHECK(o.equal(a, invert_homotopy(a)));
        CHECK(o.equal(a, a));
    }
    // Germ-related homotopies share a class.
    for (auto f : c.morphisms())
        for (auto g : c.hom(c.dom(f), c.cod(f)))
            for (const auto& H : c.homotopies(f, g))
                for (const auto& e : c.germ_edges(H)) {
                    CHECK(validate_germ_edge(c, e).ok());
                    CHECK(o.equal(e.lower, e.upper));
                }
}

TEST_CASE("oracle is stable under recomputation") {
    auto c = load_tabular("grid_nonfunctorial");
    TabularOracle a(c), b(c);
    CHECK(a.class_count() == b.class_count());
    for (auto f : c.morphisms())
        for (auto g : c.hom(c.dom(f), c.cod(f))) {
            auto hs = c.homotopies(f, g);
            for (const auto& x : hs)
                for (const auto& y : hs) CHECK(a.equal(x, y) == b.equal(x, y));
        }
}

TEST_CASE("factorization maps on the functorial grid") {
    auto c = load_tabular("grid");
    for (auto sys : {FactorSystem::CofThenTrivFib, FactorSystem::TrivCofThenFib})
        for (auto f : c.morphisms()) {
            auto fa = c.factorize(f, sys);
            CHECK(factorization_valid(c, f, fa));
            auto m = c.factorization_map(sys, f, f, c.identity(c.dom(f)), c.identity(c.cod(f)));
            CHECK(m == c.identity(c.cod(fa.left)));
        }
}
