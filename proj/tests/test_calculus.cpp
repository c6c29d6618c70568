#include <doctest.h>

#include "hocat/json_io.hpp"
#include "support.hpp"

using namespace hocat;
using namespace hocat::testing;

namespace {

TabularInstance load_tabular(const std::string& name) {
    return TabularInstance::from_json(read_json_file(fixture("tabular/" + name + ".json")));
}

Homotopy<TabularInstance> toy_homotopy(const TabularInstance& c, const char* w, const char* d0, const char* d1,
                                       const char* s, const char* h) {
    auto X = c.object("X");
    auto C = make_cylinder(c, X, c.object(w), c.object("T"), c.morphism(d0), c.morphism(d1), c.morphism(s),
                           c.morphism("x"));
    return {C, c.morphism(h), c.morphism("f"), c.morphism("g")};
}

}  // namespace

TEST_CASE("cylinder validation catches broken data") {
    ChainInstance c(2);
    auto S0 = ChainComplex::sphere(2, 0);
    auto C = c.standard_cylinder(S0);
    CHECK(validate_cylinder(c, C).ok());
    auto bad = C;
    bad.d1 = bad.d0;
    CHECK_FALSE(validate_cylinder(c, bad).ok());
    bad = C;
    bad.s = c.zero_map(C.W, C.Z);
    CHECK_FALSE(validate_cylinder(c, bad).ok());
    bad = C;
    bad.s = c.zero_map(C.W, ChainComplex::sphere(2, 1));
    CHECK_THROWS_AS(validate_cylinder(c, bad), InvalidInput);
}

TEST_CASE("whiskering, inversion and identities") {
    ChainInstance c(2);
    Rng rng(31);
    for (int t = 0; t < 100; ++t) {
        auto X = random_complex(rng, 3), Y = random_complex(rng, 3), Z = random_complex(rng, 3);
        auto hp = random_homotopic(rng, random_chain_map(rng, X, Y));
        auto H = c.homotopy_from_chain(hp.f, hp.g, hp.k);
        auto r = random_chain_map(rng, Y, Z);
        auto l = random_chain_map(rng, Z, X);
        auto Hr = whisker_right(c, r, H);
        CHECK(validate_homotopy(c, Hr).ok());
        CHECK(Hr.f == c.compose(r, hp.f));
        auto Hl = whisker_left(c, H, l);
        CHECK(validate_homotopy(c, Hl).ok());
        CHECK(Hl.g == c.compose(hp.g, l));
        auto Hi = invert_homotopy(H);
        CHECK(validate_homotopy(c, Hi).ok());
        CHECK(Hi.f == hp.g);
        CHECK(invert_homotopy(Hi) == H);
        auto I0 = identity_homotopy(c, hp.f);
        CHECK(validate_homotopy(c, I0).ok());
        CHECK(validate_homotopy(c, identity_homotopy_on_codomain(c, hp.f)).ok());
        CHECK(whisker_right(c, c.identity(Y), H) == H);
    }
}

TEST_CASE("reduction witnesses are cylinder maps") {
    ChainInstance c(2);
    ChainOracle o(c);
    Rng rng(32);
    for (int t = 0; t < 150; ++t) {
        auto X = random_complex(rng, 3), Y = random_complex(rng, 3);
        auto hp = random_homotopic(rng, random_chain_map(rng, X, Y));
        auto H = c.homotopy_from_chain(hp.f, hp.g, hp.k);
        auto ext = random_germ_extension(rng, c, H);
        CHECK(validate_germ_edge(c, GermEdge<ChainInstance>{ext.lower, ext.upper, ext.map}).ok());
        auto red = reduce_to_q(c, ext.upper);
        CHECK(red.result.C.quillen);
        CHECK(red.result.C.fibrant);
        CHECK(red.result.f == hp.f);
        CHECK(red.result.g == hp.g);
        CHECK(validate_homotopy(c, red.result).ok());
        CHECK_FALSE(red.witnesses.empty());
        for (const auto& e : red.witnesses) CHECK(validate_germ_edge(c, e).ok());
        CHECK(o.equal(red.result, ext.upper));
        CHECK(o.equal(red.result, H));
    }
}

TEST_CASE("reduction of a q-homotopy is trivial") {
    ChainInstance c(2);
    auto S0 = ChainComplex::sphere(2, 0);
    auto id = c.identity(S0);
    auto H = c.homotopy_from_chain(id, id, GradedMap::zero(S0, S0, 1));
    auto red = reduce_to_q(c, H);
    CHECK(red.result == H);
    REQUIRE(red.witnesses.size() == 1);
    CHECK(validate_germ_edge(c, red.witnesses[0]).ok());
}

TEST_CASE("q-composition glues chain homotopies") {
    ChainInstance c(2);
    ChainOracle o(c);
    Rng rng(33);
    for (int t = 0; t < 150; ++t) {
        auto X = random_complex(rng, 3), Y = random_complex(rng, 3);
        auto a = random_homotopic(rng, random_chain_map(rng, X, Y));
        auto b = random_homotopic(rng, a.g);
        auto H = c.homotopy_from_chain(a.f, a.g, a.k);
        auto H2 = c.homotopy_from_chain(b.f, b.g, b.k);
        auto q = compose_q_detailed(c, H, H2);
        CHECK(validate_homotopy(c, q.result).ok());
        CHECK(q.result.C.quillen);
        CHECK(c.compose(q.result.C.s, q.result.C.d0) == c.identity(X));
        CHECK(c.compose(q.alpha, H.C.d1) == c.compose(q.beta, H2.C.d0));
        CHECK(c.compose(q.result.h, q.alpha) == H.h);
        CHECK(c.compose(q.result.h, q.beta) == H2.h);
        CHECK(o.equal(q.result, c.homotopy_from_chain(a.f, b.g, a.k + b.k)));
    }
    auto S0 = ChainComplex::sphere(2, 0);
    auto zero = GradedMap::zero(S0, S0, 1);
    auto I = c.homotopy_from_chain(c.identity(S0), c.identity(S0), zero);
    auto Z = c.homotopy_from_chain(c.zero_map(S0, S0), c.zero_map(S0, S0), zero);
    CHECK_THROWS_AS(compose_q(c, I, Z), InvalidInput);
}

TEST_CASE("left and right homotopies correspond") {
    ChainInstance c(2);
    ChainOracle o(c);
    Rng rng(34);
    for (int t = 0; t < 150; ++t) {
        auto X = random_complex(rng, 3), Y = random_complex(rng, 3);
        auto a = random_homotopic(rng, random_chain_map(rng, X, Y));
        auto H = c.homotopy_from_chain(a.f, a.g, a.k);
        auto K = left_to_right(c, H, path_object_for(c, Y));
        CHECK(validate_right_homotopy(c, K).ok());
        CHECK(c.compose(K.P.delta0, K.k) == a.f);
        CHECK(c.compose(K.P.delta1, K.k) == a.g);
        auto back = right_to_left(c, K);
        CHECK(validate_homotopy(c, back).ok());
        CHECK(o.equal(back, H));
        auto H2 = right_to_left(c, c.right_homotopy_from_chain(a.f, a.g, a.k));
        CHECK(o.equal(H2, H));
    }
}

TEST_CASE("germ search follows reduction witnesses") {
    ChainInstance c(2);
    Rng rng(35);
    for (int t = 0; t < 60; ++t) {
        auto X = random_complex(rng, 3), Y = random_complex(rng, 3);
        auto a = random_homotopic(rng, random_chain_map(rng, X, Y));
        auto ext = random_germ_extension(rng, c, c.homotopy_from_chain(a.f, a.g, a.k));
        auto red = reduce_to_q(c, ext.upper);
        auto res = germ_search(c, ext.upper, red.result);
        REQUIRE(res.found);
        CHECK(res.path.size() <= 2);
        CHECK_FALSE(res.exhaustive);
        CHECK(validate_zig_zag(c, ext.upper, red.result, res.path).ok());
    }
}

TEST_CASE("germ search is exhaustive on tables") {
    auto c = load_tabular("germ_toy");
    auto Ha = toy_homotopy(c, "W1", "a0", "a1", "s1", "ha");
    auto Hb = toy_homotopy(c, "W2", "b0", "b1", "s2", "hb");
    CHECK(validate_homotopy(c, Ha).ok());
    CHECK(validate_homotopy(c, Hb).ok());
    auto res = germ_search(c, Ha, Hb);
    CHECK(res.exhaustive);
    CHECK_FALSE(res.found);
    CHECK(germ_search(c, Ha, Ha).found);
    TabularOracle o(c);
    CHECK_FALSE(o.equal(Ha, Hb));
    CHECK(o.equal(Ha, Ha));
}

TEST_CASE("split weak equivalences") {
    ChainInstance c(2);
    Rng rng(36);
    for (int t = 0; t < 100; ++t) {
        auto s = random_quasi_iso(rng);
        auto w = split_we(c, s);
        CHECK(validate_split_we(c, s, w).ok());
    }
    auto S0 = ChainComplex::sphere(2, 0);
    CHECK_THROWS_AS(split_we(c, c.from_initial(S0)), PreconditionFailed);

    auto g = load_tabular("grid");
    for (auto f : g.morphisms()) {
        if (!g.classify(f).is_we) continue;
        if (!is_fibrant(g, g.dom(f)) || !is_cofibrant(g, g.cod(f))) continue;
        CHECK(validate_split_we(g, f, split_we(g, f)).ok());
    }
}

TEST_CASE("lifting 2-cells along trivial fibrations") {
    ChainInstance c(2);
    ChainOracle o(c);
    Rng rng(37);
    for (int t = 0; t < 100; ++t) {
        auto X = random_complex(rng, 3), Y = random_complex(rng, 3);
        auto a = random_homotopic(rng, random_chain_map(rng, X, Y));
        auto H = c.homotopy_from_chain(a.f, a.g, a.k);
        auto L = lift_2cell(c, c.identity(Y), H, a.f, a.g);
        CHECK(L == H);

        auto p = c.mapping_cylinder(random_chain_map(rng, random_complex(rng, 3), Y)).right;
        auto M = c.dom(p);
        auto f = random_chain_map(rng, X, M);
        auto b = random_homotopic(rng, f);
        auto G = whisker_right(c, p, c.homotopy_from_chain(b.f, b.g, b.k));
        auto fwd = lift_2cell<ChainInstance>(c, p, G, b.f, b.g, [&](const auto& sq) {
            return c.solve_lift(sq, SolveOrder::Forward);
        });
        auto rev = lift_2cell<ChainInstance>(c, p, G, b.f, b.g, [&](const auto& sq) {
            return c.solve_lift(sq, SolveOrder::Reverse);
        });
        CHECK(validate_homotopy(c, fwd).ok());
        CHECK(c.compose(p, fwd.h) == G.h);
        CHECK(o.equal(fwd, rev));
    }
}
