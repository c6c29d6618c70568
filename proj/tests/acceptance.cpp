#include <chrono>
#include <cstdio>
#include <functional>
#include <string>
#include <vector>

#include <CLI11.hpp>

#include "hocat/json_io.hpp"
#include "support.hpp"

using namespace hocat;
using namespace hocat::testing;

namespace {

using Clock = std::chrono::steady_clock;

double seconds_since(Clock::time_point t0) { return std::chrono::duration<double>(Clock::now() - t0).count(); }

struct Tally {
    std::size_t cases = 0, failures = 0;
    std::string first_failure;
    void check(bool ok, const std::string& what) {
        ++cases;
        if (!ok && failures++ == 0) first_failure = what;
    }
    bool ok() const { return failures == 0; }
};

struct Outcome {
    bool pass;
    std::string detail;
};

TabularInstance load_tabular(const std::string& name) {
    return TabularInstance::from_json(read_json_file(fixture("tabular/" + name + ".json")));
}

std::string describe(const Tally& t) {
    std::string s = std::to_string(t.cases - t.failures) + "/" + std::to_string(t.cases);
    if (!t.ok()) s += ", first failure: " + t.first_failure;
    return s;
}

// X, Y with total dimension of X ⊕ Y at most `total`.
std::pair<ChainComplex, ChainComplex> random_pair(Rng& rng, std::size_t total, std::uint32_t p = 2) {
    auto X = random_complex(rng, total / 2, 3, p);
    auto Y = random_complex(rng, total - X.total_dim(), 3, p);
    return {X, Y};
}

ChainCell random_cell(Rng& rng, const ChainInstance& c, const ChainHo& ho, const ChainMap& f) {
    auto a = random_homotopic(rng, f);
    return ho.cell_of(c.homotopy_from_chain(a.f, a.g, a.k));
}

// 1. Axiom validator.
Outcome criterion1() {
    bool pass = true;
    std::string detail;
    for (const char* name : {"walking_isomorphism", "walking_arrow"}) {
        auto t0 = Clock::now();
        auto c = load_tabular(name);
        auto r = validate(c);
        double dt = seconds_since(t0);
        bool expect_valid = std::string(name) == "walking_isomorphism";
        bool ok = dt < 1.0;
        if (expect_valid) {
            ok = ok && r.valid();
        } else {
            // Every violation is an M2 item and the only failing square is
            // the arrow against itself.
            ok = ok && !r.valid() && r.count("M2") == r.violations.size() && r.violations.size() == 2;
            for (const auto& v : r.violations) {
                const auto& sq = v.detail;
                ok = ok && sq.at("i") == "a" && sq.at("p") == "a" && sq.at("u") == "id_0" && sq.at("v") == "id_1";
            }
        }
        pass = pass && ok;
        char buf[128];
        std::snprintf(buf, sizeof buf, "%s%s: %zu violations in %.3fs", detail.empty() ? "" : "; ", name,
                      r.violations.size(), dt);
        detail += buf;
    }
    return {pass, detail};
}

// 2. Germ-related pairs are oracle-equal.
Outcome criterion2(Rng& rng) {
    auto t0 = Clock::now();
    ChainInstance c(2);
    ChainOracle o(c);
    ChainHo ho(c, o);
    Tally chain;
    while (chain.cases < 500) {
        auto [X, Y] = random_pair(rng, 6);
        auto a = random_homotopic(rng, random_chain_map(rng, X, Y));
        auto H = c.homotopy_from_chain(a.f, a.g, a.k);
        auto e = random_germ_extension(rng, c, H);
        bool edge = validate_germ_edge(c, GermEdge<ChainInstance>{e.lower, e.upper, e.map}).ok();
        // Walk upwards once more so both sides can be non-standard.
        auto e2 = random_germ_extension(rng, c, e.upper);
        bool eq = ho.equal(ho.cell_of(e.lower), ho.cell_of(e.upper)) && o.equal(e.upper, e2.upper);
        chain.check(edge && eq, "chain germ pair");
    }
    Tally tab;
    for (const char* name : {"walking_isomorphism", "grid", "grid_nonfunctorial"}) {
        auto tc = load_tabular(name);
        TabularOracle to(tc);
        for (auto f : tc.morphisms())
            for (auto g : tc.hom(tc.dom(f), tc.cod(f)))
                for (const auto& H : tc.homotopies(f, g))
                    for (const auto& e : tc.germ_edges(H))
                        tab.check(validate_germ_edge(tc, e).ok() && to.equal(e.lower, e.upper),
                                  std::string(name) + " germ edge");
    }
    double dt = seconds_since(t0);
    return {chain.ok() && tab.ok() && dt < 30.0,
            "chain " + describe(chain) + "; tabular edges " + describe(tab) + "; " + std::to_string(dt) + "s"};
}

// 3. 2-category laws.
Outcome criterion3(Rng& rng) {
    ChainInstance c(2);
    ChainOracle o(c);
    ChainHo ho(c, o);
    const int n = 200;
    Tally unit_l, unit_r, assoc, wr, wl, wid, wcomp, exch;
    for (int t = 0; t < n; ++t) {
        auto [X, Y] = random_pair(rng, 6);
        auto Z = random_complex(rng, 3);
        auto W = random_complex(rng, 3);
        auto a = random_cell(rng, c, ho, random_chain_map(rng, X, Y));
        auto b = random_cell(rng, c, ho, a.g);
        auto d = random_cell(rng, c, ho, b.g);
        unit_l.check(ho.equal(ho.vcomp(ho.identity(a.g), a), a), "left unit");
        unit_r.check(ho.equal(ho.vcomp(a, ho.identity(a.f)), a), "right unit");
        assoc.check(ho.equal(ho.vcomp(d, ho.vcomp(b, a)), ho.vcomp(ho.vcomp(d, b), a)), "associativity");
        auto r = random_chain_map(rng, Y, Z);
        auto r2 = random_chain_map(rng, Z, W);
        auto l = random_chain_map(rng, Z, X);
        auto l2 = random_chain_map(rng, W, Z);
        wr.check(ho.equal(ho.whisker_right(r, ho.vcomp(b, a)), ho.vcomp(ho.whisker_right(r, b), ho.whisker_right(r, a))),
                 "right whisker of a composite");
        wl.check(ho.equal(ho.whisker_left(ho.vcomp(b, a), l), ho.vcomp(ho.whisker_left(b, l), ho.whisker_left(a, l))),
                 "left whisker of a composite");
        wid.check(ho.equal(ho.whisker_right(c.identity(Y), a), a) && ho.equal(ho.whisker_left(a, c.identity(X)), a) &&
                      ho.equal(ho.whisker_right(r, ho.identity(a.f)), ho.identity(c.compose(r, a.f))),
                  "whiskering identities");
        wcomp.check(ho.equal(ho.whisker_right(r2, ho.whisker_right(r, a)), ho.whisker_right(c.compose(r2, r), a)) &&
                        ho.equal(ho.whisker_left(ho.whisker_left(a, l), l2), ho.whisker_left(a, c.compose(l, l2))),
                    "iterated whiskering");
        auto outer = random_cell(rng, c, ho, r);
        exch.check(ho.hcomp(outer, a).exchange_holds, "exchange");
    }
    std::vector<std::pair<const char*, Tally*>> laws{{"unit_l", &unit_l}, {"unit_r", &unit_r}, {"assoc", &assoc},
                                                     {"whisker_r", &wr},  {"whisker_l", &wl},  {"whisker_id", &wid},
                                                     {"whisker_comp", &wcomp}, {"exchange", &exch}};
    bool pass = true;
    std::string detail;
    for (auto [name, t] : laws) {
        pass = pass && t->ok() && t->cases >= 200;
        detail += std::string(detail.empty() ? "" : " ") + name + "=" + describe(*t);
    }
    return {pass, detail};
}

// 4. Invertibility.
Outcome criterion4(Rng& rng) {
    ChainInstance c(2);
    ChainOracle o(c);
    ChainHo ho(c, o);
    Tally t;
    for (int k = 0; k < 200; ++k) {
        auto [X, Y] = random_pair(rng, 6);
        auto a = random_cell(rng, c, ho, random_chain_map(rng, X, Y));
        auto inv = ho.invert(a);
        t.check(ho.equal(ho.vcomp(inv, a), ho.identity(a.f)), "inverse after cell");
        t.check(ho.equal(ho.vcomp(a, inv), ho.identity(a.g)), "cell after inverse");
    }
    return {t.ok() && t.cases >= 400, describe(t) + " equalities over 200 cells"};
}

// Contraction K(x) = (0, 0, x) of the standard cylinder: D K = d0 - d1, s K = 0.
GradedMap standard_contraction(const ChainInstance& c, const ChainComplex& X) {
    auto C = c.standard_cylinder(X);
    std::vector<Matrix> comps;
    for (std::size_t n = 0; n < X.length(); ++n) {
        long dn = static_cast<long>(n);
        Matrix m = Matrix::zero(X.modulus(), C.W.dim(dn + 1), X.dim(dn));
        m.paste(2 * X.dim(dn + 1), 0, Matrix::identity(X.modulus(), X.dim(dn)));
        comps.push_back(m);
    }
    return GradedMap(X, C.W, 1, comps);
}

// 5. q-composition adds chain homotopies.
Outcome criterion5(Rng& rng) {
    Tally t;
    for (std::uint32_t p : {2u, 3u}) {
        ChainInstance c(p);
        for (int k = 0; k < (p == 2 ? 200 : 50); ++k) {
            auto [X, Y] = random_pair(rng, 6, p);
            auto a = random_homotopic(rng, random_chain_map(rng, X, Y));
            auto b = random_homotopic(rng, a.g);
            auto H = c.homotopy_from_chain(a.f, a.g, a.k);
            auto H2 = c.homotopy_from_chain(b.f, b.g, b.k);
            auto q = compose_q_detailed(c, H, H2);
            auto K = standard_contraction(c, X);
            auto Kc = compose_graded(q.alpha.graded(), K) + compose_graded(q.beta.graded(), K);
            const auto& C = q.result.C;
            bool contraction = hom_differential(Kc) == C.d0.graded() - C.d1.graded() &&
                               compose_graded(C.s.graded(), Kc).is_zero();
            bool sum = compose_graded(q.result.h.graded(), Kc) == a.k + b.k;
            t.check(contraction && sum && validate_homotopy(c, q.result).ok(), "p=" + std::to_string(p));
        }
    }
    return {t.ok() && t.cases >= 200, describe(t) + " exact matches (p=2: 200, p=3: 50)"};
}

// 6. Split factorization and equivalence data.
Outcome criterion6(Rng& rng) {
    ChainInstance c(2);
    ChainOracle o(c);
    ChainHo ho(c, o);
    Tally split, equiv;
    for (int k = 0; k < 100; ++k) {
        auto s = random_quasi_iso(rng);
        auto w = split_we(c, s);
        auto d = validate_split_we(c, s, w);
        split.check(d.ok(), d.ok() ? "" : d.failures().front());
        auto e = ho.validate_equivalence(ho.we_equivalence_data(s));
        equiv.check(e.ok(), e.ok() ? "" : e.failures().front());
    }
    return {split.ok() && equiv.ok() && split.cases >= 100,
            "split_we " + describe(split) + "; equivalence laws " + describe(equiv)};
}

// 7. Left/right conversion.
Outcome criterion7(Rng& rng) {
    ChainInstance c(2);
    ChainOracle o(c);
    ChainHo ho(c, o);
    Tally t;
    for (int k = 0; k < 100; ++k) {
        auto [X, Y] = random_pair(rng, 6);
        auto a = random_homotopic(rng, random_chain_map(rng, X, Y));
        auto H = c.homotopy_from_chain(a.f, a.g, a.k);
        auto K = left_to_right(c, H, path_object_for(c, Y));
        bool ends = c.compose(K.P.delta0, K.k) == a.f && c.compose(K.P.delta1, K.k) == a.g &&
                    validate_right_homotopy(c, K).ok();
        auto back = right_to_left(c, K);
        t.check(ends && ho.equal(ho.cell_of(back), ho.cell_of(H)), "round trip");
    }
    return {t.ok() && t.cases >= 100, describe(t)};
}

// 8. Replacement and localization on the grid.
Outcome criterion8() {
    auto t0 = Clock::now();
    auto c = load_tabular("grid");
    TabularOracle o(c);
    TabHo ho(c, o);
    Localization<TabularInstance, TabularOracle> loc(ho);
    const auto& rep = loc.replacement();
    Tally funct, nat, fc, we;
    for (auto X : c.objects()) {
        auto id = c.identity(X);
        funct.check(rep.Q(id) == c.identity(rep.Q(X)) && rep.R(id) == c.identity(rep.R(X)) &&
                        rep.r(id) == c.identity(rep.r(X)),
                    "identities");
        auto d = rep.check_object(X);
        nat.check(d.ok(), d.ok() ? "" : d.failures().front());
        if (is_fibrant_cofibrant(c, X)) fc.check(rep.r(X) == X, "r X = X");
    }
    for (auto f : c.morphisms()) {
        auto d = rep.check_morphism(f);
        nat.check(d.ok(), d.ok() ? "" : d.failures().front());
        if (is_fibrant_cofibrant(c, c.dom(f)) && is_fibrant_cofibrant(c, c.cod(f))) fc.check(rep.r(f) == f, "r f = f");
        for (auto g : c.morphisms()) {
            if (c.dom(g) != c.cod(f)) continue;
            auto gf = c.compose(g, f);
            funct.check(rep.Q(gf) == c.compose(rep.Q(g), rep.Q(f)) && rep.R(gf) == c.compose(rep.R(g), rep.R(f)) &&
                            rep.r(gf) == c.compose(rep.r(g), rep.r(f)),
                        "composites");
        }
        if (c.classify(f).is_we) {
            auto d2 = ho.validate_equivalence(loc.equivalence(f));
            we.check(d2.ok(), d2.ok() ? "" : d2.failures().front());
        }
    }
    double dt = seconds_since(t0);
    return {funct.ok() && nat.ok() && fc.ok() && we.ok() && dt < 5.0,
            "functoriality " + describe(funct) + "; naturality " + describe(nat) + "; fc identity " + describe(fc) +
                "; equivalences " + describe(we) + "; " + std::to_string(dt) + "s"};
}

// 9. Pseudofunctor structure of cofibrant replacement.
Outcome criterion9() {
    bool pass = true;
    std::string detail;
    for (const char* name : {"grid_nonfunctorial", "grid"}) {
        auto c = load_tabular(name);
        TabularOracle o(c);
        TabHo ho(c, o);
        PseudoStructure<TabularInstance, TabularOracle> ps(ho);
        const auto& rep = ps.replacement();
        Tally eqs, coh, ident;
        auto fibrant = [&](TabObject X) { return is_fibrant(c, X); };
        for (auto X : c.objects()) {
            if (!fibrant(X)) continue;
            auto d = ps.check_xi(X);
            eqs.check(d.ok(), "xi");
            if (c.functorial()) ident.check(ho.equal(ps.xi(X), ho.identity(c.identity(rep.Q(X)))), "xi = id");
        }
        for (auto f : c.morphisms()) {
            if (!fibrant(c.dom(f)) || !fibrant(c.cod(f))) continue;
            coh.check(ps.check_units(f).ok(), "units");
            for (auto g : c.morphisms()) {
                if (c.dom(g) != c.cod(f) || !fibrant(c.cod(g))) continue;
                eqs.check(ps.check_phi(g, f).ok(), "phi");
                if (c.functorial()) {
                    auto top = c.compose(rep.Q(g), rep.Q(f));
                    ident.check(ho.equal(ps.phi(g, f), ho.identity(top)), "phi = id");
                }
                for (auto h : c.morphisms())
                    if (c.dom(h) == c.cod(g) && fibrant(c.cod(h)))
                        coh.check(ps.check_associativity(h, g, f).ok(), "associativity");
            }
        }
        bool ok = eqs.ok() && coh.ok() && eqs.cases > 0 && coh.cases > 0;
        if (c.functorial()) ok = ok && ident.ok() && ident.cases > 0;
        pass = pass && ok;
        detail += std::string(detail.empty() ? "" : "; ") + name + ": equations " + describe(eqs) + ", coherence " +
                  describe(coh);
        if (c.functorial()) detail += ", identities " + describe(ident);
    }
    return {pass, detail};
}

// Degree-one maps enumerated over F_2; the first one solving D h = f - g.
bool brute_homotopic(const ChainMap& f, const ChainMap& g) {
    const auto& X = f.source();
    const auto& Y = f.target();
    std::vector<std::pair<std::size_t, std::size_t>> shapes;
    std::size_t entries = 0;
    for (std::size_t n = 0; n < X.length(); ++n) {
        long dn = static_cast<long>(n);
        shapes.push_back({Y.dim(dn + 1), X.dim(dn)});
        entries += Y.dim(dn + 1) * X.dim(dn);
    }
    auto target = f.graded() - g.graded();
    for (std::size_t bits = 0; bits < (std::size_t{1} << entries); ++bits) {
        std::vector<Matrix> comps;
        std::size_t b = 0;
        for (auto [r, cols] : shapes) {
            Matrix m(2, r, cols);
            for (std::size_t i = 0; i < r; ++i)
                for (std::size_t j = 0; j < cols; ++j) m.set(i, j, (bits >> b++) & 1u);
            comps.push_back(m);
        }
        if (hom_differential(GradedMap(X, Y, 1, comps)) == target) return true;
    }
    return false;
}

// 10. pi_0.
Outcome criterion10(Rng& rng) {
    ChainInstance c(2);
    ChainOracle o(c);
    ChainHo ho(c, o);
    auto S0 = ChainComplex::sphere(2, 0);
    std::size_t classes = ho.pi0_quotient(S0, S0).size();

    auto tc = load_tabular("grid");
    TabularOracle to(tc);
    TabHo tho(tc, to);
    Tally comp;
    std::vector<TabObject> fc;
    for (auto X : tc.objects())
        if (is_fibrant_cofibrant(tc, X)) fc.push_back(X);
    for (auto X : fc)
        for (auto Y : fc)
            for (auto Z : fc)
                for (auto f : tc.hom(X, Y))
                    for (auto f2 : tc.hom(X, Y))
                        for (auto g : tc.hom(Y, Z))
                            for (auto g2 : tc.hom(Y, Z))
                                if (tho.pi0_hom(f, f2) && tho.pi0_hom(g, g2))
                                    comp.check(tho.pi0_hom(tc.compose(g, f), tc.compose(g2, f2)), "composition");

    Tally nh;
    while (nh.cases < 1000) {
        auto [X, Y] = random_pair(rng, 6);
        auto f = random_chain_map(rng, X, Y);
        auto g = nh.cases % 2 ? random_homotopic(rng, f).g : random_chain_map(rng, X, Y);
        auto h = null_homotopy(f, g);
        bool ok = h.has_value() == brute_homotopic(f, g);
        if (h) ok = ok && hom_differential(*h) == f.graded() - g.graded();
        nh.check(ok, "null_homotopy");
    }
    return {classes == 2 && comp.ok() && comp.cases > 0 && nh.ok(),
            "pi0(S0,S0)=" + std::to_string(classes) + "; composition " + describe(comp) + "; null_homotopy " +
                describe(nh)};
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"Acceptance checks"};
    std::uint64_t seed = 1;
    app.add_option("--seed", seed, "Seed for sampled checks");
    CLI11_PARSE(app, argc, argv);

    Rng rng(seed);
    std::vector<std::pair<std::string, std::function<Outcome()>>> criteria{
        {"axiom validator", [] { return criterion1(); }},
        {"germ pairs are oracle-equal", [&] { return criterion2(rng); }},
        {"2-category laws", [&] { return criterion3(rng); }},
        {"2-cells are invertible", [&] { return criterion4(rng); }},
        {"q-composition adds chain homotopies", [&] { return criterion5(rng); }},
        {"split weak equivalences and equivalence data", [&] { return criterion6(rng); }},
        {"left/right conversion", [&] { return criterion7(rng); }},
        {"replacement and localization", [] { return criterion8(); }},
        {"replacement pseudofunctor", [] { return criterion9(); }},
        {"pi0 and null homotopies", [&] { return criterion10(rng); }},
    };
    int failed = 0;
    for (std::size_t k = 0; k < criteria.size(); ++k) {
        auto t0 = Clock::now();
        Outcome out;
        try {
            out = criteria[k].second();
        } catch (const std::exception& e) {
            out = {false, std::string("exception: ") + e.what()};
        }
        if (!out.pass) ++failed;
        std::printf("%s %zu %s (%.2fs): %s\n", out.pass ? "PASS" : "FAIL", k + 1, criteria[k].first.c_str(),
                    seconds_since(t0), out.detail.c_str());
        std::fflush(stdout);
    }
    return failed == 0 ? 0 : 1;
}
