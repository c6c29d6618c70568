#include <set>

#include "hocat/tabular.hpp"

namespace hocat {

using json = nlohmann::json;

std::size_t ValidationReport::count(const std::string& axiom) const {
    std::size_t n = 0;
    for (const auto& v : violations)
        if (v.axiom == axiom) ++n;
    return n;
}

namespace {

using M = TabMorphism;
using O = TabObject;

class Validator {
public:
    Validator(const TabularInstance& c, ValidationReport& r) : c_(c), r_(r) {}

    void run() {
        if (!category()) return;
        m1();
        m2();
        m3();
        m4();
        m5();
        extras();
    }

private:
    void add(const char* axiom, std::string message, json detail = json::object()) {
        r_.violations.push_back({axiom, std::move(message), std::move(detail)});
    }
    std::string n(M f) const { return c_.name_of(f); }
    std::string n(O X) const { return c_.name_of(X); }
    bool composable(M g, M f) const { return c_.dom(g) == c_.cod(f); }

    bool category() {
        for (const auto& s : c_.load_issues()) add("category", s);
        if (!r_.violations.empty()) return false;
        auto ms = c_.morphisms();
        for (auto f : ms)
            for (auto g : ms) {
                if (!composable(g, f)) continue;
                for (auto h : ms) {
                    if (!composable(h, g)) continue;
                    if (c_.compose(c_.compose(h, g), f) != c_.compose(h, c_.compose(g, f)))
                        add("category", "composition is not associative", {{"h", n(h)}, {"g", n(g)}, {"f", n(f)}});
                }
            }
        return r_.violations.empty();
    }

    std::size_t count_maps(O X, O Y, auto pred) const {
        std::size_t k = 0;
        for (auto u : c_.hom(X, Y))
            if (pred(u)) ++k;
        return k;
    }

    void m1() {
        auto objs = c_.objects();
        if (!c_.has_initial()) {
            add("M1", "no initial object");
        } else {
            for (auto X : objs)
                if (c_.hom(c_.initial(), X).size() != 1)
                    add("M1", "initial object does not have a unique map to " + n(X), {{"object", n(X)}});
        }
        if (!c_.has_terminal()) {
            add("M1", "no terminal object");
        } else {
            for (auto X : objs)
                if (c_.hom(X, c_.terminal()).size() != 1)
                    add("M1", "terminal object does not have a unique map from " + n(X), {{"object", n(X)}});
        }
        for (auto X : objs)
            for (auto Y : objs) {
                json d{{"left", n(X)}, {"right", n(Y)}};
                auto cp = c_.coproduct_table().find({X.id, Y.id});
                if (cp == c_.coproduct_table().end()) {
                    add("M1", "missing coproduct", d);
                } else {
                    const auto& e = cp->second;
                    bool ok = c_.dom(e.in0) == X && c_.dom(e.in1) == Y && c_.cod(e.in0) == e.object &&
                              c_.cod(e.in1) == e.object;
                    for (auto T : objs)
                        for (auto f : c_.hom(X, T))
                            for (auto g : c_.hom(Y, T))
                                if (ok && count_maps(e.object, T, [&](M u) {
                                              return c_.compose(u, e.in0) == f && c_.compose(u, e.in1) == g;
                                          }) != 1)
                                    ok = false;
                    if (!ok) add("M1", "coproduct is not universal", d);
                }
                auto pr = c_.product_table().find({X.id, Y.id});
                if (pr == c_.product_table().end()) {
                    add("M1", "missing product", d);
                } else {
                    const auto& e = pr->second;
                    bool ok = c_.cod(e.pr0) == X && c_.cod(e.pr1) == Y && c_.dom(e.pr0) == e.object &&
                              c_.dom(e.pr1) == e.object;
                    for (auto T : objs)
                        for (auto f : c_.hom(T, X))
                            for (auto g : c_.hom(T, Y))
                                if (ok && count_maps(T, e.object, [&](M u) {
                                              return c_.compose(e.pr0, u) == f && c_.compose(e.pr1, u) == g;
                                          }) != 1)
                                    ok = false;
                    if (!ok) add("M1", "product is not universal", d);
                }
            }
        auto ms = c_.morphisms();
        for (auto f : ms)
            for (auto g : ms) {
                json d{{"f", n(f)}, {"g", n(g)}};
                if (c_.dom(f) == c_.dom(g)) {
                    auto it = c_.pushout_table().find({f.id, g.id});
                    if (it == c_.pushout_table().end()) {
                        add("M1", "missing pushout", d);
                    } else {
                        const auto& e = it->second;
                        bool ok = c_.dom(e.in_left) == c_.cod(f) && c_.dom(e.in_right) == c_.cod(g) &&
                                  c_.cod(e.in_left) == e.object && c_.cod(e.in_right) == e.object &&
                                  c_.compose(e.in_left, f) == c_.compose(e.in_right, g);
                        for (auto T : c_.objects())
                            for (auto u : c_.hom(c_.cod(f), T))
                                for (auto v : c_.hom(c_.cod(g), T)) {
                                    if (!ok) break;
                                    if (c_.compose(u, f) != c_.compose(v, g)) continue;
                                    ok = count_maps(e.object, T, [&](M t) {
                                             return c_.compose(t, e.in_left) == u && c_.compose(t, e.in_right) == v;
                                         }) == 1;
                                }
                        if (!ok) add("M1", "pushout is not universal", d);
                    }
                }
                if (c_.cod(f) == c_.cod(g)) {
                    auto pb = c_.pullback(f, g);
                    if (!pb) {
                        add("M1", "missing pullback", d);
                    } else {
                        const auto& e = *pb;
                        bool ok = c_.cod(e.pr0) == c_.dom(f) && c_.cod(e.pr1) == c_.dom(g) &&
                                  c_.dom(e.pr0) == e.object && c_.dom(e.pr1) == e.object &&
                                  c_.compose(f, e.pr0) == c_.compose(g, e.pr1);
                        for (auto T : c_.objects())
                            for (auto u : c_.hom(T, c_.dom(f)))
                                for (auto v : c_.hom(T, c_.dom(g))) {
                                    if (!ok) break;
                                    if (c_.compose(f, u) != c_.compose(g, v)) continue;
                                    ok = count_maps(T, e.object, [&](M t) {
                                             return c_.compose(e.pr0, t) == u && c_.compose(e.pr1, t) == v;
                                         }) == 1;
                                }
                        if (!ok) add("M1", "pullback is not universal", d);
                    }
                }
            }
    }

    void m2() {
        auto ms = c_.morphisms();
        for (auto i : ms)
            for (auto p : ms) {
                auto ci = c_.classify(i), cp = c_.classify(p);
                const std::pair<bool, const char*> clauses[] = {
                    {ci.trivial_cofibration() && cp.is_fib, "trivial cofibration against fibration"},
                    {ci.is_cof && cp.trivial_fibration(), "cofibration against trivial fibration"}};
                for (const auto& [applies, clause] : clauses) {
                    if (!applies) continue;
                    for (auto u : c_.hom(c_.dom(i), c_.dom(p)))
                        for (auto v : c_.hom(c_.cod(i), c_.cod(p))) {
                            if (c_.compose(p, u) != c_.compose(v, i)) continue;
                            ++r_.squares_checked;
                            if (c_.lifts({i, p, u, v}).empty())
                                add("M2", std::string("no lift: ") + clause,
                                    {{"clause", clause}, {"i", n(i)}, {"p", n(p)}, {"u", n(u)}, {"v", n(v)}});
                        }
                }
            }
        for (const auto& [k, h] : c_.lift_table()) {
            TabularInstance::Square sq{M{k[0]}, M{k[1]}, M{k[2]}, M{k[3]}};
            if (!square_commutes(c_, sq) || !lift_valid(c_, sq, M{h}))
                add("tables", "recorded lift is not a diagonal of its square", {{"h", n(M{h})}});
        }
    }

    void m3() {
        auto ms = c_.morphisms();
        for (auto f : ms) {
            bool iso = false;
            for (auto g : c_.hom(c_.cod(f), c_.dom(f)))
                if (c_.compose(g, f) == c_.identity(c_.dom(f)) && c_.compose(f, g) == c_.identity(c_.cod(f)))
                    iso = true;
            auto cl = c_.classify(f);
            if (iso && !(cl.is_we && cl.is_fib && cl.is_cof))
                add("M3", "isomorphism outside some class", {{"map", n(f)}});
        }
        const char* names[] = {"weak equivalences", "fibrations", "cofibrations"};
        auto in = [&](M f, int k) {
            auto cl = c_.classify(f);
            return k == 0 ? cl.is_we : k == 1 ? cl.is_fib : cl.is_cof;
        };
        for (auto f : ms)
            for (auto g : ms) {
                if (!composable(g, f)) continue;
                auto gf = c_.compose(g, f);
                for (int k = 1; k < 3; ++k)
                    if (in(f, k) && in(g, k) && !in(gf, k))
                        add("M3", std::string(names[k]) + " not closed under composition",
                            {{"g", n(g)}, {"f", n(f)}});
            }
        // Retract pairs (s, r) with r s = id, per pair of objects.
        auto objs = c_.objects();
        std::size_t no = objs.size();
        std::vector<std::vector<std::pair<M, M>>> split(no * no);
        for (auto X : objs)
            for (auto Xp : objs)
                for (auto s : c_.hom(X, Xp))
                    for (auto r : c_.hom(Xp, X))
                        if (c_.compose(r, s) == c_.identity(X))
                            split[static_cast<std::size_t>(X.id) * no + static_cast<std::size_t>(Xp.id)].push_back({s, r});
        for (auto f : ms)
            for (auto g : ms) {
                if (f == g) continue;
                ++r_.retract_pairs_checked;
                const auto& top = split[static_cast<std::size_t>(c_.dom(f).id) * no + static_cast<std::size_t>(c_.dom(g).id)];
                const auto& bot = split[static_cast<std::size_t>(c_.cod(f).id) * no + static_cast<std::size_t>(c_.cod(g).id)];
                bool retract = false;
                for (const auto& [a1, a2] : top) {
                    for (const auto& [b1, b2] : bot)
                        if (c_.compose(g, a1) == c_.compose(b1, f) && c_.compose(f, a2) == c_.compose(b2, g)) {
                            retract = true;
                            break;
                        }
                    if (retract) break;
                }
                if (!retract) continue;
                for (int k = 0; k < 3; ++k)
                    if (in(g, k) && !in(f, k))
                        add("M3", std::string(names[k]) + " not closed under retracts",
                            {{"retract", n(f)}, {"of", n(g)}});
            }
    }

    void m4() {
        for (auto f : c_.morphisms())
            for (auto sys : {FactorSystem::CofThenTrivFib, FactorSystem::TrivCofThenFib}) {
                json d{{"map", n(f)}, {"system", to_string(sys)}};
                auto fa = c_.try_factorize(f, sys);
                if (!fa) {
                    add("M4", "missing factorization", d);
                    continue;
                }
                if (!composable(fa->right, fa->left) || c_.compose(fa->right, fa->left) != f)
                    add("M4", "factorization does not compose to the map", d);
                else if (!factor_flags_match(sys, c_.classify(fa->left), c_.classify(fa->right)))
                    add("M4", "factors are in the wrong classes", d);
            }
    }

    void m5() {
        auto ms = c_.morphisms();
        for (auto f : ms)
            for (auto g : ms) {
                if (!composable(g, f)) continue;
                auto gf = c_.compose(g, f);
                int k = int(c_.classify(f).is_we) + int(c_.classify(g).is_we) + int(c_.classify(gf).is_we);
                if (k == 2) add("M5", "two out of three fails", {{"g", n(g)}, {"f", n(f)}});
            }
    }

    bool tables_complete() const {
        for (auto f : c_.morphisms())
            for (auto sys : {FactorSystem::CofThenTrivFib, FactorSystem::TrivCofThenFib})
                if (!c_.try_factorize(f, sys)) return false;
        return true;
    }

    void extras() {
        auto ms = c_.morphisms();
        for (auto f : ms)
            for (auto g : c_.hom(c_.cod(f), c_.dom(f)))
                if (c_.compose(g, f) == c_.identity(c_.dom(f)) && c_.classify(f).is_we != c_.classify(g).is_we)
                    r_.two_for_one = false;

        if (tables_complete()) {
            functoriality();
            normality();
        } else {
            r_.factorizations_functorial = r_.factorizations_normal = false;
        }
        if (c_.functorial() && !r_.factorizations_functorial)
            add("M4", "factorizations declared functorial are not functorial");
        if (c_.normal() && !r_.factorizations_normal) add("M4", "factorizations declared normal are not normal");

        // Weak equivalences generated by split weak equivalences.
        std::set<int> gen;
        for (auto f : ms) {
            if (!c_.classify(f).is_we) continue;
            for (auto g : c_.hom(c_.cod(f), c_.dom(f)))
                if (c_.compose(g, f) == c_.identity(c_.dom(f)) || c_.compose(f, g) == c_.identity(c_.cod(f)))
                    gen.insert(f.id);
        }
        std::set<int> closure = gen;
        for (bool grew = true; grew;) {
            grew = false;
            for (int a : std::set<int>(closure))
                for (int b : gen) {
                    if (!composable(M{b}, M{a})) continue;
                    if (closure.insert(c_.compose(M{b}, M{a}).id).second) grew = true;
                }
        }
        for (auto f : ms)
            if (c_.classify(f).is_we && !closure.count(f.id)) r_.we_not_split_composites.push_back(n(f));
    }

    struct Sq {
        M f, g, u, v;
    };

    void functoriality() {
        auto ms = c_.morphisms();
        for (auto sys : {FactorSystem::CofThenTrivFib, FactorSystem::TrivCofThenFib}) {
            std::vector<Sq> squares;
            for (auto f : ms)
                for (auto g : ms)
                    for (auto u : c_.hom(c_.dom(f), c_.dom(g)))
                        for (auto v : c_.hom(c_.cod(f), c_.cod(g)))
                            if (c_.compose(v, f) == c_.compose(g, u)) squares.push_back({f, g, u, v});
            std::vector<std::optional<M>> F;
            for (const auto& s : squares) {
                F.push_back(c_.try_factorization_map(sys, s.f, s.g, s.u, s.v));
                if (!F.back()) r_.factorizations_functorial = false;
            }
            if (!r_.factorizations_functorial) return;
            for (std::size_t a = 0; a < squares.size(); ++a) {
                const auto& s = squares[a];
                if (s.f == s.g && s.u == c_.identity(c_.dom(s.f)) && s.v == c_.identity(c_.cod(s.f)) &&
                    *F[a] != c_.identity(c_.cod(c_.factorize(s.f, sys).left)))
                    r_.factorizations_functorial = false;
                for (std::size_t b = 0; b < squares.size(); ++b) {
                    const auto& t = squares[b];
                    if (t.f != s.g) continue;
                    auto uu = c_.compose(t.u, s.u), vv = c_.compose(t.v, s.v);
                    auto comp = c_.try_factorization_map(sys, s.f, t.g, uu, vv);
                    if (!comp || *comp != c_.compose(*F[b], *F[a])) r_.factorizations_functorial = false;
                }
            }
        }
    }

    void normality() {
        for (auto f : c_.morphisms()) {
            auto cl = c_.classify(f);
            auto id_dom = c_.identity(c_.dom(f)), id_cod = c_.identity(c_.cod(f));
            auto a = c_.factorize(f, FactorSystem::CofThenTrivFib);
            if (cl.is_cof ? !(a.left == f && a.right == id_cod)
                          : cl.trivial_fibration() && !(a.left == id_dom && a.right == f))
                r_.factorizations_normal = false;
            auto b = c_.factorize(f, FactorSystem::TrivCofThenFib);
            if (cl.trivial_cofibration() ? !(b.left == f && b.right == id_cod)
                                         : cl.is_fib && !(b.left == id_dom && b.right == f))
                r_.factorizations_normal = false;
        }
    }

    const TabularInstance& c_;
    ValidationReport& r_;
};

}  // namespace

ValidationReport validate(const TabularInstance& c) {
    ValidationReport r;
    Validator(c, r).run();
    return r;
}

json to_json(const TabularInstance& c, const ValidationReport& r) {
    json v = json::array();
    for (const auto& x : r.violations) v.push_back({{"axiom", x.axiom}, {"message", x.message}, {"detail", x.detail}});
    json counts = json::object();
    for (const char* a : {"category", "M1", "M2", "M3", "M4", "M5", "tables"}) counts[a] = r.count(a);
    return {{"instance", c.name()},
            {"valid", r.valid()},
            {"violations", v},
            {"violation_counts", counts},
            {"objects", c.object_count()},
            {"morphisms", c.morphism_count()},
            {"squares_checked", r.squares_checked},
            {"retract_pairs_checked", r.retract_pairs_checked},
            {"properties",
             {{"two_for_one", r.two_for_one},
              {"factorizations_functorial", r.factorizations_functorial},
              {"factorizations_normal", r.factorizations_normal},
              {"declared_functorial", c.functorial()},
              {"declared_normal", c.normal()},
              {"weak_equivalences_not_split_composites", r.we_not_split_composites}}}};
}

}  // namespace hocat
