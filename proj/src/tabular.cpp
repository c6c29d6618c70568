#include "hocat/tabular.hpp"

#include <algorithm>

namespace hocat {

using json = nlohmann::json;

namespace {

const json& field(const json& j, const char* key) {
    if (!j.is_object() || !j.contains(key)) throw InvalidInput(std::string("missing field '") + key + "'");
    return j.at(key);
}

std::string str(const json& j, const char* key) {
    const auto& v = field(j, key);
    if (!v.is_string()) throw InvalidInput(std::string("field '") + key + "' must be a string");
    return v.get<std::string>();
}

bool flag(const json& j, const char* key) {
    const auto& v = field(j, key);
    if (!v.is_boolean()) throw InvalidInput(std::string("field '") + key + "' must be a boolean");
    return v.get<bool>();
}

int fsys(FactorSystem s) { return s == FactorSystem::CofThenTrivFib ? 0 : 1; }

}  // namespace

int TabularInstance::obj_index(const std::string& n) const {
    auto it = obj_by_name_.find(n);
    if (it == obj_by_name_.end()) throw InvalidInput("unknown object '" + n + "'");
    return it->second;
}

int TabularInstance::mor_index(const std::string& n) const {
    auto it = mor_by_name_.find(n);
    if (it == mor_by_name_.end()) throw InvalidInput("unknown morphism '" + n + "'");
    return it->second;
}

void TabularInstance::check(Object X) const {
    if (X.id < 0 || static_cast<std::size_t>(X.id) >= objects_.size()) throw InvalidInput("object out of range");
}

void TabularInstance::check(Morphism f) const {
    if (f.id < 0 || static_cast<std::size_t>(f.id) >= morphisms_.size()) throw InvalidInput("morphism out of range");
}

TabularInstance TabularInstance::from_json(const json& j) {
    TabularInstance c;
    if (!j.is_object()) throw InvalidInput("tabular instance must be a JSON object");
    c.name_ = j.value("name", std::string("tabular"));
    for (const auto& o : field(j, "objects")) {
        if (!o.is_string()) throw InvalidInput("object names must be strings");
        auto n = o.get<std::string>();
        if (c.obj_by_name_.count(n)) throw InvalidInput("duplicate object '" + n + "'");
        c.obj_by_name_[n] = static_cast<int>(c.objects_.size());
        c.objects_.push_back(n);
    }
    for (const auto& m : field(j, "morphisms")) {
        MorphismData d{str(m, "name"), c.obj_index(str(m, "dom")), c.obj_index(str(m, "cod")),
                       {flag(m, "we"), flag(m, "fib"), flag(m, "cof")}};
        if (c.mor_by_name_.count(d.name)) throw InvalidInput("duplicate morphism '" + d.name + "'");
        c.mor_by_name_[d.name] = static_cast<int>(c.morphisms_.size());
        c.morphisms_.push_back(d);
    }
    const std::size_t n = c.objects_.size(), m = c.morphisms_.size();
    c.hom_.assign(n * n, {});
    for (std::size_t k = 0; k < m; ++k)
        c.hom_[static_cast<std::size_t>(c.morphisms_[k].dom) * n + static_cast<std::size_t>(c.morphisms_[k].cod)]
            .push_back(static_cast<int>(k));

    c.identity_.assign(n, -1);
    const auto& ids = field(j, "identities");
    if (!ids.is_object()) throw InvalidInput("'identities' must map objects to morphisms");
    for (auto it = ids.begin(); it != ids.end(); ++it) {
        int X = c.obj_index(it.key());
        if (!it.value().is_string()) throw InvalidInput("identity names must be strings");
        int f = c.mor_index(it.value().get<std::string>());
        if (c.morphisms_[f].dom != X || c.morphisms_[f].cod != X)
            throw InvalidInput("identity of '" + it.key() + "' is not an endomorphism of it");
        c.identity_[static_cast<std::size_t>(X)] = f;
    }
    for (std::size_t X = 0; X < n; ++X)
        if (c.identity_[X] < 0) throw InvalidInput("object '" + c.objects_[X] + "' has no identity");

    c.comp_.assign(m * m, -1);
    auto set_comp = [&](int g, int f, int gf) {
        auto& slot = c.comp_[static_cast<std::size_t>(g) * m + static_cast<std::size_t>(f)];
        if (slot >= 0 && slot != gf)
            c.load_issues_.push_back("conflicting composites for " + c.morphisms_[g].name + " after " +
                                     c.morphisms_[f].name);
        slot = gf;
    };
    for (std::size_t f = 0; f < m; ++f) {
        const auto& d = c.morphisms_[f];
        set_comp(c.identity_[static_cast<std::size_t>(d.cod)], static_cast<int>(f), static_cast<int>(f));
        set_comp(static_cast<int>(f), c.identity_[static_cast<std::size_t>(d.dom)], static_cast<int>(f));
    }
    if (j.contains("composition")) {
        for (const auto& t : j.at("composition")) {
            if (!t.is_array() || t.size() != 3) throw InvalidInput("composition entries are [g, f, gf]");
            int g = c.mor_index(t[0].get<std::string>()), f = c.mor_index(t[1].get<std::string>()),
                gf = c.mor_index(t[2].get<std::string>());
            if (c.morphisms_[g].dom != c.morphisms_[f].cod)
                throw InvalidInput("composition entry with non-composable pair");
            set_comp(g, f, gf);
        }
    }
    for (std::size_t g = 0; g < m; ++g)
        for (std::size_t f = 0; f < m; ++f)
            if (c.morphisms_[g].dom == c.morphisms_[f].cod && c.comp_[g * m + f] < 0)
                c.load_issues_.push_back("missing composite " + c.morphisms_[g].name + " after " +
                                         c.morphisms_[f].name);

    auto opt_obj = [&](const char* key) {
        if (!j.contains(key) || j.at(key).is_null()) return -1;
        return c.obj_index(j.at(key).get<std::string>());
    };
    c.initial_ = opt_obj("initial");
    c.terminal_ = opt_obj("terminal");
    auto mor = [&](const json& e, const char* key) { return Morphism{c.mor_index(str(e, key))}; };
    auto obj = [&](const json& e, const char* key) { return Object{c.obj_index(str(e, key))}; };
    if (j.contains("coproducts"))
        for (const auto& e : j.at("coproducts"))
            c.coproducts_[{c.obj_index(str(e, "left")), c.obj_index(str(e, "right"))}] = {obj(e, "object"),
                                                                                          mor(e, "in0"), mor(e, "in1")};
    if (j.contains("products"))
        for (const auto& e : j.at("products"))
            c.products_[{c.obj_index(str(e, "left")), c.obj_index(str(e, "right"))}] = {obj(e, "object"),
                                                                                        mor(e, "pr0"), mor(e, "pr1")};
    if (j.contains("pushouts"))
        for (const auto& e : j.at("pushouts"))
            c.pushouts_[{mor(e, "f").id, mor(e, "g").id}] = {obj(e, "object"), mor(e, "in_f"), mor(e, "in_g")};
    if (j.contains("pullbacks"))
        for (const auto& e : j.at("pullbacks"))
            c.pullbacks_[{mor(e, "f").id, mor(e, "g").id}] = {obj(e, "object"), mor(e, "pr_f"), mor(e, "pr_g")};

    for (auto& v : c.factor_) v.assign(m, std::nullopt);
    if (j.contains("factorizations")) {
        const auto& fj = j.at("factorizations");
        c.functorial_ = fj.value("functorial", true);
        c.normal_ = fj.value("normal", true);
        for (auto sys : {FactorSystem::CofThenTrivFib, FactorSystem::TrivCofThenFib}) {
            if (!fj.contains(to_string(sys))) continue;
            for (const auto& e : fj.at(to_string(sys))) {
                auto f = mor(e, "map");
                auto& slot = c.factor_[static_cast<std::size_t>(fsys(sys))][static_cast<std::size_t>(f.id)];
                if (slot) throw InvalidInput("duplicate factorization of '" + c.morphisms_[f.id].name + "'");
                slot = Factorization<Morphism>{mor(e, "left"), mor(e, "right"), sys};
            }
        }
    }
    if (j.contains("lifts"))
        for (const auto& e : j.at("lifts"))
            c.lifts_[{mor(e, "i").id, mor(e, "p").id, mor(e, "u").id, mor(e, "v").id}] = mor(e, "h").id;
    return c;
}

std::vector<TabObject> TabularInstance::objects() const {
    std::vector<Object> out;
    for (std::size_t k = 0; k < objects_.size(); ++k) out.push_back({static_cast<int>(k)});
    return out;
}

std::vector<TabMorphism> TabularInstance::morphisms() const {
    std::vector<Morphism> out;
    for (std::size_t k = 0; k < morphisms_.size(); ++k) out.push_back({static_cast<int>(k)});
    return out;
}

const std::string& TabularInstance::name_of(Object X) const {
    check(X);
    return objects_[static_cast<std::size_t>(X.id)];
}

const std::string& TabularInstance::name_of(Morphism f) const {
    check(f);
    return morphisms_[static_cast<std::size_t>(f.id)].name;
}

TabObject TabularInstance::object(const std::string& n) const { return {obj_index(n)}; }
TabMorphism TabularInstance::morphism(const std::string& n) const { return {mor_index(n)}; }

TabObject TabularInstance::dom(Morphism f) const {
    check(f);
    return {morphisms_[static_cast<std::size_t>(f.id)].dom};
}

TabObject TabularInstance::cod(Morphism f) const {
    check(f);
    return {morphisms_[static_cast<std::size_t>(f.id)].cod};
}

std::optional<TabMorphism> TabularInstance::try_compose(Morphism g, Morphism f) const {
    check(g);
    check(f);
    if (dom(g) != cod(f)) return std::nullopt;
    int gf = comp_[static_cast<std::size_t>(g.id) * morphisms_.size() + static_cast<std::size_t>(f.id)];
    if (gf < 0) return std::nullopt;
    return Morphism{gf};
}

TabMorphism TabularInstance::compose(Morphism g, Morphism f) const {
    if (dom(g) != cod(f)) throw InvalidInput("compose: " + name_of(g) + " after " + name_of(f) + " is not composable");
    auto gf = try_compose(g, f);
    if (!gf) throw InvalidInput("compose: no composite for " + name_of(g) + " after " + name_of(f));
    return *gf;
}

TabMorphism TabularInstance::identity(Object X) const {
    check(X);
    return {identity_[static_cast<std::size_t>(X.id)]};
}

ClassFlags TabularInstance::classify(Morphism f) const {
    check(f);
    return morphisms_[static_cast<std::size_t>(f.id)].flags;
}

TabObject TabularInstance::initial() const {
    if (initial_ < 0) throw PreconditionFailed("no initial object");
    return {initial_};
}

TabObject TabularInstance::terminal() const {
    if (terminal_ < 0) throw PreconditionFailed("no terminal object");
    return {terminal_};
}

TabMorphism TabularInstance::from_initial(Object X) const {
    auto h = hom(initial(), X);
    if (h.size() != 1) throw PreconditionFailed("initial object has no unique map to " + name_of(X));
    return h.front();
}

TabMorphism TabularInstance::to_terminal(Object X) const {
    auto h = hom(X, terminal());
    if (h.size() != 1) throw PreconditionFailed("terminal object has no unique map from " + name_of(X));
    return h.front();
}

std::vector<TabMorphism> TabularInstance::hom(Object X, Object Y) const {
    check(X);
    check(Y);
    std::vector<Morphism> out;
    for (int f : hom_[static_cast<std::size_t>(X.id) * objects_.size() + static_cast<std::size_t>(Y.id)])
        out.push_back({f});
    return out;
}

Coproduct<TabObject, TabMorphism> TabularInstance::coproduct(Object X, Object Y) const {
    auto it = coproducts_.find({X.id, Y.id});
    if (it == coproducts_.end())
        throw InvalidInput("no coproduct recorded for " + name_of(X) + ", " + name_of(Y));
    return it->second;
}

TabMorphism TabularInstance::copair(const Coproduct<Object, Morphism>& cp, Morphism f, Morphism g) const {
    if (cod(f) != cod(g)) throw InvalidInput("copair: codomains differ");
    for (auto u : hom(cp.object, cod(f)))
        if (compose(u, cp.in0) == f && compose(u, cp.in1) == g) return u;
    throw PreconditionFailed("copair: no induced map from " + name_of(cp.object));
}

Product<TabObject, TabMorphism> TabularInstance::product(Object X, Object Y) const {
    auto it = products_.find({X.id, Y.id});
    if (it == products_.end()) throw InvalidInput("no product recorded for " + name_of(X) + ", " + name_of(Y));
    return it->second;
}

TabMorphism TabularInstance::pair(const Product<Object, Morphism>& pr, Morphism f, Morphism g) const {
    if (dom(f) != dom(g)) throw InvalidInput("pair: domains differ");
    for (auto u : hom(dom(f), pr.object))
        if (compose(pr.pr0, u) == f && compose(pr.pr1, u) == g) return u;
    throw PreconditionFailed("pair: no induced map into " + name_of(pr.object));
}

Pushout<TabObject, TabMorphism> TabularInstance::pushout(Morphism f, Morphism g) const {
    if (dom(f) != dom(g)) throw InvalidInput("pushout: not a span");
    auto it = pushouts_.find({f.id, g.id});
    if (it == pushouts_.end()) throw InvalidInput("no pushout recorded for " + name_of(f) + ", " + name_of(g));
    return it->second;
}

TabMorphism TabularInstance::pushout_copair(const Pushout<Object, Morphism>& po, Morphism u, Morphism v) const {
    if (cod(u) != cod(v)) throw InvalidInput("pushout_copair: codomains differ");
    for (auto t : hom(po.object, cod(u)))
        if (compose(t, po.in_left) == u && compose(t, po.in_right) == v) return t;
    throw PreconditionFailed("pushout_copair: no induced map from " + name_of(po.object));
}

std::optional<Product<TabObject, TabMorphism>> TabularInstance::pullback(Morphism f, Morphism g) const {
    auto it = pullbacks_.find({f.id, g.id});
    if (it == pullbacks_.end()) return std::nullopt;
    return it->second;
}

std::optional<Factorization<TabMorphism>> TabularInstance::try_factorize(Morphism f, FactorSystem system) const {
    check(f);
    return factor_[static_cast<std::size_t>(fsys(system))][static_cast<std::size_t>(f.id)];
}

Factorization<TabMorphism> TabularInstance::factorize(Morphism f, FactorSystem system) const {
    auto fa = try_factorize(f, system);
    if (!fa) throw InvalidInput(std::string("no ") + to_string(system) + " factorization recorded for " + name_of(f));
    return *fa;
}

std::optional<TabMorphism> TabularInstance::table_lift(const Square& sq) const {
    auto it = lifts_.find({sq.i.id, sq.p.id, sq.u.id, sq.v.id});
    if (it == lifts_.end()) return std::nullopt;
    return Morphism{it->second};
}

std::vector<TabMorphism> TabularInstance::lifts(const Square& sq) const {
    std::vector<Morphism> out;
    for (auto h : hom(cod(sq.i), dom(sq.p)))
        if (compose(h, sq.i) == sq.u && compose(sq.p, h) == sq.v) out.push_back(h);
    return out;
}

TabMorphism TabularInstance::solve_lift(const Square& sq) const {
    if (!square_commutes(*this, sq)) throw InvalidInput("solve_lift: square does not commute");
    if (auto h = table_lift(sq)) return *h;
    auto all = lifts(sq);
    if (all.empty()) throw NoLift("no lift for the square (" + name_of(sq.i) + ", " + name_of(sq.p) + ")");
    return all.front();
}

std::optional<TabMorphism> TabularInstance::try_factorization_map(FactorSystem system, Morphism f, Morphism g,
                                                                  Morphism u, Morphism v) const {
    auto ff = try_factorize(f, system), fg = try_factorize(g, system);
    if (!ff || !fg) return std::nullopt;
    for (auto t : hom(cod(ff->left), cod(fg->left)))
        if (compose(t, ff->left) == compose(fg->left, u) && compose(fg->right, t) == compose(v, ff->right)) return t;
    return std::nullopt;
}

TabMorphism TabularInstance::factorization_map(FactorSystem system, Morphism f, Morphism g, Morphism u,
                                               Morphism v) const {
    if (compose(v, f) != compose(g, u)) throw InvalidInput("factorization_map: square does not commute");
    auto t = try_factorization_map(system, f, g, u, v);
    if (!t) throw PreconditionFailed("factorization_map: no map between middle objects");
    return *t;
}

std::vector<Cylinder<TabularInstance>> TabularInstance::cylinders(Object X) const {
    std::vector<Cylinder<TabularInstance>> out;
    for (auto W : objects())
        for (auto d0 : hom(X, W))
            for (auto d1 : hom(X, W))
                for (auto Z : objects())
                    for (auto s : hom(W, Z)) {
                        if (!classify(s).is_we) continue;
                        auto x = compose(s, d0);
                        if (compose(s, d1) != x) continue;
                        out.push_back(make_cylinder(*this, X, W, Z, d0, d1, s, x));
                    }
    return out;
}

std::vector<CylinderMap<TabularInstance>> TabularInstance::cylinder_maps(const Cylinder<TabularInstance>& a,
                                                                         const Cylinder<TabularInstance>& b) const {
    std::vector<CylinderMap<TabularInstance>> out;
    if (a.X != b.X) return out;
    for (auto phi : hom(a.W, b.W)) {
        if (compose(phi, a.d0) != b.d0 || compose(phi, a.d1) != b.d1) continue;
        for (auto psi : hom(a.Z, b.Z))
            if (compose(psi, a.s) == compose(b.s, phi) && compose(psi, a.x) == b.x) out.push_back({a, b, phi, psi});
    }
    return out;
}

std::vector<Homotopy<TabularInstance>> TabularInstance::homotopies(Morphism f, Morphism g) const {
    if (dom(f) != dom(g) || cod(f) != cod(g)) throw InvalidInput("homotopies: maps are not parallel");
    std::vector<Homotopy<TabularInstance>> out;
    for (const auto& C : cylinders(dom(f)))
        for (auto h : hom(C.W, cod(f)))
            if (compose(h, C.d0) == f && compose(h, C.d1) == g) out.push_back({C, h, f, g});
    return out;
}

std::optional<Homotopy<TabularInstance>> TabularInstance::find_homotopy(Morphism f, Morphism g) const {
    for (const auto& C : cylinders(dom(f)))
        for (auto h : hom(C.W, cod(f)))
            if (compose(h, C.d0) == f && compose(h, C.d1) == g) return Homotopy<TabularInstance>{C, h, f, g};
    return std::nullopt;
}

std::vector<GermEdge<TabularInstance>> TabularInstance::germ_edges(const Homotopy<TabularInstance>& H) const {
    std::vector<GermEdge<TabularInstance>> out;
    auto Y = cod(H.h);
    for (const auto& C : cylinders(H.C.X)) {
        for (const auto& m : cylinder_maps(H.C, C))
            for (auto h : hom(C.W, Y))
                if (compose(h, m.phi) == H.h) out.push_back({H, {C, h, H.f, H.g}, m});
        for (const auto& m : cylinder_maps(C, H.C)) out.push_back({{C, compose(H.h, m.phi), H.f, H.g}, H, m});
    }
    return out;
}

// Congruence closure.

TabularOracle::Key TabularOracle::key(const Homotopy<TabularInstance>& H) {
    return {H.C.X.id, H.C.W.id, H.C.Z.id, H.C.d0.id, H.C.d1.id, H.C.s.id, H.C.x.id, H.h.id};
}

std::size_t TabularOracle::index(const Homotopy<TabularInstance>& H) const {
    auto it = index_.find(key(H));
    if (it == index_.end()) throw InvalidInput("oracle: not a homotopy of this category");
    return it->second;
}

std::size_t TabularOracle::find(std::size_t k) const {
    while (parent_[k] != k) k = parent_[k];
    return k;
}

bool TabularOracle::unite(std::size_t a, std::size_t b) {
    a = find(a);
    b = find(b);
    if (a == b) return false;
    if (b < a) std::swap(a, b);
    parent_[b] = a;
    return true;
}

TabularOracle::TabularOracle(const TabularInstance& c) : c_(&c) {
    using H = Homotopy<TabularInstance>;
    std::vector<std::vector<Cylinder<TabularInstance>>> cyl;
    for (auto X : c.objects()) {
        cyl.push_back(c.cylinders(X));
        for (const auto& C : cyl.back())
            for (auto Y : c.objects())
                for (auto h : c.hom(C.W, Y)) {
                    H hm{C, h, c.compose(h, C.d0), c.compose(h, C.d1)};
                    index_[key(hm)] = all_.size();
                    all_.push_back(hm);
                }
    }
    parent_.resize(all_.size());
    for (std::size_t k = 0; k < parent_.size(); ++k) parent_[k] = k;

    // Germ relation: h ~ h' whenever h' phi = h for a cylinder map phi.
    for (const auto& hm : all_) {
        const auto& over = cyl[static_cast<std::size_t>(hm.C.X.id)];
        for (const auto& C2 : over)
            for (const auto& m : c.cylinder_maps(hm.C, C2))
                for (auto h2 : c.hom(C2.W, c.cod(hm.h)))
                    if (c.compose(h2, m.phi) == hm.h) unite(index(hm), index({C2, h2, hm.f, hm.g}));
    }

    auto lookup = [&](const H& hm) -> std::optional<std::size_t> {
        auto it = index_.find(key(hm));
        if (it == index_.end()) return std::nullopt;
        return it->second;
    };
    auto objects = c.objects();
    bool changed = true;
    while (changed) {
        changed = false;
        // Smallest q-homotopy of each class, for q-composition.
        std::vector<std::optional<std::size_t>> qrep(all_.size());
        for (std::size_t k = 0; k < all_.size(); ++k)
            if (all_[k].C.quillen && !qrep[find(k)]) qrep[find(k)] = k;
        for (std::size_t k = 0; k < all_.size(); ++k) {
            std::size_t r = find(k);
            if (r == k) continue;
            const H& a = all_[k];
            const H& b = all_[r];
            if (auto ia = lookup(invert_homotopy(a)), ib = lookup(invert_homotopy(b)); ia && ib)
                changed |= unite(*ia, *ib);
            for (auto Z : objects) {
                for (auto l : c.hom(Z, a.C.X)) {
                    auto wa = lookup(whisker_left(c, a, l)), wb = lookup(whisker_left(c, b, l));
                    if (wa && wb) changed |= unite(*wa, *wb);
                }
                for (auto rr : c.hom(c.cod(a.h), Z)) {
                    auto wa = lookup(whisker_right(c, rr, a)), wb = lookup(whisker_right(c, rr, b));
                    if (wa && wb) changed |= unite(*wa, *wb);
                }
            }
        }
        // q-composition respects the classes of its factors.
        for (std::size_t k = 0; k < all_.size(); ++k) {
            const H& a = all_[k];
            if (!a.C.quillen || !is_cofibrant(c, a.C.X)) continue;
            auto ra = qrep[find(k)];
            for (std::size_t l = 0; l < all_.size(); ++l) {
                const H& b = all_[l];
                if (!b.C.quillen || b.C.X != a.C.X || b.f != a.g || c.cod(b.h) != c.cod(a.h)) continue;
                auto rb = qrep[find(l)];
                try {
                    auto x = lookup(compose_q(c, a, b));
                    auto y = lookup(compose_q(c, all_[*ra], all_[*rb]));
                    if (x && y) changed |= unite(*x, *y);
                } catch (const InvalidInput&) {
                } catch (const PreconditionFailed&) {
                }
            }
        }
    }
    for (std::size_t k = 0; k < parent_.size(); ++k) parent_[k] = find(k);
}

bool TabularOracle::equal(const Homotopy<TabularInstance>& a, const Homotopy<TabularInstance>& b) const {
    if (a.f != b.f || a.g != b.g) return false;
    return parent_[index(a)] == parent_[index(b)];
}

std::size_t TabularOracle::class_count() const {
    std::size_t n = 0;
    for (std::size_t k = 0; k < parent_.size(); ++k)
        if (parent_[k] == k) ++n;
    return n;
}

}  // namespace hocat
