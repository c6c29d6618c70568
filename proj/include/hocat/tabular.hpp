#pragma once

#include <array>
#include <compare>
#include <cstddef>
#include <map>
#include <optional>
#include <string>
#include <utility>
#include <vector>

#include <json.hpp>

#include "hocat/calculus.hpp"
#include "hocat/core.hpp"
#include "hocat/homotopy.hpp"

namespace hocat {

struct TabObject {
    int id = -1;
    friend auto operator<=>(const TabObject&, const TabObject&) = default;
};

struct TabMorphism {
    int id = -1;
    friend auto operator<=>(const TabMorphism&, const TabMorphism&) = default;
};

// Finite category given by explicit tables: composition, universal objects,
// factorizations and optionally preferred lifts.
class TabularInstance {
public:
    using Object = TabObject;
    using Morphism = TabMorphism;
    using Square = LiftProblem<Morphism>;

    // Throws InvalidInput on malformed JSON or unknown names.  Gaps in the
    // tables are recorded in load_issues() and reported by validate.
    static TabularInstance from_json(const nlohmann::json& j);

    const std::string& name() const { return name_; }
    std::size_t object_count() const { return objects_.size(); }
    std::size_t morphism_count() const { return morphisms_.size(); }
    std::vector<Object> objects() const;
    std::vector<Morphism> morphisms() const;
    const std::string& name_of(Object X) const;
    const std::string& name_of(Morphism f) const;
    Object object(const std::string& name) const;
    Morphism morphism(const std::string& name) const;
    const std::vector<std::string>& load_issues() const { return load_issues_; }
    bool has_initial() const { return initial_ >= 0; }
    bool has_terminal() const { return terminal_ >= 0; }

    Object dom(Morphism f) const;
    Object cod(Morphism f) const;
    std::optional<Morphism> try_compose(Morphism g, Morphism f) const;
    Morphism compose(Morphism g, Morphism f) const;
    Morphism identity(Object X) const;
    ClassFlags classify(Morphism f) const;

    Object initial() const;
    Object terminal() const;
    Morphism from_initial(Object X) const;
    Morphism to_terminal(Object X) const;

    Coproduct<Object, Morphism> coproduct(Object X, Object Y) const;
    bool has_coproduct(Object X, Object Y) const { return coproducts_.count({X.id, Y.id}) > 0; }
    Morphism copair(const Coproduct<Object, Morphism>& cp, Morphism f, Morphism g) const;
    Product<Object, Morphism> product(Object X, Object Y) const;
    Morphism pair(const Product<Object, Morphism>& pr, Morphism f, Morphism g) const;
    Pushout<Object, Morphism> pushout(Morphism f, Morphism g) const;
    Morphism pushout_copair(const Pushout<Object, Morphism>& po, Morphism u, Morphism v) const;
    // Cospan f : A -> C <- B : g; legs P -> A and P -> B.
    std::optional<Product<Object, Morphism>> pullback(Morphism f, Morphism g) const;

    std::optional<Factorization<Morphism>> try_factorize(Morphism f, FactorSystem system) const;
    Factorization<Morphism> factorize(Morphism f, FactorSystem system) const;
    // Table entry first, then the first enumerated diagonal.
    Morphism solve_lift(const Square& sq) const;
    std::optional<Morphism> table_lift(const Square& sq) const;
    std::vector<Morphism> lifts(const Square& sq) const;
    // Induced map between middle objects for a square v f = g u.
    std::optional<Morphism> try_factorization_map(FactorSystem system, Morphism f, Morphism g, Morphism u,
                                                  Morphism v) const;
    Morphism factorization_map(FactorSystem system, Morphism f, Morphism g, Morphism u, Morphism v) const;

    bool functorial() const { return functorial_; }
    bool normal() const { return normal_; }
    std::string describe(Morphism f) const { return name_of(f); }

    std::vector<Morphism> hom(Object X, Object Y) const;
    std::vector<Cylinder<TabularInstance>> cylinders(Object X) const;
    std::vector<CylinderMap<TabularInstance>> cylinder_maps(const Cylinder<TabularInstance>& a,
                                                            const Cylinder<TabularInstance>& b) const;
    std::vector<Homotopy<TabularInstance>> homotopies(Morphism f, Morphism g) const;
    std::optional<Homotopy<TabularInstance>> find_homotopy(Morphism f, Morphism g) const;
    // Every cylinder map into or out of H's cylinder that carries H.
    std::vector<GermEdge<TabularInstance>> germ_edges(const Homotopy<TabularInstance>& H) const;

    // Raw table access for validation.
    const std::map<std::pair<int, int>, Coproduct<Object, Morphism>>& coproduct_table() const { return coproducts_; }
    const std::map<std::pair<int, int>, Product<Object, Morphism>>& product_table() const { return products_; }
    const std::map<std::pair<int, int>, Pushout<Object, Morphism>>& pushout_table() const { return pushouts_; }
    const std::map<std::pair<int, int>, Product<Object, Morphism>>& pullback_table() const { return pullbacks_; }
    const std::map<std::array<int, 4>, int>& lift_table() const { return lifts_; }

private:
    struct MorphismData {
        std::string name;
        int dom, cod;
        ClassFlags flags;
    };

    int obj_index(const std::string& n) const;
    int mor_index(const std::string& n) const;
    void check(Object X) const;
    void check(Morphism f) const;

    std::string name_;
    std::vector<std::string> objects_;
    std::vector<MorphismData> morphisms_;
    std::map<std::string, int> obj_by_name_, mor_by_name_;
    std::vector<int> identity_;
    std::vector<int> comp_;  // comp_[g * m + f]
    std::vector<std::vector<int>> hom_;  // hom_[X * n + Y]
    int initial_ = -1, terminal_ = -1;
    std::map<std::pair<int, int>, Coproduct<Object, Morphism>> coproducts_;
    std::map<std::pair<int, int>, Product<Object, Morphism>> products_;
    std::map<std::pair<int, int>, Pushout<Object, Morphism>> pushouts_;
    std::map<std::pair<int, int>, Product<Object, Morphism>> pullbacks_;
    std::array<std::vector<std::optional<Factorization<Morphism>>>, 2> factor_;
    std::map<std::array<int, 4>, int> lifts_;
    bool functorial_ = true, normal_ = true;
    std::vector<std::string> load_issues_;
};

struct Violation {
    std::string axiom;    // category, M1..M5, tables
    std::string message;
    nlohmann::json detail;
};

struct ValidationReport {
    std::vector<Violation> violations;
    // Properties that are reported but are not axioms.
    bool two_for_one = true;  // s r = id: s we iff r we
    bool factorizations_functorial = true;
    bool factorizations_normal = true;
    std::vector<std::string> we_not_split_composites;
    std::size_t squares_checked = 0;
    std::size_t retract_pairs_checked = 0;

    bool valid() const { return violations.empty(); }
    std::size_t count(const std::string& axiom) const;
};

ValidationReport validate(const TabularInstance& c);
nlohmann::json to_json(const TabularInstance& c, const ValidationReport& r);

// Smallest congruence on all homotopies of the category containing the germ
// relation and closed under whiskering, inversion and q-composition.
class TabularOracle {
public:
    explicit TabularOracle(const TabularInstance& c);
    bool equal(const Homotopy<TabularInstance>& a, const Homotopy<TabularInstance>& b) const;
    std::size_t homotopy_count() const { return all_.size(); }
    std::size_t class_count() const;

private:
    using Key = std::array<int, 8>;
    static Key key(const Homotopy<TabularInstance>& H);
    std::size_t index(const Homotopy<TabularInstance>& H) const;
    std::size_t find(std::size_t k) const;
    bool unite(std::size_t a, std::size_t b);

    const TabularInstance* c_;
    std::vector<Homotopy<TabularInstance>> all_;
    std::map<Key, std::size_t> index_;
    std::vector<std::size_t> parent_;
};

}  // namespace hocat
