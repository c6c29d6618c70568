#pragma once

#include <concepts>
#include <functional>
#include <optional>
#include <string>
#include <vector>

#include "hocat/calculus.hpp"

namespace hocat {

// Class of a q-homotopy f => g under the instance congruence.
template <class I>
struct TwoCell {
    Homotopy<I> rep;
    typename I::Morphism f, g;
};

template <class O, class I>
concept CongruenceOracle = requires(const O& o, const Homotopy<I>& a) {
    { o.equal(a, a) } -> std::convertible_to<bool>;
};

template <class I>
struct EquivalenceWitness {
    typename I::Morphism forward, quasi_inverse;
    TwoCell<I> unit;    // id => quasi_inverse forward
    TwoCell<I> counit;  // forward quasi_inverse => id
    SplitWe<I> split;
    Diagnostics checks;
};

template <class I>
struct HorizontalComposite {
    TwoCell<I> first;   // (g' a) after (b f)
    TwoCell<I> second;  // (b f') after (g a)
    bool exchange_holds = false;
};

template <class I>
struct EndoFunctor {
    std::function<typename I::Object(const typename I::Object&)> on_object;
    std::function<typename I::Morphism(const typename I::Morphism&)> on_morphism;
};

template <ModelInstance I>
EndoFunctor<I> identity_functor() {
    return {[](const typename I::Object& X) { return X; }, [](const typename I::Morphism& f) { return f; }};
}

// Hom-categories of fibrant-cofibrant objects with 2-cells the oracle classes
// of q-homotopies.
template <ModelInstance I, CongruenceOracle<I> O>
class HomotopyTwoCategory {
public:
    using Object = typename I::Object;
    using Morphism = typename I::Morphism;
    using Cell = TwoCell<I>;

    HomotopyTwoCategory(const I& c, const O& oracle) : c_(&c), o_(&oracle) {}

    const I& instance() const { return *c_; }
    const O& oracle() const { return *o_; }

    // Wraps H after reducing it to a fibrant q-homotopy; endpoints must be
    // fibrant-cofibrant.
    Cell cell_of(const Homotopy<I>& H) const {
        if (!is_fibrant_cofibrant(*c_, H.C.X) || !is_fibrant_cofibrant(*c_, c_->cod(H.h)))
            throw PreconditionFailed("two_cell_of: endpoints are not fibrant-cofibrant");
        return normalize(H);
    }

    // Reduction without the fibrant-cofibrant requirement; reduce_to_q still
    // checks what it needs.
    Cell normalize(const Homotopy<I>& H) const { return {reduce_to_q(*c_, H).result, H.f, H.g}; }

    bool equal(const Cell& a, const Cell& b) const {
        if (!(a.f == b.f) || !(a.g == b.g)) throw InvalidInput("two_cells_equal: endpoints differ");
        return o_->equal(a.rep, b.rep);
    }

    Cell identity(const Morphism& f) const { return normalize(identity_homotopy(*c_, f)); }

    // b after a.
    Cell vcomp(const Cell& b, const Cell& a) const {
        if (!(a.g == b.f)) throw InvalidInput("vcomp: cells are not composable");
        return {compose_q(*c_, a.rep, b.rep), a.f, b.g};
    }

    Cell invert(const Cell& a) const { return normalize(invert_homotopy(a.rep)); }

    // a l
    Cell whisker_left(const Cell& a, const Morphism& l) const { return normalize(hocat::whisker_left(*c_, a.rep, l)); }
    // r a
    Cell whisker_right(const Morphism& r, const Cell& a) const {
        return normalize(hocat::whisker_right(*c_, r, a.rep));
    }

    // outer : g => g' (Y -> Z), inner : f => f' (X -> Y).
    HorizontalComposite<I> hcomp(const Cell& outer, const Cell& inner) const {
        HorizontalComposite<I> out{vcomp(whisker_right(outer.g, inner), whisker_left(outer, inner.f)),
                                   vcomp(whisker_left(outer, inner.g), whisker_right(outer.f, inner))};
        out.exchange_holds = equal(out.first, out.second);
        return out;
    }

    // Image of a cell under a class-preserving functor.
    Cell map_two_cell(const EndoFunctor<I>& F, const Cell& a) const {
        const auto& C = a.rep.C;
        auto FC = make_cylinder(*c_, F.on_object(C.X), F.on_object(C.W), F.on_object(C.Z), F.on_morphism(C.d0),
                                F.on_morphism(C.d1), F.on_morphism(C.s), F.on_morphism(C.x));
        Homotopy<I> FH{FC, F.on_morphism(a.rep.h), F.on_morphism(a.f), F.on_morphism(a.g)};
        auto d = validate_homotopy(*c_, FH);
        if (!d.ok()) throw PreconditionFailed("map_two_cell: image is not a homotopy (" + d.failures().front() + ")");
        return normalize(FH);
    }

    // Quasi-inverse with unit and counit built from split_we and the
    // homotopies i r ~> id, sigma p ~> id.
    EquivalenceWitness<I> we_equivalence_data(const Morphism& s) const {
        const I& c = *c_;
        auto X = c.dom(s), Y = c.cod(s);
        if (!is_fibrant_cofibrant(c, X) || !is_fibrant_cofibrant(c, Y))
            throw PreconditionFailed("we_equivalence_data: endpoints are not fibrant-cofibrant");
        auto sp = split_we(c, s);
        auto M = c.cod(sp.i);
        auto idM = c.identity(M);
        auto ir = c.compose(sp.i, sp.retraction);
        auto sp_ = c.compose(sp.section, sp.p);
        Homotopy<I> A{make_cylinder(c, M, M, X, ir, idM, sp.retraction, sp.retraction), idM, ir, idM};
        Homotopy<I> B{make_cylinder(c, M, M, Y, sp_, idM, sp.p, sp.p), idM, sp_, idM};
        EquivalenceWitness<I> out;
        out.forward = s;
        out.quasi_inverse = c.compose(sp.retraction, sp.section);
        out.split = sp;
        out.checks = validate_split_we(c, s, sp);
        out.checks.append(validate_homotopy(c, A));
        out.checks.append(validate_homotopy(c, B));
        out.checks.add("retraction is a weak equivalence (2 for 1)", c.classify(sp.retraction).is_we);
        // r B i : r sigma p i => r i = id, inverted.
        out.unit = invert(normalize(hocat::whisker_left(c, hocat::whisker_right(c, sp.retraction, B), sp.i)));
        // p A sigma : p i r sigma => p sigma = id.
        out.counit = normalize(hocat::whisker_left(c, hocat::whisker_right(c, sp.p, A), sp.section));
        out.checks.add("unit starts at id", out.unit.f == c.identity(X));
        out.checks.add("unit ends at t s", out.unit.g == c.compose(out.quasi_inverse, s));
        out.checks.add("counit starts at s t", out.counit.f == c.compose(s, out.quasi_inverse));
        out.checks.add("counit ends at id", out.counit.g == c.identity(Y));
        return out;
    }

    // Laws making unit and counit invertible 2-cells.
    Diagnostics validate_equivalence(const EquivalenceWitness<I>& w) const {
        Diagnostics d = w.checks;
        for (const auto* cell : {&w.unit, &w.counit}) {
            auto inv = invert(*cell);
            d.add("inverse after cell is the identity", equal(vcomp(inv, *cell), identity(cell->f)));
            d.add("cell after inverse is the identity", equal(vcomp(*cell, inv), identity(cell->g)));
        }
        return d;
    }

    // f ~ g in pi_0: some 2-cell f => g exists.
    std::optional<Homotopy<I>> pi0_witness(const Morphism& f, const Morphism& g) const {
        require_fc(f);
        if (f == g) return identity_homotopy(*c_, f);
        return c_->find_homotopy(f, g);
    }

    bool pi0_hom(const Morphism& f, const Morphism& g) const { return pi0_witness(f, g).has_value(); }

    // Connected components of hom(X, Y), classes in enumeration order.
    std::vector<std::vector<Morphism>> pi0_quotient(const Object& X, const Object& Y) const {
        if (!is_fibrant_cofibrant(*c_, X) || !is_fibrant_cofibrant(*c_, Y))
            throw PreconditionFailed("pi0_quotient: objects are not fibrant-cofibrant");
        std::vector<std::vector<Morphism>> classes;
        for (const auto& f : c_->hom(X, Y)) {
            bool placed = false;
            for (auto& cls : classes)
                if (pi0_hom(cls.front(), f)) {
                    cls.push_back(f);
                    placed = true;
                    break;
                }
            if (!placed) classes.push_back({f});
        }
        return classes;
    }

private:
    void require_fc(const Morphism& f) const {
        if (!is_fibrant_cofibrant(*c_, c_->dom(f)) || !is_fibrant_cofibrant(*c_, c_->cod(f)))
            throw PreconditionFailed("pi0: endpoints are not fibrant-cofibrant");
    }

    const I* c_;
    const O* o_;
};

template <class I>
struct ObjectReplacement {
    typename I::Object X, QX, RX, rX;
    typename I::Morphism p;  // QX -> X, trivial fibration
    typename I::Morphism v;  // X -> RX, trivial cofibration
};

// Cofibrant replacement Q (factor 0 -> X), fibrant replacement R (factor
// X -> 1) and r = R Q.  On morphisms the middle maps of a functorial
// factorization are used when the instance offers them, lifts otherwise.
template <ModelInstance I>
class Replacement {
public:
    using Object = typename I::Object;
    using Morphism = typename I::Morphism;

    explicit Replacement(const I& c) : c_(&c) {}

    Object Q(const Object& X) const { return c_->cod(q_fact(X).left); }
    Morphism p(const Object& X) const { return q_fact(X).right; }
    Object R(const Object& X) const { return c_->cod(r_fact(X).left); }
    Morphism v(const Object& X) const { return r_fact(X).left; }
    Object r(const Object& X) const { return R(Q(X)); }

    Morphism Q(const Morphism& f) const {
        auto X = c_->dom(f), Y = c_->cod(f);
        if constexpr (requires { c_->factorization_map(FactorSystem::CofThenTrivFib, f, f, f, f); }) {
            if (c_->functorial()) {
                auto zero = c_->initial();
                return c_->factorization_map(FactorSystem::CofThenTrivFib, c_->from_initial(X), c_->from_initial(Y),
                                             c_->identity(zero), f);
            }
        }
        auto fx = q_fact(X), fy = q_fact(Y);
        return solve_qualified_lift(*c_, {fx.left, fy.right, fy.left, c_->compose(f, fx.right)});
    }

    Morphism R(const Morphism& f) const {
        auto X = c_->dom(f), Y = c_->cod(f);
        if constexpr (requires { c_->factorization_map(FactorSystem::TrivCofThenFib, f, f, f, f); }) {
            if (c_->functorial()) {
                auto one = c_->terminal();
                return c_->factorization_map(FactorSystem::TrivCofThenFib, c_->to_terminal(X), c_->to_terminal(Y), f,
                                             c_->identity(one));
            }
        }
        auto fx = r_fact(X), fy = r_fact(Y);
        return solve_qualified_lift(*c_, {fx.left, fy.right, c_->compose(fy.left, f), fx.right});
    }

    Morphism r(const Morphism& f) const { return R(Q(f)); }

    ObjectReplacement<I> object(const Object& X) const { return {X, Q(X), R(X), r(X), p(X), v(X)}; }

    EndoFunctor<I> r_functor() const {
        return {[this](const Object& X) { return r(X); }, [this](const Morphism& f) { return r(f); }};
    }

    Diagnostics check_object(const Object& X) const {
        const I& c = *c_;
        auto o = object(X);
        Diagnostics d;
        d.add("p is a trivial fibration", c.classify(o.p).trivial_fibration());
        d.add("v is a trivial cofibration", c.classify(o.v).trivial_cofibration());
        d.add("QX is cofibrant", is_cofibrant(c, o.QX));
        d.add("RX is fibrant", is_fibrant(c, o.RX));
        d.add("rX is fibrant-cofibrant", is_fibrant_cofibrant(c, o.rX));
        if (c.normal()) {
            if (is_cofibrant(c, X)) d.add("cofibrant X has QX = X and p = id", o.QX == X && is_identity(c, o.p));
            if (is_fibrant(c, X)) d.add("fibrant X has RX = X and v = id", o.RX == X && is_identity(c, o.v));
            if (is_fibrant_cofibrant(c, X)) d.add("r is the identity on X", o.rX == X && is_identity(c, r(c.identity(X))));
        }
        return d;
    }

    Diagnostics check_morphism(const Morphism& f) const {
        const I& c = *c_;
        auto X = c.dom(f), Y = c.cod(f);
        Diagnostics d;
        auto Qf = Q(f), Rf = R(f);
        d.add("p_Y Qf = f p_X", c.compose(p(Y), Qf) == c.compose(f, p(X)));
        d.add("Rf v_X = v_Y f", c.compose(Rf, v(X)) == c.compose(v(Y), f));
        if (c.classify(f).is_we) {
            d.add("Qf is a weak equivalence", c.classify(Qf).is_we);
            d.add("Rf is a weak equivalence", c.classify(Rf).is_we);
            d.add("rf is a weak equivalence", c.classify(r(f)).is_we);
        }
        return d;
    }

private:
    Factorization<Morphism> q_fact(const Object& X) const {
        return c_->factorize(c_->from_initial(X), FactorSystem::CofThenTrivFib);
    }
    Factorization<Morphism> r_fact(const Object& X) const {
        return c_->factorize(c_->to_terminal(X), FactorSystem::TrivCofThenFib);
    }

    const I* c_;
};

// q = i r into the homotopy 2-category of fibrant-cofibrant objects.
template <ModelInstance I, CongruenceOracle<I> O>
class Localization {
public:
    using Object = typename I::Object;
    using Morphism = typename I::Morphism;

    Localization(const HomotopyTwoCategory<I, O>& ho) : ho_(&ho), rep_(ho.instance()) {
        const I& c = ho.instance();
        bool all_fc = false;
        if constexpr (requires { c.all_fibrant_cofibrant(); }) all_fc = c.all_fibrant_cofibrant();
        if (!c.functorial() && !all_fc)
            throw PreconditionFailed("localize: needs functorial factorizations");
    }

    const Replacement<I>& replacement() const { return rep_; }

    Object object(const Object& X) const { return rep_.r(X); }
    Morphism arrow(const Morphism& f) const { return rep_.r(f); }
    TwoCell<I> cell(const TwoCell<I>& a) const { return ho_->map_two_cell(rep_.r_functor(), a); }
    EquivalenceWitness<I> equivalence(const Morphism& s) const {
        if (!ho_->instance().classify(s).is_we) throw PreconditionFailed("localize: not a weak equivalence");
        return ho_->we_equivalence_data(rep_.r(s));
    }

private:
    const HomotopyTwoCategory<I, O>* ho_;
    Replacement<I> rep_;
};

// Q as a pseudofunctor on cofibrant replacements: cells, unit and
// composition constraints come from lift_2cell against p.
template <ModelInstance I, CongruenceOracle<I> O>
class PseudoStructure {
public:
    using Object = typename I::Object;
    using Morphism = typename I::Morphism;
    using Cell = TwoCell<I>;

    PseudoStructure(const HomotopyTwoCategory<I, O>& ho) : ho_(&ho), rep_(ho.instance()) {}

    const Replacement<I>& replacement() const { return rep_; }

    // Q[H] with p_Y Q[H] = [H] p_X.
    Cell on_cell(const Cell& a) const {
        const I& c = ho_->instance();
        auto X = c.dom(a.f), Y = c.cod(a.f);
        auto K = ho_->normalize(hocat::whisker_left(c, a.rep, rep_.p(X)));
        return {lift_2cell(c, rep_.p(Y), K.rep, rep_.Q(a.f), rep_.Q(a.g)), rep_.Q(a.f), rep_.Q(a.g)};
    }

    // xi_X : id_QX => Q(id_X) with p_X xi_X = p_X.
    Cell xi(const Object& X) const {
        const I& c = ho_->instance();
        auto px = rep_.p(X);
        auto K = ho_->identity(px);
        auto QX = rep_.Q(X);
        auto Qid = rep_.Q(c.identity(X));
        return {lift_2cell(c, px, K.rep, c.identity(QX), Qid), c.identity(QX), Qid};
    }

    // phi_{g,f} : Qg Qf => Q(g f) with p_Z phi = g f p_X.
    Cell phi(const Morphism& g, const Morphism& f) const {
        const I& c = ho_->instance();
        auto X = c.dom(f), Z = c.cod(g);
        auto gf = c.compose(g, f);
        auto K = ho_->identity(c.compose(gf, rep_.p(X)));
        auto top = c.compose(rep_.Q(g), rep_.Q(f));
        auto Qgf = rep_.Q(gf);
        return {lift_2cell(c, rep_.p(Z), K.rep, top, Qgf), top, Qgf};
    }

    Diagnostics check_xi(const Object& X) const {
        Diagnostics d;
        auto px = rep_.p(X);
        d.add("p_X xi_X = p_X", ho_->equal(ho_->whisker_right(px, xi(X)), ho_->identity(px)));
        return d;
    }

    Diagnostics check_phi(const Morphism& g, const Morphism& f) const {
        const I& c = ho_->instance();
        Diagnostics d;
        auto gfp = c.compose(c.compose(g, f), rep_.p(c.dom(f)));
        d.add("p_Z phi_{g,f} = g f p_X", ho_->equal(ho_->whisker_right(rep_.p(c.cod(g)), phi(g, f)), ho_->identity(gfp)));
        return d;
    }

    Diagnostics check_cell(const Cell& a) const {
        const I& c = ho_->instance();
        Diagnostics d;
        auto lhs = ho_->whisker_right(rep_.p(c.cod(a.f)), on_cell(a));
        auto rhs = ho_->whisker_left(a, rep_.p(c.dom(a.f)));
        d.add("p_Y Q[H] = [H] p_X", ho_->equal(lhs, rhs));
        return d;
    }

    // Unit and associativity coherence of (Q, xi, phi).
    Diagnostics check_units(const Morphism& f) const {
        const I& c = ho_->instance();
        auto X = c.dom(f), Y = c.cod(f);
        auto Qf = rep_.Q(f);
        Diagnostics d;
        auto right = ho_->vcomp(phi(f, c.identity(X)), ho_->whisker_right(Qf, xi(X)));
        auto left = ho_->vcomp(phi(c.identity(Y), f), ho_->whisker_left(xi(Y), Qf));
        d.add("phi_{f,id} (Qf xi_X) = id", ho_->equal(right, ho_->identity(Qf)));
        d.add("phi_{id,f} (xi_Y Qf) = id", ho_->equal(left, ho_->identity(Qf)));
        return d;
    }

    Diagnostics check_associativity(const Morphism& h, const Morphism& g, const Morphism& f) const {
        const I& c = ho_->instance();
        Diagnostics d;
        auto a = ho_->vcomp(phi(h, c.compose(g, f)), ho_->whisker_right(rep_.Q(h), phi(g, f)));
        auto b = ho_->vcomp(phi(c.compose(h, g), f), ho_->whisker_left(phi(h, g), rep_.Q(f)));
        d.add("phi_{h,gf} (Qh phi_{g,f}) = phi_{hg,f} (phi_{h,g} Qf)", ho_->equal(a, b));
        return d;
    }

private:
    const HomotopyTwoCategory<I, O>* ho_;
    Replacement<I> rep_;
};

}  // namespace hocat
