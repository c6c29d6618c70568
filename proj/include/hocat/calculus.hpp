#pragma once

#include <cstddef>
#include <deque>
#include <functional>
#include <optional>
#include <string>
#include <vector>

#include "hocat/homotopy.hpp"

namespace hocat {

template <class I>
using Lifter = std::function<typename I::Morphism(const LiftProblem<typename I::Morphism>&)>;

// Quillen cylinder: factor the codiagonal X⊔X -> X as a cofibration followed
// by a trivial fibration.  Instances may supply a preferred one.
template <ModelInstance I>
Cylinder<I> q_cylinder_for(const I& c, const typename I::Object& X) {
    if constexpr (requires { c.standard_cylinder(X); }) {
        return c.standard_cylinder(X);
    } else {
        auto cd = coproduct_and_codiagonal(c, X);
        auto fa = c.factorize(cd.codiagonal, FactorSystem::CofThenTrivFib);
        return make_cylinder(c, X, c.cod(fa.left), X, c.compose(fa.left, cd.in0), c.compose(fa.left, cd.in1),
                             fa.right, c.identity(X));
    }
}

// Dual: factor the diagonal Y -> Y×Y as a trivial cofibration followed by a fibration.
template <ModelInstance I>
PathObject<I> path_object_for(const I& c, const typename I::Object& Y) {
    if constexpr (requires { c.standard_path(Y); }) {
        return c.standard_path(Y);
    } else {
        auto dg = product_and_diagonal(c, Y);
        auto fa = c.factorize(dg.diagonal, FactorSystem::TrivCofThenFib);
        return make_path_object(c, Y, c.cod(fa.left), c.compose(dg.pr0, fa.right), c.compose(dg.pr1, fa.right),
                                fa.left);
    }
}

// One edge of a germ zig-zag: a cylinder map lower.C -> upper.C with
// upper.h phi = lower.h.
template <class I>
struct GermEdge {
    Homotopy<I> lower;
    Homotopy<I> upper;
    CylinderMap<I> map;
};

template <ModelInstance I>
Diagnostics validate_germ_edge(const I& c, const GermEdge<I>& e) {
    Diagnostics d = validate_cylinder_map(c, e.map);
    d.add("edge source cylinder matches", e.map.source == e.lower.C);
    d.add("edge target cylinder matches", e.map.target == e.upper.C);
    d.add("h' phi = h", c.compose(e.upper.h, e.map.phi) == e.lower.h);
    d.add("edge endpoints agree", e.lower.f == e.upper.f && e.lower.g == e.upper.g);
    return d;
}

template <class I>
struct Reduction {
    Homotopy<I> result;
    // The zig-zag H ~> H' <~ H'' from the input to the result.
    std::vector<GermEdge<I>> witnesses;
};

// Replaces H by a fibrant q-homotopy germ-connected to it.  Stage one needs
// a fibrant codomain (unless s is already a fibration), stage two a
// cofibrant domain (unless the cylinder is already a q-cylinder).
template <ModelInstance I>
Reduction<I> reduce_to_q(const I& c, const Homotopy<I>& H, const Lifter<I>& lift = {}) {
    auto solve = [&](const LiftProblem<typename I::Morphism>& sq) {
        if (lift) {
            if (!square_commutes(c, sq)) throw PreconditionFailed("lifting square does not commute");
            return lift(sq);
        }
        return solve_qualified_lift(c, sq);
    };
    const auto& C = H.C;
    if (C.fibrant && C.quillen) return {H, {GermEdge<I>{H, H, identity_cylinder_map(c, C)}}};

    Reduction<I> out{H, {}};
    Homotopy<I> Hp = H;
    if (!C.fibrant) {
        auto Y = c.cod(H.h);
        if (!is_fibrant(c, Y)) throw PreconditionFailed("reduce_to_q: codomain is not fibrant");
        auto fa = c.factorize(C.s, FactorSystem::TrivCofThenFib);
        const auto& j = fa.left;
        auto Wp = c.cod(j);
        auto hp = solve({j, c.to_terminal(Y), H.h, c.to_terminal(Wp)});
        auto Cp = make_cylinder(c, C.X, Wp, C.Z, c.compose(j, C.d0), c.compose(j, C.d1), fa.right, C.x);
        Hp = Homotopy<I>{Cp, hp, H.f, H.g};
        out.witnesses.push_back({H, Hp, {C, Cp, j, c.identity(C.Z)}});
    }
    if (Hp.C.quillen) {
        out.result = Hp;
        return out;
    }
    if (!is_cofibrant(c, C.X)) throw PreconditionFailed("reduce_to_q: domain is not cofibrant");
    const auto& Cp = Hp.C;
    auto Cq = q_cylinder_for(c, C.X);
    auto cp = c.coproduct(C.X, C.X);
    auto t = solve({c.copair(cp, Cq.d0, Cq.d1), Cp.s, c.copair(cp, Cp.d0, Cp.d1), c.compose(Cp.x, Cq.s)});
    Homotopy<I> Hq{Cq, c.compose(Hp.h, t), H.f, H.g};
    out.witnesses.push_back({Hq, Hp, {Cq, Cp, t, Cp.x}});
    out.result = Hq;
    return out;
}

template <class I>
struct QComposite {
    Homotopy<I> result;
    typename I::Morphism alpha;  // W -> W''
    typename I::Morphism beta;   // W' -> W''
};

// H : f ~> g and H2 : g ~> l, both q-homotopies; glue along the pushout of
// d1 and d0'.
template <ModelInstance I>
QComposite<I> compose_q_detailed(const I& c, const Homotopy<I>& H, const Homotopy<I>& H2) {
    if (!H.C.quillen || !H2.C.quillen) throw PreconditionFailed("compose_q: q-homotopies required");
    if (!(H.C.X == H2.C.X) || !(H.g == H2.f)) throw InvalidInput("compose_q: endpoints do not match");
    if (!is_cofibrant(c, H.C.X)) throw PreconditionFailed("compose_q: domain is not cofibrant");
    auto po = c.pushout(H.C.d1, H2.C.d0);
    auto s = c.pushout_copair(po, H.C.s, H2.C.s);
    auto h = c.pushout_copair(po, H.h, H2.h);
    auto C = make_cylinder(c, H.C.X, po.object, H.C.X, c.compose(po.in_left, H.C.d0),
                           c.compose(po.in_right, H2.C.d1), s, c.identity(H.C.X));
    return {{C, h, H.f, H2.g}, po.in_left, po.in_right};
}

template <ModelInstance I>
Homotopy<I> compose_q(const I& c, const Homotopy<I>& H, const Homotopy<I>& H2) {
    return compose_q_detailed(c, H, H2).result;
}

// Left q-homotopy to right homotopy through the path object P.
template <ModelInstance I>
RightHomotopy<I> left_to_right(const I& c, const Homotopy<I>& H, const PathObject<I>& P) {
    if (!H.C.quillen) throw PreconditionFailed("left_to_right: q-homotopy required");
    if (!is_cofibrant(c, H.C.X)) throw PreconditionFailed("left_to_right: domain is not cofibrant");
    if (!(P.Y == c.cod(H.h))) throw InvalidInput("left_to_right: path object over the wrong object");
    auto pr = c.product(P.Y, P.Y);
    LiftProblem<typename I::Morphism> sq{H.C.d0, c.pair(pr, P.delta0, P.delta1), c.compose(P.sigma, H.f),
                                         c.pair(pr, c.compose(H.f, H.C.s), H.h)};
    auto kp = solve_qualified_lift(c, sq);
    return {P, c.compose(kp, H.C.d1), H.f, H.g};
}

// Right homotopy back to a left q-homotopy on q_cylinder_for(X).
template <ModelInstance I>
Homotopy<I> right_to_left(const I& c, const RightHomotopy<I>& K) {
    auto X = c.dom(K.k);
    if (!is_cofibrant(c, X)) throw PreconditionFailed("right_to_left: domain is not cofibrant");
    if (!is_fibrant(c, K.P.Y)) throw PreconditionFailed("right_to_left: codomain is not fibrant");
    auto C = q_cylinder_for(c, X);
    auto cp = c.coproduct(X, X);
    LiftProblem<typename I::Morphism> sq{c.copair(cp, C.d0, C.d1), K.P.delta1,
                                         c.copair(cp, K.k, c.compose(K.P.sigma, K.g)), c.compose(K.g, C.s)};
    auto Hp = solve_qualified_lift(c, sq);
    return {C, c.compose(K.P.delta0, Hp), K.f, K.g};
}

template <class I>
struct ZigZagStep {
    GermEdge<I> edge;
    bool upward;  // true: walk from edge.lower to edge.upper
};

template <class I>
struct GermSearchResult {
    bool found = false;
    std::vector<ZigZagStep<I>> path;
    std::size_t explored = 0;
    bool exhaustive = false;
};

constexpr std::size_t kDefaultGermBound = 6;

// Breadth-first search for a zig-zag of cylinder maps from H to H2.  Edges
// come from the instance when it can enumerate them (then the search is
// exhaustive and the bound is ignored), otherwise from reduce_to_q witnesses.
template <ModelInstance I>
GermSearchResult<I> germ_search(const I& c, const Homotopy<I>& H, const Homotopy<I>& H2,
                                std::size_t bound = kDefaultGermBound) {
    if (!(H.f == H2.f) || !(H.g == H2.g)) throw InvalidInput("germ_search: endpoints differ");
    GermSearchResult<I> out;
    if (H == H2) {
        out.found = true;
        out.explored = 1;
        return out;
    }
    constexpr bool enumerable = requires { c.germ_edges(H); };
    out.exhaustive = enumerable;

    std::vector<Homotopy<I>> nodes;
    std::vector<std::vector<std::pair<std::size_t, std::size_t>>> adj;  // (neighbor, edge)
    std::vector<GermEdge<I>> edges;
    std::vector<bool> expanded;
    auto index_of = [&](const Homotopy<I>& x) {
        for (std::size_t k = 0; k < nodes.size(); ++k)
            if (nodes[k] == x) return k;
        nodes.push_back(x);
        adj.emplace_back();
        expanded.push_back(false);
        return nodes.size() - 1;
    };
    auto add_edge = [&](const GermEdge<I>& e) {
        if (e.lower == e.upper) return;
        std::size_t a = index_of(e.lower), b = index_of(e.upper);
        for (const auto& [n, ei] : adj[a])
            if (n == b && edges[ei].map.phi == e.map.phi && edges[ei].map.psi == e.map.psi) return;
        edges.push_back(e);
        adj[a].push_back({b, edges.size() - 1});
        adj[b].push_back({a, edges.size() - 1});
    };
    auto expand = [&](std::size_t k) {
        if (expanded[k]) return;
        expanded[k] = true;
        Homotopy<I> node = nodes[k];
        if constexpr (enumerable) {
            for (const auto& e : c.germ_edges(node)) add_edge(e);
        } else {
            try {
                for (const auto& e : reduce_to_q(c, node).witnesses) add_edge(e);
            } catch (const PreconditionFailed&) {
            } catch (const NoLift&) {
            }
        }
    };

    std::size_t src = index_of(H), dst = index_of(H2);
    // Expand from both ends so edges generated from H2 are visible from H.
    std::deque<std::size_t> queue{src, dst};
    std::vector<std::size_t> level(nodes.size(), 0);
    while (!queue.empty()) {
        std::size_t k = queue.front();
        queue.pop_front();
        if (expanded[k] || (!enumerable && level[k] >= bound)) continue;
        expand(k);
        level.resize(nodes.size(), level[k] + 1);
        for (const auto& [n, ei] : adj[k])
            if (!expanded[n]) queue.push_back(n);
    }
    out.explored = nodes.size();

    // Shortest path from src to dst in the collected graph.
    std::vector<std::ptrdiff_t> prev_node(nodes.size(), -1), prev_edge(nodes.size(), -1);
    std::vector<bool> seen(nodes.size(), false);
    std::deque<std::size_t> bfs{src};
    seen[src] = true;
    while (!bfs.empty()) {
        std::size_t k = bfs.front();
        bfs.pop_front();
        if (k == dst) break;
        for (const auto& [n, ei] : adj[k]) {
            if (seen[n]) continue;
            seen[n] = true;
            prev_node[n] = static_cast<std::ptrdiff_t>(k);
            prev_edge[n] = static_cast<std::ptrdiff_t>(ei);
            bfs.push_back(n);
        }
    }
    if (!seen[dst]) return out;
    std::vector<ZigZagStep<I>> rev;
    for (std::size_t k = dst; k != src; k = static_cast<std::size_t>(prev_node[k])) {
        const auto& e = edges[static_cast<std::size_t>(prev_edge[k])];
        rev.push_back({e, e.upper == nodes[k]});
    }
    out.path.assign(rev.rbegin(), rev.rend());
    if (!enumerable && out.path.size() > bound) {
        out.path.clear();
        return out;
    }
    out.found = true;
    return out;
}

template <ModelInstance I>
Diagnostics validate_zig_zag(const I& c, const Homotopy<I>& H, const Homotopy<I>& H2,
                             const std::vector<ZigZagStep<I>>& path) {
    Diagnostics d;
    Homotopy<I> cur = H;
    for (const auto& st : path) {
        d.append(validate_germ_edge(c, st.edge));
        const auto& from = st.upward ? st.edge.lower : st.edge.upper;
        const auto& to = st.upward ? st.edge.upper : st.edge.lower;
        d.add("zig-zag is connected", from == cur);
        cur = to;
    }
    d.add("zig-zag ends at the target", cur == H2);
    return d;
}

template <class I>
struct SplitWe {
    typename I::Morphism i;           // trivial cofibration X -> M
    typename I::Morphism p;           // trivial fibration M -> Y
    typename I::Morphism retraction;  // r : M -> X, r i = id
    typename I::Morphism section;     // sigma : Y -> M, p sigma = id
};

template <ModelInstance I>
SplitWe<I> split_we(const I& c, const typename I::Morphism& s) {
    if (!c.classify(s).is_we) throw PreconditionFailed("split_we: not a weak equivalence");
    auto X = c.dom(s), Y = c.cod(s);
    if (!is_fibrant(c, X)) throw PreconditionFailed("split_we: domain is not fibrant");
    if (!is_cofibrant(c, Y)) throw PreconditionFailed("split_we: codomain is not cofibrant");
    auto fa = c.factorize(s, FactorSystem::CofThenTrivFib);
    auto M = c.cod(fa.left);
    auto r = solve_qualified_lift(c, {fa.left, c.to_terminal(X), c.identity(X), c.to_terminal(M)});
    auto sigma = solve_qualified_lift(c, {c.from_initial(Y), fa.right, c.from_initial(M), c.identity(Y)});
    return {fa.left, fa.right, r, sigma};
}

template <ModelInstance I>
Diagnostics validate_split_we(const I& c, const typename I::Morphism& s, const SplitWe<I>& w) {
    Diagnostics d;
    d.add("p i = s", c.compose(w.p, w.i) == s);
    d.add("r i = id", c.compose(w.retraction, w.i) == c.identity(c.dom(s)));
    d.add("p sigma = id", c.compose(w.p, w.section) == c.identity(c.cod(s)));
    d.add("i is a trivial cofibration", c.classify(w.i).trivial_cofibration());
    d.add("p is a trivial fibration", c.classify(w.p).trivial_fibration());
    d.add("r is a weak equivalence", c.classify(w.retraction).is_we);
    d.add("sigma is a weak equivalence", c.classify(w.section).is_we);
    auto M = c.cod(w.i);
    if (is_fibrant_cofibrant(c, c.dom(s)) && is_fibrant_cofibrant(c, c.cod(s)))
        d.add("middle object is fibrant-cofibrant", is_fibrant_cofibrant(c, M));
    return d;
}

// Lifts a q-homotopy H : p f ~> p g along the trivial fibration p to
// f ~> g on the same cylinder.
template <ModelInstance I>
Homotopy<I> lift_2cell(const I& c, const typename I::Morphism& p, const Homotopy<I>& H,
                       const typename I::Morphism& f, const typename I::Morphism& g, const Lifter<I>& lift = {}) {
    if (!c.classify(p).trivial_fibration()) throw PreconditionFailed("lift_2cell: p is not a trivial fibration");
    if (!H.C.quillen) throw PreconditionFailed("lift_2cell: q-homotopy required");
    if (!(c.compose(p, f) == H.f) || !(c.compose(p, g) == H.g))
        throw InvalidInput("lift_2cell: endpoints are not p f and p g");
    auto cp = c.coproduct(H.C.X, H.C.X);
    LiftProblem<typename I::Morphism> sq{c.copair(cp, H.C.d0, H.C.d1), p, c.copair(cp, f, g), H.h};
    typename I::Morphism h = lift ? lift(sq) : solve_qualified_lift(c, sq);
    return {H.C, h, f, g};
}

}  // namespace hocat
