#pragma once

#include <string>
#include <utility>
#include <vector>

#include "hocat/core.hpp"

namespace hocat {

// (W, Z, d0, d1, s, x) over X with s a weak equivalence and s d0 = s d1 = x.
// `fibrant` records that s is a fibration; `quillen` that Z = X, x = id and
// d0 ⊔ d1 : X⊔X -> W is a cofibration.
template <class I>
struct Cylinder {
    typename I::Object X, W, Z;
    typename I::Morphism d0, d1, s, x;
    bool fibrant = false;
    bool quillen = false;
    friend bool operator==(const Cylinder&, const Cylinder&) = default;
};

// (V, delta0, delta1, sigma) over Y; `cofibrant` records that sigma is a cofibration.
template <class I>
struct PathObject {
    typename I::Object Y, V;
    typename I::Morphism delta0, delta1, sigma;
    bool cofibrant = false;
    friend bool operator==(const PathObject&, const PathObject&) = default;
};

// h : W -> Y with h d0 = f and h d1 = g.
template <class I>
struct Homotopy {
    Cylinder<I> C;
    typename I::Morphism h, f, g;
    friend bool operator==(const Homotopy&, const Homotopy&) = default;
};

// k : X -> V with delta0 k = f and delta1 k = g.
template <class I>
struct RightHomotopy {
    PathObject<I> P;
    typename I::Morphism k, f, g;
    friend bool operator==(const RightHomotopy&, const RightHomotopy&) = default;
};

// (phi, psi) : source -> target with phi d_k = d'_k, psi s = s' phi, psi x = x'.
template <class I>
struct CylinderMap {
    Cylinder<I> source, target;
    typename I::Morphism phi, psi;
};

// Consecutive endpoints agree: f0 ~> f1 ~> ... ~> fn.
template <class I>
using HomotopySequence = std::vector<Homotopy<I>>;

struct Check {
    std::string name;
    bool ok;
};

struct Diagnostics {
    std::vector<Check> checks;

    void add(std::string name, bool ok) { checks.push_back({std::move(name), ok}); }
    void append(const Diagnostics& other) { checks.insert(checks.end(), other.checks.begin(), other.checks.end()); }
    bool ok() const {
        for (const auto& c : checks)
            if (!c.ok) return false;
        return true;
    }
    std::vector<std::string> failures() const {
        std::vector<std::string> out;
        for (const auto& c : checks)
            if (!c.ok) out.push_back(c.name);
        return out;
    }
};

template <ModelInstance I>
bool is_identity(const I& c, const typename I::Morphism& f) {
    return c.dom(f) == c.cod(f) && f == c.identity(c.dom(f));
}

// Recomputes the fibrant/quillen flags from the data.
template <ModelInstance I>
Cylinder<I> make_cylinder(const I& c, typename I::Object X, typename I::Object W, typename I::Object Z,
                          typename I::Morphism d0, typename I::Morphism d1, typename I::Morphism s,
                          typename I::Morphism x) {
    Cylinder<I> C{std::move(X), std::move(W), std::move(Z), std::move(d0), std::move(d1),
                  std::move(s),  std::move(x)};
    C.fibrant = c.classify(C.s).is_fib;
    if (C.Z == C.X && is_identity(c, C.x)) {
        // Tables without X ⊔ X cannot certify a q-cylinder.
        if constexpr (requires { c.has_coproduct(C.X, C.X); })
            if (!c.has_coproduct(C.X, C.X)) return C;
        auto cp = c.coproduct(C.X, C.X);
        C.quillen = c.classify(c.copair(cp, C.d0, C.d1)).is_cof;
    }
    return C;
}

template <ModelInstance I>
PathObject<I> make_path_object(const I& c, typename I::Object Y, typename I::Object V,
                               typename I::Morphism delta0, typename I::Morphism delta1,
                               typename I::Morphism sigma) {
    PathObject<I> P{std::move(Y), std::move(V), std::move(delta0), std::move(delta1), std::move(sigma)};
    P.cofibrant = c.classify(P.sigma).is_cof;
    return P;
}

template <ModelInstance I>
void require_shape(const I& c, const typename I::Morphism& f, const typename I::Object& dom,
                   const typename I::Object& cod, const char* what) {
    if (!(c.dom(f) == dom) || !(c.cod(f) == cod))
        throw InvalidInput(std::string("structural mismatch: ") + what);
}

template <ModelInstance I>
Diagnostics validate_cylinder(const I& c, const Cylinder<I>& C) {
    require_shape(c, C.d0, C.X, C.W, "d0 : X -> W");
    require_shape(c, C.d1, C.X, C.W, "d1 : X -> W");
    require_shape(c, C.s, C.W, C.Z, "s : W -> Z");
    require_shape(c, C.x, C.X, C.Z, "x : X -> Z");
    Diagnostics d;
    auto fs = c.classify(C.s);
    d.add("s is a weak equivalence", fs.is_we);
    d.add("s d0 = x", c.compose(C.s, C.d0) == C.x);
    d.add("s d1 = x", c.compose(C.s, C.d1) == C.x);
    if (C.fibrant) d.add("s is a fibration", fs.is_fib);
    if (C.quillen) {
        d.add("Z = X", C.Z == C.X);
        d.add("x = id", C.Z == C.X && is_identity(c, C.x));
        auto cp = c.coproduct(C.X, C.X);
        d.add("d0 + d1 is a cofibration", c.classify(c.copair(cp, C.d0, C.d1)).is_cof);
        if (is_cofibrant(c, C.X)) {
            d.add("d0 is a trivial cofibration", c.classify(C.d0).trivial_cofibration());
            d.add("d1 is a trivial cofibration", c.classify(C.d1).trivial_cofibration());
        }
    }
    return d;
}

template <ModelInstance I>
Diagnostics validate_path_object(const I& c, const PathObject<I>& P) {
    require_shape(c, P.delta0, P.V, P.Y, "delta0 : V -> Y");
    require_shape(c, P.delta1, P.V, P.Y, "delta1 : V -> Y");
    require_shape(c, P.sigma, P.Y, P.V, "sigma : Y -> V");
    Diagnostics d;
    auto fs = c.classify(P.sigma);
    d.add("sigma is a weak equivalence", fs.is_we);
    auto id = c.identity(P.Y);
    d.add("delta0 sigma = id", c.compose(P.delta0, P.sigma) == id);
    d.add("delta1 sigma = id", c.compose(P.delta1, P.sigma) == id);
    auto pr = c.product(P.Y, P.Y);
    d.add("(delta0, delta1) is a fibration", c.classify(c.pair(pr, P.delta0, P.delta1)).is_fib);
    if (P.cofibrant) d.add("sigma is a cofibration", fs.is_cof);
    return d;
}

template <ModelInstance I>
Diagnostics validate_homotopy(const I& c, const Homotopy<I>& H) {
    Diagnostics d = validate_cylinder(c, H.C);
    if (!(c.dom(H.h) == H.C.W)) throw InvalidInput("structural mismatch: h : W -> Y");
    d.add("h d0 = f", c.compose(H.h, H.C.d0) == H.f);
    d.add("h d1 = g", c.compose(H.h, H.C.d1) == H.g);
    return d;
}

template <ModelInstance I>
Diagnostics validate_right_homotopy(const I& c, const RightHomotopy<I>& K) {
    Diagnostics d = validate_path_object(c, K.P);
    if (!(c.cod(K.k) == K.P.V)) throw InvalidInput("structural mismatch: k : X -> V");
    d.add("delta0 k = f", c.compose(K.P.delta0, K.k) == K.f);
    d.add("delta1 k = g", c.compose(K.P.delta1, K.k) == K.g);
    return d;
}

template <ModelInstance I>
Diagnostics validate_cylinder_map(const I& c, const CylinderMap<I>& m) {
    const auto& A = m.source;
    const auto& B = m.target;
    if (!(A.X == B.X)) throw InvalidInput("structural mismatch: cylinder map between different bases");
    require_shape(c, m.phi, A.W, B.W, "phi : W -> W'");
    require_shape(c, m.psi, A.Z, B.Z, "psi : Z -> Z'");
    Diagnostics d;
    d.add("phi d0 = d0'", c.compose(m.phi, A.d0) == B.d0);
    d.add("phi d1 = d1'", c.compose(m.phi, A.d1) == B.d1);
    d.add("psi s = s' phi", c.compose(m.psi, A.s) == c.compose(B.s, m.phi));
    d.add("psi x = x'", c.compose(m.psi, A.x) == B.x);
    return d;
}

// The cylinder map (id_W, id_Z).
template <ModelInstance I>
CylinderMap<I> identity_cylinder_map(const I& c, const Cylinder<I>& C) {
    return {C, C, c.identity(C.W), c.identity(C.Z)};
}

// Degenerate cylinder on X: W = Z = X, all legs identities, h = f.
template <ModelInstance I>
Homotopy<I> identity_homotopy(const I& c, const typename I::Morphism& f) {
    auto X = c.dom(f);
    auto id = c.identity(X);
    return {make_cylinder(c, X, X, X, id, id, id, id), f, f, f};
}

// Degenerate cylinder on Y: W = Z = Y, d0 = d1 = x = f, s = id, h = id.
template <ModelInstance I>
Homotopy<I> identity_homotopy_on_codomain(const I& c, const typename I::Morphism& f) {
    auto X = c.dom(f);
    auto Y = c.cod(f);
    auto id = c.identity(Y);
    return {make_cylinder(c, X, Y, Y, f, f, id, f), id, f, f};
}

template <ModelInstance I>
Homotopy<I> invert_homotopy(const Homotopy<I>& H) {
    Homotopy<I> out = H;
    std::swap(out.C.d0, out.C.d1);
    std::swap(out.f, out.g);
    return out;
}

// H l : the cylinder precomposed with l : X' -> X.
template <ModelInstance I>
Homotopy<I> whisker_left(const I& c, const Homotopy<I>& H, const typename I::Morphism& l) {
    if (!(c.cod(l) == H.C.X)) throw InvalidInput("whisker: l does not end at the cylinder base");
    auto C = make_cylinder(c, c.dom(l), H.C.W, H.C.Z, c.compose(H.C.d0, l), c.compose(H.C.d1, l), H.C.s,
                           c.compose(H.C.x, l));
    return {std::move(C), H.h, c.compose(H.f, l), c.compose(H.g, l)};
}

// r H : same cylinder, h replaced by r h.
template <ModelInstance I>
Homotopy<I> whisker_right(const I& c, const typename I::Morphism& r, const Homotopy<I>& H) {
    if (!(c.dom(r) == c.cod(H.h))) throw InvalidInput("whisker: r does not start at the homotopy target");
    return {H.C, c.compose(r, H.h), c.compose(r, H.f), c.compose(r, H.g)};
}

// Validates a homotopy sequence; consecutive endpoints must agree.
template <ModelInstance I>
Diagnostics validate_sequence(const I& c, const HomotopySequence<I>& seq) {
    Diagnostics d;
    for (std::size_t k = 0; k < seq.size(); ++k) {
        d.append(validate_homotopy(c, seq[k]));
        if (k + 1 < seq.size()) d.add("sequence endpoints agree", seq[k].g == seq[k + 1].f);
    }
    return d;
}

}  // namespace hocat
