#pragma once

#include <concepts>
#include <stdexcept>
#include <string>
#include <vector>

namespace hocat {

struct ClassFlags {
    bool is_we = false;
    bool is_fib = false;
    bool is_cof = false;

    bool trivial_fibration() const { return is_we && is_fib; }
    bool trivial_cofibration() const { return is_we && is_cof; }
    friend bool operator==(const ClassFlags&, const ClassFlags&) = default;
};

enum class FactorSystem { CofThenTrivFib, TrivCofThenFib };

inline const char* to_string(FactorSystem s) {
    return s == FactorSystem::CofThenTrivFib ? "cof_trivfib" : "trivcof_fib";
}

// Whether (left, right) carry the classes demanded by the system.
inline bool factor_flags_match(FactorSystem s, const ClassFlags& left, const ClassFlags& right) {
    if (s == FactorSystem::CofThenTrivFib) return left.is_cof && right.trivial_fibration();
    return left.trivial_cofibration() && right.is_fib;
}

template <class M>
struct Factorization {
    M left;
    M right;
    FactorSystem system;
};

// Square  A --u--> X
//         i|       |p
//         B --v--> Y      with p u = v i.
template <class M>
struct LiftProblem {
    M i;
    M p;
    M u;
    M v;
};

template <class O, class M>
struct Coproduct {
    O object;
    M in0;
    M in1;
};

template <class O, class M>
struct Product {
    O object;
    M pr0;
    M pr1;
};

// Pushout of a span B <-f- A -g-> C with in_left f = in_right g.
template <class O, class M>
struct Pushout {
    O object;
    M in_left;
    M in_right;
};

struct InvalidInput : std::runtime_error {
    using std::runtime_error::runtime_error;
};

struct PreconditionFailed : std::runtime_error {
    using std::runtime_error::runtime_error;
};

struct NoLift : std::runtime_error {
    using std::runtime_error::runtime_error;
};

// A computable model category.  Morphisms carry their endpoints; equality of
// objects and morphisms is decidable with operator==.
template <class I>
concept ModelInstance =
    requires(const I& c, const typename I::Object& X, const typename I::Morphism& f,
             const LiftProblem<typename I::Morphism>& sq, FactorSystem sys,
             const Coproduct<typename I::Object, typename I::Morphism>& cp,
             const Product<typename I::Object, typename I::Morphism>& pr,
             const Pushout<typename I::Object, typename I::Morphism>& po) {
        { X == X } -> std::convertible_to<bool>;
        { f == f } -> std::convertible_to<bool>;
        { c.dom(f) } -> std::convertible_to<typename I::Object>;
        { c.cod(f) } -> std::convertible_to<typename I::Object>;
        { c.compose(f, f) } -> std::convertible_to<typename I::Morphism>;
        { c.identity(X) } -> std::convertible_to<typename I::Morphism>;
        { c.classify(f) } -> std::convertible_to<ClassFlags>;
        { c.initial() } -> std::convertible_to<typename I::Object>;
        { c.terminal() } -> std::convertible_to<typename I::Object>;
        { c.from_initial(X) } -> std::convertible_to<typename I::Morphism>;
        { c.to_terminal(X) } -> std::convertible_to<typename I::Morphism>;
        { c.coproduct(X, X) } -> std::convertible_to<Coproduct<typename I::Object, typename I::Morphism>>;
        { c.copair(cp, f, f) } -> std::convertible_to<typename I::Morphism>;
        { c.product(X, X) } -> std::convertible_to<Product<typename I::Object, typename I::Morphism>>;
        { c.pair(pr, f, f) } -> std::convertible_to<typename I::Morphism>;
        { c.pushout(f, f) } -> std::convertible_to<Pushout<typename I::Object, typename I::Morphism>>;
        { c.pushout_copair(po, f, f) } -> std::convertible_to<typename I::Morphism>;
        { c.factorize(f, sys) } -> std::convertible_to<Factorization<typename I::Morphism>>;
        { c.solve_lift(sq) } -> std::convertible_to<typename I::Morphism>;
        { c.functorial() } -> std::convertible_to<bool>;
        { c.normal() } -> std::convertible_to<bool>;
        { c.describe(f) } -> std::convertible_to<std::string>;
    };

// Composition of a chain written right to left: compose_all(c, {h, g, f}) = h g f.
template <ModelInstance I>
typename I::Morphism compose_all(const I& c, const std::vector<typename I::Morphism>& chain) {
    if (chain.empty()) throw InvalidInput("empty composition");
    auto out = chain.back();
    for (auto it = chain.rbegin() + 1; it != chain.rend(); ++it) out = c.compose(*it, out);
    return out;
}

template <ModelInstance I>
bool is_fibrant(const I& c, const typename I::Object& X) {
    return c.classify(c.to_terminal(X)).is_fib;
}

template <ModelInstance I>
bool is_cofibrant(const I& c, const typename I::Object& X) {
    return c.classify(c.from_initial(X)).is_cof;
}

template <ModelInstance I>
bool is_fibrant_cofibrant(const I& c, const typename I::Object& X) {
    return is_fibrant(c, X) && is_cofibrant(c, X);
}

template <ModelInstance I>
bool square_commutes(const I& c, const LiftProblem<typename I::Morphism>& sq) {
    return c.compose(sq.p, sq.u) == c.compose(sq.v, sq.i);
}

// Returns X⊔X, both injections and the codiagonal.
template <ModelInstance I>
struct CodiagonalData {
    typename I::Object object;
    typename I::Morphism in0;
    typename I::Morphism in1;
    typename I::Morphism codiagonal;
};

template <ModelInstance I>
CodiagonalData<I> coproduct_and_codiagonal(const I& c, const typename I::Object& X) {
    auto cp = c.coproduct(X, X);
    auto id = c.identity(X);
    return {cp.object, cp.in0, cp.in1, c.copair(cp, id, id)};
}

template <ModelInstance I>
struct DiagonalData {
    typename I::Object object;
    typename I::Morphism pr0;
    typename I::Morphism pr1;
    typename I::Morphism diagonal;
};

template <ModelInstance I>
DiagonalData<I> product_and_diagonal(const I& c, const typename I::Object& Y) {
    auto pr = c.product(Y, Y);
    auto id = c.identity(Y);
    return {pr.object, pr.pr0, pr.pr1, c.pair(pr, id, id)};
}

// Checks the contract of a factorization: recomposition and class flags.
template <ModelInstance I>
bool factorization_valid(const I& c, const typename I::Morphism& f,
                         const Factorization<typename I::Morphism>& fa) {
    return c.compose(fa.right, fa.left) == f &&
           factor_flags_match(fa.system, c.classify(fa.left), c.classify(fa.right));
}

template <ModelInstance I>
bool lift_valid(const I& c, const LiftProblem<typename I::Morphism>& sq, const typename I::Morphism& h) {
    return c.compose(h, sq.i) == sq.u && c.compose(sq.p, h) == sq.v;
}

// Lift for a square whose edges form one of the two lifting pairs of the
// model structure; reports a precondition failure otherwise.
template <ModelInstance I>
typename I::Morphism solve_qualified_lift(const I& c, const LiftProblem<typename I::Morphism>& sq) {
    if (!square_commutes(c, sq)) throw PreconditionFailed("lifting square does not commute");
    auto fi = c.classify(sq.i), fp = c.classify(sq.p);
    bool ok = (fi.trivial_cofibration() && fp.is_fib) || (fi.is_cof && fp.trivial_fibration());
    if (!ok) throw PreconditionFailed("lifting square edges are not a lifting pair");
    return c.solve_lift(sq);
}

}  // namespace hocat
