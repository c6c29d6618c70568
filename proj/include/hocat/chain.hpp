#pragma once

#include <cstddef>
#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "hocat/calculus.hpp"
#include "hocat/core.hpp"
#include "hocat/homotopy.hpp"
#include "hocat/linalg.hpp"

namespace hocat {

// Non-negatively graded complex of finite-dimensional F_p vector spaces.
// Trailing zero degrees are trimmed, so equal complexes compare equal.
class ChainComplex {
public:
    ChainComplex() = default;
    // d[n-1] is d_n : X_n -> X_{n-1}; validates shapes and d^2 = 0.
    ChainComplex(std::uint32_t p, std::vector<std::size_t> dims, std::vector<Matrix> d);

    static ChainComplex zero(std::uint32_t p);
    // F_p in degree n.
    static ChainComplex sphere(std::uint32_t p, std::size_t n);
    // F_p in degrees n and n-1 joined by the identity (n >= 1).
    static ChainComplex disk(std::uint32_t p, std::size_t n);

    std::uint32_t modulus() const { return p_; }
    std::size_t length() const { return dims_.size(); }
    std::size_t dim(long n) const;
    std::size_t total_dim() const;
    const std::vector<std::size_t>& dims() const { return dims_; }
    // d_n : X_n -> X_{n-1}, a zero matrix of the right shape outside the support.
    Matrix diff(long n) const;

    friend bool operator==(const ChainComplex&, const ChainComplex&) = default;

private:
    std::uint32_t p_ = 2;
    std::vector<std::size_t> dims_;
    std::vector<Matrix> d_;
};

ChainComplex direct_sum(const ChainComplex& a, const ChainComplex& b);

// Graded map X -> Y raising degree by `degree`; component n : X_n -> Y_{n+degree}.
class GradedMap {
public:
    GradedMap() = default;
    GradedMap(ChainComplex source, ChainComplex target, int degree, std::vector<Matrix> components);

    static GradedMap zero(const ChainComplex& source, const ChainComplex& target, int degree);

    const ChainComplex& source() const { return source_; }
    const ChainComplex& target() const { return target_; }
    int degree() const { return degree_; }
    Matrix at(long n) const;
    const std::vector<Matrix>& components() const { return c_; }

    GradedMap operator+(const GradedMap& o) const;
    GradedMap operator-(const GradedMap& o) const;
    GradedMap operator-() const;
    bool is_zero() const;

    friend bool operator==(const GradedMap&, const GradedMap&) = default;

private:
    ChainComplex source_, target_;
    int degree_ = 0;
    std::vector<Matrix> c_;
};

// Degree-zero graded map commuting with the differentials.
class ChainMap {
public:
    ChainMap() = default;
    // Throws InvalidInput unless shapes fit and f d = d f.
    ChainMap(ChainComplex source, ChainComplex target, std::vector<Matrix> components);
    explicit ChainMap(const GradedMap& g);

    const ChainComplex& source() const { return g_.source(); }
    const ChainComplex& target() const { return g_.target(); }
    Matrix at(long n) const { return g_.at(n); }
    const GradedMap& graded() const { return g_; }

    ChainMap operator+(const ChainMap& o) const { return ChainMap(g_ + o.g_); }
    ChainMap operator-(const ChainMap& o) const { return ChainMap(g_ - o.g_); }

    friend bool operator==(const ChainMap&, const ChainMap&) = default;

private:
    GradedMap g_;
};

using ChainHomotopy = GradedMap;   // degree 1, f - g = d h + h d
using SecondHomotopy = GradedMap;  // degree 2, h - h' = d k - k d

// Composition of graded maps: degrees add.
GradedMap compose_graded(const GradedMap& g, const GradedMap& f);
// D K = d K - (-1)^deg K d.
GradedMap hom_differential(const GradedMap& k);

std::size_t homology(const ChainComplex& X, long n);
std::vector<std::size_t> homology_dims(const ChainComplex& X);
ChainComplex mapping_cone(const ChainMap& f);
bool is_quasi_isomorphism(const ChainMap& f);

// Solves D K = target for K of degree target.degree() + 1.
std::optional<GradedMap> solve_boundary(const GradedMap& target, SolveOrder order = SolveOrder::Forward);
std::optional<ChainHomotopy> null_homotopy(const ChainMap& f, const ChainMap& g);
std::optional<SecondHomotopy> second_homotopy(const ChainHomotopy& h, const ChainHomotopy& h2);

// All chain maps X -> Y (p^entries candidates; refuses above `limit` candidates).
std::vector<ChainMap> enumerate_chain_maps(const ChainComplex& X, const ChainComplex& Y,
                                           std::size_t limit = 1u << 20);

class ChainInstance {
public:
    using Object = ChainComplex;
    using Morphism = ChainMap;

    explicit ChainInstance(std::uint32_t p = 2);

    std::uint32_t modulus() const { return p_; }

    Object dom(const Morphism& f) const { return f.source(); }
    Object cod(const Morphism& f) const { return f.target(); }
    Morphism compose(const Morphism& g, const Morphism& f) const;
    Morphism identity(const Object& X) const;
    Morphism zero_map(const Object& X, const Object& Y) const;
    ClassFlags classify(const Morphism& f) const;

    Object initial() const { return ChainComplex::zero(p_); }
    Object terminal() const { return ChainComplex::zero(p_); }
    Morphism from_initial(const Object& X) const { return zero_map(initial(), X); }
    Morphism to_terminal(const Object& X) const { return zero_map(X, terminal()); }

    Coproduct<Object, Morphism> coproduct(const Object& X, const Object& Y) const;
    Morphism copair(const Coproduct<Object, Morphism>& cp, const Morphism& f, const Morphism& g) const;
    Product<Object, Morphism> product(const Object& X, const Object& Y) const;
    Morphism pair(const Product<Object, Morphism>& pr, const Morphism& f, const Morphism& g) const;
    // Cokernel of (f, -g) : A -> B ⊕ C.
    Pushout<Object, Morphism> pushout(const Morphism& f, const Morphism& g) const;
    Morphism pushout_copair(const Pushout<Object, Morphism>& po, const Morphism& u, const Morphism& v) const;

    // Normal: maps already in the left (right) class factor as (f, id) ((id, f)).
    Factorization<Morphism> factorize(const Morphism& f, FactorSystem system) const;
    // X -> Cyl(f) -> Y, a cofibration followed by a trivial fibration.
    Factorization<Morphism> mapping_cylinder(const Morphism& f) const;
    // X -> X ⊕ disks -> Y, a trivial cofibration followed by a fibration.
    Factorization<Morphism> disk_factorization(const Morphism& f) const;
    // Middle map of the raw constructions for a square v f = g u.
    Morphism mapping_cylinder_map(const Morphism& f, const Morphism& g, const Morphism& u,
                                  const Morphism& v) const;
    Morphism disk_factorization_map(const Morphism& f, const Morphism& g, const Morphism& u,
                                    const Morphism& v) const;

    // Lexicographically first solution of the degreewise linear system.
    Morphism solve_lift(const LiftProblem<Morphism>& sq) const { return solve_lift(sq, SolveOrder::Forward); }
    Morphism solve_lift(const LiftProblem<Morphism>& sq, SolveOrder order) const;

    bool functorial() const { return false; }
    bool normal() const { return true; }
    // Over a field every complex is fibrant and cofibrant.
    bool all_fibrant_cofibrant() const { return true; }

    std::string describe(const Morphism& f) const;

    // X ⊗ I: W_n = X_n ⊕ X_n ⊕ X_{n-1}, d(a, b, c) = (da + c, db - c, -dc).
    Cylinder<ChainInstance> standard_cylinder(const Object& X) const;
    // V_n = Y_n ⊕ Y_n ⊕ Y_{n+1} for n >= 1, d(a, b, c) = (da, db, a - b - dc),
    // truncated in degree 0 to {a = b + dc} with coordinates (b, c).
    PathObject<ChainInstance> standard_path(const Object& Y) const;

    // f ~> g on the standard cylinder from a chain homotopy f - g = dk + kd.
    Homotopy<ChainInstance> homotopy_from_chain(const Morphism& f, const Morphism& g, const ChainHomotopy& k) const;
    RightHomotopy<ChainInstance> right_homotopy_from_chain(const Morphism& f, const Morphism& g,
                                                           const ChainHomotopy& k) const;
    // Reads k back from a homotopy on the standard cylinder / path object.
    ChainHomotopy chain_homotopy_of_standard(const Homotopy<ChainInstance>& H) const;
    ChainHomotopy chain_homotopy_of_right(const RightHomotopy<ChainInstance>& K) const;

    // Chain homotopy carried by a homotopy on any cylinder: h K for a
    // contraction K of d0 - d1 with s K a boundary.
    ChainHomotopy extract_homotopy(const Homotopy<ChainInstance>& H) const;

    std::optional<Homotopy<ChainInstance>> find_homotopy(const Morphism& f, const Morphism& g) const;
    std::vector<Morphism> hom(const Object& X, const Object& Y) const { return enumerate_chain_maps(X, Y); }

private:
    void check_modulus(const ChainComplex& X) const;
    std::uint32_t p_;
};

// Two homotopies are the same 2-cell iff their chain homotopies differ by
// a second homotopy.
class ChainOracle {
public:
    explicit ChainOracle(const ChainInstance& c) : c_(&c) {}
    bool equal(const Homotopy<ChainInstance>& a, const Homotopy<ChainInstance>& b) const;
    std::optional<SecondHomotopy> witness(const Homotopy<ChainInstance>& a, const Homotopy<ChainInstance>& b) const;

private:
    const ChainInstance* c_;
};

}  // namespace hocat
