#pragma once

#include <cstdint>
#include <random>
#include <string>
#include <vector>

#include "hocat/chain.hpp"
#include "hocat/tabular.hpp"
#include "hocat/two_category.hpp"

namespace hocat::testing {

using Rng = std::mt19937_64;
using ChainCell = TwoCell<ChainInstance>;
using ChainHo = HomotopyTwoCategory<ChainInstance, ChainOracle>;
using TabHo = HomotopyTwoCategory<TabularInstance, TabularOracle>;

#ifdef HOCAT_FIXTURE_DIR
inline std::string fixture(const std::string& rel) { return std::string(HOCAT_FIXTURE_DIR) + "/" + rel; }
#endif

inline Matrix random_matrix(Rng& rng, std::uint32_t p, std::size_t r, std::size_t c) {
    std::uniform_int_distribution<std::uint32_t> u(0, p - 1);
    Matrix m(p, r, c);
    for (std::size_t i = 0; i < r; ++i)
        for (std::size_t j = 0; j < c; ++j) m.set(i, j, u(rng));
    return m;
}

// Complex with total dimension at most max_total spread over at most
// max_len degrees; d_{n+1} is drawn inside ker d_n.
inline ChainComplex random_complex(Rng& rng, std::size_t max_total, std::size_t max_len = 3, std::uint32_t p = 2) {
    std::uniform_int_distribution<std::size_t> len_d(1, max_len);
    std::size_t len = len_d(rng);
    std::vector<std::size_t> dims(len, 0);
    std::uniform_int_distribution<std::size_t> total_d(0, max_total);
    std::size_t total = total_d(rng);
    std::uniform_int_distribution<std::size_t> slot(0, len - 1);
    for (std::size_t k = 0; k < total; ++k) ++dims[slot(rng)];
    std::vector<Matrix> d;
    for (std::size_t n = 1; n < len; ++n) {
        if (n == 1) {
            d.push_back(random_matrix(rng, p, dims[0], dims[1]));
        } else {
            Matrix K = kernel_basis(d.back());
            d.push_back(K * random_matrix(rng, p, K.cols(), dims[n]));
        }
    }
    return ChainComplex(p, dims, d);
}

// Uniform element of the space of chain maps X -> Y.
inline ChainMap random_chain_map(Rng& rng, const ChainComplex& X, const ChainComplex& Y) {
    const auto p = X.modulus();
    LinearSystem sys(p);
    std::vector<std::size_t> u;
    for (std::size_t n = 0; n < X.length(); ++n) {
        long dn = static_cast<long>(n);
        u.push_back(sys.add_unknown(Y.dim(dn), X.dim(dn)));
    }
    for (std::size_t n = 1; n < X.length(); ++n) {
        long dn = static_cast<long>(n);
        sys.add_equation({{Matrix::identity(p, Y.dim(dn - 1)), u[n - 1], X.diff(dn)},
                          {-Y.diff(dn), u[n], Matrix::identity(p, X.dim(dn))}},
                         Matrix::zero(p, Y.dim(dn - 1), X.dim(dn)));
    }
    auto space = sys.solution_space();
    std::vector<Matrix> comps = space->particular;
    std::uniform_int_distribution<std::uint32_t> coef(0, p - 1);
    for (const auto& b : space->basis) {
        auto k = coef(rng);
        for (std::size_t n = 0; n < comps.size(); ++n) comps[n] = comps[n] + b[n].scaled(k);
    }
    return ChainMap(X, Y, comps);
}

inline GradedMap random_graded(Rng& rng, const ChainComplex& X, const ChainComplex& Y, int degree) {
    std::vector<Matrix> comps;
    for (std::size_t n = 0; n < X.length(); ++n) {
        long dn = static_cast<long>(n);
        comps.push_back(random_matrix(rng, X.modulus(), Y.dim(dn + degree), X.dim(dn)));
    }
    return GradedMap(X, Y, degree, comps);
}

// g = f - (dk + kd) for a random k, so that k witnesses f ~ g.
struct HomotopicPair {
    ChainMap f, g;
    ChainHomotopy k;
};

inline HomotopicPair random_homotopic(Rng& rng, const ChainMap& f) {
    auto k = random_graded(rng, f.source(), f.target(), 1);
    ChainMap g(f.graded() - hom_differential(k));
    return {f, g, k};
}

// Contractible complex made of `count` disks in random degrees below len.
inline ChainComplex random_disks(Rng& rng, std::size_t count, std::size_t len, std::uint32_t p = 2) {
    std::uniform_int_distribution<std::size_t> deg(1, std::max<std::size_t>(len, 1));
    ChainComplex D = ChainComplex::zero(p);
    for (std::size_t k = 0; k < count; ++k) D = direct_sum(D, ChainComplex::disk(p, deg(rng)));
    return D;
}

// Inclusion of the first summand and projection onto it.
inline ChainMap inclusion_first(const ChainComplex& A, const ChainComplex& B) {
    auto S = direct_sum(A, B);
    std::vector<Matrix> c;
    for (std::size_t n = 0; n < A.length(); ++n) {
        long dn = static_cast<long>(n);
        Matrix m = Matrix::zero(A.modulus(), S.dim(dn), A.dim(dn));
        m.paste(0, 0, Matrix::identity(A.modulus(), A.dim(dn)));
        c.push_back(m);
    }
    return ChainMap(A, S, c);
}

inline ChainMap projection_first(const ChainComplex& A, const ChainComplex& B) {
    auto S = direct_sum(A, B);
    std::vector<Matrix> c;
    for (std::size_t n = 0; n < S.length(); ++n) {
        long dn = static_cast<long>(n);
        Matrix m = Matrix::zero(A.modulus(), A.dim(dn), S.dim(dn));
        m.paste(0, 0, Matrix::identity(A.modulus(), A.dim(dn)));
        c.push_back(m);
    }
    return ChainMap(S, A, c);
}

// (a b) : A ⊕ B -> C.
inline ChainMap join_maps(const ChainMap& a, const ChainMap& b) {
    auto S = direct_sum(a.source(), b.source());
    std::vector<Matrix> comps;
    for (std::size_t n = 0; n < S.length(); ++n) {
        long dn = static_cast<long>(n);
        comps.push_back(hstack(a.at(dn), b.at(dn)));
    }
    return ChainMap(S, a.target(), comps);
}

// Block map A ⊕ B -> C ⊕ D from its four components.
inline ChainMap block_map(const ChainMap& a, const ChainMap& b, const ChainMap& c, const ChainMap& d) {
    // [[a, b], [c, d]] with a : A -> C, b : B -> C, c : A -> D, d : B -> D.
    auto S = direct_sum(a.source(), b.source());
    auto T = direct_sum(a.target(), c.target());
    std::vector<Matrix> comps;
    for (std::size_t n = 0; n < S.length(); ++n) {
        long dn = static_cast<long>(n);
        Matrix m = Matrix::zero(S.modulus(), T.dim(dn), S.dim(dn));
        std::size_t ra = a.target().dim(dn), ca = a.source().dim(dn);
        m.paste(0, 0, a.at(dn));
        m.paste(0, ca, b.at(dn));
        m.paste(ra, 0, c.at(dn));
        m.paste(ra, ca, d.at(dn));
        comps.push_back(m);
    }
    return ChainMap(S, T, comps);
}

// Random quasi-isomorphism: a random chain map X -> X ⊕ D or X ⊕ D -> X
// kept only when it is a quasi-isomorphism.
inline ChainMap random_quasi_iso(Rng& rng, std::size_t max_total = 4) {
    for (;;) {
        auto X = random_complex(rng, max_total, 3);
        auto D = random_disks(rng, std::uniform_int_distribution<std::size_t>(0, 2)(rng), X.length());
        auto S = direct_sum(X, D);
        bool forward = std::bernoulli_distribution(0.5)(rng);
        auto f = forward ? random_chain_map(rng, X, S) : random_chain_map(rng, S, X);
        if (is_quasi_isomorphism(f)) return f;
    }
}

// Homotopy on a non-standard cylinder carrying H: W' = W ⊕ D with the
// extension e : D -> Y, Z' = X ⊕ E with s' = s ⊕ t.  The inclusion of the
// standard cylinder is a cylinder map, so the result is germ-related to H.
struct GermPair {
    Homotopy<ChainInstance> lower, upper;
    CylinderMap<ChainInstance> map;
};

inline GermPair random_germ_extension(Rng& rng, const ChainInstance& c, const Homotopy<ChainInstance>& H) {
    const auto& C = H.C;
    auto Y = c.cod(H.h);
    auto D = random_disks(rng, std::uniform_int_distribution<std::size_t>(0, 2)(rng), C.W.length() + 1);
    auto E = random_disks(rng, std::uniform_int_distribution<std::size_t>(0, 1)(rng), C.W.length() + 1);
    auto Wp = direct_sum(C.W, D);
    auto Zp = direct_sum(C.Z, E);
    auto t = random_chain_map(rng, D, E);
    auto e = random_chain_map(rng, D, Y);
    auto inW = inclusion_first(C.W, D);
    auto inZ = inclusion_first(C.Z, E);
    auto sp = block_map(C.s, c.zero_map(D, C.Z), c.zero_map(C.W, E), t);
    auto hp = join_maps(H.h, e);
    auto Cp = make_cylinder(c, C.X, Wp, Zp, c.compose(inW, C.d0), c.compose(inW, C.d1), sp, c.compose(inZ, C.x));
    Homotopy<ChainInstance> up{Cp, hp, H.f, H.g};
    return {H, up, {C, Cp, inW, inZ}};
}

}  // namespace hocat::testing
