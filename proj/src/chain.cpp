#include "hocat/chain.hpp"

#include <algorithm>
#include <sstream>
#include <tuple>

namespace hocat {

namespace {

struct Block {
    std::size_t row;
    std::size_t col;
    Matrix m;
};

// Block matrix with the given row/column partitions; unspecified blocks are zero.
Matrix assemble(std::uint32_t p, const std::vector<std::size_t>& rows, const std::vector<std::size_t>& cols,
                const std::vector<Block>& blocks) {
    std::vector<std::size_t> r0(rows.size() + 1, 0), c0(cols.size() + 1, 0);
    for (std::size_t k = 0; k < rows.size(); ++k) r0[k + 1] = r0[k] + rows[k];
    for (std::size_t k = 0; k < cols.size(); ++k) c0[k + 1] = c0[k] + cols[k];
    Matrix out(p, r0.back(), c0.back());
    for (const auto& b : blocks) {
        if (b.m.rows() != rows[b.row] || b.m.cols() != cols[b.col])
            throw std::logic_error("block shape mismatch");
        out.paste(r0[b.row], c0[b.col], b.m);
    }
    return out;
}

Matrix eye(std::uint32_t p, std::size_t n) { return Matrix::identity(p, n); }

std::string dims_string(const ChainComplex& X) {
    std::ostringstream os;
    os << "(";
    for (std::size_t n = 0; n < X.length(); ++n) os << (n ? "," : "") << X.dim(static_cast<long>(n));
    os << ")";
    return os.str();
}

}  // namespace

// ---------------------------------------------------------------- complexes

ChainComplex::ChainComplex(std::uint32_t p, std::vector<std::size_t> dims, std::vector<Matrix> d)
    : p_(p), dims_(std::move(dims)), d_(std::move(d)) {
    if (!is_prime(p_)) throw InvalidInput("modulus is not prime");
    std::size_t expected = dims_.empty() ? 0 : dims_.size() - 1;
    if (d_.size() != expected) throw InvalidInput("complex needs one differential per positive degree");
    for (std::size_t n = 1; n < dims_.size(); ++n) {
        const auto& m = d_[n - 1];
        if (m.modulus() != p_ || m.rows() != dims_[n - 1] || m.cols() != dims_[n])
            throw InvalidInput("differential d_" + std::to_string(n) + " has the wrong shape");
    }
    for (std::size_t n = 2; n < dims_.size(); ++n)
        if (!(d_[n - 2] * d_[n - 1]).is_zero())
            throw InvalidInput("d_" + std::to_string(n - 1) + " d_" + std::to_string(n) + " is not zero");
    while (!dims_.empty() && dims_.back() == 0) {
        dims_.pop_back();
        if (!d_.empty()) d_.pop_back();
    }
}

ChainComplex ChainComplex::zero(std::uint32_t p) { return ChainComplex(p, {}, {}); }

ChainComplex ChainComplex::sphere(std::uint32_t p, std::size_t n) {
    std::vector<std::size_t> dims(n + 1, 0);
    dims[n] = 1;
    std::vector<Matrix> d;
    for (std::size_t k = 1; k <= n; ++k) d.push_back(Matrix(p, dims[k - 1], dims[k]));
    return ChainComplex(p, dims, d);
}

ChainComplex ChainComplex::disk(std::uint32_t p, std::size_t n) {
    if (n == 0) throw InvalidInput("disk needs top degree >= 1");
    std::vector<std::size_t> dims(n + 1, 0);
    dims[n] = dims[n - 1] = 1;
    std::vector<Matrix> d;
    for (std::size_t k = 1; k <= n; ++k)
        d.push_back(k == n ? Matrix::identity(p, 1) : Matrix(p, dims[k - 1], dims[k]));
    return ChainComplex(p, dims, d);
}

std::size_t ChainComplex::dim(long n) const {
    if (n < 0 || static_cast<std::size_t>(n) >= dims_.size()) return 0;
    return dims_[static_cast<std::size_t>(n)];
}

std::size_t ChainComplex::total_dim() const {
    std::size_t t = 0;
    for (auto v : dims_) t += v;
    return t;
}

Matrix ChainComplex::diff(long n) const {
    if (n >= 1 && static_cast<std::size_t>(n) < dims_.size()) return d_[static_cast<std::size_t>(n) - 1];
    return Matrix(p_, dim(n - 1), dim(n));
}

ChainComplex direct_sum(const ChainComplex& a, const ChainComplex& b) {
    if (a.modulus() != b.modulus()) throw InvalidInput("direct sum over different fields");
    std::size_t len = std::max(a.length(), b.length());
    std::vector<std::size_t> dims(len);
    std::vector<Matrix> d;
    for (std::size_t n = 0; n < len; ++n) dims[n] = a.dim(static_cast<long>(n)) + b.dim(static_cast<long>(n));
    for (std::size_t n = 1; n < len; ++n)
        d.push_back(block_diag(a.diff(static_cast<long>(n)), b.diff(static_cast<long>(n))));
    return ChainComplex(a.modulus(), dims, d);
}

// -------------------------------------------------------------- graded maps

GradedMap::GradedMap(ChainComplex source, ChainComplex target, int degree, std::vector<Matrix> components)
    : source_(std::move(source)), target_(std::move(target)), degree_(degree) {
    if (source_.modulus() != target_.modulus()) throw InvalidInput("map between complexes over different fields");
    const std::uint32_t p = source_.modulus();
    const std::size_t len = source_.length();
    for (std::size_t n = 0; n < std::max(len, components.size()); ++n) {
        const long ln = static_cast<long>(n);
        Matrix m = n < components.size() ? components[n] : Matrix(p, target_.dim(ln + degree), source_.dim(ln));
        if (m.modulus() != p || m.rows() != target_.dim(ln + degree) || m.cols() != source_.dim(ln))
            throw InvalidInput("map component " + std::to_string(n) + " has the wrong shape");
        if (n < len) c_.push_back(std::move(m));
    }
}

GradedMap GradedMap::zero(const ChainComplex& source, const ChainComplex& target, int degree) {
    return GradedMap(source, target, degree, {});
}

Matrix GradedMap::at(long n) const {
    if (n >= 0 && static_cast<std::size_t>(n) < c_.size()) return c_[static_cast<std::size_t>(n)];
    return Matrix(source_.modulus(), target_.dim(n + degree_), source_.dim(n));
}

GradedMap GradedMap::operator+(const GradedMap& o) const {
    if (!(source_ == o.source_) || !(target_ == o.target_) || degree_ != o.degree_)
        throw InvalidInput("adding maps with different endpoints");
    std::vector<Matrix> c;
    for (std::size_t n = 0; n < c_.size(); ++n) c.push_back(c_[n] + o.c_[n]);
    return GradedMap(source_, target_, degree_, c);
}

GradedMap GradedMap::operator-() const {
    std::vector<Matrix> c;
    for (const auto& m : c_) c.push_back(-m);
    return GradedMap(source_, target_, degree_, c);
}

GradedMap GradedMap::operator-(const GradedMap& o) const { return *this + (-o); }

bool GradedMap::is_zero() const {
    return std::all_of(c_.begin(), c_.end(), [](const Matrix& m) { return m.is_zero(); });
}

GradedMap compose_graded(const GradedMap& g, const GradedMap& f) {
    if (!(f.target() == g.source())) throw InvalidInput("composing non-composable maps");
    std::vector<Matrix> c;
    for (std::size_t n = 0; n < f.source().length(); ++n) {
        const long ln = static_cast<long>(n);
        c.push_back(g.at(ln + f.degree()) * f.at(ln));
    }
    return GradedMap(f.source(), g.target(), f.degree() + g.degree(), c);
}

GradedMap hom_differential(const GradedMap& k) {
    const auto& X = k.source();
    const auto& Y = k.target();
    const int e = k.degree();
    std::vector<Matrix> c;
    for (std::size_t n = 0; n < X.length(); ++n) {
        const long ln = static_cast<long>(n);
        Matrix a = Y.diff(ln + e) * k.at(ln);
        Matrix b = k.at(ln - 1) * X.diff(ln);
        c.push_back(e % 2 == 0 ? a - b : a + b);
    }
    return GradedMap(X, Y, e - 1, c);
}

ChainMap::ChainMap(ChainComplex source, ChainComplex target, std::vector<Matrix> components)
    : ChainMap(GradedMap(std::move(source), std::move(target), 0, std::move(components))) {}

ChainMap::ChainMap(const GradedMap& g) : g_(g) {
    if (g_.degree() != 0) throw InvalidInput("chain map must have degree 0");
    const std::size_t len = std::max(source().length(), target().length());
    for (std::size_t n = 1; n < len; ++n) {
        const long ln = static_cast<long>(n);
        if (!(g_.at(ln - 1) * source().diff(ln) == target().diff(ln) * g_.at(ln)))
            throw InvalidInput("map does not commute with the differential in degree " + std::to_string(n));
    }
}

// ----------------------------------------------------------------- homology

std::size_t homology(const ChainComplex& X, long n) {
    return X.dim(n) - rank(X.diff(n)) - rank(X.diff(n + 1));
}

std::vector<std::size_t> homology_dims(const ChainComplex& X) {
    std::vector<std::size_t> out;
    for (std::size_t n = 0; n < X.length(); ++n) out.push_back(homology(X, static_cast<long>(n)));
    return out;
}

ChainComplex mapping_cone(const ChainMap& f) {
    const auto& X = f.source();
    const auto& Y = f.target();
    const std::uint32_t p = X.modulus();
    const std::size_t len = std::max(X.length() + 1, Y.length());
    std::vector<std::size_t> dims(len);
    std::vector<Matrix> d;
    for (std::size_t n = 0; n < len; ++n) dims[n] = X.dim(static_cast<long>(n) - 1) + Y.dim(static_cast<long>(n));
    for (std::size_t n = 1; n < len; ++n) {
        const long ln = static_cast<long>(n);
        d.push_back(assemble(p, {X.dim(ln - 2), Y.dim(ln - 1)}, {X.dim(ln - 1), Y.dim(ln)},
                             {{0, 0, -X.diff(ln - 1)}, {1, 0, f.at(ln - 1)}, {1, 1, Y.diff(ln)}}));
    }
    return ChainComplex(p, dims, d);
}

bool is_quasi_isomorphism(const ChainMap& f) {
    auto cone = mapping_cone(f);
    for (std::size_t n = 0; n < cone.length(); ++n)
        if (homology(cone, static_cast<long>(n)) != 0) return false;
    return true;
}

std::optional<GradedMap> solve_boundary(const GradedMap& target, SolveOrder order) {
    const auto& X = target.source();
    const auto& Y = target.target();
    const std::uint32_t p = X.modulus();
    const int e = target.degree() + 1;
    const std::size_t len = X.length();
    LinearSystem sys(p);
    std::vector<std::size_t> K;
    for (std::size_t n = 0; n < len; ++n)
        K.push_back(sys.add_unknown(Y.dim(static_cast<long>(n) + e), X.dim(static_cast<long>(n))));
    for (std::size_t n = 0; n < len; ++n) {
        const long ln = static_cast<long>(n);
        std::vector<LinearSystem::Term> terms{{Y.diff(ln + e), K[n], eye(p, X.dim(ln))}};
        if (n > 0) {
            Matrix sign = eye(p, Y.dim(ln + e - 1));
            if (e % 2 == 0) sign = -sign;
            terms.push_back({sign, K[n - 1], X.diff(ln)});
        }
        sys.add_equation(terms, target.at(ln));
    }
    auto sol = sys.solve(order);
    if (!sol) return std::nullopt;
    return GradedMap(X, Y, e, *sol);
}

std::optional<ChainHomotopy> null_homotopy(const ChainMap& f, const ChainMap& g) {
    if (!(f.source() == g.source()) || !(f.target() == g.target()))
        throw InvalidInput("null_homotopy: maps are not parallel");
    return solve_boundary(f.graded() - g.graded());
}

std::optional<SecondHomotopy> second_homotopy(const ChainHomotopy& h, const ChainHomotopy& h2) {
    if (h.degree() != 1 || h2.degree() != 1) throw InvalidInput("second_homotopy: degree-1 maps required");
    return solve_boundary(h - h2);
}

std::vector<ChainMap> enumerate_chain_maps(const ChainComplex& X, const ChainComplex& Y, std::size_t limit) {
    const std::uint32_t p = X.modulus();
    const std::size_t len = std::max(X.length(), Y.length());
    LinearSystem sys(p);
    std::vector<std::size_t> F;
    for (std::size_t n = 0; n < len; ++n)
        F.push_back(sys.add_unknown(Y.dim(static_cast<long>(n)), X.dim(static_cast<long>(n))));
    for (std::size_t n = 1; n < len; ++n) {
        const long ln = static_cast<long>(n);
        sys.add_equation({{eye(p, Y.dim(ln - 1)), F[n - 1], X.diff(ln)}, {-Y.diff(ln), F[n], eye(p, X.dim(ln))}},
                         Matrix(p, Y.dim(ln - 1), X.dim(ln)));
    }
    auto space = sys.solution_space();
    const std::size_t m = space->basis.size();
    std::size_t count = 1;
    for (std::size_t k = 0; k < m; ++k) {
        if (count > limit / p) throw InvalidInput("too many chain maps to enumerate");
        count *= p;
    }
    std::vector<ChainMap> out;
    std::vector<Scalar> coeff(m, 0);
    for (std::size_t idx = 0; idx < count; ++idx) {
        std::vector<Matrix> comps = space->particular;
        for (std::size_t k = 0; k < m; ++k)
            if (coeff[k]) {
                for (std::size_t n = 0; n < len; ++n) comps[n] = comps[n] + space->basis[k][n].scaled(coeff[k]);
            }
        comps.resize(X.length());
        out.emplace_back(X, Y, comps);
        for (std::size_t k = m; k-- > 0;) {
            if (++coeff[k] < p) break;
            coeff[k] = 0;
        }
    }
    return out;
}

// ----------------------------------------------------------------- instance

ChainInstance::ChainInstance(std::uint32_t p) : p_(p) {
    if (!is_prime(p)) throw InvalidInput("modulus is not prime");
}

void ChainInstance::check_modulus(const ChainComplex& X) const {
    if (X.modulus() != p_) throw InvalidInput("complex over a different field");
}

ChainMap ChainInstance::compose(const ChainMap& g, const ChainMap& f) const {
    return ChainMap(compose_graded(g.graded(), f.graded()));
}

ChainMap ChainInstance::identity(const ChainComplex& X) const {
    std::vector<Matrix> c;
    for (auto d : X.dims()) c.push_back(eye(p_, d));
    return ChainMap(X, X, c);
}

ChainMap ChainInstance::zero_map(const ChainComplex& X, const ChainComplex& Y) const {
    return ChainMap(GradedMap::zero(X, Y, 0));
}

ClassFlags ChainInstance::classify(const ChainMap& f) const {
    ClassFlags out;
    out.is_we = is_quasi_isomorphism(f);
    out.is_fib = true;
    out.is_cof = true;
    const std::size_t len = std::max(f.source().length(), f.target().length());
    for (std::size_t n = 0; n < len; ++n) {
        Matrix m = f.at(static_cast<long>(n));
        if (n >= 1 && !is_surjective(m)) out.is_fib = false;
        if (!is_injective(m)) out.is_cof = false;
    }
    return out;
}

Coproduct<ChainComplex, ChainMap> ChainInstance::coproduct(const ChainComplex& X, const ChainComplex& Y) const {
    auto S = direct_sum(X, Y);
    std::vector<Matrix> a, b;
    for (std::size_t n = 0; n < X.length(); ++n) {
        const long ln = static_cast<long>(n);
        a.push_back(vstack(eye(p_, X.dim(ln)), Matrix(p_, Y.dim(ln), X.dim(ln))));
    }
    for (std::size_t n = 0; n < Y.length(); ++n) {
        const long ln = static_cast<long>(n);
        b.push_back(vstack(Matrix(p_, X.dim(ln), Y.dim(ln)), eye(p_, Y.dim(ln))));
    }
    return {S, ChainMap(X, S, a), ChainMap(Y, S, b)};
}

ChainMap ChainInstance::copair(const Coproduct<ChainComplex, ChainMap>& cp, const ChainMap& f,
                               const ChainMap& g) const {
    if (!(f.source() == cp.in0.source()) || !(g.source() == cp.in1.source()) || !(f.target() == g.target()))
        throw InvalidInput("copair: maps do not fit the coproduct");
    std::vector<Matrix> c;
    for (std::size_t n = 0; n < cp.object.length(); ++n) {
        const long ln = static_cast<long>(n);
        c.push_back(hstack(f.at(ln), g.at(ln)));
    }
    return ChainMap(cp.object, f.target(), c);
}

Product<ChainComplex, ChainMap> ChainInstance::product(const ChainComplex& X, const ChainComplex& Y) const {
    auto S = direct_sum(X, Y);
    std::vector<Matrix> a, b;
    for (std::size_t n = 0; n < S.length(); ++n) {
        const long ln = static_cast<long>(n);
        a.push_back(hstack(eye(p_, X.dim(ln)), Matrix(p_, X.dim(ln), Y.dim(ln))));
        b.push_back(hstack(Matrix(p_, Y.dim(ln), X.dim(ln)), eye(p_, Y.dim(ln))));
    }
    return {S, ChainMap(S, X, a), ChainMap(S, Y, b)};
}

ChainMap ChainInstance::pair(const Product<ChainComplex, ChainMap>& pr, const ChainMap& f, const ChainMap& g) const {
    if (!(f.target() == pr.pr0.target()) || !(g.target() == pr.pr1.target()) || !(f.source() == g.source()))
        throw InvalidInput("pair: maps do not fit the product");
    std::vector<Matrix> c;
    for (std::size_t n = 0; n < f.source().length(); ++n) {
        const long ln = static_cast<long>(n);
        c.push_back(vstack(f.at(ln), g.at(ln)));
    }
    return ChainMap(f.source(), pr.object, c);
}

Pushout<ChainComplex, ChainMap> ChainInstance::pushout(const ChainMap& f, const ChainMap& g) const {
    if (!(f.source() == g.source())) throw InvalidInput("pushout: maps do not share a domain");
    const auto& B = f.target();
    const auto& C = g.target();
    auto S = direct_sum(B, C);
    const std::size_t len = S.length();
    // Quotient coordinates are the non-pivot coordinates of the reduced
    // echelon basis of im(f, -g); q kills the image, sigma embeds.
    std::vector<Matrix> q(len), sigma(len);
    std::vector<std::size_t> dims(len);
    for (std::size_t n = 0; n < len; ++n) {
        const long ln = static_cast<long>(n);
        Matrix image = vstack(f.at(ln), -g.at(ln));
        auto ech = row_echelon(image.transpose());
        const std::size_t dn = S.dim(ln);
        std::vector<std::ptrdiff_t> pivot_row(dn, -1);
        for (std::size_t r = 0; r < ech.pivots.size(); ++r) pivot_row[ech.pivots[r]] = static_cast<std::ptrdiff_t>(r);
        std::vector<std::size_t> free;
        for (std::size_t j = 0; j < dn; ++j)
            if (pivot_row[j] < 0) free.push_back(j);
        dims[n] = free.size();
        q[n] = Matrix(p_, free.size(), dn);
        sigma[n] = Matrix(p_, dn, free.size());
        for (std::size_t k = 0; k < free.size(); ++k) {
            q[n].set(k, free[k], 1);
            sigma[n].set(free[k], k, 1);
        }
        for (std::size_t j = 0; j < dn; ++j) {
            if (pivot_row[j] < 0) continue;
            for (std::size_t k = 0; k < free.size(); ++k)
                q[n].set(k, j, -static_cast<long long>(ech.rows(static_cast<std::size_t>(pivot_row[j]), free[k])));
        }
    }
    std::vector<Matrix> d;
    for (std::size_t n = 1; n < len; ++n) d.push_back(q[n - 1] * S.diff(static_cast<long>(n)) * sigma[n]);
    ChainComplex P(p_, dims, d);
    std::vector<Matrix> left, right;
    for (std::size_t n = 0; n < B.length(); ++n) left.push_back(q[n].block(0, 0, dims[n], B.dim(static_cast<long>(n))));
    for (std::size_t n = 0; n < C.length(); ++n)
        right.push_back(q[n].block(0, B.dim(static_cast<long>(n)), dims[n], C.dim(static_cast<long>(n))));
    // P may have been trimmed; component shapes follow P's dims.
    auto fit = [&](std::vector<Matrix> comps, const ChainComplex& src) {
        for (std::size_t n = 0; n < comps.size(); ++n)
            comps[n] = comps[n].block(0, 0, P.dim(static_cast<long>(n)), src.dim(static_cast<long>(n)));
        return comps;
    };
    return {P, ChainMap(B, P, fit(left, B)), ChainMap(C, P, fit(right, C))};
}

ChainMap ChainInstance::pushout_copair(const Pushout<ChainComplex, ChainMap>& po, const ChainMap& u,
                                       const ChainMap& v) const {
    const auto& P = po.object;
    const auto& T = u.target();
    if (!(u.source() == po.in_left.source()) || !(v.source() == po.in_right.source()) || !(T == v.target()))
        throw InvalidInput("pushout_copair: maps do not fit the pushout");
    std::vector<Matrix> comps;
    for (std::size_t n = 0; n < P.length(); ++n) {
        const long ln = static_cast<long>(n);
        LinearSystem one(p_);
        auto t = one.add_unknown(T.dim(ln), P.dim(ln));
        one.add_equation({{eye(p_, T.dim(ln)), t, hstack(po.in_left.at(ln), po.in_right.at(ln))}},
                         hstack(u.at(ln), v.at(ln)));
        auto sol = one.solve();
        if (!sol) throw InvalidInput("pushout_copair: maps do not agree on the span");
        comps.push_back((*sol)[0]);
    }
    ChainMap out(P, T, comps);
    if (!(compose(out, po.in_left) == u) || !(compose(out, po.in_right) == v))
        throw InvalidInput("pushout_copair: maps do not agree on the span");
    return out;
}

Factorization<ChainMap> ChainInstance::mapping_cylinder(const ChainMap& f) const {
    const auto& X = f.source();
    const auto& Y = f.target();
    const std::size_t len = std::max(X.length() + 1, Y.length());
    std::vector<std::size_t> dims(len);
    std::vector<Matrix> d;
    for (std::size_t n = 0; n < len; ++n) {
        const long ln = static_cast<long>(n);
        dims[n] = X.dim(ln) + Y.dim(ln) + X.dim(ln - 1);
    }
    for (std::size_t n = 1; n < len; ++n) {
        const long ln = static_cast<long>(n);
        d.push_back(assemble(p_, {X.dim(ln - 1), Y.dim(ln - 1), X.dim(ln - 2)}, {X.dim(ln), Y.dim(ln), X.dim(ln - 1)},
                             {{0, 0, X.diff(ln)},
                              {0, 2, eye(p_, X.dim(ln - 1))},
                              {1, 1, Y.diff(ln)},
                              {1, 2, -f.at(ln - 1)},
                              {2, 2, -X.diff(ln - 1)}}));
    }
    ChainComplex M(p_, dims, d);
    std::vector<Matrix> left, right;
    for (std::size_t n = 0; n < X.length(); ++n) {
        const long ln = static_cast<long>(n);
        left.push_back(assemble(p_, {X.dim(ln), Y.dim(ln), X.dim(ln - 1)}, {X.dim(ln)}, {{0, 0, eye(p_, X.dim(ln))}}));
    }
    for (std::size_t n = 0; n < M.length(); ++n) {
        const long ln = static_cast<long>(n);
        right.push_back(assemble(p_, {Y.dim(ln)}, {X.dim(ln), Y.dim(ln), X.dim(ln - 1)},
                                 {{0, 0, f.at(ln)}, {0, 1, eye(p_, Y.dim(ln))}}));
    }
    return {ChainMap(X, M, left), ChainMap(M, Y, right), FactorSystem::CofThenTrivFib};
}

Factorization<ChainMap> ChainInstance::disk_factorization(const ChainMap& f) const {
    const auto& X = f.source();
    const auto& Y = f.target();
    // E_n = X_n ⊕ A_n ⊕ B_n with A_n = Y_n (n >= 1) and B_n = Y_{n+1}.
    auto A = [&](long n) { return n >= 1 ? Y.dim(n) : std::size_t{0}; };
    auto B = [&](long n) { return Y.dim(n + 1); };
    const std::size_t len = std::max(X.length(), Y.length());
    std::vector<std::size_t> dims(len);
    std::vector<Matrix> d;
    for (std::size_t n = 0; n < len; ++n) {
        const long ln = static_cast<long>(n);
        dims[n] = X.dim(ln) + A(ln) + B(ln);
    }
    for (std::size_t n = 1; n < len; ++n) {
        const long ln = static_cast<long>(n);
        d.push_back(assemble(p_, {X.dim(ln - 1), A(ln - 1), B(ln - 1)}, {X.dim(ln), A(ln), B(ln)},
                             {{0, 0, X.diff(ln)}, {2, 1, eye(p_, A(ln))}}));
    }
    ChainComplex E(p_, dims, d);
    std::vector<Matrix> left, right;
    for (std::size_t n = 0; n < X.length(); ++n) {
        const long ln = static_cast<long>(n);
        left.push_back(assemble(p_, {X.dim(ln), A(ln), B(ln)}, {X.dim(ln)}, {{0, 0, eye(p_, X.dim(ln))}}));
    }
    for (std::size_t n = 0; n < E.length(); ++n) {
        const long ln = static_cast<long>(n);
        std::vector<Block> blocks{{0, 0, f.at(ln)}, {0, 2, Y.diff(ln + 1)}};
        if (ln >= 1) blocks.push_back({0, 1, eye(p_, A(ln))});
        right.push_back(assemble(p_, {Y.dim(ln)}, {X.dim(ln), A(ln), B(ln)}, blocks));
    }
    return {ChainMap(X, E, left), ChainMap(E, Y, right), FactorSystem::TrivCofThenFib};
}

ChainMap ChainInstance::mapping_cylinder_map(const ChainMap& f, const ChainMap& g, const ChainMap& u,
                                             const ChainMap& v) const {
    auto Mf = mapping_cylinder(f).left.target();
    auto Mg = mapping_cylinder(g).left.target();
    const auto& X = f.source();
    const auto& Y = f.target();
    const auto& X2 = g.source();
    const auto& Y2 = g.target();
    std::vector<Matrix> c;
    for (std::size_t n = 0; n < Mf.length(); ++n) {
        const long ln = static_cast<long>(n);
        c.push_back(assemble(p_, {X2.dim(ln), Y2.dim(ln), X2.dim(ln - 1)}, {X.dim(ln), Y.dim(ln), X.dim(ln - 1)},
                             {{0, 0, u.at(ln)}, {1, 1, v.at(ln)}, {2, 2, u.at(ln - 1)}}));
        c.back() = c.back().block(0, 0, Mg.dim(ln), Mf.dim(ln));
    }
    return ChainMap(Mf, Mg, c);
}

ChainMap ChainInstance::disk_factorization_map(const ChainMap& f, const ChainMap& g, const ChainMap& u,
                                               const ChainMap& v) const {
    auto Ef = disk_factorization(f).left.target();
    auto Eg = disk_factorization(g).left.target();
    const auto& X = f.source();
    const auto& Y = f.target();
    const auto& X2 = g.source();
    const auto& Y2 = g.target();
    std::vector<Matrix> c;
    for (std::size_t n = 0; n < Ef.length(); ++n) {
        const long ln = static_cast<long>(n);
        std::size_t a1 = ln >= 1 ? Y.dim(ln) : 0, a2 = ln >= 1 ? Y2.dim(ln) : 0;
        std::vector<Block> blocks{{0, 0, u.at(ln)}, {2, 2, v.at(ln + 1)}};
        if (ln >= 1) blocks.push_back({1, 1, v.at(ln)});
        c.push_back(assemble(p_, {X2.dim(ln), a2, Y2.dim(ln + 1)}, {X.dim(ln), a1, Y.dim(ln + 1)}, blocks));
        c.back() = c.back().block(0, 0, Eg.dim(ln), Ef.dim(ln));
    }
    return ChainMap(Ef, Eg, c);
}

Factorization<ChainMap> ChainInstance::factorize(const ChainMap& f, FactorSystem system) const {
    check_modulus(f.source());
    auto flags = classify(f);
    auto idX = identity(f.source());
    auto idY = identity(f.target());
    if (system == FactorSystem::CofThenTrivFib) {
        if (flags.is_cof) return {f, idY, system};
        if (flags.trivial_fibration()) return {idX, f, system};
        return mapping_cylinder(f);
    }
    if (flags.trivial_cofibration()) return {f, idY, system};
    if (flags.is_fib) return {idX, f, system};
    return disk_factorization(f);
}

ChainMap ChainInstance::solve_lift(const LiftProblem<ChainMap>& sq, SolveOrder order) const {
    const auto& B = sq.i.target();
    const auto& X = sq.p.source();
    const auto& A = sq.i.source();
    const std::size_t len = std::max({A.length(), B.length(), X.length(), sq.p.target().length()});
    LinearSystem sys(p_);
    std::vector<std::size_t> h;
    for (std::size_t n = 0; n < len; ++n)
        h.push_back(sys.add_unknown(X.dim(static_cast<long>(n)), B.dim(static_cast<long>(n))));
    for (std::size_t n = 0; n < len; ++n) {
        const long ln = static_cast<long>(n);
        sys.add_equation({{eye(p_, X.dim(ln)), h[n], sq.i.at(ln)}}, sq.u.at(ln));
        sys.add_equation({{sq.p.at(ln), h[n], eye(p_, B.dim(ln))}}, sq.v.at(ln));
        if (n >= 1)
            sys.add_equation({{X.diff(ln), h[n], eye(p_, B.dim(ln))}, {-eye(p_, X.dim(ln - 1)), h[n - 1], B.diff(ln)}},
                             Matrix(p_, X.dim(ln - 1), B.dim(ln)));
    }
    auto sol = sys.solve(order);
    if (!sol) throw NoLift("no chain map solves the lifting square");
    sol->resize(B.length());
    return ChainMap(B, X, *sol);
}

std::string ChainInstance::describe(const ChainMap& f) const {
    return "chain map " + dims_string(f.source()) + " -> " + dims_string(f.target());
}

Cylinder<ChainInstance> ChainInstance::standard_cylinder(const ChainComplex& X) const {
    check_modulus(X);
    const std::size_t len = X.length() + 1;
    std::vector<std::size_t> dims(len);
    std::vector<Matrix> d;
    for (std::size_t n = 0; n < len; ++n) {
        const long ln = static_cast<long>(n);
        dims[n] = 2 * X.dim(ln) + X.dim(ln - 1);
    }
    for (std::size_t n = 1; n < len; ++n) {
        const long ln = static_cast<long>(n);
        d.push_back(assemble(p_, {X.dim(ln - 1), X.dim(ln - 1), X.dim(ln - 2)}, {X.dim(ln), X.dim(ln), X.dim(ln - 1)},
                             {{0, 0, X.diff(ln)},
                              {0, 2, eye(p_, X.dim(ln - 1))},
                              {1, 1, X.diff(ln)},
                              {1, 2, -eye(p_, X.dim(ln - 1))},
                              {2, 2, -X.diff(ln - 1)}}));
    }
    ChainComplex W(p_, dims, d);
    std::vector<Matrix> d0, d1, s;
    for (std::size_t n = 0; n < X.length(); ++n) {
        const long ln = static_cast<long>(n);
        std::vector<std::size_t> rows{X.dim(ln), X.dim(ln), X.dim(ln - 1)};
        d0.push_back(assemble(p_, rows, {X.dim(ln)}, {{0, 0, eye(p_, X.dim(ln))}}));
        d1.push_back(assemble(p_, rows, {X.dim(ln)}, {{1, 0, eye(p_, X.dim(ln))}}));
    }
    for (std::size_t n = 0; n < W.length(); ++n) {
        const long ln = static_cast<long>(n);
        s.push_back(assemble(p_, {X.dim(ln)}, {X.dim(ln), X.dim(ln), X.dim(ln - 1)},
                             {{0, 0, eye(p_, X.dim(ln))}, {0, 1, eye(p_, X.dim(ln))}}));
    }
    return make_cylinder(*this, X, W, X, ChainMap(X, W, d0), ChainMap(X, W, d1), ChainMap(W, X, s), identity(X));
}

PathObject<ChainInstance> ChainInstance::standard_path(const ChainComplex& Y) const {
    check_modulus(Y);
    const std::size_t len = Y.length();
    auto parts = [&](long n) -> std::vector<std::size_t> {
        if (n == 0) return {Y.dim(0), Y.dim(1)};
        return {Y.dim(n), Y.dim(n), Y.dim(n + 1)};
    };
    std::vector<std::size_t> dims(len);
    for (std::size_t n = 0; n < len; ++n) {
        auto pa = parts(static_cast<long>(n));
        for (auto v : pa) dims[n] += v;
    }
    std::vector<Matrix> d;
    for (std::size_t n = 1; n < len; ++n) {
        const long ln = static_cast<long>(n);
        if (n == 1) {
            d.push_back(assemble(p_, parts(0), parts(1),
                                 {{0, 1, Y.diff(1)},
                                  {1, 0, eye(p_, Y.dim(1))},
                                  {1, 1, -eye(p_, Y.dim(1))},
                                  {1, 2, -Y.diff(2)}}));
        } else {
            d.push_back(assemble(p_, parts(ln - 1), parts(ln),
                                 {{0, 0, Y.diff(ln)},
                                  {1, 1, Y.diff(ln)},
                                  {2, 0, eye(p_, Y.dim(ln))},
                                  {2, 1, -eye(p_, Y.dim(ln))},
                                  {2, 2, -Y.diff(ln + 1)}}));
        }
    }
    ChainComplex V(p_, dims, d);
    std::vector<Matrix> delta0, delta1, sigma;
    for (std::size_t n = 0; n < len; ++n) {
        const long ln = static_cast<long>(n);
        const std::size_t y = Y.dim(ln);
        if (n == 0) {
            delta0.push_back(assemble(p_, {y}, parts(0), {{0, 0, eye(p_, y)}, {0, 1, Y.diff(1)}}));
            delta1.push_back(assemble(p_, {y}, parts(0), {{0, 0, eye(p_, y)}}));
            sigma.push_back(assemble(p_, parts(0), {y}, {{0, 0, eye(p_, y)}}));
        } else {
            delta0.push_back(assemble(p_, {y}, parts(ln), {{0, 0, eye(p_, y)}}));
            delta1.push_back(assemble(p_, {y}, parts(ln), {{0, 1, eye(p_, y)}}));
            sigma.push_back(assemble(p_, parts(ln), {y}, {{0, 0, eye(p_, y)}, {1, 0, eye(p_, y)}}));
        }
    }
    return make_path_object(*this, Y, V, ChainMap(V, Y, delta0), ChainMap(V, Y, delta1), ChainMap(Y, V, sigma));
}

Homotopy<ChainInstance> ChainInstance::homotopy_from_chain(const ChainMap& f, const ChainMap& g,
                                                           const ChainHomotopy& k) const {
    if (k.degree() != 1 || !(k.source() == f.source()) || !(k.target() == f.target()))
        throw InvalidInput("homotopy_from_chain: k has the wrong shape");
    auto C = standard_cylinder(f.source());
    std::vector<Matrix> h;
    for (std::size_t n = 0; n < C.W.length(); ++n) {
        const long ln = static_cast<long>(n);
        h.push_back(hstack(hstack(f.at(ln), g.at(ln)), k.at(ln - 1)));
    }
    // ChainMap validates f - g = dk + kd through the chain condition on h.
    return {C, ChainMap(C.W, f.target(), h), f, g};
}

RightHomotopy<ChainInstance> ChainInstance::right_homotopy_from_chain(const ChainMap& f, const ChainMap& g,
                                                                      const ChainHomotopy& k) const {
    if (k.degree() != 1 || !(k.source() == f.source()) || !(k.target() == f.target()))
        throw InvalidInput("right_homotopy_from_chain: k has the wrong shape");
    auto P = standard_path(f.target());
    std::vector<Matrix> c;
    for (std::size_t n = 0; n < f.source().length(); ++n) {
        const long ln = static_cast<long>(n);
        if (n == 0)
            c.push_back(vstack(g.at(0), k.at(0)));
        else
            c.push_back(vstack(vstack(f.at(ln), g.at(ln)), k.at(ln)));
    }
    return {P, ChainMap(f.source(), P.V, c), f, g};
}

ChainHomotopy ChainInstance::chain_homotopy_of_standard(const Homotopy<ChainInstance>& H) const {
    const auto& X = H.C.X;
    if (!(H.C == standard_cylinder(X))) throw InvalidInput("homotopy is not on the standard cylinder");
    std::vector<Matrix> k;
    for (std::size_t n = 0; n < X.length(); ++n) {
        const long ln = static_cast<long>(n);
        Matrix h = H.h.at(ln + 1);
        k.push_back(h.block(0, 2 * X.dim(ln + 1), h.rows(), X.dim(ln)));
    }
    return GradedMap(X, H.f.target(), 1, k);
}

ChainHomotopy ChainInstance::chain_homotopy_of_right(const RightHomotopy<ChainInstance>& K) const {
    const auto& Y = K.P.Y;
    if (!(K.P == standard_path(Y))) throw InvalidInput("right homotopy is not on the standard path object");
    const auto& X = K.k.source();
    std::vector<Matrix> k;
    for (std::size_t n = 0; n < X.length(); ++n) {
        const long ln = static_cast<long>(n);
        Matrix m = K.k.at(ln);
        std::size_t offset = n == 0 ? Y.dim(0) : 2 * Y.dim(ln);
        k.push_back(m.block(offset, 0, Y.dim(ln + 1), m.cols()));
    }
    return GradedMap(X, Y, 1, k);
}

ChainHomotopy ChainInstance::extract_homotopy(const Homotopy<ChainInstance>& H) const {
    const auto& X = H.C.X;
    const auto& W = H.C.W;
    const auto& Z = H.C.Z;
    const std::size_t len = X.length();
    LinearSystem sys(p_);
    std::vector<std::size_t> K, L;
    for (std::size_t n = 0; n < len; ++n) {
        const long ln = static_cast<long>(n);
        K.push_back(sys.add_unknown(W.dim(ln + 1), X.dim(ln)));
        L.push_back(sys.add_unknown(Z.dim(ln + 2), X.dim(ln)));
    }
    ChainMap diff = H.C.d0 - H.C.d1;
    for (std::size_t n = 0; n < len; ++n) {
        const long ln = static_cast<long>(n);
        // d K + K d = d0 - d1
        std::vector<LinearSystem::Term> a{{W.diff(ln + 1), K[n], eye(p_, X.dim(ln))}};
        if (n > 0) a.push_back({eye(p_, W.dim(ln)), K[n - 1], X.diff(ln)});
        sys.add_equation(a, diff.at(ln));
        // s K - (d L - L d) = 0
        std::vector<LinearSystem::Term> b{{H.C.s.at(ln + 1), K[n], eye(p_, X.dim(ln))},
                                          {-Z.diff(ln + 2), L[n], eye(p_, X.dim(ln))}};
        if (n > 0) b.push_back({eye(p_, Z.dim(ln + 1)), L[n - 1], X.diff(ln)});
        sys.add_equation(b, Matrix(p_, Z.dim(ln + 1), X.dim(ln)));
    }
    auto sol = sys.solve();
    if (!sol) throw PreconditionFailed("cylinder legs are not homotopic; s is not a weak equivalence");
    std::vector<Matrix> kc;
    for (std::size_t n = 0; n < len; ++n) kc.push_back((*sol)[K[n]]);
    GradedMap Kmap(X, W, 1, kc);
    return compose_graded(H.h.graded(), Kmap);
}

std::optional<Homotopy<ChainInstance>> ChainInstance::find_homotopy(const ChainMap& f, const ChainMap& g) const {
    auto k = null_homotopy(f, g);
    if (!k) return std::nullopt;
    return homotopy_from_chain(f, g, *k);
}

std::optional<SecondHomotopy> ChainOracle::witness(const Homotopy<ChainInstance>& a,
                                                   const Homotopy<ChainInstance>& b) const {
    if (!(a.f == b.f) || !(a.g == b.g)) throw InvalidInput("comparing homotopies with different endpoints");
    return second_homotopy(c_->extract_homotopy(a), c_->extract_homotopy(b));
}

bool ChainOracle::equal(const Homotopy<ChainInstance>& a, const Homotopy<ChainInstance>& b) const {
    return witness(a, b).has_value();
}

}  // namespace hocat
