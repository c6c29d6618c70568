#include "hocat/linalg.hpp"

#include <algorithm>
#include <stdexcept>

namespace hocat {

bool is_prime(std::uint32_t p) {
    if (p < 2) return false;
    for (std::uint32_t d = 2; static_cast<std::uint64_t>(d) * d <= p; ++d)
        if (p % d == 0) return false;
    return true;
}

Scalar inverse_mod(Scalar a, std::uint32_t p) {
    // Fermat: a^(p-2).
    std::uint64_t result = 1, base = a % p;
    std::uint32_t e = p - 2;
    while (e) {
        if (e & 1) result = result * base % p;
        base = base * base % p;
        e >>= 1;
    }
    return static_cast<Scalar>(result);
}

namespace {

Scalar reduce(long long v, std::uint32_t p) {
    long long r = v % static_cast<long long>(p);
    return static_cast<Scalar>(r < 0 ? r + p : r);
}

void check_same_shape(const Matrix& a, const Matrix& b) {
    if (a.modulus() != b.modulus() || a.rows() != b.rows() || a.cols() != b.cols())
        throw std::invalid_argument("matrix shape mismatch");
}

// In-place Gauss-Jordan on rows of width `width`; only the first `ncols`
// columns are eligible as pivots, visited in `order`.  Returns pivot column
// per reduced row (rows beyond the returned size are zero in those columns).
std::vector<std::size_t> eliminate(std::vector<std::vector<Scalar>>& rows, std::size_t width,
                                   const std::vector<std::size_t>& order, std::uint32_t p) {
    std::vector<std::size_t> pivots;
    std::size_t next = 0;
    for (std::size_t col : order) {
        std::size_t found = rows.size();
        for (std::size_t r = next; r < rows.size(); ++r)
            if (rows[r][col] != 0) {
                found = r;
                break;
            }
        if (found == rows.size()) continue;
        std::swap(rows[next], rows[found]);
        auto& prow = rows[next];
        Scalar inv = inverse_mod(prow[col], p);
        if (inv != 1)
            for (std::size_t c = 0; c < width; ++c)
                prow[c] = static_cast<Scalar>(static_cast<std::uint64_t>(prow[c]) * inv % p);
        for (std::size_t r = 0; r < rows.size(); ++r) {
            if (r == next) continue;
            Scalar f = rows[r][col];
            if (f == 0) continue;
            auto& row = rows[r];
            Scalar neg = static_cast<Scalar>(p - f);
            for (std::size_t c = 0; c < width; ++c)
                if (prow[c] != 0)
                    row[c] = static_cast<Scalar>((row[c] + static_cast<std::uint64_t>(neg) * prow[c]) % p);
        }
        pivots.push_back(col);
        ++next;
        if (next == rows.size()) break;
    }
    return pivots;
}

std::vector<std::size_t> column_order(std::size_t n, SolveOrder order) {
    std::vector<std::size_t> cols(n);
    for (std::size_t i = 0; i < n; ++i) cols[i] = (order == SolveOrder::Forward) ? n - 1 - i : i;
    return cols;
}

}  // namespace

Matrix::Matrix(std::uint32_t p, std::size_t rows, std::size_t cols)
    : p_(p), rows_(rows), cols_(cols), a_(rows * cols, 0) {}

Matrix Matrix::zero(std::uint32_t p, std::size_t rows, std::size_t cols) { return Matrix(p, rows, cols); }

Matrix Matrix::identity(std::uint32_t p, std::size_t n) {
    Matrix m(p, n, n);
    for (std::size_t i = 0; i < n; ++i) m.a_[i * n + i] = 1;
    return m;
}

Matrix Matrix::from_rows(std::uint32_t p, std::size_t rows, std::size_t cols,
                         const std::vector<std::vector<long long>>& entries) {
    if (entries.size() != rows) throw std::invalid_argument("matrix row count mismatch");
    Matrix m(p, rows, cols);
    for (std::size_t r = 0; r < rows; ++r) {
        if (entries[r].size() != cols) throw std::invalid_argument("matrix column count mismatch");
        for (std::size_t c = 0; c < cols; ++c) m.a_[r * cols + c] = reduce(entries[r][c], p);
    }
    return m;
}

void Matrix::set(std::size_t r, std::size_t c, long long value) { a_[r * cols_ + c] = reduce(value, p_); }

void Matrix::add_to(std::size_t r, std::size_t c, Scalar value) {
    auto& e = a_[r * cols_ + c];
    e = static_cast<Scalar>((static_cast<std::uint64_t>(e) + value) % p_);
}

bool Matrix::is_zero() const {
    return std::all_of(a_.begin(), a_.end(), [](Scalar v) { return v == 0; });
}

std::vector<std::vector<long long>> Matrix::to_rows() const {
    std::vector<std::vector<long long>> out(rows_, std::vector<long long>(cols_));
    for (std::size_t r = 0; r < rows_; ++r)
        for (std::size_t c = 0; c < cols_; ++c) out[r][c] = a_[r * cols_ + c];
    return out;
}

Matrix Matrix::operator*(const Matrix& rhs) const {
    if (cols_ != rhs.rows_ || p_ != rhs.p_) throw std::invalid_argument("matrix product shape mismatch");
    Matrix out(p_, rows_, rhs.cols_);
    for (std::size_t i = 0; i < rows_; ++i)
        for (std::size_t k = 0; k < cols_; ++k) {
            Scalar a = a_[i * cols_ + k];
            if (a == 0) continue;
            for (std::size_t j = 0; j < rhs.cols_; ++j) {
                Scalar b = rhs.a_[k * rhs.cols_ + j];
                if (b == 0) continue;
                auto& e = out.a_[i * rhs.cols_ + j];
                e = static_cast<Scalar>((e + static_cast<std::uint64_t>(a) * b) % p_);
            }
        }
    return out;
}

Matrix Matrix::operator+(const Matrix& rhs) const {
    check_same_shape(*this, rhs);
    Matrix out = *this;
    for (std::size_t i = 0; i < a_.size(); ++i) out.a_[i] = static_cast<Scalar>((a_[i] + rhs.a_[i]) % p_);
    return out;
}

Matrix Matrix::operator-(const Matrix& rhs) const { return *this + (-rhs); }

Matrix Matrix::operator-() const {
    Matrix out = *this;
    for (auto& e : out.a_) e = e == 0 ? 0 : p_ - e;
    return out;
}

Matrix Matrix::scaled(Scalar k) const {
    Matrix out = *this;
    for (auto& e : out.a_) e = static_cast<Scalar>(static_cast<std::uint64_t>(e) * (k % p_) % p_);
    return out;
}

Matrix Matrix::transpose() const {
    Matrix out(p_, cols_, rows_);
    for (std::size_t r = 0; r < rows_; ++r)
        for (std::size_t c = 0; c < cols_; ++c) out.a_[c * rows_ + r] = a_[r * cols_ + c];
    return out;
}

Matrix Matrix::block(std::size_t r0, std::size_t c0, std::size_t rows, std::size_t cols) const {
    if (r0 + rows > rows_ || c0 + cols > cols_) throw std::out_of_range("matrix block out of range");
    Matrix out(p_, rows, cols);
    for (std::size_t r = 0; r < rows; ++r)
        for (std::size_t c = 0; c < cols; ++c) out.a_[r * cols + c] = a_[(r0 + r) * cols_ + c0 + c];
    return out;
}

void Matrix::paste(std::size_t r0, std::size_t c0, const Matrix& m) {
    if (r0 + m.rows_ > rows_ || c0 + m.cols_ > cols_) throw std::out_of_range("matrix paste out of range");
    for (std::size_t r = 0; r < m.rows_; ++r)
        for (std::size_t c = 0; c < m.cols_; ++c) a_[(r0 + r) * cols_ + c0 + c] = m.a_[r * m.cols_ + c];
}

Matrix hstack(const Matrix& a, const Matrix& b) {
    if (a.rows() != b.rows()) throw std::invalid_argument("hstack row mismatch");
    Matrix out(a.modulus(), a.rows(), a.cols() + b.cols());
    out.paste(0, 0, a);
    out.paste(0, a.cols(), b);
    return out;
}

Matrix vstack(const Matrix& a, const Matrix& b) {
    if (a.cols() != b.cols()) throw std::invalid_argument("vstack column mismatch");
    Matrix out(a.modulus(), a.rows() + b.rows(), a.cols());
    out.paste(0, 0, a);
    out.paste(a.rows(), 0, b);
    return out;
}

Matrix block_diag(const Matrix& a, const Matrix& b) {
    Matrix out(a.modulus(), a.rows() + b.rows(), a.cols() + b.cols());
    out.paste(0, 0, a);
    out.paste(a.rows(), a.cols(), b);
    return out;
}

RowEchelon row_echelon(const Matrix& m) {
    std::vector<std::vector<Scalar>> rows(m.rows(), std::vector<Scalar>(m.cols()));
    for (std::size_t r = 0; r < m.rows(); ++r)
        for (std::size_t c = 0; c < m.cols(); ++c) rows[r][c] = m(r, c);
    auto pivots = eliminate(rows, m.cols(), column_order(m.cols(), SolveOrder::Reverse), m.modulus());
    RowEchelon out{Matrix(m.modulus(), pivots.size(), m.cols()), pivots};
    for (std::size_t r = 0; r < pivots.size(); ++r)
        for (std::size_t c = 0; c < m.cols(); ++c) out.rows.set(r, c, rows[r][c]);
    return out;
}

std::size_t rank(const Matrix& m) { return row_echelon(m).pivots.size(); }

bool is_injective(const Matrix& m) { return rank(m) == m.cols(); }

bool is_surjective(const Matrix& m) { return rank(m) == m.rows(); }

Matrix kernel_basis(const Matrix& m) {
    std::vector<Scalar> zero(m.rows(), 0);
    auto sol = solve_affine(m, zero, SolveOrder::Reverse);
    return sol->nullspace;
}

std::optional<AffineSolution> solve_affine(const Matrix& a, const std::vector<Scalar>& b, SolveOrder order) {
    const std::size_t n = a.cols();
    const std::uint32_t p = a.modulus();
    if (b.size() != a.rows()) throw std::invalid_argument("right-hand side length mismatch");
    std::vector<std::vector<Scalar>> rows(a.rows(), std::vector<Scalar>(n + 1));
    for (std::size_t r = 0; r < a.rows(); ++r) {
        for (std::size_t c = 0; c < n; ++c) rows[r][c] = a(r, c);
        rows[r][n] = b[r] % p;
    }
    auto pivots = eliminate(rows, n + 1, column_order(n, order), p);
    for (std::size_t r = pivots.size(); r < rows.size(); ++r)
        if (rows[r][n] != 0) return std::nullopt;

    AffineSolution out;
    out.particular.assign(n, 0);
    std::vector<bool> is_pivot(n, false);
    for (std::size_t r = 0; r < pivots.size(); ++r) {
        out.particular[pivots[r]] = rows[r][n];
        is_pivot[pivots[r]] = true;
    }
    std::vector<std::size_t> free_cols;
    for (std::size_t c = 0; c < n; ++c)
        if (!is_pivot[c]) free_cols.push_back(c);
    out.nullspace = Matrix(p, n, free_cols.size());
    for (std::size_t k = 0; k < free_cols.size(); ++k) {
        out.nullspace.set(free_cols[k], k, 1);
        for (std::size_t r = 0; r < pivots.size(); ++r)
            if (rows[r][free_cols[k]] != 0) out.nullspace.set(pivots[r], k, -static_cast<long long>(rows[r][free_cols[k]]));
    }
    return out;
}

std::optional<std::vector<Scalar>> solve_linear(const Matrix& a, const std::vector<Scalar>& b, SolveOrder order) {
    auto sol = solve_affine(a, b, order);
    if (!sol) return std::nullopt;
    return sol->particular;
}

std::size_t LinearSystem::add_unknown(std::size_t rows, std::size_t cols) {
    shapes_.emplace_back(rows, cols);
    offsets_.push_back(total_);
    total_ += rows * cols;
    return shapes_.size() - 1;
}

void LinearSystem::add_equation(const std::vector<Term>& terms, const Matrix& rhs) {
    const std::size_t base = rows_.size();
    rows_.resize(base + rhs.rows() * rhs.cols());
    rhs_.resize(rows_.size());
    for (std::size_t a = 0; a < rhs.rows(); ++a)
        for (std::size_t b = 0; b < rhs.cols(); ++b) rhs_[base + a * rhs.cols() + b] = rhs(a, b);
    for (const auto& t : terms) {
        const auto [xr, xc] = shapes_.at(t.unknown);
        if (t.left.rows() != rhs.rows() || t.left.cols() != xr || t.right.rows() != xc ||
            t.right.cols() != rhs.cols())
            throw std::invalid_argument("linear system term shape mismatch");
        const std::size_t off = offsets_[t.unknown];
        for (std::size_t a = 0; a < rhs.rows(); ++a)
            for (std::size_t i = 0; i < xr; ++i) {
                Scalar l = t.left(a, i);
                if (l == 0) continue;
                for (std::size_t j = 0; j < xc; ++j)
                    for (std::size_t b = 0; b < rhs.cols(); ++b) {
                        Scalar r = t.right(j, b);
                        if (r == 0) continue;
                        Scalar coeff = static_cast<Scalar>(static_cast<std::uint64_t>(l) * r % p_);
                        rows_[base + a * rhs.cols() + b].emplace_back(off + i * xc + j, coeff);
                    }
            }
    }
}

Matrix LinearSystem::assemble(std::vector<Scalar>& rhs) const {
    Matrix a(p_, rows_.size(), total_);
    for (std::size_t r = 0; r < rows_.size(); ++r)
        for (const auto& [c, v] : rows_[r]) a.add_to(r, c, v);
    rhs = rhs_;
    return a;
}

std::vector<Matrix> LinearSystem::unpack(const std::vector<Scalar>& x) const {
    std::vector<Matrix> out;
    for (std::size_t u = 0; u < shapes_.size(); ++u) {
        const auto [r, c] = shapes_[u];
        Matrix m(p_, r, c);
        for (std::size_t i = 0; i < r; ++i)
            for (std::size_t j = 0; j < c; ++j) m.set(i, j, x[offsets_[u] + i * c + j]);
        out.push_back(std::move(m));
    }
    return out;
}

std::optional<std::vector<Matrix>> LinearSystem::solve(SolveOrder order) const {
    std::vector<Scalar> rhs;
    Matrix a = assemble(rhs);
    auto x = solve_linear(a, rhs, order);
    if (!x) return std::nullopt;
    return unpack(*x);
}

std::optional<LinearSystem::Space> LinearSystem::solution_space() const {
    std::vector<Scalar> rhs;
    Matrix a = assemble(rhs);
    auto sol = solve_affine(a, rhs);
    if (!sol) return std::nullopt;
    Space out;
    out.particular = unpack(sol->particular);
    for (std::size_t k = 0; k < sol->nullspace.cols(); ++k) {
        std::vector<Scalar> v(total_);
        for (std::size_t i = 0; i < total_; ++i) v[i] = sol->nullspace(i, k);
        out.basis.push_back(unpack(v));
    }
    return out;
}

}  // namespace hocat
