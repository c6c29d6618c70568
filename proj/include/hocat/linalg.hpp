#pragma once

#include <cstddef>
#include <cstdint>
#include <optional>
#include <vector>

namespace hocat {

using Scalar = std::uint32_t;

bool is_prime(std::uint32_t p);
Scalar inverse_mod(Scalar a, std::uint32_t p);

// Dense matrix over F_p, row-major.
class Matrix {
public:
    Matrix() = default;
    Matrix(std::uint32_t p, std::size_t rows, std::size_t cols);

    static Matrix zero(std::uint32_t p, std::size_t rows, std::size_t cols);
    static Matrix identity(std::uint32_t p, std::size_t n);
    // Entries are reduced into [0, p); negative inputs are allowed.
    static Matrix from_rows(std::uint32_t p, std::size_t rows, std::size_t cols,
                            const std::vector<std::vector<long long>>& entries);

    std::uint32_t modulus() const { return p_; }
    std::size_t rows() const { return rows_; }
    std::size_t cols() const { return cols_; }

    Scalar operator()(std::size_t r, std::size_t c) const { return a_[r * cols_ + c]; }
    void set(std::size_t r, std::size_t c, long long value);
    void add_to(std::size_t r, std::size_t c, Scalar value);

    bool is_zero() const;
    std::vector<std::vector<long long>> to_rows() const;
    const std::vector<Scalar>& data() const { return a_; }

    Matrix operator*(const Matrix& rhs) const;
    Matrix operator+(const Matrix& rhs) const;
    Matrix operator-(const Matrix& rhs) const;
    Matrix operator-() const;
    Matrix scaled(Scalar k) const;
    Matrix transpose() const;
    Matrix block(std::size_t r0, std::size_t c0, std::size_t rows, std::size_t cols) const;
    void paste(std::size_t r0, std::size_t c0, const Matrix& m);

    friend bool operator==(const Matrix&, const Matrix&) = default;

private:
    std::uint32_t p_ = 2;
    std::size_t rows_ = 0;
    std::size_t cols_ = 0;
    std::vector<Scalar> a_;
};

Matrix hstack(const Matrix& a, const Matrix& b);
Matrix vstack(const Matrix& a, const Matrix& b);
Matrix block_diag(const Matrix& a, const Matrix& b);

std::size_t rank(const Matrix& m);
bool is_injective(const Matrix& m);
bool is_surjective(const Matrix& m);
// Columns form a basis of the kernel.
Matrix kernel_basis(const Matrix& m);

// Reduced row echelon form of the row space; pivots are sorted ascending.
struct RowEchelon {
    Matrix rows;
    std::vector<std::size_t> pivots;
};
RowEchelon row_echelon(const Matrix& m);

// Forward returns the lexicographically smallest solution with x[0] most
// significant; Reverse minimizes with x[n-1] most significant instead.
enum class SolveOrder { Forward, Reverse };

struct AffineSolution {
    std::vector<Scalar> particular;
    Matrix nullspace;  // columns span the homogeneous solutions
};

std::optional<std::vector<Scalar>> solve_linear(const Matrix& a, const std::vector<Scalar>& b,
                                                SolveOrder order = SolveOrder::Forward);
std::optional<AffineSolution> solve_affine(const Matrix& a, const std::vector<Scalar>& b,
                                           SolveOrder order = SolveOrder::Forward);

// Linear equations whose unknowns are matrix blocks:
//   sum_t  L_t * X_{u_t} * R_t = C
// Unknown entries are vectorized block by block, row-major inside a block.
class LinearSystem {
public:
    struct Term {
        Matrix left;
        std::size_t unknown;
        Matrix right;
    };

    explicit LinearSystem(std::uint32_t p) : p_(p) {}

    std::size_t add_unknown(std::size_t rows, std::size_t cols);
    void add_equation(const std::vector<Term>& terms, const Matrix& rhs);

    std::size_t unknown_count() const { return offsets_.empty() ? 0 : total_; }
    std::size_t equation_count() const { return rows_.size(); }

    std::optional<std::vector<Matrix>> solve(SolveOrder order = SolveOrder::Forward) const;

    struct Space {
        std::vector<Matrix> particular;
        std::vector<std::vector<Matrix>> basis;
    };
    std::optional<Space> solution_space() const;

    std::vector<Matrix> unpack(const std::vector<Scalar>& x) const;

private:
    Matrix assemble(std::vector<Scalar>& rhs) const;

    std::uint32_t p_;
    std::vector<std::pair<std::size_t, std::size_t>> shapes_;
    std::vector<std::size_t> offsets_;
    std::size_t total_ = 0;
    // Sparse rows: (column, coefficient) plus right-hand side.
    std::vector<std::vector<std::pair<std::size_t, Scalar>>> rows_;
    std::vector<Scalar> rhs_;
};

}  // namespace hocat
