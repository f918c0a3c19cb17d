// SPDX-License-Identifier: Apache-2.0
//
// Small dense/sparse linear algebra kernel: CSR matrices, conjugate gradients,
// partially pivoted LU and cyclic Jacobi for symmetric eigenproblems.

#pragma once

#include <cstddef>
#include <span>
#include <vector>

namespace luc {

using Vector = std::vector<double>;

class DenseMatrix {
public:
    DenseMatrix() = default;
    DenseMatrix(std::size_t rows, std::size_t cols, double fill = 0.0)
        : rows_(rows), cols_(cols), values_(rows * cols, fill) {}

    static DenseMatrix identity(std::size_t n);

    std::size_t rows() const { return rows_; }
    std::size_t cols() const { return cols_; }

    double& operator()(std::size_t i, std::size_t j) { return values_[i * cols_ + j]; }
    double operator()(std::size_t i, std::size_t j) const { return values_[i * cols_ + j]; }

    std::span<double> row(std::size_t i) { return {values_.data() + i * cols_, cols_}; }
    std::span<const double> row(std::size_t i) const { return {values_.data() + i * cols_, cols_}; }

    Vector column(std::size_t j) const;
    void set_column(std::size_t j, std::span<const double> v);

    std::span<const double> values() const { return values_; }
    std::span<double> values() { return values_; }

    DenseMatrix transpose() const;
    Vector multiply(std::span<const double> x) const;
    /// Aᵀx.
    Vector multiply_transposed(std::span<const double> x) const;
    DenseMatrix multiply(const DenseMatrix& other) const;
    /// AᵀA without forming the transpose.
    DenseMatrix gram() const;

    double frobenius_norm() const;

private:
    std::size_t rows_ = 0;
    std::size_t cols_ = 0;
    std::vector<double> values_;
};

/// Compressed sparse row matrix. Built from triplets; duplicates are summed.
class SparseMatrix {
public:
    struct Triplet {
        std::size_t row;
        std::size_t col;
        double value;
    };

    SparseMatrix() = default;
    SparseMatrix(std::size_t rows, std::size_t cols, std::vector<Triplet> triplets);

    std::size_t rows() const { return rows_; }
    std::size_t cols() const { return cols_; }
    std::size_t nnz() const { return values_.size(); }

    std::span<const std::size_t> row_offsets() const { return row_offsets_; }
    std::span<const std::size_t> col_indices() const { return col_indices_; }
    std::span<const double> values() const { return values_; }

    /// Entry lookup (binary search within the row); zero when not stored.
    double at(std::size_t i, std::size_t j) const;

    Vector multiply(std::span<const double> x) const;
    void multiply(std::span<const double> x, std::span<double> y) const;
    /// xᵀAy.
    double bilinear(std::span<const double> x, std::span<const double> y) const;
    Vector diagonal() const;

    DenseMatrix to_dense() const;
    /// max |a_ij - a_ji|.
    double asymmetry() const;

    /// Elementwise this + scale·other (same shape).
    SparseMatrix added(const SparseMatrix& other, double scale = 1.0) const;

private:
    std::size_t rows_ = 0;
    std::size_t cols_ = 0;
    std::vector<std::size_t> row_offsets_{0};
    std::vector<std::size_t> col_indices_;
    std::vector<double> values_;
};

struct CgOptions {
    double tol = 1e-12;
    std::size_t max_iter = 10000;
    bool jacobi_preconditioner = false;
};

struct CgReport {
    std::size_t iterations = 0;
    double relative_residual = 0.0;
};

/// Conjugate gradients for SPD A. Throws NumericalFailure when the relative
/// residual ‖Ax−b‖/‖b‖ is still above tol after max_iter iterations.
Vector cg_solve(const SparseMatrix& a, std::span<const double> b, const CgOptions& options = {},
                CgReport* report = nullptr, std::span<const double> x0 = {});

/// Dense LU with partial pivoting. Throws NumericalFailure naming the pivot
/// column when its magnitude is at or below pivot_tol.
Vector lu_solve_dense(const DenseMatrix& a, std::span<const double> b, double pivot_tol = 1e-14);

struct EigenDecomposition {
    Vector values;       // descending
    DenseMatrix vectors; // column k pairs with values[k]
};

struct JacobiOptions {
    double symmetry_tol = 1e-12;
    std::size_t max_sweeps = 100;
};

/// Cyclic Jacobi eigensolver for symmetric matrices.
EigenDecomposition symmetric_eig(const DenseMatrix& a, const JacobiOptions& options = {});

struct SvdResult {
    Vector singular_values; // descending
    DenseMatrix right_vectors;
};

/// One-sided (Hestenes) Jacobi SVD of a tall matrix. Small singular values are
/// resolved to ~eps·σ₁ absolute, unlike the eigenvalues of the Gram matrix.
SvdResult jacobi_svd(const DenseMatrix& a, std::size_t max_sweeps = 60);

double dot(std::span<const double> a, std::span<const double> b);
double norm2(std::span<const double> a);
/// y += alpha·x
void axpy(double alpha, std::span<const double> x, std::span<double> y);

} // namespace luc
