// SPDX-License-Identifier: Apache-2.0

#include "luc/linalg.hpp"

#include "luc/error.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numeric>
#include <sstream>

namespace luc {

double dot(std::span<const double> a, std::span<const double> b)
{
    LUC_REQUIRE(a.size() == b.size(), "dot: length mismatch");
    double s = 0.0;
    for (std::size_t i = 0; i < a.size(); ++i) s += a[i] * b[i];
    return s;
}

double norm2(std::span<const double> a) { return std::sqrt(dot(a, a)); }

void axpy(double alpha, std::span<const double> x, std::span<double> y)
{
    LUC_REQUIRE(x.size() == y.size(), "axpy: length mismatch");
    for (std::size_t i = 0; i < x.size(); ++i) y[i] += alpha * x[i];
}

// ---------------------------------------------------------------------------
// DenseMatrix

DenseMatrix DenseMatrix::identity(std::size_t n)
{
    DenseMatrix m(n, n);
    for (std::size_t i = 0; i < n; ++i) m(i, i) = 1.0;
    return m;
}

Vector DenseMatrix::column(std::size_t j) const
{
    Vector c(rows_);
    for (std::size_t i = 0; i < rows_; ++i) c[i] = (*this)(i, j);
    return c;
}

void DenseMatrix::set_column(std::size_t j, std::span<const double> v)
{
    LUC_REQUIRE(v.size() == rows_, "set_column: length mismatch");
    for (std::size_t i = 0; i < rows_; ++i) (*this)(i, j) = v[i];
}

DenseMatrix DenseMatrix::transpose() const
{
    DenseMatrix t(cols_, rows_);
    for (std::size_t i = 0; i < rows_; ++i)
        for (std::size_t j = 0; j < cols_; ++j) t(j, i) = (*this)(i, j);
    return t;
}

Vector DenseMatrix::multiply(std::span<const double> x) const
{
    LUC_REQUIRE(x.size() == cols_, "DenseMatrix::multiply: length mismatch");
    Vector y(rows_, 0.0);
    for (std::size_t i = 0; i < rows_; ++i) {
        const double* r = values_.data() + i * cols_;
        double s = 0.0;
        for (std::size_t j = 0; j < cols_; ++j) s += r[j] * x[j];
        y[i] = s;
    }
    return y;
}

Vector DenseMatrix::multiply_transposed(std::span<const double> x) const
{
    LUC_REQUIRE(x.size() == rows_, "DenseMatrix::multiply_transposed: length mismatch");
    Vector y(cols_, 0.0);
    for (std::size_t i = 0; i < rows_; ++i) {
        const double* r = values_.data() + i * cols_;
        const double xi = x[i];
        for (std::size_t j = 0; j < cols_; ++j) y[j] += r[j] * xi;
    }
    return y;
}

DenseMatrix DenseMatrix::multiply(const DenseMatrix& other) const
{
    LUC_REQUIRE(cols_ == other.rows_, "DenseMatrix::multiply: inner dimension mismatch");
    DenseMatrix c(rows_, other.cols_);
    for (std::size_t i = 0; i < rows_; ++i)
        for (std::size_t k = 0; k < cols_; ++k) {
            const double aik = (*this)(i, k);
            if (aik == 0.0) continue;
            for (std::size_t j = 0; j < other.cols_; ++j) c(i, j) += aik * other(k, j);
        }
    return c;
}

DenseMatrix DenseMatrix::gram() const
{
    DenseMatrix g(cols_, cols_);
    for (std::size_t r = 0; r < rows_; ++r) {
        const double* x = values_.data() + r * cols_;
        for (std::size_t i = 0; i < cols_; ++i) {
            const double xi = x[i];
            if (xi == 0.0) continue;
            for (std::size_t j = i; j < cols_; ++j) g(i, j) += xi * x[j];
        }
    }
    for (std::size_t i = 0; i < cols_; ++i)
        for (std::size_t j = 0; j < i; ++j) g(i, j) = g(j, i);
    return g;
}

double DenseMatrix::frobenius_norm() const { return norm2(values_); }

// ---------------------------------------------------------------------------
// SparseMatrix

SparseMatrix::SparseMatrix(std::size_t rows, std::size_t cols, std::vector<Triplet> triplets)
    : rows_(rows), cols_(cols)
{
    for (const auto& t : triplets) {
        LUC_REQUIRE(t.row < rows && t.col < cols, "SparseMatrix: triplet index out of range");
        LUC_REQUIRE(std::isfinite(t.value), "SparseMatrix: non-finite value");
    }
    std::sort(triplets.begin(), triplets.end(), [](const Triplet& a, const Triplet& b) {
        return a.row != b.row ? a.row < b.row : a.col < b.col;
    });
    row_offsets_.assign(rows + 1, 0);
    for (std::size_t k = 0; k < triplets.size();) {
        const std::size_t r = triplets[k].row;
        const std::size_t c = triplets[k].col;
        double v = 0.0;
        while (k < triplets.size() && triplets[k].row == r && triplets[k].col == c) v += triplets[k++].value;
        col_indices_.push_back(c);
        values_.push_back(v);
        ++row_offsets_[r + 1];
    }
    std::partial_sum(row_offsets_.begin(), row_offsets_.end(), row_offsets_.begin());
}

double SparseMatrix::at(std::size_t i, std::size_t j) const
{
    LUC_REQUIRE(i < rows_ && j < cols_, "SparseMatrix::at: index out of range");
    const auto first = col_indices_.begin() + static_cast<std::ptrdiff_t>(row_offsets_[i]);
    const auto last = col_indices_.begin() + static_cast<std::ptrdiff_t>(row_offsets_[i + 1]);
    const auto it = std::lower_bound(first, last, j);
    if (it == last || *it != j) return 0.0;
    return values_[static_cast<std::size_t>(it - col_indices_.begin())];
}

void SparseMatrix::multiply(std::span<const double> x, std::span<double> y) const
{
    LUC_REQUIRE(x.size() == cols_ && y.size() == rows_, "SparseMatrix::multiply: length mismatch");
    for (std::size_t i = 0; i < rows_; ++i) {
        double s = 0.0;
        for (std::size_t k = row_offsets_[i]; k < row_offsets_[i + 1]; ++k) s += values_[k] * x[col_indices_[k]];
        y[i] = s;
    }
}

Vector SparseMatrix::multiply(std::span<const double> x) const
{
    Vector y(rows_);
    multiply(x, y);
    return y;
}

double SparseMatrix::bilinear(std::span<const double> x, std::span<const double> y) const
{
    LUC_REQUIRE(x.size() == rows_, "SparseMatrix::bilinear: length mismatch");
    return dot(x, multiply(y));
}

Vector SparseMatrix::diagonal() const
{
    Vector d(std::min(rows_, cols_), 0.0);
    for (std::size_t i = 0; i < d.size(); ++i) d[i] = at(i, i);
    return d;
}

DenseMatrix SparseMatrix::to_dense() const
{
    DenseMatrix d(rows_, cols_);
    for (std::size_t i = 0; i < rows_; ++i)
        for (std::size_t k = row_offsets_[i]; k < row_offsets_[i + 1]; ++k) d(i, col_indices_[k]) = values_[k];
    return d;
}

double SparseMatrix::asymmetry() const
{
    double worst = 0.0;
    for (std::size_t i = 0; i < rows_; ++i)
        for (std::size_t k = row_offsets_[i]; k < row_offsets_[i + 1]; ++k) {
            const std::size_t j = col_indices_[k];
            const double aji = j < rows_ && i < cols_ ? at(j, i) : 0.0;
            worst = std::max(worst, std::abs(values_[k] - aji));
        }
    return worst;
}

SparseMatrix SparseMatrix::added(const SparseMatrix& other, double scale) const
{
    LUC_REQUIRE(rows_ == other.rows_ && cols_ == other.cols_, "SparseMatrix::added: shape mismatch");
    std::vector<Triplet> t;
    t.reserve(nnz() + other.nnz());
    for (std::size_t i = 0; i < rows_; ++i) {
        for (std::size_t k = row_offsets_[i]; k < row_offsets_[i + 1]; ++k) t.push_back({i, col_indices_[k], values_[k]});
        for (std::size_t k = other.row_offsets_[i]; k < other.row_offsets_[i + 1]; ++k)
            t.push_back({i, other.col_indices_[k], scale * other.values_[k]});
    }
    return SparseMatrix(rows_, cols_, std::move(t));
}

// ---------------------------------------------------------------------------
// Solvers

Vector cg_solve(const SparseMatrix& a, std::span<const double> b, const CgOptions& options, CgReport* report,
                std::span<const double> x0)
{
    LUC_REQUIRE(a.rows() == a.cols(), "cg_solve: matrix must be square");
    LUC_REQUIRE(b.size() == a.rows(), "cg_solve: right-hand side length mismatch");
    LUC_REQUIRE(x0.empty() || x0.size() == a.rows(), "cg_solve: initial guess length mismatch");
    LUC_REQUIRE(options.tol > 0.0, "cg_solve: tol must be positive");

    const std::size_t n = b.size();
    Vector x = x0.empty() ? Vector(n, 0.0) : Vector(x0.begin(), x0.end());
    const double bnorm = norm2(b);
    if (report) *report = {};
    if (bnorm == 0.0) return Vector(n, 0.0);

    Vector inv_diag;
    if (options.jacobi_preconditioner) {
        inv_diag = a.diagonal();
        for (double& d : inv_diag) {
            if (d <= 0.0) throw NumericalFailure("cg_solve: non-positive diagonal with Jacobi preconditioner");
            d = 1.0 / d;
        }
    }
    auto precondition = [&](const Vector& r, Vector& z) {
        if (inv_diag.empty()) {
            z = r;
        } else {
            for (std::size_t i = 0; i < n; ++i) z[i] = inv_diag[i] * r[i];
        }
    };

    Vector r(n), z(n), p(n), ap(n);
    a.multiply(x, ap);
    for (std::size_t i = 0; i < n; ++i) r[i] = b[i] - ap[i];
    precondition(r, z);
    p = z;
    double rz = dot(r, z);
    double rel = norm2(r) / bnorm;

    std::size_t it = 0;
    while (rel > options.tol && it < options.max_iter) {
        a.multiply(p, ap);
        const double pap = dot(p, ap);
        if (!(pap > 0.0)) {
            std::ostringstream msg;
            msg << "cg_solve: matrix not positive definite along search direction (pᵀAp = " << pap
                << ") at iteration " << it;
            throw NumericalFailure(msg.str());
        }
        const double alpha = rz / pap;
        for (std::size_t i = 0; i < n; ++i) {
            x[i] += alpha * p[i];
            r[i] -= alpha * ap[i];
        }
        precondition(r, z);
        const double rz_new = dot(r, z);
        const double beta = rz_new / rz;
        rz = rz_new;
        for (std::size_t i = 0; i < n; ++i) p[i] = z[i] + beta * p[i];
        ++it;
        rel = norm2(r) / bnorm;
        // Recompute the true residual occasionally to stop recurrence drift.
        if (it % 200 == 0) {
            a.multiply(x, ap);
            for (std::size_t i = 0; i < n; ++i) r[i] = b[i] - ap[i];
            rel = norm2(r) / bnorm;
        }
    }
    if (report) *report = {it, rel};
    if (!(rel <= options.tol)) {
        std::ostringstream msg;
        msg << "cg_solve: no convergence after " << it << " iterations (relative residual " << rel << ")";
        throw NumericalFailure(msg.str());
    }
    return x;
}

Vector lu_solve_dense(const DenseMatrix& a, std::span<const double> b, double pivot_tol)
{
    LUC_REQUIRE(a.rows() == a.cols(), "lu_solve_dense: matrix must be square");
    LUC_REQUIRE(b.size() == a.rows(), "lu_solve_dense: right-hand side length mismatch");
    const std::size_t n = a.rows();
    DenseMatrix lu = a;
    Vector x(b.begin(), b.end());

    for (std::size_t k = 0; k < n; ++k) {
        std::size_t piv = k;
        for (std::size_t i = k + 1; i < n; ++i)
            if (std::abs(lu(i, k)) > std::abs(lu(piv, k))) piv = i;
        if (!(std::abs(lu(piv, k)) > pivot_tol)) {
            std::ostringstream msg;
            msg << "lu_solve_dense: matrix singular to tolerance, pivot " << k << " has magnitude "
                << std::abs(lu(piv, k));
            throw NumericalFailure(msg.str());
        }
        if (piv != k) {
            for (std::size_t j = 0; j < n; ++j) std::swap(lu(k, j), lu(piv, j));
            std::swap(x[k], x[piv]);
        }
        for (std::size_t i = k + 1; i < n; ++i) {
            const double f = lu(i, k) / lu(k, k);
            if (f == 0.0) continue;
            for (std::size_t j = k + 1; j < n; ++j) lu(i, j) -= f * lu(k, j);
            x[i] -= f * x[k];
        }
    }
    for (std::size_t k = n; k-- > 0;) {
        double s = x[k];
        for (std::size_t j = k + 1; j < n; ++j) s -= lu(k, j) * x[j];
        x[k] = s / lu(k, k);
    }
    return x;
}

namespace {

// Deterministic sign: the largest-magnitude entry of each vector is positive.
void normalize_signs(DenseMatrix& v)
{
    for (std::size_t j = 0; j < v.cols(); ++j) {
        std::size_t best = 0;
        for (std::size_t i = 1; i < v.rows(); ++i)
            if (std::abs(v(i, j)) > std::abs(v(best, j)) + 1e-12) best = i;
        if (v(best, j) < 0.0)
            for (std::size_t i = 0; i < v.rows(); ++i) v(i, j) = -v(i, j);
    }
}

std::vector<std::size_t> descending_order(const Vector& values)
{
    std::vector<std::size_t> order(values.size());
    std::iota(order.begin(), order.end(), 0);
    std::stable_sort(order.begin(), order.end(), [&](std::size_t a, std::size_t b) { return values[a] > values[b]; });
    return order;
}

} // namespace

EigenDecomposition symmetric_eig(const DenseMatrix& input, const JacobiOptions& options)
{
    LUC_REQUIRE(input.rows() == input.cols(), "symmetric_eig: matrix must be square");
    const std::size_t n = input.rows();
    double scale = 0.0;
    for (double v : input.values()) {
        LUC_REQUIRE(std::isfinite(v), "symmetric_eig: non-finite entry");
        scale = std::max(scale, std::abs(v));
    }
    for (std::size_t i = 0; i < n; ++i)
        for (std::size_t j = i + 1; j < n; ++j)
            if (std::abs(input(i, j) - input(j, i)) > options.symmetry_tol * std::max(1.0, scale))
                throw InvalidArgument("symmetric_eig: matrix is not symmetric");

    DenseMatrix a = input;
    DenseMatrix v = DenseMatrix::identity(n);
    const double total = std::max(a.frobenius_norm(), 1e-300);

    bool converged = false;
    for (std::size_t sweep = 0; sweep < options.max_sweeps && !converged; ++sweep) {
        double off = 0.0;
        for (std::size_t p = 0; p < n; ++p)
            for (std::size_t q = p + 1; q < n; ++q) off += a(p, q) * a(p, q);
        if (std::sqrt(2.0 * off) <= 1e-15 * total) {
            converged = true;
            break;
        }
        for (std::size_t p = 0; p + 1 < n; ++p) {
            for (std::size_t q = p + 1; q < n; ++q) {
                const double apq = a(p, q);
                if (std::abs(apq) <= 1e-300) continue;
                const double theta = (a(q, q) - a(p, p)) / (2.0 * apq);
                const double t = (theta >= 0.0 ? 1.0 : -1.0) / (std::abs(theta) + std::sqrt(theta * theta + 1.0));
                const double c = 1.0 / std::sqrt(t * t + 1.0);
                const double s = t * c;
                for (std::size_t k = 0; k < n; ++k) {
                    const double akp = a(k, p);
                    const double akq = a(k, q);
                    a(k, p) = c * akp - s * akq;
                    a(k, q) = s * akp + c * akq;
                }
                for (std::size_t k = 0; k < n; ++k) {
                    const double apk = a(p, k);
                    const double aqk = a(q, k);
                    a(p, k) = c * apk - s * aqk;
                    a(q, k) = s * apk + c * aqk;
                }
                for (std::size_t k = 0; k < n; ++k) {
                    const double vkp = v(k, p);
                    const double vkq = v(k, q);
                    v(k, p) = c * vkp - s * vkq;
                    v(k, q) = s * vkp + c * vkq;
                }
            }
        }
    }
    if (!converged) {
        double off = 0.0;
        for (std::size_t p = 0; p < n; ++p)
            for (std::size_t q = p + 1; q < n; ++q) off += a(p, q) * a(p, q);
        if (std::sqrt(2.0 * off) > 1e-13 * total)
            throw NumericalFailure("symmetric_eig: Jacobi sweep limit reached without convergence");
    }

    Vector diag(n);
    for (std::size_t i = 0; i < n; ++i) diag[i] = a(i, i);
    const auto order = descending_order(diag);
    EigenDecomposition out{Vector(n), DenseMatrix(n, n)};
    for (std::size_t k = 0; k < n; ++k) {
        out.values[k] = diag[order[k]];
        for (std::size_t i = 0; i < n; ++i) out.vectors(i, k) = v(i, order[k]);
    }
    normalize_signs(out.vectors);
    return out;
}

SvdResult jacobi_svd(const DenseMatrix& a, std::size_t max_sweeps)
{
    const std::size_t n = a.cols();
    DenseMatrix w = a.transpose(); // row k holds column k of a
    DenseMatrix v = DenseMatrix::identity(n);
    const std::size_t m = w.cols();
    // Columns count as orthogonal once the cosine is at the dot-product round-off level.
    const double tol = static_cast<double>(std::max<std::size_t>(m, 1)) * std::numeric_limits<double>::epsilon();
    // Columns below this squared norm are round-off relative to the whole matrix.
    double frob2 = 0.0;
    for (double x : w.values()) frob2 += x * x;
    const double negligible = tol * tol * frob2;

    bool rotated = true;
    for (std::size_t sweep = 0; sweep < max_sweeps && rotated; ++sweep) {
        rotated = false;
        for (std::size_t p = 0; p + 1 < n; ++p) {
            for (std::size_t q = p + 1; q < n; ++q) {
                auto wp = w.row(p);
                auto wq = w.row(q);
                double alpha = 0.0, beta = 0.0, gamma = 0.0;
                for (std::size_t i = 0; i < m; ++i) {
                    alpha += wp[i] * wp[i];
                    beta += wq[i] * wq[i];
                    gamma += wp[i] * wq[i];
                }
                if (alpha <= negligible || beta <= negligible) continue;
                if (std::abs(gamma) <= tol * std::sqrt(alpha * beta)) continue;
                // A column at the round-off level of its partner cannot be
                // rotated any closer to orthogonal.
                if (std::min(alpha, beta) <= tol * tol * std::max(alpha, beta)) continue;
                rotated = true;
                const double zeta = (beta - alpha) / (2.0 * gamma);
                const double t = (zeta >= 0.0 ? 1.0 : -1.0) / (std::abs(zeta) + std::sqrt(1.0 + zeta * zeta));
                const double c = 1.0 / std::sqrt(1.0 + t * t);
                const double s = c * t;
                for (std::size_t i = 0; i < m; ++i) {
                    const double x = wp[i];
                    const double y = wq[i];
                    wp[i] = c * x - s * y;
                    wq[i] = s * x + c * y;
                }
                for (std::size_t k = 0; k < n; ++k) {
                    const double x = v(k, p);
                    const double y = v(k, q);
                    v(k, p) = c * x - s * y;
                    v(k, q) = s * x + c * y;
                }
            }
        }
    }
    if (rotated) throw NumericalFailure("jacobi_svd: sweep limit reached without convergence");

    Vector sv(n);
    for (std::size_t k = 0; k < n; ++k) sv[k] = norm2(w.row(k));
    const auto order = descending_order(sv);
    SvdResult out{Vector(n), DenseMatrix(n, n)};
    for (std::size_t k = 0; k < n; ++k) {
        out.singular_values[k] = sv[order[k]];
        for (std::size_t i = 0; i < n; ++i) out.right_vectors(i, k) = v(i, order[k]);
    }
    normalize_signs(out.right_vectors);
    return out;
}

} // namespace luc
