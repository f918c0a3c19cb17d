// SPDX-License-Identifier: Apache-2.0
//
// Helpers shared by the unit tests.

#pragma once

#include "luc/linalg.hpp"
#include "luc/rng.hpp"

#include <algorithm>
#include <cmath>
#include <filesystem>
#include <span>
#include <string>

namespace luc::test {

inline DenseMatrix random_matrix(std::size_t rows, std::size_t cols, std::uint64_t seed)
{
    Rng rng(seed, 7);
    DenseMatrix m(rows, cols);
    for (double& v : m.values()) v = rng.uniform(-1.0, 1.0);
    return m;
}

inline DenseMatrix random_spd(std::size_t n, std::uint64_t seed)
{
    DenseMatrix m = random_matrix(n, n, seed).gram();
    for (std::size_t i = 0; i < n; ++i) m(i, i) += static_cast<double>(n);
    return m;
}

inline SparseMatrix to_sparse(const DenseMatrix& a)
{
    std::vector<SparseMatrix::Triplet> t;
    for (std::size_t i = 0; i < a.rows(); ++i)
        for (std::size_t j = 0; j < a.cols(); ++j)
            if (a(i, j) != 0.0) t.push_back({i, j, a(i, j)});
    return SparseMatrix(a.rows(), a.cols(), std::move(t));
}

inline Vector random_vector(std::size_t n, std::uint64_t seed, double scale = 1.0)
{
    Rng rng(seed, 11);
    Vector v(n);
    for (double& x : v) x = scale * rng.uniform(-1.0, 1.0);
    return v;
}

inline double max_abs_diff(std::span<const double> a, std::span<const double> b)
{
    double m = 0.0;
    for (std::size_t i = 0; i < a.size(); ++i) m = std::max(m, std::abs(a[i] - b[i]));
    return m;
}

/// Relative mismatch used for gradient checks; absolute near zero.
inline double rel_mismatch(double a, double b, double floor = 1e-8)
{
    return std::abs(a - b) / std::max({std::abs(a), std::abs(b), floor});
}

inline std::string temp_path(const std::string& name)
{
    const auto dir = std::filesystem::temp_directory_path() / "luc_unit_tests";
    std::filesystem::create_directories(dir);
    return (dir / name).string();
}

} // namespace luc::test
