// SPDX-License-Identifier: Apache-2.0
//
// Synthetic boundary-data families: perturbed truncated Fourier series on the
// square's boundary, and parametric coefficient families (polynomial and
// Gaussian-bump) for nonlinear data manifolds.

#pragma once

#include "luc/linalg.hpp"
#include "luc/mesh.hpp"

#include <cstdint>
#include <optional>
#include <span>
#include <string>

namespace luc {

enum class DatasetKind { fourier, polynomial, gaussian, raw_coefficients };

std::string to_string(DatasetKind kind);
DatasetKind dataset_kind_from_string(const std::string& name);

/// Parameters of a coefficient family a(x) + δ, x ∈ ℝ^{n_x}.
struct ParametricSpec {
    DatasetKind kind = DatasetKind::polynomial;
    std::string name;
    std::size_t n_x = 0;
    std::size_t num_coeffs = 0; // |J|
    double x_lo = 0.0;
    double x_hi = 0.0;
    double noise_std = 0.0;
    // polynomial: a = A x + B (x⊙x) + δ
    DenseMatrix a;
    DenseMatrix b;
    // gaussian: a_j = exp(−γ (x_{j mod n_x} − x0_{j mod L})²) + δ_j
    double gamma = 0.0;
    Vector x0;
};

struct Dataset {
    DatasetKind kind = DatasetKind::fourier;
    std::size_t mesh_n = 0;      // 0 for coefficient datasets
    std::size_t num_coeffs = 0;  // N (Fourier) or |J|
    std::uint64_t seed = 0;
    double noise_std = 0.0;
    double coeff_bound = 1.0;    // Fourier: ĝ ~ U(−bound, bound)
    std::optional<ParametricSpec> parametric;
    DenseMatrix samples;         // one sample per row
};

/// g(s) = (ĝ₀+δ₀) + Σ_{n=1}^{(N−1)/2} (ĝ_{2n−1}+δ_{2n−1}) sin(2nπs/l) + (ĝ_{2n}+δ_{2n}) cos(2nπs/l)
/// evaluated at the arc length s of every boundary node, l = 4.
Vector fourier_boundary(const Mesh& mesh, std::size_t num_coeffs, std::span<const double> coeffs,
                        std::span<const double> noise);

/// Same series evaluated at arbitrary arc lengths.
Vector fourier_series(std::span<const double> arclength, std::span<const double> coeffs);

Dataset sample_fourier_dataset(const Mesh& mesh, std::size_t num_coeffs, std::size_t count, std::uint64_t seed,
                               double noise_std = 0.15, double coeff_bound = 1.0);

Vector polynomial_coeffs(const DenseMatrix& a, const DenseMatrix& b, std::span<const double> x,
                         std::span<const double> delta);

Vector gaussian_coeffs(std::size_t n_x, std::size_t num_bumps, double gamma, std::span<const double> x,
                       std::span<const double> x0, std::span<const double> delta, std::size_t num_coeffs);

/// Named cases: polynomial-linear, polynomial-quadratic (|J| = 9, n_x = 3, A, B ~ U(−1,1)
/// drawn from `seed`, x ~ U(−2,2), δ ~ N(0,1)); gaussian-2-5, gaussian-3-6,
/// gaussian-3-7, gaussian-4-8 (γ = 2, δ ~ N(0, 0.15²), |J| = n_x·L).
ParametricSpec parametric_case(const std::string& name, std::uint64_t seed);

/// Explicit Gaussian-bump family with equidistant centres x0_l = spacing·l.
ParametricSpec gaussian_spec(std::size_t n_x, std::size_t num_bumps, double spacing, double x_lo, double x_hi,
                             double gamma = 2.0, double noise_std = 0.15);

Dataset sample_parametric_dataset(const ParametricSpec& spec, std::size_t count, std::uint64_t seed);

/// Writes `<stem>.json` (manifest) and `<stem>.csv` (samples, 17 significant digits).
void save_dataset(const Dataset& data, const std::string& json_path, const std::string& extra_manifest_json = {});
Dataset load_dataset(const std::string& json_path);

/// CSV path paired with a manifest path (extension replaced by .csv).
std::string companion_csv_path(const std::string& json_path);

} // namespace luc
