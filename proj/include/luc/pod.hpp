// SPDX-License-Identifier: Apache-2.0
//
// Proper orthogonal decomposition of boundary snapshots: modes are the leading
// eigenvectors of XᵀX (rows of X are samples, no centring by default).

#pragma once

#include "luc/datagen.hpp"
#include "luc/linalg.hpp"

#include <optional>
#include <span>
#include <string>

namespace luc {

struct PodBasis {
    std::size_t mesh_n = 0;
    DenseMatrix modes;       // columns are orthonormal boundary vectors
    Vector spectrum;         // all eigenvalues of XᵀX, descending
    Vector singular_values;  // singular values of X (one-sided Jacobi), descending
    Vector mean;             // subtracted row mean; empty unless centred

    std::size_t num_modes() const { return modes.cols(); }
    std::size_t boundary_size() const { return modes.rows(); }
};

struct PodOptions {
    /// Modes to keep; nullopt keeps every eigenvalue ≥ rel_tol·λ_max.
    std::optional<std::size_t> n_keep;
    double rel_tol = 1e-8;
    bool center = false;
};

PodBasis fit_pod(const DenseMatrix& samples, std::size_t mesh_n, const PodOptions& options = {});
PodBasis fit_pod(const Dataset& data, const PodOptions& options = {});

/// ĝ_n = ⟨g − mean, mode_n⟩.
Vector pod_encode(const PodBasis& basis, std::span<const double> boundary);
/// mean + Σ a_n mode_n.
Vector pod_decode(const PodBasis& basis, std::span<const double> coeffs);

/// Copy of the basis truncated to its first n modes.
PodBasis truncate(const PodBasis& basis, std::size_t n);

void save_pod(const PodBasis& basis, const std::string& path, const std::string& extra_manifest_json = {});
PodBasis load_pod(const std::string& path);

} // namespace luc
