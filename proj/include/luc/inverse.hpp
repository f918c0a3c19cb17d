// SPDX-License-Identifier: Apache-2.0
//
// Unique-continuation solvers: reconstruct a field on the whole square from
// observations on a disc ω, constrained to the span of harmonic-type
// extensions of boundary modes (linear case) or to the image of an operator
// network, optionally composed with a decoder (nonlinear case).

#pragma once

#include "luc/fem.hpp"
#include "luc/mesh.hpp"
#include "luc/neural.hpp"
#include "luc/pod.hpp"

#include <cstdint>
#include <optional>
#include <span>
#include <string>
#include <vector>

namespace luc {

struct ReducedBasis {
    std::size_t mesh_n = 0;
    double beta = 10.0;
    Disc omega;
    std::vector<std::size_t> omega_elements;
    DenseMatrix boundary_modes;  // nb × N exact boundary data g_n
    std::vector<Field> fields;   // Nitsche extensions φ_{n,h}
    DenseMatrix gram_omega;      // (φ_m, φ_n)_ω
    DenseMatrix gram_jump;       // s_h(φ_m, φ_n)
    DenseMatrix gram_boundary;   // s_{h,∂Ω}(φ_m − g_m, φ_n − g_n)
    DenseMatrix gram_mh;         // sum of the three

    std::size_t size() const { return fields.size(); }
};

ReducedBasis build_reduced_basis(const Mesh& mesh, const DenseMatrix& boundary_modes, const Disc& omega,
                                 double beta = 10.0, std::size_t threads = 1);
ReducedBasis build_reduced_basis(const Mesh& mesh, const PodBasis& pod, const Disc& omega, double beta = 10.0,
                                 std::size_t threads = 1);

/// Leading n×n block of a basis (nested sub-basis).
ReducedBasis leading_sub_basis(const ReducedBasis& basis, std::size_t n);

struct Observation {
    Disc omega;
    std::size_t mesh_n = 0;
    std::vector<std::size_t> nodes; // nodes of the triangles in ω
    Vector values;
    double noise_std = 0.0;
    std::string provenance;
};

/// Samples a field on the ω nodes and adds N(0, noise_std²) noise per node.
Observation make_observation(const Mesh& mesh, const Disc& omega, std::span<const double> field, double noise_std,
                             std::uint64_t seed, std::string provenance = {});

/// Observation values scattered into a full-length nodal vector (zero off ω).
Vector observation_dofs(const Mesh& mesh, const Observation& obs);

enum class ObjectiveNorm { l2, h1 };

struct InverseResult {
    Vector coefficients; // coefficient vector or latent point
    Field field;
    Vector loss_trace;
    std::size_t iterations = 0;
    double final_objective = 0.0;
};

/// ½‖u₀ − v‖² in L²(ω) or H¹(ω).
double observation_misfit(const Mesh& mesh, const Observation& obs, std::span<const double> field,
                          ObjectiveNorm norm = ObjectiveNorm::l2);

/// Solves gram_mh·û = b, b_n = (u₀, φ_n)_ω.
InverseResult stabilized_projection(const ReducedBasis& basis, const Mesh& mesh, const Observation& obs);

/// Stabilized projection when `stabilized`, the plain L²(ω) normal equations otherwise.
InverseResult linear_superposition_solve(const ReducedBasis& basis, const Mesh& mesh, const Observation& obs,
                                         bool stabilized);

/// Smallest eigenvalue of gram_mh (stabilized) or gram_omega.
double rayleigh_min(const ReducedBasis& basis, bool stabilized);

struct LatentOptions {
    double lr = 1e-2;
    std::size_t iterations = 2000;
    ObjectiveNorm norm = ObjectiveNorm::l2;
};

/// Optimizes ½‖u₀ − field(z)‖² over z with Adam, where field(z) has boundary
/// pod_decode(a) and interior net(a), a = decoder(z) or a = z without a decoder.
/// Returns the best iterate.
InverseResult latent_inverse_solve(const Mlp& net, const Mlp* decoder, const PodBasis& pod, const Mesh& mesh,
                                   const Observation& obs, std::span<const double> z0, const LatentOptions& options = {});

/// Objective and its gradient with respect to z (for checks).
double latent_objective(const Mlp& net, const Mlp* decoder, const PodBasis& pod, const Mesh& mesh,
                        const Observation& obs, std::span<const double> z, ObjectiveNorm norm, std::span<double> grad_z);

/// Field produced by a latent point (or coefficient vector without decoder).
Field latent_field(const Mlp& net, const Mlp* decoder, const PodBasis& pod, const Mesh& mesh, std::span<const double> z);

/// ‖φ‖_{L²(Ω)} / ‖φ‖_{L²(ω)} for φ = rⁿcos(nθ) on the unit disc Ω and the
/// concentric disc ω of radius r_omega.
double disc_stability_constant(std::size_t n, double r_omega);

// ---------------------------------------------------------------------------
// Studies

/// Boundary data of the first `count` real Fourier functions (1, sin, cos, …)
/// of arc length, one column per function.
DenseMatrix fourier_boundary_modes(const Mesh& mesh, std::size_t count);

struct ConvergenceRow {
    std::size_t mesh_n = 0;
    double h = 0.0;
    double h1_error = 0.0;
    double l2_error = 0.0;
    double h1_semi_error = 0.0;
};

struct ConvergenceStudy {
    std::vector<ConvergenceRow> rows;
    double h1_slope = 0.0;
    double l2_slope = 0.0;
    double h1_semi_slope = 0.0;
};

/// Least-squares slope of log(error) against log(h).
double loglog_slope(std::span<const double> h, std::span<const double> error);

/// Stabilized projection of u_N = Σ c_n φ_n (reference mesh) observed on ω,
/// solved on each mesh; errors in H¹(Ω) against the reference.
ConvergenceStudy projection_convergence_study(std::size_t modes, const std::vector<std::size_t>& meshes,
                                              std::size_t ref_mesh, const Disc& omega, double beta = 10.0,
                                              std::span<const double> coefficients = {}, std::size_t threads = 1);

/// Nitsche solution of boundary data g on each mesh against the reference mesh.
ConvergenceStudy nitsche_convergence_study(double (*g)(Point), const std::vector<std::size_t>& meshes,
                                           std::size_t ref_mesh, double beta = 10.0);

struct RayleighRow {
    std::size_t n_modes = 0;
    double lambda_omega = 0.0;
    double lambda_mh = 0.0;
};

/// λ_min of the nested leading blocks of a basis, N = 1 … basis.size().
std::vector<RayleighRow> rayleigh_study(const ReducedBasis& basis);

// ---------------------------------------------------------------------------
// Files

void save_observation(const Observation& obs, const std::string& path, const std::string& extra_manifest_json = {});
Observation load_observation(const std::string& path);

void save_inverse_result(const InverseResult& result, const std::string& path, const std::string& extra_manifest_json = {});

} // namespace luc
