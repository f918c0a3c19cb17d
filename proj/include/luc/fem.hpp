// SPDX-License-Identifier: Apache-2.0
//
// P1 finite element forms on the structured square mesh.

#pragma once

#include "luc/linalg.hpp"
#include "luc/mesh.hpp"

#include <cstddef>
#include <span>
#include <vector>

namespace luc {

/// Nodal values of a P1 function on a mesh with mesh_n cells per side.
struct Field {
    std::size_t mesh_n = 0;
    Vector dofs;
};

Field zero_field(const Mesh& mesh);
/// Field from boundary values (ordered as mesh.boundary_nodes()) and interior
/// values (ordered as mesh.interior_nodes()).
Field assemble_field(const Mesh& mesh, std::span<const double> boundary, std::span<const double> interior);
/// Values at mesh.boundary_nodes().
Vector boundary_trace(const Mesh& mesh, std::span<const double> dofs);
Vector interior_values(const Mesh& mesh, std::span<const double> dofs);

/// Stiffness (∇v, ∇w) over the given elements (all when empty).
SparseMatrix assemble_stiffness(const Mesh& mesh, std::span<const std::size_t> elements = {});

/// Exact P1 mass (v, w) over the given elements. Throws on an empty list.
SparseMatrix assemble_subdomain_mass(const Mesh& mesh, std::span<const std::size_t> elements);

/// Nitsche form a_h(v,w) = (∇v,∇w) − (∇ₙv,w)_∂Ω − (v,∇ₙw)_∂Ω + βh⁻¹(v,w)_∂Ω.
struct NitscheForms {
    SparseMatrix matrix;
    double beta = 10.0;
    std::size_t mesh_n = 0;
};

NitscheForms assemble_nitsche(const Mesh& mesh, double beta = 10.0);

/// l_{h,g}(v) = −(g, ∇ₙv)_∂Ω + βh⁻¹(g, v)_∂Ω for boundary nodal data g.
Vector nitsche_rhs(const Mesh& mesh, double beta, std::span<const double> boundary_values);

Field nitsche_solve(const NitscheForms& forms, const Mesh& mesh, std::span<const double> boundary_values,
                    const CgOptions& options = {1e-13, 20000, false});

/// Σ_F h ([∇v]·n_F, [∇w]·n_F)_F over interior faces.
SparseMatrix assemble_jump_penalty(const Mesh& mesh);

/// h⁻¹(a, b)_∂Ω + h(∂_T a, ∂_T b)_∂Ω for P1 boundary functions given at
/// mesh.boundary_nodes() (differences between discrete traces and exact data).
double boundary_stab_pair(const Mesh& mesh, std::span<const double> trace_a, std::span<const double> trace_b);

/// E(v) = ∫ ½(1 + v²)|∇v|². With a subset the element sum is rescaled by
/// (#triangles / #subset) so it estimates the full energy without bias.
double nonlinear_energy(const Mesh& mesh, std::span<const double> dofs, std::span<const std::size_t> subset = {});

/// Gradient of nonlinear_energy with respect to every nodal value.
Vector nonlinear_energy_grad(const Mesh& mesh, std::span<const double> dofs, std::span<const std::size_t> subset = {});

/// Accumulates the energy gradient into `grad` and returns the energy; avoids
/// allocation in training loops.
double nonlinear_energy_accumulate(const Mesh& mesh, std::span<const double> dofs, std::span<const std::size_t> subset,
                                   std::span<double> grad);

SparseMatrix nonlinear_energy_hessian(const Mesh& mesh, std::span<const double> dofs);

struct NewtonOptions {
    double tol = 1e-10;
    std::size_t max_iter = 50;
    std::size_t max_halvings = 30;
};

struct NewtonReport {
    std::size_t iterations = 0;
    double gradient_norm = 0.0;
    double energy = 0.0;
};

/// Minimizes E over interior values with boundary values fixed (damped Newton,
/// halving line search, CG inner solves).
Field newton_solve_nonlinear(const Mesh& mesh, std::span<const double> boundary_values,
                             const NewtonOptions& options = {}, NewtonReport* report = nullptr);

struct Norms {
    double l2 = 0.0;
    double h1_semi = 0.0;
    double h1() const;
};

/// L² and H¹-seminorm over the given elements (all when empty).
Norms norms(const Mesh& mesh, std::span<const double> dofs, std::span<const std::size_t> elements = {});

/// Point evaluation of a P1 field.
double evaluate(const Mesh& mesh, std::span<const double> dofs, Point p);

/// Interpolates a field onto another mesh (exact when the target refines the source).
Field transfer(const Mesh& from, std::span<const double> dofs, const Mesh& to);

/// Restriction of a square sparse matrix to the given index set.
SparseMatrix restrict_to(const SparseMatrix& a, std::span<const std::size_t> indices);

} // namespace luc
