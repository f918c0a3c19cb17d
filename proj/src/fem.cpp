// SPDX-License-Identifier: Apache-2.0

#include "luc/fem.hpp"

#include "luc/error.hpp"

#include <algorithm>
#include <cmath>
#include <sstream>

namespace luc {

namespace {

void check_field(const Mesh& mesh, std::span<const double> dofs)
{
    LUC_REQUIRE(dofs.size() == mesh.num_nodes(), "field length does not match the mesh node count");
}

double dot2(Point a, Point b) { return a.x * b.x + a.y * b.y; }

// ∫_T v² for P1 v (exact).
double local_l2sq(double area, double v0, double v1, double v2)
{
    return area / 6.0 * (v0 * v0 + v1 * v1 + v2 * v2 + v0 * v1 + v1 * v2 + v0 * v2);
}

Point local_gradient(const std::array<Point, 3>& g, double v0, double v1, double v2)
{
    return {v0 * g[0].x + v1 * g[1].x + v2 * g[2].x, v0 * g[0].y + v1 * g[1].y + v2 * g[2].y};
}

template <class F>
void for_elements(const Mesh& mesh, std::span<const std::size_t> elements, F&& f)
{
    if (elements.empty()) {
        for (std::size_t t = 0; t < mesh.num_triangles(); ++t) f(t);
    } else {
        for (std::size_t t : elements) {
            LUC_REQUIRE(t < mesh.num_triangles(), "element index out of range");
            f(t);
        }
    }
}

} // namespace

Field zero_field(const Mesh& mesh) { return {mesh.cells_per_side(), Vector(mesh.num_nodes(), 0.0)}; }

Field assemble_field(const Mesh& mesh, std::span<const double> boundary, std::span<const double> interior)
{
    LUC_REQUIRE(boundary.size() == mesh.boundary_nodes().size(), "assemble_field: boundary length mismatch");
    LUC_REQUIRE(interior.size() == mesh.interior_nodes().size(), "assemble_field: interior length mismatch");
    Field f = zero_field(mesh);
    for (std::size_t k = 0; k < boundary.size(); ++k) f.dofs[mesh.boundary_nodes()[k]] = boundary[k];
    for (std::size_t k = 0; k < interior.size(); ++k) f.dofs[mesh.interior_nodes()[k]] = interior[k];
    return f;
}

Vector boundary_trace(const Mesh& mesh, std::span<const double> dofs)
{
    check_field(mesh, dofs);
    Vector out;
    out.reserve(mesh.boundary_nodes().size());
    for (std::size_t node : mesh.boundary_nodes()) out.push_back(dofs[node]);
    return out;
}

Vector interior_values(const Mesh& mesh, std::span<const double> dofs)
{
    check_field(mesh, dofs);
    Vector out;
    out.reserve(mesh.interior_nodes().size());
    for (std::size_t node : mesh.interior_nodes()) out.push_back(dofs[node]);
    return out;
}

SparseMatrix assemble_stiffness(const Mesh& mesh, std::span<const std::size_t> elements)
{
    std::vector<SparseMatrix::Triplet> t;
    t.reserve(9 * mesh.num_triangles());
    for_elements(mesh, elements, [&](std::size_t e) {
        const auto& tri = mesh.triangles()[e];
        const auto g = mesh.hat_gradients(e);
        const double area = mesh.area(e);
        for (int i = 0; i < 3; ++i)
            for (int j = 0; j < 3; ++j) t.push_back({tri[i], tri[j], area * dot2(g[i], g[j])});
    });
    return SparseMatrix(mesh.num_nodes(), mesh.num_nodes(), std::move(t));
}

SparseMatrix assemble_subdomain_mass(const Mesh& mesh, std::span<const std::size_t> elements)
{
    LUC_REQUIRE(!elements.empty(), "assemble_subdomain_mass: empty element list");
    std::vector<SparseMatrix::Triplet> t;
    t.reserve(9 * elements.size());
    for_elements(mesh, elements, [&](std::size_t e) {
        const auto& tri = mesh.triangles()[e];
        const double area = mesh.area(e);
        for (int i = 0; i < 3; ++i)
            for (int j = 0; j < 3; ++j) t.push_back({tri[i], tri[j], area / 12.0 * (i == j ? 2.0 : 1.0)});
    });
    return SparseMatrix(mesh.num_nodes(), mesh.num_nodes(), std::move(t));
}

NitscheForms assemble_nitsche(const Mesh& mesh, double beta)
{
    LUC_REQUIRE(beta > 0.0, "assemble_nitsche: beta must be positive");
    const double h = mesh.h();
    std::vector<SparseMatrix::Triplet> t;
    for (std::size_t e = 0; e < mesh.num_triangles(); ++e) {
        const auto& tri = mesh.triangles()[e];
        const auto g = mesh.hat_gradients(e);
        const double area = mesh.area(e);
        for (int i = 0; i < 3; ++i)
            for (int j = 0; j < 3; ++j) t.push_back({tri[i], tri[j], area * dot2(g[i], g[j])});
    }
    for (const auto& edge : mesh.boundary_edges()) {
        const auto& tri = mesh.triangles()[edge.triangle];
        const auto g = mesh.hat_gradients(edge.triangle);
        const double len = edge.length;
        // −(∇ₙφ_i, φ_j)_E and its transpose; ∫_E φ_j = |E|/2.
        for (int i = 0; i < 3; ++i) {
            const double c = -dot2(g[i], edge.normal) * len / 2.0;
            for (std::size_t j : edge.nodes) {
                t.push_back({tri[i], j, c});
                t.push_back({j, tri[i], c});
            }
        }
        const double p = beta / h * len / 6.0;
        t.push_back({edge.nodes[0], edge.nodes[0], 2.0 * p});
        t.push_back({edge.nodes[1], edge.nodes[1], 2.0 * p});
        t.push_back({edge.nodes[0], edge.nodes[1], p});
        t.push_back({edge.nodes[1], edge.nodes[0], p});
    }
    return {SparseMatrix(mesh.num_nodes(), mesh.num_nodes(), std::move(t)), beta, mesh.cells_per_side()};
}

Vector nitsche_rhs(const Mesh& mesh, double beta, std::span<const double> boundary_values)
{
    LUC_REQUIRE(boundary_values.size() == mesh.boundary_nodes().size(), "nitsche_rhs: boundary length mismatch");
    const double h = mesh.h();
    Vector rhs(mesh.num_nodes(), 0.0);
    const std::size_t nb = boundary_values.size();
    for (std::size_t k = 0; k < nb; ++k) {
        const auto& edge = mesh.boundary_edges()[k];
        const double ga = boundary_values[k];
        const double gb = boundary_values[(k + 1) % nb];
        const auto& tri = mesh.triangles()[edge.triangle];
        const auto g = mesh.hat_gradients(edge.triangle);
        const double len = edge.length;
        for (int i = 0; i < 3; ++i) rhs[tri[i]] -= dot2(g[i], edge.normal) * len * (ga + gb) / 2.0;
        const double p = beta / h * len / 6.0;
        rhs[edge.nodes[0]] += p * (2.0 * ga + gb);
        rhs[edge.nodes[1]] += p * (ga + 2.0 * gb);
    }
    return rhs;
}

Field nitsche_solve(const NitscheForms& forms, const Mesh& mesh, std::span<const double> boundary_values,
                    const CgOptions& options)
{
    LUC_REQUIRE(forms.mesh_n == mesh.cells_per_side(), "nitsche_solve: forms were assembled on another mesh");
    const Vector rhs = nitsche_rhs(mesh, forms.beta, boundary_values);
    return {mesh.cells_per_side(), cg_solve(forms.matrix, rhs, options)};
}

SparseMatrix assemble_jump_penalty(const Mesh& mesh)
{
    const double h = mesh.h();
    std::vector<SparseMatrix::Triplet> t;
    t.reserve(16 * mesh.interior_faces().size());
    for (const auto& face : mesh.interior_faces()) {
        const Point a = mesh.nodes()[face.nodes[0]];
        const Point b = mesh.nodes()[face.nodes[1]];
        const double len = std::hypot(b.x - a.x, b.y - a.y);
        const Point normal{(b.y - a.y) / len, -(b.x - a.x) / len};

        std::array<std::size_t, 6> nodes{};
        std::array<double, 6> coeff{};
        std::size_t count = 0;
        auto add = [&](std::size_t tri_index, double sign) {
            const auto& tri = mesh.triangles()[tri_index];
            const auto g = mesh.hat_gradients(tri_index);
            for (int i = 0; i < 3; ++i) {
                const double c = sign * dot2(g[i], normal);
                std::size_t k = 0;
                while (k < count && nodes[k] != tri[i]) ++k;
                if (k == count) {
                    nodes[count] = tri[i];
                    coeff[count++] = 0.0;
                }
                coeff[k] += c;
            }
        };
        add(face.left, 1.0);
        add(face.right, -1.0);
        for (std::size_t i = 0; i < count; ++i)
            for (std::size_t j = 0; j < count; ++j) t.push_back({nodes[i], nodes[j], h * len * coeff[i] * coeff[j]});
    }
    return SparseMatrix(mesh.num_nodes(), mesh.num_nodes(), std::move(t));
}

double boundary_stab_pair(const Mesh& mesh, std::span<const double> a, std::span<const double> b)
{
    const std::size_t nb = mesh.boundary_nodes().size();
    LUC_REQUIRE(a.size() == nb && b.size() == nb, "boundary_stab_pair: trace length mismatch");
    const double h = mesh.h();
    double mass = 0.0;
    double tangential = 0.0;
    for (std::size_t k = 0; k < nb; ++k) {
        const double len = mesh.boundary_edges()[k].length;
        const double a0 = a[k], a1 = a[(k + 1) % nb];
        const double b0 = b[k], b1 = b[(k + 1) % nb];
        mass += len / 6.0 * (2.0 * a0 * b0 + a0 * b1 + a1 * b0 + 2.0 * a1 * b1);
        tangential += (a1 - a0) * (b1 - b0) / len;
    }
    return mass / h + h * tangential;
}

double nonlinear_energy_accumulate(const Mesh& mesh, std::span<const double> v, std::span<const std::size_t> subset,
                                   std::span<double> grad)
{
    check_field(mesh, v);
    LUC_REQUIRE(grad.empty() || grad.size() == v.size(), "nonlinear_energy: gradient length mismatch");
    const double scale =
        subset.empty() ? 1.0 : static_cast<double>(mesh.num_triangles()) / static_cast<double>(subset.size());
    double energy = 0.0;
    for_elements(mesh, subset, [&](std::size_t e) {
        const auto& tri = mesh.triangles()[e];
        const auto g = mesh.hat_gradients(e);
        const double area = mesh.area(e);
        const double v0 = v[tri[0]], v1 = v[tri[1]], v2 = v[tri[2]];
        const Point grad_v = local_gradient(g, v0, v1, v2);
        const double gsq = dot2(grad_v, grad_v);
        const double q = local_l2sq(area, v0, v1, v2);
        energy += 0.5 * gsq * (area + q);
        if (!grad.empty()) {
            const double sum = v0 + v1 + v2;
            const double vals[3] = {v0, v1, v2};
            for (int i = 0; i < 3; ++i)
                grad[tri[i]] += scale * (dot2(grad_v, g[i]) * (area + q) + 0.5 * gsq * area / 6.0 * (vals[i] + sum));
        }
    });
    return scale * energy;
}

double nonlinear_energy(const Mesh& mesh, std::span<const double> dofs, std::span<const std::size_t> subset)
{
    return nonlinear_energy_accumulate(mesh, dofs, subset, {});
}

Vector nonlinear_energy_grad(const Mesh& mesh, std::span<const double> dofs, std::span<const std::size_t> subset)
{
    Vector grad(dofs.size(), 0.0);
    nonlinear_energy_accumulate(mesh, dofs, subset, grad);
    return grad;
}

SparseMatrix nonlinear_energy_hessian(const Mesh& mesh, std::span<const double> v)
{
    check_field(mesh, v);
    std::vector<SparseMatrix::Triplet> t;
    t.reserve(9 * mesh.num_triangles());
    for (std::size_t e = 0; e < mesh.num_triangles(); ++e) {
        const auto& tri = mesh.triangles()[e];
        const auto g = mesh.hat_gradients(e);
        const double area = mesh.area(e);
        const double vl[3] = {v[tri[0]], v[tri[1]], v[tri[2]]};
        double k[3][3], m[3][3], kv[3] = {0, 0, 0}, mv[3] = {0, 0, 0};
        for (int i = 0; i < 3; ++i)
            for (int j = 0; j < 3; ++j) {
                k[i][j] = area * dot2(g[i], g[j]);
                m[i][j] = area / 12.0 * (i == j ? 2.0 : 1.0);
                kv[i] += k[i][j] * vl[j];
                mv[i] += m[i][j] * vl[j];
            }
        const double a = kv[0] * vl[0] + kv[1] * vl[1] + kv[2] * vl[2];
        const double b = mv[0] * vl[0] + mv[1] * vl[1] + mv[2] * vl[2];
        for (int i = 0; i < 3; ++i)
            for (int j = 0; j < 3; ++j) {
                const double hij = k[i][j] * (1.0 + b / area) + a / area * m[i][j] +
                                   2.0 * (kv[i] * mv[j] + mv[i] * kv[j]) / area;
                t.push_back({tri[i], tri[j], hij});
            }
    }
    return SparseMatrix(mesh.num_nodes(), mesh.num_nodes(), std::move(t));
}

SparseMatrix restrict_to(const SparseMatrix& a, std::span<const std::size_t> indices)
{
    std::vector<long> pos(a.rows(), -1);
    for (std::size_t k = 0; k < indices.size(); ++k) pos[indices[k]] = static_cast<long>(k);
    std::vector<SparseMatrix::Triplet> t;
    const auto offsets = a.row_offsets();
    const auto cols = a.col_indices();
    const auto vals = a.values();
    for (std::size_t k = 0; k < indices.size(); ++k) {
        const std::size_t i = indices[k];
        for (std::size_t p = offsets[i]; p < offsets[i + 1]; ++p) {
            const long c = pos[cols[p]];
            if (c >= 0) t.push_back({k, static_cast<std::size_t>(c), vals[p]});
        }
    }
    return SparseMatrix(indices.size(), indices.size(), std::move(t));
}

Field newton_solve_nonlinear(const Mesh& mesh, std::span<const double> boundary_values, const NewtonOptions& options,
                             NewtonReport* report)
{
    LUC_REQUIRE(boundary_values.size() == mesh.boundary_nodes().size(), "newton_solve_nonlinear: boundary length mismatch");
    LUC_REQUIRE(options.tol > 0.0, "newton_solve_nonlinear: tol must be positive");
    for (double g : boundary_values) LUC_REQUIRE(std::isfinite(g), "newton_solve_nonlinear: non-finite boundary value");

    const auto& interior = mesh.interior_nodes();
    const std::size_t ni = interior.size();

    // Start from the discrete harmonic extension.
    Field u = assemble_field(mesh, boundary_values, Vector(ni, 0.0));
    if (ni > 0) {
        const SparseMatrix k = assemble_stiffness(mesh);
        const Vector ku = k.multiply(u.dofs);
        Vector rhs(ni);
        for (std::size_t p = 0; p < ni; ++p) rhs[p] = -ku[interior[p]];
        const Vector ui = cg_solve(restrict_to(k, interior), rhs, {1e-13, 20000, false});
        for (std::size_t p = 0; p < ni; ++p) u.dofs[interior[p]] = ui[p];
    }

    auto interior_gradient = [&](const Vector& dofs) {
        const Vector g = nonlinear_energy_grad(mesh, dofs);
        Vector gi(ni);
        for (std::size_t p = 0; p < ni; ++p) gi[p] = g[interior[p]];
        return gi;
    };

    double energy = nonlinear_energy(mesh, u.dofs);
    Vector grad = interior_gradient(u.dofs);
    double gnorm = norm2(grad);
    std::size_t it = 0;
    while (gnorm > options.tol) {
        if (it >= options.max_iter) {
            std::ostringstream msg;
            msg << "newton_solve_nonlinear: no convergence after " << it << " iterations (gradient norm " << gnorm << ")";
            throw NumericalFailure(msg.str());
        }
        Vector rhs(ni);
        for (std::size_t p = 0; p < ni; ++p) rhs[p] = -grad[p];
        Vector step;
        try {
            step = cg_solve(restrict_to(nonlinear_energy_hessian(mesh, u.dofs), interior), rhs,
                            {1e-12, 20000, false});
        } catch (const NumericalFailure&) {
            step = rhs; // indefinite Hessian: fall back to steepest descent
        }
        const double slope = dot(grad, step);

        double t = 1.0;
        bool accepted = false;
        Field trial = u;
        for (std::size_t halving = 0; halving <= options.max_halvings; ++halving, t *= 0.5) {
            for (std::size_t p = 0; p < ni; ++p) trial.dofs[interior[p]] = u.dofs[interior[p]] + t * step[p];
            const double e_trial = nonlinear_energy(mesh, trial.dofs);
            if (e_trial <= energy + 1e-4 * t * slope) {
                accepted = true;
            } else if (std::abs(e_trial - energy) <= 1e-14 * std::max(std::abs(energy), 1e-300)) {
                // Energy differences are below rounding; fall back on the gradient.
                accepted = norm2(interior_gradient(trial.dofs)) < gnorm;
            }
            if (accepted) {
                energy = e_trial;
                break;
            }
        }
        if (!accepted) {
            std::ostringstream msg;
            msg << "newton_solve_nonlinear: line search failed at iteration " << it << " (gradient norm " << gnorm << ")";
            throw NumericalFailure(msg.str());
        }
        u = std::move(trial);
        grad = interior_gradient(u.dofs);
        gnorm = norm2(grad);
        ++it;
    }
    if (report) *report = {it, gnorm, energy};
    return u;
}

double Norms::h1() const { return std::sqrt(l2 * l2 + h1_semi * h1_semi); }

Norms norms(const Mesh& mesh, std::span<const double> v, std::span<const std::size_t> elements)
{
    check_field(mesh, v);
    double l2 = 0.0;
    double semi = 0.0;
    for_elements(mesh, elements, [&](std::size_t e) {
        const auto& tri = mesh.triangles()[e];
        const auto g = mesh.hat_gradients(e);
        const double area = mesh.area(e);
        const Point gv = local_gradient(g, v[tri[0]], v[tri[1]], v[tri[2]]);
        l2 += local_l2sq(area, v[tri[0]], v[tri[1]], v[tri[2]]);
        semi += area * dot2(gv, gv);
    });
    return {std::sqrt(l2), std::sqrt(semi)};
}

double evaluate(const Mesh& mesh, std::span<const double> v, Point p)
{
    check_field(mesh, v);
    std::array<double, 3> bary{};
    const auto& tri = mesh.triangles()[mesh.locate(p, bary)];
    return bary[0] * v[tri[0]] + bary[1] * v[tri[1]] + bary[2] * v[tri[2]];
}

Field transfer(const Mesh& from, std::span<const double> v, const Mesh& to)
{
    Field out = zero_field(to);
    for (std::size_t k = 0; k < to.num_nodes(); ++k) out.dofs[k] = evaluate(from, v, to.nodes()[k]);
    return out;
}

} // namespace luc
