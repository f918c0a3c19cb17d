// SPDX-License-Identifier: Apache-2.0

#include "luc/inverse.hpp"

#include "io_util.hpp"
#include "luc/datagen.hpp"
#include "luc/error.hpp"
#include "luc/rng.hpp"
#include "parallel.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numbers>

namespace luc {

namespace {

Vector sparse_apply(const SparseMatrix& a, std::span<const double> x)
{
    return a.multiply(x);
}

DenseMatrix gram_of(const SparseMatrix& a, const std::vector<Field>& fields)
{
    const std::size_t n = fields.size();
    DenseMatrix g(n, n);
    std::vector<Vector> applied(n);
    for (std::size_t j = 0; j < n; ++j) applied[j] = sparse_apply(a, fields[j].dofs);
    for (std::size_t i = 0; i < n; ++i)
        for (std::size_t j = i; j < n; ++j) {
            const double v = dot(fields[i].dofs, applied[j]);
            g(i, j) = v;
            g(j, i) = v;
        }
    return g;
}

DenseMatrix leading_block(const DenseMatrix& a, std::size_t n)
{
    DenseMatrix out(n, n);
    for (std::size_t i = 0; i < n; ++i)
        for (std::size_t j = 0; j < n; ++j) out(i, j) = a(i, j);
    return out;
}

void check_observation(const Mesh& mesh, const Observation& obs)
{
    LUC_REQUIRE(obs.mesh_n == mesh.cells_per_side(), "observation belongs to a mesh with a different resolution");
    LUC_REQUIRE(obs.nodes.size() == obs.values.size(), "observation node and value counts differ");
    for (std::size_t k : obs.nodes) LUC_REQUIRE(k < mesh.num_nodes(), "observation node index out of range");
}

// Weight matrix of the misfit norm restricted to ω.
SparseMatrix misfit_weight(const Mesh& mesh, const Disc& omega, ObjectiveNorm norm)
{
    const auto elements = subdomain_elements(mesh, omega);
    SparseMatrix w = assemble_subdomain_mass(mesh, elements);
    if (norm == ObjectiveNorm::h1) w = w.added(assemble_stiffness(mesh, elements));
    return w;
}

struct Misfit {
    SparseMatrix weight;
    Vector target;
};

Misfit make_misfit(const Mesh& mesh, const Observation& obs, ObjectiveNorm norm)
{
    check_observation(mesh, obs);
    return {misfit_weight(mesh, obs.omega, norm), observation_dofs(mesh, obs)};
}

// ½ dᵀWd with d = field − u₀; writes Wd into wd.
double misfit_value(const Misfit& m, std::span<const double> field, Vector& wd)
{
    Vector d(field.begin(), field.end());
    axpy(-1.0, m.target, d);
    wd = m.weight.multiply(d);
    return 0.5 * dot(d, wd);
}

Field coefficient_field(const ReducedBasis& basis, std::span<const double> coeffs)
{
    Field f;
    f.mesh_n = basis.mesh_n;
    f.dofs.assign(basis.fields.front().dofs.size(), 0.0);
    for (std::size_t n = 0; n < coeffs.size(); ++n) axpy(coeffs[n], basis.fields[n].dofs, f.dofs);
    return f;
}

struct LatentScratch {
    MlpTape dec_tape;
    MlpTape net_tape;
    Vector scratch_dec;
    Vector scratch_net;
};

// Field of z and, when grad_z is non-empty, the misfit gradient wrt z.
double latent_eval(const Mlp& net, const Mlp* decoder, const PodBasis& pod, const Mesh& mesh, const Misfit& misfit,
                   std::span<const double> z, std::span<double> grad_z, LatentScratch& s)
{
    Vector a;
    if (decoder != nullptr) {
        const auto out = mlp_forward(*decoder, z, s.dec_tape);
        a.assign(out.begin(), out.end());
    } else {
        a.assign(z.begin(), z.end());
    }
    const auto& boundary = mesh.boundary_nodes();
    const auto& interior = mesh.interior_nodes();
    Vector dofs(mesh.num_nodes());
    const Vector g = pod_decode(pod, a);
    for (std::size_t k = 0; k < boundary.size(); ++k) dofs[boundary[k]] = g[k];
    const auto u = mlp_forward(net, a, s.net_tape);
    for (std::size_t k = 0; k < interior.size(); ++k) dofs[interior[k]] = u[k];

    Vector wd;
    const double value = misfit_value(misfit, dofs, wd);
    if (grad_z.empty()) return value;

    Vector cot_int(interior.size());
    for (std::size_t k = 0; k < interior.size(); ++k) cot_int[k] = wd[interior[k]];
    s.scratch_net.assign(net.num_params(), 0.0);
    Vector grad_a = mlp_backward(net, s.net_tape, cot_int, s.scratch_net);
    // Boundary part: d g / d a_n = mode_n.
    for (std::size_t n = 0; n < pod.num_modes(); ++n) {
        double acc = 0.0;
        for (std::size_t k = 0; k < boundary.size(); ++k) acc += pod.modes(k, n) * wd[boundary[k]];
        grad_a[n] += acc;
    }
    if (decoder != nullptr) {
        s.scratch_dec.assign(decoder->num_params(), 0.0);
        const Vector gz = mlp_backward(*decoder, s.dec_tape, grad_a, s.scratch_dec);
        std::copy(gz.begin(), gz.end(), grad_z.begin());
    } else {
        std::copy(grad_a.begin(), grad_a.end(), grad_z.begin());
    }
    return value;
}

void check_latent(const Mlp& net, const Mlp* decoder, const PodBasis& pod, const Mesh& mesh, std::size_t z_size)
{
    LUC_REQUIRE(net.input_dim() == pod.num_modes(), "latent solve: network input does not match the POD size");
    LUC_REQUIRE(net.output_dim() == mesh.interior_nodes().size(), "latent solve: network output does not match the mesh");
    LUC_REQUIRE(pod.boundary_size() == mesh.boundary_nodes().size(), "latent solve: POD basis belongs to another mesh");
    if (decoder != nullptr) {
        LUC_REQUIRE(decoder->output_dim() == pod.num_modes(), "latent solve: decoder output does not match the POD size");
        LUC_REQUIRE(z_size == decoder->input_dim(), "latent solve: latent size does not match the decoder");
    } else {
        LUC_REQUIRE(z_size == pod.num_modes(), "latent solve: coefficient size does not match the POD size");
    }
}

} // namespace

// ---------------------------------------------------------------------------

ReducedBasis build_reduced_basis(const Mesh& mesh, const DenseMatrix& boundary_modes, const Disc& omega, double beta,
                                 std::size_t threads)
{
    const std::size_t nb = mesh.boundary_nodes().size();
    LUC_REQUIRE(boundary_modes.rows() == nb, "build_reduced_basis: boundary modes belong to another mesh");
    LUC_REQUIRE(boundary_modes.cols() >= 1, "build_reduced_basis: no modes");
    LUC_REQUIRE(beta > 0.0, "build_reduced_basis: beta must be positive");

    ReducedBasis rb;
    rb.mesh_n = mesh.cells_per_side();
    rb.beta = beta;
    rb.omega = omega;
    rb.omega_elements = subdomain_elements(mesh, omega);
    rb.boundary_modes = boundary_modes;

    const std::size_t n = boundary_modes.cols();
    const NitscheForms forms = assemble_nitsche(mesh, beta);
    rb.fields.resize(n);
    detail::parallel_chunks(n, threads, [&](std::size_t begin, std::size_t end, std::size_t) {
        for (std::size_t j = begin; j < end; ++j) rb.fields[j] = nitsche_solve(forms, mesh, boundary_modes.column(j));
    });

    rb.gram_omega = gram_of(assemble_subdomain_mass(mesh, rb.omega_elements), rb.fields);
    rb.gram_jump = gram_of(assemble_jump_penalty(mesh), rb.fields);

    std::vector<Vector> defect(n);
    for (std::size_t j = 0; j < n; ++j) {
        defect[j] = boundary_trace(mesh, rb.fields[j].dofs);
        const Vector g = boundary_modes.column(j);
        axpy(-1.0, g, defect[j]);
    }
    rb.gram_boundary = DenseMatrix(n, n);
    for (std::size_t i = 0; i < n; ++i)
        for (std::size_t j = i; j < n; ++j) {
            const double v = boundary_stab_pair(mesh, defect[i], defect[j]);
            rb.gram_boundary(i, j) = v;
            rb.gram_boundary(j, i) = v;
        }

    rb.gram_mh = DenseMatrix(n, n);
    for (std::size_t i = 0; i < n; ++i)
        for (std::size_t j = 0; j < n; ++j)
            rb.gram_mh(i, j) = rb.gram_omega(i, j) + rb.gram_jump(i, j) + rb.gram_boundary(i, j);
    return rb;
}

ReducedBasis build_reduced_basis(const Mesh& mesh, const PodBasis& pod, const Disc& omega, double beta,
                                 std::size_t threads)
{
    LUC_REQUIRE(pod.mesh_n == mesh.cells_per_side(), "build_reduced_basis: POD basis belongs to another mesh");
    LUC_REQUIRE(pod.mean.empty(), "build_reduced_basis: centred POD bases are not supported");
    return build_reduced_basis(mesh, pod.modes, omega, beta, threads);
}

ReducedBasis leading_sub_basis(const ReducedBasis& basis, std::size_t n)
{
    LUC_REQUIRE(n >= 1 && n <= basis.size(), "leading_sub_basis: size out of range");
    ReducedBasis out;
    out.mesh_n = basis.mesh_n;
    out.beta = basis.beta;
    out.omega = basis.omega;
    out.omega_elements = basis.omega_elements;
    out.boundary_modes = DenseMatrix(basis.boundary_modes.rows(), n);
    for (std::size_t j = 0; j < n; ++j) out.boundary_modes.set_column(j, basis.boundary_modes.column(j));
    out.fields.assign(basis.fields.begin(), basis.fields.begin() + static_cast<std::ptrdiff_t>(n));
    out.gram_omega = leading_block(basis.gram_omega, n);
    out.gram_jump = leading_block(basis.gram_jump, n);
    out.gram_boundary = leading_block(basis.gram_boundary, n);
    out.gram_mh = leading_block(basis.gram_mh, n);
    return out;
}

Observation make_observation(const Mesh& mesh, const Disc& omega, std::span<const double> field, double noise_std,
                             std::uint64_t seed, std::string provenance)
{
    LUC_REQUIRE(field.size() == mesh.num_nodes(), "make_observation: field length does not match the mesh");
    LUC_REQUIRE(noise_std >= 0.0, "make_observation: negative noise level");
    Observation obs;
    obs.omega = omega;
    obs.mesh_n = mesh.cells_per_side();
    obs.nodes = element_nodes(mesh, subdomain_elements(mesh, omega));
    obs.noise_std = noise_std;
    obs.provenance = std::move(provenance);
    Rng rng(seed, 0);
    obs.values.resize(obs.nodes.size());
    for (std::size_t k = 0; k < obs.nodes.size(); ++k)
        obs.values[k] = field[obs.nodes[k]] + (noise_std > 0.0 ? noise_std * rng.normal() : 0.0);
    return obs;
}

Vector observation_dofs(const Mesh& mesh, const Observation& obs)
{
    check_observation(mesh, obs);
    Vector v(mesh.num_nodes(), 0.0);
    for (std::size_t k = 0; k < obs.nodes.size(); ++k) v[obs.nodes[k]] = obs.values[k];
    return v;
}

double observation_misfit(const Mesh& mesh, const Observation& obs, std::span<const double> field, ObjectiveNorm norm)
{
    LUC_REQUIRE(field.size() == mesh.num_nodes(), "observation_misfit: field length does not match the mesh");
    const Misfit m = make_misfit(mesh, obs, norm);
    Vector wd;
    return misfit_value(m, field, wd);
}

InverseResult linear_superposition_solve(const ReducedBasis& basis, const Mesh& mesh, const Observation& obs,
                                         bool stabilized)
{
    LUC_REQUIRE(basis.mesh_n == mesh.cells_per_side(), "linear solve: basis belongs to another mesh");
    LUC_REQUIRE(basis.size() >= 1, "linear solve: empty basis");
    const Vector u0 = observation_dofs(mesh, obs);
    const SparseMatrix mass = assemble_subdomain_mass(mesh, basis.omega_elements);
    const Vector mu0 = mass.multiply(u0);
    Vector b(basis.size());
    for (std::size_t n = 0; n < basis.size(); ++n) b[n] = dot(basis.fields[n].dofs, mu0);

    const DenseMatrix& system = stabilized ? basis.gram_mh : basis.gram_omega;
    InverseResult r;
    r.coefficients = lu_solve_dense(system, b);
    r.field = coefficient_field(basis, r.coefficients);
    r.final_objective = observation_misfit(mesh, obs, r.field.dofs);
    r.loss_trace = {r.final_objective};
    r.iterations = 1;
    return r;
}

InverseResult stabilized_projection(const ReducedBasis& basis, const Mesh& mesh, const Observation& obs)
{
    return linear_superposition_solve(basis, mesh, obs, true);
}

double rayleigh_min(const ReducedBasis& basis, bool stabilized)
{
    LUC_REQUIRE(basis.size() >= 1, "rayleigh_min: empty basis");
    const auto eig = symmetric_eig(stabilized ? basis.gram_mh : basis.gram_omega);
    return eig.values.back();
}

Field latent_field(const Mlp& net, const Mlp* decoder, const PodBasis& pod, const Mesh& mesh, std::span<const double> z)
{
    check_latent(net, decoder, pod, mesh, z.size());
    if (decoder == nullptr) return operator_field(net, mesh, pod, z);
    const Vector a = mlp_forward(*decoder, z);
    return operator_field(net, mesh, pod, a);
}

double latent_objective(const Mlp& net, const Mlp* decoder, const PodBasis& pod, const Mesh& mesh,
                        const Observation& obs, std::span<const double> z, ObjectiveNorm norm, std::span<double> grad_z)
{
    check_latent(net, decoder, pod, mesh, z.size());
    LUC_REQUIRE(grad_z.empty() || grad_z.size() == z.size(), "latent_objective: gradient length mismatch");
    const Misfit m = make_misfit(mesh, obs, norm);
    LatentScratch s;
    return latent_eval(net, decoder, pod, mesh, m, z, grad_z, s);
}

InverseResult latent_inverse_solve(const Mlp& net, const Mlp* decoder, const PodBasis& pod, const Mesh& mesh,
                                   const Observation& obs, std::span<const double> z0, const LatentOptions& options)
{
    check_latent(net, decoder, pod, mesh, z0.size());
    LUC_REQUIRE(options.lr > 0.0, "latent solve: learning rate must be positive");
    LUC_REQUIRE(options.iterations >= 1, "latent solve: at least one iteration is required");
    const Misfit m = make_misfit(mesh, obs, options.norm);
    LatentScratch s;

    Vector z(z0.begin(), z0.end());
    Vector grad(z.size());
    AdamState adam(z.size());
    InverseResult r;
    r.loss_trace.reserve(options.iterations + 1);
    double best = std::numeric_limits<double>::infinity();
    Vector best_z = z;
    for (std::size_t it = 0; it <= options.iterations; ++it) {
        const double value = latent_eval(net, decoder, pod, mesh, m, z, grad, s);
        if (!std::isfinite(value))
            throw NumericalFailure("latent solve: objective became non-finite at iteration " + std::to_string(it));
        r.loss_trace.push_back(value);
        if (value < best) {
            best = value;
            best_z = z;
        }
        if (it == options.iterations) break;
        adam_step(z, grad, adam, options.lr);
    }
    r.iterations = options.iterations;
    r.coefficients = best_z;
    r.final_objective = best;
    r.field = latent_field(net, decoder, pod, mesh, best_z);
    return r;
}

double disc_stability_constant(std::size_t n, double r_omega)
{
    LUC_REQUIRE(r_omega > 0.0 && r_omega <= 1.0, "disc_stability_constant: radius must lie in (0, 1]");
    // ∫_0^R ∫_0^{2π} r^{2n} cos²(nθ) r dθ dr = A_n R^{2n+2}/(2n+2).
    const double angular = n == 0 ? 2.0 * std::numbers::pi : std::numbers::pi;
    const double p = 2.0 * static_cast<double>(n) + 2.0;
    const double outer = angular / p;
    const double inner = angular * std::pow(r_omega, p) / p;
    return std::sqrt(outer / inner);
}

// ---------------------------------------------------------------------------

DenseMatrix fourier_boundary_modes(const Mesh& mesh, std::size_t count)
{
    LUC_REQUIRE(count >= 1, "fourier_boundary_modes: count must be positive");
    const std::size_t series = count % 2 == 1 ? count : count + 1;
    const auto& s = mesh.boundary_arclength();
    DenseMatrix out(s.size(), count);
    Vector e(series, 0.0);
    for (std::size_t j = 0; j < count; ++j) {
        std::fill(e.begin(), e.end(), 0.0);
        e[j] = 1.0;
        out.set_column(j, fourier_series(s, e));
    }
    return out;
}

double loglog_slope(std::span<const double> h, std::span<const double> error)
{
    LUC_REQUIRE(h.size() == error.size() && h.size() >= 2, "loglog_slope: need at least two points");
    double mx = 0.0, my = 0.0;
    const double n = static_cast<double>(h.size());
    for (std::size_t i = 0; i < h.size(); ++i) {
        LUC_REQUIRE(h[i] > 0.0 && error[i] > 0.0, "loglog_slope: values must be positive");
        mx += std::log(h[i]);
        my += std::log(error[i]);
    }
    mx /= n;
    my /= n;
    double sxy = 0.0, sxx = 0.0;
    for (std::size_t i = 0; i < h.size(); ++i) {
        const double dx = std::log(h[i]) - mx;
        sxy += dx * (std::log(error[i]) - my);
        sxx += dx * dx;
    }
    return sxy / sxx;
}

namespace {

void fill_slopes(ConvergenceStudy& study)
{
    Vector h, e1, e0, es;
    for (const auto& r : study.rows) {
        h.push_back(r.h);
        e1.push_back(r.h1_error);
        e0.push_back(r.l2_error);
        es.push_back(r.h1_semi_error);
    }
    if (h.size() < 2) return;
    study.h1_slope = loglog_slope(h, e1);
    study.l2_slope = loglog_slope(h, e0);
    study.h1_semi_slope = loglog_slope(h, es);
}

ConvergenceRow error_row(const Mesh& coarse, const Field& approx, const Mesh& fine, std::span<const double> reference)
{
    Field diff = transfer(coarse, approx.dofs, fine);
    axpy(-1.0, reference, diff.dofs);
    const Norms e = norms(fine, diff.dofs);
    ConvergenceRow row;
    row.mesh_n = coarse.cells_per_side();
    row.h = coarse.h();
    row.l2_error = e.l2;
    row.h1_semi_error = e.h1_semi;
    row.h1_error = e.h1();
    return row;
}

} // namespace

ConvergenceStudy projection_convergence_study(std::size_t modes, const std::vector<std::size_t>& meshes,
                                              std::size_t ref_mesh, const Disc& omega, double beta,
                                              std::span<const double> coefficients, std::size_t threads)
{
    LUC_REQUIRE(modes >= 1, "convergence study: at least one mode is required");
    LUC_REQUIRE(!meshes.empty(), "convergence study: no meshes");
    Vector c(coefficients.begin(), coefficients.end());
    if (c.empty()) {
        c.resize(modes);
        for (std::size_t n = 0; n < modes; ++n) c[n] = (n % 2 == 0 ? 1.0 : -1.0) / static_cast<double>(n + 1);
    }
    LUC_REQUIRE(c.size() == modes, "convergence study: coefficient count does not match the mode count");

    const Mesh fine(ref_mesh);
    const NitscheForms fine_forms = assemble_nitsche(fine, beta);
    const DenseMatrix fine_modes = fourier_boundary_modes(fine, modes);
    std::vector<Field> fine_fields(modes);
    detail::parallel_chunks(modes, threads, [&](std::size_t begin, std::size_t end, std::size_t) {
        for (std::size_t j = begin; j < end; ++j) fine_fields[j] = nitsche_solve(fine_forms, fine, fine_modes.column(j));
    });
    Vector reference(fine.num_nodes(), 0.0);
    for (std::size_t j = 0; j < modes; ++j) axpy(c[j], fine_fields[j].dofs, reference);

    ConvergenceStudy study;
    for (std::size_t n : meshes) {
        LUC_REQUIRE(n < ref_mesh, "convergence study: meshes must be coarser than the reference");
        const Mesh mesh(n);
        const ReducedBasis basis = build_reduced_basis(mesh, fourier_boundary_modes(mesh, modes), omega, beta, threads);
        Observation obs;
        obs.omega = omega;
        obs.mesh_n = n;
        obs.nodes = element_nodes(mesh, basis.omega_elements);
        obs.values.resize(obs.nodes.size());
        for (std::size_t k = 0; k < obs.nodes.size(); ++k)
            obs.values[k] = evaluate(fine, reference, mesh.nodes()[obs.nodes[k]]);
        const InverseResult r = stabilized_projection(basis, mesh, obs);
        study.rows.push_back(error_row(mesh, r.field, fine, reference));
    }
    fill_slopes(study);
    return study;
}

ConvergenceStudy nitsche_convergence_study(double (*g)(Point), const std::vector<std::size_t>& meshes,
                                           std::size_t ref_mesh, double beta)
{
    LUC_REQUIRE(g != nullptr, "nitsche study: boundary function is null");
    LUC_REQUIRE(!meshes.empty(), "nitsche study: no meshes");
    auto solve = [&](const Mesh& mesh) {
        Vector bv;
        for (std::size_t k : mesh.boundary_nodes()) bv.push_back(g(mesh.nodes()[k]));
        return nitsche_solve(assemble_nitsche(mesh, beta), mesh, bv);
    };
    const Mesh fine(ref_mesh);
    const Field reference = solve(fine);
    ConvergenceStudy study;
    for (std::size_t n : meshes) {
        LUC_REQUIRE(n < ref_mesh, "nitsche study: meshes must be coarser than the reference");
        const Mesh mesh(n);
        study.rows.push_back(error_row(mesh, solve(mesh), fine, reference.dofs));
    }
    fill_slopes(study);
    return study;
}

std::vector<RayleighRow> rayleigh_study(const ReducedBasis& basis)
{
    std::vector<RayleighRow> rows;
    for (std::size_t n = 1; n <= basis.size(); ++n) {
        RayleighRow row;
        row.n_modes = n;
        row.lambda_omega = symmetric_eig(leading_block(basis.gram_omega, n)).values.back();
        row.lambda_mh = symmetric_eig(leading_block(basis.gram_mh, n)).values.back();
        rows.push_back(row);
    }
    return rows;
}

// ---------------------------------------------------------------------------

void save_observation(const Observation& obs, const std::string& path, const std::string& extra_manifest_json)
{
    nlohmann::json j;
    j["format"] = "luc-observation/1";
    j["mesh_n"] = obs.mesh_n;
    j["omega"] = {{"center", {obs.omega.center.x, obs.omega.center.y}}, {"radius", obs.omega.radius}};
    j["noise_std"] = obs.noise_std;
    j["provenance"] = obs.provenance;
    j["nodes"] = obs.nodes;
    j["values"] = obs.values;
    if (!extra_manifest_json.empty()) j["manifest"] = nlohmann::json::parse(extra_manifest_json);
    detail::write_text(path, j.dump(2) + "\n");
}

Observation load_observation(const std::string& path)
{
    const auto j = detail::read_json(path);
    if (j.value("format", "") != "luc-observation/1") throw IoError(path + ": not an observation file");
    try {
        Observation obs;
        obs.mesh_n = j.at("mesh_n").get<std::size_t>();
        const auto& c = j.at("omega").at("center");
        obs.omega.center = {c.at(0).get<double>(), c.at(1).get<double>()};
        obs.omega.radius = j.at("omega").at("radius").get<double>();
        obs.noise_std = j.value("noise_std", 0.0);
        obs.provenance = j.value("provenance", "");
        obs.nodes = j.at("nodes").get<std::vector<std::size_t>>();
        obs.values = j.at("values").get<Vector>();
        if (obs.nodes.size() != obs.values.size()) throw IoError(path + ": node and value counts differ");
        return obs;
    } catch (const nlohmann::json::exception& e) {
        throw IoError(path + ": malformed observation: " + e.what());
    }
}

void save_inverse_result(const InverseResult& result, const std::string& path, const std::string& extra_manifest_json)
{
    nlohmann::json j;
    j["format"] = "luc-inverse-result/1";
    j["mesh_n"] = result.field.mesh_n;
    j["coefficients"] = result.coefficients;
    j["iterations"] = result.iterations;
    j["final_objective"] = result.final_objective;
    j["loss_trace"] = result.loss_trace;
    j["field"] = result.field.dofs;
    if (!extra_manifest_json.empty()) j["manifest"] = nlohmann::json::parse(extra_manifest_json);
    detail::write_text(path, j.dump(2) + "\n");
}

} // namespace luc
