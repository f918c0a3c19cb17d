// SPDX-License-Identifier: Apache-2.0
//
// extern "C" wrappers: translate handles and buffers, map exceptions to
// status codes and keep the last error message per thread.

#include "luc/luc.h"

#include "luc/datagen.hpp"
#include "luc/error.hpp"
#include "luc/fem.hpp"
#include "luc/inverse.hpp"
#include "luc/mesh.hpp"
#include "luc/neural.hpp"
#include "luc/pod.hpp"

#include <json.hpp>

#include <algorithm>
#include <atomic>
#include <cstring>
#include <new>
#include <optional>
#include <span>
#include <string>

struct luc_mesh {
    luc::Mesh mesh;
};
struct luc_dataset {
    luc::Dataset data;
};
struct luc_pod {
    luc::PodBasis pod;
};
struct luc_mlp {
    luc::Mlp net;
};
struct luc_autoencoder {
    luc::Autoencoder ae;
};
struct luc_basis {
    luc::ReducedBasis basis;
};
struct luc_observation {
    luc::Observation obs;
};
struct luc_result {
    luc::InverseResult result;
};

namespace {

thread_local std::string t_last_error;
std::atomic<std::size_t> g_threads{1};

luc_status fail(luc_status status, const char* message)
{
    t_last_error = message;
    return status;
}

template <class F>
luc_status guarded(F&& body)
{
    try {
        body();
        t_last_error.clear();
        return LUC_OK;
    } catch (const luc::InvalidArgument& e) {
        return fail(LUC_ERR_INVALID_ARGUMENT, e.what());
    } catch (const luc::NumericalFailure& e) {
        return fail(LUC_ERR_NUMERICAL, e.what());
    } catch (const luc::IoError& e) {
        return fail(LUC_ERR_IO, e.what());
    } catch (const nlohmann::json::exception& e) {
        return fail(LUC_ERR_IO, e.what());
    } catch (const std::bad_alloc&) {
        return fail(LUC_ERR_INTERNAL, "out of memory");
    } catch (const std::exception& e) {
        return fail(LUC_ERR_INTERNAL, e.what());
    } catch (...) {
        return fail(LUC_ERR_INTERNAL, "unknown error");
    }
}

void require(bool cond, const char* message)
{
    if (!cond) throw luc::InvalidArgument(message);
}

template <class T>
const T& deref(const T* p, const char* what)
{
    if (!p) throw luc::InvalidArgument(std::string(what) + " handle is null");
    return *p;
}

std::span<const double> input(const double* p, std::size_t len, const char* what)
{
    if (len > 0 && !p) throw luc::InvalidArgument(std::string(what) + " buffer is null");
    return {p, len};
}

// Copies `values` into a caller buffer following the capacity/count convention.
void copy_out(std::span<const double> values, double* out, std::size_t capacity, std::size_t* count)
{
    if (count) *count = values.size();
    if (capacity > 0 && !out) throw luc::InvalidArgument("output buffer is null");
    std::copy_n(values.begin(), std::min(capacity, values.size()), out);
}

// Exact-size output: the buffer must hold every value.
void copy_exact(std::span<const double> values, double* out, std::size_t capacity)
{
    if (capacity < values.size())
        throw luc::InvalidArgument("output buffer holds " + std::to_string(capacity) + " values, " +
                                   std::to_string(values.size()) + " required");
    if (!values.empty() && !out) throw luc::InvalidArgument("output buffer is null");
    std::copy(values.begin(), values.end(), out);
}

std::string manifest(const char* json) { return json ? std::string(json) : std::string(); }

std::string path_of(const char* path)
{
    if (!path || !*path) throw luc::InvalidArgument("path is empty");
    return path;
}

template <class T>
void require_out(T** out)
{
    if (!out) throw luc::InvalidArgument("output handle pointer is null");
}

luc::TrainConfig to_config(const luc_train_config* c)
{
    const luc_train_config d = c ? *c : luc_train_config_default();
    luc::TrainConfig t;
    t.batch_size = d.batch_size;
    t.iterations = d.iterations;
    t.lr_initial = d.lr_initial;
    t.lr_decay_factor = d.lr_decay_factor;
    t.lr_decay_every = d.lr_decay_every;
    t.seed = d.seed;
    t.element_subsample = d.element_subsample;
    t.input_coeff_std = d.input_coeff_std;
    t.log_every = d.log_every;
    t.threads = g_threads.load();
    return t;
}

luc::ProgressCallback to_callback(luc_progress_fn fn, void* user)
{
    if (!fn) return {};
    return [fn, user](std::size_t it, double loss) { fn(it, loss, user); };
}

luc::Disc disc(double cx, double cy, double r) { return luc::Disc{{cx, cy}, r}; }

const luc::Mlp* decoder_of(const luc_autoencoder* ae) { return ae ? &ae->ae.decoder : nullptr; }

} // namespace

extern "C" {

// ---------------------------------------------------------------------------
// Library

LUC_API const char* luc_version(void) { return LUC_VERSION_STRING; }

LUC_API const char* luc_last_error(void) { return t_last_error.c_str(); }

LUC_API const char* luc_status_name(luc_status status)
{
    switch (status) {
    case LUC_OK: return "ok";
    case LUC_ERR_INVALID_ARGUMENT: return "invalid argument";
    case LUC_ERR_NUMERICAL: return "numerical failure";
    case LUC_ERR_IO: return "i/o error";
    case LUC_ERR_INTERNAL: return "internal error";
    }
    return "unknown status";
}

LUC_API void luc_set_threads(size_t threads) { g_threads = std::max<std::size_t>(threads, 1); }

LUC_API size_t luc_get_threads(void) { return g_threads.load(); }

// ---------------------------------------------------------------------------
// Mesh

LUC_API luc_status luc_mesh_create(size_t n, luc_mesh** out)
{
    return guarded([&] {
        require_out(out);
        *out = new luc_mesh{luc::Mesh(n)};
    });
}

LUC_API void luc_mesh_destroy(luc_mesh* mesh) { delete mesh; }

LUC_API size_t luc_mesh_cells_per_side(const luc_mesh* mesh) { return mesh ? mesh->mesh.cells_per_side() : 0; }
LUC_API size_t luc_mesh_num_nodes(const luc_mesh* mesh) { return mesh ? mesh->mesh.num_nodes() : 0; }
LUC_API size_t luc_mesh_num_boundary_nodes(const luc_mesh* mesh)
{
    return mesh ? mesh->mesh.boundary_nodes().size() : 0;
}
LUC_API size_t luc_mesh_num_interior_nodes(const luc_mesh* mesh)
{
    return mesh ? mesh->mesh.interior_nodes().size() : 0;
}

LUC_API luc_status luc_mesh_node_coords(const luc_mesh* mesh, double* xy, size_t capacity, size_t* count)
{
    return guarded([&] {
        const auto& m = deref(mesh, "mesh").mesh;
        luc::Vector v;
        v.reserve(2 * m.num_nodes());
        for (const auto& p : m.nodes()) {
            v.push_back(p.x);
            v.push_back(p.y);
        }
        copy_out(v, xy, capacity, count);
    });
}

LUC_API luc_status luc_nonlinear_energy(const luc_mesh* mesh, const double* dofs, size_t len, double* energy)
{
    return guarded([&] {
        const auto& m = deref(mesh, "mesh").mesh;
        require(energy != nullptr, "energy output is null");
        require(len == m.num_nodes(), "field length does not match the mesh");
        *energy = luc::nonlinear_energy(m, input(dofs, len, "field"));
    });
}

LUC_API luc_status luc_newton_solve(const luc_mesh* mesh, const double* boundary, size_t len, double* dofs,
                                    size_t capacity)
{
    return guarded([&] {
        const auto& m = deref(mesh, "mesh").mesh;
        const luc::Field f = luc::newton_solve_nonlinear(m, input(boundary, len, "boundary"));
        copy_exact(f.dofs, dofs, capacity);
    });
}

// ---------------------------------------------------------------------------
// Datasets

LUC_API luc_status luc_dataset_fourier(const luc_mesh* mesh, size_t num_coeffs, size_t count, uint64_t seed,
                                       double noise_std, luc_dataset** out)
{
    return guarded([&] {
        require_out(out);
        const auto& m = deref(mesh, "mesh").mesh;
        *out = new luc_dataset{luc::sample_fourier_dataset(m, num_coeffs, count, seed, noise_std)};
    });
}

LUC_API luc_status luc_dataset_parametric(const char* case_name, size_t count, uint64_t seed, luc_dataset** out)
{
    return guarded([&] {
        require_out(out);
        require(case_name != nullptr, "case name is null");
        const luc::ParametricSpec spec = luc::parametric_case(case_name, seed);
        *out = new luc_dataset{luc::sample_parametric_dataset(spec, count, seed)};
    });
}

LUC_API luc_status luc_dataset_load(const char* path, luc_dataset** out)
{
    return guarded([&] {
        require_out(out);
        *out = new luc_dataset{luc::load_dataset(path_of(path))};
    });
}

LUC_API luc_status luc_dataset_save(const luc_dataset* data, const char* path, const char* manifest_json)
{
    return guarded([&] { luc::save_dataset(deref(data, "dataset").data, path_of(path), manifest(manifest_json)); });
}

LUC_API void luc_dataset_destroy(luc_dataset* data) { delete data; }

LUC_API size_t luc_dataset_rows(const luc_dataset* data) { return data ? data->data.samples.rows() : 0; }
LUC_API size_t luc_dataset_cols(const luc_dataset* data) { return data ? data->data.samples.cols() : 0; }
LUC_API size_t luc_dataset_mesh_n(const luc_dataset* data) { return data ? data->data.mesh_n : 0; }

LUC_API luc_status luc_dataset_samples(const luc_dataset* data, double* values, size_t capacity, size_t* count)
{
    return guarded([&] { copy_out(deref(data, "dataset").data.samples.values(), values, capacity, count); });
}

// ---------------------------------------------------------------------------
// POD

LUC_API luc_status luc_pod_fit(const luc_dataset* data, size_t n_keep, double rel_tol, int center, luc_pod** out)
{
    return guarded([&] {
        require_out(out);
        luc::PodOptions opt;
        if (n_keep > 0) opt.n_keep = n_keep;
        if (rel_tol > 0.0) opt.rel_tol = rel_tol;
        opt.center = center != 0;
        *out = new luc_pod{luc::fit_pod(deref(data, "dataset").data, opt)};
    });
}

LUC_API luc_status luc_pod_load(const char* path, luc_pod** out)
{
    return guarded([&] {
        require_out(out);
        *out = new luc_pod{luc::load_pod(path_of(path))};
    });
}

LUC_API luc_status luc_pod_save(const luc_pod* pod, const char* path, const char* manifest_json)
{
    return guarded([&] { luc::save_pod(deref(pod, "pod").pod, path_of(path), manifest(manifest_json)); });
}

LUC_API void luc_pod_destroy(luc_pod* pod) { delete pod; }

LUC_API size_t luc_pod_num_modes(const luc_pod* pod) { return pod ? pod->pod.num_modes() : 0; }
LUC_API size_t luc_pod_mesh_n(const luc_pod* pod) { return pod ? pod->pod.mesh_n : 0; }

LUC_API luc_status luc_pod_spectrum(const luc_pod* pod, double* values, size_t capacity, size_t* count)
{
    return guarded([&] { copy_out(deref(pod, "pod").pod.spectrum, values, capacity, count); });
}

LUC_API luc_status luc_pod_singular_values(const luc_pod* pod, double* values, size_t capacity, size_t* count)
{
    return guarded([&] { copy_out(deref(pod, "pod").pod.singular_values, values, capacity, count); });
}

LUC_API luc_status luc_pod_encode(const luc_pod* pod, const double* boundary, size_t len, double* coeffs,
                                  size_t capacity)
{
    return guarded([&] {
        copy_exact(luc::pod_encode(deref(pod, "pod").pod, input(boundary, len, "boundary")), coeffs, capacity);
    });
}

LUC_API luc_status luc_pod_decode(const luc_pod* pod, const double* coeffs, size_t len, double* boundary,
                                  size_t capacity)
{
    return guarded([&] {
        copy_exact(luc::pod_decode(deref(pod, "pod").pod, input(coeffs, len, "coefficients")), boundary, capacity);
    });
}

// ---------------------------------------------------------------------------
// Training

LUC_API luc_train_config luc_train_config_default(void)
{
    const luc::TrainConfig t;
    luc_train_config c;
    c.batch_size = t.batch_size;
    c.iterations = t.iterations;
    c.lr_initial = t.lr_initial;
    c.lr_decay_factor = t.lr_decay_factor;
    c.lr_decay_every = t.lr_decay_every;
    c.seed = t.seed;
    c.element_subsample = t.element_subsample;
    c.input_coeff_std = t.input_coeff_std;
    c.log_every = t.log_every;
    return c;
}

LUC_API luc_status luc_operator_train(const luc_mesh* mesh, const luc_pod* pod, size_t width,
                                      const luc_train_config* config, luc_progress_fn progress, void* user,
                                      luc_mlp** out)
{
    return guarded([&] {
        require_out(out);
        const auto r = luc::train_operator(deref(mesh, "mesh").mesh, deref(pod, "pod").pod, width, to_config(config),
                                           to_callback(progress, user));
        *out = new luc_mlp{r.net};
    });
}

LUC_API luc_status luc_operator_validate(const luc_mlp* net, const luc_mesh* mesh, const luc_pod* pod,
                                         size_t n_problems, uint64_t seed, double coeff_std,
                                         luc_validation_report* report)
{
    return guarded([&] {
        require(report != nullptr, "report output is null");
        const auto v = luc::validate_operator(deref(net, "network").net, deref(mesh, "mesh").mesh,
                                              deref(pod, "pod").pod, n_problems, seed, coeff_std);
        *report = {v.h1_abs, v.h1_rel, v.l2_abs, v.l2_rel, v.problems, v.failures};
    });
}

LUC_API luc_status luc_operator_zero_energy(const luc_mlp* net, const luc_mesh* mesh, const luc_pod* pod,
                                            double* energy)
{
    return guarded([&] {
        require(energy != nullptr, "energy output is null");
        *energy = luc::zero_energy_check(deref(net, "network").net, deref(mesh, "mesh").mesh, deref(pod, "pod").pod);
    });
}

LUC_API luc_status luc_operator_field(const luc_mlp* net, const luc_mesh* mesh, const luc_pod* pod,
                                      const double* coeffs, size_t len, double* dofs, size_t capacity)
{
    return guarded([&] {
        const luc::Field f = luc::operator_field(deref(net, "network").net, deref(mesh, "mesh").mesh,
                                                 deref(pod, "pod").pod, input(coeffs, len, "coefficients"));
        copy_exact(f.dofs, dofs, capacity);
    });
}

LUC_API luc_status luc_mlp_load(const char* path, luc_mlp** out, size_t* mesh_n)
{
    return guarded([&] {
        require_out(out);
        std::size_t n = 0;
        luc::Mlp net = luc::load_mlp(path_of(path), &n);
        if (mesh_n) *mesh_n = n;
        *out = new luc_mlp{std::move(net)};
    });
}

LUC_API luc_status luc_mlp_save(const luc_mlp* net, const char* path, size_t mesh_n, const char* manifest_json)
{
    return guarded([&] { luc::save_mlp(deref(net, "network").net, path_of(path), mesh_n, manifest(manifest_json)); });
}

LUC_API void luc_mlp_destroy(luc_mlp* net) { delete net; }

LUC_API size_t luc_mlp_num_params(const luc_mlp* net) { return net ? net->net.num_params() : 0; }
LUC_API size_t luc_mlp_input_dim(const luc_mlp* net) { return net ? net->net.input_dim() : 0; }
LUC_API size_t luc_mlp_output_dim(const luc_mlp* net) { return net ? net->net.output_dim() : 0; }

LUC_API luc_status luc_autoencoder_train(const luc_dataset* data, size_t latent_dim, size_t width,
                                         const luc_train_config* config, luc_progress_fn progress, void* user,
                                         luc_autoencoder** out, double* train_mse)
{
    return guarded([&] {
        require_out(out);
        auto r = luc::train_autoencoder(deref(data, "dataset").data.samples, latent_dim, width, to_config(config),
                                        to_callback(progress, user));
        if (train_mse) *train_mse = r.train_mse;
        *out = new luc_autoencoder{std::move(r.model)};
    });
}

LUC_API luc_status luc_autoencoder_load(const char* path, luc_autoencoder** out)
{
    return guarded([&] {
        require_out(out);
        *out = new luc_autoencoder{luc::load_autoencoder(path_of(path))};
    });
}

LUC_API luc_status luc_autoencoder_save(const luc_autoencoder* ae, const char* path, const char* manifest_json)
{
    return guarded(
        [&] { luc::save_autoencoder(deref(ae, "autoencoder").ae, path_of(path), manifest(manifest_json)); });
}

LUC_API void luc_autoencoder_destroy(luc_autoencoder* ae) { delete ae; }

LUC_API size_t luc_autoencoder_latent_dim(const luc_autoencoder* ae) { return ae ? ae->ae.latent_dim() : 0; }
LUC_API size_t luc_autoencoder_data_dim(const luc_autoencoder* ae) { return ae ? ae->ae.encoder.input_dim() : 0; }

LUC_API luc_status luc_autoencoder_encode(const luc_autoencoder* ae, const double* a, size_t len, double* z,
                                          size_t capacity)
{
    return guarded([&] {
        const auto& m = deref(ae, "autoencoder").ae;
        require(len == m.encoder.input_dim(), "input length does not match the encoder");
        copy_exact(luc::mlp_forward(m.encoder, input(a, len, "input")), z, capacity);
    });
}

LUC_API luc_status luc_autoencoder_decode(const luc_autoencoder* ae, const double* z, size_t len, double* a,
                                          size_t capacity)
{
    return guarded([&] {
        const auto& m = deref(ae, "autoencoder").ae;
        require(len == m.decoder.input_dim(), "latent length does not match the decoder");
        copy_exact(luc::mlp_forward(m.decoder, input(z, len, "latent")), a, capacity);
    });
}

LUC_API luc_status luc_autoencoder_mse(const luc_autoencoder* ae, const luc_dataset* data, double* mse)
{
    return guarded([&] {
        require(mse != nullptr, "mse output is null");
        *mse = luc::reconstruction_mse(deref(ae, "autoencoder").ae, deref(data, "dataset").data.samples);
    });
}

// ---------------------------------------------------------------------------
// Inverse problem

LUC_API luc_status luc_basis_build(const luc_mesh* mesh, const luc_pod* pod, double cx, double cy, double radius,
                                   double beta, luc_basis** out)
{
    return guarded([&] {
        require_out(out);
        *out = new luc_basis{luc::build_reduced_basis(deref(mesh, "mesh").mesh, deref(pod, "pod").pod,
                                                      disc(cx, cy, radius), beta, g_threads.load())};
    });
}

LUC_API void luc_basis_destroy(luc_basis* basis) { delete basis; }

LUC_API size_t luc_basis_size(const luc_basis* basis) { return basis ? basis->basis.size() : 0; }

LUC_API luc_status luc_basis_rayleigh_min(const luc_basis* basis, int stabilized, double* lambda)
{
    return guarded([&] {
        require(lambda != nullptr, "lambda output is null");
        *lambda = luc::rayleigh_min(deref(basis, "basis").basis, stabilized != 0);
    });
}

LUC_API luc_status luc_basis_field(const luc_basis* basis, const double* coeffs, size_t len, double* dofs,
                                   size_t capacity)
{
    return guarded([&] {
        const auto& b = deref(basis, "basis").basis;
        require(len == b.size(), "coefficient count does not match the basis");
        const auto c = input(coeffs, len, "coefficients");
        luc::Vector u(b.fields.front().dofs.size(), 0.0);
        for (std::size_t n = 0; n < len; ++n) luc::axpy(c[n], b.fields[n].dofs, u);
        copy_exact(u, dofs, capacity);
    });
}

LUC_API luc_status luc_observation_create(const luc_mesh* mesh, double cx, double cy, double radius,
                                          const double* field, size_t len, double noise_std, uint64_t seed,
                                          const char* provenance, luc_observation** out)
{
    return guarded([&] {
        require_out(out);
        *out = new luc_observation{luc::make_observation(deref(mesh, "mesh").mesh, disc(cx, cy, radius),
                                                         input(field, len, "field"), noise_std, seed,
                                                         provenance ? provenance : "")};
    });
}

LUC_API luc_status luc_observation_load(const char* path, luc_observation** out)
{
    return guarded([&] {
        require_out(out);
        *out = new luc_observation{luc::load_observation(path_of(path))};
    });
}

LUC_API luc_status luc_observation_save(const luc_observation* obs, const char* path, const char* manifest_json)
{
    return guarded(
        [&] { luc::save_observation(deref(obs, "observation").obs, path_of(path), manifest(manifest_json)); });
}

LUC_API void luc_observation_destroy(luc_observation* obs) { delete obs; }

LUC_API size_t luc_observation_size(const luc_observation* obs) { return obs ? obs->obs.values.size() : 0; }
LUC_API size_t luc_observation_mesh_n(const luc_observation* obs) { return obs ? obs->obs.mesh_n : 0; }

LUC_API luc_status luc_observation_values(const luc_observation* obs, double* values, size_t capacity,
                                          size_t* count)
{
    return guarded([&] { copy_out(deref(obs, "observation").obs.values, values, capacity, count); });
}

LUC_API luc_status luc_solve_linear(const luc_basis* basis, const luc_mesh* mesh, const luc_observation* obs,
                                    int stabilized, luc_result** out)
{
    return guarded([&] {
        require_out(out);
        *out = new luc_result{luc::linear_superposition_solve(deref(basis, "basis").basis, deref(mesh, "mesh").mesh,
                                                              deref(obs, "observation").obs, stabilized != 0)};
    });
}

LUC_API luc_latent_options luc_latent_options_default(void)
{
    const luc::LatentOptions o;
    return {o.lr, o.iterations, o.norm == luc::ObjectiveNorm::h1 ? LUC_NORM_H1 : LUC_NORM_L2};
}

LUC_API luc_status luc_solve_latent(const luc_mlp* net, const luc_autoencoder* decoder, const luc_pod* pod,
                                    const luc_mesh* mesh, const luc_observation* obs, const double* z0, size_t len,
                                    const luc_latent_options* options, luc_result** out)
{
    return guarded([&] {
        require_out(out);
        const luc_latent_options o = options ? *options : luc_latent_options_default();
        require(o.norm == LUC_NORM_L2 || o.norm == LUC_NORM_H1, "unknown objective norm");
        luc::LatentOptions opt;
        opt.lr = o.lr;
        opt.iterations = o.iterations;
        opt.norm = o.norm == LUC_NORM_H1 ? luc::ObjectiveNorm::h1 : luc::ObjectiveNorm::l2;
        *out = new luc_result{luc::latent_inverse_solve(deref(net, "network").net, decoder_of(decoder),
                                                        deref(pod, "pod").pod, deref(mesh, "mesh").mesh,
                                                        deref(obs, "observation").obs, input(z0, len, "start point"),
                                                        opt)};
    });
}

LUC_API luc_status luc_latent_field(const luc_mlp* net, const luc_autoencoder* decoder, const luc_pod* pod,
                                    const luc_mesh* mesh, const double* z, size_t len, double* dofs,
                                    size_t capacity)
{
    return guarded([&] {
        const luc::Field f = luc::latent_field(deref(net, "network").net, decoder_of(decoder), deref(pod, "pod").pod,
                                               deref(mesh, "mesh").mesh, input(z, len, "latent point"));
        copy_exact(f.dofs, dofs, capacity);
    });
}

LUC_API void luc_result_destroy(luc_result* result) { delete result; }

LUC_API luc_status luc_result_save(const luc_result* result, const char* path, const char* manifest_json)
{
    return guarded(
        [&] { luc::save_inverse_result(deref(result, "result").result, path_of(path), manifest(manifest_json)); });
}

LUC_API luc_status luc_result_coefficients(const luc_result* result, double* values, size_t capacity, size_t* count)
{
    return guarded([&] { copy_out(deref(result, "result").result.coefficients, values, capacity, count); });
}

LUC_API luc_status luc_result_field(const luc_result* result, double* values, size_t capacity, size_t* count)
{
    return guarded([&] { copy_out(deref(result, "result").result.field.dofs, values, capacity, count); });
}

LUC_API luc_status luc_result_loss_trace(const luc_result* result, double* values, size_t capacity, size_t* count)
{
    return guarded([&] { copy_out(deref(result, "result").result.loss_trace, values, capacity, count); });
}

LUC_API double luc_result_final_objective(const luc_result* result)
{
    return result ? result->result.final_objective : 0.0;
}

LUC_API size_t luc_result_iterations(const luc_result* result) { return result ? result->result.iterations : 0; }

LUC_API luc_status luc_field_norms(const luc_mesh* mesh, const double* dofs, size_t len, double cx, double cy,
                                   double radius, double* l2, double* h1_semi)
{
    return guarded([&] {
        const auto& m = deref(mesh, "mesh").mesh;
        require(len == m.num_nodes(), "field length does not match the mesh");
        std::vector<std::size_t> elements;
        if (radius > 0.0) {
            elements = luc::subdomain_elements(m, disc(cx, cy, radius));
            require(!elements.empty(), "the disc contains no triangles");
        }
        const luc::Norms n = luc::norms(m, input(dofs, len, "field"), elements);
        if (l2) *l2 = n.l2;
        if (h1_semi) *h1_semi = n.h1_semi;
    });
}

// ---------------------------------------------------------------------------
// Studies

LUC_API luc_status luc_convergence_study(size_t modes, const size_t* meshes, size_t n_meshes, size_t ref_mesh,
                                         double cx, double cy, double radius, double beta,
                                         const double* coefficients, size_t n_coefficients,
                                         luc_convergence_row* rows, luc_slopes* slopes)
{
    return guarded([&] {
        require(meshes != nullptr && n_meshes > 0, "mesh list is empty");
        require(rows != nullptr, "row output is null");
        const std::vector<std::size_t> list(meshes, meshes + n_meshes);
        const auto s = luc::projection_convergence_study(modes, list, ref_mesh, disc(cx, cy, radius), beta,
                                                         input(coefficients, n_coefficients, "coefficients"),
                                                         g_threads.load());
        for (std::size_t k = 0; k < s.rows.size(); ++k) {
            const auto& r = s.rows[k];
            rows[k] = {r.mesh_n, r.h, r.h1_error, r.l2_error, r.h1_semi_error};
        }
        if (slopes) *slopes = {s.h1_slope, s.l2_slope, s.h1_semi_slope};
    });
}

LUC_API luc_status luc_rayleigh_study(const luc_basis* basis, luc_rayleigh_row* rows, size_t capacity,
                                      size_t* count)
{
    return guarded([&] {
        const auto r = luc::rayleigh_study(deref(basis, "basis").basis);
        if (count) *count = r.size();
        if (capacity > 0 && !rows) throw luc::InvalidArgument("output buffer is null");
        for (std::size_t k = 0; k < std::min(capacity, r.size()); ++k)
            rows[k] = {r[k].n_modes, r[k].lambda_omega, r[k].lambda_mh};
    });
}

LUC_API luc_status luc_disc_stability_constant(size_t n, double r_omega, double* value)
{
    return guarded([&] {
        require(value != nullptr, "value output is null");
        *value = luc::disc_stability_constant(n, r_omega);
    });
}

} // extern "C"
