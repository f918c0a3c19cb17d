// SPDX-License-Identifier: Apache-2.0

#include "luc/neural.hpp"

#include "io_util.hpp"
#include "luc/error.hpp"
#include "luc/rng.hpp"
#include "parallel.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>
#include <sstream>

namespace luc {

namespace {

constexpr std::uint64_t kSampleStreamSalt = 0xD1B54A32D192ED03ULL;

double elu(double t) { return t >= 0.0 ? t : std::expm1(t); }
double elu_derivative(double t) { return t >= 0.0 ? 1.0 : std::exp(t); }

void check_finite_loss(double loss, std::size_t iteration, const char* what)
{
    if (!std::isfinite(loss)) {
        std::ostringstream msg;
        msg << what << ": loss became " << loss << " at iteration " << iteration;
        throw NumericalFailure(msg.str());
    }
}

} // namespace

// ---------------------------------------------------------------------------
// Mlp

Mlp::Mlp(std::vector<std::size_t> layer_dims) : dims_(std::move(layer_dims))
{
    LUC_REQUIRE(dims_.size() >= 2, "Mlp: at least an input and an output dimension are required");
    for (std::size_t d : dims_) LUC_REQUIRE(d >= 1, "Mlp: layer dimensions must be positive");
    std::size_t offset = 0;
    for (std::size_t l = 0; l + 1 < dims_.size(); ++l) {
        offsets_.push_back(offset);
        offset += dims_[l + 1] * dims_[l] + dims_[l + 1];
    }
    params_.assign(offset, 0.0);
}

std::span<double> Mlp::weight(std::size_t l)
{
    return {params_.data() + offsets_.at(l), dims_[l + 1] * dims_[l]};
}

std::span<const double> Mlp::weight(std::size_t l) const
{
    return {params_.data() + offsets_.at(l), dims_[l + 1] * dims_[l]};
}

std::span<double> Mlp::bias(std::size_t l)
{
    return {params_.data() + offsets_.at(l) + dims_[l + 1] * dims_[l], dims_[l + 1]};
}

std::span<const double> Mlp::bias(std::size_t l) const
{
    return {params_.data() + offsets_.at(l) + dims_[l + 1] * dims_[l], dims_[l + 1]};
}

Mlp mlp_init(std::vector<std::size_t> layer_dims, std::uint64_t seed)
{
    Mlp net(std::move(layer_dims));
    Rng rng(seed, 0);
    for (std::size_t l = 0; l < net.num_layers(); ++l) {
        const double bound = std::sqrt(6.0 / static_cast<double>(net.layer_dims()[l]));
        for (double& w : net.weight(l)) w = rng.uniform(-bound, bound);
    }
    return net;
}

std::span<const double> mlp_forward(const Mlp& net, std::span<const double> input, MlpTape& tape)
{
    LUC_REQUIRE(input.size() == net.input_dim(), "mlp_forward: input length mismatch");
    const std::size_t layers = net.num_layers();
    const auto& dims = net.layer_dims();
    tape.pre.resize(layers);
    tape.post.resize(layers + 1);
    tape.post[0].assign(input.begin(), input.end());
    for (std::size_t l = 0; l < layers; ++l) {
        const std::size_t in = dims[l];
        const std::size_t out = dims[l + 1];
        const auto w = net.weight(l);
        const auto b = net.bias(l);
        const double* x = tape.post[l].data();
        Vector& z = tape.pre[l];
        z.resize(out);
        for (std::size_t i = 0; i < out; ++i) {
            const double* wi = w.data() + i * in;
            double s = b[i];
            for (std::size_t j = 0; j < in; ++j) s += wi[j] * x[j];
            z[i] = s;
        }
        Vector& a = tape.post[l + 1];
        a.resize(out);
        if (l + 1 < layers) {
            for (std::size_t i = 0; i < out; ++i) a[i] = elu(z[i]);
        } else {
            a = z;
        }
    }
    return tape.post.back();
}

Vector mlp_forward(const Mlp& net, std::span<const double> input)
{
    MlpTape tape;
    const auto out = mlp_forward(net, input, tape);
    return Vector(out.begin(), out.end());
}

Vector mlp_backward(const Mlp& net, const MlpTape& tape, std::span<const double> cotangent, std::span<double> param_grad)
{
    LUC_REQUIRE(cotangent.size() == net.output_dim(), "mlp_backward: cotangent length mismatch");
    LUC_REQUIRE(param_grad.size() == net.num_params(), "mlp_backward: gradient buffer length mismatch");
    LUC_REQUIRE(tape.post.size() == net.num_layers() + 1, "mlp_backward: tape does not belong to this network");
    const auto& dims = net.layer_dims();
    Vector delta(cotangent.begin(), cotangent.end());
    Vector upstream;
    std::size_t offset = net.num_params();
    for (std::size_t l = net.num_layers(); l-- > 0;) {
        const std::size_t in = dims[l];
        const std::size_t out = dims[l + 1];
        offset -= out * in + out;
        if (l + 1 < net.num_layers())
            for (std::size_t i = 0; i < out; ++i) delta[i] *= elu_derivative(tape.pre[l][i]);
        const double* x = tape.post[l].data();
        double* gw = param_grad.data() + offset;
        double* gb = gw + out * in;
        for (std::size_t i = 0; i < out; ++i) {
            const double d = delta[i];
            gb[i] += d;
            if (d == 0.0) continue;
            double* gwi = gw + i * in;
            for (std::size_t j = 0; j < in; ++j) gwi[j] += d * x[j];
        }
        const auto w = net.weight(l);
        upstream.assign(in, 0.0);
        for (std::size_t i = 0; i < out; ++i) {
            const double d = delta[i];
            if (d == 0.0) continue;
            const double* wi = w.data() + i * in;
            for (std::size_t j = 0; j < in; ++j) upstream[j] += d * wi[j];
        }
        delta.swap(upstream);
    }
    return delta;
}

void adam_step(std::span<double> params, std::span<const double> grads, AdamState& state, double lr,
               const AdamOptions& options)
{
    LUC_REQUIRE(params.size() == grads.size(), "adam_step: gradient length mismatch");
    if (state.m.size() != params.size()) state = AdamState(params.size());
    ++state.step;
    const double t = static_cast<double>(state.step);
    const double c1 = 1.0 - std::pow(options.beta1, t);
    const double c2 = 1.0 - std::pow(options.beta2, t);
    for (std::size_t i = 0; i < params.size(); ++i) {
        const double g = grads[i];
        state.m[i] = options.beta1 * state.m[i] + (1.0 - options.beta1) * g;
        state.v[i] = options.beta2 * state.v[i] + (1.0 - options.beta2) * g * g;
        const double m_hat = state.m[i] / c1;
        const double v_hat = state.v[i] / c2;
        params[i] -= lr * m_hat / (std::sqrt(v_hat) + options.eps);
    }
}

double scheduled_lr(const TrainConfig& config, std::size_t iteration)
{
    const std::size_t every = std::max<std::size_t>(config.lr_decay_every, 1);
    return config.lr_initial * std::pow(config.lr_decay_factor, static_cast<double>(iteration / every));
}

namespace {

void check_config(const TrainConfig& c)
{
    LUC_REQUIRE(c.batch_size >= 1 && c.iterations >= 1, "TrainConfig: batch size and iterations must be positive");
    LUC_REQUIRE(c.lr_initial > 0.0, "TrainConfig: learning rate must be positive");
    LUC_REQUIRE(c.lr_decay_factor > 0.0 && c.lr_decay_factor <= 1.0, "TrainConfig: decay factor must lie in (0, 1]");
    LUC_REQUIRE(c.lr_decay_every >= 1, "TrainConfig: decay interval must be positive");
    LUC_REQUIRE(c.input_coeff_std > 0.0, "TrainConfig: input coefficient std must be positive");
}

// Per-sample gradient buffers make the reduction order independent of the
// number of workers.
struct BatchWorkspace {
    std::vector<Vector> sample_grads;
    void ensure(std::size_t batch, std::size_t params, std::size_t threads)
    {
        if (threads <= 1) return;
        if (sample_grads.size() != batch || (batch && sample_grads[0].size() != params))
            sample_grads.assign(batch, Vector(params, 0.0));
    }
};

} // namespace

// ---------------------------------------------------------------------------
// Autoencoder

Vector autoencoder_reconstruct(const Autoencoder& ae, std::span<const double> a)
{
    return mlp_forward(ae.decoder, mlp_forward(ae.encoder, a));
}

double reconstruction_mse(const Autoencoder& ae, const DenseMatrix& data)
{
    LUC_REQUIRE(data.cols() == ae.encoder.input_dim(), "reconstruction_mse: row length mismatch");
    double total = 0.0;
    for (std::size_t i = 0; i < data.rows(); ++i) {
        const Vector r = autoencoder_reconstruct(ae, data.row(i));
        double s = 0.0;
        for (std::size_t k = 0; k < r.size(); ++k) s += (r[k] - data(i, k)) * (r[k] - data(i, k));
        total += s;
    }
    return total / static_cast<double>(data.rows());
}

AutoencoderResult train_autoencoder(const DenseMatrix& data, std::size_t latent_dim, std::size_t hidden_width,
                                    const TrainConfig& config, const ProgressCallback& progress)
{
    check_config(config);
    const std::size_t n = data.cols();
    LUC_REQUIRE(data.rows() >= 1, "train_autoencoder: empty dataset");
    LUC_REQUIRE(latent_dim >= 1 && latent_dim < n, "train_autoencoder: latent dimension must satisfy 1 ≤ n_z < N");
    LUC_REQUIRE(hidden_width >= 1, "train_autoencoder: hidden width must be positive");

    AutoencoderResult result;
    auto& ae = result.model;
    ae.encoder = mlp_init({n, hidden_width, latent_dim}, mix64(config.seed));
    ae.decoder = mlp_init({latent_dim, hidden_width, n}, mix64(config.seed + 1));
    const std::size_t pe = ae.encoder.num_params();
    const std::size_t pd = ae.decoder.num_params();
    AdamState state_e(pe), state_d(pd);
    Vector grad_e(pe), grad_d(pd);
    const std::size_t batch = config.batch_size;
    const std::size_t threads = std::max<std::size_t>(1, config.threads);
    std::vector<MlpTape> tapes_e(threads), tapes_d(threads);
    BatchWorkspace ws_e, ws_d;
    ws_e.ensure(batch, pe, threads);
    ws_d.ensure(batch, pd, threads);
    std::vector<double> sample_loss(batch);
    std::vector<std::size_t> rows(batch);
    result.loss_trace.reserve(config.iterations);

    for (std::size_t it = 0; it < config.iterations; ++it) {
        Rng pick(config.seed ^ kSampleStreamSalt, it + 1);
        for (auto& r : rows) r = pick.below(data.rows());
        std::fill(grad_e.begin(), grad_e.end(), 0.0);
        std::fill(grad_d.begin(), grad_d.end(), 0.0);
        detail::parallel_chunks(batch, threads, [&](std::size_t begin, std::size_t end, std::size_t w) {
            Vector cot(n);
            for (std::size_t b = begin; b < end; ++b) {
                std::span<double> ge = grad_e;
                std::span<double> gd = grad_d;
                if (threads > 1) {
                    std::fill(ws_e.sample_grads[b].begin(), ws_e.sample_grads[b].end(), 0.0);
                    std::fill(ws_d.sample_grads[b].begin(), ws_d.sample_grads[b].end(), 0.0);
                    ge = ws_e.sample_grads[b];
                    gd = ws_d.sample_grads[b];
                }
                const auto a = data.row(rows[b]);
                const auto z = mlp_forward(ae.encoder, a, tapes_e[w]);
                const auto out = mlp_forward(ae.decoder, z, tapes_d[w]);
                double loss = 0.0;
                for (std::size_t k = 0; k < n; ++k) {
                    const double r = out[k] - a[k];
                    loss += r * r;
                    cot[k] = 2.0 * r / static_cast<double>(batch);
                }
                sample_loss[b] = loss;
                const Vector dz = mlp_backward(ae.decoder, tapes_d[w], cot, gd);
                mlp_backward(ae.encoder, tapes_e[w], dz, ge);
            }
        });
        if (threads > 1)
            for (std::size_t b = 0; b < batch; ++b) {
                axpy(1.0, ws_e.sample_grads[b], grad_e);
                axpy(1.0, ws_d.sample_grads[b], grad_d);
            }
        double loss = 0.0;
        for (double l : sample_loss) loss += l;
        loss /= static_cast<double>(batch);
        check_finite_loss(loss, it, "train_autoencoder");
        result.loss_trace.push_back(loss);

        const double lr = scheduled_lr(config, it);
        adam_step(ae.encoder.params(), grad_e, state_e, lr);
        adam_step(ae.decoder.params(), grad_d, state_d, lr);
        if (progress && config.log_every && (it + 1) % config.log_every == 0) progress(it + 1, loss);
    }
    result.train_mse = reconstruction_mse(ae, data);
    return result;
}

// ---------------------------------------------------------------------------
// Operator network

std::vector<std::size_t> operator_layer_dims(const Mesh& mesh, const PodBasis& pod, std::size_t width,
                                             std::size_t hidden_layers)
{
    LUC_REQUIRE(width >= 1, "operator_layer_dims: width must be positive");
    std::vector<std::size_t> dims{pod.num_modes()};
    for (std::size_t k = 0; k < hidden_layers; ++k) dims.push_back(width);
    dims.push_back(mesh.interior_nodes().size());
    return dims;
}

Field operator_field(const Mlp& net, const Mesh& mesh, const PodBasis& pod, std::span<const double> coeffs)
{
    LUC_REQUIRE(net.input_dim() == pod.num_modes(), "operator_field: network input does not match the POD size");
    LUC_REQUIRE(net.output_dim() == mesh.interior_nodes().size(), "operator_field: network output does not match the mesh");
    LUC_REQUIRE(pod.boundary_size() == mesh.boundary_nodes().size(), "operator_field: POD basis belongs to another mesh");
    const Vector boundary = pod_decode(pod, coeffs);
    const Vector interior = mlp_forward(net, coeffs);
    return assemble_field(mesh, boundary, interior);
}

namespace {

struct OperatorScratch {
    MlpTape tape;
    Vector dofs;
    Vector energy_grad;
    Vector cotangent;
};

// Energy of one sample; adds (1/batch)·∂E/∂params into param_grad.
double operator_sample(const Mlp& net, const Mesh& mesh, const PodBasis& pod, std::span<const double> coeffs,
                       std::span<const std::size_t> subset, double batch_scale, std::span<double> param_grad,
                       OperatorScratch& s)
{
    const auto& interior = mesh.interior_nodes();
    const auto& boundary = mesh.boundary_nodes();
    s.dofs.resize(mesh.num_nodes());
    const Vector g = pod_decode(pod, coeffs);
    for (std::size_t k = 0; k < boundary.size(); ++k) s.dofs[boundary[k]] = g[k];
    const auto out = mlp_forward(net, coeffs, s.tape);
    for (std::size_t k = 0; k < interior.size(); ++k) s.dofs[interior[k]] = out[k];
    s.energy_grad.assign(mesh.num_nodes(), 0.0);
    const double energy = nonlinear_energy_accumulate(mesh, s.dofs, subset, s.energy_grad);
    s.cotangent.resize(interior.size());
    for (std::size_t k = 0; k < interior.size(); ++k) s.cotangent[k] = batch_scale * s.energy_grad[interior[k]];
    mlp_backward(net, s.tape, s.cotangent, param_grad);
    return energy;
}

void draw_subset(Rng& rng, std::size_t total, std::size_t k, std::vector<std::size_t>& perm,
                 std::vector<std::size_t>& out)
{
    out.clear();
    if (k == 0 || k >= total) return;
    perm.resize(total);
    std::iota(perm.begin(), perm.end(), 0);
    for (std::size_t i = 0; i < k; ++i) {
        const std::size_t j = i + rng.below(total - i);
        std::swap(perm[i], perm[j]);
        out.push_back(perm[i]);
    }
    std::sort(out.begin(), out.end());
}

} // namespace

double operator_energy_loss(const Mlp& net, const Mesh& mesh, const PodBasis& pod, const DenseMatrix& inputs,
                            const std::vector<std::vector<std::size_t>>& subsets, std::span<double> param_grad)
{
    LUC_REQUIRE(inputs.rows() >= 1, "operator_energy_loss: empty batch");
    LUC_REQUIRE(subsets.empty() || subsets.size() == inputs.rows(), "operator_energy_loss: one subset per input required");
    LUC_REQUIRE(param_grad.empty() || param_grad.size() == net.num_params(), "operator_energy_loss: gradient length mismatch");
    Vector sink;
    std::span<double> grad = param_grad;
    if (grad.empty()) {
        sink.assign(net.num_params(), 0.0);
        grad = sink;
    }
    OperatorScratch s;
    const double scale = 1.0 / static_cast<double>(inputs.rows());
    double loss = 0.0;
    for (std::size_t b = 0; b < inputs.rows(); ++b) {
        const std::span<const std::size_t> subset =
            subsets.empty() ? std::span<const std::size_t>{} : std::span<const std::size_t>(subsets[b]);
        loss += operator_sample(net, mesh, pod, inputs.row(b), subset, scale, grad, s);
    }
    return loss * scale;
}

OperatorResult train_operator(const Mesh& mesh, const PodBasis& pod, std::size_t width, const TrainConfig& config,
                              const ProgressCallback& progress)
{
    check_config(config);
    LUC_REQUIRE(pod.mesh_n == mesh.cells_per_side() && pod.boundary_size() == mesh.boundary_nodes().size(),
                "train_operator: POD basis was fitted on another mesh");
    LUC_REQUIRE(config.element_subsample <= mesh.num_triangles(),
                "train_operator: element subsample exceeds the triangle count");
    OperatorResult result;
    result.net = mlp_init(operator_layer_dims(mesh, pod, width), mix64(config.seed));
    Mlp& net = result.net;
    const std::size_t params = net.num_params();
    const std::size_t batch = config.batch_size;
    const std::size_t threads = std::max<std::size_t>(1, config.threads);
    const std::size_t n_coeffs = pod.num_modes();
    AdamState state(params);
    Vector grad(params);
    BatchWorkspace ws;
    ws.ensure(batch, params, threads);
    std::vector<OperatorScratch> scratch(threads);
    std::vector<std::vector<std::size_t>> perms(threads), subsets(threads);
    std::vector<double> sample_energy(batch);
    result.loss_trace.reserve(config.iterations);
    const double batch_scale = 1.0 / static_cast<double>(batch);

    for (std::size_t it = 0; it < config.iterations; ++it) {
        std::fill(grad.begin(), grad.end(), 0.0);
        detail::parallel_chunks(batch, threads, [&](std::size_t begin, std::size_t end, std::size_t w) {
            Vector coeffs(n_coeffs);
            for (std::size_t b = begin; b < end; ++b) {
                Rng rng(config.seed ^ kSampleStreamSalt, it * batch + b + 1);
                for (double& c : coeffs) c = config.input_coeff_std * rng.normal();
                draw_subset(rng, mesh.num_triangles(), config.element_subsample, perms[w], subsets[w]);
                std::span<double> g = grad;
                if (threads > 1) {
                    std::fill(ws.sample_grads[b].begin(), ws.sample_grads[b].end(), 0.0);
                    g = ws.sample_grads[b];
                }
                sample_energy[b] = operator_sample(net, mesh, pod, coeffs, subsets[w], batch_scale, g, scratch[w]);
            }
        });
        if (threads > 1)
            for (std::size_t b = 0; b < batch; ++b) axpy(1.0, ws.sample_grads[b], grad);
        double loss = 0.0;
        for (double e : sample_energy) loss += e;
        loss *= batch_scale;
        check_finite_loss(loss, it, "train_operator");
        result.loss_trace.push_back(loss);
        adam_step(net.params(), grad, state, scheduled_lr(config, it));
        if (progress && config.log_every && (it + 1) % config.log_every == 0) progress(it + 1, loss);
    }
    return result;
}

ValidationReport validate_operator(const Mlp& net, const Mesh& mesh, const PodBasis& pod, std::size_t n_problems,
                                   std::uint64_t seed, double coeff_std)
{
    LUC_REQUIRE(n_problems >= 1, "validate_operator: at least one problem is required");
    LUC_REQUIRE(coeff_std >= 0.0, "validate_operator: negative coefficient std");
    ValidationReport r;
    Vector coeffs(pod.num_modes());
    for (std::size_t i = 0; i < n_problems; ++i) {
        Rng rng(seed, i + 1);
        for (double& c : coeffs) c = coeff_std * rng.normal();
        const Field net_field = operator_field(net, mesh, pod, coeffs);
        Field fe;
        try {
            fe = newton_solve_nonlinear(mesh, pod_decode(pod, coeffs));
        } catch (const NumericalFailure&) {
            ++r.failures;
            continue;
        }
        Vector diff = net_field.dofs;
        axpy(-1.0, fe.dofs, diff);
        const Norms err = norms(mesh, diff);
        const Norms ref = norms(mesh, fe.dofs);
        r.h1_abs += err.h1_semi;
        r.l2_abs += err.l2;
        r.h1_rel += err.h1_semi == 0.0 ? 0.0 : err.h1_semi / ref.h1_semi;
        r.l2_rel += err.l2 == 0.0 ? 0.0 : err.l2 / ref.l2;
        ++r.problems;
    }
    if (r.problems > 0) {
        const double n = static_cast<double>(r.problems);
        r.h1_abs /= n;
        r.l2_abs /= n;
        r.h1_rel /= n;
        r.l2_rel /= n;
    }
    return r;
}

double zero_energy_check(const Mlp& net, const Mesh& mesh, const PodBasis& pod)
{
    const Vector zero(pod.num_modes(), 0.0);
    return nonlinear_energy(mesh, operator_field(net, mesh, pod, zero).dofs);
}

// ---------------------------------------------------------------------------
// Files

namespace {

nlohmann::json mlp_to_json(const Mlp& net)
{
    nlohmann::json j;
    j["layer_dims"] = net.layer_dims();
    j["activation"] = "elu";
    j["output_activation"] = "identity";
    nlohmann::json weights = nlohmann::json::array();
    nlohmann::json biases = nlohmann::json::array();
    for (std::size_t l = 0; l < net.num_layers(); ++l) {
        const std::size_t in = net.layer_dims()[l];
        const std::size_t out = net.layer_dims()[l + 1];
        DenseMatrix w(out, in);
        std::copy(net.weight(l).begin(), net.weight(l).end(), w.values().begin());
        weights.push_back(detail::matrix_to_json(w));
        biases.push_back(std::vector<double>(net.bias(l).begin(), net.bias(l).end()));
    }
    j["weights"] = weights;
    j["biases"] = biases;
    return j;
}

Mlp mlp_from_json(const nlohmann::json& j)
{
    if (j.value("activation", "") != "elu" || j.value("output_activation", "") != "identity")
        throw IoError("unsupported activation tags in network file");
    Mlp net(j.at("layer_dims").get<std::vector<std::size_t>>());
    for (std::size_t l = 0; l < net.num_layers(); ++l) {
        const DenseMatrix w = detail::matrix_from_json(j.at("weights").at(l));
        const Vector b = j.at("biases").at(l).get<Vector>();
        if (w.rows() != net.layer_dims()[l + 1] || w.cols() != net.layer_dims()[l] || b.size() != w.rows())
            throw IoError("network file: layer shapes do not match layer_dims");
        std::copy(w.values().begin(), w.values().end(), net.weight(l).begin());
        std::copy(b.begin(), b.end(), net.bias(l).begin());
    }
    return net;
}

} // namespace

void save_mlp(const Mlp& net, const std::string& path, std::size_t mesh_n, const std::string& extra_manifest_json)
{
    nlohmann::json j = mlp_to_json(net);
    j["format"] = "luc-mlp/1";
    j["mesh_n"] = mesh_n;
    if (!extra_manifest_json.empty()) j["manifest"] = nlohmann::json::parse(extra_manifest_json);
    detail::write_text(path, j.dump() + "\n");
}

Mlp load_mlp(const std::string& path, std::size_t* mesh_n)
{
    const nlohmann::json j = detail::read_json(path);
    if (j.value("format", "") != "luc-mlp/1") throw IoError(path + ": not a network file");
    if (mesh_n) *mesh_n = j.value("mesh_n", std::size_t{0});
    return mlp_from_json(j);
}

void save_autoencoder(const Autoencoder& ae, const std::string& path, const std::string& extra_manifest_json)
{
    nlohmann::json j;
    j["format"] = "luc-autoencoder/1";
    j["latent_dim"] = ae.latent_dim();
    j["encoder"] = mlp_to_json(ae.encoder);
    j["decoder"] = mlp_to_json(ae.decoder);
    if (!extra_manifest_json.empty()) j["manifest"] = nlohmann::json::parse(extra_manifest_json);
    detail::write_text(path, j.dump() + "\n");
}

Autoencoder load_autoencoder(const std::string& path)
{
    const nlohmann::json j = detail::read_json(path);
    if (j.value("format", "") != "luc-autoencoder/1") throw IoError(path + ": not an autoencoder file");
    Autoencoder ae{mlp_from_json(j.at("encoder")), mlp_from_json(j.at("decoder"))};
    if (ae.encoder.output_dim() != ae.decoder.input_dim() || ae.encoder.input_dim() != ae.decoder.output_dim())
        throw IoError(path + ": encoder and decoder dimensions are inconsistent");
    return ae;
}

} // namespace luc
