// SPDX-License-Identifier: Apache-2.0
//
// Multilayer perceptrons with ELU hidden activations, reverse-mode gradients,
// Adam, and the two trainers built on them: an autoencoder on coefficient
// vectors and an operator network trained by minimizing the FE energy.

#pragma once

#include "luc/fem.hpp"
#include "luc/linalg.hpp"
#include "luc/mesh.hpp"
#include "luc/pod.hpp"

#include <cstdint>
#include <functional>
#include <span>
#include <string>
#include <vector>

namespace luc {

/// Fully connected network; ELU after every layer except the last. All
/// parameters live in one flat buffer: per layer, the row-major weight
/// (out × in) followed by the bias.
class Mlp {
public:
    Mlp() = default;
    explicit Mlp(std::vector<std::size_t> layer_dims);

    const std::vector<std::size_t>& layer_dims() const { return dims_; }
    std::size_t num_layers() const { return dims_.size() - 1; }
    std::size_t input_dim() const { return dims_.front(); }
    std::size_t output_dim() const { return dims_.back(); }
    std::size_t num_params() const { return params_.size(); }

    std::span<double> params() { return params_; }
    std::span<const double> params() const { return params_; }

    std::span<double> weight(std::size_t layer);
    std::span<const double> weight(std::size_t layer) const;
    std::span<double> bias(std::size_t layer);
    std::span<const double> bias(std::size_t layer) const;

private:
    std::vector<std::size_t> dims_;
    std::vector<std::size_t> offsets_; // start of each layer's weight block
    std::vector<double> params_;
};

/// Uniform(−√(6/fan_in), √(6/fan_in)) weights, zero biases.
Mlp mlp_init(std::vector<std::size_t> layer_dims, std::uint64_t seed);

/// Intermediate values kept for the backward pass.
struct MlpTape {
    std::vector<Vector> pre;  // affine outputs per layer
    std::vector<Vector> post; // post[0] = input, post[l+1] = activation(pre[l])
};

Vector mlp_forward(const Mlp& net, std::span<const double> input);
/// Forward pass recording the tape; returns a view of the output held by the tape.
std::span<const double> mlp_forward(const Mlp& net, std::span<const double> input, MlpTape& tape);

/// Reverse pass for one sample: accumulates ∂(cotangentᵀ·output)/∂params into
/// param_grad (length num_params) and returns the gradient with respect to the input.
Vector mlp_backward(const Mlp& net, const MlpTape& tape, std::span<const double> output_cotangent,
                    std::span<double> param_grad);

struct AdamOptions {
    double beta1 = 0.9;
    double beta2 = 0.999;
    double eps = 1e-8;
};

struct AdamState {
    Vector m;
    Vector v;
    std::size_t step = 0;

    explicit AdamState(std::size_t n = 0) : m(n, 0.0), v(n, 0.0) {}
};

/// One bias-corrected Adam update: p −= lr · m̂ / (√v̂ + ε).
void adam_step(std::span<double> params, std::span<const double> grads, AdamState& state, double lr,
               const AdamOptions& options = {});

struct TrainConfig {
    std::size_t batch_size = 32;
    std::size_t iterations = 1000000;
    double lr_initial = 1e-4;
    double lr_decay_factor = 0.5;
    std::size_t lr_decay_every = 250000;
    std::uint64_t seed = 0;
    std::size_t element_subsample = 0; // 0 = all elements
    double input_coeff_std = 0.3;      // ĝ ~ N(0, std²)
    std::size_t threads = 1;
    std::size_t log_every = 0;         // 0 = silent
};

/// Staircase learning rate lr_initial · factor^⌊it / every⌋.
double scheduled_lr(const TrainConfig& config, std::size_t iteration);

using ProgressCallback = std::function<void(std::size_t iteration, double loss)>;

// ---------------------------------------------------------------------------
// Autoencoder

struct Autoencoder {
    Mlp encoder;
    Mlp decoder;
    std::size_t latent_dim() const { return encoder.output_dim(); }
};

struct AutoencoderResult {
    Autoencoder model;
    double train_mse = 0.0; // mean over rows of ‖a − dec(enc(a))‖²
    Vector loss_trace;      // batch loss per iteration
};

/// Encoder (N, width, n_z), decoder (n_z, width, N).
AutoencoderResult train_autoencoder(const DenseMatrix& data, std::size_t latent_dim, std::size_t hidden_width,
                                    const TrainConfig& config, const ProgressCallback& progress = {});

Vector autoencoder_reconstruct(const Autoencoder& ae, std::span<const double> a);
double reconstruction_mse(const Autoencoder& ae, const DenseMatrix& data);

// ---------------------------------------------------------------------------
// Operator network: POD coefficients → interior nodal values

struct OperatorResult {
    Mlp net;
    Vector loss_trace;
};

/// Network dims (N, width × hidden_layers, #interior nodes).
std::vector<std::size_t> operator_layer_dims(const Mesh& mesh, const PodBasis& pod, std::size_t width,
                                             std::size_t hidden_layers = 4);

OperatorResult train_operator(const Mesh& mesh, const PodBasis& pod, std::size_t width, const TrainConfig& config,
                              const ProgressCallback& progress = {});

/// Field with boundary = pod_decode(coeffs) and interior = net(coeffs).
Field operator_field(const Mlp& net, const Mesh& mesh, const PodBasis& pod, std::span<const double> coeffs);

/// Batch-mean energy loss and its parameter gradient for fixed inputs and
/// element subsets; used by training and by gradient checks.
double operator_energy_loss(const Mlp& net, const Mesh& mesh, const PodBasis& pod, const DenseMatrix& inputs,
                            const std::vector<std::vector<std::size_t>>& subsets, std::span<double> param_grad);

struct ValidationReport {
    double h1_abs = 0.0;
    double h1_rel = 0.0;
    double l2_abs = 0.0;
    double l2_rel = 0.0;
    std::size_t problems = 0;
    std::size_t failures = 0;
};

ValidationReport validate_operator(const Mlp& net, const Mesh& mesh, const PodBasis& pod, std::size_t n_problems,
                                   std::uint64_t seed, double coeff_std = 0.3);

/// E of the field produced from all-zero coefficients.
double zero_energy_check(const Mlp& net, const Mesh& mesh, const PodBasis& pod);

// ---------------------------------------------------------------------------
// Files

void save_mlp(const Mlp& net, const std::string& path, std::size_t mesh_n = 0,
              const std::string& extra_manifest_json = {});
Mlp load_mlp(const std::string& path, std::size_t* mesh_n = nullptr);

void save_autoencoder(const Autoencoder& ae, const std::string& path, const std::string& extra_manifest_json = {});
Autoencoder load_autoencoder(const std::string& path);

} // namespace luc
