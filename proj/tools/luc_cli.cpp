// SPDX-License-Identifier: Apache-2.0
//
// luc command-line tool. Every subcommand writes its artifacts plus a run
// manifest (command, parameters, seeds, input hashes, version, duration).
// Exit codes: 0 success, 1 usage or input error, 2 numerical failure.

#include "luc/luc.h"

#include <CLI11.hpp>
#include <json.hpp>

#include <chrono>
#include <cmath>
#include <cinttypes>
#include <cstdio>
#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <functional>
#include <memory>
#include <optional>
#include <stdexcept>
#include <string>
#include <vector>

using nlohmann::json;
namespace fs = std::filesystem;

namespace {

// ---------------------------------------------------------------------------
// Errors and handles

struct CliError : std::runtime_error {
    int code;
    CliError(int c, const std::string& msg) : std::runtime_error(msg), code(c) {}
};

int exit_code(luc_status s)
{
    return s == LUC_ERR_INVALID_ARGUMENT || s == LUC_ERR_IO ? 1 : 2;
}

void check(luc_status s)
{
    if (s != LUC_OK) throw CliError(exit_code(s), std::string(luc_status_name(s)) + ": " + luc_last_error());
}

void usage_check(bool cond, const std::string& msg)
{
    if (!cond) throw CliError(1, msg);
}

template <class T, void (*Destroy)(T*)>
struct Deleter {
    void operator()(T* p) const { Destroy(p); }
};
using Mesh = std::unique_ptr<luc_mesh, Deleter<luc_mesh, luc_mesh_destroy>>;
using Dataset = std::unique_ptr<luc_dataset, Deleter<luc_dataset, luc_dataset_destroy>>;
using Pod = std::unique_ptr<luc_pod, Deleter<luc_pod, luc_pod_destroy>>;
using Net = std::unique_ptr<luc_mlp, Deleter<luc_mlp, luc_mlp_destroy>>;
using Ae = std::unique_ptr<luc_autoencoder, Deleter<luc_autoencoder, luc_autoencoder_destroy>>;
using Basis = std::unique_ptr<luc_basis, Deleter<luc_basis, luc_basis_destroy>>;
using Obs = std::unique_ptr<luc_observation, Deleter<luc_observation, luc_observation_destroy>>;
using Result = std::unique_ptr<luc_result, Deleter<luc_result, luc_result_destroy>>;

Mesh make_mesh(std::size_t n)
{
    luc_mesh* m = nullptr;
    check(luc_mesh_create(n, &m));
    return Mesh(m);
}

Dataset load_dataset(const std::string& path)
{
    luc_dataset* d = nullptr;
    check(luc_dataset_load(path.c_str(), &d));
    return Dataset(d);
}

Pod load_pod(const std::string& path)
{
    luc_pod* p = nullptr;
    check(luc_pod_load(path.c_str(), &p));
    return Pod(p);
}

Net load_net(const std::string& path, std::size_t& mesh_n)
{
    luc_mlp* n = nullptr;
    check(luc_mlp_load(path.c_str(), &n, &mesh_n));
    return Net(n);
}

Ae load_ae(const std::string& path)
{
    luc_autoencoder* a = nullptr;
    check(luc_autoencoder_load(path.c_str(), &a));
    return Ae(a);
}

Obs load_obs(const std::string& path)
{
    luc_observation* o = nullptr;
    check(luc_observation_load(path.c_str(), &o));
    return Obs(o);
}

template <class F>
std::vector<double> fetch(F&& f)
{
    std::size_t count = 0;
    check(f(nullptr, 0, &count));
    std::vector<double> v(count);
    check(f(v.data(), v.size(), &count));
    return v;
}

// ---------------------------------------------------------------------------
// Run manifest

std::uint64_t fnv1a_file(const std::string& path)
{
    std::ifstream in(path, std::ios::binary);
    if (!in) throw CliError(1, "cannot read " + path);
    std::uint64_t h = 0xcbf29ce484222325ULL;
    char buf[1 << 16];
    while (in.read(buf, sizeof buf) || in.gcount() > 0) {
        for (std::streamsize i = 0; i < in.gcount(); ++i) {
            h ^= static_cast<unsigned char>(buf[i]);
            h *= 0x100000001b3ULL;
        }
    }
    return h;
}

std::string hex64(std::uint64_t v)
{
    char buf[17];
    std::snprintf(buf, sizeof buf, "%016" PRIx64, v);
    return buf;
}

struct Run {
    std::string command;
    json params = json::object();
    json seeds = json::object();
    json inputs = json::array();
    json results = json::object();
    std::chrono::steady_clock::time_point start = std::chrono::steady_clock::now();

    void input(const std::string& path)
    {
        // A dataset manifest pairs with its CSV; hash both.
        inputs.push_back({{"path", path}, {"fnv1a64", hex64(fnv1a_file(path))}});
        const fs::path csv = fs::path(path).replace_extension(".csv");
        if (csv != fs::path(path) && fs::exists(csv))
            inputs.push_back({{"path", csv.string()}, {"fnv1a64", hex64(fnv1a_file(csv.string()))}});
    }

    json manifest() const
    {
        return {{"command", command},
                {"params", params},
                {"seeds", seeds},
                {"inputs", inputs},
                {"results", results},
                {"version", luc_version()},
                {"threads", luc_get_threads()},
                {"duration_s", std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count()}};
    }

    std::string manifest_text() const { return manifest().dump(); }
};

std::string output_path(const std::string& given, const std::string& fallback)
{
    fs::path p = given.empty() ? fs::path(fallback) : fs::path(given);
    if (given.empty()) {
        const char* dir = std::getenv("LUC_OUTPUT_DIR");
        if (dir && *dir) p = fs::path(dir) / p;
    }
    if (p.has_parent_path()) fs::create_directories(p.parent_path());
    return p.string();
}

std::string fmt17(double v)
{
    char buf[40];
    std::snprintf(buf, sizeof buf, "%.17g", v);
    return buf;
}

void write_text(const std::string& path, const std::string& text)
{
    std::ofstream out(path, std::ios::binary);
    if (!out) throw CliError(1, "cannot write " + path);
    out << text;
    if (!out) throw CliError(1, "write failed for " + path);
}

// CSV at 17 significant digits with the manifest written next to it.
void write_csv(const std::string& path, const std::vector<std::string>& header,
               const std::vector<std::vector<double>>& rows, const Run& run)
{
    std::string text;
    for (std::size_t k = 0; k < header.size(); ++k) text += (k ? "," : "") + header[k];
    text += "\n";
    for (const auto& row : rows) {
        for (std::size_t k = 0; k < row.size(); ++k) text += (k ? "," : "") + fmt17(row[k]);
        text += "\n";
    }
    write_text(path, text);
    write_text(fs::path(path).replace_extension(".manifest.json").string(), run.manifest().dump(2) + "\n");
}

void write_json(const std::string& path, const json& body, const Run& run)
{
    json j = body;
    j["manifest"] = run.manifest();
    write_text(path, j.dump(2) + "\n");
}

void report(const std::string& path) { std::printf("wrote %s\n", path.c_str()); }

// ---------------------------------------------------------------------------
// Shared options

struct Omega {
    std::vector<double> disc{0.0, 0.0, 0.3};
    double cx() const { return disc[0]; }
    double cy() const { return disc[1]; }
    double r() const { return disc[2]; }
};

void add_omega(CLI::App* cmd, Omega& o)
{
    cmd->add_option("--omega", o.disc, "Observation disc cx,cy,r")->delimiter(',')->expected(3)->capture_default_str();
}

struct Training {
    std::string preset = "desk";
    std::optional<std::size_t> iterations, batch, decay_every, width, subsample, log_every;
    std::optional<double> lr, decay_factor;
    std::uint64_t seed = 1;
};

void add_training(CLI::App* cmd, Training& t)
{
    cmd->add_option("--preset", t.preset, "desk or full")->check(CLI::IsMember({"desk", "full"}))->capture_default_str();
    cmd->add_option("--iterations", t.iterations, "Override the preset iteration count");
    cmd->add_option("--batch", t.batch, "Override the preset batch size");
    cmd->add_option("--lr", t.lr, "Override the initial learning rate");
    cmd->add_option("--lr-decay", t.decay_factor, "Override the learning-rate decay factor");
    cmd->add_option("--lr-every", t.decay_every, "Override the learning-rate decay period");
    cmd->add_option("--width", t.width, "Override the hidden-layer width");
    cmd->add_option("--log-every", t.log_every, "Print the batch loss every k iterations");
    cmd->add_option("--seed", t.seed, "Training seed")->capture_default_str();
}

struct Arch {
    std::size_t width, batch;
};

// Widths and batch sizes of the reference architectures per mesh size.
Arch architecture(std::size_t mesh_n)
{
    if (mesh_n >= 244) return {1024, 96};
    if (mesh_n >= 82) return {512, 64};
    if (mesh_n >= 28) return {256, 64};
    return {64, 32};
}

luc_train_config apply(const Training& t, luc_train_config c, Run& run)
{
    if (t.iterations) c.iterations = *t.iterations;
    if (t.batch) c.batch_size = *t.batch;
    if (t.lr) c.lr_initial = *t.lr;
    if (t.decay_factor) c.lr_decay_factor = *t.decay_factor;
    if (t.decay_every) c.lr_decay_every = *t.decay_every;
    if (t.log_every) c.log_every = *t.log_every;
    c.seed = t.seed;
    usage_check(c.iterations > 0 && c.batch_size > 0, "iterations and batch size must be positive");
    run.params["preset"] = t.preset;
    run.params["iterations"] = c.iterations;
    run.params["batch_size"] = c.batch_size;
    run.params["lr_initial"] = c.lr_initial;
    run.params["lr_decay_factor"] = c.lr_decay_factor;
    run.params["lr_decay_every"] = c.lr_decay_every;
    run.params["element_subsample"] = c.element_subsample;
    run.params["input_coeff_std"] = c.input_coeff_std;
    run.seeds["training"] = c.seed;
    return c;
}

void print_progress(std::size_t it, double loss, void*) { std::fprintf(stderr, "iteration %zu loss %.6e\n", it, loss); }

void require_same_mesh(std::size_t a, std::size_t b, const char* what)
{
    usage_check(a == b, std::string(what) + ": mesh sizes differ (" + std::to_string(a) + " vs " + std::to_string(b) + ")");
}

// ---------------------------------------------------------------------------
// Subcommands

struct GenData {
    std::string kind = "fourier", name, out;
    std::size_t num_coeffs = 9, count = 1000, mesh_n = 10;
    std::uint64_t seed = 42;
    std::optional<double> noise_std;
};

void gen_data(const GenData& o, Run& run)
{
    luc_dataset* d = nullptr;
    run.params["kind"] = o.kind;
    run.params["count"] = o.count;
    run.seeds["data"] = o.seed;
    if (o.kind == "fourier") {
        const double noise = o.noise_std.value_or(0.15);
        run.params["num_coeffs"] = o.num_coeffs;
        run.params["mesh_n"] = o.mesh_n;
        run.params["noise_std"] = noise;
        const Mesh mesh = make_mesh(o.mesh_n);
        check(luc_dataset_fourier(mesh.get(), o.num_coeffs, o.count, o.seed, noise, &d));
    } else {
        usage_check(!o.name.empty(), "--case is required for --kind " + o.kind);
        usage_check(o.name.rfind(o.kind, 0) == 0, "--case " + o.name + " is not of kind " + o.kind);
        usage_check(!o.noise_std, "--noise-std applies to fourier data only; parametric cases fix their noise");
        run.params["case"] = o.name;
        check(luc_dataset_parametric(o.name.c_str(), o.count, o.seed, &d));
    }
    const Dataset data(d);
    const std::string path = output_path(o.out, "dataset.json");
    check(luc_dataset_save(data.get(), path.c_str(), run.manifest_text().c_str()));
    std::printf("%zu samples x %zu values\n", luc_dataset_rows(data.get()), luc_dataset_cols(data.get()));
    report(path);
}

struct PodFit {
    std::string data, out;
    std::size_t n_keep = 0;
    double rel_tol = 1e-8;
    bool center = false;
};

void pod_fit(const PodFit& o, Run& run)
{
    run.input(o.data);
    run.params["n_keep"] = o.n_keep;
    run.params["rel_tol"] = o.rel_tol;
    run.params["center"] = o.center;
    const Dataset data = load_dataset(o.data);
    luc_pod* p = nullptr;
    check(luc_pod_fit(data.get(), o.n_keep, o.rel_tol, o.center ? 1 : 0, &p));
    const Pod pod(p);
    run.results["modes"] = luc_pod_num_modes(pod.get());
    const std::string path = output_path(o.out, "pod.json");
    check(luc_pod_save(pod.get(), path.c_str(), run.manifest_text().c_str()));
    std::printf("kept %zu modes\n", luc_pod_num_modes(pod.get()));
    report(path);
}

struct PodSpectrum {
    std::string data, pod, out;
};

void pod_spectrum(const PodSpectrum& o, Run& run)
{
    usage_check(o.data.empty() != o.pod.empty(), "give exactly one of --data or --pod");
    Pod pod;
    if (!o.pod.empty()) {
        run.input(o.pod);
        pod = load_pod(o.pod);
    } else {
        run.input(o.data);
        const Dataset data = load_dataset(o.data);
        luc_pod* p = nullptr;
        check(luc_pod_fit(data.get(), 0, 0.0, 0, &p));
        pod.reset(p);
    }
    const auto eig = fetch([&](double* v, std::size_t c, std::size_t* n) { return luc_pod_spectrum(pod.get(), v, c, n); });
    const auto sv =
        fetch([&](double* v, std::size_t c, std::size_t* n) { return luc_pod_singular_values(pod.get(), v, c, n); });
    std::vector<std::vector<double>> rows;
    for (std::size_t k = 0; k < eig.size(); ++k) {
        const double s = k < sv.size() ? sv[k] : 0.0;
        rows.push_back({static_cast<double>(k + 1), eig[k], s, sv.empty() || sv[0] == 0.0 ? 0.0 : s / sv[0]});
    }
    run.results["modes"] = luc_pod_num_modes(pod.get());
    const std::string path = output_path(o.out, "spectrum.csv");
    write_csv(path, {"index", "eigenvalue", "singular_value", "relative_singular_value"}, rows, run);
    report(path);
}

struct TrainAe {
    std::string data, out;
    std::size_t latent = 9;
    Training t;
};

void train_ae(const TrainAe& o, Run& run)
{
    run.input(o.data);
    const Dataset data = load_dataset(o.data);
    luc_train_config c = luc_train_config_default();
    c.batch_size = 32;
    if (o.t.preset == "desk") {
        c.iterations = 40000;
        c.lr_initial = 1e-3;
        c.lr_decay_every = 10000;
    } else {
        c.iterations = 1000000;
        c.lr_initial = 1e-4;
        c.lr_decay_every = 250000;
    }
    c = apply(o.t, c, run);
    const std::size_t width = o.t.width.value_or(64);
    run.params["latent"] = o.latent;
    run.params["width"] = width;
    luc_autoencoder* a = nullptr;
    double mse = 0.0;
    check(luc_autoencoder_train(data.get(), o.latent, width, &c, c.log_every ? print_progress : nullptr, nullptr, &a,
                                &mse));
    const Ae ae(a);
    run.results["train_mse"] = mse;
    const std::string path = output_path(o.out, "autoencoder.json");
    check(luc_autoencoder_save(ae.get(), path.c_str(), run.manifest_text().c_str()));
    std::printf("train_mse %s\n", fmt17(mse).c_str());
    report(path);
}

struct TrainOp {
    std::string pod, out;
    std::optional<std::size_t> subsample;
    double coeff_std = 0.3;
    Training t;
};

void train_op(const TrainOp& o, Run& run)
{
    run.input(o.pod);
    const Pod pod = load_pod(o.pod);
    const std::size_t mesh_n = luc_pod_mesh_n(pod.get());
    usage_check(mesh_n > 0, "the POD basis carries no mesh size");
    const Mesh mesh = make_mesh(mesh_n);
    const Arch arch = architecture(mesh_n);
    luc_train_config c = luc_train_config_default();
    c.batch_size = arch.batch;
    c.input_coeff_std = o.coeff_std;
    if (o.t.preset == "desk") {
        c.iterations = 50000;
        c.lr_initial = 1e-3;
        c.lr_decay_every = 12500;
    } else {
        c.iterations = 1000000;
        c.lr_initial = 1e-4;
        c.lr_decay_every = 250000;
        if (mesh_n >= 244) c.element_subsample = luc_pod_num_modes(pod.get()) > 9 ? 4000 : 3000;
    }
    if (o.subsample) c.element_subsample = *o.subsample;
    c = apply(o.t, c, run);
    const std::size_t width = o.t.width.value_or(arch.width);
    run.params["width"] = width;
    run.params["mesh_n"] = mesh_n;
    run.params["num_coeffs"] = luc_pod_num_modes(pod.get());
    luc_mlp* n = nullptr;
    check(luc_operator_train(mesh.get(), pod.get(), width, &c, c.log_every ? print_progress : nullptr, nullptr, &n));
    const Net net(n);
    double e0 = 0.0;
    check(luc_operator_zero_energy(net.get(), mesh.get(), pod.get(), &e0));
    run.results["zero_energy"] = e0;
    const std::string path = output_path(o.out, "operator.json");
    check(luc_mlp_save(net.get(), path.c_str(), mesh_n, run.manifest_text().c_str()));
    std::printf("zero_energy %s\n", fmt17(e0).c_str());
    report(path);
}

struct NetPod {
    std::string net, pod, out;
};

struct Loaded {
    Net net;
    Pod pod;
    Mesh mesh;
};

Loaded load_net_pod(const NetPod& o, Run& run)
{
    run.input(o.net);
    run.input(o.pod);
    std::size_t net_mesh = 0;
    Loaded l{load_net(o.net, net_mesh), load_pod(o.pod), nullptr};
    require_same_mesh(net_mesh, luc_pod_mesh_n(l.pod.get()), "network and POD basis");
    usage_check(luc_mlp_input_dim(l.net.get()) == luc_pod_num_modes(l.pod.get()),
                "network input size does not match the POD mode count");
    l.mesh = make_mesh(net_mesh);
    return l;
}

struct ValidateOp {
    NetPod io;
    std::string preset = "desk";
    std::optional<std::size_t> problems;
    std::uint64_t seed = 2024;
    double coeff_std = 0.3;
};

void validate_op(const ValidateOp& o, Run& run)
{
    const Loaded l = load_net_pod(o.io, run);
    const std::size_t problems = o.problems.value_or(o.preset == "desk" ? 100 : 1000);
    run.params["problems"] = problems;
    run.params["coeff_std"] = o.coeff_std;
    run.params["preset"] = o.preset;
    run.seeds["validation"] = o.seed;
    luc_validation_report r{};
    check(luc_operator_validate(l.net.get(), l.mesh.get(), l.pod.get(), problems, o.seed, o.coeff_std, &r));
    const json body = {{"h1_semi_abs", r.h1_abs}, {"h1_semi_rel", r.h1_rel}, {"l2_abs", r.l2_abs},
                       {"l2_rel", r.l2_rel},      {"problems", r.problems}, {"failures", r.failures}};
    run.results = body;
    const std::string path = output_path(o.io.out, "validation.json");
    write_json(path, body, run);
    std::printf("h1_semi_rel %s l2_rel %s (%zu problems, %zu failures)\n", fmt17(r.h1_rel).c_str(),
                fmt17(r.l2_rel).c_str(), r.problems, r.failures);
    report(path);
}

void zero_energy(const NetPod& o, Run& run)
{
    const Loaded l = load_net_pod(o, run);
    double e0 = 0.0;
    check(luc_operator_zero_energy(l.net.get(), l.mesh.get(), l.pod.get(), &e0));
    run.results["zero_energy"] = e0;
    const std::string path = output_path(o.out, "zero_energy.json");
    write_json(path, {{"zero_energy", e0}}, run);
    std::printf("zero_energy %s\n", fmt17(e0).c_str());
    report(path);
}

// Observation either read from a file or synthesized from a ground-truth field.
struct ObsSource {
    std::string path, out, scale = "signal";
    double noise_std = 0.05;
    std::uint64_t seed = 11;
    Omega omega;
};

Obs observation(const ObsSource& s, const luc_mesh* mesh, const std::vector<double>* truth, Run& run)
{
    if (!s.path.empty()) {
        run.input(s.path);
        Obs obs = load_obs(s.path);
        require_same_mesh(luc_observation_mesh_n(obs.get()), luc_mesh_cells_per_side(mesh), "observation and model");
        return obs;
    }
    usage_check(truth != nullptr, "give --observation or a ground truth");
    run.params["omega"] = s.omega.disc;
    run.params["noise_std"] = s.noise_std;
    run.params["noise_scale"] = s.scale;
    run.seeds["noise"] = s.seed;
    double std_abs = s.noise_std;
    if (s.scale == "signal") {
        // Relative to the RMS of the clean observation.
        luc_observation* c = nullptr;
        check(luc_observation_create(mesh, s.omega.cx(), s.omega.cy(), s.omega.r(), truth->data(), truth->size(), 0.0,
                                     0, "", &c));
        const Obs clean(c);
        const auto v =
            fetch([&](double* b, std::size_t cap, std::size_t* n) { return luc_observation_values(c, b, cap, n); });
        double ms = 0.0;
        for (double x : v) ms += x * x;
        std_abs *= v.empty() ? 0.0 : std::sqrt(ms / static_cast<double>(v.size()));
    }
    run.results["noise_std_absolute"] = std_abs;
    luc_observation* o = nullptr;
    check(luc_observation_create(mesh, s.omega.cx(), s.omega.cy(), s.omega.r(), truth->data(), truth->size(),
                                 std_abs, s.seed, ("cli " + run.command).c_str(), &o));
    Obs obs(o);
    const std::string path = output_path(s.out, "observation.json");
    check(luc_observation_save(obs.get(), path.c_str(), run.manifest_text().c_str()));
    report(path);
    return obs;
}

void add_obs_source(CLI::App* cmd, ObsSource& s)
{
    cmd->add_option("--observation", s.path, "Observation file");
    cmd->add_option("--noise-std", s.noise_std, "Noise std of a synthesized observation")->capture_default_str();
    cmd->add_option("--noise-scale", s.scale, "signal: std relative to the clean RMS; absolute")
        ->check(CLI::IsMember({"signal", "absolute"}))
        ->capture_default_str();
    cmd->add_option("--noise-seed", s.seed, "Noise seed of a synthesized observation")->capture_default_str();
    cmd->add_option("--observation-out", s.out, "Where to write a synthesized observation");
    add_omega(cmd, s.omega);
}

std::vector<double> field_errors(const luc_mesh* mesh, const luc_result* r, const std::vector<double>& truth,
                                 const Omega& om, json& results)
{
    const auto field = fetch([&](double* v, std::size_t c, std::size_t* n) { return luc_result_field(r, v, c, n); });
    std::vector<double> err(field.size());
    for (std::size_t k = 0; k < err.size(); ++k) err[k] = field[k] - truth[k];
    double l2w = 0, h1w = 0, l2 = 0, h1 = 0;
    check(luc_field_norms(mesh, err.data(), err.size(), om.cx(), om.cy(), om.r(), &l2w, &h1w));
    check(luc_field_norms(mesh, err.data(), err.size(), 0, 0, 0, &l2, &h1));
    results["error_l2_omega"] = l2w;
    results["error_h1_semi_omega"] = h1w;
    results["error_l2"] = l2;
    results["error_h1_semi"] = h1;
    return err;
}

void write_trace(const luc_result* r, const std::string& result_path, const Run& run)
{
    const auto trace = fetch([&](double* v, std::size_t c, std::size_t* n) { return luc_result_loss_trace(r, v, c, n); });
    std::vector<std::vector<double>> rows;
    for (std::size_t k = 0; k < trace.size(); ++k) rows.push_back({static_cast<double>(k), trace[k]});
    const std::string path = fs::path(result_path).replace_extension(".trace.csv").string();
    write_csv(path, {"iteration", "objective"}, rows, run);
    report(path);
}

struct SolveInverse {
    NetPod io;
    std::string decoder, data;
    std::vector<double> truth, z0;
    std::optional<std::size_t> truth_row;
    double lr = 1e-2;
    std::size_t iterations = 2000;
    std::string norm = "l2";
    ObsSource obs;
};

void solve_inverse(const SolveInverse& o, Run& run)
{
    const Loaded l = load_net_pod(o.io, run);
    Ae ae;
    if (!o.decoder.empty()) {
        run.input(o.decoder);
        ae = load_ae(o.decoder);
        usage_check(luc_autoencoder_data_dim(ae.get()) == luc_mlp_input_dim(l.net.get()),
                    "decoder output size does not match the network input");
    }
    const std::size_t dim = ae ? luc_autoencoder_latent_dim(ae.get()) : luc_mlp_input_dim(l.net.get());

    // Ground-truth point: explicit, or a dataset row (encoded when a decoder is given).
    std::optional<std::vector<double>> z_star;
    if (!o.truth.empty()) {
        z_star = o.truth;
    } else if (o.truth_row) {
        usage_check(!o.data.empty(), "--truth-row needs --data");
        run.input(o.data);
        const Dataset data = load_dataset(o.data);
        const std::size_t cols = luc_dataset_cols(data.get());
        usage_check(*o.truth_row < luc_dataset_rows(data.get()), "--truth-row out of range");
        const auto all = fetch([&](double* v, std::size_t c, std::size_t* n) { return luc_dataset_samples(data.get(), v, c, n); });
        std::vector<double> row(all.begin() + static_cast<std::ptrdiff_t>(*o.truth_row * cols),
                                all.begin() + static_cast<std::ptrdiff_t>((*o.truth_row + 1) * cols));
        if (ae) {
            std::vector<double> z(dim);
            check(luc_autoencoder_encode(ae.get(), row.data(), row.size(), z.data(), z.size()));
            z_star = z;
        } else {
            z_star = row;
        }
        run.params["truth_row"] = *o.truth_row;
    }
    std::optional<std::vector<double>> truth_field;
    if (z_star) {
        usage_check(z_star->size() == dim, "ground truth has " + std::to_string(z_star->size()) + " entries, " +
                                               std::to_string(dim) + " expected");
        run.params["truth"] = *z_star;
        std::vector<double> f(luc_mesh_num_nodes(l.mesh.get()));
        check(luc_latent_field(l.net.get(), ae.get(), l.pod.get(), l.mesh.get(), z_star->data(), z_star->size(),
                               f.data(), f.size()));
        truth_field = std::move(f);
    }
    const Obs obs = observation(o.obs, l.mesh.get(), truth_field ? &*truth_field : nullptr, run);

    const std::vector<double> z0 = o.z0.empty() ? std::vector<double>(dim, 0.0) : o.z0;
    usage_check(z0.size() == dim, "--z0 has " + std::to_string(z0.size()) + " entries, " + std::to_string(dim) + " expected");
    luc_latent_options opt{o.lr, o.iterations, o.norm == "h1" ? LUC_NORM_H1 : LUC_NORM_L2};
    run.params["z0"] = z0;
    run.params["lr"] = o.lr;
    run.params["iterations"] = o.iterations;
    run.params["norm"] = o.norm;
    run.params["decoder"] = !o.decoder.empty();
    luc_result* r = nullptr;
    check(luc_solve_latent(l.net.get(), ae.get(), l.pod.get(), l.mesh.get(), obs.get(), z0.data(), z0.size(), &opt, &r));
    const Result result(r);

    const auto trace = fetch([&](double* v, std::size_t c, std::size_t* n) { return luc_result_loss_trace(r, v, c, n); });
    run.results["initial_objective"] = trace.empty() ? 0.0 : trace.front();
    run.results["final_objective"] = luc_result_final_objective(r);
    if (truth_field) field_errors(l.mesh.get(), r, *truth_field, o.obs.omega, run.results);
    const std::string path = output_path(o.io.out, "inverse.json");
    check(luc_result_save(r, path.c_str(), run.manifest_text().c_str()));
    std::printf("objective %s -> %s\n", fmt17(run.results["initial_objective"].get<double>()).c_str(),
                fmt17(luc_result_final_objective(r)).c_str());
    report(path);
    write_trace(r, path, run);
}

struct SolveLinear {
    std::string pod, out, stabilized = "on";
    std::vector<double> truth;
    double beta = 10.0;
    ObsSource obs;
};

void solve_linear(const SolveLinear& o, Run& run)
{
    run.input(o.pod);
    const Pod pod = load_pod(o.pod);
    const Mesh mesh = make_mesh(luc_pod_mesh_n(pod.get()));
    const Omega& om = o.obs.omega;
    luc_basis* b = nullptr;
    check(luc_basis_build(mesh.get(), pod.get(), om.cx(), om.cy(), om.r(), o.beta, &b));
    const Basis basis(b);
    std::optional<std::vector<double>> truth_field;
    if (!o.truth.empty()) {
        usage_check(o.truth.size() == luc_basis_size(b), "ground truth size does not match the basis");
        std::vector<double> f(luc_mesh_num_nodes(mesh.get()));
        check(luc_basis_field(b, o.truth.data(), o.truth.size(), f.data(), f.size()));
        truth_field = std::move(f);
        run.params["truth"] = o.truth;
    }
    const Obs obs = observation(o.obs, mesh.get(), truth_field ? &*truth_field : nullptr, run);
    const bool stab = o.stabilized == "on";
    run.params["stabilized"] = stab;
    run.params["beta"] = o.beta;
    double lambda = 0.0;
    check(luc_basis_rayleigh_min(b, stab ? 1 : 0, &lambda));
    run.results["lambda_min"] = lambda;
    luc_result* r = nullptr;
    check(luc_solve_linear(b, mesh.get(), obs.get(), stab ? 1 : 0, &r));
    const Result result(r);
    run.results["final_objective"] = luc_result_final_objective(r);
    if (truth_field) field_errors(mesh.get(), r, *truth_field, om, run.results);
    const std::string path = output_path(o.out, "linear.json");
    check(luc_result_save(r, path.c_str(), run.manifest_text().c_str()));
    std::printf("lambda_min %s objective %s\n", fmt17(lambda).c_str(), fmt17(luc_result_final_objective(r)).c_str());
    report(path);
}

struct Convergence {
    std::size_t modes = 5, ref = 160;
    std::vector<std::size_t> meshes{10, 20, 40, 80};
    std::vector<double> coefficients;
    double beta = 10.0;
    Omega omega;
    std::string out;
};

void convergence_study(const Convergence& o, Run& run)
{
    run.params["modes"] = o.modes;
    run.params["meshes"] = o.meshes;
    run.params["ref_mesh"] = o.ref;
    run.params["omega"] = o.omega.disc;
    run.params["beta"] = o.beta;
    if (!o.coefficients.empty()) run.params["coefficients"] = o.coefficients;
    std::vector<luc_convergence_row> rows(o.meshes.size());
    luc_slopes s{};
    check(luc_convergence_study(o.modes, o.meshes.data(), o.meshes.size(), o.ref, o.omega.cx(), o.omega.cy(),
                                o.omega.r(), o.beta, o.coefficients.empty() ? nullptr : o.coefficients.data(),
                                o.coefficients.size(), rows.data(), &s));
    run.results = {{"h1_slope", s.h1}, {"l2_slope", s.l2}, {"h1_semi_slope", s.h1_semi}};
    std::vector<std::vector<double>> table;
    for (const auto& r : rows)
        table.push_back({static_cast<double>(r.mesh_n), r.h, r.h1_error, r.l2_error, r.h1_semi_error});
    const std::string path = output_path(o.out, "convergence.csv");
    write_csv(path, {"mesh_n", "h", "h1_error", "l2_error", "h1_semi_error"}, table, run);
    std::printf("h1_slope %s l2_slope %s\n", fmt17(s.h1).c_str(), fmt17(s.l2).c_str());
    report(path);
}

struct Rayleigh {
    std::string pod, out;
    double beta = 10.0;
    Omega omega;
};

void rayleigh_study(const Rayleigh& o, Run& run)
{
    run.input(o.pod);
    run.params["omega"] = o.omega.disc;
    run.params["beta"] = o.beta;
    const Pod pod = load_pod(o.pod);
    const Mesh mesh = make_mesh(luc_pod_mesh_n(pod.get()));
    luc_basis* b = nullptr;
    check(luc_basis_build(mesh.get(), pod.get(), o.omega.cx(), o.omega.cy(), o.omega.r(), o.beta, &b));
    const Basis basis(b);
    std::size_t count = 0;
    check(luc_rayleigh_study(b, nullptr, 0, &count));
    std::vector<luc_rayleigh_row> rows(count);
    check(luc_rayleigh_study(b, rows.data(), rows.size(), &count));
    std::vector<std::vector<double>> table;
    for (const auto& r : rows) table.push_back({static_cast<double>(r.n_modes), r.lambda_omega, r.lambda_mh});
    const std::string path = output_path(o.out, "rayleigh.csv");
    write_csv(path, {"n_modes", "lambda_omega", "lambda_mh"}, table, run);
    report(path);
}

struct DiscStability {
    std::size_t n_max = 10;
    double r = 0.5;
    std::string out;
};

void disc_stability(const DiscStability& o, Run& run)
{
    run.params["n_max"] = o.n_max;
    run.params["r_omega"] = o.r;
    std::vector<std::vector<double>> table;
    for (std::size_t n = 0; n <= o.n_max; ++n) {
        double c = 0.0;
        check(luc_disc_stability_constant(n, o.r, &c));
        table.push_back({static_cast<double>(n), c});
    }
    const std::string path = output_path(o.out, "disc_stability.csv");
    write_csv(path, {"n", "C_n"}, table, run);
    report(path);
}

} // namespace

int main(int argc, char** argv)
{
    CLI::App app{"luc: unique continuation with collective boundary data"};
    app.require_subcommand(1);
    app.set_version_flag("--version", std::string(luc_version()));
    std::size_t threads = 1;
    app.add_option("--threads", threads, "Worker threads (1 reproduces bit-exactly)")->capture_default_str();

    std::function<void(Run&)> action;
    auto sub = [&](const char* name, const char* help, auto& opts, auto fn) {
        CLI::App* cmd = app.add_subcommand(name, help);
        cmd->callback([&action, &opts, fn] { action = [&opts, fn](Run& run) { fn(opts, run); }; });
        return cmd;
    };

    GenData gd;
    auto* c = sub("gen-data", "Sample a boundary-data or coefficient dataset", gd, gen_data);
    c->add_option("--kind", gd.kind, "fourier, polynomial or gaussian")
        ->check(CLI::IsMember({"fourier", "polynomial", "gaussian"}))
        ->capture_default_str();
    c->add_option("--case", gd.name, "Parametric case, e.g. gaussian-3-7 or polynomial-quadratic");
    c->add_option("--num-coeffs", gd.num_coeffs, "Fourier coefficient count (odd)")->capture_default_str();
    c->add_option("--count", gd.count, "Samples")->capture_default_str();
    c->add_option("--mesh-n", gd.mesh_n, "Cells per side")->capture_default_str();
    c->add_option("--seed", gd.seed, "Sampling seed")->capture_default_str();
    c->add_option("--noise-std", gd.noise_std, "Fourier coefficient noise std (default 0.15)");
    c->add_option("--out", gd.out, "Manifest path; samples go next to it as CSV");

    PodFit pf;
    c = sub("pod-fit", "Fit a POD basis to boundary data", pf, pod_fit);
    c->add_option("--data", pf.data, "Dataset manifest")->required();
    c->add_option("--n-keep", pf.n_keep, "Modes to keep (0 = automatic)")->capture_default_str();
    c->add_option("--rel-tol", pf.rel_tol, "Automatic cut relative to the largest eigenvalue")->capture_default_str();
    c->add_flag("--center", pf.center, "Subtract the sample mean");
    c->add_option("--out", pf.out, "Output file");

    PodSpectrum ps;
    c = sub("pod-spectrum", "Eigen and singular value spectrum of a dataset or POD basis", ps, pod_spectrum);
    c->add_option("--data", ps.data, "Dataset manifest");
    c->add_option("--pod", ps.pod, "POD basis");
    c->add_option("--out", ps.out, "Output CSV");

    TrainAe ta;
    c = sub("train-ae", "Train an autoencoder on dataset rows", ta, train_ae);
    c->add_option("--data", ta.data, "Dataset manifest")->required();
    c->add_option("--latent", ta.latent, "Latent width")->capture_default_str();
    c->add_option("--out", ta.out, "Output file");
    add_training(c, ta.t);

    TrainOp to;
    c = sub("train-op", "Train the operator network by energy minimization", to, train_op);
    c->add_option("--pod", to.pod, "POD basis")->required();
    c->add_option("--element-subsample", to.subsample, "Elements per sample in the energy (0 = all)");
    c->add_option("--coeff-std", to.coeff_std, "Std of the sampled input coefficients")->capture_default_str();
    c->add_option("--out", to.out, "Output file");
    add_training(c, to.t);

    ValidateOp vo;
    c = sub("validate-op", "Compare the operator network with Newton solutions", vo, validate_op);
    c->add_option("--net", vo.io.net, "Operator network")->required();
    c->add_option("--pod", vo.io.pod, "POD basis")->required();
    c->add_option("--preset", vo.preset, "desk (100 problems) or full (1000)")
        ->check(CLI::IsMember({"desk", "full"}))
        ->capture_default_str();
    c->add_option("--problems", vo.problems, "Override the problem count");
    c->add_option("--seed", vo.seed, "Validation seed")->capture_default_str();
    c->add_option("--coeff-std", vo.coeff_std, "Std of the validation coefficients")->capture_default_str();
    c->add_option("--out", vo.io.out, "Output file");

    NetPod ze;
    c = sub("zero-energy", "Energy of the network field for zero boundary data", ze, zero_energy);
    c->add_option("--net", ze.net, "Operator network")->required();
    c->add_option("--pod", ze.pod, "POD basis")->required();
    c->add_option("--out", ze.out, "Output file");

    SolveInverse si;
    c = sub("solve-inverse", "Latent or coefficient-space inverse solve through the network", si, solve_inverse);
    c->add_option("--net", si.io.net, "Operator network")->required();
    c->add_option("--pod", si.io.pod, "POD basis")->required();
    c->add_option("--decoder", si.decoder, "Autoencoder whose decoder feeds the network");
    c->add_option("--truth", si.truth, "Ground-truth latent point or coefficients")->delimiter(',');
    c->add_option("--truth-row", si.truth_row, "Ground truth from a dataset row");
    c->add_option("--data", si.data, "Dataset for --truth-row");
    c->add_option("--z0", si.z0, "Start point (default zero)")->delimiter(',');
    c->add_option("--lr", si.lr, "Adam learning rate")->capture_default_str();
    c->add_option("--iterations", si.iterations, "Adam iterations")->capture_default_str();
    c->add_option("--norm", si.norm, "Objective norm on the disc")->check(CLI::IsMember({"l2", "h1"}))->capture_default_str();
    c->add_option("--out", si.io.out, "Result file");
    add_obs_source(c, si.obs);

    SolveLinear sl;
    c = sub("solve-linear", "Linear superposition solve on the Nitsche basis", sl, solve_linear);
    c->add_option("--pod", sl.pod, "POD basis")->required();
    c->add_option("--stabilized", sl.stabilized, "on or off")->check(CLI::IsMember({"on", "off"}))->capture_default_str();
    c->add_option("--truth", sl.truth, "Ground-truth basis coefficients")->delimiter(',');
    c->add_option("--beta", sl.beta, "Nitsche penalty")->capture_default_str();
    c->add_option("--out", sl.out, "Result file");
    add_obs_source(c, sl.obs);

    Convergence cs;
    c = sub("convergence-study", "Mesh convergence of the stabilized projection", cs, convergence_study);
    c->add_option("--modes", cs.modes, "Fourier modes")->capture_default_str();
    c->add_option("--meshes", cs.meshes, "Mesh sizes")->delimiter(',')->capture_default_str();
    c->add_option("--ref-mesh", cs.ref, "Reference mesh size")->capture_default_str();
    c->add_option("--coefficients", cs.coefficients, "Reference coefficients")->delimiter(',');
    c->add_option("--beta", cs.beta, "Nitsche penalty")->capture_default_str();
    c->add_option("--out", cs.out, "Output CSV");
    add_omega(c, cs.omega);

    Rayleigh rs;
    c = sub("rayleigh-study", "Smallest Gram eigenvalues of nested bases", rs, rayleigh_study);
    c->add_option("--pod", rs.pod, "POD basis")->required();
    c->add_option("--beta", rs.beta, "Nitsche penalty")->capture_default_str();
    c->add_option("--out", rs.out, "Output CSV");
    add_omega(c, rs.omega);

    DiscStability ds;
    c = sub("disc-stability", "Stability constants of the disc example", ds, disc_stability);
    c->add_option("--n-max", ds.n_max, "Largest mode index")->capture_default_str();
    c->add_option("--r-omega", ds.r, "Observation radius")->capture_default_str();
    c->add_option("--out", ds.out, "Output CSV");

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        const int rc = app.exit(e);
        return rc == 0 ? 0 : 1;
    }

    try {
        luc_set_threads(threads);
        Run run;
        run.command = app.get_subcommands().front()->get_name();
        for (int k = 1; k < argc; ++k) run.params["argv"].push_back(argv[k]);
        action(run);
        return 0;
    } catch (const CliError& e) {
        std::fprintf(stderr, "error: %s\n", e.what());
        return e.code;
    } catch (const std::exception& e) {
        std::fprintf(stderr, "error: %s\n", e.what());
        return 2;
    }
}
