// SPDX-License-Identifier: Apache-2.0

#include "luc/datagen.hpp"

#include "io_util.hpp"
#include "luc/error.hpp"
#include "luc/rng.hpp"

#include <cmath>
#include <filesystem>
#include <fstream>
#include <numbers>
#include <sstream>

namespace luc {

std::string to_string(DatasetKind kind)
{
    switch (kind) {
    case DatasetKind::fourier: return "fourier";
    case DatasetKind::polynomial: return "polynomial";
    case DatasetKind::gaussian: return "gaussian";
    case DatasetKind::raw_coefficients: return "raw-coefficients";
    }
    return "unknown";
}

DatasetKind dataset_kind_from_string(const std::string& name)
{
    if (name == "fourier") return DatasetKind::fourier;
    if (name == "polynomial") return DatasetKind::polynomial;
    if (name == "gaussian") return DatasetKind::gaussian;
    if (name == "raw-coefficients") return DatasetKind::raw_coefficients;
    throw InvalidArgument("unknown dataset kind '" + name + "'");
}

Vector fourier_series(std::span<const double> arclength, std::span<const double> coeffs)
{
    LUC_REQUIRE(coeffs.size() % 2 == 1, "fourier_series: the number of coefficients must be odd");
    const std::size_t half = (coeffs.size() - 1) / 2;
    Vector out(arclength.size());
    for (std::size_t k = 0; k < arclength.size(); ++k) {
        double g = coeffs[0];
        for (std::size_t n = 1; n <= half; ++n) {
            const double arg = 2.0 * static_cast<double>(n) * std::numbers::pi * arclength[k] / Mesh::circumference;
            g += coeffs[2 * n - 1] * std::sin(arg) + coeffs[2 * n] * std::cos(arg);
        }
        out[k] = g;
    }
    return out;
}

Vector fourier_boundary(const Mesh& mesh, std::size_t num_coeffs, std::span<const double> coeffs,
                        std::span<const double> noise)
{
    LUC_REQUIRE(num_coeffs % 2 == 1, "fourier_boundary: N must be odd");
    LUC_REQUIRE(coeffs.size() == num_coeffs && noise.size() == num_coeffs, "fourier_boundary: coefficient length mismatch");
    Vector perturbed(num_coeffs);
    for (std::size_t j = 0; j < num_coeffs; ++j) perturbed[j] = coeffs[j] + noise[j];
    return fourier_series(mesh.boundary_arclength(), perturbed);
}

Dataset sample_fourier_dataset(const Mesh& mesh, std::size_t num_coeffs, std::size_t count, std::uint64_t seed,
                               double noise_std, double coeff_bound)
{
    LUC_REQUIRE(count >= 1, "sample_fourier_dataset: count must be at least 1");
    LUC_REQUIRE(num_coeffs % 2 == 1, "sample_fourier_dataset: N must be odd");
    LUC_REQUIRE(noise_std >= 0.0 && coeff_bound >= 0.0, "sample_fourier_dataset: negative distribution parameter");
    Dataset d;
    d.kind = DatasetKind::fourier;
    d.mesh_n = mesh.cells_per_side();
    d.num_coeffs = num_coeffs;
    d.seed = seed;
    d.noise_std = noise_std;
    d.coeff_bound = coeff_bound;
    d.samples = DenseMatrix(count, mesh.boundary_nodes().size());
    Vector coeffs(num_coeffs), noise(num_coeffs);
    for (std::size_t i = 0; i < count; ++i) {
        Rng rng(seed, i + 1);
        for (double& c : coeffs) c = rng.uniform(-coeff_bound, coeff_bound);
        for (double& e : noise) e = noise_std * rng.normal();
        const Vector row = fourier_boundary(mesh, num_coeffs, coeffs, noise);
        std::copy(row.begin(), row.end(), d.samples.row(i).begin());
    }
    return d;
}

Vector polynomial_coeffs(const DenseMatrix& a, const DenseMatrix& b, std::span<const double> x,
                         std::span<const double> delta)
{
    LUC_REQUIRE(a.rows() == b.rows() && a.cols() == b.cols(), "polynomial_coeffs: A and B shapes differ");
    LUC_REQUIRE(x.size() == a.cols(), "polynomial_coeffs: x length mismatch");
    LUC_REQUIRE(delta.size() == a.rows(), "polynomial_coeffs: delta length mismatch");
    Vector xsq(x.begin(), x.end());
    for (double& v : xsq) v *= v;
    Vector out = a.multiply(x);
    const Vector quad = b.multiply(xsq);
    for (std::size_t j = 0; j < out.size(); ++j) out[j] += quad[j] + delta[j];
    return out;
}

Vector gaussian_coeffs(std::size_t n_x, std::size_t num_bumps, double gamma, std::span<const double> x,
                       std::span<const double> x0, std::span<const double> delta, std::size_t num_coeffs)
{
    LUC_REQUIRE(gamma > 0.0, "gaussian_coeffs: gamma must be positive");
    LUC_REQUIRE(n_x >= 1 && num_bumps >= 1, "gaussian_coeffs: empty parameter or bump set");
    LUC_REQUIRE(x.size() == n_x && x0.size() == num_bumps, "gaussian_coeffs: x or x0 length mismatch");
    LUC_REQUIRE(delta.size() == num_coeffs, "gaussian_coeffs: delta length mismatch");
    Vector out(num_coeffs);
    for (std::size_t j = 0; j < num_coeffs; ++j) {
        const double d = x[j % n_x] - x0[j % num_bumps];
        out[j] = std::exp(-gamma * d * d) + delta[j];
    }
    return out;
}

ParametricSpec gaussian_spec(std::size_t n_x, std::size_t num_bumps, double spacing, double x_lo, double x_hi,
                             double gamma, double noise_std)
{
    LUC_REQUIRE(n_x >= 1 && num_bumps >= 1, "gaussian_spec: empty parameter or bump set");
    LUC_REQUIRE(x_hi > x_lo, "gaussian_spec: empty parameter range");
    ParametricSpec s;
    s.kind = DatasetKind::gaussian;
    s.name = "gaussian-" + std::to_string(n_x) + "-" + std::to_string(num_bumps);
    s.n_x = n_x;
    s.num_coeffs = n_x * num_bumps;
    s.x_lo = x_lo;
    s.x_hi = x_hi;
    s.noise_std = noise_std;
    s.gamma = gamma;
    for (std::size_t l = 0; l < num_bumps; ++l) s.x0.push_back(spacing * static_cast<double>(l));
    return s;
}

ParametricSpec parametric_case(const std::string& name, std::uint64_t seed)
{
    if (name == "polynomial-linear" || name == "polynomial-quadratic") {
        ParametricSpec s;
        s.kind = DatasetKind::polynomial;
        s.name = name;
        s.n_x = 3;
        s.num_coeffs = 9;
        s.x_lo = -2.0;
        s.x_hi = 2.0;
        s.noise_std = 1.0;
        s.a = DenseMatrix(9, 3);
        s.b = DenseMatrix(9, 3);
        Rng rng(seed, 0);
        for (double& v : s.a.values()) v = rng.uniform(-1.0, 1.0);
        for (double& v : s.b.values()) v = rng.uniform(-1.0, 1.0);
        if (name == "polynomial-linear")
            for (double& v : s.b.values()) v = 0.0;
        return s;
    }
    if (name == "gaussian-2-5") return gaussian_spec(2, 5, 4.0, -2.0, 18.0);
    if (name == "gaussian-3-6") return gaussian_spec(3, 6, 2.0, -2.0, 12.0);
    if (name == "gaussian-3-7") return gaussian_spec(3, 7, 2.0, -2.0, 14.0);
    if (name == "gaussian-4-8") return gaussian_spec(4, 8, 2.0, -2.0, 16.0);
    throw InvalidArgument("unknown parametric case '" + name + "'");
}

Dataset sample_parametric_dataset(const ParametricSpec& spec, std::size_t count, std::uint64_t seed)
{
    LUC_REQUIRE(count >= 1, "sample_parametric_dataset: count must be at least 1");
    LUC_REQUIRE(spec.kind == DatasetKind::polynomial || spec.kind == DatasetKind::gaussian,
                "sample_parametric_dataset: spec must be polynomial or gaussian");
    Dataset d;
    d.kind = spec.kind;
    d.num_coeffs = spec.num_coeffs;
    d.seed = seed;
    d.noise_std = spec.noise_std;
    d.parametric = spec;
    d.samples = DenseMatrix(count, spec.num_coeffs);
    Vector x(spec.n_x), delta(spec.num_coeffs);
    for (std::size_t i = 0; i < count; ++i) {
        Rng rng(seed, i + 1);
        for (double& v : x) v = rng.uniform(spec.x_lo, spec.x_hi);
        for (double& v : delta) v = spec.noise_std * rng.normal();
        const Vector row = spec.kind == DatasetKind::polynomial
                               ? polynomial_coeffs(spec.a, spec.b, x, delta)
                               : gaussian_coeffs(spec.n_x, spec.x0.size(), spec.gamma, x, spec.x0, delta, spec.num_coeffs);
        std::copy(row.begin(), row.end(), d.samples.row(i).begin());
    }
    return d;
}

// ---------------------------------------------------------------------------
// Files

std::string companion_csv_path(const std::string& json_path)
{
    std::filesystem::path p(json_path);
    p.replace_extension(".csv");
    return p.string();
}

void save_dataset(const Dataset& d, const std::string& json_path, const std::string& extra_manifest_json)
{
    using nlohmann::json;
    json j;
    j["format"] = "luc-dataset/1";
    j["kind"] = to_string(d.kind);
    j["mesh_n"] = d.mesh_n;
    j["num_coeffs"] = d.num_coeffs;
    j["count"] = d.samples.rows();
    j["columns"] = d.samples.cols();
    j["seed"] = d.seed;
    j["noise_std"] = d.noise_std;
    j["coeff_bound"] = d.coeff_bound;
    if (d.parametric) {
        const auto& s = *d.parametric;
        json p;
        p["name"] = s.name;
        p["n_x"] = s.n_x;
        p["x_range"] = {s.x_lo, s.x_hi};
        if (s.kind == DatasetKind::polynomial) {
            p["A"] = detail::matrix_to_json(s.a);
            p["B"] = detail::matrix_to_json(s.b);
        } else {
            p["gamma"] = s.gamma;
            p["x0"] = s.x0;
        }
        j["parameters"] = p;
    }
    const std::string csv = companion_csv_path(json_path);
    j["samples_csv"] = std::filesystem::path(csv).filename().string();
    if (!extra_manifest_json.empty()) j["manifest"] = json::parse(extra_manifest_json);
    detail::write_text(json_path, j.dump(2) + "\n");
    detail::write_csv(csv, d.samples, {});
}

Dataset load_dataset(const std::string& json_path)
{
    using nlohmann::json;
    const json j = detail::read_json(json_path);
    if (j.value("format", "") != "luc-dataset/1") throw IoError(json_path + ": not a dataset manifest");
    Dataset d;
    d.kind = dataset_kind_from_string(j.at("kind").get<std::string>());
    d.mesh_n = j.at("mesh_n").get<std::size_t>();
    d.num_coeffs = j.at("num_coeffs").get<std::size_t>();
    d.seed = j.at("seed").get<std::uint64_t>();
    d.noise_std = j.at("noise_std").get<double>();
    d.coeff_bound = j.value("coeff_bound", 1.0);
    if (j.contains("parameters")) {
        const auto& p = j.at("parameters");
        ParametricSpec s;
        s.kind = d.kind;
        s.name = p.at("name").get<std::string>();
        s.n_x = p.at("n_x").get<std::size_t>();
        s.num_coeffs = d.num_coeffs;
        s.x_lo = p.at("x_range").at(0).get<double>();
        s.x_hi = p.at("x_range").at(1).get<double>();
        s.noise_std = d.noise_std;
        if (d.kind == DatasetKind::polynomial) {
            s.a = detail::matrix_from_json(p.at("A"));
            s.b = detail::matrix_from_json(p.at("B"));
        } else {
            s.gamma = p.at("gamma").get<double>();
            s.x0 = p.at("x0").get<Vector>();
        }
        d.parametric = s;
    }
    const std::filesystem::path dir = std::filesystem::path(json_path).parent_path();
    const std::string csv = (dir / j.at("samples_csv").get<std::string>()).string();
    d.samples = detail::read_csv(csv);
    if (d.samples.rows() != j.at("count").get<std::size_t>() || d.samples.cols() != j.at("columns").get<std::size_t>())
        throw IoError(csv + ": sample matrix shape does not match the manifest");
    return d;
}

} // namespace luc
