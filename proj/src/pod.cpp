// SPDX-License-Identifier: Apache-2.0

#include "luc/pod.hpp"

#include "io_util.hpp"
#include "luc/error.hpp"

#include <algorithm>
#include <cmath>

namespace luc {

PodBasis fit_pod(const DenseMatrix& samples, std::size_t mesh_n, const PodOptions& options)
{
    LUC_REQUIRE(samples.rows() >= 1 && samples.cols() >= 1, "fit_pod: empty dataset");
    if (options.n_keep) {
        LUC_REQUIRE(*options.n_keep >= 1, "fit_pod: n_keep must be at least 1");
        LUC_REQUIRE(*options.n_keep <= samples.rows() && *options.n_keep <= samples.cols(),
                    "fit_pod: n_keep exceeds the sample count or the row length");
    }

    DenseMatrix x = samples;
    Vector mean;
    if (options.center) {
        mean.assign(x.cols(), 0.0);
        for (std::size_t i = 0; i < x.rows(); ++i) axpy(1.0, x.row(i), mean);
        for (double& m : mean) m /= static_cast<double>(x.rows());
        for (std::size_t i = 0; i < x.rows(); ++i) axpy(-1.0, mean, x.row(i));
    }

    const EigenDecomposition eig = symmetric_eig(x.gram());
    const double top = eig.values.front();
    if (!(top > 0.0)) throw NumericalFailure("fit_pod: degenerate data (largest eigenvalue of XᵀX is zero)");

    std::size_t keep = 0;
    if (options.n_keep) {
        keep = *options.n_keep;
    } else {
        while (keep < eig.values.size() && eig.values[keep] >= options.rel_tol * top) ++keep;
    }

    PodBasis basis;
    basis.mesh_n = mesh_n;
    basis.mean = std::move(mean);
    basis.spectrum = eig.values;
    for (double& v : basis.spectrum) v = std::max(v, 0.0);
    basis.singular_values = jacobi_svd(x).singular_values;
    basis.modes = DenseMatrix(x.cols(), keep);
    for (std::size_t k = 0; k < keep; ++k) basis.modes.set_column(k, eig.vectors.column(k));
    return basis;
}

PodBasis fit_pod(const Dataset& data, const PodOptions& options)
{
    LUC_REQUIRE(data.kind == DatasetKind::fourier || data.mesh_n > 0,
                "fit_pod: boundary datasets are required (coefficient datasets have no mesh)");
    return fit_pod(data.samples, data.mesh_n, options);
}

Vector pod_encode(const PodBasis& basis, std::span<const double> boundary)
{
    LUC_REQUIRE(boundary.size() == basis.boundary_size(), "pod_encode: boundary length mismatch");
    if (basis.mean.empty()) return basis.modes.multiply_transposed(boundary);
    Vector centred(boundary.begin(), boundary.end());
    axpy(-1.0, basis.mean, centred);
    return basis.modes.multiply_transposed(centred);
}

Vector pod_decode(const PodBasis& basis, std::span<const double> coeffs)
{
    LUC_REQUIRE(coeffs.size() == basis.num_modes(), "pod_decode: coefficient length mismatch");
    Vector g = basis.modes.multiply(coeffs);
    if (!basis.mean.empty()) axpy(1.0, basis.mean, g);
    return g;
}

PodBasis truncate(const PodBasis& basis, std::size_t n)
{
    LUC_REQUIRE(n >= 1 && n <= basis.num_modes(), "truncate: mode count out of range");
    PodBasis out = basis;
    out.modes = DenseMatrix(basis.boundary_size(), n);
    for (std::size_t k = 0; k < n; ++k) out.modes.set_column(k, basis.modes.column(k));
    return out;
}

void save_pod(const PodBasis& basis, const std::string& path, const std::string& extra_manifest_json)
{
    nlohmann::json j;
    j["format"] = "luc-pod/1";
    j["mesh_n"] = basis.mesh_n;
    j["N"] = basis.num_modes();
    j["boundary_size"] = basis.boundary_size();
    j["spectrum"] = basis.spectrum;
    j["singular_values"] = basis.singular_values;
    j["mean"] = basis.mean;
    // modes[k] is the k-th boundary vector.
    j["modes"] = detail::matrix_to_json(basis.modes.transpose());
    if (!extra_manifest_json.empty()) j["manifest"] = nlohmann::json::parse(extra_manifest_json);
    detail::write_text(path, j.dump(2) + "\n");
}

PodBasis load_pod(const std::string& path)
{
    const nlohmann::json j = detail::read_json(path);
    if (j.value("format", "") != "luc-pod/1") throw IoError(path + ": not a POD basis file");
    PodBasis b;
    b.mesh_n = j.at("mesh_n").get<std::size_t>();
    b.spectrum = j.at("spectrum").get<Vector>();
    b.singular_values = j.value("singular_values", Vector{});
    b.mean = j.value("mean", Vector{});
    b.modes = detail::matrix_from_json(j.at("modes")).transpose();
    if (b.modes.cols() != j.at("N").get<std::size_t>()) throw IoError(path + ": mode count does not match N");
    return b;
}

} // namespace luc
