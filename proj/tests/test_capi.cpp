// SPDX-License-Identifier: Apache-2.0

#include "luc/luc.h"

#include <gtest/gtest.h>

#include <cmath>
#include <cstdio>
#include <filesystem>
#include <string>
#include <vector>

namespace {

std::string temp_file(const std::string& name)
{
    const auto dir = std::filesystem::temp_directory_path() / "luc_capi_tests";
    std::filesystem::create_directories(dir);
    return (dir / name).string();
}

struct Fixture : ::testing::Test {
    luc_mesh* mesh = nullptr;
    luc_dataset* data = nullptr;
    luc_pod* pod = nullptr;

    void SetUp() override
    {
        ASSERT_EQ(luc_mesh_create(6, &mesh), LUC_OK);
        ASSERT_EQ(luc_dataset_fourier(mesh, 3, 50, 7, 0.15, &data), LUC_OK);
        ASSERT_EQ(luc_pod_fit(data, 0, 0.0, 0, &pod), LUC_OK);
    }
    void TearDown() override
    {
        luc_pod_destroy(pod);
        luc_dataset_destroy(data);
        luc_mesh_destroy(mesh);
    }
};

} // namespace

TEST(CApi, VersionAndStatusNames)
{
    EXPECT_STREQ(luc_version(), "1.0.0");
    EXPECT_STREQ(luc_status_name(LUC_OK), "ok");
    EXPECT_STREQ(luc_status_name(LUC_ERR_NUMERICAL), "numerical failure");
}

TEST(CApi, NullHandlesReportInvalidArgument)
{
    double e = 0.0;
    EXPECT_EQ(luc_operator_zero_energy(nullptr, nullptr, nullptr, &e), LUC_ERR_INVALID_ARGUMENT);
    EXPECT_NE(std::string(luc_last_error()), "");
    EXPECT_EQ(luc_mesh_create(4, nullptr), LUC_ERR_INVALID_ARGUMENT);
    // A successful call clears the message.
    double c = 0.0;
    EXPECT_EQ(luc_disc_stability_constant(0, 0.5, &c), LUC_OK);
    EXPECT_STREQ(luc_last_error(), "");
}

TEST(CApi, MissingFileIsIoError)
{
    luc_pod* p = nullptr;
    EXPECT_EQ(luc_pod_load("/nonexistent/luc/pod.json", &p), LUC_ERR_IO);
    EXPECT_EQ(p, nullptr);
}

TEST(CApi, MeshCounts)
{
    luc_mesh* m = nullptr;
    ASSERT_EQ(luc_mesh_create(10, &m), LUC_OK);
    EXPECT_EQ(luc_mesh_cells_per_side(m), 10u);
    EXPECT_EQ(luc_mesh_num_nodes(m), 121u);
    EXPECT_EQ(luc_mesh_num_boundary_nodes(m), 40u);
    EXPECT_EQ(luc_mesh_num_interior_nodes(m), 81u);
    std::size_t count = 0;
    ASSERT_EQ(luc_mesh_node_coords(m, nullptr, 0, &count), LUC_OK);
    EXPECT_EQ(count, 242u);
    std::vector<double> xy(count);
    ASSERT_EQ(luc_mesh_node_coords(m, xy.data(), xy.size(), nullptr), LUC_OK);
    EXPECT_DOUBLE_EQ(xy[0], -0.5);
    EXPECT_DOUBLE_EQ(xy[1], -0.5);
    luc_mesh_destroy(m);
}

TEST(CApi, ZeroMeshIsRejected)
{
    luc_mesh* m = nullptr;
    EXPECT_EQ(luc_mesh_create(0, &m), LUC_ERR_INVALID_ARGUMENT);
}

TEST(CApi, DiscStabilityConstant)
{
    double c = 0.0;
    ASSERT_EQ(luc_disc_stability_constant(3, 0.5, &c), LUC_OK);
    EXPECT_NEAR(c, 16.0, 1e-12);
    EXPECT_EQ(luc_disc_stability_constant(3, 1.5, &c), LUC_ERR_INVALID_ARGUMENT);
}

TEST(CApi, ThreadSetting)
{
    luc_set_threads(3);
    EXPECT_EQ(luc_get_threads(), 3u);
    luc_set_threads(0);
    EXPECT_EQ(luc_get_threads(), 1u);
}

TEST_F(Fixture, DatasetShapeAndSamples)
{
    EXPECT_EQ(luc_dataset_rows(data), 50u);
    EXPECT_EQ(luc_dataset_cols(data), 24u);
    EXPECT_EQ(luc_dataset_mesh_n(data), 6u);
    std::size_t count = 0;
    ASSERT_EQ(luc_dataset_samples(data, nullptr, 0, &count), LUC_OK);
    EXPECT_EQ(count, 50u * 24u);
    // A short buffer receives a prefix and still reports the full size.
    double first[2] = {0, 0};
    ASSERT_EQ(luc_dataset_samples(data, first, 2, &count), LUC_OK);
    EXPECT_EQ(count, 50u * 24u);
    EXPECT_NE(first[0], 0.0);
}

TEST_F(Fixture, PodEncodeDecodeRoundTrip)
{
    ASSERT_EQ(luc_pod_num_modes(pod), 3u);
    EXPECT_EQ(luc_pod_mesh_n(pod), 6u);
    std::vector<double> samples(50 * 24);
    ASSERT_EQ(luc_dataset_samples(data, samples.data(), samples.size(), nullptr), LUC_OK);
    std::vector<double> coeffs(3), back(24);
    ASSERT_EQ(luc_pod_encode(pod, samples.data(), 24, coeffs.data(), coeffs.size()), LUC_OK);
    ASSERT_EQ(luc_pod_decode(pod, coeffs.data(), 3, back.data(), back.size()), LUC_OK);
    for (std::size_t k = 0; k < 24; ++k) EXPECT_NEAR(back[k], samples[k], 1e-10);
    // Undersized exact-size output is an error.
    EXPECT_EQ(luc_pod_decode(pod, coeffs.data(), 3, back.data(), 5), LUC_ERR_INVALID_ARGUMENT);
}

TEST_F(Fixture, PodSaveLoadKeepsSpectrum)
{
    const std::string path = temp_file("pod.json");
    ASSERT_EQ(luc_pod_save(pod, path.c_str(), "{\"note\":\"capi\"}"), LUC_OK);
    luc_pod* loaded = nullptr;
    ASSERT_EQ(luc_pod_load(path.c_str(), &loaded), LUC_OK);
    std::vector<double> a(24), b(24);
    std::size_t na = 0, nb = 0;
    ASSERT_EQ(luc_pod_spectrum(pod, a.data(), a.size(), &na), LUC_OK);
    ASSERT_EQ(luc_pod_spectrum(loaded, b.data(), b.size(), &nb), LUC_OK);
    ASSERT_EQ(na, nb);
    for (std::size_t k = 0; k < na; ++k) EXPECT_EQ(a[k], b[k]);
    luc_pod_destroy(loaded);
}

TEST_F(Fixture, DatasetSaveLoadRoundTrip)
{
    const std::string path = temp_file("data.json");
    ASSERT_EQ(luc_dataset_save(data, path.c_str(), nullptr), LUC_OK);
    luc_dataset* loaded = nullptr;
    ASSERT_EQ(luc_dataset_load(path.c_str(), &loaded), LUC_OK);
    std::vector<double> a(50 * 24), b(50 * 24);
    ASSERT_EQ(luc_dataset_samples(data, a.data(), a.size(), nullptr), LUC_OK);
    ASSERT_EQ(luc_dataset_samples(loaded, b.data(), b.size(), nullptr), LUC_OK);
    EXPECT_EQ(a, b);
    luc_dataset_destroy(loaded);
}

TEST_F(Fixture, LinearSolveRecoversBasisCoefficients)
{
    luc_basis* basis = nullptr;
    ASSERT_EQ(luc_basis_build(mesh, pod, 0.0, 0.0, 0.3, 10.0, &basis), LUC_OK);
    ASSERT_EQ(luc_basis_size(basis), 3u);
    const std::vector<double> c{0.7, -0.4, 0.2};
    std::vector<double> field(luc_mesh_num_nodes(mesh));
    ASSERT_EQ(luc_basis_field(basis, c.data(), c.size(), field.data(), field.size()), LUC_OK);
    luc_observation* obs = nullptr;
    ASSERT_EQ(luc_observation_create(mesh, 0.0, 0.0, 0.3, field.data(), field.size(), 0.0, 1, "test", &obs), LUC_OK);
    EXPECT_GT(luc_observation_size(obs), 0u);

    luc_result* plain = nullptr;
    ASSERT_EQ(luc_solve_linear(basis, mesh, obs, 0, &plain), LUC_OK);
    std::vector<double> got(3);
    ASSERT_EQ(luc_result_coefficients(plain, got.data(), got.size(), nullptr), LUC_OK);
    for (std::size_t k = 0; k < 3; ++k) EXPECT_NEAR(got[k], c[k], 1e-8);

    double lo = 0.0, ls = 0.0;
    ASSERT_EQ(luc_basis_rayleigh_min(basis, 0, &lo), LUC_OK);
    ASSERT_EQ(luc_basis_rayleigh_min(basis, 1, &ls), LUC_OK);
    EXPECT_GE(ls, lo);

    luc_result* stab = nullptr;
    ASSERT_EQ(luc_solve_linear(basis, mesh, obs, 1, &stab), LUC_OK);
    std::size_t n = 0;
    ASSERT_EQ(luc_result_loss_trace(stab, nullptr, 0, &n), LUC_OK);
    EXPECT_EQ(n, 1u);

    const std::string path = temp_file("linear.json");
    EXPECT_EQ(luc_result_save(stab, path.c_str(), nullptr), LUC_OK);
    luc_result_destroy(stab);
    luc_result_destroy(plain);
    luc_observation_destroy(obs);
    luc_basis_destroy(basis);
}

TEST_F(Fixture, RayleighStudyRows)
{
    luc_basis* basis = nullptr;
    ASSERT_EQ(luc_basis_build(mesh, pod, 0.0, 0.0, 0.3, 10.0, &basis), LUC_OK);
    std::size_t count = 0;
    ASSERT_EQ(luc_rayleigh_study(basis, nullptr, 0, &count), LUC_OK);
    ASSERT_EQ(count, 3u);
    std::vector<luc_rayleigh_row> rows(count);
    ASSERT_EQ(luc_rayleigh_study(basis, rows.data(), rows.size(), nullptr), LUC_OK);
    for (std::size_t k = 0; k < count; ++k) {
        EXPECT_EQ(rows[k].n_modes, k + 1);
        EXPECT_GE(rows[k].lambda_mh, rows[k].lambda_omega);
    }
    luc_basis_destroy(basis);
}

TEST_F(Fixture, OperatorTrainingAndLatentSolve)
{
    luc_train_config cfg = luc_train_config_default();
    cfg.iterations = 200;
    cfg.batch_size = 4;
    cfg.lr_initial = 1e-3;
    cfg.seed = 3;
    std::size_t calls = 0;
    cfg.log_every = 50;
    auto progress = [](std::size_t, double loss, void* user) {
        EXPECT_TRUE(std::isfinite(loss));
        ++*static_cast<std::size_t*>(user);
    };
    luc_mlp* net = nullptr;
    ASSERT_EQ(luc_operator_train(mesh, pod, 8, &cfg, progress, &calls, &net), LUC_OK);
    EXPECT_EQ(calls, 4u);
    EXPECT_EQ(luc_mlp_input_dim(net), 3u);
    EXPECT_EQ(luc_mlp_output_dim(net), luc_mesh_num_interior_nodes(mesh));

    double e0 = -1.0;
    ASSERT_EQ(luc_operator_zero_energy(net, mesh, pod, &e0), LUC_OK);
    EXPECT_GE(e0, 0.0);

    const std::string path = temp_file("net.json");
    ASSERT_EQ(luc_mlp_save(net, path.c_str(), 6, nullptr), LUC_OK);
    luc_mlp* loaded = nullptr;
    std::size_t mesh_n = 0;
    ASSERT_EQ(luc_mlp_load(path.c_str(), &loaded, &mesh_n), LUC_OK);
    EXPECT_EQ(mesh_n, 6u);
    EXPECT_EQ(luc_mlp_num_params(loaded), luc_mlp_num_params(net));

    // Noiseless observation of field(z*) started at z* returns z*.
    const std::vector<double> z{0.2, -0.1, 0.3};
    std::vector<double> field(luc_mesh_num_nodes(mesh));
    ASSERT_EQ(luc_latent_field(loaded, nullptr, pod, mesh, z.data(), z.size(), field.data(), field.size()), LUC_OK);
    luc_observation* obs = nullptr;
    ASSERT_EQ(luc_observation_create(mesh, 0.0, 0.0, 0.3, field.data(), field.size(), 0.0, 1, "", &obs), LUC_OK);
    luc_latent_options opt = luc_latent_options_default();
    EXPECT_DOUBLE_EQ(opt.lr, 1e-2);
    EXPECT_EQ(opt.iterations, 2000u);
    opt.iterations = 20;
    luc_result* r = nullptr;
    ASSERT_EQ(luc_solve_latent(loaded, nullptr, pod, mesh, obs, z.data(), z.size(), &opt, &r), LUC_OK);
    std::vector<double> got(3);
    ASSERT_EQ(luc_result_coefficients(r, got.data(), got.size(), nullptr), LUC_OK);
    EXPECT_EQ(got, z);
    EXPECT_EQ(luc_result_final_objective(r), 0.0);

    // Wrong start-point length is rejected.
    luc_result* bad = nullptr;
    EXPECT_EQ(luc_solve_latent(loaded, nullptr, pod, mesh, obs, z.data(), 2, &opt, &bad), LUC_ERR_INVALID_ARGUMENT);

    luc_result_destroy(r);
    luc_observation_destroy(obs);
    luc_mlp_destroy(loaded);
    luc_mlp_destroy(net);
}

TEST_F(Fixture, AutoencoderTrainEncodeDecode)
{
    luc_dataset* coeffs = nullptr;
    ASSERT_EQ(luc_dataset_parametric("gaussian-2-5", 64, 5, &coeffs), LUC_OK);
    EXPECT_EQ(luc_dataset_cols(coeffs), 10u);
    luc_train_config cfg = luc_train_config_default();
    cfg.iterations = 100;
    cfg.batch_size = 8;
    cfg.lr_initial = 1e-3;
    luc_autoencoder* ae = nullptr;
    double mse = -1.0;
    ASSERT_EQ(luc_autoencoder_train(coeffs, 2, 8, &cfg, nullptr, nullptr, &ae, &mse), LUC_OK);
    EXPECT_GE(mse, 0.0);
    double again = -1.0;
    ASSERT_EQ(luc_autoencoder_mse(ae, coeffs, &again), LUC_OK);
    EXPECT_DOUBLE_EQ(mse, again);
    EXPECT_EQ(luc_autoencoder_latent_dim(ae), 2u);
    EXPECT_EQ(luc_autoencoder_data_dim(ae), 10u);
    std::vector<double> a(10, 0.5), z(2), back(10);
    ASSERT_EQ(luc_autoencoder_encode(ae, a.data(), a.size(), z.data(), z.size()), LUC_OK);
    ASSERT_EQ(luc_autoencoder_decode(ae, z.data(), z.size(), back.data(), back.size()), LUC_OK);
    EXPECT_EQ(luc_autoencoder_encode(ae, a.data(), 9, z.data(), z.size()), LUC_ERR_INVALID_ARGUMENT);
    luc_autoencoder_destroy(ae);
    luc_dataset_destroy(coeffs);
}

TEST(CApi, UnknownParametricCase)
{
    luc_dataset* d = nullptr;
    EXPECT_EQ(luc_dataset_parametric("gaussian-9-9", 10, 1, &d), LUC_ERR_INVALID_ARGUMENT);
}

TEST(CApi, ConvergenceStudyFillsRows)
{
    const std::size_t meshes[] = {4, 8};
    luc_convergence_row rows[2];
    luc_slopes slopes{};
    ASSERT_EQ(luc_convergence_study(3, meshes, 2, 16, 0.0, 0.0, 0.3, 10.0, nullptr, 0, rows, &slopes), LUC_OK);
    EXPECT_EQ(rows[0].mesh_n, 4u);
    EXPECT_DOUBLE_EQ(rows[1].h, 0.125);
    EXPECT_GT(rows[0].h1_error, 0.0);
    EXPECT_TRUE(std::isfinite(slopes.h1));
}

TEST(CApi, NonlinearEnergyOfLinearField)
{
    luc_mesh* m = nullptr;
    ASSERT_EQ(luc_mesh_create(4, &m), LUC_OK);
    std::vector<double> xy(2 * luc_mesh_num_nodes(m));
    ASSERT_EQ(luc_mesh_node_coords(m, xy.data(), xy.size(), nullptr), LUC_OK);
    std::vector<double> v(luc_mesh_num_nodes(m));
    for (std::size_t k = 0; k < v.size(); ++k) v[k] = xy[2 * k];
    double e = 0.0;
    ASSERT_EQ(luc_nonlinear_energy(m, v.data(), v.size(), &e), LUC_OK);
    // ∫ ½(1 + x²) over the unit square centred at the origin.
    EXPECT_NEAR(e, 13.0 / 24.0, 1e-12);
    luc_mesh_destroy(m);
}
