// SPDX-License-Identifier: Apache-2.0

#include "luc/datagen.hpp"
#include "luc/error.hpp"
#include "luc/inverse.hpp"
#include "test_util.hpp"

#include <gtest/gtest.h>

#include <cmath>

using namespace luc;
using luc::test::max_abs_diff;
using luc::test::rel_mismatch;

namespace {

const Disc kOmega{{0.0, 0.0}, 0.3};

double omega_area(const Mesh& m, const Disc& d)
{
    double a = 0.0;
    for (auto t : subdomain_elements(m, d)) a += m.area(t);
    return a;
}

DenseMatrix linear_modes(const Mesh& m)
{
    DenseMatrix g(m.boundary_nodes().size(), 3);
    for (std::size_t k = 0; k < m.boundary_nodes().size(); ++k) {
        const Point p = m.nodes()[m.boundary_nodes()[k]];
        g(k, 0) = 1.0;
        g(k, 1) = p.x;
        g(k, 2) = p.y;
    }
    return g;
}

double min_eig(const DenseMatrix& a) { return symmetric_eig(a).values.back(); }

Mlp random_net(std::vector<std::size_t> dims, std::uint64_t seed, double scale)
{
    Mlp net = mlp_init(std::move(dims), seed);
    Rng rng(seed, 5);
    for (double& p : net.params()) p = scale * rng.uniform(-1.0, 1.0);
    return net;
}

} // namespace

TEST(ReducedBasis, ConstantMode)
{
    const Mesh m(10);
    const ReducedBasis b = build_reduced_basis(m, DenseMatrix(m.boundary_nodes().size(), 1, 1.0), kOmega);
    ASSERT_EQ(b.size(), 1u);
    for (double v : b.fields[0].dofs) EXPECT_NEAR(v, 1.0, 1e-10);
    EXPECT_NEAR(b.gram_jump(0, 0), 0.0, 1e-12);
    EXPECT_NEAR(b.gram_boundary(0, 0), 0.0, 1e-12);
    const double area = omega_area(m, kOmega);
    EXPECT_NEAR(b.gram_mh(0, 0), area, 1e-10);
    EXPECT_NEAR(rayleigh_min(b, false), area, 1e-10);
}

TEST(ReducedBasis, LinearModesHaveNoStabilization)
{
    const Mesh m(8);
    const ReducedBasis b = build_reduced_basis(m, linear_modes(m), kOmega);
    for (std::size_t i = 0; i < 3; ++i)
        for (std::size_t j = 0; j < 3; ++j) EXPECT_NEAR(b.gram_mh(i, j), b.gram_omega(i, j), 1e-9);
}

TEST(ReducedBasis, FourierBasisIsPositiveDefinite)
{
    const Mesh m(10);
    const PodBasis pod = fit_pod(sample_fourier_dataset(m, 9, 300, 42));
    const ReducedBasis b = build_reduced_basis(m, pod, kOmega, 10.0, 3);
    EXPECT_GT(rayleigh_min(b, true), 0.0);
    DenseMatrix diff = b.gram_mh;
    for (std::size_t i = 0; i < b.size(); ++i)
        for (std::size_t j = 0; j < b.size(); ++j) {
            diff(i, j) -= b.gram_omega(i, j);
            EXPECT_NEAR(b.gram_mh(i, j), b.gram_mh(j, i), 1e-14);
        }
    EXPECT_GE(min_eig(diff), -1e-10);
    EXPECT_GE(rayleigh_min(b, true), rayleigh_min(b, false));
    // Threaded construction is identical.
    const ReducedBasis serial = build_reduced_basis(m, pod, kOmega, 10.0, 1);
    for (std::size_t k = 0; k < b.gram_mh.values().size(); ++k) EXPECT_EQ(serial.gram_mh.values()[k], b.gram_mh.values()[k]);
}

TEST(ReducedBasis, RejectsForeignPod)
{
    const Mesh m(6);
    const PodBasis pod = fit_pod(sample_fourier_dataset(Mesh(5), 5, 30, 1));
    EXPECT_THROW(build_reduced_basis(m, pod, kOmega), InvalidArgument);
}

TEST(StabilizedProjection, RecoversLinearModes)
{
    const Mesh m(8);
    const ReducedBasis b = build_reduced_basis(m, linear_modes(m), kOmega);
    for (std::size_t k = 0; k < 3; ++k) {
        const Observation obs = make_observation(m, kOmega, b.fields[k].dofs, 0.0, 0);
        const InverseResult r = stabilized_projection(b, m, obs);
        for (std::size_t j = 0; j < 3; ++j) EXPECT_NEAR(r.coefficients[j], j == k ? 1.0 : 0.0, 1e-8);
        EXPECT_EQ(r.loss_trace.size(), 1u);
    }
}

TEST(StabilizedProjection, ZeroObservation)
{
    const Mesh m(8);
    const PodBasis pod = fit_pod(sample_fourier_dataset(m, 5, 100, 2));
    const ReducedBasis b = build_reduced_basis(m, pod, kOmega);
    const Observation obs = make_observation(m, kOmega, Vector(m.num_nodes(), 0.0), 0.0, 0);
    for (bool stab : {true, false}) {
        const InverseResult r = linear_superposition_solve(b, m, obs, stab);
        for (double c : r.coefficients) EXPECT_EQ(c, 0.0);
    }
}

TEST(StabilizedProjection, IsAProjection)
{
    const Mesh m(10);
    const PodBasis pod = fit_pod(sample_fourier_dataset(m, 9, 200, 5));
    const ReducedBasis b = build_reduced_basis(m, pod, kOmega);
    Vector target(m.num_nodes());
    for (std::size_t k = 0; k < m.num_nodes(); ++k) target[k] = std::sin(3.0 * m.nodes()[k].x) + m.nodes()[k].y;
    const InverseResult first = stabilized_projection(b, m, make_observation(m, kOmega, target, 0.0, 0));
    const InverseResult second = stabilized_projection(b, m, make_observation(m, kOmega, first.field.dofs, 0.0, 0));
    // Applying it to its own output changes û only by the stabilization bias.
    const InverseResult third = stabilized_projection(b, m, make_observation(m, kOmega, second.field.dofs, 0.0, 0));
    Vector d12 = second.coefficients, d23 = third.coefficients;
    axpy(-1.0, first.coefficients, d12);
    axpy(-1.0, second.coefficients, d23);
    EXPECT_LE(norm2(d23), norm2(d12) + 1e-12);

    // With linear modes the stabilizers vanish, so it is an exact projection.
    const ReducedBasis lin = build_reduced_basis(m, linear_modes(m), kOmega);
    const InverseResult p1 = stabilized_projection(lin, m, make_observation(m, kOmega, target, 0.0, 0));
    const InverseResult p2 = stabilized_projection(lin, m, make_observation(m, kOmega, p1.field.dofs, 0.0, 0));
    EXPECT_LT(max_abs_diff(p1.coefficients, p2.coefficients), 1e-10);
}

TEST(LinearSuperposition, FlagsAgreeWhenStabilizersVanish)
{
    const Mesh m(8);
    const ReducedBasis b = build_reduced_basis(m, linear_modes(m), kOmega);
    Vector target(m.num_nodes());
    for (std::size_t k = 0; k < m.num_nodes(); ++k) target[k] = std::exp(m.nodes()[k].x) * std::cos(m.nodes()[k].y);
    const Observation obs = make_observation(m, kOmega, target, 0.0, 0);
    const InverseResult s = linear_superposition_solve(b, m, obs, true);
    const InverseResult u = linear_superposition_solve(b, m, obs, false);
    EXPECT_LT(max_abs_diff(s.coefficients, u.coefficients), 1e-6);
}

TEST(LinearSuperposition, StabilizationDampsNoise)
{
    const Mesh m(10);
    const PodBasis pod = fit_pod(sample_fourier_dataset(m, 9, 300, 42));
    const ReducedBasis b = build_reduced_basis(m, pod, kOmega);
    EXPECT_GT(rayleigh_min(b, true), rayleigh_min(b, false));
    Vector truth(9, 0.0);
    truth[0] = 1.0;
    truth[3] = -0.5;
    Field u = b.fields[0];
    for (double& v : u.dofs) v = 0.0;
    for (std::size_t n = 0; n < 9; ++n) axpy(truth[n], b.fields[n].dofs, u.dofs);
    const Observation obs = make_observation(m, kOmega, u.dofs, 0.05, 12);
    Vector es = linear_superposition_solve(b, m, obs, true).coefficients;
    Vector eu = linear_superposition_solve(b, m, obs, false).coefficients;
    axpy(-1.0, truth, es);
    axpy(-1.0, truth, eu);
    EXPECT_LT(norm2(es), norm2(eu));
}

TEST(Rayleigh, NestedFourierBasesLoseStability)
{
    const Mesh m(10);
    const ReducedBasis b = build_reduced_basis(m, fourier_boundary_modes(m, 9), kOmega);
    const auto rows = rayleigh_study(b);
    ASSERT_EQ(rows.size(), 9u);
    // The sin/cos pair of one frequency is symmetric on the centred disc, so
    // λ_min may stay flat when the partner enters; over a full pair it drops.
    for (std::size_t k = 2; k < rows.size(); k += 2) EXPECT_LT(rows[k].lambda_omega, rows[k - 2].lambda_omega);
    for (std::size_t k = 1; k < rows.size(); ++k) {
        EXPECT_LE(rows[k].lambda_omega, rows[k - 1].lambda_omega * (1.0 + 1e-12));
        EXPECT_GE(rows[k].lambda_mh, rows[k].lambda_omega);
    }
    EXPECT_NEAR(rows[0].lambda_omega, omega_area(m, kOmega), 1e-10);
    const ReducedBasis sub = leading_sub_basis(b, 4);
    EXPECT_NEAR(rayleigh_min(sub, false), rows[3].lambda_omega, 1e-15);
}

TEST(DiscStability, ClosedForms)
{
    EXPECT_NEAR(disc_stability_constant(0, 0.25), 4.0, 1e-14);
    EXPECT_NEAR(disc_stability_constant(3, 0.5), 16.0, 1e-12);
    for (std::size_t n : {0u, 5u, 20u}) EXPECT_NEAR(disc_stability_constant(n, 1.0), 1.0, 1e-15);
    for (std::size_t n = 0; n <= 20; ++n)
        for (double r : {0.3, 0.5, 0.8}) EXPECT_NEAR(disc_stability_constant(n, r) * std::pow(r, n + 1.0), 1.0, 1e-12);
    EXPECT_THROW(disc_stability_constant(2, 0.0), InvalidArgument);
    EXPECT_THROW(disc_stability_constant(2, 1.5), InvalidArgument);
}

TEST(DiscStability, MatchesNumericalQuadrature)
{
    // Midpoint rule in r and θ for ‖rⁿcos(nθ)‖ over the two discs.
    auto l2sq = [](std::size_t n, double radius) {
        const int nr = 2000, nt = 256;
        double s = 0.0;
        for (int i = 0; i < nr; ++i) {
            const double r = (i + 0.5) * radius / nr;
            for (int j = 0; j < nt; ++j) {
                const double t = (j + 0.5) * 2.0 * M_PI / nt;
                const double v = std::pow(r, static_cast<double>(n)) * std::cos(static_cast<double>(n) * t);
                s += v * v * r;
            }
        }
        return s * (radius / nr) * (2.0 * M_PI / nt);
    };
    for (std::size_t n : {1u, 4u}) {
        const double ratio = std::sqrt(l2sq(n, 1.0) / l2sq(n, 0.5));
        EXPECT_NEAR(ratio / disc_stability_constant(n, 0.5), 1.0, 1e-4);
    }
}

TEST(LatentSolve, ObjectiveGradientMatchesFiniteDifferences)
{
    const Mesh m(4);
    const PodBasis pod = fit_pod(sample_fourier_dataset(m, 5, 40, 3));
    const Mlp net = random_net(operator_layer_dims(m, pod, 8), 1, 0.3);
    const Mlp dec = random_net({2, 6, 5}, 2, 0.5);
    const Disc omega{{0.0, 0.0}, 0.4};
    Vector target(m.num_nodes());
    for (std::size_t k = 0; k < target.size(); ++k) target[k] = m.nodes()[k].x * m.nodes()[k].y;
    const Observation obs = make_observation(m, omega, target, 0.0, 0);
    for (const Mlp* d : {static_cast<const Mlp*>(nullptr), &dec})
        for (auto norm : {ObjectiveNorm::l2, ObjectiveNorm::h1}) {
            Vector z = d ? Vector{0.3, -0.2} : Vector{0.1, -0.3, 0.2, 0.05, -0.1};
            Vector g(z.size());
            latent_objective(net, d, pod, m, obs, z, norm, g);
            const double h = 1e-6;
            for (std::size_t k = 0; k < z.size(); ++k) {
                const double keep = z[k];
                z[k] = keep + h;
                const double fp = latent_objective(net, d, pod, m, obs, z, norm, {});
                z[k] = keep - h;
                const double fm = latent_objective(net, d, pod, m, obs, z, norm, {});
                z[k] = keep;
                EXPECT_LT(rel_mismatch(g[k], (fp - fm) / (2 * h), 1e-8), 1e-6);
            }
        }
}

TEST(LatentSolve, StartingAtTheTruthStaysThere)
{
    const Mesh m(5);
    const PodBasis pod = fit_pod(sample_fourier_dataset(m, 5, 40, 3));
    const Mlp net = random_net(operator_layer_dims(m, pod, 8), 3, 0.3);
    const Mlp dec = random_net({2, 6, 5}, 4, 0.5);
    const Vector z_star{0.4, -0.7};
    const Field truth = latent_field(net, &dec, pod, m, z_star);
    const Observation obs = make_observation(m, kOmega, truth.dofs, 0.0, 0);
    LatentOptions opt;
    opt.iterations = 50;
    const InverseResult r = latent_inverse_solve(net, &dec, pod, m, obs, z_star, opt);
    EXPECT_EQ(r.loss_trace.front(), 0.0);
    EXPECT_EQ(r.final_objective, 0.0);
    EXPECT_EQ(r.coefficients, z_star);
    EXPECT_EQ(r.loss_trace.size(), 51u);
}

TEST(LatentSolve, CoefficientModeReducesObjective)
{
    const Mesh m(5);
    const PodBasis pod = fit_pod(sample_fourier_dataset(m, 5, 40, 3));
    const Mlp net = random_net(operator_layer_dims(m, pod, 8), 5, 0.2);
    const Vector a_star{0.5, -0.3, 0.2, 0.1, -0.4};
    const Field truth = latent_field(net, nullptr, pod, m, a_star);
    const Observation obs = make_observation(m, {{0.0, 0.0}, 0.45}, truth.dofs, 0.0, 3);
    LatentOptions opt;
    opt.iterations = 1500;
    const InverseResult r = latent_inverse_solve(net, nullptr, pod, m, obs, Vector(5, 0.0), opt);
    EXPECT_LT(r.final_objective, 1e-2 * r.loss_trace.front());
    for (double l : r.loss_trace) EXPECT_GE(l, r.final_objective);
    EXPECT_THROW(latent_inverse_solve(net, nullptr, pod, m, obs, Vector(3, 0.0), opt), InvalidArgument);
}

TEST(Studies, LogLogSlope)
{
    const Vector h{0.1, 0.05, 0.025};
    const Vector e{0.3, 0.075, 0.01875};
    EXPECT_NEAR(loglog_slope(h, e), 2.0, 1e-12);
    EXPECT_THROW(loglog_slope(Vector{0.1}, Vector{0.1}), InvalidArgument);
}

TEST(Studies, SmallNitscheStudyConverges)
{
    const ConvergenceStudy s =
        nitsche_convergence_study([](Point p) { return p.x * p.x - p.y * p.y; }, {4, 8}, 32);
    ASSERT_EQ(s.rows.size(), 2u);
    EXPECT_GT(s.l2_slope, 1.5);
    EXPECT_GT(s.h1_semi_slope, 0.8);
}

TEST(Studies, FourierBoundaryModes)
{
    const Mesh m(4);
    const DenseMatrix g = fourier_boundary_modes(m, 4);
    EXPECT_EQ(g.cols(), 4u);
    for (std::size_t k = 0; k < g.rows(); ++k) {
        const double s = m.boundary_arclength()[k];
        EXPECT_DOUBLE_EQ(g(k, 0), 1.0);
        EXPECT_NEAR(g(k, 1), std::sin(M_PI * s / 2.0), 1e-15);
        EXPECT_NEAR(g(k, 2), std::cos(M_PI * s / 2.0), 1e-15);
        EXPECT_NEAR(g(k, 3), std::sin(M_PI * s), 1e-15);
    }
}

TEST(Files, ObservationRoundTrip)
{
    const Mesh m(6);
    Vector f(m.num_nodes());
    for (std::size_t k = 0; k < f.size(); ++k) f[k] = m.nodes()[k].x;
    const Observation obs = make_observation(m, kOmega, f, 0.05, 4, "unit");
    const std::string path = test::temp_path("obs.json");
    save_observation(obs, path);
    const Observation back = load_observation(path);
    EXPECT_EQ(back.nodes, obs.nodes);
    EXPECT_EQ(back.values, obs.values);
    EXPECT_EQ(back.noise_std, 0.05);
    EXPECT_EQ(back.provenance, "unit");
    EXPECT_EQ(back.omega.radius, kOmega.radius);

    InverseResult r;
    r.coefficients = {1.0, 2.0};
    r.field = zero_field(m);
    r.loss_trace = {3.0};
    save_inverse_result(r, test::temp_path("result.json"));
    EXPECT_THROW(load_observation(test::temp_path("result.json")), IoError);
}
