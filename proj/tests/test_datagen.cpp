// SPDX-License-Identifier: Apache-2.0

#include "luc/datagen.hpp"
#include "luc/error.hpp"
#include "luc/rng.hpp"
#include "test_util.hpp"

#include <gtest/gtest.h>

#include <cmath>
#include <filesystem>

using namespace luc;

namespace {

std::size_t count_above(const Vector& s, double threshold)
{
    std::size_t k = 0;
    for (double v : s) k += v > threshold ? 1 : 0;
    return k;
}

} // namespace

TEST(FourierBoundary, ConstantMode)
{
    const Mesh m(6);
    Vector c(9, 0.0);
    c[0] = 1.0;
    const Vector g = fourier_boundary(m, 9, c, Vector(9, 0.0));
    ASSERT_EQ(g.size(), m.boundary_nodes().size());
    for (double v : g) EXPECT_DOUBLE_EQ(v, 1.0);
}

TEST(FourierBoundary, FirstCosineMode)
{
    const Mesh m(4);
    Vector c(9, 0.0);
    c[2] = 1.0;
    const Vector g = fourier_boundary(m, 9, c, Vector(9, 0.0));
    const auto& s = m.boundary_arclength();
    for (std::size_t k = 0; k < s.size(); ++k) {
        if (s[k] == 0.0) EXPECT_DOUBLE_EQ(g[k], 1.0);
        if (s[k] == 1.0) EXPECT_NEAR(g[k], 0.0, 1e-15);
    }
}

TEST(FourierBoundary, NoiseAddsToCoefficients)
{
    const Mesh m(4);
    const Vector c{0.1, 0.2, 0.3}, d{0.05, -0.1, 0.2};
    const Vector sum{0.15, 0.1, 0.5};
    EXPECT_LT(test::max_abs_diff(fourier_boundary(m, 3, c, d), fourier_boundary(m, 3, sum, Vector(3, 0.0))), 1e-15);
}

TEST(FourierBoundary, EvenNRejected)
{
    const Mesh m(4);
    EXPECT_THROW(fourier_boundary(m, 8, Vector(8, 0.0), Vector(8, 0.0)), InvalidArgument);
    EXPECT_THROW(sample_fourier_dataset(m, 8, 3, 1), InvalidArgument);
}

TEST(FourierDataset, GoldenRowFromDocumentedStreams)
{
    // Row i draws ĝ ~ U(−1,1) then δ ~ N(0, 0.15²) from stream i + 1.
    const Mesh m(10);
    const Dataset d = sample_fourier_dataset(m, 9, 3, 42);
    for (std::size_t i = 0; i < 3; ++i) {
        Rng rng(42, i + 1);
        Vector c(9), e(9);
        for (double& v : c) v = -1.0 + 2.0 * rng.uniform();
        for (double& v : e) v = 0.15 * rng.normal();
        Vector expected(m.boundary_nodes().size());
        const auto& s = m.boundary_arclength();
        for (std::size_t k = 0; k < s.size(); ++k) {
            double g = c[0] + e[0];
            for (std::size_t n = 1; n <= 4; ++n) {
                const double arg = 2.0 * n * M_PI * s[k] / 4.0;
                g += (c[2 * n - 1] + e[2 * n - 1]) * std::sin(arg) + (c[2 * n] + e[2 * n]) * std::cos(arg);
            }
            expected[k] = g;
        }
        const auto row = d.samples.row(i);
        for (std::size_t k = 0; k < expected.size(); ++k) ASSERT_EQ(row[k], expected[k]);
    }
}

TEST(FourierDataset, ZeroDistributionGivesZeroRow)
{
    const Mesh m(5);
    const Dataset d = sample_fourier_dataset(m, 5, 1, 3, 0.0, 0.0);
    for (double v : d.samples.row(0)) EXPECT_EQ(v, 0.0);
}

TEST(FourierDataset, Deterministic)
{
    const Mesh m(6);
    const Dataset a = sample_fourier_dataset(m, 9, 50, 7);
    const Dataset b = sample_fourier_dataset(m, 9, 50, 7);
    const Dataset c = sample_fourier_dataset(m, 9, 50, 8);
    EXPECT_TRUE(std::equal(a.samples.values().begin(), a.samples.values().end(), b.samples.values().begin()));
    EXPECT_FALSE(std::equal(a.samples.values().begin(), a.samples.values().end(), c.samples.values().begin()));
}

TEST(FourierDataset, ExactRank)
{
    const Mesh m(10);
    const Dataset d = sample_fourier_dataset(m, 9, 1000, 42);
    const auto s = jacobi_svd(d.samples).singular_values;
    EXPECT_LT(s[9] / s[0], 1e-10);
    EXPECT_GT(s[8] / s[0], 1e-6);
}

TEST(PolynomialCoeffs, TrivialCases)
{
    DenseMatrix a(9, 3), b(9, 3);
    EXPECT_EQ(polynomial_coeffs(a, b, Vector(3, 0.0), Vector(9, 0.0)), Vector(9, 0.0));
    for (std::size_t i = 0; i < 3; ++i) b(i, i) = 1.0;
    const Vector out = polynomial_coeffs(a, b, Vector{1.0, 2.0, 3.0}, Vector(9, 0.0));
    EXPECT_EQ(out, (Vector{1.0, 4.0, 9.0, 0.0, 0.0, 0.0, 0.0, 0.0, 0.0}));
    EXPECT_THROW(polynomial_coeffs(a, b, Vector(2, 0.0), Vector(9, 0.0)), InvalidArgument);
}

TEST(PolynomialCoeffs, SeededCaseMatchesFormula)
{
    const ParametricSpec spec = parametric_case("polynomial-quadratic", 5);
    EXPECT_EQ(spec.num_coeffs, 9u);
    EXPECT_EQ(spec.n_x, 3u);
    for (double v : spec.a.values()) EXPECT_TRUE(v >= -1.0 && v < 1.0);
    const Dataset d = sample_parametric_dataset(spec, 4, 11);
    for (std::size_t i = 0; i < 4; ++i) {
        Rng rng(11, i + 1);
        double x[3], delta[9];
        for (double& v : x) v = -2.0 + 4.0 * rng.uniform();
        for (double& v : delta) v = rng.normal();
        for (std::size_t j = 0; j < 9; ++j) {
            double expected = delta[j];
            for (std::size_t k = 0; k < 3; ++k) expected += spec.a(j, k) * x[k] + spec.b(j, k) * x[k] * x[k];
            EXPECT_NEAR(d.samples(i, j), expected, 1e-14);
        }
    }
    const ParametricSpec linear = parametric_case("polynomial-linear", 5);
    for (double v : linear.b.values()) EXPECT_EQ(v, 0.0);
    EXPECT_EQ(std::vector<double>(linear.a.values().begin(), linear.a.values().end()),
              std::vector<double>(spec.a.values().begin(), spec.a.values().end()));
}

TEST(GaussianCoeffs, Evaluations)
{
    const Vector x0{0.0, 2.0, 4.0};
    const Vector peak = gaussian_coeffs(3, 3, 2.0, Vector{0.0, 2.0, 4.0}, x0, Vector(3, 0.0), 3);
    for (double v : peak) EXPECT_DOUBLE_EQ(v, 1.0);
    const Vector off = gaussian_coeffs(1, 1, 2.0, Vector{1.0}, Vector{0.0}, Vector(1, 0.0), 1);
    EXPECT_NEAR(off[0], std::exp(-2.0), 1e-15);
    EXPECT_NEAR(off[0], 0.1353, 1e-4);
    EXPECT_THROW(gaussian_coeffs(1, 1, 0.0, Vector{1.0}, Vector{0.0}, Vector(1, 0.0), 1), InvalidArgument);
}

TEST(GaussianCoeffs, IndexAssignment)
{
    // j = 4 with n_x = 3, L = 2: k = 1, l = 0.
    const Vector x{10.0, 0.5, 20.0};
    const Vector x0{0.0, 7.0};
    const Vector a = gaussian_coeffs(3, 2, 2.0, x, x0, Vector(6, 0.0), 6);
    EXPECT_NEAR(a[4], std::exp(-2.0 * 0.25), 1e-15);
}

TEST(ParametricCases, PaperGrids)
{
    const auto c25 = parametric_case("gaussian-2-5", 0);
    EXPECT_EQ(c25.x0, (Vector{0, 4, 8, 12, 16}));
    EXPECT_EQ(c25.x_lo, -2.0);
    EXPECT_EQ(c25.x_hi, 18.0);
    EXPECT_EQ(c25.num_coeffs, 10u);
    const auto c36 = parametric_case("gaussian-3-6", 0);
    EXPECT_EQ(c36.x0, (Vector{0, 2, 4, 6, 8, 10}));
    EXPECT_EQ(c36.x_hi, 12.0);
    const auto c37 = parametric_case("gaussian-3-7", 0);
    EXPECT_EQ(c37.x0.size(), 7u);
    EXPECT_EQ(c37.x_hi, 14.0);
    EXPECT_EQ(c37.num_coeffs, 21u);
    const auto c48 = parametric_case("gaussian-4-8", 0);
    EXPECT_EQ(c48.x0, (Vector{0, 2, 4, 6, 8, 10, 12, 14}));
    EXPECT_EQ(c48.x_lo, -2.0);
    EXPECT_EQ(c48.x_hi, 16.0);
    for (const auto* c : {&c25, &c36, &c37, &c48}) {
        EXPECT_EQ(c->gamma, 2.0);
        EXPECT_EQ(c->noise_std, 0.15);
    }
    EXPECT_THROW(parametric_case("gaussian-9-9", 0), InvalidArgument);
}

TEST(ParametricDataset, GaussianThreeSevenHasTwentyOneSignificantValues)
{
    const Dataset d = sample_parametric_dataset(parametric_case("gaussian-3-7", 0), 1000, 1);
    const auto s = jacobi_svd(d.samples).singular_values;
    // Every direction carries more than the pure-noise edge.
    const double floor = 0.15 * (std::sqrt(1000.0) + std::sqrt(21.0));
    EXPECT_EQ(count_above(s, floor), 21u);
}

TEST(ParametricDataset, CongruentColumnsAgreeUpToNoise)
{
    // (3, 6): columns j and j + 6 share (j mod 6, j mod 3).
    const ParametricSpec spec = parametric_case("gaussian-3-6", 0);
    const Dataset noiseless = [&] {
        ParametricSpec s = spec;
        s.noise_std = 0.0;
        return sample_parametric_dataset(s, 200, 4);
    }();
    for (std::size_t i = 0; i < 200; ++i)
        for (std::size_t j = 0; j + 6 < 18; ++j) ASSERT_EQ(noiseless.samples(i, j), noiseless.samples(i, j + 6));
}

TEST(Dataset, SaveLoadRoundTrip)
{
    const Mesh m(5);
    const Dataset d = sample_fourier_dataset(m, 5, 20, 9);
    const std::string path = test::temp_path("fourier.json");
    save_dataset(d, path, R"({"command":"test"})");
    EXPECT_TRUE(std::filesystem::exists(companion_csv_path(path)));
    const Dataset e = load_dataset(path);
    EXPECT_EQ(e.kind, d.kind);
    EXPECT_EQ(e.mesh_n, 5u);
    EXPECT_EQ(e.seed, 9u);
    ASSERT_EQ(e.samples.rows(), d.samples.rows());
    for (std::size_t k = 0; k < d.samples.values().size(); ++k) ASSERT_EQ(e.samples.values()[k], d.samples.values()[k]);

    const Dataset p = sample_parametric_dataset(parametric_case("polynomial-quadratic", 2), 10, 3);
    const std::string ppath = test::temp_path("poly.json");
    save_dataset(p, ppath);
    const Dataset q = load_dataset(ppath);
    ASSERT_TRUE(q.parametric.has_value());
    EXPECT_EQ(q.parametric->name, "polynomial-quadratic");
    for (std::size_t k = 0; k < p.parametric->b.values().size(); ++k)
        EXPECT_EQ(q.parametric->b.values()[k], p.parametric->b.values()[k]);
    EXPECT_THROW(load_dataset(test::temp_path("missing.json")), IoError);
}

TEST(DatasetKind, Names)
{
    for (auto k : {DatasetKind::fourier, DatasetKind::polynomial, DatasetKind::gaussian, DatasetKind::raw_coefficients})
        EXPECT_EQ(dataset_kind_from_string(to_string(k)), k);
    EXPECT_THROW(dataset_kind_from_string("bogus"), InvalidArgument);
}
