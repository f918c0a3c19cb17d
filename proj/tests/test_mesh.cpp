// SPDX-License-Identifier: Apache-2.0

#include "luc/error.hpp"
#include "luc/mesh.hpp"

#include <gtest/gtest.h>

#include <cmath>
#include <map>
#include <set>

using namespace luc;

namespace {

double signed_area(const Mesh& m, std::size_t t)
{
    const auto& tri = m.triangles()[t];
    const Point a = m.nodes()[tri[0]], b = m.nodes()[tri[1]], c = m.nodes()[tri[2]];
    return 0.5 * ((b.x - a.x) * (c.y - a.y) - (c.x - a.x) * (b.y - a.y));
}

std::size_t node_at(const Mesh& m, double x, double y)
{
    for (std::size_t k = 0; k < m.num_nodes(); ++k)
        if (std::abs(m.nodes()[k].x - x) < 1e-14 && std::abs(m.nodes()[k].y - y) < 1e-14) return k;
    return m.num_nodes();
}

} // namespace

TEST(Mesh, Counts)
{
    const Mesh m10(10);
    EXPECT_EQ(m10.num_nodes(), 121u);
    EXPECT_EQ(m10.num_triangles(), 200u);
    EXPECT_EQ(m10.interior_nodes().size(), 81u);
    EXPECT_EQ(Mesh(28).interior_nodes().size(), 729u);
    const Mesh m2(2);
    EXPECT_EQ(m2.num_nodes(), 9u);
    EXPECT_EQ(m2.num_triangles(), 8u);
    EXPECT_EQ(m2.interior_nodes().size(), 1u);
}

TEST(Mesh, RejectsTooCoarse)
{
    EXPECT_THROW(Mesh(1), InvalidArgument);
    EXPECT_THROW(Mesh(0), InvalidArgument);
}

TEST(Mesh, PositiveCongruentTrianglesCoveringTheSquare)
{
    const Mesh m(7);
    double total = 0.0;
    for (std::size_t t = 0; t < m.num_triangles(); ++t) {
        const double a = signed_area(m, t);
        EXPECT_GT(a, 0.0);
        EXPECT_NEAR(a, 0.5 / 49.0, 1e-15);
        EXPECT_NEAR(m.area(t), a, 1e-15);
        total += a;
    }
    EXPECT_NEAR(total, 1.0, 1e-14);
    double lo = 1.0, hi = -1.0;
    for (const auto& p : m.nodes()) {
        lo = std::min({lo, p.x, p.y});
        hi = std::max({hi, p.x, p.y});
    }
    EXPECT_DOUBLE_EQ(lo, -0.5);
    EXPECT_DOUBLE_EQ(hi, 0.5);
}

TEST(Mesh, DiagonalRunsLowerLeftToUpperRight)
{
    const Mesh m(3);
    // Every triangle contains the lower-left and upper-right corner of its cell.
    for (const auto& tri : m.triangles()) {
        double xmin = 1, ymin = 1, xmax = -1, ymax = -1;
        for (auto k : tri) {
            xmin = std::min(xmin, m.nodes()[k].x);
            ymin = std::min(ymin, m.nodes()[k].y);
            xmax = std::max(xmax, m.nodes()[k].x);
            ymax = std::max(ymax, m.nodes()[k].y);
        }
        EXPECT_LT(node_at(m, xmin, ymin), m.num_nodes());
        bool has_ll = false, has_ur = false;
        for (auto k : tri) {
            has_ll |= k == node_at(m, xmin, ymin);
            has_ur |= k == node_at(m, xmax, ymax);
        }
        EXPECT_TRUE(has_ll && has_ur);
    }
}

TEST(Mesh, InteriorFacesShareTwoTriangles)
{
    const Mesh m(5);
    // Euler: interior edges = 3·#triangles/2 − #boundary edges/2.
    EXPECT_EQ(m.interior_faces().size(), (3 * m.num_triangles() - m.boundary_edges().size()) / 2);
    for (const auto& f : m.interior_faces()) {
        ASSERT_NE(f.left, f.right);
        for (auto t : {f.left, f.right}) {
            const auto& tri = m.triangles()[t];
            std::set<std::size_t> s(tri.begin(), tri.end());
            EXPECT_TRUE(s.count(f.nodes[0]) && s.count(f.nodes[1]));
        }
    }
}

TEST(Mesh, BoundaryOrientationAndArclength)
{
    const Mesh m(10);
    const auto& bn = m.boundary_nodes();
    const auto& s = m.boundary_arclength();
    ASSERT_EQ(bn.size(), 40u);
    EXPECT_EQ(bn[0], node_at(m, 0.5, 0.0));
    for (std::size_t k = 1; k < s.size(); ++k) EXPECT_GT(s[k], s[k - 1]);
    std::map<std::size_t, double> by_node;
    for (std::size_t k = 0; k < bn.size(); ++k) by_node[bn[k]] = s[k];
    EXPECT_DOUBLE_EQ(by_node.at(node_at(m, 0.5, 0.0)), 0.0);
    EXPECT_DOUBLE_EQ(by_node.at(node_at(m, 0.5, 0.5)), 0.5);
    EXPECT_DOUBLE_EQ(by_node.at(node_at(m, -0.5, 0.0)), 2.0);
    EXPECT_DOUBLE_EQ(by_node.at(node_at(m, 0.5, -0.5)), 3.5);
    EXPECT_DOUBLE_EQ(square_arclength({0.0, 0.5}), 1.0);
    EXPECT_DOUBLE_EQ(square_arclength({0.0, -0.5}), 3.0);
    for (std::size_t k = 0; k < bn.size(); ++k) {
        EXPECT_TRUE(m.is_boundary(bn[k]));
        EXPECT_EQ(m.boundary_position(bn[k]), static_cast<long>(k));
    }
}

TEST(Mesh, BoundaryEdgesChainAndPointOutward)
{
    const Mesh m(4);
    const auto& bn = m.boundary_nodes();
    double perimeter = 0.0;
    for (std::size_t k = 0; k < m.boundary_edges().size(); ++k) {
        const auto& e = m.boundary_edges()[k];
        EXPECT_EQ(e.nodes[0], bn[k]);
        EXPECT_EQ(e.nodes[1], bn[(k + 1) % bn.size()]);
        const Point a = m.nodes()[e.nodes[0]];
        const Point mid{a.x + 0.5 * (m.nodes()[e.nodes[1]].x - a.x), a.y + 0.5 * (m.nodes()[e.nodes[1]].y - a.y)};
        EXPECT_GT(mid.x * e.normal.x + mid.y * e.normal.y, 0.0);
        perimeter += e.length;
    }
    EXPECT_NEAR(perimeter, 4.0, 1e-14);
}

TEST(Mesh, HatGradientsSumToZero)
{
    const Mesh m(3);
    for (std::size_t t = 0; t < m.num_triangles(); ++t) {
        const auto g = m.hat_gradients(t);
        EXPECT_NEAR(g[0].x + g[1].x + g[2].x, 0.0, 1e-13);
        EXPECT_NEAR(g[0].y + g[1].y + g[2].y, 0.0, 1e-13);
    }
}

TEST(Mesh, LocateReturnsBarycentricCoordinates)
{
    const Mesh m(6);
    const Point p{0.123, -0.321};
    std::array<double, 3> bary{};
    const auto t = m.locate(p, bary);
    const auto& tri = m.triangles()[t];
    double x = 0.0, y = 0.0;
    for (int i = 0; i < 3; ++i) {
        EXPECT_GE(bary[i], -1e-14);
        x += bary[i] * m.nodes()[tri[i]].x;
        y += bary[i] * m.nodes()[tri[i]].y;
    }
    EXPECT_NEAR(x, p.x, 1e-14);
    EXPECT_NEAR(y, p.y, 1e-14);
}

TEST(SubdomainElements, WholeDomain)
{
    const Mesh m(10);
    EXPECT_EQ(subdomain_elements(m, {{0.0, 0.0}, 1.0}).size(), 200u);
}

TEST(SubdomainElements, TooSmallIsAnError)
{
    const Mesh m(10);
    EXPECT_THROW(subdomain_elements(m, {{0.0, 0.0}, 0.05}), InvalidArgument);
    EXPECT_THROW(subdomain_elements(m, {{0.0, 0.0}, 0.0}), InvalidArgument);
}

TEST(SubdomainElements, MatchesBruteForce)
{
    const Mesh m(10);
    const Disc d{{0.0, 0.0}, 0.3};
    std::vector<std::size_t> expected;
    for (std::size_t t = 0; t < m.num_triangles(); ++t) {
        bool inside = true;
        for (auto k : m.triangles()[t]) {
            const Point p = m.nodes()[k];
            inside &= std::hypot(p.x, p.y) <= 0.3 + 1e-12;
        }
        if (inside) expected.push_back(t);
    }
    EXPECT_EQ(subdomain_elements(m, d), expected);
    const auto nodes = element_nodes(m, expected);
    EXPECT_TRUE(std::is_sorted(nodes.begin(), nodes.end()));
    EXPECT_EQ(std::set<std::size_t>(nodes.begin(), nodes.end()).size(), nodes.size());
}
