// SPDX-License-Identifier: Apache-2.0

#include "luc/mesh.hpp"

#include "luc/error.hpp"

#include <algorithm>
#include <cmath>
#include <map>
#include <numeric>

namespace luc {

double square_arclength(Point p)
{
    constexpr double half = 0.5;
    const double tol = 1e-12;
    if (std::abs(p.x - half) <= tol && p.y >= -tol) return std::max(p.y, 0.0);  // right edge, upper half
    if (std::abs(p.y - half) <= tol) return 0.5 + (half - p.x);                 // top
    if (std::abs(p.x + half) <= tol) return 1.5 + (half - p.y);                 // left
    if (std::abs(p.y + half) <= tol) return 2.5 + (p.x + half);                 // bottom
    if (std::abs(p.x - half) <= tol) return 3.5 + (p.y + half);                 // right edge, lower half
    throw InvalidArgument("square_arclength: point is not on the boundary");
}

Mesh::Mesh(std::size_t n) : n_(n)
{
    LUC_REQUIRE(n >= 2, "Mesh: at least 2 cells per side are required");
    const double h = 1.0 / static_cast<double>(n);
    nodes_.reserve((n + 1) * (n + 1));
    for (std::size_t j = 0; j <= n; ++j)
        for (std::size_t i = 0; i <= n; ++i)
            nodes_.push_back({-0.5 + static_cast<double>(i) * h, -0.5 + static_cast<double>(j) * h});

    triangles_.reserve(2 * n * n);
    for (std::size_t j = 0; j < n; ++j) {
        for (std::size_t i = 0; i < n; ++i) {
            const std::size_t ll = node_index(i, j);
            const std::size_t lr = node_index(i + 1, j);
            const std::size_t ur = node_index(i + 1, j + 1);
            const std::size_t ul = node_index(i, j + 1);
            triangles_.push_back({ll, lr, ur});
            triangles_.push_back({ll, ur, ul});
        }
    }

    // Edge → adjacent triangles.
    std::map<std::pair<std::size_t, std::size_t>, std::vector<std::size_t>> edges;
    for (std::size_t t = 0; t < triangles_.size(); ++t) {
        const auto& tri = triangles_[t];
        for (int e = 0; e < 3; ++e) {
            std::size_t a = tri[e];
            std::size_t b = tri[(e + 1) % 3];
            if (a > b) std::swap(a, b);
            edges[{a, b}].push_back(t);
        }
    }

    boundary_position_.assign(nodes_.size(), -1);
    std::vector<std::pair<double, std::size_t>> boundary;
    for (std::size_t k = 0; k < nodes_.size(); ++k) {
        const Point p = nodes_[k];
        if (std::abs(std::abs(p.x) - 0.5) < 1e-12 || std::abs(std::abs(p.y) - 0.5) < 1e-12)
            boundary.emplace_back(square_arclength(p), k);
        else
            interior_nodes_.push_back(k);
    }
    std::sort(boundary.begin(), boundary.end());
    for (std::size_t k = 0; k < boundary.size(); ++k) {
        boundary_nodes_.push_back(boundary[k].second);
        boundary_arclength_.push_back(boundary[k].first);
        boundary_position_[boundary[k].second] = static_cast<long>(k);
    }

    for (const auto& [key, tris] : edges) {
        if (tris.size() == 2) interior_faces_.push_back({{key.first, key.second}, tris[0], tris[1]});
    }

    // Boundary edges between consecutive boundary nodes, in arc-length order.
    const std::size_t nb = boundary_nodes_.size();
    for (std::size_t k = 0; k < nb; ++k) {
        const std::size_t a = boundary_nodes_[k];
        const std::size_t b = boundary_nodes_[(k + 1) % nb];
        const auto it = edges.find({std::min(a, b), std::max(a, b)});
        if (it == edges.end() || it->second.size() != 1)
            throw NumericalFailure("Mesh: inconsistent boundary topology");
        const Point pa = nodes_[a];
        const Point pb = nodes_[b];
        const double len = std::hypot(pb.x - pa.x, pb.y - pa.y);
        // Counter-clockwise traversal: the outward normal is the tangent rotated clockwise.
        const Point normal{(pb.y - pa.y) / len, -(pb.x - pa.x) / len};
        boundary_edges_.push_back({{a, b}, it->second.front(), normal, len});
    }
}

double Mesh::area(std::size_t t) const
{
    const auto& tri = triangles_[t];
    const Point a = nodes_[tri[0]];
    const Point b = nodes_[tri[1]];
    const Point c = nodes_[tri[2]];
    return 0.5 * ((b.x - a.x) * (c.y - a.y) - (c.x - a.x) * (b.y - a.y));
}

std::array<Point, 3> Mesh::hat_gradients(std::size_t t) const
{
    const auto& tri = triangles_[t];
    const Point p0 = nodes_[tri[0]];
    const Point p1 = nodes_[tri[1]];
    const Point p2 = nodes_[tri[2]];
    const double two_area = (p1.x - p0.x) * (p2.y - p0.y) - (p2.x - p0.x) * (p1.y - p0.y);
    return {{{(p1.y - p2.y) / two_area, (p2.x - p1.x) / two_area},
             {(p2.y - p0.y) / two_area, (p0.x - p2.x) / two_area},
             {(p0.y - p1.y) / two_area, (p1.x - p0.x) / two_area}}};
}

std::size_t Mesh::locate(Point p, std::array<double, 3>& barycentric) const
{
    const double n = static_cast<double>(n_);
    const double sx = std::clamp((p.x + 0.5) * n, 0.0, n);
    const double sy = std::clamp((p.y + 0.5) * n, 0.0, n);
    const auto i = std::min(static_cast<std::size_t>(sx), n_ - 1);
    const auto j = std::min(static_cast<std::size_t>(sy), n_ - 1);
    const double fx = sx - static_cast<double>(i);
    const double fy = sy - static_cast<double>(j);
    const std::size_t cell = 2 * (j * n_ + i);
    // Lower triangle (ll, lr, ur) holds fy ≤ fx.
    if (fy <= fx) {
        barycentric = {1.0 - fx, fx - fy, fy};
        return cell;
    }
    barycentric = {1.0 - fy, fx, fy - fx};
    return cell + 1;
}

std::vector<std::size_t> subdomain_elements(const Mesh& mesh, const Disc& omega)
{
    LUC_REQUIRE(omega.radius > 0.0, "subdomain_elements: radius must be positive");
    std::vector<std::size_t> out;
    const double r2 = omega.radius * omega.radius;
    for (std::size_t t = 0; t < mesh.num_triangles(); ++t) {
        bool inside = true;
        for (std::size_t v : mesh.triangles()[t]) {
            const Point p = mesh.nodes()[v];
            const double dx = p.x - omega.center.x;
            const double dy = p.y - omega.center.y;
            if (dx * dx + dy * dy > r2 * (1.0 + 1e-12)) {
                inside = false;
                break;
            }
        }
        if (inside) out.push_back(t);
    }
    if (out.empty()) throw InvalidArgument("subdomain_elements: the disc contains no complete triangle");
    return out;
}

std::vector<std::size_t> element_nodes(const Mesh& mesh, const std::vector<std::size_t>& elements)
{
    std::vector<std::size_t> nodes;
    for (std::size_t t : elements)
        for (std::size_t v : mesh.triangles()[t]) nodes.push_back(v);
    std::sort(nodes.begin(), nodes.end());
    nodes.erase(std::unique(nodes.begin(), nodes.end()), nodes.end());
    return nodes;
}

} // namespace luc
