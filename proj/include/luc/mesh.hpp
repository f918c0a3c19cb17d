// SPDX-License-Identifier: Apache-2.0

#pragma once

#include <array>
#include <cstddef>
#include <vector>

namespace luc {

struct Point {
    double x = 0.0;
    double y = 0.0;
};

struct InteriorFace {
    std::array<std::size_t, 2> nodes;
    std::size_t left;  // triangle index
    std::size_t right; // triangle index
};

struct BoundaryEdge {
    std::array<std::size_t, 2> nodes; // counter-clockwise order
    std::size_t triangle;
    Point normal; // outward unit normal
    double length;
};

/// Disc-shaped observation region ω.
struct Disc {
    Point center;
    double radius = 0.0;
};

/// Structured uniform triangulation of [−½, ½]². Node (i, j) sits at
/// (−½ + i/n, −½ + j/n) with index j·(n+1) + i; every cell is split along
/// its lower-left to upper-right diagonal.
class Mesh {
public:
    explicit Mesh(std::size_t n_cells_per_side);

    std::size_t cells_per_side() const { return n_; }
    double h() const { return 1.0 / static_cast<double>(n_); }

    std::size_t num_nodes() const { return nodes_.size(); }
    std::size_t num_triangles() const { return triangles_.size(); }

    const std::vector<Point>& nodes() const { return nodes_; }
    const std::vector<std::array<std::size_t, 3>>& triangles() const { return triangles_; }
    const std::vector<InteriorFace>& interior_faces() const { return interior_faces_; }
    const std::vector<BoundaryEdge>& boundary_edges() const { return boundary_edges_; }

    /// Boundary nodes in counter-clockwise order starting at (½, 0).
    const std::vector<std::size_t>& boundary_nodes() const { return boundary_nodes_; }
    /// Arc length of each entry of boundary_nodes(), in [0, 4).
    const std::vector<double>& boundary_arclength() const { return boundary_arclength_; }
    /// Interior nodes in increasing index order.
    const std::vector<std::size_t>& interior_nodes() const { return interior_nodes_; }
    bool is_boundary(std::size_t node) const { return boundary_position_[node] >= 0; }
    /// Position of a node in boundary_nodes(), or −1.
    long boundary_position(std::size_t node) const { return boundary_position_[node]; }

    double area(std::size_t triangle) const;
    /// Constant gradients of the three P1 hat functions on a triangle.
    std::array<Point, 3> hat_gradients(std::size_t triangle) const;

    /// Triangle containing p (clamped to the square) and its barycentric coordinates.
    std::size_t locate(Point p, std::array<double, 3>& barycentric) const;

    /// Perimeter of the unit square.
    static constexpr double circumference = 4.0;

private:
    std::size_t node_index(std::size_t i, std::size_t j) const { return j * (n_ + 1) + i; }

    std::size_t n_;
    std::vector<Point> nodes_;
    std::vector<std::array<std::size_t, 3>> triangles_;
    std::vector<InteriorFace> interior_faces_;
    std::vector<BoundaryEdge> boundary_edges_;
    std::vector<std::size_t> boundary_nodes_;
    std::vector<double> boundary_arclength_;
    std::vector<std::size_t> interior_nodes_;
    std::vector<long> boundary_position_;
};

/// Counter-clockwise arc length along ∂[−½,½]² measured from (½, 0).
double square_arclength(Point p);

/// Triangles whose three vertices all lie inside the closed disc. Throws
/// InvalidArgument when the radius is not positive or nothing is selected.
std::vector<std::size_t> subdomain_elements(const Mesh& mesh, const Disc& omega);

/// Nodes touched by a triangle list, sorted and unique.
std::vector<std::size_t> element_nodes(const Mesh& mesh, const std::vector<std::size_t>& elements);

} // namespace luc
