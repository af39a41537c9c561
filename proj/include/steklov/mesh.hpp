#pragma once

#include "steklov/disjoint_sets.hpp"
#include "steklov/error.hpp"

#include <Eigen/Core>
#include <Eigen/Geometry>

#include <algorithm>
#include <array>
#include <cmath>
#include <queue>
#include <string>
#include <utility>
#include <vector>

namespace steklov {

using Point = Eigen::Vector3d;
using Triangle = std::array<int, 3>;

struct TopologySummary {
    int euler_char = 0;     // V - E + F
    int boundary_count = 0; // l
    int reduced_euler = 0;  // chi + l, Euler number of the capped-off closed surface
    bool orientable = true;
    int genus = 0;
};

///
/// Triangulated compact surface with boundary.
///
/// Geometry lives in a planar (or 3D) chart: `chart_points` and `chart_triangles`.
/// An optional list of identifications glues chart points together, which is how
/// non-orientable surfaces are built. Every quantity that depends on the metric is
/// read per triangle from its own chart corners, so glued triangles keep the
/// geometry of the chart they were drawn in.
///
/// Vertex ids refer to the glued (quotient) vertices. They are numbered in order
/// of the smallest chart point in each identification class.
///
class SurfaceMesh {
public:
    SurfaceMesh() = default;

    SurfaceMesh(std::vector<Point> points, std::vector<Triangle> triangles,
                std::vector<std::pair<int, int>> identifications = {})
        : points_(std::move(points)), chart_triangles_(std::move(triangles)),
          identifications_(std::move(identifications)) {
        build();
    }

    int vertex_count() const { return static_cast<int>(representative_.size()); }
    int triangle_count() const { return static_cast<int>(triangles_.size()); }
    int edge_count() const { return static_cast<int>(edges_.size()); }

    /// Triangle corners as vertex ids.
    const Triangle& triangle(int t) const { return triangles_[t]; }
    const std::vector<Triangle>& triangles() const { return triangles_; }

    /// Chart position of corner `c` of triangle `t`.
    const Point& corner(int t, int c) const { return points_[chart_triangles_[t][c]]; }

    /// Position of a vertex in the chart of its representative point.
    const Point& position(int v) const { return points_[representative_[v]]; }

    int vertex_of_chart(int p) const { return vertex_of_[p]; }

    const std::array<int, 2>& edge(int e) const { return edges_[e]; }
    /// Incident triangles of an edge; the second entry is -1 on the boundary.
    const std::array<int, 2>& edge_triangles(int e) const { return edge_triangles_[e]; }
    /// Edge id between corners c and c+1 of triangle t.
    int triangle_edge(int t, int c) const { return triangle_edges_[t][c]; }

    int edge_index(int a, int b) const {
        for (const auto& [nb, e] : adjacency_[a])
            if (nb == b)
                return e;
        return -1;
    }

    bool is_boundary_edge(int e) const { return edge_triangles_[e][1] < 0; }
    bool is_boundary_vertex(int v) const { return boundary_label_[v] >= 0; }
    /// Boundary component label of a vertex, -1 for interior vertices.
    int boundary_label(int v) const { return boundary_label_[v]; }
    int edge_boundary_label(int e) const {
        return is_boundary_edge(e) ? boundary_label_[edges_[e][0]] : -1;
    }

    const std::vector<int>& boundary_edges() const { return boundary_edges_; }
    /// Closed vertex cycles, one per boundary component, indexed by label.
    const std::vector<std::vector<int>>& boundary_components() const { return boundary_cycles_; }

    /// Length measured in the chart of an incident triangle.
    double edge_length(int e) const {
        const int t = edge_triangles_[e][0];
        const auto& tri = triangles_[t];
        int ca = -1, cb = -1;
        for (int c = 0; c < 3; ++c) {
            if (tri[c] == edges_[e][0])
                ca = c;
            if (tri[c] == edges_[e][1])
                cb = c;
        }
        return (corner(t, ca) - corner(t, cb)).norm();
    }

    double triangle_area(int t) const {
        return 0.5 * (corner(t, 1) - corner(t, 0)).cross(corner(t, 2) - corner(t, 0)).norm();
    }

    double max_edge_length() const {
        double h = 0.0;
        for (int e = 0; e < edge_count(); ++e)
            h = std::max(h, edge_length(e));
        return h;
    }

    /// Sum of boundary edge lengths per component.
    std::vector<double> boundary_lengths() const {
        std::vector<double> out(boundary_cycles_.size(), 0.0);
        for (int e : boundary_edges_)
            out[edge_boundary_label(e)] += edge_length(e);
        return out;
    }

    const std::vector<Point>& chart_points() const { return points_; }
    const std::vector<Triangle>& chart_triangles() const { return chart_triangles_; }
    const std::vector<std::pair<int, int>>& identifications() const { return identifications_; }

    std::vector<int> boundary_vertices() const {
        std::vector<int> out;
        for (int v = 0; v < vertex_count(); ++v)
            if (is_boundary_vertex(v))
                out.push_back(v);
        return out;
    }

    std::vector<int> interior_vertices() const {
        std::vector<int> out;
        for (int v = 0; v < vertex_count(); ++v)
            if (!is_boundary_vertex(v))
                out.push_back(v);
        return out;
    }

private:
    void build() {
        const int np = static_cast<int>(points_.size());
        if (np == 0 || chart_triangles_.empty())
            throw MeshError("mesh has no triangles");

        DisjointSets glue(np);
        for (const auto& [a, b] : identifications_) {
            if (a < 0 || b < 0 || a >= np || b >= np)
                throw MeshError("identification (" + std::to_string(a) + ", " + std::to_string(b) +
                                ") references a missing vertex");
            glue.unite(a, b);
        }
        vertex_of_.assign(np, -1);
        std::vector<int> root_vertex(np, -1);
        for (int p = 0; p < np; ++p) {
            const int r = glue.find(p);
            if (root_vertex[r] < 0) {
                root_vertex[r] = static_cast<int>(representative_.size());
                representative_.push_back(p);
            }
            vertex_of_[p] = root_vertex[r];
        }
        const int nv = vertex_count();

        triangles_.resize(chart_triangles_.size());
        for (std::size_t t = 0; t < chart_triangles_.size(); ++t) {
            for (int c = 0; c < 3; ++c) {
                const int p = chart_triangles_[t][c];
                if (p < 0 || p >= np)
                    throw MeshError("triangle " + std::to_string(t) + " references missing vertex " +
                                    std::to_string(p));
                triangles_[t][c] = vertex_of_[p];
            }
            const auto& tri = triangles_[t];
            if (tri[0] == tri[1] || tri[1] == tri[2] || tri[0] == tri[2])
                throw MeshError("triangle " + std::to_string(t) + " has repeated vertices");
            if (!(triangle_area(static_cast<int>(t)) > 0.0))
                throw MeshError("triangle " + std::to_string(t) + " has zero area");
        }

        {
            std::vector<Triangle> sorted = triangles_;
            for (auto& tri : sorted)
                std::sort(tri.begin(), tri.end());
            std::vector<int> order(sorted.size());
            std::iota(order.begin(), order.end(), 0);
            std::sort(order.begin(), order.end(), [&](int a, int b) { return sorted[a] < sorted[b]; });
            for (std::size_t i = 1; i < order.size(); ++i)
                if (sorted[order[i]] == sorted[order[i - 1]])
                    throw MeshError("non-manifold: triangles " + std::to_string(order[i - 1]) + " and " +
                                    std::to_string(order[i]) + " are duplicates");
        }

        adjacency_.assign(nv, {});
        triangle_edges_.resize(triangles_.size());
        for (int t = 0; t < triangle_count(); ++t) {
            for (int c = 0; c < 3; ++c) {
                const int a = triangles_[t][c];
                const int b = triangles_[t][(c + 1) % 3];
                int e = edge_index(a, b);
                if (e < 0) {
                    e = static_cast<int>(edges_.size());
                    edges_.push_back({std::min(a, b), std::max(a, b)});
                    edge_triangles_.push_back({t, -1});
                    adjacency_[a].emplace_back(b, e);
                    adjacency_[b].emplace_back(a, e);
                } else if (edge_triangles_[e][1] < 0) {
                    edge_triangles_[e][1] = t;
                } else {
                    throw MeshError("non-manifold edge (" + std::to_string(edges_[e][0]) + ", " +
                                    std::to_string(edges_[e][1]) + ") belongs to more than two triangles");
                }
                triangle_edges_[t][c] = e;
            }
        }
        for (int v = 0; v < nv; ++v)
            if (adjacency_[v].empty())
                throw MeshError("vertex " + std::to_string(v) + " is not used by any triangle");

        build_boundary();
        check_vertex_links();
    }

    void build_boundary() {
        const int nv = vertex_count();
        std::vector<std::vector<int>> bnb(nv);
        for (int e = 0; e < edge_count(); ++e) {
            if (!is_boundary_edge(e))
                continue;
            boundary_edges_.push_back(e);
            bnb[edges_[e][0]].push_back(edges_[e][1]);
            bnb[edges_[e][1]].push_back(edges_[e][0]);
        }
        for (int v = 0; v < nv; ++v)
            if (!bnb[v].empty() && bnb[v].size() != 2)
                throw MeshError("boundary is not a union of simple cycles at vertex " + std::to_string(v));

        boundary_label_.assign(nv, -1);
        for (int v0 = 0; v0 < nv; ++v0) {
            if (bnb[v0].empty() || boundary_label_[v0] >= 0)
                continue;
            const int label = static_cast<int>(boundary_cycles_.size());
            std::vector<int> cycle{v0};
            boundary_label_[v0] = label;
            int prev = v0;
            int cur = std::min(bnb[v0][0], bnb[v0][1]);
            while (cur != v0) {
                cycle.push_back(cur);
                boundary_label_[cur] = label;
                const int next = bnb[cur][0] == prev ? bnb[cur][1] : bnb[cur][0];
                prev = cur;
                cur = next;
            }
            boundary_cycles_.push_back(std::move(cycle));
        }
    }

    // The triangles around each vertex must form a single fan (disk or half-disk link).
    void check_vertex_links() {
        const int nv = vertex_count();
        std::vector<std::vector<int>> vertex_tris(nv);
        for (int t = 0; t < triangle_count(); ++t)
            for (int v : triangles_[t])
                vertex_tris[v].push_back(t);
        std::vector<int> local(triangle_count(), -1);
        for (int v = 0; v < nv; ++v) {
            const auto& tris = vertex_tris[v];
            for (std::size_t i = 0; i < tris.size(); ++i)
                local[tris[i]] = static_cast<int>(i);
            DisjointSets fan(static_cast<int>(tris.size()));
            for (const auto& [nb, e] : adjacency_[v]) {
                const auto& et = edge_triangles_[e];
                if (et[1] >= 0)
                    fan.unite(local[et[0]], local[et[1]]);
            }
            int count = 0;
            fan.labels(&count);
            if (count != 1)
                throw MeshError("non-manifold vertex " + std::to_string(v) + " (triangle fan is split)");
            for (int t : tris)
                local[t] = -1;
        }
    }

    std::vector<Point> points_;
    std::vector<Triangle> chart_triangles_;
    std::vector<std::pair<int, int>> identifications_;

    std::vector<int> vertex_of_;
    std::vector<int> representative_;
    std::vector<Triangle> triangles_;
    std::vector<std::array<int, 2>> edges_;
    std::vector<std::array<int, 2>> edge_triangles_;
    std::vector<std::array<int, 3>> triangle_edges_;
    std::vector<std::vector<std::pair<int, int>>> adjacency_;
    std::vector<int> boundary_edges_;
    std::vector<std::vector<int>> boundary_cycles_;
    std::vector<int> boundary_label_;
};

namespace detail {

// +1 when b follows a in the cyclic order of tri, -1 when a follows b.
inline int edge_direction(const Triangle& tri, int a, int b) {
    for (int c = 0; c < 3; ++c)
        if (tri[c] == a)
            return tri[(c + 1) % 3] == b ? 1 : -1;
    return 0;
}

} // namespace detail

/// Whether triangles can be oriented consistently, by breadth-first propagation
/// across interior edges.
inline bool is_orientable(const SurfaceMesh& mesh) {
    const int nt = mesh.triangle_count();
    std::vector<int> orient(nt, 0);
    for (int seed = 0; seed < nt; ++seed) {
        if (orient[seed] != 0)
            continue;
        orient[seed] = 1;
        std::queue<int> queue;
        queue.push(seed);
        while (!queue.empty()) {
            const int t = queue.front();
            queue.pop();
            for (int c = 0; c < 3; ++c) {
                const int e = mesh.triangle_edge(t, c);
                const auto& et = mesh.edge_triangles(e);
                if (et[1] < 0)
                    continue;
                const int s = et[0] == t ? et[1] : et[0];
                const auto [a, b] = mesh.edge(e);
                // neighbors must traverse the shared edge in opposite directions
                const int want = -orient[t] * detail::edge_direction(mesh.triangle(t), a, b) *
                                 detail::edge_direction(mesh.triangle(s), a, b);
                if (orient[s] == 0) {
                    orient[s] = want;
                    queue.push(s);
                } else if (orient[s] != want) {
                    return false;
                }
            }
        }
    }
    return true;
}

/// Number of connected components of the triangle adjacency graph.
inline int component_count(const SurfaceMesh& mesh) {
    DisjointSets sets(mesh.vertex_count());
    for (int e = 0; e < mesh.edge_count(); ++e)
        sets.unite(mesh.edge(e)[0], mesh.edge(e)[1]);
    int count = 0;
    sets.labels(&count);
    return count;
}

inline TopologySummary topology(const SurfaceMesh& mesh) {
    if (mesh.boundary_edges().empty())
        throw MeshError("mesh has empty boundary");
    if (component_count(mesh) != 1)
        throw MeshError("mesh is not connected");
    TopologySummary out;
    out.euler_char = mesh.vertex_count() - mesh.edge_count() + mesh.triangle_count();
    out.boundary_count = static_cast<int>(mesh.boundary_components().size());
    out.reduced_euler = out.euler_char + out.boundary_count;
    out.orientable = is_orientable(mesh);
    out.genus = out.orientable ? (2 - out.reduced_euler) / 2 : 2 - out.reduced_euler;
    return out;
}

inline bool is_disk(const TopologySummary& topo) {
    return topo.orientable && topo.reduced_euler == 2 && topo.boundary_count == 1;
}

} // namespace steklov
