#pragma once

#include "steklov/error.hpp"
#include "steklov/mesh.hpp"

#include <Eigen/Core>
#include <Eigen/SparseCore>

#include <cmath>
#include <functional>
#include <limits>
#include <numbers>
#include <ostream>
#include <vector>

namespace steklov {

using SparseMatrix = Eigen::SparseMatrix<double>;
using Eigen::MatrixXd;
using Eigen::VectorXd;

/// Boundary weight rho >= 0 stored per vertex (interior entries are ignored) and
/// interpolated linearly along boundary edges.
struct BoundaryDensity {
    std::vector<double> values;

    static BoundaryDensity constant(const SurfaceMesh& mesh, double c = 1.0) {
        return {std::vector<double>(mesh.vertex_count(), c)};
    }

    /// Samples f at vertex positions.
    static BoundaryDensity sample(const SurfaceMesh& mesh, const std::function<double(const Point&)>& f) {
        BoundaryDensity d{std::vector<double>(mesh.vertex_count(), 0.0)};
        for (int v = 0; v < mesh.vertex_count(); ++v)
            if (mesh.is_boundary_vertex(v))
                d.values[v] = f(mesh.position(v));
        return d;
    }

    /// rho(theta) = 1 + amplitude * cos(theta), theta the polar angle about the origin.
    static BoundaryDensity cosine(const SurfaceMesh& mesh, double amplitude) {
        return sample(mesh, [amplitude](const Point& p) { return 1.0 + amplitude * std::cos(std::atan2(p.y(), p.x())); });
    }

    BoundaryDensity scaled(double c) const {
        BoundaryDensity d = *this;
        for (double& v : d.values)
            v *= c;
        return d;
    }
};

///
/// Exact P1 stiffness of one triangle: K_ij = (e_i . e_j) / (4A), where e_i is the
/// edge vector opposite corner i. Equivalent to the cotangent formula.
///
inline Eigen::Matrix3d local_stiffness(const Point& p0, const Point& p1, const Point& p2) {
    const std::array<Point, 3> e{p2 - p1, p0 - p2, p1 - p0};
    const double area = 0.5 * e[2].cross(-e[1]).norm();
    if (!(area > 0.0))
        throw MeshError("degenerate triangle (zero area)");
    Eigen::Matrix3d k;
    for (int i = 0; i < 3; ++i)
        for (int j = 0; j < 3; ++j)
            k(i, j) = e[i].dot(e[j]) / (4.0 * area);
    return k;
}

/// Dirichlet energy form of the piecewise-linear interpolant, over all vertices.
inline SparseMatrix assemble_stiffness(const SurfaceMesh& mesh) {
    std::vector<Eigen::Triplet<double>> trips;
    trips.reserve(9 * static_cast<std::size_t>(mesh.triangle_count()));
    for (int t = 0; t < mesh.triangle_count(); ++t) {
        const auto k = local_stiffness(mesh.corner(t, 0), mesh.corner(t, 1), mesh.corner(t, 2));
        const auto& tri = mesh.triangle(t);
        for (int i = 0; i < 3; ++i)
            for (int j = 0; j < 3; ++j)
                trips.emplace_back(tri[i], tri[j], k(i, j));
    }
    SparseMatrix K(mesh.vertex_count(), mesh.vertex_count());
    K.setFromTriplets(trips.begin(), trips.end());
    return K;
}

inline void validate_density(const SurfaceMesh& mesh, const BoundaryDensity& rho) {
    if (static_cast<int>(rho.values.size()) != mesh.vertex_count())
        throw PreconditionError("density must have one value per vertex");
    bool positive_edge = false;
    for (int e : mesh.boundary_edges()) {
        const auto [a, b] = mesh.edge(e);
        for (int v : {a, b})
            if (!(rho.values[v] >= 0.0) || !std::isfinite(rho.values[v]))
                throw PreconditionError("density must be finite and non-negative on the boundary");
        positive_edge = positive_edge || (rho.values[a] > 0.0 && rho.values[b] > 0.0);
    }
    if (!positive_edge)
        throw PreconditionError("all-zero density: rho must be positive on at least one boundary edge");
}

///
/// Lumped (trapezoid) boundary mass: a boundary edge of length h with endpoint
/// densities (rho_a, rho_b) adds h*rho_a/2 and h*rho_b/2 to its endpoints.
/// Returned as the diagonal over all vertices; interior entries are zero.
///
inline VectorXd assemble_boundary_mass(const SurfaceMesh& mesh, const BoundaryDensity& rho) {
    validate_density(mesh, rho);
    VectorXd m = VectorXd::Zero(mesh.vertex_count());
    for (int e : mesh.boundary_edges()) {
        const auto [a, b] = mesh.edge(e);
        const double h = mesh.edge_length(e);
        m[a] += 0.5 * h * rho.values[a];
        m[b] += 0.5 * h * rho.values[b];
    }
    return m;
}

/// Lumped area mass: each triangle gives a third of its area to each corner.
inline VectorXd assemble_area_mass(const SurfaceMesh& mesh) {
    VectorXd m = VectorXd::Zero(mesh.vertex_count());
    for (int t = 0; t < mesh.triangle_count(); ++t) {
        const double a3 = mesh.triangle_area(t) / 3.0;
        for (int v : mesh.triangle(t))
            m[v] += a3;
    }
    return m;
}

/// Integral of rho ds along the boundary (equals the trace of the boundary mass).
inline double weighted_boundary_length(const SurfaceMesh& mesh, const BoundaryDensity& rho) {
    double total = 0.0;
    for (int e : mesh.boundary_edges()) {
        const auto [a, b] = mesh.edge(e);
        total += 0.5 * mesh.edge_length(e) * (rho.values[a] + rho.values[b]);
    }
    return total;
}

/// Assembled discrete Steklov problem K u = sigma M u.
struct SteklovSystem {
    SparseMatrix stiffness;
    VectorXd boundary_mass; // diagonal of M, length = vertex count
    std::vector<int> boundary_index;
    std::vector<int> interior_index;
};

inline SteklovSystem assemble_steklov(const SurfaceMesh& mesh, const BoundaryDensity& rho) {
    return {assemble_stiffness(mesh), assemble_boundary_mass(mesh, rho), mesh.boundary_vertices(),
            mesh.interior_vertices()};
}

/// (u^T K u) / (u^T M u); +infinity when u vanishes on the support of M.
inline double rayleigh_quotient(const SteklovSystem& system, const VectorXd& u) {
    const double den = u.cwiseProduct(system.boundary_mass).dot(u);
    if (den <= 0.0)
        return std::numeric_limits<double>::infinity();
    return u.dot(system.stiffness * u) / den;
}

/// Debug export, one `i j value` line per stored entry.
inline void write_triplets(std::ostream& out, const SparseMatrix& A) {
    const auto old = out.precision(17);
    for (int k = 0; k < A.outerSize(); ++k)
        for (SparseMatrix::InnerIterator it(A, k); it; ++it)
            out << it.row() << ' ' << it.col() << ' ' << it.value() << '\n';
    out.precision(old);
}

} // namespace steklov
