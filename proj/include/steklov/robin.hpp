#pragma once

#include "steklov/error.hpp"
#include "steklov/fem.hpp"
#include "steklov/mesh.hpp"
#include "steklov/mesh_io.hpp"
#include "steklov/solver.hpp"

#include <Eigen/Dense>

#include <cmath>
#include <string>
#include <vector>

namespace steklov {

///
/// Data of L u = -Laplace u + V u = lambda u with B u = a u + b du/dnu = 0.
/// `potential` is per vertex; `a` and `b` are per boundary vertex in the order of
/// mesh.boundary_vertices(). Vertices with b = 0 carry a Dirichlet condition.
///
struct RobinData {
    std::vector<double> potential;
    std::vector<double> a;
    std::vector<double> b;

    static RobinData neumann(const SurfaceMesh& mesh, double potential = 0.0) {
        const auto nb = mesh.boundary_vertices().size();
        return {std::vector<double>(mesh.vertex_count(), potential), std::vector<double>(nb, 0.0),
                std::vector<double>(nb, 1.0)};
    }

    static RobinData dirichlet(const SurfaceMesh& mesh, double potential = 0.0) {
        const auto nb = mesh.boundary_vertices().size();
        return {std::vector<double>(mesh.vertex_count(), potential), std::vector<double>(nb, 1.0),
                std::vector<double>(nb, 0.0)};
    }

    /// du/dnu + h u = 0.
    static RobinData robin(const SurfaceMesh& mesh, double h, double potential = 0.0) {
        const auto nb = mesh.boundary_vertices().size();
        return {std::vector<double>(mesh.vertex_count(), potential), std::vector<double>(nb, h),
                std::vector<double>(nb, 1.0)};
    }

    /// From the ROBIN and POT sections of a mesh file; missing sections mean
    /// Neumann and V = 0.
    static RobinData from_file(const LoadedMesh& loaded) {
        RobinData d = neumann(loaded.mesh);
        if (loaded.potential)
            d.potential = *loaded.potential;
        if (loaded.robin) {
            d.a = loaded.robin->a;
            d.b = loaded.robin->b;
        }
        return d;
    }
};

inline void validate_robin(const SurfaceMesh& mesh, const RobinData& data) {
    const auto nb = mesh.boundary_vertices().size();
    if (static_cast<int>(data.potential.size()) != mesh.vertex_count())
        throw PreconditionError("potential must have one value per vertex");
    if (data.a.size() != nb || data.b.size() != nb)
        throw PreconditionError("Robin coefficients must have one (a, b) pair per boundary vertex");
    for (std::size_t i = 0; i < nb; ++i) {
        if (!std::isfinite(data.a[i]) || !std::isfinite(data.b[i]))
            throw PreconditionError("Robin coefficients must be finite");
        if (data.a[i] == 0.0 && data.b[i] == 0.0)
            throw PreconditionError("Robin coefficients vanish at boundary vertex " +
                                    std::to_string(mesh.boundary_vertices()[i]));
    }
    for (double v : data.potential)
        if (!std::isfinite(v))
            throw PreconditionError("potential must be finite");
}

/// A u = lambda M u on the retained (non-Dirichlet) vertices.
struct RobinSystem {
    MatrixXd A;
    VectorXd mass; // lumped area mass on retained vertices
    std::vector<int> retained;
    int vertex_count = 0;
};

///
/// A = K + V-weighted lumped area mass + (a/b)-weighted lumped boundary mass,
/// with Dirichlet vertices (b = 0) removed. Dense, so meant for small meshes.
///
inline RobinSystem assemble_robin(const SurfaceMesh& mesh, const RobinData& data, int max_vertices = 8000) {
    validate_robin(mesh, data);
    const auto& bverts = mesh.boundary_vertices();
    std::vector<bool> dirichlet(mesh.vertex_count(), false);
    std::vector<double> ratio(mesh.vertex_count(), 0.0);
    for (std::size_t i = 0; i < bverts.size(); ++i) {
        if (data.b[i] == 0.0)
            dirichlet[bverts[i]] = true;
        else
            ratio[bverts[i]] = data.a[i] / data.b[i];
    }
    RobinSystem sys;
    sys.vertex_count = mesh.vertex_count();
    std::vector<int> pos(mesh.vertex_count(), -1);
    for (int v = 0; v < mesh.vertex_count(); ++v)
        if (!dirichlet[v]) {
            pos[v] = static_cast<int>(sys.retained.size());
            sys.retained.push_back(v);
        }
    const auto n = static_cast<Eigen::Index>(sys.retained.size());
    if (n == 0)
        throw PreconditionError("every vertex carries a Dirichlet condition");
    if (n > max_vertices)
        throw PreconditionError("dense Robin solve limited to " + std::to_string(max_vertices) + " unknowns, got " +
                                std::to_string(n));

    const SparseMatrix K = assemble_stiffness(mesh);
    const VectorXd area = assemble_area_mass(mesh);
    sys.A = MatrixXd::Zero(n, n);
    for (int k = 0; k < K.outerSize(); ++k)
        for (SparseMatrix::InnerIterator it(K, k); it; ++it)
            if (pos[it.row()] >= 0 && pos[it.col()] >= 0)
                sys.A(pos[it.row()], pos[it.col()]) += it.value();
    sys.mass.resize(n);
    for (Eigen::Index i = 0; i < n; ++i) {
        const int v = sys.retained[static_cast<std::size_t>(i)];
        sys.A(i, i) += data.potential[v] * area[v];
        sys.mass[i] = area[v];
    }
    for (int e : mesh.boundary_edges()) {
        const auto [p, q] = mesh.edge(e);
        const double h = mesh.edge_length(e);
        for (int v : {p, q})
            if (pos[v] >= 0)
                sys.A(pos[v], pos[v]) += 0.5 * h * ratio[v];
    }
    return sys;
}

/// Ascending eigenpairs; `eigenvectors` columns are M-orthonormal and zero on
/// Dirichlet vertices.
struct RobinSpectrum {
    VectorXd eigenvalues;
    MatrixXd eigenvectors;

    int size() const { return static_cast<int>(eigenvalues.size()); }
};

inline RobinSpectrum solve_robin(const RobinSystem& sys, int count) {
    const auto n = static_cast<Eigen::Index>(sys.retained.size());
    if (count < 1 || count > n)
        throw PreconditionError("requested " + std::to_string(count) + " eigenpairs, only " + std::to_string(n) +
                                " available");
    if (!(sys.mass.minCoeff() > 0.0))
        throw PreconditionError("mass matrix is not positive definite");
    const VectorXd inv_sqrt = sys.mass.cwiseSqrt().cwiseInverse();
    MatrixXd C = inv_sqrt.asDiagonal() * sys.A * inv_sqrt.asDiagonal();
    C = 0.5 * (C + C.transpose()).eval();
    const Eigen::SelfAdjointEigenSolver<MatrixXd> eig(C);
    if (eig.info() != Eigen::Success)
        throw SolverError("dense symmetric eigensolve failed");
    RobinSpectrum out;
    out.eigenvalues = eig.eigenvalues().head(count);
    MatrixXd vecs = inv_sqrt.asDiagonal() * eig.eigenvectors().leftCols(count);
    detail::fix_signs(vecs);
    out.eigenvectors = MatrixXd::Zero(sys.vertex_count, count);
    for (Eigen::Index i = 0; i < n; ++i)
        out.eigenvectors.row(sys.retained[static_cast<std::size_t>(i)]) = vecs.row(i);
    return out;
}

inline RobinSpectrum robin_spectrum(const SurfaceMesh& mesh, const RobinData& data, int count) {
    return solve_robin(assemble_robin(mesh, data), count);
}

} // namespace steklov
