#pragma once

#include "steklov/error.hpp"
#include "steklov/fem.hpp"

#include <Eigen/Dense>
#include <Eigen/SparseCholesky>

#include <algorithm>
#include <cmath>
#include <memory>
#include <string>
#include <vector>

namespace steklov {

///
/// Discrete Dirichlet-to-Neumann matrix S = K_BB - K_BI K_II^{-1} K_IB over the
/// boundary vertices, together with the interior factorization used to extend
/// boundary data harmonically.
///
class DtnMatrix {
public:
    const MatrixXd& matrix() const { return S_; }
    const std::vector<int>& boundary_index() const { return boundary_; }
    const std::vector<int>& interior_index() const { return interior_; }
    int vertex_count() const { return nv_; }
    /// Relative asymmetry ||S - S^T|| / ||S|| measured before symmetrization.
    double asymmetry() const { return asymmetry_; }

    /// Values on all vertices: `trace` on the boundary, the discrete harmonic
    /// extension (K_II w_I = -K_IB w_B) inside.
    VectorXd harmonic_extension(const VectorXd& trace) const {
        if (trace.size() != static_cast<Eigen::Index>(boundary_.size()))
            throw PreconditionError("trace must have one entry per boundary vertex");
        VectorXd full = VectorXd::Zero(nv_);
        for (std::size_t i = 0; i < boundary_.size(); ++i)
            full[boundary_[i]] = trace[static_cast<Eigen::Index>(i)];
        if (!interior_.empty()) {
            const VectorXd wi = solver_->solve(-(K_IB_ * trace));
            for (std::size_t i = 0; i < interior_.size(); ++i)
                full[interior_[i]] = wi[static_cast<Eigen::Index>(i)];
        }
        return full;
    }

    /// Extends every column of a boundary matrix.
    MatrixXd harmonic_extension(const MatrixXd& traces) const {
        MatrixXd full = MatrixXd::Zero(nv_, traces.cols());
        for (std::size_t i = 0; i < boundary_.size(); ++i)
            full.row(boundary_[i]) = traces.row(static_cast<Eigen::Index>(i));
        if (!interior_.empty()) {
            const MatrixXd rhs = -(K_IB_ * traces);
            const MatrixXd wi = solver_->solve(rhs);
            for (std::size_t i = 0; i < interior_.size(); ++i)
                full.row(interior_[i]) = wi.row(static_cast<Eigen::Index>(i));
        }
        return full;
    }

    /// Residual max |K_II w_I + K_IB w_B| relative to max |K_IB w_B|.
    double harmonicity_residual(const VectorXd& full) const {
        if (interior_.empty())
            return 0.0;
        VectorXd wi(interior_.size()), wb(boundary_.size());
        for (std::size_t i = 0; i < interior_.size(); ++i)
            wi[static_cast<Eigen::Index>(i)] = full[interior_[i]];
        for (std::size_t i = 0; i < boundary_.size(); ++i)
            wb[static_cast<Eigen::Index>(i)] = full[boundary_[i]];
        const VectorXd forcing = K_IB_ * wb;
        const double scale = std::max(forcing.cwiseAbs().maxCoeff(), 1e-300);
        return (K_II_ * wi + forcing).cwiseAbs().maxCoeff() / scale;
    }

    friend DtnMatrix schur_dtn(const SteklovSystem& system);

private:
    using Factorization = Eigen::SimplicialLDLT<SparseMatrix>;

    MatrixXd S_;
    std::vector<int> boundary_;
    std::vector<int> interior_;
    int nv_ = 0;
    double asymmetry_ = 0.0;
    SparseMatrix K_II_;
    SparseMatrix K_IB_;
    std::shared_ptr<const Factorization> solver_;
};

namespace detail {

inline SparseMatrix extract_block(const SparseMatrix& A, const std::vector<int>& rows, const std::vector<int>& cols) {
    std::vector<int> row_pos(A.rows(), -1), col_pos(A.cols(), -1);
    for (std::size_t i = 0; i < rows.size(); ++i)
        row_pos[rows[i]] = static_cast<int>(i);
    for (std::size_t j = 0; j < cols.size(); ++j)
        col_pos[cols[j]] = static_cast<int>(j);
    std::vector<Eigen::Triplet<double>> trips;
    for (int k = 0; k < A.outerSize(); ++k)
        for (SparseMatrix::InnerIterator it(A, k); it; ++it)
            if (row_pos[it.row()] >= 0 && col_pos[it.col()] >= 0)
                trips.emplace_back(row_pos[it.row()], col_pos[it.col()], it.value());
    SparseMatrix B(static_cast<Eigen::Index>(rows.size()), static_cast<Eigen::Index>(cols.size()));
    B.setFromTriplets(trips.begin(), trips.end());
    return B;
}

} // namespace detail

inline DtnMatrix schur_dtn(const SteklovSystem& system) {
    DtnMatrix out;
    out.boundary_ = system.boundary_index;
    out.interior_ = system.interior_index;
    out.nv_ = static_cast<int>(system.stiffness.rows());
    if (out.boundary_.empty())
        throw PreconditionError("Dirichlet-to-Neumann reduction needs boundary vertices");

    const SparseMatrix K_BB = detail::extract_block(system.stiffness, out.boundary_, out.boundary_);
    out.S_ = MatrixXd(K_BB);
    if (!out.interior_.empty()) {
        out.K_II_ = detail::extract_block(system.stiffness, out.interior_, out.interior_);
        out.K_IB_ = detail::extract_block(system.stiffness, out.interior_, out.boundary_);
        auto solver = std::make_shared<DtnMatrix::Factorization>(out.K_II_);
        const double dmax = solver->info() == Eigen::Success ? solver->vectorD().cwiseAbs().maxCoeff() : 0.0;
        if (solver->info() != Eigen::Success || !(solver->vectorD().minCoeff() > 1e-12 * dmax))
            throw SolverError("singular interior stiffness block (a component without boundary?)");
        const MatrixXd X = solver->solve(MatrixXd(out.K_IB_));
        out.S_.noalias() -= MatrixXd(out.K_IB_.transpose()) * X;
        out.solver_ = std::move(solver);
    }
    const double norm = std::max(out.S_.norm(), 1e-300);
    out.asymmetry_ = (out.S_ - out.S_.transpose()).norm() / norm;
    out.S_ = 0.5 * (out.S_ + out.S_.transpose()).eval();
    return out;
}

inline VectorXd harmonic_extension(const DtnMatrix& dtn, const VectorXd& trace) {
    return dtn.harmonic_extension(trace);
}

/// Ascending eigenpairs. Column j of `boundary_traces` is the boundary trace of
/// eigenfunction j (ordered like `boundary_index`); column j of `extensions` is the
/// same function on every vertex.
struct Spectrum {
    VectorXd eigenvalues;
    MatrixXd boundary_traces;
    MatrixXd extensions;
    std::vector<int> boundary_index;

    int size() const { return static_cast<int>(eigenvalues.size()); }
};

namespace detail {

// Flips each column so that its entry of largest magnitude is positive.
inline void fix_signs(MatrixXd& vecs) {
    for (Eigen::Index j = 0; j < vecs.cols(); ++j) {
        Eigen::Index imax = 0;
        vecs.col(j).cwiseAbs().maxCoeff(&imax);
        if (vecs(imax, j) < 0.0)
            vecs.col(j) *= -1.0;
    }
}

} // namespace detail

///
/// First `count` eigenpairs of S x = sigma M x.
///
/// `mass` is the boundary-mass diagonal over all vertices. Boundary vertices with
/// zero mass carry the natural condition dS/dx = 0 there; they are condensed out by
/// a second Schur complement, so the dense eigensolve runs on the positive-mass
/// support P with the scaled matrix M_P^{-1/2} S_red M_P^{-1/2}.
///
inline Spectrum solve_steklov(const DtnMatrix& dtn, const VectorXd& mass, int count) {
    const auto& bidx = dtn.boundary_index();
    const Eigen::Index nb = static_cast<Eigen::Index>(bidx.size());
    std::vector<int> P, Z;
    for (Eigen::Index i = 0; i < nb; ++i)
        (mass[bidx[static_cast<std::size_t>(i)]] > 0.0 ? P : Z).push_back(static_cast<int>(i));
    if (P.empty())
        throw PreconditionError("boundary mass has empty support");
    if (count < 1 || count > static_cast<int>(P.size()))
        throw PreconditionError("requested " + std::to_string(count) + " eigenpairs, only " +
                                std::to_string(P.size()) + " available");
    const MatrixXd& S = dtn.matrix();
    const auto np = static_cast<Eigen::Index>(P.size());
    const auto nz = static_cast<Eigen::Index>(Z.size());
    MatrixXd S_red = S(P, P);
    MatrixXd Z_from_P; // trace on Z = Z_from_P * trace on P
    if (nz > 0) {
        const Eigen::LDLT<MatrixXd> zz(S(Z, Z));
        Z_from_P = -zz.solve(S(Z, P));
        S_red.noalias() += S(P, Z) * Z_from_P;
    }
    VectorXd inv_sqrt(np);
    for (Eigen::Index i = 0; i < np; ++i)
        inv_sqrt[i] = 1.0 / std::sqrt(mass[bidx[static_cast<std::size_t>(P[static_cast<std::size_t>(i)])]]);
    MatrixXd C = inv_sqrt.asDiagonal() * S_red * inv_sqrt.asDiagonal();
    C = 0.5 * (C + C.transpose()).eval();
    const Eigen::SelfAdjointEigenSolver<MatrixXd> eig(C);
    if (eig.info() != Eigen::Success)
        throw SolverError("dense symmetric eigensolve failed");

    Spectrum out;
    out.boundary_index = bidx;
    out.eigenvalues = eig.eigenvalues().head(count);
    const MatrixXd xp = inv_sqrt.asDiagonal() * eig.eigenvectors().leftCols(count);
    out.boundary_traces = MatrixXd::Zero(nb, count);
    out.boundary_traces(P, Eigen::all) = xp;
    if (nz > 0)
        out.boundary_traces(Z, Eigen::all) = Z_from_P * xp;
    detail::fix_signs(out.boundary_traces);
    out.extensions = dtn.harmonic_extension(out.boundary_traces);
    return out;
}

/// Assembles, reduces and solves in one call.
inline Spectrum steklov_spectrum(const SurfaceMesh& mesh, const BoundaryDensity& rho, int count) {
    const auto system = assemble_steklov(mesh, rho);
    return solve_steklov(schur_dtn(system), system.boundary_mass, count);
}

} // namespace steklov
