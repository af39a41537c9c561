#include "steklov/fem.hpp"
#include "steklov/generators.hpp"
#include "steklov/oracle.hpp"
#include "steklov/solver.hpp"
#include "steklov/spectrum.hpp"

#include <gtest/gtest.h>

using namespace steklov;

TEST(Fem, LocalStiffnessRowsSumToZero) {
    const auto K = local_stiffness(Point(0, 0, 0), Point(2, 0, 0), Point(0.3, 1.1, 0));
    for (int i = 0; i < 3; ++i)
        EXPECT_NEAR(K.row(i).sum(), 0.0, 1e-14);
    EXPECT_LT((K - K.transpose()).norm(), 1e-14);
}

TEST(Fem, RightTriangleStiffness) {
    const auto K = local_stiffness(Point(0, 0, 0), Point(1, 0, 0), Point(0, 1, 0));
    EXPECT_NEAR(K(0, 0), 1.0, 1e-14);
    EXPECT_NEAR(K(1, 1), 0.5, 1e-14);
    EXPECT_NEAR(K(0, 1), -0.5, 1e-14);
    EXPECT_NEAR(K(1, 2), 0.0, 1e-14);
}

TEST(Fem, MassesIntegrateLengthAndArea) {
    const auto m = make_square(1.0, 2);
    EXPECT_NEAR(assemble_boundary_mass(m, BoundaryDensity::constant(m)).sum(), 4.0, 1e-12);
    EXPECT_NEAR(assemble_boundary_mass(m, BoundaryDensity::constant(m, 2.5)).sum(), 10.0, 1e-12);
    EXPECT_NEAR(assemble_area_mass(m).sum(), 1.0, 1e-12);
}

TEST(Fem, LinearFunctionHasExactEnergy) {
    const auto m = make_disk(1.0, 2);
    const auto K = assemble_stiffness(m);
    Eigen::VectorXd u(m.vertex_count());
    for (int v = 0; v < m.vertex_count(); ++v)
        u[v] = m.position(v).x();
    // |grad x|^2 integrated over the polygon
    EXPECT_NEAR(u.dot(K * u), assemble_area_mass(m).sum(), 1e-12);
}

TEST(Fem, RejectsNegativeDensity) {
    const auto m = make_disk(1.0, 1);
    EXPECT_THROW(validate_density(m, BoundaryDensity::constant(m, -1.0)), PreconditionError);
}

TEST(Solver, DtnIsSymmetricWithConstantKernel) {
    const auto m = make_disk(1.0, 2);
    const auto dtn = schur_dtn(assemble_steklov(m, BoundaryDensity::constant(m)));
    const auto& S = dtn.matrix();
    EXPECT_LT((S - S.transpose()).norm(), 1e-12 * S.norm());
    EXPECT_LT((S * Eigen::VectorXd::Ones(S.cols())).norm(), 1e-10);
}

TEST(Solver, HarmonicExtensionReproducesLinearFunctions) {
    const auto m = make_disk(1.0, 2);
    const auto dtn = schur_dtn(assemble_steklov(m, BoundaryDensity::constant(m)));
    Eigen::VectorXd trace(static_cast<Eigen::Index>(dtn.boundary_index().size()));
    for (std::size_t i = 0; i < dtn.boundary_index().size(); ++i)
        trace[static_cast<Eigen::Index>(i)] = m.position(dtn.boundary_index()[i]).y();
    const auto u = dtn.harmonic_extension(trace);
    for (int v = 0; v < m.vertex_count(); ++v)
        EXPECT_NEAR(u[v], m.position(v).y(), 1e-10);
}

TEST(Solver, DiskSpectrumConverges) {
    const auto exact = oracle::disk_steklov(9);
    double previous = 1e300;
    for (int r : {2, 3, 4}) {
        const auto m = make_disk(1.0, r);
        const auto s = steklov_spectrum(m, BoundaryDensity::constant(m), 9);
        double err = 0.0;
        for (int j = 1; j < 9; ++j)
            err = std::max(err, std::abs(s.eigenvalues[j] - exact[static_cast<std::size_t>(j)]) / exact[static_cast<std::size_t>(j)]);
        EXPECT_LT(err, previous);
        previous = err;
    }
    EXPECT_LT(previous, 2e-3);
}

TEST(Solver, DensityScalesEigenvalues) {
    const auto m = make_disk(1.0, 2);
    const auto a = steklov_spectrum(m, BoundaryDensity::constant(m), 6);
    const auto b = steklov_spectrum(m, BoundaryDensity::constant(m, 4.0), 6);
    for (int j = 0; j < 6; ++j)
        EXPECT_NEAR(b.eigenvalues[j], a.eigenvalues[j] / 4.0, 1e-10);
}

TEST(Solver, ZeroDensityArcIsCondensed) {
    const auto m = make_disk(1.0, 3);
    const auto rho = BoundaryDensity::sample(m, [](const Point& p) { return p.y() > 0.0 ? 1.0 : 0.0; });
    const auto s = steklov_spectrum(m, rho, 6);
    EXPECT_NEAR(s.eigenvalues[0], 0.0, 1e-9);
    for (int j = 1; j < 6; ++j) {
        EXPECT_TRUE(std::isfinite(s.eigenvalues[j]));
        EXPECT_GE(s.eigenvalues[j], s.eigenvalues[j - 1]);
    }
}

TEST(Solver, EigenvectorsAreMassOrthonormal) {
    const auto m = make_annulus(0.4, 1.0, 1);
    const auto sys = assemble_steklov(m, BoundaryDensity::constant(m));
    const auto s = steklov_spectrum(m, BoundaryDensity::constant(m), 8);
    const Eigen::MatrixXd G = s.extensions.transpose() * sys.boundary_mass.asDiagonal() * s.extensions;
    EXPECT_LT((G - Eigen::MatrixXd::Identity(8, 8)).norm(), 1e-9);
}

TEST(Spectrum, ClustersByRelativeGap) {
    Eigen::VectorXd v(6);
    v << 0.0, 1.0, 1.0000001, 2.0, 2.0, 2.0;
    const auto c = cluster_multiplicities(v);
    ASSERT_EQ(c.size(), 3u);
    EXPECT_EQ(c[0].dim, 1);
    EXPECT_EQ(c[1].dim, 2);
    EXPECT_EQ(c[1].first_index, 1);
    EXPECT_EQ(c[2].dim, 3);
    EXPECT_EQ(c[2].last_index(), 5);
    EXPECT_NEAR(c[1].gap_above, 1.0, 1e-6);
    EXPECT_FALSE(std::isfinite(c[2].gap_above));
}

TEST(Spectrum, BoundFormulas) {
    EXPECT_EQ(bound_in1(2, 1), 3);
    EXPECT_EQ(bound_in1(1, 3), 9);
    EXPECT_EQ(bound_in2(2, 1, 1, false), 3);
    EXPECT_EQ(bound_in2(2, 1, 2, true), 3);
}

TEST(Spectrum, BoundCheckerFlagsExcessMultiplicity) {
    const auto disk = topology(make_disk(1.0, 1));
    std::vector<MultiplicityCluster> clusters{{0, 0.0, 1}, {1, 1.0, 4}, {5, 2.0, 2}};
    const auto r = check_bounds(clusters, disk, true);
    EXPECT_EQ(r.violations, 1);
    ASSERT_EQ(r.records.size(), 2u);
    EXPECT_FALSE(r.records[0].pass);
    EXPECT_TRUE(r.records[1].pass);
}

TEST(Spectrum, DiskPairing) {
    const auto m = make_disk(1.0, 3);
    const auto s = steklov_spectrum(m, BoundaryDensity::constant(m), 11);
    const auto p = disk_pairing(s.eigenvalues, cluster_multiplicities(s), topology(m));
    EXPECT_EQ(p.K, 0);
    EXPECT_LE(p.max_dim_above_first, 2);
    for (double g : p.relative_gaps)
        EXPECT_LT(std::abs(g), 1e-8);
    EXPECT_THROW(disk_pairing(s.eigenvalues, {}, topology(make_annulus(0.5, 1.0, 1))), PreconditionError);
}

TEST(Spectrum, WeylSlopeOnDisk) {
    const auto m = make_disk(1.0, 4);
    const auto s = steklov_spectrum(m, BoundaryDensity::constant(m), 40);
    const auto w = weyl_residual(s.eigenvalues, weighted_boundary_length(m, BoundaryDensity::constant(m)));
    EXPECT_NEAR(w.ratio_pi(), 1.0, 0.05);
    EXPECT_LT(w.max_abs_residual, 3.0);
}

TEST(Spectrum, SquareDetection) {
    EXPECT_TRUE(is_square_domain(make_square(1.0, 2)));
    EXPECT_FALSE(is_square_domain(make_disk(1.0, 2)));
    EXPECT_THROW(quadruple_check(make_disk(1.0, 1), Eigen::VectorXd::Zero(8)), PreconditionError);
}

TEST(Oracle, AnnulusLimits) {
    const auto a = oracle::annulus_steklov(6, 0.5);
    EXPECT_NEAR(a[0], 0.0, 1e-12);
    for (std::size_t i = 1; i < a.size(); ++i)
        EXPECT_GE(a[i], a[i - 1]);
    // n = 0 root: (1 + rho) / (rho ln(1/rho)) is the other radial eigenvalue
    const auto b = oracle::annulus_steklov(30, 0.5);
    EXPECT_NE(std::find_if(b.begin(), b.end(), [](double s) { return std::abs(s - 1.5 / (0.5 * std::log(2.0))) < 1e-9; }),
              b.end());
}

TEST(Oracle, ClosedFormConstants) {
    EXPECT_NEAR(oracle::bessel_j0_first_root(), 2.404825557695773, 1e-12);
    const auto n = oracle::neumann_pi_square(6);
    EXPECT_EQ(n, (std::vector<double>{0, 1, 1, 2, 4, 4}));
}
