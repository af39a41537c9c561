#include "steklov/generators.hpp"
#include "steklov/oracle.hpp"
#include "steklov/robin.hpp"
#include "steklov/spectrum.hpp"

#include <gtest/gtest.h>

using namespace steklov;

TEST(Robin, NeumannGroundStateIsConstant) {
    const auto m = make_disk(1.0, 2);
    const auto s = robin_spectrum(m, RobinData::neumann(m), 3);
    EXPECT_NEAR(s.eigenvalues[0], 0.0, 1e-10);
    const Eigen::VectorXd u = s.eigenvectors.col(0);
    EXPECT_LT(u.maxCoeff() - u.minCoeff(), 1e-8 * u.cwiseAbs().maxCoeff());
}

TEST(Robin, DirichletDiskMatchesBesselRoot) {
    const auto m = make_disk(1.0, 3);
    const auto s = robin_spectrum(m, RobinData::dirichlet(m), 1);
    const double j = oracle::bessel_j0_first_root();
    EXPECT_NEAR(s.eigenvalues[0], j * j, 0.01 * j * j);
}

TEST(Robin, DirichletEigenfunctionsVanishOnBoundary) {
    const auto m = make_disk(1.0, 2);
    const auto s = robin_spectrum(m, RobinData::dirichlet(m), 4);
    for (int v : m.boundary_vertices())
        EXPECT_EQ(s.eigenvectors.row(v).norm(), 0.0);
}

TEST(Robin, ConstantPotentialShiftsSpectrum) {
    const auto m = make_square(1.0, 2);
    const auto a = robin_spectrum(m, RobinData::neumann(m), 6);
    const auto b = robin_spectrum(m, RobinData::neumann(m, 3.5), 6);
    for (int j = 0; j < 6; ++j)
        EXPECT_NEAR(b.eigenvalues[j], a.eigenvalues[j] + 3.5, 1e-9);
}

TEST(Robin, PositivePotentialGivesPositiveGroundState) {
    const auto m = make_disk(1.0, 2);
    EXPECT_GT(robin_spectrum(m, RobinData::neumann(m, 0.2), 1).eigenvalues[0], 0.0);
}

TEST(Robin, NeumannPiSquare) {
    const auto m = make_square(M_PI, 3);
    const auto s = robin_spectrum(m, RobinData::neumann(m), 3);
    EXPECT_NEAR(s.eigenvalues[1], 1.0, 0.01);
    EXPECT_NEAR(s.eigenvalues[2], 1.0, 0.01);
}

TEST(Robin, DirichletDominatesNeumann) {
    const auto m = make_disk(1.0, 2);
    const auto d = robin_spectrum(m, RobinData::dirichlet(m), 10);
    const auto n = robin_spectrum(m, RobinData::neumann(m), 10);
    for (int j = 0; j < 10; ++j)
        EXPECT_GE(d.eigenvalues[j], n.eigenvalues[j]);
}

TEST(Robin, ApproachesNeumannAsCoefficientShrinks) {
    const auto m = make_disk(1.0, 2);
    const auto n = robin_spectrum(m, RobinData::neumann(m), 6);
    double previous = 1e300;
    for (double h : {1.0, 0.1, 0.01}) {
        const auto r = robin_spectrum(m, RobinData::robin(m, h), 6);
        const double dist = (r.eigenvalues - n.eigenvalues).cwiseAbs().maxCoeff();
        EXPECT_LT(dist, previous);
        previous = dist;
    }
    EXPECT_LT(previous, 0.05);
}

TEST(Robin, MixedBoundaryEliminatesOnlyDirichletVertices) {
    const auto m = make_disk(1.0, 2);
    auto data = RobinData::neumann(m);
    const auto& bv = m.boundary_vertices();
    for (std::size_t i = 0; i < bv.size(); ++i)
        if (m.position(bv[i]).y() > 0.0) {
            data.a[i] = 1.0;
            data.b[i] = 0.0;
        }
    const auto sys = assemble_robin(m, data);
    int dirichlet = 0;
    for (int v : bv)
        dirichlet += m.position(v).y() > 0.0;
    EXPECT_EQ(static_cast<int>(sys.retained.size()), m.vertex_count() - dirichlet);
}

TEST(Robin, Validation) {
    const auto m = make_disk(1.0, 1);
    auto data = RobinData::neumann(m);
    data.a[0] = data.b[0] = 0.0;
    EXPECT_THROW(assemble_robin(m, data), PreconditionError);
    EXPECT_THROW(robin_spectrum(m, RobinData::neumann(m), 100000), PreconditionError);
}

TEST(Robin, BoundChecker) {
    const auto disk = topology(make_disk(1.0, 1));
    const auto m = make_disk(1.0, 3);
    for (const auto& data : {RobinData::neumann(m), RobinData::dirichlet(m)}) {
        const auto s = robin_spectrum(m, data, 6);
        const auto clusters = cluster_multiplicities(s.eigenvalues);
        const std::vector<MultiplicityCluster> complete(clusters.begin(), clusters.end() - 1);
        ASSERT_GE(complete.size(), 2u);
        EXPECT_EQ(complete[1].first_index, 1);
        EXPECT_EQ(complete[1].dim, 2);
        const auto r = check_bound_in11(complete, disk);
        EXPECT_TRUE(r.pass());
        EXPECT_EQ(r.records.at(0).bound_in1, 3);
    }
    const auto bad = check_bound_in11({{0, 0.0, 1}, {1, 1.0, 4}}, disk);
    EXPECT_EQ(bad.violations, 1);
}
