#include "steklov/fem.hpp"
#include "steklov/generators.hpp"
#include "steklov/nodal.hpp"
#include "steklov/solver.hpp"
#include "steklov/spectrum.hpp"

#include <gtest/gtest.h>

#include <cmath>
#include <complex>
#include <functional>
#include <random>

using namespace steklov;

namespace {

Eigen::VectorXd interpolate(const SurfaceMesh& m, const std::function<double(double, double)>& f) {
    Eigen::VectorXd u(m.vertex_count());
    for (int v = 0; v < m.vertex_count(); ++v)
        u[v] = f(m.position(v).x(), m.position(v).y());
    return u;
}

// r^n cos(n theta) or r^n sin(n theta)
Eigen::VectorXd harmonic(const SurfaceMesh& m, int n, bool sine) {
    return interpolate(m, [n, sine](double x, double y) {
        const auto z = std::pow(std::complex<double>(x, y), n);
        return sine ? z.imag() : z.real();
    });
}

const SurfaceMesh& fine_disk() {
    static const SurfaceMesh m = make_disk(1.0, 4);
    return m;
}

} // namespace

TEST(NodalDomains, Constant) {
    const auto m = make_disk(1.0, 2);
    EXPECT_EQ(nodal_domains(m, Eigen::VectorXd::Ones(m.vertex_count()), 1e-9).count, 1);
}

TEST(NodalDomains, LinearFunctionOnDisk) {
    const auto m = make_disk(1.0, 3);
    EXPECT_EQ(nodal_domains(m, harmonic(m, 1, false), 1e-9).count, 2);
}

TEST(NodalDomains, QuadrantsOfSquare) {
    const auto m = make_square(2.0, 3);
    EXPECT_EQ(nodal_domains(m, interpolate(m, [](double x, double y) { return (x - 1.0) * (y - 1.0); }), 1e-9).count, 4);
}

TEST(NodalDomains, InvariantUnderScalingAndSignFlip) {
    const auto& m = fine_disk();
    const auto u = harmonic(m, 3, true);
    const int f = nodal_domains(m, u, 1e-9).count;
    EXPECT_EQ(f, 6);
    EXPECT_EQ(nodal_domains(m, -u, 1e-9).count, f);
    EXPECT_EQ(nodal_domains(m, 1e6 * u, 1e-9).count, f);
    EXPECT_EQ(nodal_domains(m, -0.003 * u, 1e-9).count, f);
}

TEST(NodalDomains, RejectsZeroFunction) {
    const auto m = make_disk(1.0, 1);
    EXPECT_THROW(nodal_domains(m, Eigen::VectorXd::Zero(m.vertex_count()), 1e-9), PreconditionError);
}

TEST(NodalGraph, ThreeDiameters) {
    const auto& m = fine_disk();
    const auto g = extract_nodal_graph(m, harmonic(m, 3, false));
    ASSERT_EQ(g.interior_vertices.size(), 1u);
    EXPECT_EQ(g.interior_vertices[0].degree, 6);
    EXPECT_LT(g.interior_vertices[0].position.norm(), 0.1);
    EXPECT_EQ(g.boundary_endpoints.size(), 6u);
    EXPECT_EQ(g.loop_count(), 0);
    EXPECT_TRUE(g.issues().empty());

    const auto r = reduce_graph(g, m);
    EXPECT_EQ(r.v, 2);
    EXPECT_EQ(r.e, 6);
    EXPECT_EQ(r.f, 6);
    EXPECT_EQ(r.euler(), 2);

    const auto lemma = lemma_bounds_check(r, topology(m), {3});
    EXPECT_TRUE(lemma.pass);
    EXPECT_EQ(lemma.sum_bound, 4);
    ASSERT_EQ(lemma.vertices.size(), 1u);
    EXPECT_EQ(lemma.vertices[0].bound, 6);
    EXPECT_EQ(lemma.vertices[0].margin, 0);
}

TEST(NodalGraph, TwoCrossedDiameters) {
    const auto& m = fine_disk();
    const auto g = extract_nodal_graph(m, harmonic(m, 2, false));
    const auto r = reduce_graph(g, m);
    EXPECT_EQ(r.f, 4);
    const auto lemma = lemma_bounds_check(r, topology(m), {2});
    EXPECT_EQ(lemma.sum_bound, 3);
    EXPECT_EQ(lemma.vertices.at(0).margin, 0);
}

TEST(NodalGraph, HarmonicOracleUpToFive) {
    const auto& m = fine_disk();
    for (int n = 1; n <= 5; ++n) {
        for (bool sine : {false, true}) {
            const auto u = harmonic(m, n, sine);
            const auto g = extract_nodal_graph(m, u);
            const auto r = reduce_graph(g, m);
            EXPECT_EQ(r.f, 2 * n) << "n=" << n;
            EXPECT_EQ(g.boundary_endpoints.size(), static_cast<std::size_t>(2 * n));
            EXPECT_EQ(g.loop_count(), 0);
            EXPECT_EQ(r.euler(), 2);
            if (n >= 2) {
                ASSERT_EQ(g.interior_vertices.size(), 1u) << "n=" << n;
                EXPECT_EQ(g.interior_vertices[0].degree, 2 * n);
                EXPECT_EQ(estimate_order(m, u, Point::Zero(), 0.5, n + 2).order, n);
            }
        }
    }
}

TEST(NodalGraph, SingleDiameterFromEigenfunction) {
    const auto m = make_disk(1.0, 4);
    const auto s = steklov_spectrum(m, BoundaryDensity::constant(m), 3);
    const auto g = extract_nodal_graph(m, s.extensions.col(1));
    EXPECT_TRUE(g.interior_vertices.empty());
    EXPECT_EQ(g.arcs.size(), 1u);
    EXPECT_EQ(g.boundary_endpoints.size(), 2u);
    const auto r = reduce_graph(g, m);
    EXPECT_EQ(r.v, 1);
    EXPECT_EQ(r.e, 1);
    EXPECT_EQ(r.f, 2);
    EXPECT_TRUE(lemma_bounds_check(r, topology(m), {}).pass);
}

TEST(NodalGraph, LineAcrossSquare) {
    const auto m = make_square(1.0, 3);
    const auto g = extract_nodal_graph(m, interpolate(m, [](double x, double) { return x - 0.37; }));
    EXPECT_EQ(g.arcs.size(), 1u);
    EXPECT_EQ(g.boundary_endpoints.size(), 2u);
    EXPECT_TRUE(g.interior_vertices.empty());
}

TEST(NodalGraph, EmptyForSignedFunction) {
    const auto m = make_disk(1.0, 2);
    const auto g = extract_nodal_graph(m, Eigen::VectorXd::Constant(m.vertex_count(), 2.0));
    EXPECT_TRUE(g.empty());
    const auto r = reduce_graph(g, m);
    EXPECT_EQ(r.f, 1);
    EXPECT_EQ(r.v, 0);
    EXPECT_EQ(r.e, 0);
}

TEST(NodalGraph, ClosedCurveHasNoVertex) {
    const auto m = make_disk(1.0, 3);
    const auto g = extract_nodal_graph(m, interpolate(m, [](double x, double y) { return x * x + y * y - 0.25; }));
    EXPECT_TRUE(g.arcs.empty());
    EXPECT_EQ(g.cycles.size(), 1u);
    EXPECT_EQ(reduce_graph(g, m).f, 2);
}

TEST(Order, Examples) {
    const auto& m = fine_disk();
    EXPECT_EQ(estimate_order(m, harmonic(m, 3, true), Point::Zero(), 0.5, 5).order, 3);
    const auto shifted = interpolate(m, [](double x, double) { return 1.0 + x; });
    EXPECT_EQ(estimate_order(m, shifted, Point::Zero(), 0.5, 5).order, 0);
    const Eigen::VectorXd mixed = harmonic(m, 2, false) + 0.05 * harmonic(m, 3, true);
    EXPECT_EQ(estimate_order(m, mixed, Point::Zero(), 0.5, 5).order, 2);
}

TEST(Order, RejectsTooFewSamples) {
    const auto m = make_disk(1.0, 1);
    EXPECT_THROW(estimate_order(m, harmonic(m, 1, false), Point::Zero(), 0.05, 4), PreconditionError);
}

TEST(Combination, PicksQuadraticMember) {
    const auto& m = fine_disk();
    const std::vector<Eigen::VectorXd> basis{Eigen::VectorXd::Ones(m.vertex_count()), harmonic(m, 1, false),
                                             harmonic(m, 1, true), harmonic(m, 2, false)};
    const auto c = high_order_combination(m, basis, Point::Zero(), 2, 0.5);
    EXPECT_TRUE(c.hypothesis_met);
    EXPECT_NEAR(std::abs(c.alpha[3]), 1.0, 1e-8);
    EXPECT_LT(c.residual, 1e-8);
}

TEST(Combination, KillsConstant) {
    const auto& m = fine_disk();
    const std::vector<Eigen::VectorXd> basis{Eigen::VectorXd::Ones(m.vertex_count()), harmonic(m, 1, false)};
    const auto c = high_order_combination(m, basis, Point::Zero(), 1, 0.5);
    EXPECT_NEAR(c.alpha[0], 0.0, 1e-10);
    EXPECT_NEAR(std::abs(c.alpha[1]), 1.0, 1e-10);
}

TEST(Combination, RandomHarmonicBasis) {
    const auto& m = fine_disk();
    std::mt19937 rng(11);
    std::normal_distribution<double> normal;
    for (int n = 1; n <= 4; ++n) {
        std::vector<Eigen::VectorXd> basis;
        for (int j = 0; j < 2 * n; ++j) {
            Eigen::VectorXd u = Eigen::VectorXd::Zero(m.vertex_count());
            for (int i = 0; i <= 2 * n; ++i)
                for (bool sine : {false, true})
                    if (i > 0 || !sine)
                        u += normal(rng) * harmonic(m, i, sine);
            basis.push_back(u);
        }
        const auto c = high_order_combination(m, basis, Point::Zero(), n, 0.5);
        EXPECT_LE(c.residual, 1e-6 * c.matrix_norm) << "n=" << n;
        EXPECT_GE(estimate_order(m, combine(basis, c.alpha), Point::Zero(), 0.5, 2 * n + 2).order, n);
    }
}

TEST(Combination, FlagsSmallBasis) {
    const auto& m = fine_disk();
    const auto c = high_order_combination(m, {harmonic(m, 1, false)}, Point::Zero(), 2, 0.5);
    EXPECT_FALSE(c.hypothesis_met);
}

TEST(Courant, DiskEigenfunctions) {
    const auto m = make_disk(1.0, 3);
    const auto s = steklov_spectrum(m, BoundaryDensity::constant(m), 12);
    const auto clusters = cluster_multiplicities(s);
    const std::vector<MultiplicityCluster> complete(clusters.begin(), clusters.end() - 1);
    const auto r = courant_check(m, s, complete, fem_zero_tol(m));
    EXPECT_TRUE(r.pass());
    EXPECT_EQ(r.entries.at(0).domains, 1);
    EXPECT_EQ(r.entries.at(1).domains, 2);

    // any combination inside the first nonzero cluster is a rotated diameter
    const Eigen::VectorXd u = 0.6 * s.extensions.col(1) - 0.8 * s.extensions.col(2);
    EXPECT_LE(nodal_domains(m, u, fem_zero_tol(m)).count, 2);
}

TEST(RotationFamily, CrossedDiameters) {
    const auto& m = fine_disk();
    const auto r = rotation_family(m, harmonic(m, 2, true), harmonic(m, 2, false), 2, 8);
    EXPECT_TRUE(r.precondition_met);
    EXPECT_TRUE(r.constant_structure);
    ASSERT_EQ(r.steps.size(), 8u);
    for (const auto& s : r.steps) {
        EXPECT_EQ(s.interior_vertices, 1);
        EXPECT_EQ(s.max_degree, 4);
        EXPECT_EQ(s.arcs, 4);
        EXPECT_EQ(s.loops, 0);
    }
}

TEST(RotationFamily, SingleStepAndMissingVertex) {
    const auto& m = fine_disk();
    const auto one = rotation_family(m, harmonic(m, 2, true), harmonic(m, 2, false), 2, 1);
    ASSERT_EQ(one.steps.size(), 1u);
    EXPECT_EQ(one.steps[0].t, 0.0);
    const auto flat = rotation_family(m, harmonic(m, 1, false), harmonic(m, 1, true), 2, 3);
    EXPECT_FALSE(flat.precondition_met);
    EXPECT_EQ(flat.steps.size(), 3u);
}
