#include "steklov/embedded_graph.hpp"
#include "steklov/oracle.hpp"

#include <gtest/gtest.h>

#include <random>
#include <sstream>

using namespace steklov;

namespace {

std::vector<int> from_cycles(int n, const std::vector<std::vector<int>>& cycles) {
    std::vector<int> p(n);
    for (int d = 0; d < n; ++d)
        p[d] = d;
    for (const auto& c : cycles)
        for (std::size_t i = 0; i < c.size(); ++i)
            p[c[i]] = c[(i + 1) % c.size()];
    return p;
}

RotationSystem make(int n, const std::vector<std::vector<int>>& sigma, std::optional<int> chi = std::nullopt) {
    std::vector<std::vector<int>> pairs;
    for (int d = 0; d < n; d += 2)
        pairs.push_back({d, d + 1});
    return RotationSystem(from_cycles(n, sigma), from_cycles(n, pairs), {}, chi);
}

RotationSystem theta() { return make(6, {{0, 2, 4}, {1, 5, 3}}); }

} // namespace

TEST(RotationSystem, SingleLoopOnSphere) {
    const auto rs = make(2, {{0, 1}});
    EXPECT_EQ(rs.vertex_count(), 1);
    EXPECT_EQ(rs.edge_count(), 1);
    EXPECT_EQ(face_count(rs), 2);
    EXPECT_EQ(rs.cellular_euler(), 2);
    EXPECT_TRUE(degree_sum_check(rs));
    EXPECT_EQ(rs.degree(0), 2);
}

TEST(RotationSystem, ThetaGraph) {
    const auto rs = theta();
    EXPECT_EQ(rs.vertex_count(), 2);
    EXPECT_EQ(face_count(rs), 3);
    EXPECT_EQ(rs.degree(0), 3);
    EXPECT_EQ(rs.degree(1), 3);
    EXPECT_TRUE(degree_sum_check(rs));
    EXPECT_EQ(euler_defect(rs), 0);
}

TEST(RotationSystem, SingleEdge) {
    const auto rs = make(2, {});
    EXPECT_EQ(rs.vertex_count(), 2);
    EXPECT_EQ(face_count(rs), 1);
}

TEST(RotationSystem, RejectsMalformedPermutations) {
    EXPECT_THROW(RotationSystem({0, 0}, {1, 0}), ParseError);
    EXPECT_THROW(RotationSystem({1, 0}, {0, 1}), ParseError);
    EXPECT_THROW(RotationSystem({1, 0}, {1, 0}, {3}), PreconditionError);
}

TEST(EulerDefect, ThetaMinusEdgeIsACycle) {
    const auto rs = theta();
    const std::vector<bool> keep{true, true, false};
    const auto s = subgraph_faces(rs, keep);
    EXPECT_EQ(s.vertices, 2);
    EXPECT_EQ(s.edges, 2);
    EXPECT_EQ(s.faces, 2);
    EXPECT_EQ(euler_defect(rs, keep), 0);
}

TEST(EulerDefect, NonSeparatingLoopOnTorus) {
    const auto rs = make(4, {{0, 2, 1, 3}});
    ASSERT_EQ(rs.cellular_euler(), 0);
    const std::vector<bool> keep{true, false};
    const auto s = subgraph_faces(rs, keep);
    EXPECT_EQ(s.vertices, 1);
    EXPECT_EQ(s.edges, 1);
    EXPECT_EQ(s.faces, 1);
    EXPECT_EQ(euler_defect(rs, keep), 1);
    // the annular face has two boundary walks
    EXPECT_EQ(traced_subgraph_faces(rs, keep), 2);
}

TEST(EulerDefect, NonNegativeOnRandomSubgraphs) {
    std::mt19937_64 rng(3);
    for (int c = 0; c < 300; ++c) {
        const auto rs = random_rotation_system(rng);
        ASSERT_EQ(euler_defect(rs), 0);
        std::vector<bool> keep(rs.edge_count());
        for (int e = 0; e < rs.edge_count(); ++e)
            keep[e] = rng() % 2;
        if (std::none_of(keep.begin(), keep.end(), [](bool b) { return b; }))
            continue;
        EXPECT_GE(euler_defect(rs, keep), 0);
    }
}

TEST(EulerDefect, SubdivisionKeepsEuler) {
    std::mt19937_64 rng(5);
    for (int c = 0; c < 100; ++c) {
        const auto rs = random_rotation_system(rng);
        const auto sub = subdivide(rs, static_cast<int>(rng() % rs.edge_count()));
        EXPECT_EQ(sub.vertex_count(), rs.vertex_count() + 1);
        EXPECT_EQ(sub.edge_count(), rs.edge_count() + 1);
        EXPECT_EQ(sub.cellular_euler(), rs.cellular_euler());
    }
}

TEST(DegreeSum, LargeRandomGraph) {
    std::mt19937_64 rng(9);
    RandomGraphOptions opt;
    opt.min_vertices = opt.max_vertices = 20;
    opt.max_extra_edges = 31;
    for (int c = 0; c < 10; ++c)
        EXPECT_TRUE(degree_sum_check(random_rotation_system(rng, opt)));
}

TEST(Gamma, LoopAndTwoBoundaryArcs) {
    const auto base = make(6, {{0, 1, 2, 4}});
    const auto rs = with_marks(base, {base.vertex_of(3), base.vertex_of(5)});
    const auto gd = gamma_decompose(rs, base.vertex_of(0));
    EXPECT_EQ(gd.deg1, 2);
    EXPECT_EQ(gd.deg2, 2);
    EXPECT_TRUE(gd.a2);
    EXPECT_TRUE(gd.gamma2_tree);
}

TEST(Gamma, TwoLoops) {
    const auto rs = make(4, {{0, 1, 2, 3}});
    const auto gd = gamma_decompose(rs, 0);
    EXPECT_EQ(gd.deg1, 4);
    EXPECT_EQ(gd.deg2, 0);
}

TEST(Gamma, ThetaWithPendantMatchesBruteForce) {
    // theta between x and y plus an edge from x to a mark
    const auto base = make(8, {{0, 2, 4, 6}, {1, 5, 3}});
    const auto rs = with_marks(base, {base.vertex_of(7)});
    const int x = rs.vertex_of(0);
    const auto gd = gamma_decompose(rs, x);
    const auto brute = oracle::brute_gamma(rs, x);
    EXPECT_EQ(gd.gamma1, brute.gamma1);
    EXPECT_EQ(gd.gamma2, brute.gamma2);
    EXPECT_EQ(gd.deg1, 3);
    EXPECT_EQ(gd.deg2, 1);
}

TEST(Gamma, RejectsDanglingEdge) {
    // edge from x to an unmarked leaf
    const auto rs = make(4, {{0, 1, 2}});
    EXPECT_THROW(gamma_decompose(rs, 0), PreconditionError);
}

TEST(LemmaDegree, OneLoopOneMarkIsRejected) {
    const auto base = make(4, {{0, 1, 2}});
    const auto rs = with_marks(base, {base.vertex_of(3)});
    const auto r = lemma_l22_check(rs, base.vertex_of(0), 1, 2);
    EXPECT_FALSE(r.precondition_met);
    EXPECT_FALSE(r.rejection.empty());
    EXPECT_FALSE(r.violation());
}

TEST(LemmaDegree, LoopSeparatingTwoMarks) {
    const auto base = make(6, {{0, 2, 1, 4}});
    ASSERT_EQ(base.cellular_euler(), 2);
    const auto rs = with_marks(base, {base.vertex_of(3), base.vertex_of(5)});
    const auto r = lemma_l22_check(rs, base.vertex_of(0), 2, 2);
    EXPECT_TRUE(r.precondition_met) << r.rejection;
    EXPECT_EQ(r.deg1, 2);
    EXPECT_EQ(r.bound, 2);
    EXPECT_TRUE(r.pass);
}

TEST(LemmaDegree, ExhaustiveSmallSweep) {
    int checked = 0;
    for (int edges = 1; edges <= 3; ++edges) {
        for (const auto& base : enumerate_rotation_systems(edges)) {
            for (int mark = 0; mark < base.vertex_count(); ++mark) {
                const auto rs = with_marks(base, {mark});
                for (int x = 0; x < rs.vertex_count(); ++x)
                    for (int chi_bar : {2, 1, 0}) {
                        const auto r = lemma_l22_check(rs, x, 1, chi_bar);
                        EXPECT_FALSE(r.violation());
                        checked += r.precondition_met;
                    }
            }
        }
    }
    EXPECT_GT(checked, 0);
}

TEST(TextFormat, RoundTrip) {
    const auto base = theta();
    const auto rs = with_marks(base, {1}, 2);
    std::stringstream s;
    write_rotation_system(s, rs);
    const auto back = read_rotation_system(s);
    EXPECT_EQ(back.sigma(), rs.sigma());
    EXPECT_EQ(back.alpha(), rs.alpha());
    EXPECT_EQ(back.marked_vertices(), rs.marked_vertices());
    EXPECT_EQ(back.surface_euler(), 2);
}

TEST(TextFormat, ParseErrors) {
    auto parse = [](const std::string& text) {
        std::istringstream in(text);
        return read_rotation_system(in);
    };
    EXPECT_NO_THROW(parse("# loop\nDARTS 2\nSIGMA (0 1)\nALPHA (0 1)\nMARKS\n"));
    EXPECT_THROW(parse("DARTS 2\nSIGMA (0 1\nALPHA (0 1)\n"), ParseError);
    EXPECT_THROW(parse("DARTS 2\nSIGMA (0 1)\n"), ParseError);
    EXPECT_THROW(parse("DARTS 2\nSIGMA (0 1)\nALPHA (0 1)\nFOO\n"), ParseError);
    EXPECT_THROW(parse("DARTS 2\nSIGMA (0 1)\nALPHA (0)\n"), ParseError);
}
