#include "steklov/generators.hpp"
#include "steklov/mesh.hpp"
#include "steklov/mesh_io.hpp"

#include <gtest/gtest.h>

#include <sstream>

using namespace steklov;

namespace {

SurfaceMesh two_triangles() {
    return SurfaceMesh({Point(0, 0, 0), Point(1, 0, 0), Point(1, 1, 0), Point(0, 1, 0)}, {{0, 1, 2}, {0, 2, 3}});
}

} // namespace

TEST(Mesh, SquareOfTwoTriangles) {
    const auto m = two_triangles();
    EXPECT_EQ(m.vertex_count(), 4);
    EXPECT_EQ(m.edge_count(), 5);
    EXPECT_EQ(m.boundary_edges().size(), 4u);
    const auto t = topology(m);
    EXPECT_EQ(t.euler_char, 1);
    EXPECT_EQ(t.boundary_count, 1);
    EXPECT_EQ(t.reduced_euler, 2);
    EXPECT_TRUE(t.orientable);
    EXPECT_TRUE(is_disk(t));
}

TEST(Mesh, RejectsDuplicateTriangle) {
    EXPECT_THROW(SurfaceMesh({Point(0, 0, 0), Point(1, 0, 0), Point(0, 1, 0)}, {{0, 1, 2}, {0, 1, 2}}), MeshError);
}

TEST(Mesh, RejectsDegenerateTriangle) {
    EXPECT_THROW(SurfaceMesh({Point(0, 0, 0), Point(1, 0, 0), Point(2, 0, 0)}, {{0, 1, 2}}), MeshError);
    EXPECT_THROW(SurfaceMesh({Point(0, 0, 0), Point(1, 0, 0), Point(0, 1, 0)}, {{0, 1, 1}}), MeshError);
}

TEST(Mesh, RejectsUnusedVertex) {
    EXPECT_THROW(SurfaceMesh({Point(0, 0, 0), Point(1, 0, 0), Point(0, 1, 0), Point(5, 5, 0)}, {{0, 1, 2}}), MeshError);
}

TEST(Mesh, RejectsBowtie) {
    // two triangles sharing only a vertex
    EXPECT_THROW(SurfaceMesh({Point(0, 0, 0), Point(1, 0, 0), Point(0, 1, 0), Point(-1, 0, 0), Point(0, -1, 0)},
                             {{0, 1, 2}, {0, 3, 4}}),
                 MeshError);
}

TEST(Generators, DiskTopology) {
    for (int r = 1; r <= 3; ++r) {
        const auto t = topology(make_disk(1.0, r));
        EXPECT_EQ(t.euler_char, 1);
        EXPECT_EQ(t.boundary_count, 1);
        EXPECT_TRUE(is_disk(t));
    }
}

TEST(Generators, AnnulusTopology) {
    const auto m = make_annulus(0.5, 1.0, 2);
    const auto t = topology(m);
    EXPECT_EQ(t.euler_char, 0);
    EXPECT_EQ(t.boundary_count, 2);
    EXPECT_EQ(t.reduced_euler, 2);
    EXPECT_FALSE(is_disk(t));
    const auto lengths = m.boundary_lengths();
    ASSERT_EQ(lengths.size(), 2u);
    const double total = lengths[0] + lengths[1];
    EXPECT_NEAR(total, 3.0 * M_PI, 0.05);
}

TEST(Generators, MobiusTopology) {
    const auto t = topology(make_mobius(2.0 * M_PI, 1.0, 2));
    EXPECT_EQ(t.euler_char, 0);
    EXPECT_EQ(t.boundary_count, 1);
    EXPECT_EQ(t.reduced_euler, 1);
    EXPECT_FALSE(t.orientable);
    EXPECT_EQ(t.genus, 1);
}

TEST(Generators, SquareBoundaryLength) {
    const auto m = make_square(2.0, 2);
    EXPECT_NEAR(m.boundary_lengths().at(0), 8.0, 1e-12);
}

TEST(Generators, RejectsBadParameters) {
    EXPECT_THROW(make_disk(-1.0, 2), PreconditionError);
    EXPECT_THROW(make_annulus(1.0, 0.5, 2), PreconditionError);
    EXPECT_THROW(make_mobius(1.0, 0.0, 2), PreconditionError);
}

TEST(MeshIo, RoundTrip) {
    const auto m = make_mobius(2.0 * M_PI, 1.0, 1);
    std::stringstream s;
    write_mesh(s, m);
    const auto back = read_mesh(s);
    EXPECT_EQ(back.mesh.vertex_count(), m.vertex_count());
    EXPECT_EQ(back.mesh.triangle_count(), m.triangle_count());
    EXPECT_EQ(topology(back.mesh).orientable, false);
    for (int v = 0; v < m.vertex_count(); ++v)
        EXPECT_EQ(back.mesh.position(v), m.position(v));
}

TEST(MeshIo, ReadsSections) {
    std::istringstream in("# unit square\nSMESH 1\n4 4 2\n0 0\n1 0\n1 1\n0 1\n0 1 2\n0 2 3\nRHO\n1\n2\n3\n4\n");
    const auto l = read_mesh(in);
    ASSERT_TRUE(l.rho);
    EXPECT_EQ(l.rho->size(), 4u);
    EXPECT_DOUBLE_EQ((*l.rho)[3], 4.0);
    EXPECT_FALSE(l.robin);
}

TEST(MeshIo, ParseErrorsCarryLineNumbers) {
    auto fails_at = [](const std::string& text, int line) {
        std::istringstream in(text);
        try {
            read_mesh(in);
        } catch (const ParseError& e) {
            EXPECT_EQ(e.line(), line) << e.what();
            return;
        }
        ADD_FAILURE() << "no parse error for:\n" << text;
    };
    fails_at("SMESH 2\n", 1);
    fails_at("SMESH 1\n3 3\n", 2);
    fails_at("SMESH 1\n3 3 1\n0 0\n1 x\n0 1\n0 1 2\n", 4);
    fails_at("SMESH 1\n3 3 1\n0 0\n1 0\n0 1\n0 1 7\n", 6);
    fails_at("SMESH 1\n3 3 1\n0 0\n1 0\n0 1\n0 1 2\nBOGUS\n", 7);
}

TEST(MeshIo, BoundaryEdgeCountChecked) {
    std::istringstream in("SMESH 1\n3 5 1\n0 0\n1 0\n0 1\n0 1 2\n");
    EXPECT_THROW(read_mesh(in), MeshError);
}
