#include "steklov/generators.hpp"
#include "steklov/nodal.hpp"
#include "steklov/parallel.hpp"
#include "steklov/report.hpp"

#include <gtest/gtest.h>

#include <atomic>
#include <cstdlib>
#include <sstream>

using namespace steklov;

TEST(Report, SpectrumCsv) {
    Eigen::VectorXd v(3);
    v << 0.0, 1.0, 1.0;
    std::ostringstream out;
    write_spectrum_csv(out, v, cluster_multiplicities(v));
    EXPECT_EQ(out.str(), "index,eigenvalue,cluster_id\n0,0,0\n1,1,1\n2,1,1\n");
}

TEST(Report, RoundTripPrecision) {
    const double x = 0.1 + 0.2;
    EXPECT_EQ(std::stod(fmt(x)), x);
}

TEST(Report, BoundJson) {
    const auto topo = topology(make_disk(1.0, 1));
    const auto r = check_bounds({{1, 1.0, 2}}, topo, true);
    const Json j = to_json(r);
    EXPECT_EQ(j["violations"], 0);
    EXPECT_EQ(j["records"][0]["k"], 1);
    EXPECT_EQ(j["records"][0]["bound_in1"], 3);
    EXPECT_TRUE(j["records"][0]["gap_above"].is_null());
    EXPECT_EQ(j["topology"]["reduced_euler"], 2);
}

TEST(Report, NodalGraphText) {
    const auto m = make_disk(1.0, 3);
    Eigen::VectorXd u(m.vertex_count());
    for (int v = 0; v < m.vertex_count(); ++v)
        u[v] = m.position(v).x() * m.position(v).y();
    const auto g = extract_nodal_graph(m, u);
    std::ostringstream out;
    write_nodal_graph(out, g);
    std::istringstream in(out.str());
    std::string key;
    int iv = 0, be = 0, arcs = 0;
    for (std::string line; std::getline(in, line);) {
        std::istringstream ls(line);
        ls >> key;
        iv += key == "IV";
        be += key == "BE";
        arcs += key == "ARC";
    }
    EXPECT_EQ(iv, 1);
    EXPECT_EQ(be, 4);
    EXPECT_EQ(arcs, 4);

    std::ostringstream svg;
    write_nodal_svg(svg, m, g);
    EXPECT_NE(svg.str().find("<svg"), std::string::npos);
    EXPECT_NE(svg.str().find("<polyline"), std::string::npos);
}

TEST(Parallel, CoversEveryIndexOnce) {
    std::vector<std::atomic<int>> hits(97);
    parallel_for(97, [&](int i) { ++hits[static_cast<std::size_t>(i)]; }, 4);
    for (const auto& h : hits)
        EXPECT_EQ(h.load(), 1);
}

TEST(Parallel, ThreadCountFromEnvironment) {
    setenv("STEKLOV_LAB_THREADS", "3", 1);
    EXPECT_EQ(worker_count(), 3);
    unsetenv("STEKLOV_LAB_THREADS");
    EXPECT_GE(worker_count(), 1);
}
