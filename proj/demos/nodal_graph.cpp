// Nodal graphs of the first few disk eigenfunctions, plus a rotation-system check
// of the same picture.

#include "steklov/embedded_graph.hpp"
#include "steklov/fem.hpp"
#include "steklov/generators.hpp"
#include "steklov/nodal.hpp"
#include "steklov/solver.hpp"

#include <cstdio>

using namespace steklov;

int main() {
    const auto mesh = make_disk(1.0, 4);
    const auto spec = steklov_spectrum(mesh, BoundaryDensity::constant(mesh), 8);
    const auto topo = topology(mesh);
    for (int j = 1; j < 8; j += 2) {
        const auto g = extract_nodal_graph(mesh, spec.extensions.col(j));
        const auto r = reduce_graph(g, mesh);
        std::vector<int> orders;
        for (const auto& v : g.interior_vertices)
            orders.push_back(v.order());
        const auto lemma = lemma_bounds_check(r, topo, orders);
        std::printf("sigma_%d = %.5f  vertices %zu  arcs %zu  domains %d  v-e+f = %d  margins %s\n", j,
                    spec.eigenvalues[j], g.interior_vertices.size(), g.arcs.size(), r.f, r.euler(),
                    lemma.pass ? "ok" : "negative");
    }

    // x with one loop separating two boundary marks: sigma = (0 2 1 4)(3)(5)
    const RotationSystem base({2, 4, 1, 3, 0, 5}, {1, 0, 3, 2, 5, 4});
    const auto rs = with_marks(base, {base.vertex_of(3), base.vertex_of(5)});
    const auto rep = lemma_l22_check(rs, base.vertex_of(0), 2, 2);
    std::printf("rotation system: v=%d e=%d f=%d  deg_gamma1(x)=%d bound %d  %s\n", rs.vertex_count(), rs.edge_count(),
                face_count(rs), rep.deg1, rep.bound,
                rep.precondition_met ? (rep.pass ? "pass" : "violation") : rep.rejection.c_str());
}
