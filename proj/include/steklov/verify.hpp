#pragma once

// Acceptance suites. Each suite runs end to end and yields one pass/fail line.

#include "steklov/embedded_graph.hpp"
#include "steklov/fem.hpp"
#include "steklov/generators.hpp"
#include "steklov/nodal.hpp"
#include "steklov/oracle.hpp"
#include "steklov/parallel.hpp"
#include "steklov/robin.hpp"
#include "steklov/solver.hpp"
#include "steklov/spectrum.hpp"

#include <chrono>
#include <complex>
#include <tuple>
#include <cmath>
#include <cstdio>
#include <functional>
#include <numbers>
#include <random>
#include <sstream>
#include <string>
#include <vector>

namespace steklov {

struct CriterionResult {
    int id = 0;
    std::string suite;
    bool pass = false;
    std::string detail;
    double seconds = 0.0;
};

namespace verify_detail {

inline std::string printf_string(const char* format, auto... args) {
    char buf[512];
    std::snprintf(buf, sizeof buf, format, args...);
    return buf;
}

struct Timer {
    std::chrono::steady_clock::time_point start = std::chrono::steady_clock::now();
    double seconds() const { return std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count(); }
};

inline Eigen::VectorXd sample(const SurfaceMesh& mesh, const std::function<double(double, double)>& f) {
    Eigen::VectorXd u(mesh.vertex_count());
    for (int v = 0; v < mesh.vertex_count(); ++v)
        u[v] = f(mesh.position(v).x(), mesh.position(v).y());
    return u;
}

/// r^n cos(n theta) (or sin) as a polynomial in x, y.
inline double harmonic(int n, bool sine, double x, double y) {
    std::complex<double> z(x, y), p(1.0, 0.0);
    for (int i = 0; i < n; ++i)
        p *= z;
    return sine ? p.imag() : p.real();
}

struct Geometry {
    std::string name;
    SurfaceMesh mesh;
};

/// The four acceptance geometries at the resolution used for bounds and Courant.
inline std::vector<Geometry> acceptance_geometries() {
    std::vector<Geometry> g;
    g.push_back({"disk", make_disk(1.0, 4)});
    g.push_back({"annulus", make_annulus(0.5, 1.0, 3)});
    g.push_back({"mobius", make_mobius(2.0 * std::numbers::pi, 1.0, 12)});
    g.push_back({"square", make_square(1.0, 4)});
    return g;
}

} // namespace verify_detail

/// Unit disk, rho = 1, 12929 vertices: first 11 eigenvalues against 0,1,1,2,2,...
inline CriterionResult verify_disk_spectrum() {
    using namespace verify_detail;
    Timer timer;
    CriterionResult r{1, "disk-spectrum", false, {}, 0.0};
    const auto mesh = make_disk(1.0, 5);
    const auto spec = steklov_spectrum(mesh, BoundaryDensity::constant(mesh), 11);
    const auto exact = oracle::disk_steklov(11);
    double worst = 0.0;
    for (int j = 1; j < 11; ++j)
        worst = std::max(worst, std::abs(spec.eigenvalues[j] - exact[static_cast<std::size_t>(j)]) / exact[static_cast<std::size_t>(j)]);
    const double s0 = std::abs(spec.eigenvalues[0]);
    r.seconds = timer.seconds();
    r.pass = mesh.vertex_count() >= 5000 && s0 <= 1e-6 && worst <= 0.01 && r.seconds <= 60.0;
    r.detail = printf_string("%d vertices, |sigma_0| = %.1e (tol 1e-6), max rel err sigma_1..10 = %.2e (tol 1e-2), %.1fs (limit 60s)",
                             mesh.vertex_count(), s0, worst, r.seconds);
    return r;
}

/// Annulus (0.5, 1): first 8 eigenvalues against the separated-variables roots.
inline CriterionResult verify_annulus_spectrum() {
    using namespace verify_detail;
    Timer timer;
    CriterionResult r{2, "annulus-spectrum", false, {}, 0.0};
    const auto mesh = make_annulus(0.5, 1.0, 4);
    const auto spec = steklov_spectrum(mesh, BoundaryDensity::constant(mesh), 8);
    const auto exact = oracle::annulus_steklov(8, 0.5);
    double worst = 0.0;
    for (int j = 0; j < 8; ++j) {
        const double e = exact[static_cast<std::size_t>(j)];
        const double err = e == 0.0 ? std::abs(spec.eigenvalues[j]) : std::abs(spec.eigenvalues[j] - e) / e;
        worst = std::max(worst, err);
    }
    r.seconds = timer.seconds();
    r.pass = worst <= 0.01 && r.seconds <= 60.0;
    r.detail = printf_string("%d vertices, max rel err over 8 eigenvalues = %.2e (tol 1e-2; abs for sigma_0), %.1fs (limit 60s)",
                             mesh.vertex_count(), worst, r.seconds);
    return r;
}

/// Multiplicity bounds on disk, annulus, Mobius band and square for k <= 15.
inline CriterionResult verify_bounds() {
    using namespace verify_detail;
    Timer timer;
    CriterionResult r{3, "bounds", false, {}, 0.0};
    int violations = 0, checked = 0;
    std::string per;
    for (const auto& g : acceptance_geometries()) {
        const auto topo = topology(g.mesh);
        const auto spec = steklov_spectrum(g.mesh, BoundaryDensity::constant(g.mesh), 28);
        auto clusters = cluster_multiplicities(spec);
        clusters.pop_back(); // the top cluster may be cut off by the count
        const auto report = check_bounds(clusters, topo, is_disk(topo), 15);
        violations += report.violations;
        checked += static_cast<int>(report.records.size());
        int max_m = 0;
        for (const auto& rec : report.records)
            max_m = std::max(max_m, rec.m);
        per += printf_string(" %s(chi_bar=%d,l=%d,max m=%d,viol=%d)", g.name.c_str(), topo.reduced_euler,
                             topo.boundary_count, max_m, report.violations);
    }
    r.seconds = timer.seconds();
    r.pass = violations == 0 && checked > 0;
    r.detail = printf_string("%d clusters with 1 <= k <= 15, %d violations;", checked, violations) + per;
    return r;
}

/// Nodal domain counts of Steklov and Robin eigenfunctions against k + 1.
inline CriterionResult verify_courant() {
    using namespace verify_detail;
    Timer timer;
    CriterionResult r{4, "courant", false, {}, 0.0};
    int violations = 0, checked = 0;
    std::string per;
    auto run = [&](const std::string& name, const SurfaceMesh& mesh, const Eigen::MatrixXd& funcs,
                   const Eigen::VectorXd& eigs) {
        auto clusters = cluster_multiplicities(eigs);
        clusters.pop_back();
        std::vector<CourantReport> parts(clusters.size());
        const double tol = fem_zero_tol(mesh);
        parallel_for(static_cast<int>(clusters.size()), [&](int c) {
            parts[static_cast<std::size_t>(c)] = courant_check(mesh, funcs, {clusters[static_cast<std::size_t>(c)]}, tol);
        });
        int v = 0, n = 0;
        for (const auto& p : parts) {
            v += p.violations;
            n += static_cast<int>(p.entries.size());
        }
        violations += v;
        checked += n;
        per += printf_string(" %s(%d/%d)", name.c_str(), n - v, n);
    };
    for (const auto& g : acceptance_geometries()) {
        const auto spec = steklov_spectrum(g.mesh, BoundaryDensity::constant(g.mesh), 20);
        run("steklov-" + g.name, g.mesh, spec.extensions, spec.eigenvalues);
    }
    const auto disk = make_disk(1.0, 3);
    const auto square = make_square(std::numbers::pi, 3);
    for (const auto& [name, mesh, data] :
         {std::tuple{std::string("dirichlet-disk"), disk, RobinData::dirichlet(disk)},
          std::tuple{std::string("neumann-disk"), disk, RobinData::neumann(disk)},
          std::tuple{std::string("robin-disk"), disk, RobinData::robin(disk, 2.0)},
          std::tuple{std::string("neumann-square"), square, RobinData::neumann(square)}}) {
        const auto spec = robin_spectrum(mesh, data, 20);
        run(name, mesh, spec.eigenvectors, spec.eigenvalues);
    }
    r.seconds = timer.seconds();
    r.pass = violations == 0 && checked > 0;
    r.detail = printf_string("%d eigenfunctions, %d with more than k+1 domains (zero band 10 h^2 max|u|);", checked,
                             violations) + per;
    return r;
}

/// Round disk pair gaps and the perturbed-density disk cluster dimensions.
inline CriterionResult verify_pairing() {
    using namespace verify_detail;
    Timer timer;
    CriterionResult r{5, "pairing", false, {}, 0.0};
    const auto mesh = make_disk(1.0, 4);
    const auto topo = topology(mesh);
    const auto round = steklov_spectrum(mesh, BoundaryDensity::constant(mesh), 11);
    const auto pr = disk_pairing(round.eigenvalues, cluster_multiplicities(round), topo);
    double worst_gap = 0.0;
    for (std::size_t k = 0; k < 5 && k < pr.relative_gaps.size(); ++k)
        worst_gap = std::max(worst_gap, pr.relative_gaps[k]);
    const auto bumpy = steklov_spectrum(mesh, BoundaryDensity::cosine(mesh, 0.3), 21);
    auto clusters = cluster_multiplicities(bumpy);
    clusters.pop_back();
    const auto pb = disk_pairing(bumpy.eigenvalues, clusters, topo);
    r.seconds = timer.seconds();
    r.pass = worst_gap < 1e-6 && pb.max_dim_above_first <= 2;
    r.detail = printf_string("round disk max rel pair gap k<=5 = %.1e (tol 1e-6); rho = 1+0.3cos: max cluster dim "
                             "beyond first = %d (limit 2)",
                             worst_gap, pb.max_dim_above_first);
    return r;
}

/// Weyl residuals on disk and annulus over the first 40 eigenvalues.
inline CriterionResult verify_weyl() {
    using namespace verify_detail;
    Timer timer;
    CriterionResult r{6, "weyl", false, {}, 0.0};
    bool ok = true;
    std::string per;
    for (const auto& [name, mesh] :
         {std::pair{std::string("disk"), make_disk(1.0, 4)}, std::pair{std::string("annulus"), make_annulus(0.5, 1.0, 3)}}) {
        const auto rho = BoundaryDensity::constant(mesh);
        const auto spec = steklov_spectrum(mesh, rho, 40);
        const auto w = weyl_residual(spec.eigenvalues, weighted_boundary_length(mesh, rho));
        const bool pass = w.max_abs_residual <= 3.0 && std::abs(w.top_half_drift) < 1.0;
        ok = ok && pass;
        per += printf_string(" %s: slope %.4f, slope/(L/2pi) = %.3f, slope/(L/pi) = %.3f, max|R| = %.2f (limit 3), "
                             "top-half drift = %.2f (limit 1);",
                             name.c_str(), w.slope, w.ratio_two_pi(), w.ratio_pi(), w.max_abs_residual, w.top_half_drift);
    }
    r.seconds = timer.seconds();
    r.pass = ok;
    r.detail = per.substr(1);
    return r;
}

/// Interpolants of r^n cos/sin(n theta), n <= 5, on the unit disk.
inline CriterionResult verify_nodal_oracle() {
    using namespace verify_detail;
    Timer timer;
    CriterionResult r{7, "nodal-oracle", false, {}, 0.0};
    const auto mesh = make_disk(1.0, 4);
    const auto topo = topology(mesh);
    bool ok = true;
    std::string failures;
    bool equality_2 = false, equality_3 = false;
    for (int n = 1; n <= 5; ++n)
        for (bool sine : {false, true}) {
            const auto u = sample(mesh, [&](double x, double y) { return harmonic(n, sine, x, y); });
            const auto g = extract_nodal_graph(mesh, u);
            const auto red = reduce_graph(g, mesh);
            const auto est = estimate_order(mesh, u, Point::Zero(), 0.3, n + 3);
            std::vector<int> orders;
            for (const auto& iv : g.interior_vertices)
                orders.push_back(iv.order());
            const auto lemma = lemma_bounds_check(red, topo, orders);
            const bool vertex_ok = n == 1 ? g.interior_vertices.empty()
                                          : g.interior_vertices.size() == 1 && g.interior_vertices[0].degree == 2 * n;
            const bool good = vertex_ok && static_cast<int>(g.boundary_endpoints.size()) == 2 * n && g.loop_count() == 0 &&
                              g.cycles.empty() && est.order == n && red.euler() == 2 && red.f == 2 * n && lemma.pass;
            if (!good) {
                ok = false;
                failures += printf_string(" n=%d%s", n, sine ? "s" : "c");
            }
            if (!lemma.vertices.empty() && lemma.vertices[0].margin == 0) {
                equality_2 = equality_2 || n == 2;
                equality_3 = equality_3 || n == 3;
            }
        }
    r.seconds = timer.seconds();
    r.pass = ok && equality_2 && equality_3;
    r.detail = printf_string("%d vertices, n = 1..5 cos/sin: one vertex of degree 2n (none for n=1), 2n boundary ends, "
                             "0 loops, order n, v-e+f = 2, lemma margins >= 0; equality at n=2: %s, n=3: %s",
                             mesh.vertex_count(), equality_2 ? "yes" : "no", equality_3 ? "yes" : "no") +
               (failures.empty() ? "" : "; failed:" + failures);
    return r;
}

/// Random bases of 2n harmonic-polynomial interpolants: a combination vanishing to order n.
inline CriterionResult verify_lemma33(int trials = 120, std::uint64_t seed = 33) {
    using namespace verify_detail;
    Timer timer;
    CriterionResult r{8, "lemma33", false, {}, 0.0};
    const auto mesh = make_disk(1.0, 4);
    std::mt19937_64 rng(seed);
    std::uniform_real_distribution<double> coef(-1.0, 1.0), angle(0.0, 2.0 * std::numbers::pi), radius(0.0, 0.4);
    int failures = 0;
    double worst_ratio = 0.0;
    int lowest_margin = 1 << 20;
    for (int t = 0; t < trials; ++t) {
        const int n = 1 + t % 4;
        const int degree = 2 * n + 1;
        const double rad = radius(rng), ang = angle(rng);
        const Point x(rad * std::cos(ang), rad * std::sin(ang), 0.0);
        std::vector<Eigen::VectorXd> basis;
        for (int j = 0; j < 2 * n; ++j) {
            std::vector<double> c(static_cast<std::size_t>(2 * degree + 1));
            for (double& ci : c)
                ci = coef(rng);
            basis.push_back(sample(mesh, [&](double px, double py) {
                double s = c[0];
                for (int i = 1; i <= degree; ++i)
                    s += c[static_cast<std::size_t>(2 * i - 1)] * harmonic(i, false, px, py) +
                         c[static_cast<std::size_t>(2 * i)] * harmonic(i, true, px, py);
                return s;
            }));
        }
        const auto comb = high_order_combination(mesh, basis, x, n, 0.3);
        const auto u = combine(basis, comb.alpha);
        const auto est = estimate_order(mesh, u, x, 0.3, 2 * n + 2);
        const double ratio = comb.residual / comb.matrix_norm;
        worst_ratio = std::max(worst_ratio, ratio);
        lowest_margin = std::min(lowest_margin, est.order - n);
        if (!(ratio <= 1e-6) || est.order < n || !comb.hypothesis_met)
            ++failures;
    }
    r.seconds = timer.seconds();
    r.pass = failures == 0 && trials >= 100;
    r.detail = printf_string("%d trials (n = 1..4, random centers), %d failures; max residual/norm = %.1e (tol 1e-6), "
                             "min (estimated order - n) = %d",
                             trials, failures, worst_ratio, lowest_margin);
    return r;
}

struct FuzzSummary {
    int cases = 0;
    int degree_sum_failures = 0;
    int negative_defects = 0;
    int full_defect_nonzero = 0;
    int face_count_mismatches = 0; // boundary walks vs face components on connected subgraphs
    int subdivision_failures = 0;
    int non_tree_gamma2 = 0;
    int relation_failures = 0; // (a1), (a2), (a3)
    int lemma_checked = 0;
    int lemma_violations = 0;
    int sweep_cases = 0;
    int sweep_mismatches = 0;
    int sweep_lemma_checked = 0;
    int sweep_lemma_violations = 0;

    bool pass() const {
        return degree_sum_failures == 0 && negative_defects == 0 && full_defect_nonzero == 0 && face_count_mismatches == 0 &&
               subdivision_failures == 0 && non_tree_gamma2 == 0 && relation_failures == 0 && lemma_violations == 0 &&
               sweep_mismatches == 0 && sweep_lemma_violations == 0 && sweep_cases > 0;
    }
};

namespace verify_detail {

inline bool connected_subgraph(const RotationSystem& rs, const std::vector<bool>& keep) {
    DisjointSets sets(rs.vertex_count());
    std::vector<bool> used(rs.vertex_count(), false);
    for (int e = 0; e < rs.edge_count(); ++e)
        if (keep[e]) {
            const auto [a, b] = rs.edge_ends(e);
            sets.unite(a, b);
            used[a] = used[b] = true;
        }
    int root = -1;
    for (int v = 0; v < rs.vertex_count(); ++v)
        if (used[v]) {
            if (root < 0)
                root = sets.find(v);
            else if (sets.find(v) != root)
                return false;
        }
    return root >= 0;
}

} // namespace verify_detail

///
/// Random rotation systems (`cases` of them) plus the exhaustive sweep over all
/// systems with up to four edges, up to three marks and chi_bar in {2, 1, 0}
/// against the brute-force decomposition.
///
inline FuzzSummary graph_fuzz(int cases, std::uint64_t seed, bool sweep = true) {
    using namespace verify_detail;
    FuzzSummary s;
    std::mt19937_64 rng(seed);
    for (int i = 0; i < cases; ++i) {
        const auto rs = random_rotation_system(rng);
        ++s.cases;
        s.degree_sum_failures += degree_sum_check(rs) ? 0 : 1;
        s.full_defect_nonzero += euler_defect(rs) == 0 ? 0 : 1;
        std::vector<bool> keep(static_cast<std::size_t>(rs.edge_count()));
        for (std::size_t e = 0; e < keep.size(); ++e)
            keep[e] = rng() % 2 == 0;
        keep[rng() % keep.size()] = true;
        s.negative_defects += euler_defect(rs, keep) < 0 ? 1 : 0;
        if (connected_subgraph(rs, keep)) {
            const int components = subgraph_faces(rs, keep).faces, walks = traced_subgraph_faces(rs, keep);
            if (walks < components || (euler_defect(rs, keep) == 0 && walks != components))
                ++s.face_count_mismatches;
        }
        const auto sub = subdivide(rs, static_cast<int>(rng() % static_cast<unsigned>(rs.edge_count())));
        if (sub.vertex_count() - sub.edge_count() + face_count(sub) != rs.vertex_count() - rs.edge_count() + face_count(rs))
            ++s.subdivision_failures;
        for (int x = 0; x < rs.vertex_count(); ++x) {
            if (rs.is_marked(x))
                continue;
            try {
                const auto gd = gamma_decompose(rs, x);
                s.non_tree_gamma2 += gd.gamma2_tree ? 0 : 1;
                s.relation_failures += gd.a1 && gd.a2 && gd.a3 ? 0 : 1;
            } catch (const PreconditionError&) {
            }
            const int l = static_cast<int>(rs.marked_vertices().size());
            const auto lr = lemma_l22_check(rs, x, l, rs.cellular_euler());
            s.lemma_checked += lr.precondition_met ? 1 : 0;
            s.lemma_violations += lr.violation() ? 1 : 0;
        }
    }
    if (!sweep)
        return s;
    for (int edges = 1; edges <= 4; ++edges) {
        for (const auto& base : enumerate_rotation_systems(edges)) {
            const int nv = base.vertex_count();
            const int cell_chi = base.cellular_euler();
            for (int mask = 0; mask < (1 << nv); ++mask) {
                if (__builtin_popcount(static_cast<unsigned>(mask)) > 3)
                    continue;
                std::vector<int> marks;
                for (int v = 0; v < nv; ++v)
                    if ((mask >> v) & 1)
                        marks.push_back(v);
                const auto rs = with_marks(base, marks);
                for (int x = 0; x < nv; ++x) {
                    if (rs.is_marked(x))
                        continue;
                    ++s.sweep_cases;
                    const auto brute = oracle::brute_gamma(rs, x);
                    try {
                        const auto gd = gamma_decompose(rs, x);
                        if (!brute.shaped || gd.gamma1 != brute.gamma1 || gd.gamma2 != brute.gamma2)
                            ++s.sweep_mismatches;
                    } catch (const PreconditionError&) {
                        if (brute.shaped)
                            ++s.sweep_mismatches;
                    }
                    for (int chi_bar : {2, 1, 0}) {
                        if (chi_bar > cell_chi)
                            continue;
                        const int l = static_cast<int>(marks.size());
                        const auto lr = lemma_l22_check(rs, x, l, chi_bar);
                        // brute-force verdict: deg of x in the oracle's Gamma_1 against the bound
                        if (lr.precondition_met) {
                            ++s.sweep_lemma_checked;
                            int deg1 = 0;
                            for (int e = 0; e < rs.edge_count(); ++e)
                                if (brute.gamma1[static_cast<std::size_t>(e)]) {
                                    const auto [a, b] = rs.edge_ends(e);
                                    deg1 += (a == x) + (b == x);
                                }
                            if (lr.violation() || deg1 > 2 * l + 2 - 2 * chi_bar || deg1 != lr.deg1)
                                ++s.sweep_lemma_violations;
                        }
                    }
                }
            }
        }
    }
    return s;
}

inline CriterionResult verify_euler_fuzz(int cases = 10000, std::uint64_t seed = 20240901) {
    using namespace verify_detail;
    Timer timer;
    CriterionResult r{9, "euler-fuzz", false, {}, 0.0};
    const auto s = graph_fuzz(cases, seed);
    r.seconds = timer.seconds();
    r.pass = s.pass() && s.cases >= 10000 && r.seconds <= 120.0;
    r.detail = printf_string(
        "%d random cases: degree-sum failures %d, negative defects %d, non-tree gamma2 %d, relation failures %d, "
        "face-count mismatches %d, subdivision failures %d, lemma violations %d/%d checked; sweep <= 4 edges: %d cases, "
        "%d oracle mismatches, %d lemma violations/%d checked; %.1fs (limit 120s)",
        s.cases, s.degree_sum_failures, s.negative_defects, s.non_tree_gamma2, s.relation_failures,
        s.face_count_mismatches, s.subdivision_failures, s.lemma_violations, s.lemma_checked, s.sweep_cases,
        s.sweep_mismatches, s.sweep_lemma_violations, s.sweep_lemma_checked, r.seconds);
    return r;
}

/// Dirichlet disk, Neumann pi-square, constant potential shift and the Robin bound.
inline CriterionResult verify_robin() {
    using namespace verify_detail;
    Timer timer;
    CriterionResult r{10, "robin", false, {}, 0.0};
    const double j01 = oracle::bessel_j0_first_root();
    const auto disk = make_disk(1.0, 3);
    const auto dir = robin_spectrum(disk, RobinData::dirichlet(disk), 16);
    const double dir_err = std::abs(dir.eigenvalues[0] - j01 * j01) / (j01 * j01);

    const auto square = make_square(std::numbers::pi, 3);
    const auto neu = robin_spectrum(square, RobinData::neumann(square), 16);
    const double neu_err = std::abs(neu.eigenvalues[1] - 1.0);
    const auto shifted = robin_spectrum(square, RobinData::neumann(square, 2.5), 16);
    const double shift_err = (shifted.eigenvalues.array() - neu.eigenvalues.array() - 2.5).abs().maxCoeff();

    int violations = 0, checked = 0;
    const auto disk_neu = robin_spectrum(disk, RobinData::neumann(disk), 16);
    const auto disk_rob = robin_spectrum(disk, RobinData::robin(disk, 2.0), 16);
    for (const auto& [mesh, eigs] : {std::pair{&disk, dir.eigenvalues}, std::pair{&disk, disk_neu.eigenvalues},
                                     std::pair{&disk, disk_rob.eigenvalues}, std::pair{&square, neu.eigenvalues}}) {
        auto clusters = cluster_multiplicities(eigs);
        clusters.pop_back();
        const auto rep = check_bound_in11(clusters, topology(*mesh), 10);
        violations += rep.violations;
        checked += static_cast<int>(rep.records.size());
    }
    const bool monotone = (dir.eigenvalues.array() >= disk_neu.eigenvalues.array()).all();
    r.seconds = timer.seconds();
    r.pass = dir_err <= 0.01 && neu_err <= 0.01 && shift_err <= 1e-10 && violations == 0 && checked > 0;
    r.detail = printf_string("Dirichlet disk lambda_1 = %.5f vs j01^2 = %.5f (rel err %.1e, tol 1e-2); Neumann pi-square "
                             "lambda = %.5f vs 1 (err %.1e, tol 1e-2); V=2.5 shift err %.1e (tol 1e-10); bound: %d "
                             "clusters k<=10, %d violations; Dirichlet >= Neumann: %s",
                             dir.eigenvalues[0], j01 * j01, dir_err, neu.eigenvalues[1], neu_err, shift_err, checked,
                             violations, monotone ? "yes" : "no");
    return r;
}

/// Unit square: within-block spread of 4-blocks in the resolved tail.
inline CriterionResult verify_quadruples() {
    using namespace verify_detail;
    Timer timer;
    CriterionResult r{11, "quadruples", false, {}, 0.0};
    const auto mesh = make_square(1.0, 4);
    const auto spec = steklov_spectrum(mesh, BoundaryDensity::constant(mesh), 40);
    const auto q = quadruple_check(mesh, spec.eigenvalues);
    std::string spreads;
    for (std::size_t i = 0; i < q.relative_spreads.size() && i < 6; ++i)
        spreads += printf_string("%s%.1e", i ? " " : "", q.relative_spreads[i]);
    r.seconds = timer.seconds();
    r.pass = q.verdict == Verdict::pass;
    r.detail = printf_string("%d vertices, blocks from index %d, relative spreads [%s ...], %d blocks compared "
                             "(need 3), verdict %s",
                             mesh.vertex_count(), q.offset, spreads.c_str(), q.blocks_compared, to_string(q.verdict)) +
               (q.note.empty() ? "" : " (" + q.note + ")");
    return r;
}

struct SuiteEntry {
    std::string name;
    std::function<CriterionResult()> run;
};

inline const std::vector<SuiteEntry>& acceptance_suites() {
    static const std::vector<SuiteEntry> suites{
        {"disk-spectrum", [] { return verify_disk_spectrum(); }},
        {"annulus-spectrum", [] { return verify_annulus_spectrum(); }},
        {"bounds", [] { return verify_bounds(); }},
        {"courant", [] { return verify_courant(); }},
        {"pairing", [] { return verify_pairing(); }},
        {"weyl", [] { return verify_weyl(); }},
        {"nodal-oracle", [] { return verify_nodal_oracle(); }},
        {"lemma33", [] { return verify_lemma33(); }},
        {"euler-fuzz", [] { return verify_euler_fuzz(); }},
        {"robin", [] { return verify_robin(); }},
        {"quadruples", [] { return verify_quadruples(); }},
    };
    return suites;
}

inline std::string suite_names() {
    std::string out;
    for (const auto& s : acceptance_suites())
        out += (out.empty() ? "" : ", ") + s.name;
    return out;
}

/// Runs one suite by name, or every suite for "all".
inline std::vector<CriterionResult> run_verify(const std::string& name) {
    std::vector<CriterionResult> out;
    for (const auto& s : acceptance_suites())
        if (name == "all" || name == s.name)
            out.push_back(s.run());
    if (out.empty())
        throw PreconditionError("unknown suite '" + name + "'; available: all, " + suite_names());
    return out;
}

inline std::string format_result(const CriterionResult& r) {
    return verify_detail::printf_string("%s  [%2d] %-16s ", r.pass ? "PASS" : "FAIL", r.id, r.suite.c_str()) + r.detail;
}

} // namespace steklov
