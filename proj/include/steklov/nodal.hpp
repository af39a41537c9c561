#pragma once

#include "steklov/disjoint_sets.hpp"
#include "steklov/error.hpp"
#include "steklov/mesh.hpp"
#include "steklov/spectrum.hpp"

#include <Eigen/Dense>

#include <algorithm>
#include <cmath>
#include <cstdint>
#include <map>
#include <numbers>
#include <set>
#include <string>
#include <utility>
#include <vector>

namespace steklov {

/// Per-vertex sign of a function; values with |u| <= threshold count as zero.
struct SignField {
    std::vector<std::int8_t> signs;
    double threshold = 0.0;
};

/// `zero_tol` is relative to max |u|.
inline SignField sign_field(const Eigen::VectorXd& u, double zero_tol) {
    if (!(zero_tol > 0.0))
        throw PreconditionError("zero tolerance must be positive");
    const double scale = u.size() ? u.cwiseAbs().maxCoeff() : 0.0;
    if (!(scale > 0.0))
        throw PreconditionError("function vanishes identically");
    SignField f;
    f.threshold = zero_tol * scale;
    f.signs.resize(static_cast<std::size_t>(u.size()));
    for (Eigen::Index i = 0; i < u.size(); ++i)
        f.signs[static_cast<std::size_t>(i)] = std::abs(u[i]) <= f.threshold ? 0 : (u[i] > 0.0 ? 1 : -1);
    return f;
}

/// Default tolerance band for FEM eigenfunctions: 10 h^2 relative to max |u|.
inline double fem_zero_tol(const SurfaceMesh& mesh) {
    const double h = mesh.max_edge_length();
    return 10.0 * h * h;
}

inline double mean_edge_length(const SurfaceMesh& mesh) {
    double total = 0.0;
    for (int e = 0; e < mesh.edge_count(); ++e)
        total += mesh.edge_length(e);
    return total / mesh.edge_count();
}

/// Three mesh cells.
inline double default_cluster_radius(const SurfaceMesh& mesh) { return 3.0 * mean_edge_length(mesh); }

struct NodalDomains {
    int count = 0;
    /// Per triangle: domain label of its positive and of its negative part (-1 if absent).
    std::vector<std::array<int, 2>> labels;
};

///
/// Counts connected components of {u > 0} and {u < 0} for the piecewise-linear
/// interpolant. A triangle with mixed signs is split by its zero segment into a
/// positive and a negative part; parts of equal sign in neighboring triangles are
/// connected when an endpoint of the shared edge has that sign.
///
inline NodalDomains nodal_domains(const SurfaceMesh& mesh, const SignField& field) {
    const int nt = mesh.triangle_count();
    std::vector<std::array<bool, 2>> has(nt, {false, false});
    bool any = false;
    for (int t = 0; t < nt; ++t) {
        for (int v : mesh.triangle(t)) {
            if (field.signs[v] > 0)
                has[t][0] = true;
            if (field.signs[v] < 0)
                has[t][1] = true;
        }
        any = any || has[t][0] || has[t][1];
    }
    if (!any)
        throw PreconditionError("function is below the zero tolerance everywhere");
    DisjointSets sets(2 * nt);
    for (int e = 0; e < mesh.edge_count(); ++e) {
        const auto& et = mesh.edge_triangles(e);
        if (et[1] < 0)
            continue;
        const auto [a, b] = mesh.edge(e);
        for (int s = 0; s < 2; ++s) {
            const int want = s == 0 ? 1 : -1;
            if (has[et[0]][s] && has[et[1]][s] && (field.signs[a] == want || field.signs[b] == want))
                sets.unite(2 * et[0] + s, 2 * et[1] + s);
        }
    }
    NodalDomains out;
    out.labels.assign(nt, {-1, -1});
    std::vector<int> root_label(2 * nt, -1);
    for (int t = 0; t < nt; ++t) {
        for (int s = 0; s < 2; ++s) {
            if (!has[t][s])
                continue;
            const int r = sets.find(2 * t + s);
            if (root_label[r] < 0)
                root_label[r] = out.count++;
            out.labels[t][s] = root_label[r];
        }
    }
    return out;
}

inline NodalDomains nodal_domains(const SurfaceMesh& mesh, const Eigen::VectorXd& u, double zero_tol) {
    return nodal_domains(mesh, sign_field(u, zero_tol));
}

struct InteriorVertex {
    Point position = Point::Zero();
    int degree = 0;
    int order() const { return degree / 2; }
};

struct BoundaryEndpoint {
    Point position = Point::Zero();
    int component = -1;
    int degree = 0;
};

struct ArcEnd {
    enum class Kind { interior, boundary };
    Kind kind = Kind::interior;
    int index = -1;

    bool operator==(const ArcEnd&) const = default;
};

struct NodalArc {
    ArcEnd end1;
    ArcEnd end2;
    std::vector<Point> points;

    bool is_loop() const { return end1.kind == ArcEnd::Kind::interior && end1 == end2; }
};

///
/// Zero set of the piecewise-linear interpolant as a graph: interior vertices
/// (clustered points where at least three arc ends meet), endpoints on the
/// boundary, arcs between them, and closed curves that carry no vertex.
///
struct NodalGraph {
    std::vector<InteriorVertex> interior_vertices;
    std::vector<BoundaryEndpoint> boundary_endpoints;
    std::vector<NodalArc> arcs;
    std::vector<std::vector<Point>> cycles;
    SignField signs;
    int absorbed_arcs = 0; // short arcs swallowed while clustering a vertex

    int loop_count() const {
        return static_cast<int>(std::count_if(arcs.begin(), arcs.end(), [](const NodalArc& a) { return a.is_loop(); }));
    }

    bool empty() const { return arcs.empty() && cycles.empty(); }

    /// Deviations from the local model: interior degrees must be even and >= 4.
    std::vector<std::string> issues() const {
        std::vector<std::string> out;
        for (std::size_t i = 0; i < interior_vertices.size(); ++i) {
            const int d = interior_vertices[i].degree;
            if (d % 2 != 0 || d < 4)
                out.push_back("interior vertex " + std::to_string(i) + " has degree " + std::to_string(d));
        }
        return out;
    }
};

struct NodalOptions {
    double zero_tol = 1e-9;
    double cluster_radius = 0.0; // 0 means default_cluster_radius(mesh)
};

namespace detail {

struct RawNodalGraph {
    std::vector<Point> pos;
    std::vector<int> label; // boundary component, -1 inside
    std::vector<std::vector<std::pair<int, int>>> adj; // (neighbor, segment id)
    int segments = 0;
};

inline RawNodalGraph raw_zero_set(const SurfaceMesh& mesh, const Eigen::VectorXd& u, const SignField& field) {
    RawNodalGraph g;
    std::vector<int> zero_node(mesh.vertex_count(), -1), cross_node(mesh.edge_count(), -1);
    auto add_node = [&](const Point& p, int label) {
        g.pos.push_back(p);
        g.label.push_back(label);
        g.adj.emplace_back();
        return static_cast<int>(g.pos.size()) - 1;
    };
    auto vertex_node = [&](int v) {
        if (zero_node[v] < 0)
            zero_node[v] = add_node(mesh.position(v), mesh.boundary_label(v));
        return zero_node[v];
    };
    auto edge_node = [&](int t, int c) {
        const int e = mesh.triangle_edge(t, c);
        if (cross_node[e] < 0) {
            const int a = mesh.triangle(t)[c], b = mesh.triangle(t)[(c + 1) % 3];
            const double s = u[a] / (u[a] - u[b]);
            const Point p = mesh.corner(t, c) + s * (mesh.corner(t, (c + 1) % 3) - mesh.corner(t, c));
            cross_node[e] = add_node(p, mesh.edge_boundary_label(e));
        }
        return cross_node[e];
    };
    std::set<std::pair<int, int>> seen;
    auto add_segment = [&](int a, int b) {
        if (a == b || !seen.insert({std::min(a, b), std::max(a, b)}).second)
            return;
        g.adj[a].emplace_back(b, g.segments);
        g.adj[b].emplace_back(a, g.segments);
        ++g.segments;
    };

    for (int t = 0; t < mesh.triangle_count(); ++t) {
        const auto& tri = mesh.triangle(t);
        std::array<int, 3> s{field.signs[tri[0]], field.signs[tri[1]], field.signs[tri[2]]};
        const int zeros = static_cast<int>(std::count(s.begin(), s.end(), 0));
        if (zeros == 3) {
            for (int c = 0; c < 3; ++c)
                add_segment(vertex_node(tri[c]), vertex_node(tri[(c + 1) % 3]));
        } else if (zeros == 2) {
            for (int c = 0; c < 3; ++c)
                if (s[c] == 0 && s[(c + 1) % 3] == 0)
                    add_segment(vertex_node(tri[c]), vertex_node(tri[(c + 1) % 3]));
        } else if (zeros == 1) {
            const int c0 = static_cast<int>(std::find(s.begin(), s.end(), 0) - s.begin());
            const int c1 = (c0 + 1) % 3, c2 = (c0 + 2) % 3;
            if (s[c1] != s[c2])
                add_segment(vertex_node(tri[c0]), edge_node(t, c1));
            else
                vertex_node(tri[c0]); // touching zero, no segment
        } else {
            std::vector<int> crossing;
            for (int c = 0; c < 3; ++c)
                if (s[c] != s[(c + 1) % 3])
                    crossing.push_back(edge_node(t, c));
            if (crossing.size() == 2)
                add_segment(crossing[0], crossing[1]);
        }
    }
    return g;
}

} // namespace detail

///
/// Marching-triangles extraction of the nodal graph of u.
///
/// Nodes of the raw zero set with degree other than 2, or lying on the boundary,
/// are significant. Interior significant nodes within `cluster_radius` of each
/// other merge into one interior vertex, and arcs that stay inside that radius are
/// absorbed. Vertices left with degree 2 are dissolved into a single arc.
///
inline NodalGraph extract_nodal_graph(const SurfaceMesh& mesh, const Eigen::VectorXd& u, NodalOptions options = {}) {
    const double radius = options.cluster_radius > 0.0 ? options.cluster_radius : default_cluster_radius(mesh);
    NodalGraph graph;
    graph.signs = sign_field(u, options.zero_tol);
    const auto raw = detail::raw_zero_set(mesh, u, graph.signs);
    const int nn = static_cast<int>(raw.pos.size());

    std::vector<bool> significant(nn, false);
    std::vector<int> candidates;
    for (int i = 0; i < nn; ++i) {
        const auto deg = raw.adj[i].size();
        if (deg == 0)
            continue;
        significant[i] = deg != 2 || raw.label[i] >= 0;
        if (significant[i] && raw.label[i] < 0)
            candidates.push_back(i);
    }

    // cluster interior significant nodes
    DisjointSets clusters(static_cast<int>(candidates.size()));
    for (std::size_t a = 0; a < candidates.size(); ++a)
        for (std::size_t b = a + 1; b < candidates.size(); ++b)
            if ((raw.pos[candidates[a]] - raw.pos[candidates[b]]).norm() <= radius)
                clusters.unite(static_cast<int>(a), static_cast<int>(b));
    int cluster_count = 0;
    const auto cluster_label = clusters.labels(&cluster_count);
    std::vector<int> node_cluster(nn, -1);
    std::vector<Point> centroid(cluster_count, Point::Zero());
    std::vector<int> members(cluster_count, 0);
    for (std::size_t a = 0; a < candidates.size(); ++a) {
        node_cluster[candidates[a]] = cluster_label[a];
        centroid[cluster_label[a]] += raw.pos[candidates[a]];
        ++members[cluster_label[a]];
    }
    for (int c = 0; c < cluster_count; ++c)
        centroid[c] /= members[c];

    std::vector<int> node_endpoint(nn, -1);
    auto end_of = [&](int node) {
        if (raw.label[node] >= 0) {
            if (node_endpoint[node] < 0) {
                node_endpoint[node] = static_cast<int>(graph.boundary_endpoints.size());
                graph.boundary_endpoints.push_back({raw.pos[node], raw.label[node], 0});
            }
            return ArcEnd{ArcEnd::Kind::boundary, node_endpoint[node]};
        }
        return ArcEnd{ArcEnd::Kind::interior, node_cluster[node]};
    };

    struct Traced {
        ArcEnd e1, e2;
        std::vector<Point> pts;
    };
    std::vector<Traced> traced;
    std::vector<bool> used(raw.segments, false);
    for (int s = 0; s < nn; ++s) {
        if (!significant[s])
            continue;
        for (const auto& [first, seg0] : raw.adj[s]) {
            if (used[seg0])
                continue;
            used[seg0] = true;
            std::vector<Point> pts{raw.pos[s]};
            int cur = first;
            while (!significant[cur]) {
                pts.push_back(raw.pos[cur]);
                int next = -1;
                for (const auto& [nb, seg] : raw.adj[cur])
                    if (!used[seg]) {
                        used[seg] = true;
                        next = nb;
                        break;
                    }
                if (next < 0)
                    break; // cannot happen for degree-2 nodes
                cur = next;
            }
            pts.push_back(raw.pos[cur]);
            traced.push_back({end_of(s), end_of(cur), std::move(pts)});
        }
    }
    // closed curves through degree-2 nodes only
    for (int s = 0; s < nn; ++s) {
        for (const auto& [first, seg0] : raw.adj[s]) {
            if (used[seg0])
                continue;
            used[seg0] = true;
            std::vector<Point> pts{raw.pos[s]};
            int cur = first;
            while (cur != s) {
                pts.push_back(raw.pos[cur]);
                int next = -1;
                for (const auto& [nb, seg] : raw.adj[cur])
                    if (!used[seg]) {
                        used[seg] = true;
                        next = nb;
                        break;
                    }
                if (next < 0)
                    break;
                cur = next;
            }
            pts.push_back(raw.pos[s]);
            graph.cycles.push_back(std::move(pts));
        }
    }

    // absorb arcs that live inside a vertex cluster
    std::vector<Traced> kept;
    for (auto& a : traced) {
        if (a.e1.kind == ArcEnd::Kind::interior && a.e1 == a.e2) {
            const Point& c = centroid[a.e1.index];
            const bool inside = std::all_of(a.pts.begin(), a.pts.end(), [&](const Point& p) { return (p - c).norm() <= radius; });
            if (inside) {
                ++graph.absorbed_arcs;
                continue;
            }
        }
        kept.push_back(std::move(a));
    }

    // dissolve degree-2 interior vertices
    std::vector<int> degree(cluster_count, 0);
    auto recount = [&] {
        std::fill(degree.begin(), degree.end(), 0);
        for (const auto& a : kept)
            for (const ArcEnd& e : {a.e1, a.e2})
                if (e.kind == ArcEnd::Kind::interior)
                    ++degree[e.index];
    };
    recount();
    for (int c = 0; c < cluster_count; ++c) {
        if (degree[c] != 2)
            continue;
        std::vector<std::size_t> at;
        for (std::size_t i = 0; i < kept.size(); ++i)
            for (const ArcEnd& e : {kept[i].e1, kept[i].e2})
                if (e.kind == ArcEnd::Kind::interior && e.index == c)
                    at.push_back(i);
        if (at[0] == at[1]) { // a loop whose only vertex is this one
            graph.cycles.push_back(std::move(kept[at[0]].pts));
            kept.erase(kept.begin() + static_cast<std::ptrdiff_t>(at[0]));
        } else {
            Traced a = std::move(kept[at[0]]), b = std::move(kept[at[1]]);
            const ArcEnd here{ArcEnd::Kind::interior, c};
            if (a.e1 == here) {
                std::reverse(a.pts.begin(), a.pts.end());
                std::swap(a.e1, a.e2);
            }
            if (b.e2 == here) {
                std::reverse(b.pts.begin(), b.pts.end());
                std::swap(b.e1, b.e2);
            }
            a.pts.insert(a.pts.end(), b.pts.begin() + 1, b.pts.end());
            a.e2 = b.e2;
            kept.erase(kept.begin() + static_cast<std::ptrdiff_t>(std::max(at[0], at[1])));
            kept.erase(kept.begin() + static_cast<std::ptrdiff_t>(std::min(at[0], at[1])));
            kept.push_back(std::move(a));
        }
        recount();
    }

    // renumber surviving interior vertices
    std::vector<int> new_index(cluster_count, -1);
    for (int c = 0; c < cluster_count; ++c) {
        if (degree[c] == 0)
            continue;
        new_index[c] = static_cast<int>(graph.interior_vertices.size());
        graph.interior_vertices.push_back({centroid[c], degree[c]});
    }
    for (auto& a : kept) {
        for (ArcEnd* e : {&a.e1, &a.e2}) {
            if (e->kind == ArcEnd::Kind::interior)
                e->index = new_index[e->index];
            else
                ++graph.boundary_endpoints[e->index].degree;
        }
        graph.arcs.push_back({a.e1, a.e2, std::move(a.pts)});
    }
    if (static_cast<int>(graph.arcs.size() + graph.cycles.size()) > mesh.triangle_count())
        throw SolverError("nodal graph has more arcs than the mesh has triangles");
    return graph;
}

/// Image of a nodal graph after collapsing each boundary component to a point.
struct ReducedNodalGraph {
    int interior_vertices = 0;
    int boundary_component_vertices = 0; // r
    int cycle_vertices = 0;              // one virtual vertex per closed curve
    int v = 0;
    int e = 0;
    int loops = 0;
    int f = 0; // faces = nodal domains
    std::vector<int> interior_degrees;

    int euler() const { return v - e + f; }
};

inline ReducedNodalGraph reduce_graph(const NodalGraph& graph, const SurfaceMesh& mesh) {
    ReducedNodalGraph r;
    r.interior_vertices = static_cast<int>(graph.interior_vertices.size());
    std::set<int> components;
    for (const auto& b : graph.boundary_endpoints)
        if (b.degree > 0)
            components.insert(b.component);
    r.boundary_component_vertices = static_cast<int>(components.size());
    r.cycle_vertices = static_cast<int>(graph.cycles.size());
    r.v = r.interior_vertices + r.boundary_component_vertices + r.cycle_vertices;
    r.e = static_cast<int>(graph.arcs.size() + graph.cycles.size());
    r.loops = graph.loop_count() + r.cycle_vertices;
    r.f = nodal_domains(mesh, graph.signs).count;
    for (const auto& iv : graph.interior_vertices)
        r.interior_degrees.push_back(iv.degree);
    return r;
}

/// Local expansion u(x + r e^{i theta}) ~ a_0 + sum_i r^i (a_i cos i theta + b_i sin i theta).
struct OrderEstimate {
    int order = 0;
    std::vector<double> a; // physical units
    std::vector<double> b;
    std::vector<double> magnitudes; // hypot(a_i, b_i) * R^i, R the fit radius
    int samples = 0;
    double fit_residual = 0.0; // relative l2 residual of the least-squares fit
};

namespace detail {

struct LocalSamples {
    Eigen::MatrixXd basis; // columns: 1, rho cos, rho sin, rho^2 cos, ...
    std::vector<int> vertices;
};

inline LocalSamples local_basis(const SurfaceMesh& mesh, const Point& x, double fit_radius, int max_order) {
    LocalSamples s;
    for (int v = 0; v < mesh.vertex_count(); ++v)
        if ((mesh.position(v) - x).norm() <= fit_radius)
            s.vertices.push_back(v);
    const int ncols = 2 * max_order + 1;
    if (static_cast<int>(s.vertices.size()) < 2 * ncols)
        throw PreconditionError("ill-conditioned local fit: " + std::to_string(s.vertices.size()) +
                                " samples for " + std::to_string(ncols) + " coefficients");
    s.basis.resize(static_cast<Eigen::Index>(s.vertices.size()), ncols);
    for (std::size_t k = 0; k < s.vertices.size(); ++k) {
        const Point d = (mesh.position(s.vertices[k]) - x) / fit_radius;
        const double rho = std::hypot(d.x(), d.y());
        const double theta = std::atan2(d.y(), d.x());
        const auto row = static_cast<Eigen::Index>(k);
        s.basis(row, 0) = 1.0;
        for (int i = 1; i <= max_order; ++i) {
            const double ri = std::pow(rho, i);
            s.basis(row, 2 * i - 1) = ri * std::cos(i * theta);
            s.basis(row, 2 * i) = ri * std::sin(i * theta);
        }
    }
    return s;
}

inline Eigen::VectorXd gather(const Eigen::VectorXd& u, const std::vector<int>& idx) {
    Eigen::VectorXd out(static_cast<Eigen::Index>(idx.size()));
    for (std::size_t k = 0; k < idx.size(); ++k)
        out[static_cast<Eigen::Index>(k)] = u[idx[k]];
    return out;
}

} // namespace detail

///
/// Vanishing order of u at an interior point x: least-squares fit against
/// {r^i cos i theta, r^i sin i theta}, i <= max_order, on the vertices within
/// fit_radius, then the first i whose coefficient pair exceeds tau_rel times the
/// largest. Returns max_order + 1 when every coefficient is negligible.
///
inline OrderEstimate estimate_order(const SurfaceMesh& mesh, const Eigen::VectorXd& u, const Point& x, double fit_radius,
                                    int max_order, double tau_rel = 1e-3) {
    const auto local = detail::local_basis(mesh, x, fit_radius, max_order);
    const Eigen::VectorXd y = detail::gather(u, local.vertices);
    const Eigen::VectorXd c = local.basis.colPivHouseholderQr().solve(y);
    OrderEstimate out;
    out.samples = static_cast<int>(local.vertices.size());
    const double ynorm = y.norm();
    out.fit_residual = ynorm > 0.0 ? (local.basis * c - y).norm() / ynorm : 0.0;
    out.a.push_back(c[0]);
    out.b.push_back(0.0);
    out.magnitudes.push_back(std::abs(c[0]));
    for (int i = 1; i <= max_order; ++i) {
        const double scale = std::pow(fit_radius, i);
        out.a.push_back(c[2 * i - 1] / scale);
        out.b.push_back(c[2 * i] / scale);
        out.magnitudes.push_back(std::hypot(c[2 * i - 1], c[2 * i]));
    }
    const double largest = *std::max_element(out.magnitudes.begin(), out.magnitudes.end());
    out.order = max_order + 1;
    if (largest > 0.0) {
        for (int i = 0; i <= max_order; ++i)
            if (out.magnitudes[static_cast<std::size_t>(i)] > tau_rel * largest) {
                out.order = i;
                break;
            }
    }
    return out;
}

struct Combination {
    Eigen::VectorXd alpha;       // unit norm
    Eigen::MatrixXd coefficients; // (2n-1) x m fitted low-order coefficients
    double residual = 0.0;        // || coefficients * alpha ||
    double matrix_norm = 0.0;     // largest singular value
    bool hypothesis_met = true;   // m >= 2n
};

///
/// Finds a unit combination of the basis functions whose expansion at x has no
/// terms below order n: the coefficients {a_0; a_1, b_1; ...; a_{n-1}, b_{n-1}} of
/// each function form a (2n-1) x m matrix, and alpha is its smallest right singular
/// vector. With m >= 2n the matrix has a nontrivial kernel.
///
inline Combination high_order_combination(const SurfaceMesh& mesh, const std::vector<Eigen::VectorXd>& basis,
                                          const Point& x, int n, double fit_radius, int fit_order = 0) {
    if (n < 1)
        throw PreconditionError("target order must be >= 1");
    if (basis.empty())
        throw PreconditionError("empty basis");
    fit_order = std::max(fit_order > 0 ? fit_order : 2 * n + 2, n);
    const auto local = detail::local_basis(mesh, x, fit_radius, fit_order);
    const auto qr = local.basis.colPivHouseholderQr();
    const int m = static_cast<int>(basis.size());
    Combination out;
    out.hypothesis_met = m >= 2 * n;
    out.coefficients.resize(2 * n - 1, m);
    for (int j = 0; j < m; ++j) {
        const Eigen::VectorXd c = qr.solve(detail::gather(basis[static_cast<std::size_t>(j)], local.vertices));
        out.coefficients.col(j) = c.head(2 * n - 1);
    }
    const Eigen::JacobiSVD<Eigen::MatrixXd> svd(out.coefficients, Eigen::ComputeFullV);
    out.alpha = svd.matrixV().col(m - 1);
    out.residual = (out.coefficients * out.alpha).norm();
    out.matrix_norm = svd.singularValues().size() ? svd.singularValues()[0] : 0.0;
    return out;
}

inline Eigen::VectorXd combine(const std::vector<Eigen::VectorXd>& basis, const Eigen::VectorXd& alpha) {
    Eigen::VectorXd u = Eigen::VectorXd::Zero(basis.front().size());
    for (std::size_t j = 0; j < basis.size(); ++j)
        u += alpha[static_cast<Eigen::Index>(j)] * basis[j];
    return u;
}

struct LemmaVertexCheck {
    int order = 0;
    int bound = 0; // 2 ord + 2 chi_bar - 2 l - 2
    int margin = 0;
};

struct LemmaReport {
    int f = 0;
    int sum_bound = 0; // sum (ord - 1) + chi_bar over vertices of order >= 2
    int sum_margin = 0;
    std::vector<LemmaVertexCheck> vertices;
    bool pass = true;
};

///
/// Lower bounds on the number of nodal domains f:
///   f >= sum (ord_x - 1) + chi_bar
///   f >= 2 ord_x + 2 chi_bar - 2 l - 2   for every vertex x.
///
inline LemmaReport lemma_bounds_check(const ReducedNodalGraph& reduced, const TopologySummary& topo,
                                      const std::vector<int>& orders) {
    LemmaReport r;
    r.f = reduced.f;
    r.sum_bound = topo.reduced_euler;
    for (int ord : orders) {
        if (ord < 2)
            continue;
        r.sum_bound += ord - 1;
        LemmaVertexCheck v;
        v.order = ord;
        v.bound = 2 * ord + 2 * topo.reduced_euler - 2 * topo.boundary_count - 2;
        v.margin = r.f - v.bound;
        r.pass = r.pass && v.margin >= 0;
        r.vertices.push_back(v);
    }
    r.sum_margin = r.f - r.sum_bound;
    // with no vertex of order >= 2 the sum bound is vacuous
    if (!r.vertices.empty())
        r.pass = r.pass && r.sum_margin >= 0;
    return r;
}

struct CourantEntry {
    int index = 0;
    int k = 0; // lowest index of the eigenvalue's cluster
    int domains = 0;
    bool pass = true;
};

struct CourantReport {
    std::vector<CourantEntry> entries;
    int violations = 0;
    bool pass() const { return violations == 0; }
};

///
/// Every eigenfunction of an eigenvalue whose cluster starts at index k has at most
/// k + 1 nodal domains. Columns of `eigenfunctions` are functions over all vertices.
///
inline CourantReport courant_check(const SurfaceMesh& mesh, const Eigen::MatrixXd& eigenfunctions,
                                   const std::vector<MultiplicityCluster>& clusters, double zero_tol) {
    CourantReport report;
    for (const auto& c : clusters) {
        for (int j = c.first_index; j <= c.last_index() && j < eigenfunctions.cols(); ++j) {
            CourantEntry e;
            e.index = j;
            e.k = c.first_index;
            e.domains = nodal_domains(mesh, Eigen::VectorXd(eigenfunctions.col(j)), zero_tol).count;
            e.pass = e.domains <= e.k + 1;
            report.violations += e.pass ? 0 : 1;
            report.entries.push_back(e);
        }
    }
    return report;
}

inline CourantReport courant_check(const SurfaceMesh& mesh, const Spectrum& spectrum,
                                   const std::vector<MultiplicityCluster>& clusters, double zero_tol) {
    return courant_check(mesh, spectrum.extensions, clusters, zero_tol);
}

struct FamilyStep {
    double t = 0.0;
    int interior_vertices = 0;
    int loops = 0;
    int arcs = 0;
    int boundary_endpoints = 0;
    int domains = 0;
    int max_degree = 0;
};

struct FamilyReport {
    std::vector<FamilyStep> steps;
    bool precondition_met = false; // both ends have a vertex of degree 2n at a common point
    int expected_loops = 0;        // l + 1 - chi_bar, the loop count in the extremal case
    bool constant_structure = true;
};

namespace detail {

inline const InteriorVertex* find_vertex_of_degree(const NodalGraph& g, int degree, const Point* near, double radius) {
    for (const auto& v : g.interior_vertices)
        if (v.degree == degree && (!near || (v.position - *near).norm() <= radius))
            return &v;
    return nullptr;
}

} // namespace detail

///
/// Tracks nodal graphs along u_t = u0 cos(n t) + u1 sin(n t) for t = j*pi/steps,
/// j = 0..steps-1, reporting vertex, loop and arc counts per step.
///
inline FamilyReport rotation_family(const SurfaceMesh& mesh, const Eigen::VectorXd& u0, const Eigen::VectorXd& u1, int n,
                                    int steps, NodalOptions options = {}) {
    if (steps < 1)
        throw PreconditionError("steps must be >= 1");
    const double radius = options.cluster_radius > 0.0 ? options.cluster_radius : default_cluster_radius(mesh);
    options.cluster_radius = radius;
    FamilyReport report;
    const auto topo = topology(mesh);
    report.expected_loops = topo.boundary_count + 1 - topo.reduced_euler;

    const auto g0 = extract_nodal_graph(mesh, u0, options);
    const auto* v0 = detail::find_vertex_of_degree(g0, 2 * n, nullptr, radius);
    if (v0) {
        const auto g1 = extract_nodal_graph(mesh, u1, options);
        report.precondition_met = detail::find_vertex_of_degree(g1, 2 * n, &v0->position, radius) != nullptr;
    }
    for (int j = 0; j < steps; ++j) {
        FamilyStep s;
        s.t = std::numbers::pi * j / steps;
        const Eigen::VectorXd u = u0 * std::cos(n * s.t) + u1 * std::sin(n * s.t);
        const auto g = extract_nodal_graph(mesh, u, options);
        s.interior_vertices = static_cast<int>(g.interior_vertices.size());
        s.loops = g.loop_count() + static_cast<int>(g.cycles.size());
        s.arcs = static_cast<int>(g.arcs.size());
        s.boundary_endpoints = static_cast<int>(g.boundary_endpoints.size());
        s.domains = nodal_domains(mesh, g.signs).count;
        for (const auto& v : g.interior_vertices)
            s.max_degree = std::max(s.max_degree, v.degree);
        report.steps.push_back(s);
    }
    for (const auto& s : report.steps) {
        const auto& f = report.steps.front();
        report.constant_structure = report.constant_structure && s.interior_vertices == f.interior_vertices &&
                                    s.loops == f.loops && s.arcs == f.arcs && s.max_degree == f.max_degree;
    }
    return report;
}

} // namespace steklov
