#pragma once

// Serialization of spectra, bound reports and nodal graphs. JSON goes through
// nlohmann::json (vendor/json.hpp).

#include "steklov/mesh.hpp"
#include "steklov/nodal.hpp"
#include "steklov/solver.hpp"
#include "steklov/spectrum.hpp"

#include <json.hpp>

#include <cmath>
#include <cstdio>
#include <ostream>
#include <string>
#include <vector>

namespace steklov {

using Json = nlohmann::ordered_json;

/// Shortest round-trip representation of a double.
inline std::string fmt(double x) {
    char buf[32];
    std::snprintf(buf, sizeof buf, "%.17g", x);
    return buf;
}

inline std::string fmt_fixed(double x, int digits = 6) {
    char buf[64];
    std::snprintf(buf, sizeof buf, "%.*f", digits, x);
    return buf;
}

/// `index,eigenvalue,cluster_id`
inline void write_spectrum_csv(std::ostream& out, const Eigen::VectorXd& eigenvalues,
                               const std::vector<MultiplicityCluster>& clusters) {
    out << "index,eigenvalue,cluster_id\n";
    for (std::size_t c = 0; c < clusters.size(); ++c)
        for (int j = clusters[c].first_index; j <= clusters[c].last_index(); ++j)
            out << j << ',' << fmt(eigenvalues[j]) << ',' << c << '\n';
}

/// One row per boundary vertex: vertex id followed by the trace values.
inline void write_traces(std::ostream& out, const Spectrum& spectrum) {
    out << "# boundary_vertices " << spectrum.boundary_index.size() << " eigenfunctions " << spectrum.size() << '\n';
    for (Eigen::Index i = 0; i < spectrum.boundary_traces.rows(); ++i) {
        out << spectrum.boundary_index[static_cast<std::size_t>(i)];
        for (Eigen::Index j = 0; j < spectrum.boundary_traces.cols(); ++j)
            out << ' ' << fmt(spectrum.boundary_traces(i, j));
        out << '\n';
    }
}

inline Json to_json(const TopologySummary& t) {
    return Json{{"euler_char", t.euler_char},
                {"boundary_count", t.boundary_count},
                {"reduced_euler", t.reduced_euler},
                {"orientable", t.orientable},
                {"genus", t.genus}};
}

inline Json to_json(const std::vector<MultiplicityCluster>& clusters) {
    Json arr = Json::array();
    for (std::size_t c = 0; c < clusters.size(); ++c) {
        const auto& cl = clusters[c];
        arr.push_back({{"cluster_id", c},
                       {"first_index", cl.first_index},
                       {"dim", cl.dim},
                       {"value", cl.value},
                       {"spread", cl.spread},
                       {"gap_above", std::isfinite(cl.gap_above) ? Json(cl.gap_above) : Json(nullptr)}});
    }
    return arr;
}

inline Json to_json(const BoundReport& r) {
    Json records = Json::array();
    for (const auto& b : r.records) {
        records.push_back({{"k", b.k},
                           {"m", b.m},
                           {"bound_in1", b.bound_in1},
                           {"bound_in2", b.bound_in2 ? Json(*b.bound_in2) : Json(nullptr)},
                           {"strict", b.strict},
                           {"pass", b.pass},
                           {"value", b.value},
                           {"spread", b.spread},
                           {"gap_above", std::isfinite(b.gap_above) ? Json(b.gap_above) : Json(nullptr)}});
    }
    return Json{{"topology", to_json(r.topology)},
                {"disk", r.disk},
                {"violations", r.violations},
                {"pass", r.pass()},
                {"records", records}};
}

/// `lambda,count,residual`
inline void write_weyl_csv(std::ostream& out, const WeylReport& w) {
    out << "lambda,count,residual\n";
    for (std::size_t i = 0; i < w.lambdas.size(); ++i)
        out << fmt(w.lambdas[i]) << ',' << fmt(w.counts[i]) << ',' << fmt(w.residuals[i]) << '\n';
}

inline Json to_json(const WeylReport& w) {
    return Json{{"weighted_length", w.weighted_length},   {"slope", w.slope},
                {"candidate_two_pi", w.candidate_two_pi}, {"candidate_pi", w.candidate_pi},
                {"ratio_two_pi", w.ratio_two_pi()},       {"ratio_pi", w.ratio_pi()},
                {"max_abs_residual", w.max_abs_residual}, {"top_half_drift", w.top_half_drift}};
}

/// `k,pair_gap,relative_gap`
inline void write_pairing_csv(std::ostream& out, const PairingReport& p) {
    out << "k,pair_gap,relative_gap\n";
    for (std::size_t i = 0; i < p.pair_gaps.size(); ++i)
        out << i + 1 << ',' << fmt(p.pair_gaps[i]) << ',' << fmt(p.relative_gaps[i]) << '\n';
}

inline std::string end_token(const ArcEnd& e) {
    return (e.kind == ArcEnd::Kind::interior ? "I" : "B") + std::to_string(e.index);
}

///
/// Text graph: `IV x y degree order`, `BE component_label`, then
/// `ARC id end1 end2 npoints` followed by one `x y` line per point. Ends are I<n>
/// for interior vertex n and B<n> for boundary endpoint n. Closed curves without a
/// vertex follow as `CYCLE id npoints`.
///
inline void write_nodal_graph(std::ostream& out, const NodalGraph& g) {
    for (const auto& v : g.interior_vertices)
        out << "IV " << fmt(v.position.x()) << ' ' << fmt(v.position.y()) << ' ' << v.degree << ' ' << v.order() << '\n';
    for (const auto& b : g.boundary_endpoints)
        out << "BE " << b.component << '\n';
    for (std::size_t i = 0; i < g.arcs.size(); ++i) {
        const auto& a = g.arcs[i];
        out << "ARC " << i << ' ' << end_token(a.end1) << ' ' << end_token(a.end2) << ' ' << a.points.size() << '\n';
        for (const auto& p : a.points)
            out << fmt(p.x()) << ' ' << fmt(p.y()) << '\n';
    }
    for (std::size_t i = 0; i < g.cycles.size(); ++i) {
        out << "CYCLE " << i << ' ' << g.cycles[i].size() << '\n';
        for (const auto& p : g.cycles[i])
            out << fmt(p.x()) << ' ' << fmt(p.y()) << '\n';
    }
}

/// Static SVG of the domain boundary, nodal arcs and vertices (x-y projection).
inline void write_nodal_svg(std::ostream& out, const SurfaceMesh& mesh, const NodalGraph& g, double size = 480.0) {
    double xmin = 1e300, xmax = -1e300, ymin = 1e300, ymax = -1e300;
    for (const auto& p : mesh.chart_points()) {
        xmin = std::min(xmin, p.x());
        xmax = std::max(xmax, p.x());
        ymin = std::min(ymin, p.y());
        ymax = std::max(ymax, p.y());
    }
    const double span = std::max({xmax - xmin, ymax - ymin, 1e-12});
    const double pad = 10.0, scale = (size - 2 * pad) / span;
    auto X = [&](const Point& p) { return fmt_fixed(pad + (p.x() - xmin) * scale, 3); };
    auto Y = [&](const Point& p) { return fmt_fixed(size - pad - (p.y() - ymin) * scale, 3); };
    out << "<svg xmlns=\"http://www.w3.org/2000/svg\" width=\"" << size << "\" height=\"" << size << "\">\n";
    out << "<g stroke=\"black\" stroke-width=\"1.5\" fill=\"none\">\n";
    for (int e : mesh.boundary_edges()) {
        const int t = mesh.edge_triangles(e)[0];
        for (int c = 0; c < 3; ++c)
            if (mesh.triangle_edge(t, c) == e) {
                const Point &p = mesh.corner(t, c), &q = mesh.corner(t, (c + 1) % 3);
                out << "<line x1=\"" << X(p) << "\" y1=\"" << Y(p) << "\" x2=\"" << X(q) << "\" y2=\"" << Y(q) << "\"/>\n";
            }
    }
    out << "</g>\n<g stroke=\"#c0392b\" stroke-width=\"1.2\" fill=\"none\">\n";
    auto polyline = [&](const std::vector<Point>& pts) {
        out << "<polyline points=\"";
        for (std::size_t i = 0; i < pts.size(); ++i)
            out << (i ? " " : "") << X(pts[i]) << ',' << Y(pts[i]);
        out << "\"/>\n";
    };
    for (const auto& a : g.arcs)
        polyline(a.points);
    for (const auto& c : g.cycles)
        polyline(c);
    out << "</g>\n";
    for (const auto& v : g.interior_vertices)
        out << "<circle cx=\"" << X(v.position) << "\" cy=\"" << Y(v.position) << "\" r=\"4\" fill=\"#2c3e50\"/>\n";
    for (const auto& b : g.boundary_endpoints)
        out << "<circle cx=\"" << X(b.position) << "\" cy=\"" << Y(b.position) << "\" r=\"2.5\" fill=\"#2980b9\"/>\n";
    out << "</svg>\n";
}

inline Json to_json(const ReducedNodalGraph& r) {
    return Json{{"v", r.v},
                {"e", r.e},
                {"f", r.f},
                {"loops", r.loops},
                {"interior_vertices", r.interior_vertices},
                {"boundary_component_vertices", r.boundary_component_vertices},
                {"cycle_vertices", r.cycle_vertices},
                {"euler", r.euler()},
                {"interior_degrees", r.interior_degrees}};
}

inline Json to_json(const LemmaReport& r) {
    Json verts = Json::array();
    for (const auto& v : r.vertices)
        verts.push_back({{"order", v.order}, {"bound", v.bound}, {"margin", v.margin}});
    return Json{{"f", r.f}, {"sum_bound", r.sum_bound}, {"sum_margin", r.sum_margin}, {"vertices", verts}, {"pass", r.pass}};
}

inline Json to_json(const CourantReport& r) {
    Json entries = Json::array();
    for (const auto& e : r.entries)
        entries.push_back({{"index", e.index}, {"k", e.k}, {"domains", e.domains}, {"pass", e.pass}});
    return Json{{"violations", r.violations}, {"pass", r.pass()}, {"entries", entries}};
}

} // namespace steklov
