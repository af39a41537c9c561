#pragma once

#include "steklov/error.hpp"
#include "steklov/mesh.hpp"

#include <charconv>
#include <fstream>
#include <iomanip>
#include <optional>
#include <sstream>
#include <string>
#include <string_view>
#include <vector>

namespace steklov {

/// Per-boundary-vertex Robin coefficients read from a `ROBIN` section, in
/// ascending boundary vertex order.
struct RobinCoefficients {
    std::vector<double> a;
    std::vector<double> b;
};

/// A mesh together with the optional attribute sections of the file format.
/// Per-vertex arrays are indexed by (glued) vertex id.
struct LoadedMesh {
    SurfaceMesh mesh;
    std::optional<std::vector<double>> rho;
    std::optional<RobinCoefficients> robin;
    std::optional<std::vector<double>> potential;
};

namespace detail {

struct Line {
    int number;
    std::vector<std::string> tokens;
};

inline std::vector<Line> tokenize(std::istream& in) {
    std::vector<Line> lines;
    std::string text;
    int number = 0;
    while (std::getline(in, text)) {
        ++number;
        if (const auto hash = text.find('#'); hash != std::string::npos)
            text.resize(hash);
        std::istringstream ss(text);
        Line line{number, {}};
        for (std::string tok; ss >> tok;)
            line.tokens.push_back(tok);
        if (!line.tokens.empty())
            lines.push_back(std::move(line));
    }
    return lines;
}

inline double parse_double(const std::string& tok, int line) {
    try {
        std::size_t used = 0;
        const double v = std::stod(tok, &used);
        if (used != tok.size())
            throw ParseError("malformed number '" + tok + "'", line);
        return v;
    } catch (const std::logic_error&) {
        throw ParseError("malformed number '" + tok + "'", line);
    }
}

inline long parse_int(const std::string& tok, int line) {
    long v = 0;
    const auto [ptr, ec] = std::from_chars(tok.data(), tok.data() + tok.size(), v);
    if (ec != std::errc() || ptr != tok.data() + tok.size())
        throw ParseError("malformed integer '" + tok + "'", line);
    return v;
}

inline bool is_section(const Line& line) {
    const auto& t = line.tokens[0];
    return line.tokens.size() == 1 && (t == "RHO" || t == "GLUE" || t == "ROBIN" || t == "POT");
}

} // namespace detail

///
/// Reads the plain-text mesh format:
///
///     SMESH 1
///     V E_b T
///     x y [z]        (V lines)
///     i j k          (T lines, 0-based)
///     RHO            (optional; V density values, interior entries ignored)
///     GLUE           (optional; lines "i j" identifying two vertices)
///     ROBIN          (optional; "a b" per boundary vertex, ascending vertex id)
///     POT            (optional; V potential values)
///
/// `E_b` is the number of boundary edges after gluing and is checked.
/// Text after '#' is ignored.
///
inline LoadedMesh read_mesh(std::istream& in) {
    using detail::parse_double;
    using detail::parse_int;
    const auto lines = detail::tokenize(in);
    std::size_t pos = 0;
    auto need = [&](const char* what) -> const detail::Line& {
        if (pos >= lines.size())
            throw ParseError(std::string("unexpected end of file, expected ") + what,
                             lines.empty() ? 0 : lines.back().number + 1);
        return lines[pos++];
    };

    {
        const auto& header = need("header");
        if (header.tokens.size() != 2 || header.tokens[0] != "SMESH" || header.tokens[1] != "1")
            throw ParseError("expected header 'SMESH 1'", header.number);
    }
    const auto& counts = need("counts line 'V E_b T'");
    if (counts.tokens.size() != 3)
        throw ParseError("expected counts line 'V E_b T'", counts.number);
    const long nv = parse_int(counts.tokens[0], counts.number);
    const long nbe = parse_int(counts.tokens[1], counts.number);
    const long nt = parse_int(counts.tokens[2], counts.number);
    if (nv <= 0 || nt <= 0 || nbe < 0)
        throw ParseError("counts must be positive", counts.number);

    std::vector<Point> pts;
    pts.reserve(nv);
    for (long i = 0; i < nv; ++i) {
        const auto& l = need("vertex line");
        if (l.tokens.size() != 2 && l.tokens.size() != 3)
            throw ParseError("vertex line needs 2 or 3 coordinates", l.number);
        Point p = Point::Zero();
        for (std::size_t c = 0; c < l.tokens.size(); ++c)
            p[static_cast<int>(c)] = parse_double(l.tokens[c], l.number);
        pts.push_back(p);
    }
    std::vector<Triangle> tris;
    tris.reserve(nt);
    for (long i = 0; i < nt; ++i) {
        const auto& l = need("triangle line");
        if (l.tokens.size() != 3)
            throw ParseError("triangle line needs 3 indices", l.number);
        Triangle tri{};
        for (int c = 0; c < 3; ++c) {
            const long idx = parse_int(l.tokens[c], l.number);
            if (idx < 0 || idx >= nv)
                throw ParseError("triangle references missing vertex " + std::to_string(idx), l.number);
            tri[c] = static_cast<int>(idx);
        }
        tris.push_back(tri);
    }

    std::optional<std::vector<double>> rho_chart, pot_chart;
    std::vector<std::pair<int, int>> glue;
    std::optional<std::pair<int, std::vector<std::pair<double, double>>>> robin_rows;
    while (pos < lines.size()) {
        const auto& head = lines[pos++];
        if (!detail::is_section(head))
            throw ParseError("unexpected content '" + head.tokens[0] + "', expected a section keyword",
                             head.number);
        const std::string& name = head.tokens[0];
        if (name == "RHO" || name == "POT") {
            std::vector<double> values;
            for (long i = 0; i < nv; ++i) {
                const auto& l = need("per-vertex value");
                if (l.tokens.size() != 1)
                    throw ParseError(name + " line needs one value", l.number);
                values.push_back(parse_double(l.tokens[0], l.number));
            }
            (name == "RHO" ? rho_chart : pot_chart) = std::move(values);
        } else if (name == "GLUE") {
            while (pos < lines.size() && !detail::is_section(lines[pos])) {
                const auto& l = lines[pos++];
                if (l.tokens.size() != 2)
                    throw ParseError("GLUE line needs two vertex indices", l.number);
                const long a = parse_int(l.tokens[0], l.number);
                const long b = parse_int(l.tokens[1], l.number);
                if (a < 0 || b < 0 || a >= nv || b >= nv)
                    throw ParseError("GLUE references a missing vertex", l.number);
                glue.emplace_back(static_cast<int>(a), static_cast<int>(b));
            }
        } else { // ROBIN
            std::vector<std::pair<double, double>> rows;
            while (pos < lines.size() && !detail::is_section(lines[pos])) {
                const auto& l = lines[pos++];
                if (l.tokens.size() != 2)
                    throw ParseError("ROBIN line needs 'a b'", l.number);
                rows.emplace_back(parse_double(l.tokens[0], l.number), parse_double(l.tokens[1], l.number));
            }
            robin_rows = std::make_pair(head.number, std::move(rows));
        }
    }

    LoadedMesh out{SurfaceMesh(std::move(pts), std::move(tris), std::move(glue)), {}, {}, {}};
    const auto& mesh = out.mesh;
    if (static_cast<long>(mesh.boundary_edges().size()) != nbe)
        throw MeshError("header declares " + std::to_string(nbe) + " boundary edges, mesh has " +
                        std::to_string(mesh.boundary_edges().size()));

    auto to_vertices = [&](const std::vector<double>& chart) {
        std::vector<double> v(mesh.vertex_count(), 0.0);
        std::vector<bool> seen(mesh.vertex_count(), false);
        for (std::size_t p = 0; p < chart.size(); ++p) {
            const int id = mesh.vertex_of_chart(static_cast<int>(p));
            if (!seen[id]) {
                v[id] = chart[p];
                seen[id] = true;
            }
        }
        return v;
    };
    if (rho_chart)
        out.rho = to_vertices(*rho_chart);
    if (pot_chart)
        out.potential = to_vertices(*pot_chart);
    if (robin_rows) {
        const auto bverts = mesh.boundary_vertices();
        if (robin_rows->second.size() != bverts.size())
            throw ParseError("ROBIN section has " + std::to_string(robin_rows->second.size()) +
                                 " rows, mesh has " + std::to_string(bverts.size()) + " boundary vertices",
                             robin_rows->first);
        RobinCoefficients rc;
        for (const auto& [a, b] : robin_rows->second) {
            rc.a.push_back(a);
            rc.b.push_back(b);
        }
        out.robin = std::move(rc);
    }
    return out;
}

inline LoadedMesh load_mesh(const std::string& path) {
    std::ifstream in(path);
    if (!in)
        throw ParseError("cannot open mesh file '" + path + "'", 0);
    return read_mesh(in);
}

/// Writes a mesh (and optional per-vertex density) in the format read by `read_mesh`.
inline void write_mesh(std::ostream& out, const SurfaceMesh& mesh,
                       const std::vector<double>* rho = nullptr) {
    const auto& pts = mesh.chart_points();
    const auto& tris = mesh.chart_triangles();
    out << "SMESH 1\n" << pts.size() << ' ' << mesh.boundary_edges().size() << ' ' << tris.size() << '\n';
    out << std::setprecision(17);
    const bool planar = std::all_of(pts.begin(), pts.end(), [](const Point& p) { return p.z() == 0.0; });
    for (const auto& p : pts) {
        out << p.x() << ' ' << p.y();
        if (!planar)
            out << ' ' << p.z();
        out << '\n';
    }
    for (const auto& t : tris)
        out << t[0] << ' ' << t[1] << ' ' << t[2] << '\n';
    if (rho) {
        out << "RHO\n";
        for (std::size_t p = 0; p < pts.size(); ++p)
            out << (*rho)[mesh.vertex_of_chart(static_cast<int>(p))] << '\n';
    }
    if (!mesh.identifications().empty()) {
        out << "GLUE\n";
        for (const auto& [a, b] : mesh.identifications())
            out << a << ' ' << b << '\n';
    }
}

inline void save_mesh(const std::string& path, const SurfaceMesh& mesh,
                      const std::vector<double>* rho = nullptr) {
    std::ofstream out(path);
    if (!out)
        throw Error("cannot write mesh file '" + path + "'");
    write_mesh(out, mesh, rho);
}

} // namespace steklov
