#pragma once

#include "steklov/error.hpp"
#include "steklov/mesh.hpp"

#include <cmath>
#include <numbers>
#include <string>
#include <vector>

namespace steklov {

namespace detail {

inline Triangle ccw(const std::vector<Point>& pts, Triangle tri) {
    const Point& a = pts[tri[0]];
    const Point& b = pts[tri[1]];
    const Point& c = pts[tri[2]];
    const double cross = (b.x() - a.x()) * (c.y() - a.y()) - (b.y() - a.y()) * (c.x() - a.x());
    if (cross < 0.0)
        std::swap(tri[1], tri[2]);
    return tri;
}

// Triangulates the strip between two concentric rings whose point j sits at angle
// 2*pi*j/count. Angles are compared as exact fractions so that the pattern repeats
// identically in every sector shared by both ring counts.
inline void stitch_rings(std::vector<Triangle>& tris, const std::vector<Point>& pts, int inner_start,
                         long inner_count, int outer_start, long outer_count) {
    long p = 0, q = 0;
    while (p < inner_count || q < outer_count) {
        const int ip = inner_start + static_cast<int>(p % inner_count);
        const int oq = outer_start + static_cast<int>(q % outer_count);
        const bool advance_inner =
            q == outer_count || (p < inner_count && (p + 1) * outer_count <= (q + 1) * inner_count);
        if (advance_inner) {
            const int ip1 = inner_start + static_cast<int>((p + 1) % inner_count);
            tris.push_back(ccw(pts, {ip, ip1, oq}));
            ++p;
        } else {
            const int oq1 = outer_start + static_cast<int>((q + 1) % outer_count);
            tris.push_back(ccw(pts, {ip, oq1, oq}));
            ++q;
        }
    }
}

} // namespace detail

/// Number of concentric rings used by `make_disk` at a given refinement.
inline int disk_ring_count(int refinement) { return 1 << (refinement + 1); }

///
/// Round disk centered at the origin.
///
/// Refinement r uses 2^(r+1) equally spaced rings. Ring i carries a multiple of 16
/// points close to 6i, so the whole mesh is invariant under rotation by 2*pi/16.
/// Boundary vertices sit exactly on the circle.
///
inline SurfaceMesh make_disk(double radius, int refinement) {
    if (!(radius > 0.0))
        throw PreconditionError("disk radius must be positive");
    if (refinement < 1)
        throw PreconditionError("refinement must be >= 1");
    constexpr int symmetry = 16;
    const int rings = disk_ring_count(refinement);
    std::vector<Point> pts{Point::Zero()};
    std::vector<Triangle> tris;
    int prev_start = 0;
    long prev_count = 1;
    for (int i = 1; i <= rings; ++i) {
        long count = symmetry * ((6L * i + symmetry - 1) / symmetry);
        count = std::max(count, prev_count == 1 ? long{symmetry} : prev_count);
        const double r = radius * static_cast<double>(i) / rings;
        const int start = static_cast<int>(pts.size());
        for (long j = 0; j < count; ++j) {
            const double theta = 2.0 * std::numbers::pi * static_cast<double>(j) / static_cast<double>(count);
            pts.emplace_back(r * std::cos(theta), r * std::sin(theta), 0.0);
        }
        if (i == 1) {
            for (long j = 0; j < count; ++j)
                tris.push_back(detail::ccw(pts, {0, start + static_cast<int>(j),
                                                 start + static_cast<int>((j + 1) % count)}));
        } else {
            detail::stitch_rings(tris, pts, prev_start, prev_count, start, count);
        }
        prev_start = start;
        prev_count = count;
    }
    return SurfaceMesh(std::move(pts), std::move(tris));
}

/// Angular point count of `make_annulus` at a given refinement.
inline int annulus_angular_count(int refinement) { return 16 << refinement; }

///
/// Annulus inner <= |x| <= outer on a polar grid: 16*2^r points per ring and enough
/// rings for roughly square cells at the mean radius. All quads are split along the
/// same diagonal, which keeps full discrete rotational symmetry.
///
inline SurfaceMesh make_annulus(double inner, double outer, int refinement) {
    if (!(inner > 0.0) || !(outer > inner))
        throw PreconditionError("annulus radii must satisfy 0 < inner < outer");
    if (refinement < 1)
        throw PreconditionError("refinement must be >= 1");
    const int nt = annulus_angular_count(refinement);
    const double mean_r = 0.5 * (inner + outer);
    const int nr = std::max(1, static_cast<int>(std::ceil((outer - inner) * nt / (2.0 * std::numbers::pi * mean_r))));
    std::vector<Point> pts;
    for (int i = 0; i <= nr; ++i) {
        const double r = inner + (outer - inner) * i / nr;
        for (int j = 0; j < nt; ++j) {
            const double theta = 2.0 * std::numbers::pi * j / nt;
            pts.emplace_back(r * std::cos(theta), r * std::sin(theta), 0.0);
        }
    }
    std::vector<Triangle> tris;
    for (int i = 0; i < nr; ++i) {
        for (int j = 0; j < nt; ++j) {
            const int a = i * nt + j;
            const int b = i * nt + (j + 1) % nt;
            const int c = (i + 1) * nt + (j + 1) % nt;
            const int d = (i + 1) * nt + j;
            tris.push_back(detail::ccw(pts, {a, b, c}));
            tris.push_back(detail::ccw(pts, {a, c, d}));
        }
    }
    return SurfaceMesh(std::move(pts), std::move(tris));
}

/// Cells per side of `make_square` at a given refinement.
inline int square_cell_count(int refinement) { return 2 << refinement; }

///
/// Square [0, side]^2 with a "union jack" pattern: cell diagonals alternate with
/// the cell parity, so the mesh has the full symmetry group of the square.
///
inline SurfaceMesh make_square(double side, int refinement) {
    if (!(side > 0.0))
        throw PreconditionError("square side must be positive");
    if (refinement < 1)
        throw PreconditionError("refinement must be >= 1");
    const int n = square_cell_count(refinement);
    std::vector<Point> pts;
    for (int i = 0; i <= n; ++i)
        for (int j = 0; j <= n; ++j)
            pts.emplace_back(side * j / n, side * i / n, 0.0);
    auto id = [n](int i, int j) { return i * (n + 1) + j; };
    std::vector<Triangle> tris;
    for (int i = 0; i < n; ++i) {
        for (int j = 0; j < n; ++j) {
            const int a = id(i, j), b = id(i, j + 1), c = id(i + 1, j + 1), d = id(i + 1, j);
            if ((i + j) % 2 == 0) {
                tris.push_back(detail::ccw(pts, {a, b, c}));
                tris.push_back(detail::ccw(pts, {a, c, d}));
            } else {
                tris.push_back(detail::ccw(pts, {a, b, d}));
                tris.push_back(detail::ccw(pts, {b, c, d}));
            }
        }
    }
    return SurfaceMesh(std::move(pts), std::move(tris));
}

///
/// Flat Moebius band: the strip [0, length] x [0, width] with (0, y) glued to
/// (length, width - y). `refinement` is the number of cells across the width; the
/// cell count along the strip is chosen for roughly square cells.
///
inline SurfaceMesh make_mobius(double length, double width, int refinement) {
    if (!(length > 0.0) || !(width > 0.0))
        throw PreconditionError("Moebius strip length and width must be positive");
    if (refinement < 1)
        throw PreconditionError("refinement must be >= 1");
    const int ny = refinement;
    const int nx = std::max(3, static_cast<int>(std::lround(refinement * length / width)));
    std::vector<Point> pts;
    for (int i = 0; i <= nx; ++i)
        for (int j = 0; j <= ny; ++j)
            pts.emplace_back(length * i / nx, width * j / ny, 0.0);
    auto id = [ny](int i, int j) { return i * (ny + 1) + j; };
    std::vector<Triangle> tris;
    for (int i = 0; i < nx; ++i) {
        for (int j = 0; j < ny; ++j) {
            const int a = id(i, j), b = id(i + 1, j), c = id(i + 1, j + 1), d = id(i, j + 1);
            tris.push_back(detail::ccw(pts, {a, b, c}));
            tris.push_back(detail::ccw(pts, {a, c, d}));
        }
    }
    std::vector<std::pair<int, int>> glue;
    for (int j = 0; j <= ny; ++j)
        glue.emplace_back(id(0, j), id(nx, ny - j));
    return SurfaceMesh(std::move(pts), std::move(tris), std::move(glue));
}

} // namespace steklov
