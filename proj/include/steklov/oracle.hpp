#pragma once

// Closed-form and brute-force reference values used by tests and `verify`.

#include "steklov/embedded_graph.hpp"
#include "steklov/error.hpp"

#include <Eigen/Dense>

#include <algorithm>
#include <cmath>
#include <set>
#include <vector>

namespace steklov::oracle {

/// Steklov eigenvalues of the disk of radius R: 0, then n/R twice for n >= 1.
inline std::vector<double> disk_steklov(int count, double radius = 1.0) {
    std::vector<double> out;
    for (int j = 0; static_cast<int>(out.size()) < count; ++j)
        out.push_back(((j + 1) / 2) / radius);
    return out;
}

///
/// Steklov eigenvalues of the annulus rho < r < 1, ascending with multiplicity.
/// Frequency n contributes the two roots of the boundary conditions for
/// u = (a r^n + b r^-n) trig(n theta) (twice each), and n = 0 uses u = a + b ln r.
///
inline std::vector<double> annulus_steklov(int count, double rho) {
    if (!(rho > 0.0 && rho < 1.0))
        throw PreconditionError("annulus inner radius must be in (0, 1)");
    std::vector<double> all;
    auto roots = [](const Eigen::Matrix2d& N, const Eigen::Matrix2d& D) {
        const Eigen::EigenSolver<Eigen::Matrix2d> es(D.inverse() * N);
        return std::array<double, 2>{es.eigenvalues()[0].real(), es.eigenvalues()[1].real()};
    };
    {
        Eigen::Matrix2d N, D;
        N << 0.0, 1.0, 0.0, -1.0 / rho;
        D << 1.0, 0.0, 1.0, std::log(rho);
        for (double s : roots(N, D))
            all.push_back(std::abs(s) < 1e-14 ? 0.0 : s);
    }
    for (int n = 1; n <= count; ++n) {
        Eigen::Matrix2d N, D;
        N << n, -n, -n * std::pow(rho, n - 1), n * std::pow(rho, -n - 1);
        D << 1.0, 1.0, std::pow(rho, n), std::pow(rho, -n);
        for (double s : roots(N, D)) {
            all.push_back(s);
            all.push_back(s);
        }
    }
    std::sort(all.begin(), all.end());
    all.resize(static_cast<std::size_t>(count));
    return all;
}

/// First positive zero of J_0 by bisection on [2, 3].
inline double bessel_j0_first_root() {
    double lo = 2.0, hi = 3.0;
    for (int i = 0; i < 200; ++i) {
        const double mid = 0.5 * (lo + hi);
        (std::cyl_bessel_j(0.0, lo) * std::cyl_bessel_j(0.0, mid) <= 0.0 ? hi : lo) = mid;
    }
    return 0.5 * (lo + hi);
}

/// Neumann eigenvalues of the square of side pi: k^2 + l^2, ascending.
inline std::vector<double> neumann_pi_square(int count) {
    std::vector<double> all;
    const int m = static_cast<int>(std::ceil(std::sqrt(static_cast<double>(count)))) + 2;
    for (int k = 0; k <= m; ++k)
        for (int l = 0; l <= m; ++l)
            all.push_back(k * k + l * l);
    std::sort(all.begin(), all.end());
    all.resize(static_cast<std::size_t>(count));
    return all;
}

/// Gamma_1 / Gamma_2 edge sets at x by exhaustive enumeration of circuits and
/// simple paths, for small graphs.
struct GammaOracle {
    std::vector<bool> gamma1;
    std::vector<bool> gamma2;
    bool shaped = true; // every edge at x is in gamma1 or gamma2
};

inline GammaOracle brute_gamma(const RotationSystem& rs, int x) {
    // split marks into leaves
    int n = rs.vertex_count();
    std::vector<std::pair<int, int>> ends;
    std::vector<bool> leaf(n, false);
    for (int e = 0; e < rs.edge_count(); ++e) {
        auto [a, b] = rs.edge_ends(e);
        if (rs.is_marked(a)) {
            a = n++;
            leaf.push_back(true);
        }
        if (rs.is_marked(b)) {
            b = n++;
            leaf.push_back(true);
        }
        ends.emplace_back(a, b);
    }
    const int ne = static_cast<int>(ends.size());
    auto connected_without = [&](int from, int to, int skip) {
        std::vector<bool> seen(n, false);
        std::vector<int> todo{from};
        seen[from] = true;
        while (!todo.empty()) {
            const int v = todo.back();
            todo.pop_back();
            if (v == to)
                return true;
            for (int e = 0; e < ne; ++e) {
                if (e == skip)
                    continue;
                for (auto [p, q] : {ends[e], std::pair{ends[e].second, ends[e].first}})
                    if (p == v && !seen[q]) {
                        seen[q] = true;
                        todo.push_back(q);
                    }
            }
        }
        return false;
    };
    GammaOracle out;
    out.gamma1.assign(ne, false);
    out.gamma2.assign(ne, false);
    std::vector<bool> circuit_vertex(n, false);
    for (int e = 0; e < ne; ++e) {
        const auto [a, b] = ends[e];
        if (!connected_without(x, a, -1))
            continue;
        if (a == b || connected_without(a, b, e)) {
            out.gamma1[e] = true;
            circuit_vertex[a] = circuit_vertex[b] = true;
        }
    }
    // simple paths from x
    std::vector<int> path_edges;
    std::vector<bool> on_path(n, false);
    std::vector<std::vector<int>> leaf_paths;
    auto dfs = [&](auto&& self, int v) -> void {
        if (circuit_vertex[v])
            for (int e : path_edges)
                out.gamma1[e] = true;
        if (leaf[v])
            leaf_paths.push_back(path_edges);
        for (int e = 0; e < ne; ++e) {
            for (auto [p, q] : {ends[e], std::pair{ends[e].second, ends[e].first}}) {
                if (p != v || on_path[q])
                    continue;
                on_path[q] = true;
                path_edges.push_back(e);
                self(self, q);
                path_edges.pop_back();
                on_path[q] = false;
                break; // a non-loop edge matches one orientation only
            }
        }
    };
    on_path[x] = true;
    dfs(dfs, x);
    std::vector<bool> gamma1_vertex(n, false);
    for (int e = 0; e < ne; ++e)
        if (out.gamma1[e])
            gamma1_vertex[ends[e].first] = gamma1_vertex[ends[e].second] = true;
    for (const auto& p : leaf_paths) {
        bool clean = true;
        for (int e : p) {
            const auto [a, b] = ends[e];
            if (out.gamma1[e] || (a != x && gamma1_vertex[a]) || (b != x && gamma1_vertex[b]))
                clean = false;
        }
        if (clean)
            for (int e : p)
                out.gamma2[e] = true;
    }
    for (int e = 0; e < ne; ++e)
        if ((ends[e].first == x || ends[e].second == x) && !out.gamma1[e] && !out.gamma2[e])
            out.shaped = false;
    return out;
}

} // namespace steklov::oracle
