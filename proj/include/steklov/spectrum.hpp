#pragma once

#include "steklov/error.hpp"
#include "steklov/mesh.hpp"
#include "steklov/solver.hpp"

#include <Eigen/Core>

#include <algorithm>
#include <climits>
#include <cmath>
#include <numbers>
#include <optional>
#include <string>
#include <vector>

namespace steklov {

/// A group of numerically coincident eigenvalues standing in for one eigenspace.
struct MultiplicityCluster {
    int first_index = 0; // index k of the lowest member
    double value = 0.0;  // mean of the members
    int dim = 1;         // numerical multiplicity m_k
    double spread = 0.0; // max - min inside the cluster
    double gap_above = std::numeric_limits<double>::infinity();

    int last_index() const { return first_index + dim - 1; }
};

struct ClusterTolerance {
    double rel_tol = 1e-3;
    double abs_floor = 1e-9;
};

///
/// Greedy gap clustering of an ascending sequence: a new cluster starts whenever
/// the step to the previous value exceeds rel_tol * max(|value|, abs_floor).
///
inline std::vector<MultiplicityCluster> cluster_multiplicities(const Eigen::VectorXd& values,
                                                               ClusterTolerance tol = {}) {
    std::vector<MultiplicityCluster> out;
    const Eigen::Index n = values.size();
    Eigen::Index start = 0;
    for (Eigen::Index j = 1; j <= n; ++j) {
        const bool split = j == n || values[j] - values[j - 1] > tol.rel_tol * std::max(std::abs(values[j]), tol.abs_floor);
        if (!split)
            continue;
        MultiplicityCluster c;
        c.first_index = static_cast<int>(start);
        c.dim = static_cast<int>(j - start);
        c.value = values.segment(start, j - start).mean();
        c.spread = values[j - 1] - values[start];
        if (j < n)
            c.gap_above = values[j] - values[j - 1];
        out.push_back(c);
        start = j;
    }
    return out;
}

inline std::vector<MultiplicityCluster> cluster_multiplicities(const Spectrum& spectrum, ClusterTolerance tol = {}) {
    return cluster_multiplicities(spectrum.eigenvalues, tol);
}

inline int bound_in1(int reduced_euler, int k) { return 2 * (2 - reduced_euler) + 2 * k + 1; }

/// Second bound, lowered by one when it holds strictly (even k, or any k off the disk).
inline int bound_in2(int reduced_euler, int boundary_count, int k, bool strict) {
    return 2 * (2 - reduced_euler) + 2 * boundary_count + k - (strict ? 1 : 0);
}

struct BoundRecord {
    int k = 0;
    int m = 0;
    int bound_in1 = 0;
    std::optional<int> bound_in2;
    bool strict = false;
    bool pass = true;
    double value = 0.0;
    double spread = 0.0;
    double gap_above = 0.0;
};

struct BoundReport {
    std::vector<BoundRecord> records;
    TopologySummary topology;
    bool disk = false;
    int violations = 0;

    bool pass() const { return violations == 0; }
};

///
/// Checks every cluster with k >= 1 (and k <= max_k) against
/// m <= 2(2 - chi_bar) + 2k + 1 and m <= 2(2 - chi_bar) + 2l + k, the latter strict
/// for even k and for every k when the surface is not a disk. Violations are
/// recorded, never thrown.
///
inline BoundReport check_bounds(const std::vector<MultiplicityCluster>& clusters, const TopologySummary& topo,
                                bool disk, int max_k = INT_MAX) {
    BoundReport report;
    report.topology = topo;
    report.disk = disk;
    for (const auto& c : clusters) {
        if (c.first_index < 1 || c.first_index > max_k)
            continue;
        BoundRecord r;
        r.k = c.first_index;
        r.m = c.dim;
        r.value = c.value;
        r.spread = c.spread;
        r.gap_above = c.gap_above;
        r.strict = r.k % 2 == 0 || !disk;
        r.bound_in1 = bound_in1(topo.reduced_euler, r.k);
        r.bound_in2 = bound_in2(topo.reduced_euler, topo.boundary_count, r.k, r.strict);
        r.pass = r.m <= r.bound_in1 && r.m <= *r.bound_in2;
        report.violations += r.pass ? 0 : 1;
        report.records.push_back(r);
    }
    return report;
}

/// The boundary-independent bound for Robin/Dirichlet/Neumann clusters:
/// m <= 2(2 - chi_bar) + 2k + 1.
inline BoundReport check_bound_in11(const std::vector<MultiplicityCluster>& clusters, const TopologySummary& topo,
                                    int max_k = INT_MAX) {
    BoundReport report;
    report.topology = topo;
    report.disk = is_disk(topo);
    for (const auto& c : clusters) {
        if (c.first_index < 1 || c.first_index > max_k)
            continue;
        BoundRecord r;
        r.k = c.first_index;
        r.m = c.dim;
        r.value = c.value;
        r.spread = c.spread;
        r.gap_above = c.gap_above;
        r.bound_in1 = bound_in1(topo.reduced_euler, r.k);
        r.pass = r.m <= r.bound_in1;
        report.violations += r.pass ? 0 : 1;
        report.records.push_back(r);
    }
    return report;
}

struct WeylReport {
    double weighted_length = 0.0;
    double slope = 0.0;               // least-squares c in N(lambda) ~ c * lambda
    double candidate_two_pi = 0.0;    // (1/2pi) * int rho ds
    double candidate_pi = 0.0;        // (1/pi) * int rho ds
    std::vector<double> lambdas;      // midpoints between consecutive eigenvalues
    std::vector<double> counts;       // N(lambda): eigenvalues strictly below lambda
    std::vector<double> residuals;    // N(lambda) - slope * lambda
    double max_abs_residual = 0.0;
    double top_half_drift = 0.0;      // linear trend of residuals over the upper half, times its span

    double ratio_two_pi() const { return slope / candidate_two_pi; }
    double ratio_pi() const { return slope / candidate_pi; }
};

inline WeylReport weyl_residual(const Eigen::VectorXd& eigenvalues, double weighted_length) {
    if (eigenvalues.size() < 20)
        throw PreconditionError("Weyl residual needs at least 20 eigenvalues");
    WeylReport w;
    w.weighted_length = weighted_length;
    w.candidate_two_pi = weighted_length / (2.0 * std::numbers::pi);
    w.candidate_pi = weighted_length / std::numbers::pi;
    for (Eigen::Index j = 0; j + 1 < eigenvalues.size(); ++j) {
        // numerically coincident neighbours have no counting point between them
        if (!(eigenvalues[j + 1] - eigenvalues[j] > 1e-8 * std::max(1.0, std::abs(eigenvalues[j + 1]))))
            continue;
        w.lambdas.push_back(0.5 * (eigenvalues[j] + eigenvalues[j + 1]));
        w.counts.push_back(static_cast<double>(j + 1));
    }
    double num = 0.0, den = 0.0;
    for (std::size_t i = 0; i < w.lambdas.size(); ++i) {
        num += w.counts[i] * w.lambdas[i];
        den += w.lambdas[i] * w.lambdas[i];
    }
    w.slope = num / den;
    for (std::size_t i = 0; i < w.lambdas.size(); ++i) {
        w.residuals.push_back(w.counts[i] - w.slope * w.lambdas[i]);
        w.max_abs_residual = std::max(w.max_abs_residual, std::abs(w.residuals.back()));
    }
    const std::size_t half = w.lambdas.size() / 2;
    const std::size_t m = w.lambdas.size() - half;
    if (m >= 2) {
        double lx = 0.0, ly = 0.0;
        for (std::size_t i = half; i < w.lambdas.size(); ++i) {
            lx += w.lambdas[i];
            ly += w.residuals[i];
        }
        lx /= static_cast<double>(m);
        ly /= static_cast<double>(m);
        double sxy = 0.0, sxx = 0.0;
        for (std::size_t i = half; i < w.lambdas.size(); ++i) {
            sxy += (w.lambdas[i] - lx) * (w.residuals[i] - ly);
            sxx += (w.lambdas[i] - lx) * (w.lambdas[i] - lx);
        }
        const double trend = sxx > 0.0 ? sxy / sxx : 0.0;
        w.top_half_drift = trend * (w.lambdas.back() - w.lambdas[half]);
    }
    return w;
}

struct PairingReport {
    int K = 0;                         // every cluster above index K has dim <= 2
    std::vector<double> pair_gaps;     // sigma_{2k} - sigma_{2k-1}, k = 1, 2, ...
    std::vector<double> relative_gaps; // pair gap / sigma_{2k}
    int max_dim_above_first = 0;       // largest dim among clusters after the first non-zero one
};

inline PairingReport disk_pairing(const Eigen::VectorXd& eigenvalues,
                                  const std::vector<MultiplicityCluster>& clusters, const TopologySummary& topo) {
    if (!is_disk(topo))
        throw PreconditionError("disk pairing needs a surface homeomorphic to a disk");
    PairingReport r;
    for (const auto& c : clusters)
        if (c.dim > 2)
            r.K = std::max(r.K, c.last_index());
    bool seen_first = false;
    for (const auto& c : clusters) {
        if (c.first_index < 1)
            continue;
        if (seen_first)
            r.max_dim_above_first = std::max(r.max_dim_above_first, c.dim);
        seen_first = true;
    }
    for (Eigen::Index k = 1; 2 * k < eigenvalues.size(); ++k) {
        const double gap = eigenvalues[2 * k] - eigenvalues[2 * k - 1];
        r.pair_gaps.push_back(gap);
        r.relative_gaps.push_back(gap / std::abs(eigenvalues[2 * k]));
    }
    return r;
}

///
/// True when the boundary is a single closed polygon with exactly four corners
/// (turning angle above pi/4) joined by sides of equal length.
///
inline bool is_square_domain(const SurfaceMesh& mesh) {
    if (mesh.boundary_components().size() != 1 || !is_disk(topology(mesh)))
        return false;
    const auto& cycle = mesh.boundary_components()[0];
    const std::size_t n = cycle.size();
    std::vector<std::size_t> corners;
    for (std::size_t i = 0; i < n; ++i) {
        const Point& a = mesh.position(cycle[(i + n - 1) % n]);
        const Point& b = mesh.position(cycle[i]);
        const Point& c = mesh.position(cycle[(i + 1) % n]);
        const Point u = (b - a).normalized(), w = (c - b).normalized();
        const double turn = std::acos(std::clamp(u.dot(w), -1.0, 1.0));
        if (turn > std::numbers::pi / 4)
            corners.push_back(i);
    }
    if (corners.size() != 4)
        return false;
    std::vector<double> sides;
    for (std::size_t s = 0; s < 4; ++s)
        sides.push_back((mesh.position(cycle[corners[(s + 1) % 4]]) - mesh.position(cycle[corners[s]])).norm());
    const auto [lo, hi] = std::minmax_element(sides.begin(), sides.end());
    return *hi - *lo <= 1e-9 * *hi;
}

enum class Verdict { pass, fail, inconclusive };

inline const char* to_string(Verdict v) {
    switch (v) {
    case Verdict::pass: return "pass";
    case Verdict::fail: return "fail";
    default: return "inconclusive";
    }
}

struct QuadrupleReport {
    int offset = 0;                      // index of the first eigenvalue of the first block
    std::vector<double> block_means;
    std::vector<double> relative_spreads; // (max - min) / mean per 4-block
    int blocks_compared = 0;
    Verdict verdict = Verdict::inconclusive;
    std::string note;
};

///
/// Groups the tail of a square's spectrum into consecutive 4-blocks and tests whether
/// the within-block relative spread decreases from block to block. The block
/// alignment (offset modulo 4) is the one with the smallest total spread. Once a
/// block's spread falls under `noise_floor` the remaining blocks are at rounding
/// level and are not compared. Meshes with fewer than `min_vertices` vertices give
/// an inconclusive verdict.
///
inline QuadrupleReport quadruple_check(const SurfaceMesh& mesh, const Eigen::VectorXd& eigenvalues,
                                       int first_index = 1, int min_blocks = 3, int min_vertices = 1000,
                                       double noise_floor = 1e-10) {
    if (!is_square_domain(mesh))
        throw PreconditionError("quadruple check needs a square domain");
    QuadrupleReport r;
    if (mesh.vertex_count() < min_vertices) {
        r.note = "mesh too coarse to resolve quadruples";
        return r;
    }
    const int n = static_cast<int>(eigenvalues.size());
    double best = std::numeric_limits<double>::infinity();
    for (int off = first_index; off < first_index + 4; ++off) {
        double total = 0.0;
        int blocks = 0;
        for (int s = off; s + 4 <= n; s += 4, ++blocks) {
            const auto block = eigenvalues.segment(s, 4);
            total += (block.maxCoeff() - block.minCoeff()) / block.mean();
        }
        if (blocks >= min_blocks && total / blocks < best) {
            best = total / blocks;
            r.offset = off;
        }
    }
    if (!std::isfinite(best)) {
        r.note = "not enough eigenvalues for the requested number of blocks";
        return r;
    }
    for (int s = r.offset; s + 4 <= n; s += 4) {
        const auto block = eigenvalues.segment(s, 4);
        r.block_means.push_back(block.mean());
        r.relative_spreads.push_back((block.maxCoeff() - block.minCoeff()) / block.mean());
    }
    std::size_t compared = 1;
    bool decreasing = true;
    for (std::size_t i = 1; i < r.relative_spreads.size() && r.relative_spreads[i - 1] > noise_floor; ++i, ++compared)
        decreasing = decreasing && r.relative_spreads[i] < r.relative_spreads[i - 1];
    r.blocks_compared = static_cast<int>(compared);
    if (compared < static_cast<std::size_t>(min_blocks)) {
        r.note = "fewer resolved blocks than required";
        return r;
    }
    r.verdict = decreasing ? Verdict::pass : Verdict::fail;
    return r;
}

} // namespace steklov
