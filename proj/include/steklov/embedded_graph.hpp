#pragma once

#include "steklov/disjoint_sets.hpp"
#include "steklov/error.hpp"

#include <algorithm>
#include <functional>
#include <istream>
#include <numeric>
#include <optional>
#include <ostream>
#include <random>
#include <set>
#include <sstream>
#include <string>
#include <vector>

namespace steklov {

///
/// Orientable cellular embedding of a finite graph: darts 0..n-1, a rotation
/// `sigma` giving the cyclic order of darts at each vertex, and a fixed-point-free
/// involution `alpha` pairing the two darts of each edge. Faces are the orbits of
/// sigma o alpha.
///
/// Vertices are numbered by their smallest dart, edges by their smallest dart.
/// Some vertices can be marked as collapsed boundary components.
///
class RotationSystem {
public:
    RotationSystem() = default;

    RotationSystem(std::vector<int> sigma, std::vector<int> alpha, std::vector<int> marked_vertices = {},
                   std::optional<int> surface_euler = std::nullopt)
        : sigma_(std::move(sigma)), alpha_(std::move(alpha)) {
        validate_permutations();
        index();
        for (int v : marked_vertices) {
            if (v < 0 || v >= vertex_count())
                throw PreconditionError("marked vertex " + std::to_string(v) + " out of range");
            mark_darts_.push_back(vertex_darts_[v].front());
        }
        std::sort(mark_darts_.begin(), mark_darts_.end());
        mark_darts_.erase(std::unique(mark_darts_.begin(), mark_darts_.end()), mark_darts_.end());
        if (surface_euler) {
            if (component_count() == 1 && *surface_euler > cellular_euler())
                throw PreconditionError("surface Euler characteristic exceeds that of the cellular embedding");
            chi_ = surface_euler;
        }
    }

    int dart_count() const { return static_cast<int>(sigma_.size()); }
    int vertex_count() const { return static_cast<int>(vertex_darts_.size()); }
    int edge_count() const { return dart_count() / 2; }
    int sigma(int d) const { return sigma_[d]; }
    int alpha(int d) const { return alpha_[d]; }
    int phi(int d) const { return sigma_[alpha_[d]]; }
    const std::vector<int>& sigma() const { return sigma_; }
    const std::vector<int>& alpha() const { return alpha_; }

    int vertex_of(int d) const { return dart_vertex_[d]; }
    int edge_of(int d) const { return dart_edge_[d]; }
    /// Darts of edge e: (smaller, larger).
    std::pair<int, int> edge_darts(int e) const { return {edge_dart_[e], alpha_[edge_dart_[e]]}; }
    std::pair<int, int> edge_ends(int e) const { return {vertex_of(edge_darts(e).first), vertex_of(edge_darts(e).second)}; }
    const std::vector<int>& darts_at(int v) const { return vertex_darts_[v]; }
    int degree(int v) const { return static_cast<int>(vertex_darts_[v].size()); }

    std::vector<int> marked_vertices() const {
        std::vector<int> out;
        for (int d : mark_darts_)
            out.push_back(vertex_of(d));
        std::sort(out.begin(), out.end());
        return out;
    }
    bool is_marked(int v) const {
        return std::any_of(mark_darts_.begin(), mark_darts_.end(), [&](int d) { return vertex_of(d) == v; });
    }

    /// Face label of every dart (faces numbered by smallest dart).
    std::vector<int> face_labels(int* count = nullptr) const {
        std::vector<int> label(dart_count(), -1);
        int f = 0;
        for (int d = 0; d < dart_count(); ++d) {
            if (label[d] >= 0)
                continue;
            for (int c = d; label[c] < 0; c = phi(c))
                label[c] = f;
            ++f;
        }
        if (count)
            *count = f;
        return label;
    }

    int component_count() const {
        DisjointSets sets(vertex_count());
        for (int e = 0; e < edge_count(); ++e)
            sets.unite(edge_ends(e).first, edge_ends(e).second);
        int n = 0;
        sets.labels(&n);
        return n;
    }

    /// V - E + F of the surface the rotation system cellularly embeds into (connected case).
    int cellular_euler() const;

    /// Ambient surface Euler characteristic: the CHI value when given, else the cellular one.
    int surface_euler() const { return chi_ ? *chi_ : cellular_euler(); }
    bool has_explicit_euler() const { return chi_.has_value(); }

private:
    void validate_permutations() const {
        const int n = static_cast<int>(sigma_.size());
        if (n == 0 || n % 2 != 0)
            throw ParseError("dart count must be positive and even", 0);
        if (static_cast<int>(alpha_.size()) != n)
            throw ParseError("alpha and sigma act on different dart sets", 0);
        for (const auto* p : {&sigma_, &alpha_}) {
            std::vector<bool> hit(n, false);
            for (int x : *p) {
                if (x < 0 || x >= n || hit[x])
                    throw ParseError("malformed permutation", 0);
                hit[x] = true;
            }
        }
        for (int d = 0; d < n; ++d)
            if (alpha_[d] == d || alpha_[alpha_[d]] != d)
                throw ParseError("alpha must be a fixed-point-free involution", 0);
    }

    void index() {
        const int n = dart_count();
        dart_vertex_.assign(n, -1);
        for (int d = 0; d < n; ++d) {
            if (dart_vertex_[d] >= 0)
                continue;
            const int v = static_cast<int>(vertex_darts_.size());
            vertex_darts_.emplace_back();
            for (int c = d; dart_vertex_[c] < 0; c = sigma_[c]) {
                dart_vertex_[c] = v;
                vertex_darts_[v].push_back(c);
            }
        }
        dart_edge_.assign(n, -1);
        for (int d = 0; d < n; ++d) {
            if (dart_edge_[d] >= 0)
                continue;
            dart_edge_[d] = dart_edge_[alpha_[d]] = static_cast<int>(edge_dart_.size());
            edge_dart_.push_back(d);
        }
    }

    std::vector<int> sigma_;
    std::vector<int> alpha_;
    std::vector<int> mark_darts_;
    std::optional<int> chi_;
    std::vector<int> dart_vertex_;
    std::vector<int> dart_edge_;
    std::vector<int> edge_dart_;
    std::vector<std::vector<int>> vertex_darts_;
};

inline int face_count(const RotationSystem& rs) {
    int f = 0;
    rs.face_labels(&f);
    return f;
}

inline int RotationSystem::cellular_euler() const { return vertex_count() - edge_count() + face_count(*this); }

/// Checks 2e = sum of vertex degrees by counting edge ends independently of the rotation.
inline bool degree_sum_check(const RotationSystem& rs) {
    std::vector<int> ends(rs.vertex_count(), 0);
    for (int e = 0; e < rs.edge_count(); ++e) {
        const auto [a, b] = rs.edge_ends(e);
        ++ends[a];
        ++ends[b];
    }
    int sum = 0;
    for (int v = 0; v < rs.vertex_count(); ++v) {
        if (ends[v] != rs.degree(v))
            return false;
        sum += rs.degree(v);
    }
    return sum == 2 * rs.edge_count();
}

struct SubgraphFaces {
    int vertices = 0;
    int edges = 0;
    int faces = 0;
};

///
/// Counts of a subgraph given by an edge subset (plus its end vertices and any
/// extra vertices). Faces of the subgraph are unions of faces of the full embedding
/// glued across the deleted edges, so disconnected subgraphs are handled.
///
inline SubgraphFaces subgraph_faces(const RotationSystem& rs, const std::vector<bool>& keep_edge,
                                    const std::vector<int>& extra_vertices = {}) {
    if (static_cast<int>(keep_edge.size()) != rs.edge_count())
        throw PreconditionError("edge mask has the wrong size");
    int nf = 0;
    const auto label = rs.face_labels(&nf);
    DisjointSets faces(nf);
    std::vector<bool> in_vertex(rs.vertex_count(), false);
    for (int v : extra_vertices)
        in_vertex.at(static_cast<std::size_t>(v)) = true;
    SubgraphFaces out;
    for (int e = 0; e < rs.edge_count(); ++e) {
        const auto [d, a] = rs.edge_darts(e);
        if (keep_edge[e]) {
            ++out.edges;
            in_vertex[rs.vertex_of(d)] = in_vertex[rs.vertex_of(a)] = true;
        } else {
            faces.unite(label[d], label[a]);
        }
    }
    out.vertices = static_cast<int>(std::count(in_vertex.begin(), in_vertex.end(), true));
    if (out.vertices == 0)
        throw PreconditionError("empty subgraph");
    // a removed vertex joins the faces around it; its edges are all deleted, which already did that
    faces.labels(&out.faces);
    return out;
}

/// Face count of the rotation system obtained by deleting edges (orbit tracing on
/// the restricted permutations), i.e. the number of boundary walks of the subgraph.
/// At least subgraph_faces, and equal to it when every face is a disk.
inline int traced_subgraph_faces(const RotationSystem& rs, const std::vector<bool>& keep_edge) {
    const int n = rs.dart_count();
    std::vector<bool> kept(n, false);
    for (int d = 0; d < n; ++d)
        kept[d] = keep_edge[rs.edge_of(d)];
    auto next_at_vertex = [&](int d) {
        int c = rs.sigma(d);
        while (!kept[c])
            c = rs.sigma(c);
        return c;
    };
    std::vector<bool> seen(n, false);
    int f = 0;
    for (int d = 0; d < n; ++d) {
        if (!kept[d] || seen[d])
            continue;
        for (int c = d; !seen[c]; c = next_at_vertex(rs.alpha(c)))
            seen[c] = true;
        ++f;
    }
    return f;
}

///
/// (v - e + f) - chi of a subgraph in the ambient surface. Non-negative by the
/// Euler inequality, zero exactly when every face of the subgraph is a disk.
///
inline int euler_defect(const RotationSystem& rs, const std::vector<bool>& keep_edge,
                        const std::vector<int>& extra_vertices = {}) {
    const auto s = subgraph_faces(rs, keep_edge, extra_vertices);
    return s.vertices - s.edges + s.faces - rs.surface_euler();
}

inline int euler_defect(const RotationSystem& rs) {
    return euler_defect(rs, std::vector<bool>(rs.edge_count(), true));
}

/// Inserts a degree-2 vertex in the middle of edge e. New darts get the next two ids.
inline RotationSystem subdivide(const RotationSystem& rs, int e) {
    auto sigma = rs.sigma();
    auto alpha = rs.alpha();
    const auto [d, a] = rs.edge_darts(e);
    const int n1 = rs.dart_count(), n2 = n1 + 1;
    sigma.push_back(n2);
    sigma.push_back(n1);
    alpha.push_back(d);
    alpha.push_back(a);
    alpha[d] = n1;
    alpha[a] = n2;
    // marked vertices keep their darts, hence their ids
    return RotationSystem(std::move(sigma), std::move(alpha), rs.marked_vertices(),
                          rs.has_explicit_euler() ? std::optional<int>(rs.surface_euler()) : std::nullopt);
}

///
/// Gamma_1 / Gamma_2 split at a vertex x of a reduced nodal graph.
///
/// Both are computed in the graph where every marked vertex is split into one
/// pendant leaf per incident edge end, so arcs reaching the boundary end at
/// distinct points. Gamma_1 holds every edge on a circuit in the component of x
/// and every bridge separating x from a circuit; Gamma_2 holds the remaining
/// branches at x that reach the boundary.
///
struct GammaDecomposition {
    int x = -1;
    std::vector<bool> gamma1; // per edge
    std::vector<bool> gamma2;
    int deg1 = 0;
    int deg2 = 0;
    int v1 = 0, e1 = 0; // vertices and edges of Gamma_1
    int v2 = 0, e2 = 0; // Gamma_2; v2 excludes boundary leaves
    bool gamma2_tree = true;
    bool a1 = true; // 2 e1 >= deg1 + 2 (v1 - 1)
    bool a2 = true; // deg x = deg1 + deg2
    bool a3 = true; // e2 - deg2 >= v2 - 1
};

namespace detail {

// Graph with marks split into leaves. Vertex ids: original non-mark vertices keep
// their id, leaves follow. Returns per edge its two ends.
struct SplitGraph {
    int n = 0;
    std::vector<std::pair<int, int>> ends;
    std::vector<bool> leaf;
};

inline SplitGraph split_marks(const RotationSystem& rs) {
    SplitGraph g;
    g.n = rs.vertex_count();
    g.leaf.assign(g.n, false);
    for (int e = 0; e < rs.edge_count(); ++e) {
        auto [a, b] = rs.edge_ends(e);
        for (int* v : {&a, &b}) {
            if (rs.is_marked(*v)) {
                *v = g.n++;
                g.leaf.push_back(true);
            }
        }
        g.ends.emplace_back(a, b);
    }
    return g;
}

// Bridges by DFS lowlink, parallel edges and loops handled via edge ids.
inline std::vector<bool> bridges(const SplitGraph& g) {
    std::vector<std::vector<std::pair<int, int>>> adj(g.n);
    for (std::size_t e = 0; e < g.ends.size(); ++e) {
        adj[g.ends[e].first].emplace_back(g.ends[e].second, static_cast<int>(e));
        if (g.ends[e].first != g.ends[e].second)
            adj[g.ends[e].second].emplace_back(g.ends[e].first, static_cast<int>(e));
    }
    std::vector<int> tin(g.n, -1), low(g.n, 0);
    std::vector<bool> bridge(g.ends.size(), false);
    int timer = 0;
    std::function<void(int, int)> dfs = [&](int v, int parent_edge) {
        tin[v] = low[v] = timer++;
        for (const auto& [w, e] : adj[v]) {
            if (e == parent_edge)
                continue;
            if (tin[w] >= 0) {
                low[v] = std::min(low[v], tin[w]);
            } else {
                dfs(w, e);
                low[v] = std::min(low[v], low[w]);
                if (low[w] > tin[v])
                    bridge[e] = true;
            }
        }
    };
    for (int v = 0; v < g.n; ++v)
        if (tin[v] < 0)
            dfs(v, -1);
    return bridge;
}

} // namespace detail

inline GammaDecomposition gamma_decompose(const RotationSystem& rs, int x) {
    if (x < 0 || x >= rs.vertex_count())
        throw PreconditionError("vertex out of range");
    if (rs.is_marked(x))
        throw PreconditionError("x must not be a boundary vertex");
    const auto g = detail::split_marks(rs);
    const auto bridge = detail::bridges(g);
    const int ne = rs.edge_count();

    std::vector<std::vector<std::pair<int, int>>> adj(g.n);
    for (int e = 0; e < ne; ++e) {
        adj[g.ends[e].first].emplace_back(g.ends[e].second, e);
        if (g.ends[e].first != g.ends[e].second)
            adj[g.ends[e].second].emplace_back(g.ends[e].first, e);
    }
    // component of x
    std::vector<bool> in_comp(g.n, false);
    std::vector<int> stack{x};
    in_comp[x] = true;
    while (!stack.empty()) {
        const int v = stack.back();
        stack.pop_back();
        for (const auto& [w, e] : adj[v])
            if (!in_comp[w]) {
                in_comp[w] = true;
                stack.push_back(w);
            }
    }
    // Rooting the component at x: the far side of a bridge is the subtree below it.
    // far_circuit[e] / far_leaf[e]: does that side contain a circuit edge / a leaf.
    std::vector<int> parent_edge(g.n, -1), order;
    std::vector<bool> visited(g.n, false);
    stack = {x};
    visited[x] = true;
    while (!stack.empty()) {
        const int v = stack.back();
        stack.pop_back();
        order.push_back(v);
        for (const auto& [w, e] : adj[v])
            if (!visited[w]) {
                visited[w] = true;
                parent_edge[w] = e;
                stack.push_back(w);
            }
    }
    std::vector<bool> sub_circuit(g.n, false), sub_leaf(g.n, false);
    for (int v : order) {
        sub_leaf[v] = g.leaf[v];
        for (const auto& [w, e] : adj[v])
            if (!bridge[e])
                sub_circuit[v] = true;
    }
    // propagate upwards in reverse DFS order
    for (auto it = order.rbegin(); it != order.rend(); ++it) {
        const int v = *it;
        if (parent_edge[v] < 0)
            continue;
        const auto [a, b] = g.ends[parent_edge[v]];
        const int up = a == v ? b : a;
        sub_circuit[up] = sub_circuit[up] || (sub_circuit[v] && bridge[parent_edge[v]]) || sub_circuit[v];
        sub_leaf[up] = sub_leaf[up] || sub_leaf[v];
    }
    // For a bridge e = (up, v) with v below: far side is the subtree of v.
    auto far_vertex = [&](int e) {
        const auto [a, b] = g.ends[e];
        return parent_edge[a] == e ? a : b;
    };

    GammaDecomposition out;
    out.x = x;
    out.gamma1.assign(ne, false);
    out.gamma2.assign(ne, false);
    for (int e = 0; e < ne; ++e) {
        if (!in_comp[g.ends[e].first])
            continue;
        out.gamma1[e] = !bridge[e] || sub_circuit[far_vertex(e)];
    }
    // Gamma_2: walk the circuit-free branches at x, keeping edges that lead to a leaf
    for (const auto& [w, e] : adj[x]) {
        if (out.gamma1[e])
            continue;
        if (!sub_leaf[far_vertex(e)])
            throw PreconditionError("edge " + std::to_string(e) + " at x reaches neither a circuit nor the boundary");
        std::vector<int> todo{w};
        out.gamma2[e] = true;
        while (!todo.empty()) {
            const int v = todo.back();
            todo.pop_back();
            for (const auto& [u, f] : adj[v])
                if (f != parent_edge[v] && parent_edge[u] == f && sub_leaf[u]) {
                    out.gamma2[f] = true;
                    todo.push_back(u);
                }
        }
    }

    std::vector<bool> v1(g.n, false), v2(g.n, false);
    for (int e = 0; e < ne; ++e) {
        const auto [a, b] = g.ends[e];
        const int at_x = (a == x) + (b == x);
        if (out.gamma1[e]) {
            ++out.e1;
            out.deg1 += at_x;
            v1[a] = v1[b] = true;
        }
        if (out.gamma2[e]) {
            ++out.e2;
            out.deg2 += at_x;
            v2[a] = v2[b] = true;
        }
    }
    for (int v = 0; v < g.n; ++v) {
        out.v1 += v1[v];
        out.v2 += v2[v] && !g.leaf[v];
    }
    if (out.e2 > 0) {
        // connected through x by construction, so a tree iff e = vertices - 1 (leaves included)
        int all2 = 0;
        for (int v = 0; v < g.n; ++v)
            all2 += v2[v];
        out.gamma2_tree = out.e2 == all2 - 1;
        for (int e = 0; e < ne; ++e)
            if (out.gamma2[e] && out.gamma1[e])
                out.gamma2_tree = false;
    }
    out.a1 = out.e1 == 0 || 2 * out.e1 >= out.deg1 + 2 * (out.v1 - 1);
    out.a2 = out.deg1 + out.deg2 == rs.degree(x);
    out.a3 = out.e2 == 0 || out.e2 - out.deg2 >= out.v2 - 1;
    return out;
}

struct LemmaL22Report {
    bool precondition_met = false;
    std::string rejection; // why the input is not a reduced-nodal-graph model
    int deg1 = 0;
    int bound = 0; // 2 l + 2 - 2 chi_bar
    int f1 = 0;    // faces of Gamma_1
    bool a1 = true;
    bool a3 = true;
    bool pass = true;      // deg1 <= bound, a1 and a3 (meaningful only when precondition_met)
    bool violation() const { return precondition_met && !pass; }
};

/// Every face of the rotation system touches a marked vertex.
inline bool every_face_marked(const RotationSystem& rs) {
    int nf = 0;
    const auto label = rs.face_labels(&nf);
    std::vector<bool> marked(nf, false);
    for (int d = 0; d < rs.dart_count(); ++d)
        if (rs.is_marked(rs.vertex_of(d)))
            marked[label[d]] = true;
    return std::all_of(marked.begin(), marked.end(), [](bool b) { return b; });
}

///
/// Degree bound deg_{Gamma_1}(x) <= 2l + 2 - 2 chi_bar at x, with the intermediate
/// relations. Inputs that cannot be a reduced nodal graph (a face without a
/// boundary mark, more marks than l, chi_bar above the cellular value, x marked or
/// an edge at x reaching neither a circuit nor a mark) are rejected, not failed.
///
inline LemmaL22Report lemma_l22_check(const RotationSystem& rs, int x, int l, int chi_bar) {
    LemmaL22Report r;
    r.bound = 2 * l + 2 - 2 * chi_bar;
    if (rs.component_count() != 1)
        r.rejection = "graph is not connected";
    else if (chi_bar > rs.cellular_euler())
        r.rejection = "chi_bar exceeds the cellular Euler characteristic";
    else if (static_cast<int>(rs.marked_vertices().size()) > l)
        r.rejection = "more marked vertices than boundary components";
    else if (rs.is_marked(x))
        r.rejection = "x is a boundary vertex";
    else if (!every_face_marked(rs))
        r.rejection = "a face contains no boundary mark";
    if (!r.rejection.empty())
        return r;
    GammaDecomposition gd;
    try {
        gd = gamma_decompose(rs, x);
    } catch (const PreconditionError& e) {
        r.rejection = e.what();
        return r;
    }
    r.precondition_met = true;
    r.deg1 = gd.deg1;
    r.a1 = gd.a1;
    r.a3 = gd.a3;
    if (gd.e1 > 0)
        r.f1 = subgraph_faces(rs, gd.gamma1).faces;
    r.pass = r.deg1 <= r.bound && r.a1 && r.a3 && gd.a2 && gd.gamma2_tree;
    return r;
}

/// Text form: DARTS n / SIGMA cycles / ALPHA pairs / MARKS vertices / optional CHI.
inline void write_rotation_system(std::ostream& out, const RotationSystem& rs) {
    out << "DARTS " << rs.dart_count() << "\nSIGMA";
    for (int v = 0; v < rs.vertex_count(); ++v) {
        out << " (";
        const auto& ds = rs.darts_at(v);
        for (std::size_t i = 0; i < ds.size(); ++i)
            out << (i ? " " : "") << ds[i];
        out << ')';
    }
    out << "\nALPHA";
    for (int e = 0; e < rs.edge_count(); ++e)
        out << " (" << rs.edge_darts(e).first << ' ' << rs.edge_darts(e).second << ')';
    out << "\nMARKS";
    for (int v : rs.marked_vertices())
        out << ' ' << v;
    out << '\n';
    if (rs.has_explicit_euler())
        out << "CHI " << rs.surface_euler() << '\n';
}

namespace detail {

inline std::vector<std::vector<int>> parse_cycles(const std::string& text, int line) {
    std::vector<std::vector<int>> cycles;
    std::vector<int>* current = nullptr;
    std::string tok;
    std::string spaced;
    for (char c : text) {
        if (c == '(' || c == ')')
            spaced += std::string(" ") + c + " ";
        else
            spaced += c;
    }
    std::istringstream in(spaced);
    while (in >> tok) {
        if (tok == "(") {
            if (current)
                throw ParseError("nested parenthesis", line);
            cycles.emplace_back();
            current = &cycles.back();
        } else if (tok == ")") {
            if (!current)
                throw ParseError("unbalanced parenthesis", line);
            current = nullptr;
        } else {
            if (!current)
                throw ParseError("dart outside a cycle", line);
            try {
                std::size_t used = 0;
                current->push_back(std::stoi(tok, &used));
                if (used != tok.size())
                    throw ParseError("bad dart '" + tok + "'", line);
            } catch (const std::logic_error&) {
                throw ParseError("bad dart '" + tok + "'", line);
            }
        }
    }
    if (current)
        throw ParseError("unterminated cycle", line);
    return cycles;
}

} // namespace detail

inline RotationSystem read_rotation_system(std::istream& in) {
    std::optional<int> darts, chi;
    std::optional<std::vector<std::vector<int>>> sigma_cycles, alpha_pairs;
    std::vector<int> marks;
    std::string raw;
    int line = 0;
    while (std::getline(in, raw)) {
        ++line;
        if (const auto hash = raw.find('#'); hash != std::string::npos)
            raw.erase(hash);
        std::istringstream ls(raw);
        std::string key;
        if (!(ls >> key))
            continue;
        std::string rest;
        std::getline(ls, rest);
        std::istringstream rs(rest);
        if (key == "DARTS") {
            int n = 0;
            if (!(rs >> n) || n <= 0)
                throw ParseError("DARTS needs a positive count", line);
            darts = n;
        } else if (key == "SIGMA") {
            sigma_cycles = detail::parse_cycles(rest, line);
        } else if (key == "ALPHA") {
            alpha_pairs = detail::parse_cycles(rest, line);
        } else if (key == "MARKS") {
            int v;
            while (rs >> v)
                marks.push_back(v);
            if (!rs.eof())
                throw ParseError("bad MARKS entry", line);
        } else if (key == "CHI") {
            int c;
            if (!(rs >> c))
                throw ParseError("CHI needs an integer", line);
            chi = c;
        } else {
            throw ParseError("unknown keyword '" + key + "'", line);
        }
    }
    if (!darts || !sigma_cycles || !alpha_pairs)
        throw ParseError("DARTS, SIGMA and ALPHA are required", line);
    const int n = *darts;
    std::vector<int> sigma(n, -1), alpha(n, -1);
    for (const auto& c : *sigma_cycles)
        for (std::size_t i = 0; i < c.size(); ++i) {
            if (c[i] < 0 || c[i] >= n || sigma[c[i]] >= 0)
                throw ParseError("SIGMA is not a permutation", 0);
            sigma[c[i]] = c[(i + 1) % c.size()];
        }
    for (int d = 0; d < n; ++d)
        if (sigma[d] < 0)
            sigma[d] = d; // omitted darts are fixed points (degree-1 vertices)
    for (const auto& p : *alpha_pairs) {
        if (p.size() != 2)
            throw ParseError("ALPHA entries must be pairs", 0);
        for (int i = 0; i < 2; ++i) {
            if (p[i] < 0 || p[i] >= n || alpha[p[i]] >= 0)
                throw ParseError("ALPHA is not an involution", 0);
            alpha[p[i]] = p[1 - i];
        }
    }
    if (std::count(alpha.begin(), alpha.end(), -1))
        throw ParseError("ALPHA leaves darts unpaired", 0);
    return RotationSystem(std::move(sigma), std::move(alpha), marks, chi);
}

struct RandomGraphOptions {
    int min_vertices = 1;
    int max_vertices = 8;
    int max_extra_edges = 8; // beyond a spanning tree; loops and parallel edges allowed
    int max_marks = 3;
};

/// Uniformly random connected multigraph with random cyclic orders and marks.
template <class Rng>
RotationSystem random_rotation_system(Rng& rng, const RandomGraphOptions& opt = {}) {
    auto uniform = [&](int lo, int hi) { return std::uniform_int_distribution<int>(lo, hi)(rng); };
    const int nv = uniform(opt.min_vertices, opt.max_vertices);
    std::vector<std::pair<int, int>> edges;
    for (int v = 1; v < nv; ++v)
        edges.emplace_back(uniform(0, v - 1), v);
    const int extra = uniform(nv == 1 ? 1 : 0, opt.max_extra_edges);
    for (int i = 0; i < extra; ++i)
        edges.emplace_back(uniform(0, nv - 1), uniform(0, nv - 1));
    const int nd = 2 * static_cast<int>(edges.size());
    std::vector<int> alpha(nd);
    std::vector<std::vector<int>> at(nv);
    for (std::size_t e = 0; e < edges.size(); ++e) {
        const int d = 2 * static_cast<int>(e);
        alpha[d] = d + 1;
        alpha[d + 1] = d;
        at[edges[e].first].push_back(d);
        at[edges[e].second].push_back(d + 1);
    }
    std::vector<int> sigma(nd);
    for (auto& ds : at) {
        std::shuffle(ds.begin(), ds.end(), rng);
        for (std::size_t i = 0; i < ds.size(); ++i)
            sigma[ds[i]] = ds[(i + 1) % ds.size()];
    }
    RotationSystem base(sigma, alpha);
    std::vector<int> verts(base.vertex_count());
    std::iota(verts.begin(), verts.end(), 0);
    std::shuffle(verts.begin(), verts.end(), rng);
    const int nm = uniform(0, std::min(opt.max_marks, base.vertex_count() - 1));
    verts.resize(static_cast<std::size_t>(nm));
    return RotationSystem(std::move(sigma), std::move(alpha), verts);
}

/// All connected rotation systems on `edges` edges (alpha pairs 2i, 2i+1), one per
/// relabeling class under edge permutations and dart swaps.
inline std::vector<RotationSystem> enumerate_rotation_systems(int edges) {
    if (edges < 1 || edges > 5)
        throw PreconditionError("exhaustive enumeration supports 1..5 edges");
    const int n = 2 * edges;
    std::vector<int> alpha(n);
    for (int d = 0; d < n; ++d)
        alpha[d] = d ^ 1;
    // relabelings preserving alpha: permute edges, optionally swap each pair
    std::vector<std::vector<int>> maps;
    std::vector<int> eperm(edges);
    std::iota(eperm.begin(), eperm.end(), 0);
    do {
        for (int flips = 0; flips < (1 << edges); ++flips) {
            std::vector<int> m(n);
            for (int e = 0; e < edges; ++e) {
                const int f = (flips >> e) & 1;
                m[2 * e] = 2 * eperm[e] + f;
                m[2 * e + 1] = 2 * eperm[e] + (1 - f);
            }
            maps.push_back(std::move(m));
        }
    } while (std::next_permutation(eperm.begin(), eperm.end()));

    std::vector<RotationSystem> out;
    std::vector<int> sigma(n), image(n);
    std::iota(sigma.begin(), sigma.end(), 0);
    do {
        bool canonical = true;
        for (const auto& m : maps) {
            // conjugate: sigma' = m o sigma o m^-1
            for (int d = 0; d < n; ++d)
                image[m[d]] = m[sigma[d]];
            if (std::lexicographical_compare(image.begin(), image.end(), sigma.begin(), sigma.end())) {
                canonical = false;
                break;
            }
        }
        if (!canonical)
            continue;
        RotationSystem rs(sigma, alpha);
        if (rs.component_count() == 1)
            out.push_back(std::move(rs));
    } while (std::next_permutation(sigma.begin(), sigma.end()));
    return out;
}

/// Same rotation system with another set of marks and ambient Euler characteristic.
inline RotationSystem with_marks(const RotationSystem& rs, std::vector<int> marks, std::optional<int> chi = std::nullopt) {
    return RotationSystem(rs.sigma(), rs.alpha(), std::move(marks), chi);
}

} // namespace steklov
