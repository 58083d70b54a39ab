// graph.hpp — undirected simple graphs in the sorted adjacency-array model,
// the query oracles with ledger accounting, deterministic graph families,
// and the edge-list text format.
//
// Vertices are 0-indexed. Neighbour indices in the query API are 1-indexed
// to match the array-oracle convention (i in [1, d_u], neighbours in
// ascending vertex order).
#pragma once

#include <algorithm>
#include <cstdint>
#include <istream>
#include <optional>
#include <ostream>
#include <queue>
#include <random>
#include <set>
#include <sstream>
#include <stdexcept>
#include <string>
#include <utility>
#include <vector>

#include "qwlab/ledger.hpp"

namespace qwl {

using Vertex = std::uint32_t;
using Edge = std::pair<Vertex, Vertex>;

class Graph {
  public:
    Graph() = default;

    Vertex vertex_count() const { return static_cast<Vertex>(adjacency_.size()); }
    std::size_t edge_count() const { return edge_count_; }

    std::uint32_t degree(Vertex u) const { return static_cast<std::uint32_t>(adjacency_.at(u).size()); }
    std::uint32_t max_degree() const {
        std::size_t d = 0;
        for (const auto& row : adjacency_) d = std::max(d, row.size());
        return static_cast<std::uint32_t>(d);
    }

    const std::vector<Vertex>& neighbours(Vertex u) const { return adjacency_.at(u); }

    bool has_edge(Vertex u, Vertex v) const {
        if (u >= vertex_count() || v >= vertex_count()) return false;
        const auto& row = adjacency_[u];
        return std::binary_search(row.begin(), row.end(), v);
    }

    // Edges with u < v, sorted lexicographically.
    std::vector<Edge> edges() const {
        std::vector<Edge> out;
        out.reserve(edge_count_);
        for (Vertex u = 0; u < vertex_count(); ++u)
            for (Vertex v : adjacency_[u])
                if (u < v) out.emplace_back(u, v);
        return out;
    }

    static Graph from_edges(Vertex n, const std::vector<Edge>& edges);

  private:
    std::vector<std::vector<Vertex>> adjacency_;
    std::size_t edge_count_ = 0;
};

// Builds a graph from an edge list. Duplicate edges (in either orientation)
// collapse to one; self-loops are rejected, as are isolated vertices, since
// every walk construction assumes positive degree.
inline Graph build_graph(Vertex n, const std::vector<Edge>& edges) {
    return Graph::from_edges(n, edges);
}

inline Graph Graph::from_edges(Vertex n, const std::vector<Edge>& edges) {
    if (n < 2) throw std::invalid_argument("graph needs at least 2 vertices");
    std::vector<std::set<Vertex>> adj(n);
    std::size_t m = 0;
    for (const auto& [u, v] : edges) {
        if (u >= n || v >= n) throw std::invalid_argument("edge endpoint out of range");
        if (u == v) throw std::invalid_argument("self-loop rejected");
        if (adj[u].insert(v).second) {
            adj[v].insert(u);
            ++m;
        }
    }
    Graph g;
    g.adjacency_.resize(n);
    for (Vertex u = 0; u < n; ++u) {
        if (adj[u].empty())
            throw std::invalid_argument("isolated vertex " + std::to_string(u));
        g.adjacency_[u].assign(adj[u].begin(), adj[u].end());
    }
    g.edge_count_ = m;
    return g;
}

// --- array-model oracles -------------------------------------------------

inline std::uint32_t degree_query(const Graph& g, Vertex u, QueryLedger& ledger) {
    if (u >= g.vertex_count()) throw std::out_of_range("degree_query: bad vertex");
    ++ledger.degree;
    return g.degree(u);
}

// i is 1-indexed; returns the i-th smallest neighbour of u.
inline Vertex neighbour_query(const Graph& g, Vertex u, std::uint32_t i, QueryLedger& ledger) {
    if (u >= g.vertex_count()) throw std::out_of_range("neighbour_query: bad vertex");
    if (i < 1 || i > g.degree(u)) throw std::out_of_range("neighbour_query: index out of range");
    ++ledger.neighbour;
    return g.neighbours(u)[i - 1];
}

// Position of v in u's sorted neighbour array, found by binary search through
// neighbour_query. Uses at most ceil(log2(d_u)) + 1 neighbour queries.
inline std::uint32_t index_query(const Graph& g, Vertex u, Vertex v, QueryLedger& ledger) {
    if (u >= g.vertex_count()) throw std::out_of_range("index_query: bad vertex");
    ++ledger.index;
    std::uint32_t lo = 1, hi = g.degree(u);
    while (lo < hi) {
        const std::uint32_t mid = (lo + hi) / 2;
        if (neighbour_query(g, u, mid, ledger) < v)
            lo = mid + 1;
        else
            hi = mid;
    }
    if (neighbour_query(g, u, lo, ledger) != v)
        throw std::invalid_argument("index_query: v is not a neighbour of u");
    return lo;
}

// --- connectivity (ground truth) -----------------------------------------

// BFS component of s.
inline std::vector<Vertex> component_of(const Graph& g, Vertex s) {
    std::vector<char> seen(g.vertex_count(), 0);
    std::vector<Vertex> comp;
    std::queue<Vertex> q;
    q.push(s);
    seen[s] = 1;
    while (!q.empty()) {
        Vertex u = q.front();
        q.pop();
        comp.push_back(u);
        for (Vertex v : g.neighbours(u))
            if (!seen[v]) {
                seen[v] = 1;
                q.push(v);
            }
    }
    std::sort(comp.begin(), comp.end());
    return comp;
}

inline bool connected_oracle(const Graph& g, Vertex s, Vertex t) {
    if (s >= g.vertex_count() || t >= g.vertex_count())
        throw std::out_of_range("connected_oracle: bad vertex");
    if (s == t) return true;
    const auto comp = component_of(g, s);
    return std::binary_search(comp.begin(), comp.end(), t);
}

inline bool is_connected(const Graph& g) {
    return component_of(g, 0).size() == g.vertex_count();
}

// Component id per vertex, ids assigned in order of smallest member.
inline std::vector<std::uint32_t> component_ids(const Graph& g) {
    std::vector<std::uint32_t> id(g.vertex_count(), UINT32_MAX);
    std::uint32_t next = 0;
    for (Vertex s = 0; s < g.vertex_count(); ++s) {
        if (id[s] != UINT32_MAX) continue;
        for (Vertex u : component_of(g, s)) id[u] = next;
        ++next;
    }
    return id;
}

inline bool is_bipartite(const Graph& g) {
    std::vector<int> colour(g.vertex_count(), -1);
    for (Vertex s = 0; s < g.vertex_count(); ++s) {
        if (colour[s] != -1) continue;
        colour[s] = 0;
        std::queue<Vertex> q;
        q.push(s);
        while (!q.empty()) {
            Vertex u = q.front();
            q.pop();
            for (Vertex v : g.neighbours(u)) {
                if (colour[v] == -1) {
                    colour[v] = 1 - colour[u];
                    q.push(v);
                } else if (colour[v] == colour[u]) {
                    return false;
                }
            }
        }
    }
    return true;
}

// --- graph families -------------------------------------------------------

inline Graph make_path(Vertex n) {
    if (n < 2) throw std::invalid_argument("path: n >= 2 required");
    std::vector<Edge> e;
    for (Vertex i = 0; i + 1 < n; ++i) e.emplace_back(i, i + 1);
    return build_graph(n, e);
}

inline Graph make_cycle(Vertex n) {
    if (n < 3) throw std::invalid_argument("cycle: n >= 3 required");
    std::vector<Edge> e;
    for (Vertex i = 0; i + 1 < n; ++i) e.emplace_back(i, i + 1);
    e.emplace_back(n - 1, 0);
    return build_graph(n, e);
}

// Star with centre 0 and n-1 leaves.
inline Graph make_star(Vertex n) {
    if (n < 2) throw std::invalid_argument("star: n >= 2 required");
    std::vector<Edge> e;
    for (Vertex i = 1; i < n; ++i) e.emplace_back(0, i);
    return build_graph(n, e);
}

inline Graph make_complete(Vertex n) {
    if (n < 2) throw std::invalid_argument("complete: n >= 2 required");
    std::vector<Edge> e;
    for (Vertex u = 0; u < n; ++u)
        for (Vertex v = u + 1; v < n; ++v) e.emplace_back(u, v);
    return build_graph(n, e);
}

// Clique on [0, clique), path on [clique, clique+path), bridged at clique-1.
inline Graph make_lollipop(Vertex clique, Vertex path) {
    if (clique < 2 || path < 1) throw std::invalid_argument("lollipop: clique >= 2, path >= 1");
    std::vector<Edge> e;
    for (Vertex u = 0; u < clique; ++u)
        for (Vertex v = u + 1; v < clique; ++v) e.emplace_back(u, v);
    e.emplace_back(clique - 1, clique);
    for (Vertex i = 0; i + 1 < path; ++i) e.emplace_back(clique + i, clique + i + 1);
    return build_graph(clique + path, e);
}

// Disjoint union; the second graph's vertices are shifted past the first's.
inline Graph make_two_component(const Graph& a, const Graph& b) {
    std::vector<Edge> e = a.edges();
    const Vertex off = a.vertex_count();
    for (const auto& [u, v] : b.edges()) e.emplace_back(u + off, v + off);
    return build_graph(off + b.vertex_count(), e);
}

// Seeded Erdos-Renyi, resampled until connected (bounded attempts).
inline Graph make_er_connected(Vertex n, double p, std::uint64_t seed, int max_attempts = 1000) {
    if (n < 2) throw std::invalid_argument("er_connected: n >= 2 required");
    std::mt19937_64 eng(seed);
    for (int attempt = 0; attempt < max_attempts; ++attempt) {
        std::vector<Edge> e;
        for (Vertex u = 0; u < n; ++u)
            for (Vertex v = u + 1; v < n; ++v) {
                const double x = static_cast<double>(eng() >> 11) * 0x1.0p-53;
                if (x < p) e.emplace_back(u, v);
            }
        bool positive_degree = true;
        {
            std::vector<std::uint32_t> deg(n, 0);
            for (const auto& [u, v] : e) {
                ++deg[u];
                ++deg[v];
            }
            for (auto d : deg)
                if (d == 0) positive_degree = false;
        }
        if (!positive_degree) continue;
        Graph g = build_graph(n, e);
        if (is_connected(g)) return g;
    }
    throw std::runtime_error("er_connected: no connected sample within attempt cap");
}

// Family dispatch used by the CLI: name plus a small parameter pack.
struct FamilySpec {
    std::string name;             // path|cycle|star|complete|lollipop|two_component|er_connected
    Vertex n = 0;                 // primary size
    Vertex aux = 0;               // lollipop path length / second-component size
    double p = 0.0;               // er edge probability
    std::uint64_t seed = 0;       // er seed
    std::string sub1, sub2;       // two_component sub-family names (size n and aux)
};

inline Graph generate_family(const FamilySpec& spec);

inline Graph generate_named(const std::string& name, Vertex n, std::uint64_t seed = 1, double p = 0.25) {
    if (name == "path") return make_path(n);
    if (name == "cycle") return make_cycle(n);
    if (name == "star") return make_star(n);
    if (name == "complete") return make_complete(n);
    if (name == "lollipop") return make_lollipop(n / 2 + n % 2, n / 2);
    if (name == "er_connected") return make_er_connected(n, p, seed);
    throw std::invalid_argument("unknown family: " + name);
}

inline Graph generate_family(const FamilySpec& spec) {
    if (spec.name == "lollipop" && spec.aux > 0) return make_lollipop(spec.n, spec.aux);
    if (spec.name == "two_component") {
        Graph a = generate_named(spec.sub1.empty() ? "path" : spec.sub1, spec.n, spec.seed, spec.p);
        Graph b = generate_named(spec.sub2.empty() ? "path" : spec.sub2, spec.aux ? spec.aux : spec.n,
                                 spec.seed + 1, spec.p);
        return make_two_component(a, b);
    }
    return generate_named(spec.name, spec.n, spec.seed, spec.p);
}

// --- edge-list text format -------------------------------------------------
// First line "n m", then m lines "u v", 0-indexed, edges sorted
// lexicographically with u < v. Writing is byte-deterministic.

inline void write_edge_list(std::ostream& os, const Graph& g) {
    os << g.vertex_count() << " " << g.edge_count() << "\n";
    for (const auto& [u, v] : g.edges()) os << u << " " << v << "\n";
}

inline std::string to_edge_list(const Graph& g) {
    std::ostringstream ss;
    write_edge_list(ss, g);
    return ss.str();
}

inline Graph read_edge_list(std::istream& is) {
    Vertex n = 0;
    std::size_t m = 0;
    if (!(is >> n >> m)) throw std::runtime_error("edge list: bad header");
    std::vector<Edge> e;
    e.reserve(m);
    for (std::size_t i = 0; i < m; ++i) {
        Vertex u, v;
        if (!(is >> u >> v)) throw std::runtime_error("edge list: truncated");
        e.emplace_back(u, v);
    }
    return build_graph(n, e);
}

}  // namespace qwl
