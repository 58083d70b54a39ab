// weighted.hpp — weighted graphs with exact rational edge weights.
//
// Weights are kept as exact rationals so detailed-balance and stationarity
// checks can be asserted without tolerances; float views are derived on
// demand for the numeric paths.
#pragma once

#include <boost/multiprecision/cpp_int.hpp>
#include <boost/rational.hpp>

#include <map>
#include <sstream>
#include <stdexcept>
#include <string>
#include <vector>

#include "qwlab/graph.hpp"

namespace qwl {

using BigInt = boost::multiprecision::cpp_int;
using Rat = boost::rational<BigInt>;

inline double to_double(const Rat& r) {
    return static_cast<double>(r.numerator()) / static_cast<double>(r.denominator());
}

inline Rat parse_weight_token(const std::string& tok) {
    const auto slash = tok.find('/');
    if (slash != std::string::npos) {
        BigInt p(tok.substr(0, slash)), q(tok.substr(slash + 1));
        if (q == 0) throw std::invalid_argument("weight token with zero denominator");
        return Rat(p, q);
    }
    const auto dot = tok.find('.');
    if (dot != std::string::npos) {
        std::string digits = tok.substr(0, dot) + tok.substr(dot + 1);
        const bool neg = !digits.empty() && digits[0] == '-';
        // strip leading zeros so cpp_int does not read the string as octal
        std::string body = neg ? digits.substr(1) : digits;
        body.erase(0, std::min(body.find_first_not_of('0'), body.size() - 1));
        digits = (neg ? "-" : "") + body;
        BigInt q = 1;
        for (std::size_t i = 0; i < tok.size() - dot - 1; ++i) q *= 10;
        return Rat(BigInt(digits), q);
    }
    return Rat(BigInt(tok), 1);
}

inline std::string weight_token(const Rat& r) {
    std::ostringstream ss;
    ss << r.numerator();
    if (r.denominator() != 1) ss << "/" << r.denominator();
    return ss.str();
}

class WeightedGraph {
  public:
    // All edge weights 1 (the simple random walk).
    static WeightedGraph unweighted(Graph g) {
        WeightedGraph wg;
        wg.graph_ = std::move(g);
        const Vertex n = wg.graph_.vertex_count();
        wg.weights_.resize(n);
        for (Vertex u = 0; u < n; ++u)
            wg.weights_[u].assign(wg.graph_.degree(u), Rat(1));
        wg.finish();
        return wg;
    }

    // Weights keyed by edge in either orientation; every edge must be covered.
    static WeightedGraph with_weights(Graph g, const std::map<Edge, Rat>& w) {
        WeightedGraph wg;
        wg.graph_ = std::move(g);
        const Vertex n = wg.graph_.vertex_count();
        wg.weights_.resize(n);
        for (Vertex u = 0; u < n; ++u) {
            const auto& nbrs = wg.graph_.neighbours(u);
            wg.weights_[u].resize(nbrs.size());
            for (std::size_t j = 0; j < nbrs.size(); ++j) {
                const Vertex v = nbrs[j];
                auto it = w.find({std::min(u, v), std::max(u, v)});
                if (it == w.end()) throw std::invalid_argument("missing weight for an edge");
                if (it->second <= Rat(0)) throw std::invalid_argument("edge weights must be positive");
                wg.weights_[u][j] = it->second;
            }
        }
        wg.finish();
        return wg;
    }

    const Graph& graph() const { return graph_; }
    Vertex vertex_count() const { return graph_.vertex_count(); }

    const Rat& weight_at(Vertex u, std::size_t slot) const { return weights_[u][slot]; }

    Rat weight(Vertex u, Vertex v) const {
        const auto& nbrs = graph_.neighbours(u);
        const auto it = std::lower_bound(nbrs.begin(), nbrs.end(), v);
        if (it == nbrs.end() || *it != v) throw std::invalid_argument("weight: not an edge");
        return weights_[u][static_cast<std::size_t>(it - nbrs.begin())];
    }

    // w_u = sum of incident edge weights.
    const Rat& weighted_degree(Vertex u) const { return wdeg_[u]; }
    // W(G) = sum over vertices of w_u (each edge counted from both sides).
    const Rat& total_weight() const { return total_; }

    // Least common multiple of all weight denominators; scaling by it makes
    // every weight an integer.
    const BigInt& common_denominator() const { return denom_; }
    BigInt scaled_weight(Vertex u, Vertex v) const {
        const Rat w = weight(u, v) * Rat(denom_);
        return w.numerator();  // denominator is 1 by construction
    }
    BigInt scaled_weighted_degree(Vertex u) const {
        const Rat w = wdeg_[u] * Rat(denom_);
        return w.numerator();
    }

    // Transition probability along adjacency slot j of u, as a double.
    double transition_prob(Vertex u, std::size_t slot) const {
        return to_double(weights_[u][slot] / wdeg_[u]);
    }
    Rat transition_prob_exact(Vertex u, std::size_t slot) const {
        return weights_[u][slot] / wdeg_[u];
    }

    // Cumulative transition weights per vertex, for walk sampling.
    std::vector<double> row_cdf(Vertex u) const {
        std::vector<double> cdf(graph_.degree(u));
        double acc = 0;
        for (std::size_t j = 0; j < cdf.size(); ++j) {
            acc += to_double(weights_[u][j]);
            cdf[j] = acc;
        }
        return cdf;
    }

  private:
    void finish() {
        const Vertex n = graph_.vertex_count();
        wdeg_.assign(n, Rat(0));
        total_ = Rat(0);
        denom_ = 1;
        for (Vertex u = 0; u < n; ++u) {
            for (const Rat& w : weights_[u]) {
                wdeg_[u] += w;
                denom_ = boost::multiprecision::lcm(denom_, w.denominator());
            }
            total_ += wdeg_[u];
        }
    }

    Graph graph_;
    std::vector<std::vector<Rat>> weights_;
    std::vector<Rat> wdeg_;
    Rat total_;
    BigInt denom_ = 1;
};

// Weighted edge-list text format: "n m" header, then "u v w" rows with w a
// rational token "p/q" (or integer / decimal on input).
inline void write_weighted_edge_list(std::ostream& os, const WeightedGraph& wg) {
    os << wg.vertex_count() << " " << wg.graph().edge_count() << "\n";
    for (const auto& [u, v] : wg.graph().edges())
        os << u << " " << v << " " << weight_token(wg.weight(u, v)) << "\n";
}

inline std::string to_weighted_edge_list(const WeightedGraph& wg) {
    std::ostringstream ss;
    write_weighted_edge_list(ss, wg);
    return ss.str();
}

inline WeightedGraph read_weighted_edge_list(std::istream& is) {
    Vertex n = 0;
    std::size_t m = 0;
    if (!(is >> n >> m)) throw std::runtime_error("weighted edge list: bad header");
    std::vector<Edge> edges;
    std::map<Edge, Rat> w;
    for (std::size_t i = 0; i < m; ++i) {
        Vertex u, v;
        std::string tok;
        if (!(is >> u >> v >> tok)) throw std::runtime_error("weighted edge list: truncated");
        Edge e{std::min(u, v), std::max(u, v)};
        edges.push_back(e);
        w[e] = parse_weight_token(tok);
    }
    return WeightedGraph::with_weights(build_graph(n, edges), w);
}

}  // namespace qwl
