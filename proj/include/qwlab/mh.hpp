// mh.hpp — the edge-subdivision walk transform.
//
// Every edge {u,v} of an unweighted graph G is split by a new vertex; the
// half-edge at u carries weight 1/d_u. Two steps of the walk on the
// transformed graph, seen from the original vertices, form a lazy
// Metropolis-type chain with Glauber acceptance 1/(1 + d_v/d_u), uniform
// stationary distribution, and maximum hitting time O(n^2).
#pragma once

#include <algorithm>
#include <map>
#include <vector>

#include "qwlab/graph.hpp"
#include "qwlab/oracles.hpp"
#include "qwlab/unitary.hpp"
#include "qwlab/walk.hpp"
#include "qwlab/weighted.hpp"

namespace qwl {

// Transformed graph with id layout: originals keep ids [0, n); subdivision
// vertices follow in lexicographic edge order, so encodings are reproducible.
struct MHGraph {
    WeightedGraph weighted;
    Vertex n_original = 0;
    std::vector<Edge> sub_edges;  // subdivision vertex n_original + j covers sub_edges[j]

    Vertex vertex_count() const { return weighted.vertex_count(); }
    bool is_original(Vertex x) const { return x < n_original; }
    Edge edge_of(Vertex x) const { return sub_edges.at(x - n_original); }

    Vertex subdivision_id(Vertex u, Vertex v) const {
        const Edge e{std::min(u, v), std::max(u, v)};
        const auto it = std::lower_bound(sub_edges.begin(), sub_edges.end(), e);
        if (it == sub_edges.end() || *it != e) throw std::invalid_argument("subdivision_id: not an edge");
        return n_original + static_cast<Vertex>(it - sub_edges.begin());
    }
};

inline MHGraph mh_transform(const Graph& g) {
    MHGraph mhg;
    mhg.n_original = g.vertex_count();
    mhg.sub_edges = g.edges();  // lexicographic

    std::vector<Edge> edges;
    std::map<Edge, Rat> weights;
    for (std::size_t j = 0; j < mhg.sub_edges.size(); ++j) {
        const auto [u, v] = mhg.sub_edges[j];
        const Vertex xj = mhg.n_original + static_cast<Vertex>(j);
        edges.emplace_back(u, xj);
        edges.emplace_back(v, xj);
        weights[{u, xj}] = Rat(1, BigInt(g.degree(u)));
        weights[{v, xj}] = Rat(1, BigInt(g.degree(v)));
    }
    mhg.weighted = WeightedGraph::with_weights(
        build_graph(mhg.n_original + static_cast<Vertex>(mhg.sub_edges.size()), edges), weights);
    return mhg;
}

// Exact transition probability of the collapsed two-step chain on the
// original vertex set: u -> v with probability 1/(d_u + d_v) per neighbour,
// remainder held as a self-loop.
inline Rat collapsed_prob_exact(const Graph& g, Vertex u, Vertex v) {
    if (u == v) {
        Rat stay(1);
        for (Vertex w : g.neighbours(u)) stay -= Rat(1, BigInt(g.degree(u)) + BigInt(g.degree(w)));
        return stay;
    }
    if (!g.has_edge(u, v)) return Rat(0);
    return Rat(1, BigInt(g.degree(u)) + BigInt(g.degree(v)));
}

// The collapsed chain as a matrix; stationary distribution is uniform on X.
inline TransitionMatrix collapsed_walk(const Graph& g) {
    const Vertex n = g.vertex_count();
    Eigen::MatrixXd P = Eigen::MatrixXd::Zero(n, n);
    for (Vertex u = 0; u < n; ++u) {
        double stay = 1.0;
        for (Vertex v : g.neighbours(u)) {
            const double p = 1.0 / (static_cast<double>(g.degree(u)) + g.degree(v));
            P(u, v) = p;
            stay -= p;
        }
        P(u, u) = stay;
    }
    return {P, Eigen::VectorXd::Constant(n, 1.0 / n)};
}

struct MHHittingReport {
    double max_hitting = 0;
    double bound = 0;
    bool pass = false;
    Vertex worst_from = 0, worst_to = 0;
};

// Exact maximum hitting time on the transformed graph over connected pairs
// of original vertices, checked against 18 n^2 (n counts original vertices).
inline MHHittingReport verify_mh_hitting(const Graph& g) {
    const MHGraph mhg = mh_transform(g);
    const TransitionMatrix tm = transition_matrix(mhg.weighted);
    std::vector<Vertex> targets(mhg.n_original);
    for (Vertex u = 0; u < mhg.n_original; ++u) targets[u] = u;
    const Eigen::MatrixXd H = hitting_times_to_targets(tm, mhg.weighted.graph(), targets);

    MHHittingReport rep;
    const double n = static_cast<double>(g.vertex_count());
    rep.bound = 18.0 * n * n;
    for (Vertex u = 0; u < mhg.n_original; ++u)
        for (Vertex v = 0; v < mhg.n_original; ++v) {
            if (u == v || !std::isfinite(H(u, v))) continue;
            if (H(u, v) > rep.max_hitting) {
                rep.max_hitting = H(u, v);
                rep.worst_from = u;
                rep.worst_to = v;
            }
        }
    rep.pass = rep.max_hitting <= rep.bound;
    return rep;
}

// --- walk oracle assembled from queries to the original graph ---------------
// Register layout (a, a', x, y): two ancilla bits, the current transformed
// vertex, and the output register. The branch with x original applies the
// walk oracle of G and relabels; the branch with x a subdivision vertex
// performs the degree-controlled rotation onto its two endpoints and then
// restores both ancillas. Cost per application: 4 degree queries and 1
// unweighted walk-oracle call on G.
class MHOracleCircuit : public UnitaryAction {
  public:
    MHOracleCircuit(Graph g, MHGraph mhg, QueryLedger* ledger = nullptr)
        : g_(std::move(g)), mhg_(std::move(mhg)), ledger_(ledger), np_(mhg_.vertex_count()) {
        build();
    }
    MHOracleCircuit(const MHOracleCircuit&) = delete;
    MHOracleCircuit& operator=(const MHOracleCircuit&) = delete;

    std::uint64_t dim() const override { return 4ull * np_ * (np_ + 1ull); }

    std::uint64_t pack(int a, int ap, Vertex x, std::uint32_t y) const {
        return ((static_cast<std::uint64_t>(a) * 2 + ap) * np_ + x) * (np_ + 1ull) + y;
    }
    std::uint64_t embed_vertex(Vertex x) const { return pack(0, 0, x, 0); }

    // Collapse a clean-ancilla output onto the pair space of the transformed
    // graph; throws if any amplitude sits on a dirty ancilla.
    StateVector extract_pair(const StateVector& s, const PairSpace& ps) const {
        StateVector out;
        for (const auto& [label, amp] : s.amplitudes()) {
            const std::uint32_t y = static_cast<std::uint32_t>(label % (np_ + 1ull));
            std::uint64_t rest = label / (np_ + 1ull);
            const Vertex x = static_cast<Vertex>(rest % np_);
            const std::uint64_t anc = rest / np_;
            if (anc != 0) throw std::runtime_error("extract_pair: dirty ancilla registers");
            out.add(ps.pack(x, y), amp);
        }
        return out;
    }

    // Mass left on dirty ancilla labels (diagnostic).
    static double dirty_ancilla_mass(const StateVector& s, std::uint64_t np) {
        double mass = 0;
        for (const auto& [label, amp] : s.amplitudes())
            if (label / ((np + 1ull) * np) != 0) mass += std::norm(amp);
        return mass;
    }

  protected:
    StateVector apply_impl(const StateVector& s, bool adjoint) const override {
        return raw(*pipeline_, s, adjoint);
    }

    void on_apply() const override {
        if (!ledger_) return;
        ledger_->degree += 4;
        ledger_->walk_oracle += 1;
    }

  private:
    void build() {
        const Graph& g = g_;
        const MHGraph& mhg = mhg_;
        const std::uint64_t np = np_;
        const std::uint64_t ydim = np + 1ull;
        const std::uint64_t full = dim();
        const Vertex n_orig = mhg.n_original;

        auto unpack = [np, ydim](std::uint64_t l) {
            const std::uint32_t y = static_cast<std::uint32_t>(l % ydim);
            std::uint64_t rest = l / ydim;
            const Vertex x = static_cast<Vertex>(rest % np);
            const int ap = static_cast<int>((rest / np) % 2);
            const int a = static_cast<int>(rest / np / 2);
            return std::tuple{a, ap, x, y};
        };
        auto repack = [np, ydim](int a, int ap, Vertex x, std::uint32_t y) {
            return ((static_cast<std::uint64_t>(a) * 2 + ap) * np + x) * ydim + y;
        };

        // a ^= [x is a subdivision vertex]
        auto mark_branch = PermutationUnitary::involution(full, [unpack, repack, n_orig](std::uint64_t l) {
            auto [a, ap, x, y] = unpack(l);
            if (x >= n_orig) a ^= 1;
            return repack(a, ap, x, y);
        });

        // Branch a = 0, x = x_u original: |x_u>|0> -> uniform superposition
        // over the subdivision vertices of u's edges (walk oracle of G with
        // the output relabelled). Block per (a, a', x) key over y.
        auto original_branch = std::make_shared<RegisterBlockUnitary>(
            4ull * np, ydim, [&g, &mhg, n_orig](std::uint64_t key) {
                const Vertex x = static_cast<Vertex>(key % mhg.vertex_count());
                const int a = static_cast<int>(key / mhg.vertex_count() / 2);
                RegisterBlockUnitary::Block blk;
                if (a != 0 || x >= n_orig) {
                    blk.slots = {0};
                    blk.matrix = Eigen::MatrixXcd::Identity(1, 1);
                    return blk;
                }
                OracleRow row;
                const double p = 1.0 / g.degree(x);
                for (Vertex v : g.neighbours(x)) row.emplace_back(mhg.subdivision_id(x, v), p);
                std::sort(row.begin(), row.end());
                return detail::oracle_block(x, row);
            });

        // Branch a = 1 step 1: rotation on a' with angles from the endpoint
        // degrees of the subdivision vertex.
        auto rotation = std::make_shared<DegreeControlledRotation>(g, mhg, full, unpack, repack);

        // Step 2: conditioned on a', toggle y between 0 and one endpoint.
        auto select = PermutationUnitary::involution(full, [unpack, repack, n_orig, &mhg](std::uint64_t l) {
            auto [a, ap, x, y] = unpack(l);
            if (a != 1 || x < n_orig) return l;
            const auto [u, v] = mhg.edge_of(x);
            const std::uint32_t target = (ap == 0 ? u : v) + 1;
            if (y == 0) return repack(a, ap, x, target);
            if (y == target) return repack(a, ap, x, 0u);
            return l;
        });

        // Step 3: a' ^= [y holds the larger endpoint].
        auto unflag = PermutationUnitary::involution(full, [unpack, repack, n_orig, &mhg](std::uint64_t l) {
            auto [a, ap, x, y] = unpack(l);
            if (a != 1 || x < n_orig) return l;
            const auto [u, v] = mhg.edge_of(x);
            if (y == v + 1) ap ^= 1;
            return repack(a, ap, x, y);
        });

        pipeline_ = std::make_shared<ComposedUnitary>(std::vector<UnitaryPtr>{
            mark_branch, original_branch, rotation, select, unflag, mark_branch});
    }

    // Rotation |0>_{a'} -> cos |0> + sin |1> with cos^2 = (1/d_u)/(1/d_u + 1/d_v),
    // applied on the subdivision branch only.
    class DegreeControlledRotation : public UnitaryAction {
      public:
        template <class Unpack, class Repack>
        DegreeControlledRotation(const Graph& g, const MHGraph& mhg, std::uint64_t full, Unpack unpack,
                                 Repack repack)
            : full_(full) {
            unpack_ = unpack;
            repack_ = repack;
            g_ = &g;
            mhg_ = &mhg;
        }

        std::uint64_t dim() const override { return full_; }

      protected:
        StateVector apply_impl(const StateVector& s, bool adjoint) const override {
            StateVector out;
            for (const auto& [l, amp] : s.amplitudes()) {
                auto [a, ap, x, y] = unpack_(l);
                if (a != 1 || x < mhg_->n_original) {
                    out.add(l, amp);
                    continue;
                }
                const auto [u, v] = mhg_->edge_of(x);
                const double wu = 1.0 / g_->degree(u), wv = 1.0 / g_->degree(v);
                const double c = std::sqrt(wu / (wu + wv)), sn = std::sqrt(wv / (wu + wv));
                // column for a'=0: (c, s); for a'=1: (-s, c); adjoint transposes
                double c00 = c, c10 = sn, c01 = -sn, c11 = c;
                if (adjoint) std::swap(c10, c01);
                if (ap == 0) {
                    out.add(repack_(a, 0, x, y), amp * c00);
                    out.add(repack_(a, 1, x, y), amp * c10);
                } else {
                    out.add(repack_(a, 0, x, y), amp * c01);
                    out.add(repack_(a, 1, x, y), amp * c11);
                }
            }
            return out;
        }

      private:
        std::uint64_t full_;
        std::function<std::tuple<int, int, Vertex, std::uint32_t>(std::uint64_t)> unpack_;
        std::function<std::uint64_t(int, int, Vertex, std::uint32_t)> repack_;
        const Graph* g_;
        const MHGraph* mhg_;
    };

    Graph g_;
    MHGraph mhg_;
    QueryLedger* ledger_;
    std::uint64_t np_;
    UnitaryPtr pipeline_;
};

// Pair-space walk oracle for the transformed graph, with columns taken from
// the circuit above and the usual deterministic completion. Ledger charge per
// application reflects the circuit cost.
inline std::shared_ptr<RegisterBlockUnitary> mh_u_from_components(const Graph& g, const MHGraph& mhg,
                                                                  QueryLedger* ledger = nullptr) {
    auto circuit = std::make_shared<MHOracleCircuit>(g, mhg);
    const std::uint32_t np = mhg.vertex_count();
    PairSpace ps{np};
    auto factory = [circuit, ps, np](std::uint64_t key) {
        const Vertex x = static_cast<Vertex>(key);
        StateVector col = circuit->column(circuit->embed_vertex(x));
        if (MHOracleCircuit::dirty_ancilla_mass(col, np) > 1e-18)
            throw std::runtime_error("mh_u_from_components: ancillas not restored");
        const StateVector pair_col = circuit->extract_pair(col, ps);

        RegisterBlockUnitary::Block blk;
        blk.slots.push_back(0);
        for (const auto& [label, amp] : pair_col.amplitudes()) blk.slots.push_back(label % ps.stride());
        std::sort(blk.slots.begin() + 1, blk.slots.end());
        Eigen::VectorXcd col0 = Eigen::VectorXcd::Zero(static_cast<Eigen::Index>(blk.slots.size()));
        for (std::size_t r = 1; r < blk.slots.size(); ++r)
            col0(static_cast<Eigen::Index>(r)) = pair_col.amplitude(ps.pack(x, static_cast<std::uint32_t>(blk.slots[r])));
        col0 /= col0.norm();
        blk.matrix = complete_isometry_block(col0);
        return blk;
    };
    RegisterBlockUnitary::ApplyHook hook;
    if (ledger)
        hook = [ledger] {
            ledger->weighted_walk_oracle += 1;
            ledger->degree += 4;
            ledger->walk_oracle += 1;
        };
    return std::make_shared<RegisterBlockUnitary>(np, ps.stride(), std::move(factory), std::move(hook));
}

}  // namespace qwl
