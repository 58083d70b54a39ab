// oracles.hpp — quantum walk oracles on the pair space.
//
// Every oracle is specified by its action on the |u>|0> slice:
//   |u>|0>  ->  sum_v sqrt(P_{u,v}) |u>|v>
// and completed to a unitary per first-register block by deterministic
// Gram-Schmidt over basis order. Algorithms only ever touch the reachable
// subspace, so the completion never influences results; a support-confinement
// test asserts this.
#pragma once

#include <functional>
#include <memory>
#include <vector>

#include "qwlab/graph.hpp"
#include "qwlab/ledger.hpp"
#include "qwlab/unitary.hpp"
#include "qwlab/walk.hpp"
#include "qwlab/weighted.hpp"

namespace qwl {

// Row model: sorted (neighbour, transition probability) pairs for one vertex.
using OracleRow = std::vector<std::pair<Vertex, double>>;
using RowFn = std::function<OracleRow(Vertex)>;

namespace detail {

inline RegisterBlockUnitary::Block oracle_block(Vertex u, const OracleRow& row) {
    (void)u;
    RegisterBlockUnitary::Block blk;
    const auto d = static_cast<Eigen::Index>(row.size());
    blk.slots.reserve(row.size() + 1);
    blk.slots.push_back(0);  // null slot
    for (const auto& [v, p] : row) blk.slots.push_back(v + 1ull);
    Eigen::VectorXcd col0 = Eigen::VectorXcd::Zero(d + 1);
    for (Eigen::Index j = 0; j < d; ++j) col0(j + 1) = std::sqrt(row[static_cast<std::size_t>(j)].second);
    col0 /= col0.norm();
    blk.matrix = complete_isometry_block(col0);
    return blk;
}

}  // namespace detail

// Oracle over an arbitrary row model, blocks built lazily per vertex.
inline std::shared_ptr<RegisterBlockUnitary> make_row_oracle(std::uint32_t n, RowFn rows,
                                                             RegisterBlockUnitary::ApplyHook hook = {}) {
    PairSpace ps{n};
    auto factory = [rows = std::move(rows)](std::uint64_t key) {
        return detail::oracle_block(static_cast<Vertex>(key), rows(static_cast<Vertex>(key)));
    };
    return std::make_shared<RegisterBlockUnitary>(n, ps.stride(), std::move(factory), std::move(hook));
}

// Unweighted quantum walk oracle: |u>|0> -> (1/sqrt(d_u)) sum_{v in N(u)} |u>|v>.
inline std::shared_ptr<RegisterBlockUnitary> make_walk_oracle(const Graph& g, QueryLedger* ledger = nullptr) {
    auto rows = [g](Vertex u) {
        OracleRow row;
        const double p = 1.0 / g.degree(u);
        for (Vertex v : g.neighbours(u)) row.emplace_back(v, p);
        return row;
    };
    auto hook = ledger ? RegisterBlockUnitary::ApplyHook([ledger] { ++ledger->walk_oracle; })
                       : RegisterBlockUnitary::ApplyHook{};
    return make_row_oracle(g.vertex_count(), rows, std::move(hook));
}

// Weighted quantum walk oracle: amplitudes sqrt(W_{u,v}/w_u).
inline std::shared_ptr<RegisterBlockUnitary> make_weighted_walk_oracle(const WeightedGraph& wg,
                                                                       QueryLedger* ledger = nullptr) {
    auto rows = [wg](Vertex u) {
        OracleRow row;
        const auto& nbrs = wg.graph().neighbours(u);
        for (std::size_t j = 0; j < nbrs.size(); ++j) row.emplace_back(nbrs[j], wg.transition_prob(u, j));
        return row;
    };
    auto hook = ledger ? RegisterBlockUnitary::ApplyHook([ledger] { ++ledger->weighted_walk_oracle; })
                       : RegisterBlockUnitary::ApplyHook{};
    return make_row_oracle(wg.vertex_count(), rows, std::move(hook));
}

// Walk oracle of the marked-absorbing chain: rows of marked vertices become
// self-loops (|m>|0> -> |m>|m>). The marked predicate is evaluated lazily,
// only for vertices actually reached by amplitude, and memoised; each oracle
// application is charged two predicate evaluations (compute and uncompute of
// the marked flag), matching the circuit it stands in for.
inline std::shared_ptr<RegisterBlockUnitary> make_absorbing_oracle(
    const WeightedGraph& wg, std::function<bool(Vertex)> is_marked, QueryLedger* ledger = nullptr,
    RegisterBlockUnitary::ApplyHook extra_cost = {}) {
    auto memo = std::make_shared<std::map<Vertex, bool>>();
    auto rows = [wg, is_marked = std::move(is_marked), memo](Vertex u) {
        auto it = memo->find(u);
        if (it == memo->end()) it = memo->emplace(u, is_marked(u)).first;
        OracleRow row;
        if (it->second) {
            row.emplace_back(u, 1.0);
            return row;
        }
        const auto& nbrs = wg.graph().neighbours(u);
        for (std::size_t j = 0; j < nbrs.size(); ++j) row.emplace_back(nbrs[j], wg.transition_prob(u, j));
        return row;
    };
    RegisterBlockUnitary::ApplyHook hook = [ledger, extra_cost = std::move(extra_cost)] {
        if (ledger) {
            ++ledger->weighted_walk_oracle;
            ledger->marked_check += 2;
        }
        if (extra_cost) extra_cost();
    };
    return make_row_oracle(wg.vertex_count(), rows, std::move(hook));
}

// --- array-model composition -------------------------------------------------
// The walk oracle assembled from sorted-adjacency-array queries:
//   O_D, then the degree-controlled Fourier map F, then O_N, then the inverse
//   index and degree queries. Lives on the register tuple (d, u, i, v); the
//   walk action appears on the (0, u, 0, 0) slice with outputs on
//   (0, u, 0, v+1). Per application it costs 2 degree queries, 1 neighbour
//   query and 1 index query, the latter standing for ceil(log2 d_max) + 1
//   neighbour queries of binary search.
class ArrayModelWalkOracle : public UnitaryAction {
  public:
    explicit ArrayModelWalkOracle(Graph g, QueryLedger* ledger = nullptr)
        : g_(std::move(g)), ledger_(ledger), n_(g_.vertex_count()), dmax_(g_.max_degree()) {
        build();
    }
    ArrayModelWalkOracle(const ArrayModelWalkOracle&) = delete;
    ArrayModelWalkOracle& operator=(const ArrayModelWalkOracle&) = delete;

    std::uint64_t dim() const override { return pipeline_->dim(); }

    // label = ((d * n + u) * (dmax+1) + i) * (n+1) + v
    std::uint64_t pack(std::uint32_t d, Vertex u, std::uint32_t i, std::uint32_t v) const {
        return ((static_cast<std::uint64_t>(d) * n_ + u) * (dmax_ + 1ull) + i) * (n_ + 1ull) + v;
    }
    std::uint64_t embed_vertex(Vertex u) const { return pack(0, u, 0, 0); }

    // Collapses an output on the clean-ancilla slice to a pair-space state.
    StateVector extract_pair(const StateVector& s, const PairSpace& ps) const {
        StateVector out;
        for (const auto& [label, amp] : s.amplitudes()) {
            const std::uint32_t v = static_cast<std::uint32_t>(label % (n_ + 1ull));
            std::uint64_t rest = label / (n_ + 1ull);
            const std::uint32_t i = static_cast<std::uint32_t>(rest % (dmax_ + 1ull));
            rest /= (dmax_ + 1ull);
            const Vertex u = static_cast<Vertex>(rest % n_);
            const std::uint32_t d = static_cast<std::uint32_t>(rest / n_);
            if (d != 0 || i != 0) throw std::runtime_error("extract_pair: dirty ancilla registers");
            out.add(ps.pack(u, v), amp);
        }
        return out;
    }

    std::uint32_t neighbour_queries_per_index_query() const {
        std::uint32_t b = 0;
        while ((1u << b) < dmax_) ++b;
        return b + 1;
    }

  protected:
    StateVector apply_impl(const StateVector& s, bool adjoint) const override {
        return raw(*pipeline_, s, adjoint);
    }

    void on_apply() const override {
        if (!ledger_) return;
        ledger_->degree += 2;
        ledger_->neighbour += 1;
        ledger_->index += 1;
        ledger_->neighbour += neighbour_queries_per_index_query();
    }

  private:
    void build() {
        const Graph& g = g_;
        const std::uint64_t vdim = n_ + 1ull;
        const std::uint64_t idim = dmax_ + 1ull;
        const std::uint64_t full = (n_ + 1ull) * n_ * idim * vdim;

        const std::uint64_t n = n_;
        const std::uint64_t dmax = dmax_;
        auto unpack = [n, idim, vdim](std::uint64_t label) {
            const std::uint32_t v = static_cast<std::uint32_t>(label % vdim);
            std::uint64_t rest = label / vdim;
            const std::uint32_t i = static_cast<std::uint32_t>(rest % idim);
            rest /= idim;
            const Vertex u = static_cast<Vertex>(rest % n);
            const std::uint32_t d = static_cast<std::uint32_t>(rest / n);
            return std::tuple{d, u, i, v};
        };
        auto repack = [n, idim, vdim](std::uint32_t d, Vertex u, std::uint32_t i, std::uint32_t v) {
            return ((static_cast<std::uint64_t>(d) * n + u) * idim + i) * vdim + v;
        };

        // O_D: toggle the degree register between 0 and d_u.
        auto deg_toggle = PermutationUnitary::involution(full, [&g, unpack, repack](std::uint64_t l) {
            auto [d, u, i, v] = unpack(l);
            const std::uint32_t du = g.degree(u);
            if (d == 0) return repack(du, u, i, v);
            if (d == du) return repack(0, u, i, v);
            return l;
        });

        // F: per degree value d >= 1, map |i=0> to the uniform superposition
        // over i in [1, d], completed per block. Keyed by (d, u) with the i
        // register as the active slot dimension; the pipeline only reaches F
        // on the v = 0 slice, so blocks are pinned there and every other v
        // value passes through.
        auto fourier = std::make_shared<RegisterBlockUnitary>(
            (n_ + 1ull) * n_, idim * vdim, [this, vdim](std::uint64_t key) {
                const std::uint32_t d = static_cast<std::uint32_t>(key / n_);
                RegisterBlockUnitary::Block blk;
                blk.slots = {0};
                blk.matrix = Eigen::MatrixXcd::Identity(1, 1);
                if (d == 0 || d > dmax_) return blk;
                // v = 0 slice only; other v values untouched (the pipeline
                // applies F before any v is set and after v is cleared).
                blk.slots.resize(d + 1);
                for (std::uint32_t i = 0; i <= d; ++i) blk.slots[i] = static_cast<std::uint64_t>(i) * vdim;
                Eigen::VectorXcd col0 = Eigen::VectorXcd::Zero(d + 1);
                for (std::uint32_t i = 1; i <= d; ++i) col0(i) = 1.0 / std::sqrt(static_cast<double>(d));
                blk.matrix = complete_isometry_block(col0);
                return blk;
            });

        // O_N: toggle v between 0 and v_i(u)+1, for valid i.
        auto nbr_toggle = PermutationUnitary::involution(full, [&g, unpack, repack](std::uint64_t l) {
            auto [d, u, i, v] = unpack(l);
            if (i < 1 || i > g.degree(u)) return l;
            const std::uint32_t vi = g.neighbours(u)[i - 1] + 1;
            if (v == 0) return repack(d, u, i, vi);
            if (v == vi) return repack(d, u, i, 0u);
            return l;
        });

        // O_I^dagger: toggle i between 0 and index_of(v in N(u)).
        auto idx_toggle = PermutationUnitary::involution(full, [&g, unpack, repack](std::uint64_t l) {
            auto [d, u, i, v] = unpack(l);
            if (v == 0) return l;
            const auto& nbrs = g.neighbours(u);
            const auto it = std::lower_bound(nbrs.begin(), nbrs.end(), v - 1);
            if (it == nbrs.end() || *it != v - 1) return l;
            const std::uint32_t idx = static_cast<std::uint32_t>(it - nbrs.begin()) + 1;
            if (i == idx) return repack(d, u, 0u, v);
            if (i == 0) return repack(d, u, idx, v);
            return l;
        });

        pipeline_ = std::make_shared<ComposedUnitary>(std::vector<UnitaryPtr>{
            deg_toggle, fourier, nbr_toggle, idx_toggle, deg_toggle});
    }

    Graph g_;
    QueryLedger* ledger_;
    std::uint64_t n_, dmax_;
    UnitaryPtr pipeline_;
};

}  // namespace qwl
