// qws.hpp — quantum walk search on the marked-absorbing walk, and the
// st-connectivity decider built on the subdivision walk.
//
// Realisation: each round prepares the time-register superposition
//   |Psi_T> = (1/sqrt(T)) sum_{t<T} |t> W(P_M)^t |s>|p_s>
// of the marked-absorbing walk over a dyadic window T, amplifies the
// component whose system registers contain a marked vertex (amplitude
// amplification with a budget-capped uniformly random iterate count, the
// standard remedy for an unknown overlap), and measures. Window sizes sweep
// geometric scales up to ~sqrt(C log C), so the walk's transport time is
// matched within a factor two without knowing it; measuring the time
// register alongside makes the good probability the window average of the
// instantaneous one, immune to the sharp arrival peaks ballistic transport
// produces. The per-round walk-operator budget is pinned up front, so ledger
// counts scale like sqrt(C log C) whether or not a round exits early.
//
// Correctness structure: the decision "found" requires a marked vertex to be
// literally observed in a register. All operators are block-diagonal across
// connected components, so when no marked vertex is reachable from s the
// observation has probability exactly zero; the disconnected-side error is
// structural, not statistical.
#pragma once

#include <cmath>
#include <cstdint>
#include <functional>
#include <map>
#include <memory>
#include <stdexcept>

#include "qwlab/graph.hpp"
#include "qwlab/ledger.hpp"
#include "qwlab/mh.hpp"
#include "qwlab/oracles.hpp"
#include "qwlab/rng.hpp"
#include "qwlab/statevector.hpp"
#include "qwlab/szegedy.hpp"
#include "qwlab/walk.hpp"
#include "qwlab/weighted.hpp"

namespace qwl {

struct QwsOptions {
    int rounds = 14;                  // measurement rounds before giving up
    double time_scale = 1.0;          // multiplier on sqrt(C log C)
    std::uint64_t min_time = 4;       // floor for the window-size scale
    double round_budget_factor = 3.0; // per-round walk-step cap, in units of the time scale
    std::uint64_t max_amplification = 24;  // cap on amplification iterations per round
    // extra ledger charge per absorbing-oracle application (e.g. the
    // component costs of an oracle assembled from queries)
    RegisterBlockUnitary::ApplyHook oracle_cost_hook = {};
};

struct QwsResult {
    Vertex vertex = 0;
    bool found_marked = false;
    int rounds_used = 0;
};

// Searches for a marked vertex from s on the walk defined by the edge
// weights. C_bound must upper-bound the commute time from s to the marked
// set whenever one is reachable; it controls the evolution-time scale.
inline QwsResult quantum_walk_search(const WeightedGraph& wg, Vertex s,
                                     const std::function<bool(Vertex)>& is_marked, double C_bound,
                                     Rng& rng, QueryLedger& ledger, const QwsOptions& opt = {}) {
    const std::uint32_t n = wg.vertex_count();
    if (s >= n) throw std::out_of_range("quantum_walk_search: bad start vertex");
    if (C_bound < 1) throw std::invalid_argument("quantum_walk_search: C_bound must be >= 1");

    // Shared lazy memo: the predicate is only ever evaluated on vertices
    // that amplitude actually reaches, hence never outside the component of
    // s and never on invalid labels.
    auto memo = std::make_shared<std::map<Vertex, bool>>();
    auto marked_memo = [memo, &is_marked, n](Vertex u) {
        if (u >= n) throw std::logic_error("marked predicate queried on invalid label");
        auto it = memo->find(u);
        if (it == memo->end()) it = memo->emplace(u, is_marked(u)).first;
        return it->second;
    };

    ledger.marked_check += 1;
    if (marked_memo(s)) return {s, true, 0};

    PairSpace ps{n};
    auto oracle = make_absorbing_oracle(wg, marked_memo, &ledger, opt.oracle_cost_hook);
    SzegedyWalk walk(oracle, n, &ledger);

    const double logC = std::max(1.0, std::log(C_bound));
    const auto T_scale = std::max<std::uint64_t>(
        opt.min_time, static_cast<std::uint64_t>(std::ceil(opt.time_scale * std::sqrt(C_bound * logC))));

    const StateVector psi0 = oracle->apply(StateVector::basis(ps.null_pair(s)));

    // joint labels: time * pair_dim + pair_label
    const std::uint64_t pair_dim = ps.dim();
    auto system_of = [pair_dim](std::uint64_t joint) { return joint % pair_dim; };

    auto good_system = [&](std::uint64_t label) {
        if (marked_memo(ps.first(label))) return true;
        return ps.has_vertex_second(label) && marked_memo(ps.second_vertex(label));
    };
    auto good_flip = [&](const StateVector& st) {
        ledger.marked_check += 2;
        StateVector out;
        for (const auto& [l, a] : st.amplitudes()) out.add(l, good_system(system_of(l)) ? -a : a);
        return out;
    };

    // Time-register superposition over window T; the walk applications are
    // charged through the operator itself.
    auto prepare_window = [&](std::uint64_t T) {
        StateVector joint;
        StateVector cur = psi0;
        const Amp coeff(1.0 / std::sqrt(static_cast<double>(T)), 0);
        for (std::uint64_t t = 0; t < T; ++t) {
            if (t > 0) cur = walk.apply(cur);
            for (const auto& [l, a] : cur.amplitudes()) joint.add(t * pair_dim + l, coeff * a);
        }
        return joint;
    };
    // Reflection about the prepared window state. Performed in memory;
    // charged as the prepare-reflect-unprepare circuit it stands for
    // (2(T-1) walk steps, which themselves cost oracle calls and checks).
    auto window_reflection = [&](const StateVector& psi_T, std::uint64_t T, const StateVector& st) {
        ledger.szegedy_step += 2 * (T - 1);
        ledger.weighted_walk_oracle += 4 * (T - 1) + 2;
        ledger.marked_check += 8 * (T - 1) + 4;
        if (opt.oracle_cost_hook)
            for (std::uint64_t i = 0; i < 4 * (T - 1) + 2; ++i) opt.oracle_cost_hook();
        const Amp ov = inner_product(psi_T, st);
        StateVector out = st;
        out.scale(Amp(-1, 0));
        out.axpy(Amp(2, 0) * ov, psi_T);
        out.prune();
        return out;
    };

    // Window sizes are fixed fractions of the time scale (transport times on
    // walks with a valid commute bound sit at a roughly size-independent
    // fraction of sqrt(C log C)), floored for very small instances. The
    // sweep length is therefore independent of n, which keeps the expected
    // ledger cost proportional to the time scale itself.
    std::vector<std::uint64_t> scales;
    for (const double frac : {1.0 / 16, 1.0 / 8, 1.0 / 4, 1.0 / 2, 1.0}) {
        const auto T = std::max<std::uint64_t>(
            opt.min_time, static_cast<std::uint64_t>(std::llround(frac * static_cast<double>(T_scale))));
        if (scales.empty() || T > scales.back()) scales.push_back(T);
    }

    Vertex fallback = s;
    for (int r = 0; r < opt.rounds; ++r) {
        const std::uint64_t T_base = scales[static_cast<std::size_t>(r) % scales.size()];
        // jittered window size in [T_base, 2 T_base); avoids resonances
        // between the window boundary and the walk's revival times
        const std::uint64_t T = T_base + rng.index(T_base);
        const double budget = opt.round_budget_factor * static_cast<double>(T_scale);
        // Small windows only pay off when the transport time is short, and
        // then their good mass is large; cap their amplification low so that
        // instances with long transport do not burn budget on them.
        const std::uint64_t kmax_here =
            (4 * T_base < T_scale) ? std::min<std::uint64_t>(opt.max_amplification, 6)
                                   : opt.max_amplification;
        const auto kcap = std::min<std::uint64_t>(
            kmax_here,
            static_cast<std::uint64_t>(std::max(0.0, (budget / static_cast<double>(T) - 1.0) / 2.0)));
        const std::uint64_t k = rng.index(kcap + 1);

        const StateVector psi_T = prepare_window(T);
        StateVector chi = psi_T;
        for (std::uint64_t g = 0; g < k; ++g)
            chi = window_reflection(psi_T, T, good_flip(chi));

        const std::uint64_t outcome = system_of(chi.measure(rng));
        const Vertex u = ps.first(outcome);
        ledger.marked_check += 1;
        if (marked_memo(u)) return {u, true, r + 1};
        if (ps.has_vertex_second(outcome)) {
            const Vertex v = ps.second_vertex(outcome);
            ledger.marked_check += 1;
            if (marked_memo(v)) return {v, true, r + 1};
        }
        fallback = u;
    }
    return {fallback, false, opt.rounds};
}

enum class UstconAnswer { connected, disconnected };

struct UstconMhResult {
    UstconAnswer answer = UstconAnswer::disconnected;
    QwsResult search;
};

// Single-walk st-connectivity decider: search for x_t on the subdivision
// walk of g with the commute-time bound 36 n^2, answer "connected" exactly
// when the search observes x_t. One-sided by construction.
inline UstconMhResult ustcon_mh(const Graph& g, Vertex s, Vertex t, Rng& rng, QueryLedger& ledger,
                                QwsOptions opt = {}) {
    if (s >= g.vertex_count() || t >= g.vertex_count())
        throw std::out_of_range("ustcon_mh: bad endpoint");
    if (s == t) return {UstconAnswer::connected, {s, true, 0}};

    const MHGraph mhg = mh_transform(g);
    const double n = static_cast<double>(g.vertex_count());
    const double C_bound = 36.0 * n * n;
    // charge the per-application cost of assembling the transformed-walk
    // oracle from queries to g
    if (!opt.oracle_cost_hook) {
        QueryLedger* led = &ledger;
        opt.oracle_cost_hook = [led] {
            led->degree += 4;
            led->walk_oracle += 1;
        };
    }
    // original vertices keep their ids in the transformed graph
    const auto res = quantum_walk_search(
        mhg.weighted, s, [t](Vertex u) { return u == t; }, C_bound, rng, ledger, opt);
    return {res.found_marked && res.vertex == t ? UstconAnswer::connected : UstconAnswer::disconnected,
            res};
}

}  // namespace qwl
