// walk.hpp — exact random-walk analytics: transition matrices, stationary
// distributions, spectral gaps, mixing-time bounds, hitting and commute
// times, and seeded walk simulation.
#pragma once

#include <Eigen/Dense>

#include <cmath>
#include <cstdint>
#include <optional>
#include <stdexcept>
#include <vector>

#include "qwlab/distribution.hpp"
#include "qwlab/graph.hpp"
#include "qwlab/ledger.hpp"
#include "qwlab/rng.hpp"
#include "qwlab/weighted.hpp"

namespace qwl {

// Row-stochastic transition matrix together with a stationary distribution
// when one is known (reversible chains). Absorbing variants carry pi of the
// underlying chain for bookkeeping but are not reversible themselves.
struct TransitionMatrix {
    Eigen::MatrixXd P;
    Eigen::VectorXd pi;

    Eigen::Index size() const { return P.rows(); }
};

inline Distribution stationary_distribution(const WeightedGraph& wg) {
    const Vertex n = wg.vertex_count();
    Eigen::VectorXd pi(n);
    const Rat total = wg.total_weight();
    for (Vertex u = 0; u < n; ++u) pi(u) = to_double(wg.weighted_degree(u) / total);
    return Distribution(pi);
}

// P_{u,v} = W_{u,v} / w_u on edges, 0 elsewhere.
inline TransitionMatrix transition_matrix(const WeightedGraph& wg) {
    const Vertex n = wg.vertex_count();
    Eigen::MatrixXd P = Eigen::MatrixXd::Zero(n, n);
    for (Vertex u = 0; u < n; ++u) {
        const auto& nbrs = wg.graph().neighbours(u);
        for (std::size_t j = 0; j < nbrs.size(); ++j) P(u, nbrs[j]) = wg.transition_prob(u, j);
    }
    return {P, stationary_distribution(wg).vec()};
}

// Rows of marked vertices replaced by self-loops.
inline TransitionMatrix absorbing_walk(const TransitionMatrix& tm, const std::vector<Vertex>& marked) {
    TransitionMatrix out = tm;
    for (Vertex m : marked) {
        out.P.row(m).setZero();
        out.P(m, m) = 1.0;
    }
    return out;
}

// --- spectrum --------------------------------------------------------------

// Eigenvalues of P computed through the similarity transform
// D^{1/2} P D^{-1/2} with D = diag(pi), which is symmetric for reversible
// chains. Sorted descending.
inline Eigen::VectorXd walk_eigenvalues(const TransitionMatrix& tm) {
    const Eigen::Index n = tm.size();
    Eigen::VectorXd sq(n), isq(n);
    for (Eigen::Index i = 0; i < n; ++i) {
        if (tm.pi(i) <= 0) throw std::invalid_argument("walk_eigenvalues: pi must be positive");
        sq(i) = std::sqrt(tm.pi(i));
        isq(i) = 1.0 / sq(i);
    }
    Eigen::MatrixXd S = sq.asDiagonal() * tm.P * isq.asDiagonal();
    S = 0.5 * (S + S.transpose().eval());  // symmetrize away roundoff
    Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> es(S);
    Eigen::VectorXd ev = es.eigenvalues();
    return ev.reverse();
}

// Absolute spectral gap min{1 - lambda_2, 1 + lambda_n}; exactly 0 for
// connected bipartite walks. Errors on disconnected input.
inline double spectral_gap(const WeightedGraph& wg) {
    if (!is_connected(wg.graph())) throw std::invalid_argument("spectral_gap: graph is disconnected");
    const Eigen::VectorXd ev = walk_eigenvalues(transition_matrix(wg));
    const Eigen::Index n = ev.size();
    double gap = 1.0;
    if (n >= 2) gap = std::min(1.0 - ev(1), 1.0 + ev(n - 1));
    if (std::abs(gap) < 1e-12) gap = 0.0;
    return gap;
}

// ceil((1/gap) * ln(1/(eps*pi_min))). Valid for gap > 0 only.
inline std::uint64_t mixing_time_bound(double gap, double pi_min, double eps) {
    if (gap <= 0) throw std::invalid_argument("mixing_time_bound: gap must be positive");
    if (!(eps > 0 && eps < 1)) throw std::invalid_argument("mixing_time_bound: eps in (0,1)");
    if (!(pi_min > 0 && pi_min <= 1)) throw std::invalid_argument("mixing_time_bound: pi_min in (0,1]");
    return static_cast<std::uint64_t>(std::ceil(std::log(1.0 / (eps * pi_min)) / gap));
}

// Spectral factorisation P^t = L * diag(lambda^t) * R, reusable across t.
class WalkPropagator {
  public:
    explicit WalkPropagator(const TransitionMatrix& tm) {
        const Eigen::Index n = tm.size();
        Eigen::VectorXd sq(n), isq(n);
        for (Eigen::Index i = 0; i < n; ++i) {
            sq(i) = std::sqrt(tm.pi(i));
            isq(i) = 1.0 / sq(i);
        }
        Eigen::MatrixXd S = sq.asDiagonal() * tm.P * isq.asDiagonal();
        S = 0.5 * (S + S.transpose().eval());
        Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> es(S);
        lambda_ = es.eigenvalues();
        left_ = isq.asDiagonal() * es.eigenvectors();
        right_ = es.eigenvectors().transpose() * sq.asDiagonal();
        pi_ = tm.pi;
    }

    Eigen::MatrixXd power(std::uint64_t t) const {
        Eigen::VectorXd lt(lambda_.size());
        for (Eigen::Index i = 0; i < lambda_.size(); ++i) lt(i) = std::pow(lambda_(i), static_cast<double>(t));
        return left_ * lt.asDiagonal() * right_;
    }

    // max over start vertices of || e_u P^t - pi ||_TV
    double worst_start_tv(std::uint64_t t) const {
        const Eigen::MatrixXd Pt = power(t);
        double worst = 0;
        for (Eigen::Index u = 0; u < Pt.rows(); ++u)
            worst = std::max(worst, 0.5 * (Pt.row(u).transpose() - pi_).lpNorm<1>());
        return worst;
    }

  private:
    Eigen::VectorXd lambda_, pi_;
    Eigen::MatrixXd left_, right_;
};

// Smallest t with worst-start TV distance <= threshold, by doubling then
// binary search (TV to stationarity is non-increasing in t).
inline std::uint64_t exact_mixing_time(const TransitionMatrix& tm, double threshold = 0.25,
                                       std::uint64_t t_cap = (1ull << 40)) {
    const WalkPropagator prop(tm);
    std::uint64_t hi = 1;
    while (prop.worst_start_tv(hi) > threshold) {
        hi *= 2;
        if (hi > t_cap) throw std::runtime_error("exact_mixing_time: cap exceeded (chain may not mix)");
    }
    std::uint64_t lo = hi / 2 + 1;
    if (hi == 1) return 1;
    while (lo < hi) {
        const std::uint64_t mid = lo + (hi - lo) / 2;
        if (prop.worst_start_tv(mid) <= threshold)
            hi = mid;
        else
            lo = mid + 1;
    }
    return lo;
}

// --- hitting and commute times ---------------------------------------------

namespace detail {

// Solve h = 1 + Q h on `interior`, where Q is P restricted to interior rows
// and columns. Returns h indexed like `interior`.
inline Eigen::VectorXd absorbed_solve(const Eigen::MatrixXd& P, const std::vector<Vertex>& interior) {
    const Eigen::Index k = static_cast<Eigen::Index>(interior.size());
    Eigen::MatrixXd A(k, k);
    for (Eigen::Index a = 0; a < k; ++a)
        for (Eigen::Index b = 0; b < k; ++b)
            A(a, b) = (a == b ? 1.0 : 0.0) - P(interior[a], interior[b]);
    return A.partialPivLu().solve(Eigen::VectorXd::Ones(k));
}

}  // namespace detail

// Expected steps from s to t; errors if s and t are in different components.
inline double hitting_time_exact(const TransitionMatrix& tm, const Graph& g, Vertex s, Vertex t) {
    if (s == t) return 0.0;
    const auto comp = component_of(g, s);
    if (!std::binary_search(comp.begin(), comp.end(), t))
        throw std::invalid_argument("hitting_time_exact: s and t are in different components");
    std::vector<Vertex> interior;
    for (Vertex u : comp)
        if (u != t) interior.push_back(u);
    const Eigen::VectorXd h = detail::absorbed_solve(tm.P, interior);
    for (std::size_t a = 0; a < interior.size(); ++a)
        if (interior[a] == s) return h(static_cast<Eigen::Index>(a));
    throw std::logic_error("hitting_time_exact: s not found in interior");
}

inline double hitting_time_exact(const WeightedGraph& wg, Vertex s, Vertex t) {
    return hitting_time_exact(transition_matrix(wg), wg.graph(), s, t);
}

// Expected steps to reach M from s and then return to s: H_{s,M} plus the
// first-hit mixture of return times. s already in M gives 0.
inline double commute_time_exact(const TransitionMatrix& tm, const Graph& g, Vertex s,
                                 const std::vector<Vertex>& M) {
    if (M.empty()) throw std::invalid_argument("commute_time_exact: empty target set");
    for (Vertex v : M)
        if (v == s) return 0.0;
    const auto comp = component_of(g, s);
    std::vector<Vertex> targets;
    for (Vertex v : M)
        if (std::binary_search(comp.begin(), comp.end(), v)) targets.push_back(v);
    if (targets.empty())
        throw std::invalid_argument("commute_time_exact: s is disconnected from M");

    std::vector<Vertex> interior;
    for (Vertex u : comp)
        if (std::find(targets.begin(), targets.end(), u) == targets.end()) interior.push_back(u);

    const Eigen::Index k = static_cast<Eigen::Index>(interior.size());
    Eigen::MatrixXd A(k, k);
    for (Eigen::Index a = 0; a < k; ++a)
        for (Eigen::Index b = 0; b < k; ++b)
            A(a, b) = (a == b ? 1.0 : 0.0) - tm.P(interior[a], interior[b]);
    const auto lu = A.partialPivLu();

    const Eigen::VectorXd h = lu.solve(Eigen::VectorXd::Ones(k));
    Eigen::Index s_row = -1;
    for (Eigen::Index a = 0; a < k; ++a)
        if (interior[a] == s) s_row = a;
    if (s_row < 0) throw std::logic_error("commute_time_exact: s missing from interior");
    double total = h(s_row);

    // First-hit distribution over the targets, then return times.
    for (Vertex v : targets) {
        Eigen::VectorXd r(k);
        for (Eigen::Index a = 0; a < k; ++a) r(a) = tm.P(interior[a], v);
        const Eigen::VectorXd q = lu.solve(r);
        const double qv = q(s_row);
        if (qv > 1e-15) total += qv * hitting_time_exact(tm, g, v, s);
    }
    return total;
}

inline double commute_time_exact(const WeightedGraph& wg, Vertex s, const std::vector<Vertex>& M) {
    return commute_time_exact(transition_matrix(wg), wg.graph(), s, M);
}

// All hitting times into `targets` within one component, via the fundamental
// matrix: one LU factorisation per component instead of one solve per pair.
// Returns H(u, j) = expected steps from u to targets[j] (inf across
// components).
inline Eigen::MatrixXd hitting_times_to_targets(const TransitionMatrix& tm, const Graph& g,
                                                const std::vector<Vertex>& targets) {
    const Eigen::Index n = tm.size();
    Eigen::MatrixXd H = Eigen::MatrixXd::Constant(n, static_cast<Eigen::Index>(targets.size()),
                                                  std::numeric_limits<double>::infinity());
    const auto comp_id = component_ids(g);
    const std::uint32_t n_comp = *std::max_element(comp_id.begin(), comp_id.end()) + 1;
    for (std::uint32_t c = 0; c < n_comp; ++c) {
        std::vector<Vertex> members;
        for (Vertex u = 0; u < static_cast<Vertex>(n); ++u)
            if (comp_id[u] == c) members.push_back(u);
        std::vector<std::size_t> local_targets;
        for (std::size_t j = 0; j < targets.size(); ++j)
            if (comp_id[targets[j]] == c) local_targets.push_back(j);
        if (local_targets.empty()) continue;

        const Eigen::Index k = static_cast<Eigen::Index>(members.size());
        Eigen::VectorXd pi_c(k);
        double mass = 0;
        for (Eigen::Index a = 0; a < k; ++a) mass += tm.pi(members[a]);
        for (Eigen::Index a = 0; a < k; ++a) pi_c(a) = tm.pi(members[a]) / mass;

        // A = I - P_c + 1 pi_c^T; Z = A^{-1}; H_{u,v} = (Z_vv - Z_uv) / pi_c(v)
        Eigen::MatrixXd A(k, k);
        for (Eigen::Index a = 0; a < k; ++a)
            for (Eigen::Index b = 0; b < k; ++b)
                A(a, b) = (a == b ? 1.0 : 0.0) - tm.P(members[a], members[b]) + pi_c(b);
        const auto lu = A.partialPivLu();
        std::vector<Eigen::Index> pos(n, -1);
        for (Eigen::Index a = 0; a < k; ++a) pos[members[a]] = a;

        for (std::size_t j : local_targets) {
            const Eigen::Index vc = pos[targets[j]];
            Eigen::VectorXd e = Eigen::VectorXd::Zero(k);
            e(vc) = 1.0;
            const Eigen::VectorXd z = lu.solve(e);
            for (Eigen::Index a = 0; a < k; ++a)
                H(members[a], static_cast<Eigen::Index>(j)) = (z(vc) - z(a)) / pi_c(vc);
        }
    }
    return H;
}

// --- simulation -------------------------------------------------------------

// Seeded classical walk stepping; per-vertex CDFs are cached so repeated
// walks on one graph stay cheap.
class WalkSampler {
  public:
    explicit WalkSampler(const WeightedGraph& wg) : wg_(&wg) {
        const Vertex n = wg.vertex_count();
        cdfs_.reserve(n);
        for (Vertex u = 0; u < n; ++u) cdfs_.push_back(wg.row_cdf(u));
    }

    Vertex step(Vertex u, Rng& rng) const {
        const std::size_t j = rng.sample_cdf(cdfs_[u]);
        return wg_->graph().neighbours(u)[j];
    }

    Vertex run(Vertex start, std::uint64_t steps, Rng& rng, QueryLedger& ledger) const {
        Vertex u = start;
        for (std::uint64_t i = 0; i < steps; ++i) u = step(u, rng);
        ledger.classical_step += steps;
        return u;
    }

  private:
    const WeightedGraph* wg_;
    std::vector<std::vector<double>> cdfs_;
};

inline Vertex run_walk(const WeightedGraph& wg, Vertex start, std::uint64_t steps, Rng& rng,
                       QueryLedger& ledger) {
    return WalkSampler(wg).run(start, steps, rng, ledger);
}

}  // namespace qwl
