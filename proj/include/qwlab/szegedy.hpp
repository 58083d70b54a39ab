// szegedy.hpp — the walk operator W(P) = S (2 Pi_A - I) on the pair space,
// where Pi_A projects onto span{ |u>|p_u> } and S swaps the registers. The
// projector reflection is realised through the walk oracle as
// O (2 |0><0|_2 - I) O^dagger, so the operator is independent of how the
// oracle is completed off the |0> slice.
#pragma once

#include <memory>

#include "qwlab/oracles.hpp"
#include "qwlab/unitary.hpp"
#include "qwlab/walk.hpp"

namespace qwl {

class SzegedyWalk : public UnitaryAction {
  public:
    SzegedyWalk(UnitaryPtr oracle, std::uint32_t n, QueryLedger* ledger = nullptr)
        : ps_{n}, oracle_(std::move(oracle)), ledger_(ledger) {
        swap_ = make_pair_swap(ps_);
        refl_null_ = std::make_shared<PhaseUnitary>(ps_.dim(), [ps = ps_](std::uint64_t l) {
            return ps.has_vertex_second(l) ? Amp(-1, 0) : Amp(1, 0);
        });
    }

    std::uint64_t dim() const override { return ps_.dim(); }
    const PairSpace& pair_space() const { return ps_; }
    const UnitaryPtr& oracle() const { return oracle_; }

  protected:
    StateVector apply_impl(const StateVector& s, bool adjoint) const override {
        if (!adjoint) {
            StateVector cur = oracle_->apply_adjoint(s);
            cur = raw(*refl_null_, cur, false);
            cur = oracle_->apply(cur);
            return raw(*swap_, cur, false);
        }
        StateVector cur = raw(*swap_, s, false);
        cur = oracle_->apply_adjoint(cur);
        cur = raw(*refl_null_, cur, false);
        return oracle_->apply(cur);
    }

    void on_apply() const override {
        if (ledger_) ++ledger_->szegedy_step;
    }

  private:
    PairSpace ps_;
    UnitaryPtr oracle_;
    UnitaryPtr swap_, refl_null_;
    QueryLedger* ledger_;
};

inline std::shared_ptr<SzegedyWalk> szegedy_operator(const WeightedGraph& wg, QueryLedger* ledger = nullptr) {
    return std::make_shared<SzegedyWalk>(make_weighted_walk_oracle(wg, ledger), wg.vertex_count(), ledger);
}

// Discriminant D_{u,v} = sqrt(P_{u,v} P_{v,u}); its singular values are the
// cosines of the walk operator's eigenphases.
inline Eigen::MatrixXd discriminant(const TransitionMatrix& tm) {
    const Eigen::Index n = tm.size();
    Eigen::MatrixXd D(n, n);
    for (Eigen::Index u = 0; u < n; ++u)
        for (Eigen::Index v = 0; v < n; ++v) D(u, v) = std::sqrt(tm.P(u, v) * tm.P(v, u));
    return D;
}

// The stationary pair state sum_u sqrt(pi_u) |u>|p_u>, the +1 eigenvector of
// the walk operator used as the amplification target.
inline StateVector stationary_pair_state(const UnitaryAction& oracle, const PairSpace& ps,
                                         const Eigen::VectorXd& pi) {
    StateVector out;
    for (Eigen::Index u = 0; u < pi.size(); ++u)
        if (pi(u) > 0)
            out.axpy(std::sqrt(pi(u)), oracle.column(ps.null_pair(static_cast<std::uint32_t>(u))));
    out.prune();
    return out;
}

}  // namespace qwl
