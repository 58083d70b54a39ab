// ledger.hpp — query accounting. Every oracle and walk primitive charges its
// cost here; experiment reports read the counters back out.
#pragma once

#include <cstdint>
#include <string>

namespace qwl {

struct QueryLedger {
    std::uint64_t degree = 0;            // O_D applications
    std::uint64_t neighbour = 0;         // O_N applications
    std::uint64_t index = 0;             // O_I applications
    std::uint64_t walk_oracle = 0;       // unweighted O_W applications
    std::uint64_t weighted_walk_oracle = 0;
    std::uint64_t szegedy_step = 0;      // walk-operator applications
    std::uint64_t classical_step = 0;
    std::uint64_t wset_op = 0;           // weighted-set tree-node touches
    std::uint64_t marked_check = 0;      // marked-predicate evaluations

    void reset() { *this = QueryLedger{}; }

    QueryLedger delta_since(const QueryLedger& base) const {
        QueryLedger d;
        d.degree = degree - base.degree;
        d.neighbour = neighbour - base.neighbour;
        d.index = index - base.index;
        d.walk_oracle = walk_oracle - base.walk_oracle;
        d.weighted_walk_oracle = weighted_walk_oracle - base.weighted_walk_oracle;
        d.szegedy_step = szegedy_step - base.szegedy_step;
        d.classical_step = classical_step - base.classical_step;
        d.wset_op = wset_op - base.wset_op;
        d.marked_check = marked_check - base.marked_check;
        return d;
    }
};

}  // namespace qwl
