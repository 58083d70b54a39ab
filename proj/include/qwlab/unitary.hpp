// unitary.hpp — linear actions on labelled basis states.
//
// A UnitaryAction is defined by its columns (action on basis labels) and is
// applied to sparse states by linearity. Concrete subclasses cover the needs
// of the walk constructions: block unitaries keyed by a register value,
// label permutations, diagonal phases, and compositions. Dense
// materialisation is available for spectrum checks at small dimension.
#pragma once

#include <Eigen/Dense>

#include <cstdint>
#include <functional>
#include <memory>
#include <stdexcept>
#include <utility>
#include <vector>

#include "qwlab/ledger.hpp"
#include "qwlab/statevector.hpp"

namespace qwl {

class UnitaryAction {
  public:
    virtual ~UnitaryAction() = default;

    virtual std::uint64_t dim() const = 0;

    StateVector apply(const StateVector& s) const {
        on_apply();
        StateVector out = apply_impl(s, false);
        out.prune();
        return out;
    }

    StateVector apply_adjoint(const StateVector& s) const {
        on_apply();
        StateVector out = apply_impl(s, true);
        out.prune();
        return out;
    }

    // Column of U (or U^dagger) on a basis label; does not charge the ledger.
    StateVector column(std::uint64_t label, bool adjoint = false) const {
        return apply_impl(StateVector::basis(label), adjoint);
    }

    static constexpr std::uint64_t kDenseCap = 4096;

    Eigen::MatrixXcd dense(bool adjoint = false) const {
        if (dim() > kDenseCap) throw std::runtime_error("dense: dimension above cap");
        const auto n = static_cast<Eigen::Index>(dim());
        Eigen::MatrixXcd M = Eigen::MatrixXcd::Zero(n, n);
        for (Eigen::Index j = 0; j < n; ++j) {
            const StateVector col = column(static_cast<std::uint64_t>(j), adjoint);
            for (const auto& [l, a] : col.amplitudes()) M(static_cast<Eigen::Index>(l), j) = a;
        }
        return M;
    }

  protected:
    virtual StateVector apply_impl(const StateVector& s, bool adjoint) const = 0;
    virtual void on_apply() const {}

    // For compositions: apply a member without charging it.
    static StateVector raw(const UnitaryAction& u, const StateVector& s, bool adjoint) {
        return u.apply_impl(s, adjoint);
    }
};

using UnitaryPtr = std::shared_ptr<const UnitaryAction>;

// Block unitary keyed by the high part of the label: label = key * stride +
// slot. Each key may carry a small dense block over an ordered subset of
// slots; all other slots pass through unchanged. Blocks can be built lazily
// from a factory, so that only the reachable part of a large space is ever
// materialised.
class RegisterBlockUnitary : public UnitaryAction {
  public:
    struct Block {
        std::vector<std::uint64_t> slots;  // ordered local slot labels
        Eigen::MatrixXcd matrix;           // square, slots.size()
    };
    using BlockFactory = std::function<Block(std::uint64_t key)>;
    using ApplyHook = std::function<void()>;

    RegisterBlockUnitary(std::uint64_t key_count, std::uint64_t stride, BlockFactory factory,
                         ApplyHook hook = {})
        : key_count_(key_count), stride_(stride), factory_(std::move(factory)), hook_(std::move(hook)) {}

    std::uint64_t dim() const override { return key_count_ * stride_; }

  protected:
    StateVector apply_impl(const StateVector& s, bool adjoint) const override {
        StateVector out;
        for (const auto& [label, amp] : s.amplitudes()) {
            const std::uint64_t key = label / stride_;
            const std::uint64_t slot = label % stride_;
            const Block& blk = block(key);
            const auto pos = slot_position(blk, slot);
            if (pos < 0) {
                out.add(label, amp);
                continue;
            }
            const auto k = static_cast<Eigen::Index>(blk.slots.size());
            for (Eigen::Index r = 0; r < k; ++r) {
                const Amp entry = adjoint ? std::conj(blk.matrix(pos, r)) : blk.matrix(r, pos);
                if (entry != Amp(0, 0)) out.add(key * stride_ + blk.slots[r], amp * entry);
            }
        }
        return out;
    }

    void on_apply() const override {
        if (hook_) hook_();
    }

  private:
    const Block& block(std::uint64_t key) const {
        auto it = cache_.find(key);
        if (it == cache_.end()) it = cache_.emplace(key, factory_(key)).first;
        return it->second;
    }

    static int slot_position(const Block& blk, std::uint64_t slot) {
        for (std::size_t i = 0; i < blk.slots.size(); ++i)
            if (blk.slots[i] == slot) return static_cast<int>(i);
        return -1;
    }

    std::uint64_t key_count_, stride_;
    BlockFactory factory_;
    mutable std::map<std::uint64_t, Block> cache_;
    ApplyHook hook_;
};

// Label permutation given as an involution or a (forward, inverse) pair.
class PermutationUnitary : public UnitaryAction {
  public:
    using Map = std::function<std::uint64_t(std::uint64_t)>;

    PermutationUnitary(std::uint64_t dim, Map forward, Map inverse)
        : dim_(dim), fwd_(std::move(forward)), inv_(std::move(inverse)) {}

    static std::shared_ptr<PermutationUnitary> involution(std::uint64_t dim, Map f) {
        auto g = f;
        return std::make_shared<PermutationUnitary>(dim, std::move(f), std::move(g));
    }

    std::uint64_t dim() const override { return dim_; }

  protected:
    StateVector apply_impl(const StateVector& s, bool adjoint) const override {
        const Map& m = adjoint ? inv_ : fwd_;
        StateVector out;
        for (const auto& [label, amp] : s.amplitudes()) out.add(m(label), amp);
        return out;
    }

  private:
    std::uint64_t dim_;
    Map fwd_, inv_;
};

// Diagonal unitary with entries of unit modulus.
class PhaseUnitary : public UnitaryAction {
  public:
    using PhaseFn = std::function<Amp(std::uint64_t)>;

    PhaseUnitary(std::uint64_t dim, PhaseFn phase) : dim_(dim), phase_(std::move(phase)) {}

    std::uint64_t dim() const override { return dim_; }

  protected:
    StateVector apply_impl(const StateVector& s, bool adjoint) const override {
        StateVector out;
        for (const auto& [label, amp] : s.amplitudes()) {
            Amp p = phase_(label);
            if (adjoint) p = std::conj(p);
            out.add(label, amp * p);
        }
        return out;
    }

  private:
    std::uint64_t dim_;
    PhaseFn phase_;
};

// Applies members left to right.
class ComposedUnitary : public UnitaryAction {
  public:
    explicit ComposedUnitary(std::vector<UnitaryPtr> parts) : parts_(std::move(parts)) {
        if (parts_.empty()) throw std::invalid_argument("composed unitary needs parts");
    }

    std::uint64_t dim() const override { return parts_.front()->dim(); }

  protected:
    StateVector apply_impl(const StateVector& s, bool adjoint) const override {
        StateVector cur = s;
        if (!adjoint) {
            for (const auto& p : parts_) cur = raw(*p, cur, false);
        } else {
            for (auto it = parts_.rbegin(); it != parts_.rend(); ++it) cur = raw(**it, cur, true);
        }
        return cur;
    }

  private:
    std::vector<UnitaryPtr> parts_;
};

// --- pair space -------------------------------------------------------------
// Walk operators live on span{|u>|y>} with u a vertex and y either the null
// symbol (0) or a vertex v encoded as v+1.

struct PairSpace {
    std::uint32_t n = 0;  // vertex count

    std::uint64_t stride() const { return n + 1ull; }
    std::uint64_t dim() const { return static_cast<std::uint64_t>(n) * (n + 1ull); }

    std::uint64_t pack(std::uint32_t u, std::uint32_t y) const { return u * stride() + y; }
    std::uint64_t vertex_pair(std::uint32_t u, std::uint32_t v) const { return pack(u, v + 1); }
    std::uint64_t null_pair(std::uint32_t u) const { return pack(u, 0); }

    std::uint32_t first(std::uint64_t label) const { return static_cast<std::uint32_t>(label / stride()); }
    std::uint32_t second_raw(std::uint64_t label) const { return static_cast<std::uint32_t>(label % stride()); }
    bool has_vertex_second(std::uint64_t label) const { return second_raw(label) != 0; }
    std::uint32_t second_vertex(std::uint64_t label) const { return second_raw(label) - 1; }

    // Register swap |u>|v> -> |v>|u>. Null-second labels are fixed points;
    // the walk constructions never move amplitude onto them before a swap.
    std::uint64_t swap(std::uint64_t label) const {
        if (!has_vertex_second(label)) return label;
        const std::uint32_t u = first(label);
        const std::uint32_t v = second_vertex(label);
        return vertex_pair(v, u);
    }
};

inline std::shared_ptr<PermutationUnitary> make_pair_swap(const PairSpace& ps) {
    auto f = [ps](std::uint64_t l) { return ps.swap(l); };
    return PermutationUnitary::involution(ps.dim(), f);
}

// Gram-Schmidt completion of one specified column to a full unitary block:
// the given column is the action on slot 0; remaining columns are produced
// from the identity candidates in slot order. Deterministic.
inline Eigen::MatrixXcd complete_isometry_block(const Eigen::VectorXcd& first_column) {
    const Eigen::Index k = first_column.size();
    Eigen::MatrixXcd M(k, k);
    M.col(0) = first_column;
    Eigen::Index next = 1;
    for (Eigen::Index cand = 0; cand < k && next < k; ++cand) {
        Eigen::VectorXcd v = Eigen::VectorXcd::Zero(k);
        v(cand) = 1.0;
        for (Eigen::Index j = 0; j < next; ++j) v -= M.col(j).dot(v) * M.col(j);
        const double nrm = v.norm();
        if (nrm > 1e-9) {
            M.col(next) = v / nrm;
            ++next;
        }
    }
    if (next != k) throw std::runtime_error("complete_isometry_block: span deficiency");
    return M;
}

}  // namespace qwl
