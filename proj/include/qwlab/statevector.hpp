// statevector.hpp — sparse complex amplitude vectors over integer-packed
// basis labels. Label packing is owned by whoever builds the space (pair
// spaces, ancilla-extended register tuples); the state itself only sees
// uint64 labels. Ordered storage keeps measurement sampling and CSV dumps
// deterministic.
#pragma once

#include <cmath>
#include <complex>
#include <cstdint>
#include <map>
#include <ostream>
#include <sstream>
#include <stdexcept>
#include <string>

#include "qwlab/rng.hpp"

namespace qwl {

using Amp = std::complex<double>;

class StateVector {
  public:
    static constexpr double kPruneTol = 1e-14;

    StateVector() = default;

    static StateVector basis(std::uint64_t label) {
        StateVector s;
        s.amps_[label] = Amp(1.0, 0.0);
        return s;
    }

    const std::map<std::uint64_t, Amp>& amplitudes() const { return amps_; }
    std::size_t support_size() const { return amps_.size(); }
    bool empty() const { return amps_.empty(); }

    Amp amplitude(std::uint64_t label) const {
        auto it = amps_.find(label);
        return it == amps_.end() ? Amp(0, 0) : it->second;
    }

    void add(std::uint64_t label, Amp a) {
        if (a == Amp(0, 0)) return;
        auto [it, inserted] = amps_.try_emplace(label, a);
        if (!inserted) it->second += a;
    }

    void set(std::uint64_t label, Amp a) { amps_[label] = a; }

    double norm_sq() const {
        double s = 0;
        for (const auto& [l, a] : amps_) s += std::norm(a);
        return s;
    }
    double norm() const { return std::sqrt(norm_sq()); }

    void scale(Amp c) {
        for (auto& [l, a] : amps_) a *= c;
    }

    void axpy(Amp c, const StateVector& other) {
        for (const auto& [l, a] : other.amps_) add(l, c * a);
    }

    void normalize() {
        const double n = norm();
        if (n <= 0) throw std::runtime_error("normalize: zero state");
        scale(Amp(1.0 / n, 0));
    }

    // Drop amplitudes below tol in magnitude.
    void prune(double tol = kPruneTol) {
        for (auto it = amps_.begin(); it != amps_.end();) {
            if (std::abs(it->second) < tol)
                it = amps_.erase(it);
            else
                ++it;
        }
    }

    // Measurement in the labelled basis; deterministic given the rng stream.
    std::uint64_t measure(Rng& rng) const {
        const double total = norm_sq();
        if (total <= 0) throw std::runtime_error("measure: zero state");
        const double x = rng.real() * total;
        double acc = 0;
        std::uint64_t last = 0;
        for (const auto& [l, a] : amps_) {
            acc += std::norm(a);
            last = l;
            if (acc > x) return l;
        }
        return last;  // numerical tail
    }

    // CSV dump: label,re,im rows sorted by label.
    void dump_csv(std::ostream& os) const {
        os << "label,re,im\n";
        for (const auto& [l, a] : amps_) os << l << "," << a.real() << "," << a.imag() << "\n";
    }
    std::string to_csv() const {
        std::ostringstream ss;
        dump_csv(ss);
        return ss.str();
    }

  private:
    std::map<std::uint64_t, Amp> amps_;
};

inline Amp inner_product(const StateVector& a, const StateVector& b) {
    // iterate over the smaller support
    const StateVector& small = a.support_size() <= b.support_size() ? a : b;
    const StateVector& large = a.support_size() <= b.support_size() ? b : a;
    const bool swapped = &small != &a;
    Amp s(0, 0);
    for (const auto& [l, amp] : small.amplitudes()) {
        const Amp other = large.amplitude(l);
        s += swapped ? std::conj(other) * amp : std::conj(amp) * other;
    }
    return s;
}

inline double distance(const StateVector& a, const StateVector& b) {
    StateVector d = a;
    d.axpy(Amp(-1, 0), b);
    return d.norm();
}

}  // namespace qwl
