// phase_estimation.hpp — textbook phase estimation, simulated exactly.
//
// The register amplitudes are obtained by running the controlled-power
// trajectory U^t psi for t < 2^bits and taking the discrete Fourier
// transform over the time axis, label by label. Sampling an outcome
// collapses the system register to the matching filtered state.
#pragma once

#include <Eigen/Dense>

#include <complex>
#include <cstdint>
#include <map>
#include <stdexcept>
#include <vector>

#include "qwlab/distribution.hpp"
#include "qwlab/ledger.hpp"
#include "qwlab/rng.hpp"
#include "qwlab/statevector.hpp"
#include "qwlab/unitary.hpp"

namespace qwl {

namespace detail {

// In-place radix-2 FFT, forward sign convention  X_k = sum_t x_t e^{-2 pi i k t / T}.
inline void fft_pow2(std::vector<Amp>& a) {
    const std::size_t n = a.size();
    if (n == 0 || (n & (n - 1)) != 0) throw std::invalid_argument("fft_pow2: size must be a power of 2");
    for (std::size_t i = 1, j = 0; i < n; ++i) {
        std::size_t bit = n >> 1;
        for (; j & bit; bit >>= 1) j ^= bit;
        j ^= bit;
        if (i < j) std::swap(a[i], a[j]);
    }
    for (std::size_t len = 2; len <= n; len <<= 1) {
        const double ang = -2.0 * M_PI / static_cast<double>(len);
        const Amp wl(std::cos(ang), std::sin(ang));
        for (std::size_t i = 0; i < n; i += len) {
            Amp w(1, 0);
            for (std::size_t j = 0; j < len / 2; ++j) {
                const Amp u = a[i + j], v = a[i + j + len / 2] * w;
                a[i + j] = u + v;
                a[i + j + len / 2] = u - v;
                w *= wl;
            }
        }
    }
}

}  // namespace detail

struct PhaseEstimate {
    int bits = 0;
    Eigen::VectorXd outcome_probs;                       // length 2^bits
    std::map<std::uint64_t, std::vector<Amp>> spectra;   // per label: A_k across k

    Distribution distribution() const { return Distribution(outcome_probs, 1e-9); }

    // Post-measurement system state for outcome k.
    StateVector branch(std::uint64_t k) const {
        StateVector s;
        for (const auto& [label, spec] : spectra) s.add(label, spec[k]);
        s.prune();
        if (s.norm() <= 0) throw std::runtime_error("phase estimation branch with zero norm");
        s.normalize();
        return s;
    }

    // Sample an outcome and collapse.
    std::pair<std::uint64_t, StateVector> sample(Rng& rng) const {
        const double x = rng.real();
        double acc = 0;
        std::uint64_t pick = static_cast<std::uint64_t>(outcome_probs.size()) - 1;
        for (Eigen::Index k = 0; k < outcome_probs.size(); ++k) {
            acc += outcome_probs(k);
            if (acc > x) {
                pick = static_cast<std::uint64_t>(k);
                break;
            }
        }
        return {pick, branch(pick)};
    }
};

// bits <= 20; each of the 2^bits - 1 controlled applications of u is charged
// through the unitary's own ledger hook.
inline PhaseEstimate phase_estimation(const UnitaryAction& u, const StateVector& st, int bits) {
    if (bits < 1 || bits > 20) throw std::invalid_argument("phase_estimation: bits in [1,20]");
    const std::size_t T = 1ull << bits;

    // trajectory, gathered per label
    std::map<std::uint64_t, std::vector<Amp>> series;
    StateVector cur = st;
    for (std::size_t t = 0; t < T; ++t) {
        if (t > 0) cur = u.apply(cur);
        for (const auto& [label, amp] : cur.amplitudes()) {
            auto [it, fresh] = series.try_emplace(label);
            if (fresh) it->second.assign(T, Amp(0, 0));
            it->second[t] = amp;
        }
    }

    PhaseEstimate pe;
    pe.bits = bits;
    pe.outcome_probs = Eigen::VectorXd::Zero(static_cast<Eigen::Index>(T));
    const double inv_T = 1.0 / static_cast<double>(T);
    for (auto& [label, seq] : series) {
        detail::fft_pow2(seq);
        for (std::size_t k = 0; k < T; ++k) {
            seq[k] *= inv_T;  // A_k = (1/T) sum_t w^{-kt} U^t psi
            pe.outcome_probs(static_cast<Eigen::Index>(k)) += std::norm(seq[k]);
        }
    }
    pe.spectra = std::move(series);
    return pe;
}

// Approximate reflection about the zero-phase eigenspace of u:
//   R = 2 M0^dagger M0 - I   with   M0 = (1/T) sum_t U^t.
// This is the system-register action of phase estimation, a conditional
// phase flip of nonzero outcomes, and inverse phase estimation; components
// with eigenphase phi are scaled by 2 F(phi) - 1 with F the Fejer kernel, so
// the result is an approximate reflection that mildly contracts away from
// the zero-phase space. Costs 2 (2^bits - 1) applications of u.
inline StateVector approx_zero_phase_reflection(const UnitaryAction& u, const StateVector& st, int bits) {
    if (bits < 1 || bits > 20) throw std::invalid_argument("reflection: bits in [1,20]");
    const std::size_t T = 1ull << bits;
    const double inv_T = 1.0 / static_cast<double>(T);

    StateVector acc = st, avg = st;
    for (std::size_t t = 1; t < T; ++t) {
        acc = u.apply(acc);
        avg.axpy(Amp(1, 0), acc);
    }
    avg.scale(Amp(inv_T, 0));
    avg.prune();

    StateVector acc2 = avg, avg2 = avg;
    for (std::size_t t = 1; t < T; ++t) {
        acc2 = u.apply_adjoint(acc2);
        avg2.axpy(Amp(1, 0), acc2);
    }
    avg2.scale(Amp(inv_T, 0));

    StateVector out = avg2;
    out.scale(Amp(2, 0));
    out.axpy(Amp(-1, 0), st);
    out.prune();
    return out;
}

}  // namespace qwl
