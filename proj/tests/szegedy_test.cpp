#include "qwlab/szegedy.hpp"

#include <gtest/gtest.h>

#include <algorithm>
#include <cmath>
#include <complex>
#include <vector>

#include "qwlab/graph.hpp"
#include "qwlab/mh.hpp"
#include "qwlab/phase_estimation.hpp"
#include "qwlab/rng.hpp"
#include "qwlab/walk.hpp"

using namespace qwl;

namespace {

// eigenphases of a dense unitary, in [0, 2 pi)
std::vector<double> eigenphases(const Eigen::MatrixXcd& U) {
    Eigen::ComplexEigenSolver<Eigen::MatrixXcd> es(U);
    std::vector<double> phases;
    for (Eigen::Index i = 0; i < es.eigenvalues().size(); ++i) {
        EXPECT_NEAR(std::abs(es.eigenvalues()(i)), 1.0, 1e-9);
        double ph = std::arg(es.eigenvalues()(i));
        if (ph < -1e-12) ph += 2 * M_PI;
        if (ph < 0) ph = 0;
        phases.push_back(ph);
    }
    return phases;
}

}  // namespace

TEST(Szegedy, StationaryPairStateIsFixed) {
    for (const auto& g : {make_complete(4), make_cycle(5), make_lollipop(4, 2)}) {
        const auto wg = WeightedGraph::unweighted(g);
        auto walk = szegedy_operator(wg);
        const auto tm = transition_matrix(wg);
        const StateVector fixed = stationary_pair_state(*walk->oracle(), walk->pair_space(), tm.pi);
        EXPECT_LT(distance(walk->apply(fixed), fixed), 1e-9);
    }
}

TEST(Szegedy, DenseIsUnitaryAndSpectrumMatchesDiscriminant) {
    for (const auto& g : {make_path(4), make_complete(4), make_lollipop(3, 2)}) {
        const auto wg = WeightedGraph::unweighted(g);
        auto walk = szegedy_operator(wg);
        const Eigen::MatrixXcd W = walk->dense();
        EXPECT_LT((W.adjoint() * W - Eigen::MatrixXcd::Identity(W.rows(), W.cols())).norm(), 1e-9);

        // the discriminant is symmetric for reversible walks and similar to P;
        // each of its eigenvalues lambda appears among the walk eigenphases as
        // exp(+-i arccos(lambda))
        const auto tm = transition_matrix(wg);
        Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> es(discriminant(tm));
        const auto phases = eigenphases(W);
        for (Eigen::Index j = 0; j < es.eigenvalues().size(); ++j) {
            const double lambda = std::clamp(es.eigenvalues()(j), -1.0, 1.0);
            const double theta = std::acos(lambda);
            const bool found = std::any_of(phases.begin(), phases.end(), [&](double ph) {
                return std::abs(ph - theta) < 1e-7 || std::abs(2 * M_PI - ph - theta) < 1e-7;
            });
            EXPECT_TRUE(found) << "missing phase for lambda=" << lambda;
            // consistency with the walk matrix spectrum
            EXPECT_NEAR(lambda, walk_eigenvalues(tm).reverse()(j), 1e-9);
        }
    }
}

TEST(Szegedy, SingleEdgeSpectrumIsPlusMinusOne) {
    const auto wg = WeightedGraph::unweighted(make_path(2));
    auto walk = szegedy_operator(wg);
    const auto phases = eigenphases(walk->dense());
    for (double ph : phases)
        EXPECT_TRUE(std::abs(ph) < 1e-9 || std::abs(ph - M_PI) < 1e-9 || std::abs(ph - 2 * M_PI) < 1e-9)
            << ph;
}

TEST(Szegedy, PhaseGapDominatesSqrtSpectralGap) {
    Rng seed_rng(5);
    for (std::uint64_t seed : {11ull, 22ull, 33ull}) {
        const Graph g = make_er_connected(4 + seed % 6, 0.5, seed);
        if (is_bipartite(g)) continue;
        const auto wg = WeightedGraph::unweighted(g);
        const double gamma = spectral_gap(wg);
        auto walk = szegedy_operator(wg);
        const auto phases = eigenphases(walk->dense());
        double min_nonzero = 2 * M_PI;
        for (double ph : phases) {
            const double dist_from_zero = std::min(ph, 2 * M_PI - ph);
            if (dist_from_zero > 1e-7) min_nonzero = std::min(min_nonzero, dist_from_zero);
        }
        EXPECT_GE(min_nonzero, std::sqrt(2 * gamma) - 1e-7);
    }
    (void)seed_rng;
}

TEST(Szegedy, LedgerCountsStepsAndOracleUses) {
    const auto wg = WeightedGraph::unweighted(make_complete(4));
    QueryLedger led;
    auto walk = szegedy_operator(wg, &led);
    PairSpace ps = walk->pair_space();
    StateVector s = walk->oracle()->apply(StateVector::basis(ps.null_pair(0)));
    led.reset();
    s = walk->apply(s);
    s = walk->apply(s);
    EXPECT_EQ(led.szegedy_step, 2u);
    EXPECT_EQ(led.weighted_walk_oracle, 4u);  // oracle and adjoint per step
}

TEST(Szegedy, WalkAdjointInverts) {
    const auto wg = WeightedGraph::unweighted(make_lollipop(4, 2));
    auto walk = szegedy_operator(wg);
    PairSpace ps = walk->pair_space();
    StateVector s = walk->oracle()->apply(StateVector::basis(ps.null_pair(2)));
    StateVector fwd = walk->apply(s);
    EXPECT_NEAR(fwd.norm(), 1.0, 1e-10);
    EXPECT_LT(distance(walk->apply_adjoint(fwd), s), 1e-10);
}

TEST(Fft, MatchesNaiveDft) {
    Rng rng(7);
    for (std::size_t n : {2ull, 8ull, 64ull}) {
        std::vector<Amp> x(n);
        for (auto& v : x) v = Amp(rng.real() - 0.5, rng.real() - 0.5);
        std::vector<Amp> naive(n, Amp(0, 0));
        for (std::size_t k = 0; k < n; ++k)
            for (std::size_t t = 0; t < n; ++t) {
                const double ang = -2.0 * M_PI * static_cast<double>(k * t) / static_cast<double>(n);
                naive[k] += x[t] * Amp(std::cos(ang), std::sin(ang));
            }
        std::vector<Amp> fast = x;
        detail::fft_pow2(fast);
        for (std::size_t k = 0; k < n; ++k) EXPECT_LT(std::abs(fast[k] - naive[k]), 1e-10);
    }
}

TEST(PhaseEstimation, IdentityConcentratesOnZero) {
    auto ident = PermutationUnitary::involution(8, [](std::uint64_t l) { return l; });
    StateVector s;
    s.add(1, Amp(0.6, 0));
    s.add(5, Amp(0.8, 0));
    const auto pe = phase_estimation(*ident, s, 5);
    EXPECT_NEAR(pe.outcome_probs(0), 1.0, 1e-12);
}

TEST(PhaseEstimation, ExactEigenphaseIsDeterministic) {
    // diagonal unitary with phase 3/16 on the occupied label, bits = 4
    const double phi = 3.0 / 16.0;
    auto u = std::make_shared<PhaseUnitary>(4, [phi](std::uint64_t) {
        return Amp(std::cos(2 * M_PI * phi), std::sin(2 * M_PI * phi));
    });
    const auto pe = phase_estimation(*u, StateVector::basis(2), 4);
    EXPECT_NEAR(pe.outcome_probs(3), 1.0, 1e-12);
    Rng rng(4);
    const auto [k, collapsed] = pe.sample(rng);
    EXPECT_EQ(k, 3u);
    EXPECT_LT(distance(collapsed, StateVector::basis(2)), 1e-9);
}

TEST(PhaseEstimation, FejerLeakageClosedForm) {
    const double phi = 1.0 / 3.0;
    const int bits = 8;
    const std::size_t T = 1u << bits;
    auto u = std::make_shared<PhaseUnitary>(2, [phi](std::uint64_t) {
        return Amp(std::cos(2 * M_PI * phi), std::sin(2 * M_PI * phi));
    });
    const auto pe = phase_estimation(*u, StateVector::basis(0), bits);
    for (std::size_t k = 0; k < T; ++k) {
        const double delta = phi - static_cast<double>(k) / static_cast<double>(T);
        const double num = std::sin(M_PI * static_cast<double>(T) * delta);
        const double den = std::sin(M_PI * delta);
        const double expected = (std::abs(den) < 1e-14) ? 1.0 : (num * num) / (den * den * T * T);
        EXPECT_NEAR(pe.outcome_probs(static_cast<Eigen::Index>(k)), expected, 1e-9);
    }
}

TEST(PhaseEstimation, ChargesLedgerPerControlledPower) {
    const auto wg = WeightedGraph::unweighted(make_path(3));
    QueryLedger led;
    auto walk = szegedy_operator(wg, &led);
    StateVector s = walk->oracle()->apply(StateVector::basis(walk->pair_space().null_pair(0)));
    led.reset();
    phase_estimation(*walk, s, 4);
    EXPECT_EQ(led.szegedy_step, 15u);  // 2^4 - 1
}

TEST(PhaseEstimation, BitsValidation) {
    auto ident = PermutationUnitary::involution(2, [](std::uint64_t l) { return l; });
    EXPECT_THROW(phase_estimation(*ident, StateVector::basis(0), 0), std::invalid_argument);
    EXPECT_THROW(phase_estimation(*ident, StateVector::basis(0), 21), std::invalid_argument);
}

TEST(ZeroPhaseReflection, FixesStationaryAndFlipsRest) {
    const auto wg = WeightedGraph::unweighted(make_complete(5));
    auto walk = szegedy_operator(wg);
    const auto tm = transition_matrix(wg);
    const StateVector fixed = stationary_pair_state(*walk->oracle(), walk->pair_space(), tm.pi);
    const StateVector r_fixed = approx_zero_phase_reflection(*walk, fixed, 6);
    EXPECT_LT(distance(r_fixed, fixed), 1e-6);

    // a pair state orthogonal to the stationary one within the reachable
    // space picks up an approximate sign flip
    PairSpace ps = walk->pair_space();
    StateVector probe;
    probe.axpy(Amp(1, 0), walk->oracle()->column(ps.null_pair(0)));
    probe.axpy(Amp(-1, 0), walk->oracle()->column(ps.null_pair(1)));
    probe.normalize();
    const StateVector r_probe = approx_zero_phase_reflection(*walk, probe, 6);
    StateVector flipped = r_probe;
    flipped.axpy(Amp(1, 0), probe);  // should be near zero
    EXPECT_LT(flipped.norm(), 0.1);
}
