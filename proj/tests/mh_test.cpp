#include "qwlab/mh.hpp"

#include <gtest/gtest.h>

#include <set>
#include <sstream>

#include "qwlab/graph.hpp"
#include "qwlab/walk.hpp"

using namespace qwl;

TEST(MhTransform, TriangleCounts) {
    const MHGraph mhg = mh_transform(make_complete(3));
    EXPECT_EQ(mhg.vertex_count(), 6u);
    EXPECT_EQ(mhg.weighted.graph().edge_count(), 6u);
    for (const auto& [u, v] : mhg.weighted.graph().edges())
        EXPECT_EQ(mhg.weighted.weight(u, v), Rat(1, 2));
}

TEST(MhTransform, SingleEdge) {
    const MHGraph mhg = mh_transform(make_path(2));
    EXPECT_EQ(mhg.vertex_count(), 3u);
    EXPECT_EQ(mhg.weighted.weight(0, 2), Rat(1));
    EXPECT_EQ(mhg.weighted.weight(1, 2), Rat(1));
}

TEST(MhTransform, StarWeights) {
    const Graph g = make_star(4);
    const MHGraph mhg = mh_transform(g);
    EXPECT_EQ(mhg.vertex_count(), 7u);
    EXPECT_EQ(mhg.weighted.weighted_degree(0), Rat(1));  // centre: three edges of 1/3
    for (Vertex leaf = 1; leaf < 4; ++leaf) {
        const Vertex x = mhg.subdivision_id(0, leaf);
        EXPECT_EQ(mhg.weighted.weight(0, x), Rat(1, 3));
        EXPECT_EQ(mhg.weighted.weight(leaf, x), Rat(1));
    }
}

TEST(MhTransform, InvariantsOnFamilies) {
    for (const auto& g : {make_path(6), make_cycle(7), make_star(9), make_complete(6),
                          make_lollipop(5, 4), make_er_connected(14, 0.3, 2)}) {
        const MHGraph mhg = mh_transform(g);
        const auto n = g.vertex_count();
        const auto m = g.edge_count();
        EXPECT_EQ(mhg.vertex_count(), n + m);
        EXPECT_EQ(mhg.weighted.graph().edge_count(), 2 * m);
        // every subdivision vertex has degree exactly 2
        for (Vertex x = n; x < mhg.vertex_count(); ++x)
            EXPECT_EQ(mhg.weighted.graph().degree(x), 2u);
        // w(x_u) = 1 exactly for every original vertex
        for (Vertex u = 0; u < n; ++u) EXPECT_EQ(mhg.weighted.weighted_degree(u), Rat(1));
        // half-edge weights are 1/d_u exactly
        for (Vertex u = 0; u < n; ++u)
            for (Vertex v : g.neighbours(u))
                EXPECT_EQ(mhg.weighted.weight(u, mhg.subdivision_id(u, v)), Rat(1, BigInt(g.degree(u))));
    }
}

TEST(MhTransform, StationaryUniformOnOriginalsExact) {
    const Graph g = make_lollipop(4, 3);
    const MHGraph mhg = mh_transform(g);
    // pi restricted to originals: w(x_u)/W = 1/W for all u, identical values
    const Rat w_total = mhg.weighted.total_weight();
    EXPECT_EQ(w_total, Rat(2 * BigInt(g.vertex_count())));
    for (Vertex u = 0; u < g.vertex_count(); ++u)
        EXPECT_EQ(mhg.weighted.weighted_degree(u) / w_total, Rat(1, 2 * BigInt(g.vertex_count())));
}

TEST(MhTransform, StructuralRoundTrip) {
    // forgetting weights and contracting the degree-2 subdivision vertices
    // recovers the original edge set
    for (const auto& g : {make_lollipop(5, 3), make_er_connected(12, 0.3, 8)}) {
        const MHGraph mhg = mh_transform(g);
        std::vector<Edge> recovered;
        for (Vertex x = mhg.n_original; x < mhg.vertex_count(); ++x) {
            const auto& nb = mhg.weighted.graph().neighbours(x);
            ASSERT_EQ(nb.size(), 2u);
            recovered.emplace_back(std::min(nb[0], nb[1]), std::max(nb[0], nb[1]));
        }
        std::sort(recovered.begin(), recovered.end());
        EXPECT_EQ(recovered, g.edges());
    }
}

TEST(MhTransform, SerializesWithUnitFractionTokens) {
    const MHGraph mhg = mh_transform(make_star(4));
    std::ostringstream ss;
    write_weighted_edge_list(ss, mhg.weighted);
    EXPECT_NE(ss.str().find("1/3"), std::string::npos);
    std::istringstream in(ss.str());
    const auto back = read_weighted_edge_list(in);
    EXPECT_EQ(to_weighted_edge_list(back), ss.str());
}

TEST(CollapsedWalk, AcceptanceProbabilities) {
    // regular graph: every proposal accepted with probability 1/2
    const Graph reg = make_cycle(6);
    const auto tm = collapsed_walk(reg);
    for (Vertex u = 0; u < 6; ++u)
        for (Vertex v : reg.neighbours(u)) EXPECT_NEAR(tm.P(u, v), 0.5 / 2, 1e-15);

    // degree 1 proposing to degree 3: acceptance 1/(1+3) = 1/4
    const Graph star = make_star(4);
    EXPECT_EQ(collapsed_prob_exact(star, 1, 0), Rat(1, 4));
    EXPECT_EQ(collapsed_prob_exact(star, 1, 1), Rat(3, 4));
}

TEST(CollapsedWalk, EqualsTwoStepRestrictionOfTransformedWalk) {
    // oracle: square the full transition matrix of the transformed graph and
    // restrict to original rows/columns
    for (const auto& g : {make_path(5), make_star(5), make_lollipop(4, 3),
                          make_er_connected(10, 0.35, 3)}) {
        const MHGraph mhg = mh_transform(g);
        const auto tm_full = transition_matrix(mhg.weighted);
        const Eigen::MatrixXd two_step = tm_full.P * tm_full.P;
        const auto tm_collapsed = collapsed_walk(g);
        const auto n = g.vertex_count();
        for (Vertex u = 0; u < n; ++u)
            for (Vertex v = 0; v < n; ++v)
                EXPECT_NEAR(tm_collapsed.P(u, v), two_step(u, v), 1e-12);
    }
}

TEST(CollapsedWalk, ReversibleWrtUniformExact) {
    for (const auto& g : {make_star(6), make_lollipop(4, 2), make_er_connected(9, 0.4, 6)}) {
        const auto n = g.vertex_count();
        for (Vertex u = 0; u < n; ++u)
            for (Vertex v = 0; v < n; ++v)
                EXPECT_EQ(collapsed_prob_exact(g, u, v), collapsed_prob_exact(g, v, u));
    }
}

TEST(CollapsedWalk, RowsAreExactDistributions) {
    const Graph g = make_lollipop(5, 4);
    for (Vertex u = 0; u < g.vertex_count(); ++u) {
        Rat row(0);
        for (Vertex v = 0; v < g.vertex_count(); ++v) row += collapsed_prob_exact(g, u, v);
        EXPECT_EQ(row, Rat(1));
    }
}

TEST(MhHitting, SingleEdgeWithinBound) {
    const auto rep = verify_mh_hitting(make_path(2));
    EXPECT_TRUE(rep.pass);
    EXPECT_EQ(rep.bound, 72.0);
    EXPECT_GT(rep.max_hitting, 0.0);
    EXPECT_LE(rep.max_hitting, 72.0);
}

TEST(MhHitting, AgreesWithDirectSolve) {
    const Graph g = make_lollipop(4, 3);
    const MHGraph mhg = mh_transform(g);
    const auto rep = verify_mh_hitting(g);
    const double direct = hitting_time_exact(mhg.weighted, rep.worst_from, rep.worst_to);
    EXPECT_NEAR(rep.max_hitting, direct, 1e-7 * (1 + direct));
}

TEST(MhHitting, FamiliesWithinBound) {
    for (const auto& g : {make_path(20), make_cycle(21), make_star(20), make_complete(12),
                          make_lollipop(10, 10), make_er_connected(20, 0.2, 5),
                          make_two_component(make_path(8), make_complete(5))}) {
        const auto rep = verify_mh_hitting(g);
        EXPECT_TRUE(rep.pass) << "max " << rep.max_hitting << " bound " << rep.bound;
    }
}

namespace {

double worst_pair_hitting(const TransitionMatrix& tm, const Graph& g) {
    std::vector<Vertex> targets(g.vertex_count());
    for (Vertex v = 0; v < g.vertex_count(); ++v) targets[v] = v;
    const Eigen::MatrixXd H = hitting_times_to_targets(tm, g, targets);
    double worst = 0;
    for (Vertex u = 0; u < g.vertex_count(); ++u)
        for (Vertex v = 0; v < g.vertex_count(); ++v)
            if (u != v && std::isfinite(H(u, v))) worst = std::max(worst, H(u, v));
    return worst;
}

}  // namespace

TEST(MhHitting, LollipopContrastOnOriginalVertices) {
    // The Metropolis chain on X (two transformed steps per move) flattens the
    // lollipop bottleneck: its worst-pair hitting time beats the simple
    // walk's, and the advantage widens with size.
    double prev_ratio = 0;
    for (int k : {8, 16, 32}) {
        const Graph g = make_lollipop(k, k);
        const double unweighted = worst_pair_hitting(transition_matrix(WeightedGraph::unweighted(g)), g);
        const double collapsed = worst_pair_hitting(collapsed_walk(g), g);
        EXPECT_GT(unweighted, collapsed) << "lollipop(" << k << "," << k << ")";
        const double ratio = unweighted / collapsed;
        EXPECT_GT(ratio, prev_ratio);
        prev_ratio = ratio;
    }
}
