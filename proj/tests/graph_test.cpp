#include "qwlab/graph.hpp"

#include <gtest/gtest.h>

#include <algorithm>
#include <random>
#include <sstream>

#include "qwlab/rng.hpp"

using namespace qwl;

TEST(GraphBuild, SmallestLegalGraph) {
    Graph g = build_graph(2, {{0, 1}});
    EXPECT_EQ(g.vertex_count(), 2u);
    EXPECT_EQ(g.edge_count(), 1u);
    EXPECT_EQ(g.neighbours(0), std::vector<Vertex>{1});
    EXPECT_EQ(g.neighbours(1), std::vector<Vertex>{0});
}

TEST(GraphBuild, TriangleDegrees) {
    Graph g = build_graph(3, {{0, 1}, {1, 2}, {0, 2}});
    for (Vertex u = 0; u < 3; ++u) EXPECT_EQ(g.degree(u), 2u);
}

TEST(GraphBuild, DuplicateEdgesCollapse) {
    Graph g = build_graph(3, {{0, 1}, {1, 0}, {1, 2}});
    EXPECT_EQ(g.edge_count(), 2u);
}

TEST(GraphBuild, RejectsSelfLoop) {
    EXPECT_THROW(build_graph(3, {{0, 0}, {1, 2}}), std::invalid_argument);
}

TEST(GraphBuild, RejectsIsolatedVertex) {
    EXPECT_THROW(build_graph(3, {{0, 1}}), std::invalid_argument);
}

TEST(GraphBuild, RejectsOutOfRange) {
    EXPECT_THROW(build_graph(2, {{0, 2}}), std::invalid_argument);
}

TEST(GraphBuild, InvariantUnderPermutationAndOrientation) {
    const std::vector<Edge> edges{{0, 1}, {1, 2}, {2, 3}, {0, 3}, {1, 3}};
    Graph base = build_graph(4, edges);
    std::vector<Edge> shuffled{{3, 1}, {3, 0}, {2, 1}, {3, 2}, {1, 0}};
    Graph other = build_graph(4, shuffled);
    EXPECT_EQ(to_edge_list(base), to_edge_list(other));
}

TEST(GraphQueries, DegreeQuery) {
    QueryLedger led;
    Graph tri = make_complete(3);
    EXPECT_EQ(degree_query(tri, 0, led), 2u);
    Graph star = make_star(5);
    EXPECT_EQ(degree_query(star, 0, led), 4u);
    Graph p4 = make_path(4);
    EXPECT_EQ(degree_query(p4, 0, led), 1u);
    EXPECT_EQ(led.degree, 3u);
    EXPECT_THROW(degree_query(p4, 9, led), std::out_of_range);
}

TEST(GraphQueries, NeighbourQuerySortedOrder) {
    QueryLedger led;
    Graph tri = make_complete(3);
    EXPECT_EQ(neighbour_query(tri, 0, 1, led), 1u);
    EXPECT_EQ(neighbour_query(tri, 0, 2, led), 2u);
    Graph p3 = make_path(3);
    EXPECT_EQ(neighbour_query(p3, 1, 2, led), 2u);
    Graph star = make_star(4);
    EXPECT_EQ(neighbour_query(star, 0, 3, led), 3u);
    EXPECT_THROW(neighbour_query(p3, 0, 2, led), std::out_of_range);
    EXPECT_THROW(neighbour_query(p3, 0, 0, led), std::out_of_range);
}

TEST(GraphQueries, IndexQueryBinarySearchBudget) {
    QueryLedger led;
    Graph tri = make_complete(3);
    EXPECT_EQ(index_query(tri, 0, 2, led), 2u);
    EXPECT_LE(led.neighbour, 2u);

    // star with centre degree 8: at most ceil(log2(8)) + 1 = 4 probes
    Graph star = make_star(9);
    led.reset();
    EXPECT_EQ(index_query(star, 0, 5, led), 5u);
    EXPECT_LE(led.neighbour, 4u);

    Graph p2 = make_path(2);
    led.reset();
    EXPECT_EQ(index_query(p2, 0, 1, led), 1u);
    EXPECT_LE(led.neighbour, 1u);

    EXPECT_THROW(index_query(star, 1, 5, led), std::invalid_argument);
}

TEST(GraphQueries, RoundTripIdentityAndBudgetEverywhere) {
    std::vector<Graph> graphs{make_path(7),      make_cycle(9),    make_star(12),
                              make_complete(8),  make_lollipop(5, 4),
                              make_er_connected(14, 0.3, 7)};
    for (const Graph& g : graphs) {
        for (Vertex u = 0; u < g.vertex_count(); ++u) {
            const auto& nbrs = g.neighbours(u);
            EXPECT_TRUE(std::is_sorted(nbrs.begin(), nbrs.end()));
            EXPECT_TRUE(std::adjacent_find(nbrs.begin(), nbrs.end()) == nbrs.end());
            const double budget = std::ceil(std::log2(std::max<double>(2, g.degree(u)))) + 1;
            for (Vertex v : nbrs) {
                QueryLedger led;
                const auto i = index_query(g, u, v, led);
                EXPECT_EQ(neighbour_query(g, u, i, led), v);
                EXPECT_LE(static_cast<double>(led.neighbour) - 1, budget);  // minus the check query
            }
        }
    }
}

TEST(GraphFamilies, CompleteCounts) {
    Graph g = make_complete(4);
    EXPECT_EQ(g.edge_count(), 6u);
    for (Vertex u = 0; u < 4; ++u) EXPECT_EQ(g.degree(u), 3u);
}

TEST(GraphFamilies, LollipopCounts) {
    Graph g = make_lollipop(4, 3);
    EXPECT_EQ(g.vertex_count(), 7u);
    EXPECT_EQ(g.edge_count(), 6u + 3u);
}

TEST(GraphFamilies, TwoComponentUnreachable) {
    Graph g = make_two_component(make_path(3), make_path(3));
    EXPECT_FALSE(connected_oracle(g, 0, 3));
    EXPECT_FALSE(connected_oracle(g, 2, 5));
    EXPECT_TRUE(connected_oracle(g, 0, 2));
    EXPECT_TRUE(connected_oracle(g, 3, 5));
}

TEST(GraphFamilies, ErConnectedDeterministicPerSeed) {
    Graph a = make_er_connected(16, 0.25, 42);
    Graph b = make_er_connected(16, 0.25, 42);
    EXPECT_EQ(to_edge_list(a), to_edge_list(b));
    EXPECT_TRUE(is_connected(a));
}

TEST(GraphFamilies, RejectsTooSmall) {
    EXPECT_THROW(make_path(1), std::invalid_argument);
    EXPECT_THROW(make_complete(1), std::invalid_argument);
}

TEST(EdgeListFormat, RoundTrip) {
    Graph g = make_lollipop(4, 2);
    const std::string text = to_edge_list(g);
    std::istringstream in(text);
    Graph back = read_edge_list(in);
    EXPECT_EQ(to_edge_list(back), text);
}

TEST(EdgeListFormat, ByteDeterministic) {
    Graph g = make_er_connected(10, 0.4, 3);
    EXPECT_EQ(to_edge_list(g), to_edge_list(g));
    std::istringstream in("2 1\n0 1\n");
    Graph p = read_edge_list(in);
    EXPECT_EQ(p.edge_count(), 1u);
}

TEST(Connectivity, ComponentStructure) {
    Graph g = make_two_component(make_complete(3), make_path(4));
    const auto ids = component_ids(g);
    EXPECT_EQ(ids[0], ids[2]);
    EXPECT_EQ(ids[3], ids[6]);
    EXPECT_NE(ids[0], ids[3]);
    EXPECT_EQ(component_of(g, 1), (std::vector<Vertex>{0, 1, 2}));
}

TEST(Connectivity, Bipartiteness) {
    EXPECT_TRUE(is_bipartite(make_path(6)));
    EXPECT_TRUE(is_bipartite(make_cycle(8)));
    EXPECT_FALSE(is_bipartite(make_cycle(7)));
    EXPECT_FALSE(is_bipartite(make_complete(3)));
    EXPECT_TRUE(is_bipartite(make_star(9)));
}
