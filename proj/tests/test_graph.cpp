#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <random>

#include "nullnet/graph.hpp"
#include "test_util.hpp"

using namespace nullnet;

TEST_CASE("degrees of a small mixed graph") {
    // edges {1->2, 2->1, 1->3} on nodes 1..3 -> indices 0..2
    const auto g = graph_from_edges(3, {{0, 1}, {1, 0}, {0, 2}});
    const auto d = compute_degrees(g);
    CHECK(d.k_out == std::vector<int>{2, 1, 0});
    CHECK(d.k_in == std::vector<int>{1, 1, 1});
    CHECK(d.k_both == std::vector<int>{1, 1, 0});
    CHECK(d.k_right == std::vector<int>{1, 0, 0});
    CHECK(d.k_left == std::vector<int>{0, 0, 1});
    CHECK(d.total_links == 3);
}

TEST_CASE("degrees of empty and complete graphs") {
    const auto d_empty = compute_degrees(DirectedGraph(4));
    for (int i = 0; i < 4; ++i) {
        CHECK(d_empty.k_out[i] == 0);
        CHECK(d_empty.k_in[i] == 0);
        CHECK(d_empty.k_both[i] == 0);
    }

    DirectedGraph full(4);
    for (int i = 0; i < 4; ++i)
        for (int j = 0; j < 4; ++j)
            if (i != j) full.add_edge(i, j);
    const auto d_full = compute_degrees(full);
    for (int i = 0; i < 4; ++i) {
        CHECK(d_full.k_out[i] == 3);
        CHECK(d_full.k_in[i] == 3);
        CHECK(d_full.k_both[i] == 3);
        CHECK(d_full.k_right[i] == 0);
        CHECK(d_full.k_left[i] == 0);
    }
}

TEST_CASE("dyad states") {
    const auto g = graph_from_edges(3, {{0, 1}, {1, 0}, {0, 2}});
    CHECK(g.dyad_state(0, 2) == DyadState::OutOnly);
    CHECK(g.dyad_state(2, 0) == DyadState::InOnly);
    CHECK(g.dyad_state(0, 1) == DyadState::Reciprocated);
    CHECK(g.dyad_state(1, 2) == DyadState::Empty);
    CHECK_THROWS_AS((void)g.dyad_state(1, 1), std::invalid_argument);
}

TEST_CASE("self-loops are dropped and duplicates collapse") {
    const auto g = graph_from_edges(3, {{0, 0}, {0, 1}, {0, 1}, {1, 1}, {2, 0}});
    CHECK(g.self_loops_dropped() == 2);
    CHECK(g.duplicates_collapsed() == 1);
    CHECK(g.link_count() == 2);
    CHECK(g.has_edge(0, 1));
    CHECK_FALSE(g.has_edge(0, 0));
}

TEST_CASE("degree identities on random graphs") {
    std::mt19937_64 rng(7);
    for (int trial = 0; trial < 20; ++trial) {
        const auto g = testutil::random_digraph(12, 0.3, rng);
        const auto d = compute_degrees(g);
        long out_sum = 0, in_sum = 0, both_sum = 0;
        for (int i = 0; i < g.n(); ++i) {
            CHECK(d.k_out[i] == d.k_right[i] + d.k_both[i]);
            CHECK(d.k_in[i] == d.k_left[i] + d.k_both[i]);
            out_sum += d.k_out[i];
            in_sum += d.k_in[i];
            both_sum += d.k_both[i];

            // k_both agrees with the dyad-state view
            int recip = 0;
            for (int j = 0; j < g.n(); ++j)
                if (j != i && g.dyad_state(i, j) == DyadState::Reciprocated) ++recip;
            CHECK(recip == d.k_both[i]);
        }
        CHECK(out_sum == g.link_count());
        CHECK(in_sum == g.link_count());
        CHECK(both_sum % 2 == 0);
    }
}

TEST_CASE("exactly one dyad state per pair") {
    std::mt19937_64 rng(9);
    const auto g = testutil::random_digraph(10, 0.4, rng);
    for (int i = 0; i < g.n(); ++i) {
        for (int j = 0; j < g.n(); ++j) {
            if (i == j) continue;
            const int fwd = g.has_edge(i, j), bwd = g.has_edge(j, i);
            const int sum = fwd * (1 - bwd) + bwd * (1 - fwd) + fwd * bwd +
                            (1 - fwd) * (1 - bwd);
            CHECK(sum == 1);
        }
    }
}
