#pragma once

#include <random>

#include "nullnet/graph.hpp"

namespace nullnet::testutil {

/// Directed Erdos-Renyi graph, each ordered pair independently with prob p.
inline DirectedGraph random_digraph(int n, double p, std::mt19937_64& rng) {
    std::uniform_real_distribution<double> u(0.0, 1.0);
    DirectedGraph g(n);
    for (int i = 0; i < n; ++i)
        for (int j = 0; j < n; ++j)
            if (i != j && u(rng) < p) g.add_edge(i, j);
    return g;
}

/// Random digraph with independently tunable single-link and reciprocation
/// probabilities per unordered dyad.
inline DirectedGraph random_reciprocal_digraph(int n, double p_single, double p_both,
                                               std::mt19937_64& rng) {
    std::uniform_real_distribution<double> u(0.0, 1.0);
    DirectedGraph g(n);
    for (int i = 0; i < n; ++i) {
        for (int j = i + 1; j < n; ++j) {
            const double v = u(rng);
            if (v < p_both) {
                g.add_edge(i, j);
                g.add_edge(j, i);
            } else if (v < p_both + p_single) {
                if (u(rng) < 0.5) g.add_edge(i, j);
                else g.add_edge(j, i);
            }
        }
    }
    return g;
}

}  // namespace nullnet::testutil
