#include "nullnet/graph.hpp"

#include <stdexcept>

namespace nullnet {

DirectedGraph::DirectedGraph(int n) : n_(n) {
    if (n < 1) throw std::invalid_argument("DirectedGraph: node count must be >= 1");
    adj_.assign(static_cast<std::size_t>(n) * n, 0);
}

void DirectedGraph::add_edge(int i, int j) {
    if (i < 0 || i >= n_ || j < 0 || j >= n_)
        throw std::out_of_range("DirectedGraph::add_edge: node index out of range");
    if (i == j) {
        ++self_loops_;
        return;
    }
    auto& cell = adj_[static_cast<std::size_t>(i) * n_ + j];
    if (cell) {
        ++duplicates_;
        return;
    }
    cell = 1;
    ++links_;
}

DyadState DirectedGraph::dyad_state(int i, int j) const {
    if (i == j) throw std::invalid_argument("dyad_state: i == j");
    const bool fwd = has_edge(i, j);
    const bool bwd = has_edge(j, i);
    if (fwd && bwd) return DyadState::Reciprocated;
    if (fwd) return DyadState::OutOnly;
    if (bwd) return DyadState::InOnly;
    return DyadState::Empty;
}

void DirectedGraph::set_node_labels(std::vector<std::string> labels) {
    if (static_cast<int>(labels.size()) != n_)
        throw std::invalid_argument("set_node_labels: size mismatch");
    labels_ = std::move(labels);
}

DirectedGraph graph_from_edges(int n, const std::vector<std::pair<int, int>>& edges) {
    DirectedGraph g(n);
    for (const auto& [i, j] : edges) g.add_edge(i, j);
    return g;
}

DegreeVectors compute_degrees(const DirectedGraph& g) {
    const int n = g.n();
    DegreeVectors d;
    d.k_out.assign(n, 0);
    d.k_in.assign(n, 0);
    d.k_right.assign(n, 0);
    d.k_left.assign(n, 0);
    d.k_both.assign(n, 0);
    for (int i = 0; i < n; ++i) {
        for (int j = 0; j < n; ++j) {
            if (i == j || !g.has_edge(i, j)) continue;
            ++d.k_out[i];
            ++d.k_in[j];
            if (g.has_edge(j, i)) {
                ++d.k_both[i];
            } else {
                ++d.k_right[i];
                ++d.k_left[j];
            }
        }
    }
    d.total_links = g.link_count();
    return d;
}

}  // namespace nullnet
