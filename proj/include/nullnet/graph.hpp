#pragma once

#include <cstdint>
#include <string>
#include <utility>
#include <vector>

namespace nullnet {

/// State of the unordered pair {i,j}, read from the ordered viewpoint (i,j).
enum class DyadState : std::uint8_t {
    Empty        = 0,  // no link either way
    OutOnly      = 1,  // i->j only
    InOnly       = 2,  // j->i only
    Reciprocated = 3,  // i->j and j->i
};

/// Per-node degree decomposition of a directed graph.
/// k_out = k_right + k_both and k_in = k_left + k_both hold by construction.
struct DegreeVectors {
    std::vector<int> k_out;    // out-degree
    std::vector<int> k_in;     // in-degree
    std::vector<int> k_right;  // non-reciprocated out-degree
    std::vector<int> k_left;   // non-reciprocated in-degree
    std::vector<int> k_both;   // reciprocated degree
    long total_links = 0;      // L = sum k_out = sum k_in
};

/// Binary directed graph with no self-loops. Self-loops in the input are
/// dropped (counted), duplicate edges collapse to one binary link.
class DirectedGraph {
public:
    explicit DirectedGraph(int n);

    int n() const { return n_; }

    bool has_edge(int i, int j) const { return adj_[static_cast<std::size_t>(i) * n_ + j] != 0; }
    void add_edge(int i, int j);

    long link_count() const { return links_; }
    int self_loops_dropped() const { return self_loops_; }
    int duplicates_collapsed() const { return duplicates_; }

    DyadState dyad_state(int i, int j) const;

    const std::vector<std::string>& node_labels() const { return labels_; }
    void set_node_labels(std::vector<std::string> labels);

private:
    int n_;
    long links_ = 0;
    int self_loops_ = 0;
    int duplicates_ = 0;
    std::vector<std::uint8_t> adj_;  // row-major n x n
    std::vector<std::string> labels_;
};

/// Builds a graph on n nodes from integer edge pairs (source, target).
DirectedGraph graph_from_edges(int n, const std::vector<std::pair<int, int>>& edges);

DegreeVectors compute_degrees(const DirectedGraph& g);

}  // namespace nullnet
