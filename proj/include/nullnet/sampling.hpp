#pragma once

#include <array>
#include <cstdint>
#include <vector>

#include "nullnet/ensembles.hpp"
#include "nullnet/graph.hpp"
#include "nullnet/motifs.hpp"

namespace nullnet {

/// Motif counts of a batch of graphs drawn from one fitted ensemble.
/// triad[s] holds the ordered-tuple counts of all 16 triad classes of sample
/// s; dyadic[s] the 3 dyadic counts.
struct SampleBatch {
    ModelKind kind;
    int n = 0;
    int samples = 0;
    std::uint64_t seed = 0;
    std::vector<std::array<long long, kTriadClasses>> triad;
    std::vector<std::array<long long, kDyadicMotifs>> dyadic;
};

/// Draws one graph from the ensemble. Each unordered dyad's 4-way state is
/// drawn from a counter-based generator keyed on (seed, sample_index, i, j),
/// so samples are reproducible and independent of evaluation order.
DirectedGraph sample_graph(const FittedEnsemble& e, std::uint64_t seed,
                           std::uint64_t sample_index = 0);

SampleBatch sample_batch(const FittedEnsemble& e, int samples, std::uint64_t seed);

struct ExactMoments {
    std::array<double, kTriadClasses> triad_mean{};
    std::array<double, kTriadClasses> triad_var{};
    std::array<double, kDyadicMotifs> dyad_mean{};
    std::array<double, kDyadicMotifs> dyad_var{};
    double probability_sum = 0.0;  // should be 1 up to roundoff
};

/// Exact ensemble moments of every motif count by enumerating all
/// 4^(n(n-1)/2) dyad-state assignments, weighted by their probability.
/// Requires n <= 5.
ExactMoments enumerate_exact(const FittedEnsemble& e);

}  // namespace nullnet
