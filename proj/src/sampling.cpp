#include "nullnet/sampling.hpp"

#include <cmath>
#include <stdexcept>

namespace nullnet {

namespace {

inline std::uint64_t mix64(std::uint64_t v) {
    v += 0x9e3779b97f4a7c15ULL;
    v = (v ^ (v >> 30)) * 0xbf58476d1ce4e5b9ULL;
    v = (v ^ (v >> 27)) * 0x94d049bb133111ebULL;
    return v ^ (v >> 31);
}

/// Uniform in [0,1), keyed on (seed, sample, i, j): counter-based, so draws
/// are reproducible regardless of evaluation order.
inline double dyad_uniform(std::uint64_t seed, std::uint64_t sample, int i, int j) {
    std::uint64_t h = mix64(seed ^ 0x7f4a7c1500000001ULL);
    h = mix64(h ^ sample);
    h = mix64(h ^ (static_cast<std::uint64_t>(i) << 32 | static_cast<std::uint32_t>(j)));
    return static_cast<double>(h >> 11) * 0x1.0p-53;
}

}  // namespace

DirectedGraph sample_graph(const FittedEnsemble& e, std::uint64_t seed,
                           std::uint64_t sample_index) {
    DirectedGraph g(e.n);
    for (int i = 0; i < e.n; ++i) {
        for (int j = i + 1; j < e.n; ++j) {
            const auto p = dyad_probabilities(e, i, j);
            const double u = dyad_uniform(seed, sample_index, i, j);
            if (u < p.p_both) {
                g.add_edge(i, j);
                g.add_edge(j, i);
            } else if (u < p.p_both + p.p_out) {
                g.add_edge(i, j);
            } else if (u < p.p_both + p.p_out + p.p_in) {
                g.add_edge(j, i);
            }
        }
    }
    return g;
}

SampleBatch sample_batch(const FittedEnsemble& e, int samples, std::uint64_t seed) {
    if (samples < 1) throw std::invalid_argument("sample_batch: samples must be >= 1");
    const auto& cat = MotifCatalog::instance();
    SampleBatch batch;
    batch.kind = e.kind;
    batch.n = e.n;
    batch.samples = samples;
    batch.seed = seed;
    batch.triad.resize(samples);
    batch.dyadic.resize(samples);
    for (int s = 0; s < samples; ++s) {
        const DirectedGraph g = sample_graph(e, seed, static_cast<std::uint64_t>(s));
        const auto census = full_triad_census(g);
        for (int c = 0; c < kTriadClasses; ++c)
            batch.triad[s][c] = census[c] * cat.classes[c].automorphisms;
        for (int m = 1; m <= 3; ++m)
            batch.dyadic[s][m - 1] = count_motif(g, MotifId::dyadic(m));
    }
    return batch;
}

ExactMoments enumerate_exact(const FittedEnsemble& e) {
    const int n = e.n;
    if (n > 5) throw std::invalid_argument("enumerate_exact: n must be <= 5");
    if (n < 2) throw std::invalid_argument("enumerate_exact: n must be >= 2");
    const auto& cat = MotifCatalog::instance();

    const int dyads = n * (n - 1) / 2;
    std::vector<std::pair<int, int>> pair_of;
    std::vector<std::array<double, 4>> prob;
    for (int i = 0; i < n; ++i) {
        for (int j = i + 1; j < n; ++j) {
            pair_of.emplace_back(i, j);
            const auto d = dyad_probabilities(e, i, j);
            prob.push_back({d.p_empty, d.p_out, d.p_in, d.p_both});
        }
    }

    ExactMoments m;
    std::array<double, kTriadClasses> t1{}, t2{};
    std::array<double, kDyadicMotifs> d1{}, d2{};
    const std::uint64_t total = 1ULL << (2 * dyads);
    for (std::uint64_t assign = 0; assign < total; ++assign) {
        double weight = 1.0;
        DirectedGraph g(n);
        for (int d = 0; d < dyads; ++d) {
            const int state = static_cast<int>((assign >> (2 * d)) & 3);
            weight *= prob[d][state];
            if (weight == 0.0) break;
            const auto [i, j] = pair_of[d];
            if (state & 1) g.add_edge(i, j);
            if (state & 2) g.add_edge(j, i);
        }
        if (weight == 0.0) continue;
        m.probability_sum += weight;
        const auto census = full_triad_census(g);
        for (int c = 0; c < kTriadClasses; ++c) {
            const double count =
                static_cast<double>(census[c]) * cat.classes[c].automorphisms;
            t1[c] += weight * count;
            t2[c] += weight * count * count;
        }
        for (int k = 1; k <= 3; ++k) {
            const double count = static_cast<double>(count_motif(g, MotifId::dyadic(k)));
            d1[k - 1] += weight * count;
            d2[k - 1] += weight * count * count;
        }
    }
    for (int c = 0; c < kTriadClasses; ++c) {
        m.triad_mean[c] = t1[c];
        m.triad_var[c] = t2[c] - t1[c] * t1[c];
    }
    for (int k = 0; k < kDyadicMotifs; ++k) {
        m.dyad_mean[k] = d1[k];
        m.dyad_var[k] = d2[k] - d1[k] * d1[k];
    }
    return m;
}

}  // namespace nullnet
