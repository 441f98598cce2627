#pragma once

#include <array>
#include <cstdint>
#include <string>
#include <vector>

#include "nullnet/ensembles.hpp"
#include "nullnet/graph.hpp"

namespace nullnet {

/// Identifier of a dyadic (1..3) or triadic (1..13) motif.
/// Dyadic: 1 = single link, 2 = reciprocated, 3 = empty dyad.
/// Triadic indices follow the standard significance-profile ordering of the
/// 13 weakly connected digraphs on 3 nodes (motif 9 is the unreciprocated
/// 3-cycle; 10, 12, 13 are the 3-loops with 1, 2, 3 reciprocated dyads).
struct MotifId {
    bool triadic = true;
    int index = 1;

    static MotifId dyadic(int i) { return {false, i}; }
    static MotifId triad(int i) { return {true, i}; }
    std::string name() const;
    bool operator==(const MotifId&) const = default;
};

constexpr int kTriadClasses = 16;  // 13 connected + empty + single-edge + mutual-dyad
constexpr int kDyadicMotifs = 3;

/// One isomorphism class of digraphs on 3 labeled nodes.
struct TriadClass {
    int canonical_id;                                   // min row-major 9-bit matrix id
    std::array<std::array<std::uint8_t, 3>, 3> rep;     // representative adjacency
    int automorphisms;
    int edges;
    bool connected;
    int motif_index;  // 1..13 for connected classes, 0 otherwise
    std::string name;
};

/// Catalog of all 16 triad classes, with lookup tables from 6-bit edge codes
/// and from joint dyad-state codes to class slots. Slots 0..12 are motifs
/// 1..13; 13 = empty triad, 14 = single edge, 15 = mutual dyad.
struct MotifCatalog {
    std::array<TriadClass, kTriadClasses> classes;
    std::array<int, 64> class_of_code;   // bit k of code: see motifs.cpp
    std::array<int, 64> class_of_joint;  // s01 | s02<<2 | s12<<4, DyadState 2-bit codes

    static const MotifCatalog& instance();
    const TriadClass& motif(int index) const { return classes[index - 1]; }
};

struct MotifStats {
    MotifId motif;
    double observed = 0.0;
    double expected = 0.0;
    double std_dev = 0.0;
    double z = 0.0;
    double sp = 0.0;
    bool z_defined = true;  // false when std_dev == 0
};

/// Unordered triad census over the 16 classes (catalog slot order).
/// The counts sum to C(n,3).
std::array<long long, kTriadClasses> full_triad_census(const DirectedGraph& g);

/// Ordered-tuple motif abundance: sum over ordered node tuples of the
/// indicator product, i.e. unordered occurrences times automorphism count.
long long count_motif(const DirectedGraph& g, MotifId m);

/// Exact expectations of the ordered-tuple counts of all 16 triad classes
/// under the fitted ensemble, by dyad-factorized products. O(n^3).
std::array<double, kTriadClasses> expected_triads(const FittedEnsemble& e);

/// Exact variances of the ordered-tuple triad counts, decomposed over triples
/// sharing a dyad (conditionally independent given the shared dyad). O(n^3).
std::array<double, kTriadClasses> triad_variances(const FittedEnsemble& e);

std::array<double, kDyadicMotifs> expected_dyadic(const FittedEnsemble& e);
std::array<double, kDyadicMotifs> dyadic_variances(const FittedEnsemble& e);

double expected_motif(const FittedEnsemble& e, MotifId m);
double motif_variance(const FittedEnsemble& e, MotifId m);

/// DRG closed forms: n(n-1)(n-2) p^E (1-p)^(6-E) for a triadic motif with E
/// edges; 2 C(n,2) p^2 for the reciprocated dyad, etc.
double drg_closed_form_expected(int n, double p, MotifId m);

/// (observed - expected) / std; NaN with z_defined=false downstream when
/// std == 0.
double z_score(const DirectedGraph& g, const FittedEnsemble& e, MotifId m);

/// SP_m = z_m / sqrt(sum z^2) over the 13 triadic z-scores. Undefined
/// (non-finite) entries contribute 0. All-zero input yields all-zero output
/// and sets *all_zero.
std::array<double, 13> significance_profile(const std::array<double, 13>& z,
                                            bool* all_zero = nullptr);

/// Full per-snapshot table: 3 dyadic + 13 triadic MotifStats, SP filled in
/// for the triadic entries.
std::vector<MotifStats> motif_stats(const DirectedGraph& g, const FittedEnsemble& e);

}  // namespace nullnet
