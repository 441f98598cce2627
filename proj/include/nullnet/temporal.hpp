#pragma once

#include <array>
#include <string>
#include <utility>
#include <vector>

#include "nullnet/ensembles.hpp"
#include "nullnet/graph.hpp"
#include "nullnet/motifs.hpp"

namespace nullnet {

struct Snapshot {
    std::string label;
    DirectedGraph graph;
};

struct SnapshotSeries {
    std::vector<Snapshot> snapshots;
};

struct SnapshotResult {
    FittedEnsemble fit;
    std::vector<MotifStats> stats;    // 3 dyadic + 13 triadic
    std::array<double, 13> sp{};
    bool sp_all_zero = false;
};

struct TrendEvent {
    int snapshot = 0;   // index of the first snapshot of the new regime
    int direction = 0;  // +1 inversion upward, -1 downward
};

struct MotifTrendEvents {
    MotifId motif;
    std::vector<TrendEvent> events;
};

struct AnalysisOptions {
    FitOptions fit{};
    double threshold = 0.5;           // segmentation / stationarity threshold
    int window = 4;                   // early-warning half-window
    bool allow_nonconverged = false;  // explicit override for failed fits
};

struct StationarityReport {
    ModelKind model;
    std::vector<SnapshotResult> per_snapshot;
    std::vector<std::array<double, 13>> sp_matrix;
    double collapse = 0.0;
    std::vector<std::pair<int, int>> segments;  // half-open index ranges
    std::vector<MotifTrendEvents> warnings;     // one entry per triadic motif with events
};

/// Thrown when a per-snapshot fit fails and allow_nonconverged is not set.
struct SeriesFitError : std::runtime_error {
    int snapshot_index;
    SeriesFitError(int idx, const std::string& what)
        : std::runtime_error(what), snapshot_index(idx) {}
};

/// Fits the model independently on every snapshot, computes all MotifStats,
/// and runs the series-level analyses below.
StationarityReport analyze_series(const SnapshotSeries& s, ModelKind model,
                                  AnalysisOptions opts = {});

/// Maximum pairwise Euclidean distance between SP rows (all-zero rows are
/// skipped). 0 iff all rows identical; at most 2 for unit-norm rows.
double collapse_score(const std::vector<std::array<double, 13>>& sp_rows);

/// Greedy left-to-right split: a segment grows while every row in it stays
/// within `threshold` of the segment's renormalized mean profile.
std::vector<std::pair<int, int>> segment_subperiods(
    const std::vector<std::array<double, 13>>& sp_rows, double threshold);

/// Scans one motif's z-series for trend inversions. At each boundary t the
/// trailing and leading windows are compared; an event requires both window
/// means to exceed 1 in magnitude and either the mean or the regression
/// slope to flip sign across the boundary. Non-finite z entries split the
/// series into independent runs. Requires series length >= 2*window.
std::vector<TrendEvent> detect_trend_inversion(const std::vector<double>& z, int window);

}  // namespace nullnet
