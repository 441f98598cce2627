#pragma once

#include <cstdint>
#include <filesystem>
#include <string>
#include <vector>

#include "nullnet/temporal.hpp"

namespace nullnet {

struct InputError : std::runtime_error {
    using std::runtime_error::runtime_error;
};

struct LoadOptions {
    bool per_snapshot_nodes = false;  // default: union node set across snapshots
};

struct LoadedSeries {
    SnapshotSeries series;
    std::vector<std::string> node_labels;  // common label -> index map (union mode)
    int self_loops_dropped = 0;
    int duplicates_collapsed = 0;
    std::vector<std::string> warnings;
};

/// Loads snapshots from a directory of edge-list files (one snapshot per
/// file, lexicographic filename order) or from a single file. A single file
/// with 3 columns (time, source, target) is split by time key; with 2
/// columns it is one snapshot. '#' lines and blank lines are skipped;
/// comma vs whitespace separation is auto-detected per file.
LoadedSeries load_snapshots(const std::filesystem::path& path, LoadOptions opts = {});

struct RunMetadata {
    std::string version = "nullnet 0.1.0";
    std::uint64_t seed = 0;
    std::string config;  // textual echo of the effective flags
};

struct ReportBundle {
    RunMetadata meta;
    std::vector<std::string> node_labels;
    std::vector<std::string> snapshot_labels;
    std::vector<StationarityReport> reports;  // one per requested model
};

/// Writes report.json plus flat zscores.csv and profiles.csv into out_dir.
/// Output is deterministic: identical inputs, config and seed give
/// byte-identical files.
void write_reports(const ReportBundle& bundle, const std::filesystem::path& out_dir);

}  // namespace nullnet
