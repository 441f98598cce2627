#include <cmath>
#include <cstdio>
#include <filesystem>
#include <iostream>
#include <string>

#include <CLI11.hpp>

#include "nullnet/ensembles.hpp"
#include "nullnet/graph.hpp"
#include "nullnet/io.hpp"
#include "nullnet/motifs.hpp"
#include "nullnet/sampling.hpp"
#include "nullnet/temporal.hpp"

namespace {

using namespace nullnet;

constexpr int kExitOk = 0;
constexpr int kExitNoConverge = 2;
constexpr int kExitInput = 3;

struct CommonArgs {
    std::string input;
    std::string model = "dcm";
    double tol = 1e-8;
    int max_iter = 10000;
    int snapshot = 0;
    bool per_snapshot_nodes = false;
};

void add_common(CLI::App* cmd, CommonArgs& args, bool with_model = true) {
    cmd->add_option("input", args.input, "edge-list file or directory")->required();
    if (with_model)
        cmd->add_option("--model", args.model, "null model: drg, dcm or rcm")
            ->check(CLI::IsMember({"drg", "dcm", "rcm"}));
    cmd->add_option("--tol", args.tol, "fit tolerance (max relative residual)");
    cmd->add_option("--max-iter", args.max_iter, "fit iteration cap");
    cmd->add_option("--snapshot", args.snapshot, "snapshot index for single-snapshot commands");
    cmd->add_flag("--per-snapshot-nodes", args.per_snapshot_nodes,
                  "use each snapshot's own node set instead of the union");
}

const Snapshot& pick_snapshot(const LoadedSeries& loaded, int index) {
    const auto& snaps = loaded.series.snapshots;
    if (index < 0 || index >= static_cast<int>(snaps.size()))
        throw InputError("snapshot index " + std::to_string(index) + " out of range (have " +
                         std::to_string(snaps.size()) + ")");
    return snaps[index];
}

FittedEnsemble fit_model(const DirectedGraph& g, ModelKind kind, const CommonArgs& args) {
    FitOptions opts{args.tol, args.max_iter};
    switch (kind) {
        case ModelKind::DRG: return fit_drg(g);
        case ModelKind::DCM: return fit_dcm(g, opts);
        case ModelKind::RCM: return fit_rcm(g, opts);
    }
    throw std::logic_error("bad model");
}

int cmd_fit(const CommonArgs& args) {
    auto loaded = load_snapshots(args.input, {args.per_snapshot_nodes});
    const auto& snap = pick_snapshot(loaded, args.snapshot);
    const ModelKind kind = model_from_name(args.model);
    const auto e = fit_model(snap.graph, kind, args);
    std::printf("model %s  snapshot %s  n=%d  L=%ld\n", model_name(kind),
                snap.label.c_str(), snap.graph.n(), snap.graph.link_count());
    std::printf("residual %.3e  iterations %d  converged %s%s%s\n", e.residual,
                e.iterations, e.converged ? "yes" : "no",
                e.degenerate ? "  [degenerate]" : "",
                e.near_saturation ? "  [near-saturation]" : "");
    if (kind == ModelKind::DRG) {
        std::printf("p = %.17g\n", e.p);
    } else {
        const auto& labels = snap.graph.node_labels();
        for (int i = 0; i < e.n; ++i) {
            std::printf("%-16s x=%.17g y=%.17g", labels[i].c_str(), e.x[i], e.y[i]);
            if (kind == ModelKind::RCM) std::printf(" z=%.17g", e.z[i]);
            std::printf("\n");
        }
    }
    return e.converged ? kExitOk : kExitNoConverge;
}

int cmd_census(const CommonArgs& args) {
    auto loaded = load_snapshots(args.input, {args.per_snapshot_nodes});
    const auto& snap = pick_snapshot(loaded, args.snapshot);
    const auto& cat = MotifCatalog::instance();
    const auto census = full_triad_census(snap.graph);
    std::printf("snapshot %s  n=%d  L=%ld\n", snap.label.c_str(), snap.graph.n(),
                snap.graph.link_count());
    std::printf("%-20s %12s %12s\n", "class", "unordered", "ordered");
    for (int m = 1; m <= 3; ++m) {
        const MotifId id = MotifId::dyadic(m);
        std::printf("%-20s %12s %12lld\n", id.name().c_str(), "-",
                    count_motif(snap.graph, id));
    }
    for (int c = 0; c < kTriadClasses; ++c)
        std::printf("%-20s %12lld %12lld\n", cat.classes[c].name.c_str(), census[c],
                    census[c] * cat.classes[c].automorphisms);
    return kExitOk;
}

int cmd_zscore(const CommonArgs& args, const std::string& out_dir) {
    auto loaded = load_snapshots(args.input, {args.per_snapshot_nodes});
    const auto& snap = pick_snapshot(loaded, args.snapshot);
    const ModelKind kind = model_from_name(args.model);
    const auto e = fit_model(snap.graph, kind, args);
    if (!e.converged) {
        std::fprintf(stderr, "fit did not converge (residual %.3e)\n", e.residual);
        return kExitNoConverge;
    }
    const auto stats = motif_stats(snap.graph, e);
    std::printf("snapshot %s  model %s\n", snap.label.c_str(), model_name(kind));
    std::printf("%-10s %12s %16s %14s %10s %10s\n", "motif", "observed", "expected",
                "std", "z", "sp");
    for (const auto& st : stats) {
        std::printf("%-10s %12.0f %16.6f %14.6f ", st.motif.name().c_str(), st.observed,
                    st.expected, st.std_dev);
        if (st.z_defined) std::printf("%10.4f ", st.z);
        else std::printf("%10s ", "undef");
        if (st.motif.triadic) std::printf("%10.4f\n", st.sp);
        else std::printf("%10s\n", "-");
    }
    if (!out_dir.empty()) {
        ReportBundle bundle;
        bundle.meta.config = "zscore --model " + args.model;
        bundle.node_labels = loaded.node_labels;
        bundle.snapshot_labels = {snap.label};
        StationarityReport rep;
        rep.model = kind;
        SnapshotResult r;
        r.fit = e;
        r.stats = stats;
        for (int m = 0; m < 13; ++m) r.sp[m] = stats[3 + m].sp;
        rep.sp_matrix.push_back(r.sp);
        rep.per_snapshot.push_back(std::move(r));
        bundle.reports.push_back(std::move(rep));
        write_reports(bundle, out_dir);
    }
    return kExitOk;
}

int cmd_temporal(const CommonArgs& args, const std::string& out_dir, double threshold,
                 int window, bool allow_nonconverged, std::uint64_t seed) {
    auto loaded = load_snapshots(args.input, {args.per_snapshot_nodes});
    const ModelKind kind = model_from_name(args.model);
    AnalysisOptions opts;
    opts.fit = {args.tol, args.max_iter};
    opts.threshold = threshold;
    opts.window = window;
    opts.allow_nonconverged = allow_nonconverged;
    StationarityReport rep;
    try {
        rep = analyze_series(loaded.series, kind, opts);
    } catch (const SeriesFitError& err) {
        std::fprintf(stderr, "%s\n", err.what());
        return kExitNoConverge;
    }
    std::printf("model %s  snapshots %zu  collapse score %.6f\n", model_name(kind),
                rep.per_snapshot.size(), rep.collapse);
    std::printf("segments:");
    for (const auto& [lo, hi] : rep.segments) std::printf(" [%d,%d)", lo, hi);
    std::printf("\n");
    for (const auto& w : rep.warnings)
        for (const auto& ev : w.events)
            std::printf("early-warning: motif %s inversion %s at snapshot %d (%s)\n",
                        w.motif.name().c_str(), ev.direction > 0 ? "up" : "down",
                        ev.snapshot,
                        loaded.series.snapshots[ev.snapshot].label.c_str());
    ReportBundle bundle;
    bundle.meta.seed = seed;
    {
        char cfg[160];
        std::snprintf(cfg, sizeof(cfg),
                      "temporal --model %s --tol %g --max-iter %d --threshold %g "
                      "--window %d",
                      args.model.c_str(), args.tol, args.max_iter, threshold, window);
        bundle.meta.config = cfg;
    }
    bundle.node_labels = loaded.node_labels;
    for (const auto& s : loaded.series.snapshots) bundle.snapshot_labels.push_back(s.label);
    bundle.reports.push_back(std::move(rep));
    write_reports(bundle, out_dir);
    std::printf("reports written to %s\n", out_dir.c_str());
    return kExitOk;
}

int cmd_sample(const CommonArgs& args, int samples, std::uint64_t seed,
               const std::string& out_file) {
    auto loaded = load_snapshots(args.input, {args.per_snapshot_nodes});
    const auto& snap = pick_snapshot(loaded, args.snapshot);
    const ModelKind kind = model_from_name(args.model);
    const auto e = fit_model(snap.graph, kind, args);
    if (!e.converged) {
        std::fprintf(stderr, "fit did not converge (residual %.3e)\n", e.residual);
        return kExitNoConverge;
    }
    const auto batch = sample_batch(e, samples, seed);
    const auto& cat = MotifCatalog::instance();
    std::string csv = "sample";
    for (int m = 1; m <= 3; ++m) csv += "," + MotifId::dyadic(m).name();
    for (int c = 0; c < kTriadClasses; ++c) csv += "," + cat.classes[c].name;
    csv += '\n';
    for (int s = 0; s < batch.samples; ++s) {
        csv += std::to_string(s);
        for (int m = 0; m < kDyadicMotifs; ++m)
            csv += "," + std::to_string(batch.dyadic[s][m]);
        for (int c = 0; c < kTriadClasses; ++c)
            csv += "," + std::to_string(batch.triad[s][c]);
        csv += '\n';
    }
    if (out_file.empty()) {
        std::fputs(csv.c_str(), stdout);
    } else {
        FILE* f = std::fopen(out_file.c_str(), "w");
        if (!f) throw InputError("cannot write " + out_file);
        std::fputs(csv.c_str(), f);
        std::fclose(f);
        std::printf("wrote %d samples (seed %llu) to %s\n", batch.samples,
                    static_cast<unsigned long long>(seed), out_file.c_str());
    }
    return kExitOk;
}

int cmd_oracle(const CommonArgs& args) {
    auto loaded = load_snapshots(args.input, {args.per_snapshot_nodes});
    const auto& snap = pick_snapshot(loaded, args.snapshot);
    if (snap.graph.n() > 5)
        throw InputError("oracle requires n <= 5 (got n=" +
                         std::to_string(snap.graph.n()) + ")");
    const ModelKind kind = model_from_name(args.model);
    const auto e = fit_model(snap.graph, kind, args);
    if (!e.converged) {
        std::fprintf(stderr, "fit did not converge (residual %.3e)\n", e.residual);
        return kExitNoConverge;
    }
    const auto exact = enumerate_exact(e);
    const auto& cat = MotifCatalog::instance();
    const auto exp_t = expected_triads(e);
    const auto var_t = triad_variances(e);
    const auto exp_d = expected_dyadic(e);
    const auto var_d = dyadic_variances(e);
    std::printf("model %s  n=%d  probability mass enumerated: %.12f\n", model_name(kind),
                e.n, exact.probability_sum);
    std::printf("%-20s %16s %16s %12s %12s\n", "motif", "mean(analytic)", "mean(exact)",
                "var(analytic)", "var(exact)");
    double worst = 0.0;
    for (int m = 0; m < kDyadicMotifs; ++m) {
        std::printf("%-20s %16.10f %16.10f %12.8f %12.8f\n",
                    MotifId::dyadic(m + 1).name().c_str(), exp_d[m], exact.dyad_mean[m],
                    var_d[m], exact.dyad_var[m]);
        worst = std::max({worst, std::abs(exp_d[m] - exact.dyad_mean[m]),
                          std::abs(var_d[m] - exact.dyad_var[m])});
    }
    for (int c = 0; c < kTriadClasses; ++c) {
        std::printf("%-20s %16.10f %16.10f %12.8f %12.8f\n", cat.classes[c].name.c_str(),
                    exp_t[c], exact.triad_mean[c], var_t[c], exact.triad_var[c]);
        worst = std::max({worst, std::abs(exp_t[c] - exact.triad_mean[c]),
                          std::abs(var_t[c] - exact.triad_var[c])});
    }
    std::printf("max |analytic - exact| = %.3e\n", worst);
    return kExitOk;
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"Maximum-entropy null models and motif statistics for directed "
                 "network snapshots"};
    app.require_subcommand(1);

    CommonArgs fit_args, census_args, zscore_args, temporal_args, sample_args, oracle_args;
    std::string zscore_out, temporal_out = "nullnet-report", sample_out;
    double threshold = 0.5;
    int window = 4;
    bool allow_nonconverged = false;
    int samples = 1000;
    std::uint64_t seed = 1;

    add_common(app.add_subcommand("fit", "fit one model to one snapshot"), fit_args);
    add_common(app.add_subcommand("census", "observed motif counts of one snapshot"),
               census_args, false);
    auto* zs = app.add_subcommand("zscore", "full motif statistics for one snapshot");
    add_common(zs, zscore_args);
    zs->add_option("--out", zscore_out, "directory for report/CSV output");
    auto* tp = app.add_subcommand("temporal", "snapshot-series stationarity analysis");
    add_common(tp, temporal_args);
    tp->add_option("--out", temporal_out, "output directory");
    tp->add_option("--threshold", threshold, "segmentation threshold on SP distance");
    tp->add_option("--window", window, "early-warning window (snapshots)");
    tp->add_option("--seed", seed, "seed recorded in run metadata");
    tp->add_flag("--allow-nonconverged", allow_nonconverged,
                 "analyze snapshots whose fit did not reach tolerance");
    auto* sm = app.add_subcommand("sample", "draw graphs from a fitted model");
    add_common(sm, sample_args);
    sm->add_option("--samples", samples, "number of graphs to draw");
    sm->add_option("--seed", seed, "sampler seed");
    sm->add_option("--out", sample_out, "CSV file for per-sample motif counts");
    add_common(app.add_subcommand("oracle", "exact small-n enumeration cross-check"),
               oracle_args);

    CLI11_PARSE(app, argc, argv);

    try {
        if (app.got_subcommand("fit")) return cmd_fit(fit_args);
        if (app.got_subcommand("census")) return cmd_census(census_args);
        if (app.got_subcommand("zscore")) return cmd_zscore(zscore_args, zscore_out);
        if (app.got_subcommand("temporal"))
            return cmd_temporal(temporal_args, temporal_out, threshold, window,
                                allow_nonconverged, seed);
        if (app.got_subcommand("sample"))
            return cmd_sample(sample_args, samples, seed, sample_out);
        if (app.got_subcommand("oracle")) return cmd_oracle(oracle_args);
    } catch (const nullnet::InputError& err) {
        std::fprintf(stderr, "input error: %s\n", err.what());
        return kExitInput;
    } catch (const nullnet::DegenerateModelError& err) {
        std::fprintf(stderr, "degenerate model: %s\n", err.what());
        return kExitNoConverge;
    } catch (const std::exception& err) {
        std::fprintf(stderr, "error: %s\n", err.what());
        return 1;
    }
    return kExitOk;
}
