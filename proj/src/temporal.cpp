#include "nullnet/temporal.hpp"

#include <cmath>
#include <limits>
#include <stdexcept>

namespace nullnet {

namespace {

double row_distance(const std::array<double, 13>& a, const std::array<double, 13>& b) {
    double s = 0.0;
    for (int m = 0; m < 13; ++m) {
        const double d = a[m] - b[m];
        s += d * d;
    }
    return std::sqrt(s);
}

bool row_all_zero(const std::array<double, 13>& r) {
    for (double v : r)
        if (v != 0.0) return false;
    return true;
}

/// Mean of rows[lo..hi) renormalized to unit norm (zero vector if degenerate).
std::array<double, 13> segment_profile(const std::vector<std::array<double, 13>>& rows,
                                       int lo, int hi) {
    std::array<double, 13> mean{};
    for (int r = lo; r < hi; ++r)
        for (int m = 0; m < 13; ++m) mean[m] += rows[r][m];
    double norm = 0.0;
    for (double v : mean) norm += v * v;
    norm = std::sqrt(norm);
    if (norm > 0.0)
        for (auto& v : mean) v /= norm;
    return mean;
}

struct WindowFit {
    double mean;
    double slope;
};

WindowFit linear_fit(const std::vector<double>& z, int lo, int hi) {
    const int n = hi - lo;
    double mean = 0.0;
    for (int t = lo; t < hi; ++t) mean += z[t];
    mean /= n;
    const double xbar = (n - 1) / 2.0;
    double num = 0.0, den = 0.0;
    for (int t = lo; t < hi; ++t) {
        const double dx = (t - lo) - xbar;
        num += dx * (z[t] - mean);
        den += dx * dx;
    }
    return {mean, den > 0.0 ? num / den : 0.0};
}

void detect_in_run(const std::vector<double>& z, int lo, int hi, int window,
                   std::vector<TrendEvent>& out) {
    constexpr double kSlopeEps = 1e-9;
    int best_t = -1, best_dir = 0;
    double best_score = 0.0;
    auto flush = [&] {
        if (best_t >= 0) out.push_back({best_t, best_dir});
        best_t = -1;
        best_score = 0.0;
    };
    int prev_t = -2;
    for (int t = lo + window; t + window <= hi; ++t) {
        const WindowFit left = linear_fit(z, t - window, t);
        const WindowFit right = linear_fit(z, t, t + window);
        if (std::abs(left.mean) <= 1.0 || std::abs(right.mean) <= 1.0) continue;
        const bool level_flip = left.mean * right.mean < 0.0;
        const bool slope_flip = std::abs(left.slope) > kSlopeEps &&
                                std::abs(right.slope) > kSlopeEps &&
                                left.slope * right.slope < 0.0;
        if (!level_flip && !slope_flip) continue;
        const double score = level_flip ? std::abs(right.mean - left.mean)
                                        : std::abs(right.slope - left.slope);
        const int dir = level_flip ? (right.mean > left.mean ? 1 : -1)
                                   : (right.slope > left.slope ? 1 : -1);
        if (t != prev_t + 1) flush();  // new run of adjacent boundaries
        if (score > best_score) {
            best_score = score;
            best_t = t;
            best_dir = dir;
        }
        prev_t = t;
    }
    flush();
}

}  // namespace

double collapse_score(const std::vector<std::array<double, 13>>& sp_rows) {
    std::vector<const std::array<double, 13>*> rows;
    for (const auto& r : sp_rows)
        if (!row_all_zero(r)) rows.push_back(&r);
    if (rows.size() < 2) return 0.0;
    double worst = 0.0;
    for (std::size_t a = 0; a < rows.size(); ++a)
        for (std::size_t b = a + 1; b < rows.size(); ++b)
            worst = std::max(worst, row_distance(*rows[a], *rows[b]));
    return worst;
}

std::vector<std::pair<int, int>> segment_subperiods(
    const std::vector<std::array<double, 13>>& sp_rows, double threshold) {
    if (threshold <= 0.0)
        throw std::invalid_argument("segment_subperiods: threshold must be > 0");
    const int n = static_cast<int>(sp_rows.size());
    std::vector<std::pair<int, int>> segments;
    int start = 0;
    for (int next = 1; next < n; ++next) {
        const auto profile = segment_profile(sp_rows, start, next + 1);
        bool fits = true;
        for (int r = start; r <= next && fits; ++r)
            fits = row_distance(sp_rows[r], profile) <= threshold;
        if (!fits) {
            segments.emplace_back(start, next);
            start = next;
        }
    }
    if (n > 0) segments.emplace_back(start, n);
    return segments;
}

std::vector<TrendEvent> detect_trend_inversion(const std::vector<double>& z, int window) {
    if (window < 2) throw std::invalid_argument("detect_trend_inversion: window must be >= 2");
    if (static_cast<int>(z.size()) < 2 * window)
        throw std::invalid_argument("detect_trend_inversion: series shorter than 2*window");
    std::vector<TrendEvent> events;
    // non-finite entries split the series into independent runs
    const int n = static_cast<int>(z.size());
    int run_start = 0;
    for (int t = 0; t <= n; ++t) {
        if (t < n && std::isfinite(z[t])) continue;
        if (t - run_start >= 2 * window) detect_in_run(z, run_start, t, window, events);
        run_start = t + 1;
    }
    return events;
}

StationarityReport analyze_series(const SnapshotSeries& s, ModelKind model,
                                  AnalysisOptions opts) {
    const int count = static_cast<int>(s.snapshots.size());
    if (count < 2) throw std::invalid_argument("analyze_series: need >= 2 snapshots");

    StationarityReport rep;
    rep.model = model;
    rep.per_snapshot.reserve(count);
    for (int t = 0; t < count; ++t) {
        const DirectedGraph& g = s.snapshots[t].graph;
        SnapshotResult r;
        try {
            switch (model) {
                case ModelKind::DRG: r.fit = fit_drg(g); break;
                case ModelKind::DCM: r.fit = fit_dcm(g, opts.fit); break;
                case ModelKind::RCM: r.fit = fit_rcm(g, opts.fit); break;
            }
        } catch (const DegenerateModelError& err) {
            throw SeriesFitError(t, std::string("snapshot ") + std::to_string(t) + ": " +
                                        err.what());
        }
        if (!r.fit.converged && !opts.allow_nonconverged)
            throw SeriesFitError(t, "snapshot " + std::to_string(t) +
                                        ": fit did not converge (residual " +
                                        std::to_string(r.fit.residual) + ")");
        r.stats = motif_stats(g, r.fit);
        std::array<double, 13> zvec{};
        for (int m = 0; m < 13; ++m)
            zvec[m] = r.stats[3 + m].z_defined
                          ? r.stats[3 + m].z
                          : std::numeric_limits<double>::quiet_NaN();
        r.sp = significance_profile(zvec, &r.sp_all_zero);
        rep.sp_matrix.push_back(r.sp);
        rep.per_snapshot.push_back(std::move(r));
    }

    rep.collapse = collapse_score(rep.sp_matrix);
    rep.segments = segment_subperiods(rep.sp_matrix, opts.threshold);

    if (count >= 2 * opts.window) {
        for (int m = 1; m <= 13; ++m) {
            std::vector<double> series(count);
            for (int t = 0; t < count; ++t) {
                const MotifStats& st = rep.per_snapshot[t].stats[2 + m];
                series[t] = st.z_defined ? st.z : std::numeric_limits<double>::quiet_NaN();
            }
            auto events = detect_trend_inversion(series, opts.window);
            if (!events.empty())
                rep.warnings.push_back({MotifId::triad(m), std::move(events)});
        }
    }
    return rep;
}

}  // namespace nullnet
