#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cmath>
#include <random>

#include "nullnet/sampling.hpp"
#include "nullnet/temporal.hpp"
#include "test_util.hpp"

using namespace nullnet;

namespace {

std::array<double, 13> unit_row(int axis) {
    std::array<double, 13> r{};
    r[axis] = 1.0;
    return r;
}

std::array<double, 13> noisy_row(const std::array<double, 13>& base, double sigma,
                                 std::mt19937_64& rng) {
    std::normal_distribution<double> nd(0.0, sigma);
    std::array<double, 13> r = base;
    for (auto& v : r) v += nd(rng);
    double norm = 0.0;
    for (double v : r) norm += v * v;
    norm = std::sqrt(norm);
    for (auto& v : r) v /= norm;
    return r;
}

}  // namespace

TEST_CASE("collapse score trivial values") {
    CHECK(collapse_score({}) == 0.0);
    CHECK(collapse_score({unit_row(0)}) == 0.0);
    CHECK(collapse_score({unit_row(0), unit_row(0), unit_row(0)}) == 0.0);
    // antipodal unit rows -> distance 2
    auto neg = unit_row(0);
    neg[0] = -1.0;
    CHECK(collapse_score({unit_row(0), neg}) == doctest::Approx(2.0));
    // orthogonal unit rows -> sqrt(2)
    CHECK(collapse_score({unit_row(0), unit_row(1)}) ==
          doctest::Approx(std::sqrt(2.0)));
    // all-zero rows are ignored
    CHECK(collapse_score({unit_row(0), std::array<double, 13>{}, unit_row(0)}) == 0.0);
}

TEST_CASE("segmentation trivial cases") {
    std::vector<std::array<double, 13>> rows(6, unit_row(2));
    auto seg = segment_subperiods(rows, 0.5);
    REQUIRE(seg.size() == 1);
    CHECK(seg[0] == std::pair<int, int>(0, 6));

    CHECK(segment_subperiods({}, 0.5).empty());
}

TEST_CASE("segmentation recovers planted regimes") {
    std::mt19937_64 rng(5);
    std::vector<std::array<double, 13>> rows;
    const int axes[4] = {0, 3, 7, 11};
    for (int r = 0; r < 4; ++r)
        for (int t = 0; t < 8; ++t)
            rows.push_back(noisy_row(unit_row(axes[r]), 0.05, rng));
    const auto seg = segment_subperiods(rows, 0.5);
    REQUIRE(seg.size() == 4);
    for (int r = 0; r < 4; ++r) CHECK(seg[r] == std::pair<int, int>(8 * r, 8 * (r + 1)));
}

TEST_CASE("trend inversion on the step series") {
    std::vector<double> z;
    for (int t = 0; t < 4; ++t) z.push_back(-3.0);
    for (int t = 0; t < 4; ++t) z.push_back(3.0);
    const auto ev = detect_trend_inversion(z, 4);
    REQUIRE(ev.size() == 1);
    CHECK(ev[0].snapshot == 4);
    CHECK(ev[0].direction == 1);

    // negation flips the direction
    for (auto& v : z) v = -v;
    const auto ev2 = detect_trend_inversion(z, 4);
    REQUIRE(ev2.size() == 1);
    CHECK(ev2[0].snapshot == 4);
    CHECK(ev2[0].direction == -1);
}

TEST_CASE("trend inversion rejects flat and weak series") {
    CHECK(detect_trend_inversion(std::vector<double>(20, 2.5), 4).empty());
    CHECK(detect_trend_inversion(std::vector<double>(20, 0.0), 4).empty());
    // sign flip but both windows inside the |mean| <= 1 dead zone
    std::vector<double> weak(10, -0.5);
    for (int t = 5; t < 10; ++t) weak[t] = 0.5;
    CHECK(detect_trend_inversion(weak, 4).empty());
    // too short a series is a hard usage error
    CHECK_THROWS_AS((void)detect_trend_inversion(std::vector<double>(5, 3.0), 4),
                    std::invalid_argument);
}

TEST_CASE("trend inversion splits at non-finite entries") {
    std::vector<double> z;
    for (int t = 0; t < 4; ++t) z.push_back(-3.0);
    for (int t = 0; t < 4; ++t) z.push_back(3.0);
    z.push_back(std::nan(""));
    for (int t = 0; t < 8; ++t) z.push_back(2.0);  // flat run after the gap
    const auto ev = detect_trend_inversion(z, 4);
    REQUIRE(ev.size() == 1);
    CHECK(ev[0].snapshot == 4);
}

TEST_CASE("analyze_series on identical snapshots is stationary") {
    std::mt19937_64 rng(9);
    const auto g = testutil::random_reciprocal_digraph(15, 0.2, 0.15, rng);
    SnapshotSeries s;
    for (int t = 0; t < 10; ++t) s.snapshots.push_back({"t" + std::to_string(t), g});
    const auto rep = analyze_series(s, ModelKind::DCM);
    CHECK(rep.per_snapshot.size() == 10);
    CHECK(rep.sp_matrix.size() == 10);
    CHECK(rep.collapse == doctest::Approx(0.0).epsilon(1e-12));
    REQUIRE(rep.segments.size() == 1);
    CHECK(rep.segments[0] == std::pair<int, int>(0, 10));
    CHECK(rep.warnings.empty());
}

TEST_CASE("analyze_series results match independent single-snapshot fits") {
    std::mt19937_64 rng(13);
    SnapshotSeries s;
    for (int t = 0; t < 3; ++t)
        s.snapshots.push_back(
            {"t" + std::to_string(t), testutil::random_reciprocal_digraph(12, 0.25, 0.2, rng)});
    const auto rep = analyze_series(s, ModelKind::RCM);
    for (int t = 0; t < 3; ++t) {
        const auto solo = fit_rcm(s.snapshots[t].graph);
        const auto stats = motif_stats(s.snapshots[t].graph, solo);
        REQUIRE(rep.per_snapshot[t].stats.size() == stats.size());
        for (std::size_t k = 0; k < stats.size(); ++k) {
            CHECK(rep.per_snapshot[t].stats[k].observed == stats[k].observed);
            CHECK(rep.per_snapshot[t].stats[k].expected ==
                  doctest::Approx(stats[k].expected).epsilon(1e-12));
        }
    }
}

TEST_CASE("analyze_series detects a structural break") {
    // two regimes of sampled graphs: reciprocity-free vs strongly
    // reciprocal, analyzed under the DCM which cannot absorb reciprocity
    std::mt19937_64 rng(31);
    SnapshotSeries s;
    for (int t = 0; t < 10; ++t)
        s.snapshots.push_back(
            {"a" + std::to_string(t), testutil::random_reciprocal_digraph(40, 0.15, 0.0, rng)});
    for (int t = 0; t < 10; ++t)
        s.snapshots.push_back(
            {"b" + std::to_string(t), testutil::random_reciprocal_digraph(40, 0.02, 0.12, rng)});
    const auto rep = analyze_series(s, ModelKind::DCM);
    CHECK(rep.collapse > 0.5);
    REQUIRE(rep.segments.size() >= 2);
    // the first boundary lands at the regime change, give or take one step
    CHECK(std::abs(rep.segments[0].second - 10) <= 1);
}

TEST_CASE("analyze_series surfaces fit failures with the snapshot index") {
    SnapshotSeries s;
    std::mt19937_64 rng(41);
    s.snapshots.push_back({"ok", testutil::random_digraph(6, 0.4, rng)});
    DirectedGraph complete(5);
    for (int i = 0; i < 5; ++i)
        for (int j = 0; j < 5; ++j)
            if (i != j) complete.add_edge(i, j);
    s.snapshots.push_back({"bad", complete});
    try {
        (void)analyze_series(s, ModelKind::DCM);
        FAIL("expected SeriesFitError");
    } catch (const SeriesFitError& e) {
        CHECK(e.snapshot_index == 1);
    }
}
