#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cmath>
#include <random>

#include "nullnet/ensembles.hpp"
#include "test_util.hpp"

using namespace nullnet;

namespace {

DirectedGraph three_cycle() { return graph_from_edges(3, {{0, 1}, {1, 2}, {2, 0}}); }

/// Constraints recomputed from the fitted dyad probabilities.
struct ExpectedReal {
    std::vector<double> out, in, right, left, both;
};

ExpectedReal expected_real(const FittedEnsemble& e) {
    const int n = e.n;
    ExpectedReal r{std::vector<double>(n, 0.0), std::vector<double>(n, 0.0),
                   std::vector<double>(n, 0.0), std::vector<double>(n, 0.0),
                   std::vector<double>(n, 0.0)};
    for (int i = 0; i < n; ++i) {
        for (int j = 0; j < n; ++j) {
            if (i == j) continue;
            const auto p = dyad_probabilities(e, i, j);
            r.right[i] += p.p_out;
            r.left[i] += p.p_in;
            r.both[i] += p.p_both;
            r.out[i] += p.p_out + p.p_both;
            r.in[i] += p.p_in + p.p_both;
        }
    }
    return r;
}

}  // namespace

TEST_CASE("drg closed form") {
    std::mt19937_64 rng(1);
    // n=10 with L=45 links
    DirectedGraph g(10);
    int placed = 0;
    for (int i = 0; i < 10 && placed < 45; ++i)
        for (int j = 0; j < 10 && placed < 45; ++j)
            if (i != j) {
                g.add_edge(i, j);
                ++placed;
            }
    const auto e = fit_drg(g);
    CHECK(e.p == doctest::Approx(0.5).epsilon(1e-15));
    CHECK_FALSE(e.degenerate);

    const auto empty = fit_drg(DirectedGraph(5));
    CHECK(empty.p == 0.0);
    CHECK(empty.degenerate);

    const auto e3 = fit_drg(three_cycle());
    CHECK(e3.p == doctest::Approx(0.5).epsilon(1e-15));
}

TEST_CASE("dyad probabilities by substitution") {
    FittedEnsemble drg;
    drg.kind = ModelKind::DRG;
    drg.n = 3;
    drg.p = 0.5;
    const auto p = dyad_probabilities(drg, 0, 1);
    CHECK(p.p_out == doctest::Approx(0.25));
    CHECK(p.p_in == doctest::Approx(0.25));
    CHECK(p.p_both == doctest::Approx(0.25));
    CHECK(p.p_empty == doctest::Approx(0.25));

    FittedEnsemble rcm;
    rcm.kind = ModelKind::RCM;
    rcm.n = 2;
    rcm.x = {0.0, 0.0};
    rcm.y = {0.0, 0.0};
    rcm.z = {1.0, 1.0};
    const auto pr = dyad_probabilities(rcm, 0, 1);
    CHECK(pr.p_out == 0.0);
    CHECK(pr.p_in == 0.0);
    CHECK(pr.p_both == doctest::Approx(0.5));
    CHECK(pr.p_empty == doctest::Approx(0.5));

    FittedEnsemble dcm;
    dcm.kind = ModelKind::DCM;
    dcm.n = 2;
    dcm.x = {1.0, 1.0};
    dcm.y = {1.0, 1.0};
    const auto pd = dyad_probabilities(dcm, 0, 1);
    CHECK(pd.p_out == doctest::Approx(0.25));
    CHECK(pd.p_both == doctest::Approx(0.25));

    CHECK_THROWS_AS((void)dyad_probabilities(dcm, 1, 1), std::invalid_argument);
}

TEST_CASE("dcm on the 3-cycle gives p_ij = 1/2") {
    const auto e = fit_dcm(three_cycle());
    CHECK(e.converged);
    for (int i = 0; i < 3; ++i)
        for (int j = 0; j < 3; ++j)
            if (i != j) {
                const auto p = dyad_probabilities(e, i, j);
                CHECK(p.p_out + p.p_both == doctest::Approx(0.5).epsilon(1e-6));
            }
}

TEST_CASE("dcm on the empty graph pins everything to zero") {
    const auto e = fit_dcm(DirectedGraph(4));
    CHECK(e.converged);
    for (int i = 0; i < 4; ++i) {
        CHECK(e.x[i] == 0.0);
        CHECK(e.y[i] == 0.0);
    }
    const auto p = dyad_probabilities(e, 0, 1);
    CHECK(p.p_empty == 1.0);
}

TEST_CASE("dcm self-consistency on a random graph") {
    std::mt19937_64 rng(42);
    const auto g = testutil::random_digraph(50, 0.1, rng);
    const auto e = fit_dcm(g);
    CHECK(e.converged);
    CHECK(e.residual <= 1e-6);
    const auto d = compute_degrees(g);
    const auto r = expected_real(e);
    for (int i = 0; i < 50; ++i) {
        CHECK(r.out[i] == doctest::Approx(d.k_out[i]).epsilon(1e-6));
        CHECK(r.in[i] == doctest::Approx(d.k_in[i]).epsilon(1e-6));
    }
}

TEST_CASE("dcm rejects the complete graph") {
    DirectedGraph full(4);
    for (int i = 0; i < 4; ++i)
        for (int j = 0; j < 4; ++j)
            if (i != j) full.add_edge(i, j);
    CHECK_THROWS_AS((void)fit_dcm(full), DegenerateModelError);
    CHECK_THROWS_AS((void)fit_rcm(full), DegenerateModelError);
}

TEST_CASE("rcm on the reciprocated ring") {
    // 5 nodes, each mutually linked to its 2 ring neighbours: k_both = 2
    DirectedGraph g(5);
    for (int i = 0; i < 5; ++i) {
        const int j = (i + 1) % 5;
        g.add_edge(i, j);
        g.add_edge(j, i);
    }
    const auto e = fit_rcm(g);
    CHECK(e.converged);
    for (int i = 0; i < 5; ++i) {
        CHECK(e.x[i] == 0.0);
        CHECK(e.y[i] == 0.0);
    }
    // symmetric solve: 4 z^2/(1+z^2) = 2 -> p_both = 1/2 on every dyad
    for (int i = 0; i < 5; ++i)
        for (int j = i + 1; j < 5; ++j)
            CHECK(dyad_probabilities(e, i, j).p_both ==
                  doctest::Approx(0.5).epsilon(1e-6));
}

TEST_CASE("rcm on the empty graph and a mixed random graph") {
    const auto e0 = fit_rcm(DirectedGraph(3));
    for (int i = 0; i < 3; ++i) {
        CHECK(e0.x[i] == 0.0);
        CHECK(e0.y[i] == 0.0);
        CHECK(e0.z[i] == 0.0);
    }

    std::mt19937_64 rng(29);
    const auto g = testutil::random_reciprocal_digraph(10, 0.3, 0.25, rng);
    const auto e = fit_rcm(g);
    CHECK(e.converged);
    const auto deg = compute_degrees(g);
    const auto r = expected_real(e);
    for (int i = 0; i < g.n(); ++i) {
        CHECK(r.right[i] == doctest::Approx(deg.k_right[i]).epsilon(1e-6));
        CHECK(r.left[i] == doctest::Approx(deg.k_left[i]).epsilon(1e-6));
        CHECK(r.both[i] == doctest::Approx(deg.k_both[i]).epsilon(1e-6));
    }
}

TEST_CASE("dyad probabilities sum to one and are symmetric") {
    std::mt19937_64 rng(5);
    const auto g = testutil::random_reciprocal_digraph(12, 0.2, 0.15, rng);
    const FittedEnsemble fits[] = {fit_drg(g), fit_dcm(g), fit_rcm(g)};
    for (const auto& e : fits) {
        for (int i = 0; i < g.n(); ++i) {
            for (int j = 0; j < g.n(); ++j) {
                if (i == j) continue;
                const auto p = dyad_probabilities(e, i, j);
                const auto q = dyad_probabilities(e, j, i);
                CHECK(p.p_out + p.p_in + p.p_both + p.p_empty ==
                      doctest::Approx(1.0).epsilon(1e-12));
                CHECK(p.p_out == doctest::Approx(q.p_in).epsilon(1e-14));
                CHECK(p.p_both == doctest::Approx(q.p_both).epsilon(1e-14));
                CHECK(p.p_empty == doctest::Approx(q.p_empty).epsilon(1e-14));
            }
        }
    }
}

TEST_CASE("rcm with no reciprocated links has p_both = 0") {
    // directed 4-cycle: no reciprocation anywhere
    const auto g = graph_from_edges(4, {{0, 1}, {1, 2}, {2, 3}, {3, 0}});
    const auto e = fit_rcm(g);
    CHECK(e.converged);
    for (int i = 0; i < 4; ++i) CHECK(e.z[i] == 0.0);
    for (int i = 0; i < 4; ++i)
        for (int j = i + 1; j < 4; ++j)
            CHECK(dyad_probabilities(e, i, j).p_both == 0.0);
}

TEST_CASE("log likelihood values") {
    FittedEnsemble drg;
    drg.kind = ModelKind::DRG;
    drg.n = 3;
    drg.p = 0.5;
    CHECK(log_likelihood(drg, three_cycle()) ==
          doctest::Approx(6.0 * std::log(0.5)).epsilon(1e-12));

    const DirectedGraph empty(4);
    const auto e = fit_dcm(empty);
    CHECK(log_likelihood(e, empty) == 0.0);

    // a state with zero model probability gives -inf
    const auto g1 = graph_from_edges(4, {{0, 1}});
    CHECK(std::isinf(log_likelihood(e, g1)));
    CHECK(log_likelihood(e, g1) < 0);
}

TEST_CASE("fitted dcm is a likelihood maximum") {
    std::mt19937_64 rng(11);
    const auto g = testutil::random_digraph(10, 0.3, rng);
    auto e = fit_dcm(g);
    CHECK(e.converged);
    const double base = log_likelihood(e, g);
    const double delta = 1e-4;
    for (int i = 0; i < g.n(); ++i) {
        for (double sign : {+1.0, -1.0}) {
            auto pert = e;
            pert.x[i] = std::max(0.0, e.x[i] + sign * delta);
            CHECK(log_likelihood(pert, g) <= base + 1e-9);
            pert = e;
            pert.y[i] = std::max(0.0, e.y[i] + sign * delta);
            CHECK(log_likelihood(pert, g) <= base + 1e-9);
        }
    }
}

TEST_CASE("likelihood gradient vanishes at the fitted point") {
    std::mt19937_64 rng(13);
    const auto g = testutil::random_reciprocal_digraph(10, 0.25, 0.15, rng);
    for (auto kind : {ModelKind::DCM, ModelKind::RCM}) {
        auto e = kind == ModelKind::DCM ? fit_dcm(g) : fit_rcm(g);
        CHECK(e.converged);
        auto grad_check = [&](std::vector<double> FittedEnsemble::* member) {
            for (int i = 0; i < g.n(); ++i) {
                const double v = (e.*member)[i];
                if (v == 0.0) continue;  // boundary optimum, pinned
                const double h = 1e-6 * std::max(v, 1e-3);
                auto up = e, dn = e;
                (up.*member)[i] = v + h;
                (dn.*member)[i] = v - h;
                const double grad =
                    (log_likelihood(up, g) - log_likelihood(dn, g)) / (2 * h);
                CHECK(std::abs(grad) * std::max(v, 1.0) <= 1e-4);
            }
        };
        grad_check(&FittedEnsemble::x);
        grad_check(&FittedEnsemble::y);
        if (kind == ModelKind::RCM) grad_check(&FittedEnsemble::z);
    }
}

TEST_CASE("fits are exchangeable under node permutation") {
    std::mt19937_64 rng(17);
    const auto g = testutil::random_reciprocal_digraph(8, 0.3, 0.2, rng);
    const int n = g.n();
    std::vector<int> perm(n);
    for (int i = 0; i < n; ++i) perm[i] = i;
    std::shuffle(perm.begin(), perm.end(), rng);
    DirectedGraph gp(n);
    for (int i = 0; i < n; ++i)
        for (int j = 0; j < n; ++j)
            if (i != j && g.has_edge(i, j)) gp.add_edge(perm[i], perm[j]);

    const auto e = fit_rcm(g);
    const auto ep = fit_rcm(gp);
    CHECK(e.converged);
    CHECK(ep.converged);
    for (int i = 0; i < n; ++i) {
        CHECK(ep.x[perm[i]] == doctest::Approx(e.x[i]).epsilon(1e-5));
        CHECK(ep.y[perm[i]] == doctest::Approx(e.y[i]).epsilon(1e-5));
        CHECK(ep.z[perm[i]] == doctest::Approx(e.z[i]).epsilon(1e-5));
    }
}

TEST_CASE("non-convergence reports the best iterate") {
    std::mt19937_64 rng(23);
    const auto g = testutil::random_digraph(30, 0.2, rng);
    const auto e = fit_dcm(g, {1e-14, 3});  // unreachable tolerance in 3 iterations
    CHECK_FALSE(e.converged);
    CHECK(e.iterations == 3);
    CHECK(e.residual > 0.0);
    CHECK(std::isfinite(e.residual));
}
