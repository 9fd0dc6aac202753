#include <doctest.h>

#include "netmosaic/errors.hpp"
#include "netmosaic/mosaic.hpp"
#include "netmosaic/netgen.hpp"

#include "fixtures.hpp"

#include <algorithm>
#include <cmath>

using namespace netmosaic;
using fixtures::bipartite;
using fixtures::repeat;

namespace {

// Raw series with g1 for the first half and g2 for the second, so each part of
// the twofold split switches at its own midpoint.
NetSeries noiseless_change(const SymMatrix& g1, const SymMatrix& g2, int raw_len) {
    return repeat({g1, g2}, raw_len / 2);
}

}  // namespace

TEST_CASE("config validation") {
    MosaicConfig c;
    CHECK_NOTHROW(c.validate());
    c.h = 0.5;
    CHECK_THROWS_AS(c.validate(), InvalidInput);
    c = {};
    c.k = 0;
    CHECK_THROWS_AS(c.validate(), InvalidInput);
    c = {};
    c.alpha = 1.0;
    CHECK_THROWS_AS(c.validate(), InvalidInput);
    c = {};
    c.c_d = 0.0;
    CHECK_THROWS_AS(c.validate(), InvalidInput);
}

TEST_CASE("screening threshold value") {
    CHECK(std::abs(screening_threshold(150, 1.0) - 0.80074) < 1e-4);
    CHECK(screening_threshold(150, 2.0) == doctest::Approx(2 * screening_threshold(150, 1.0)));
}

TEST_CASE("residual matrix") {
    const int n = 10;
    const auto g1 = bipartite(n, {0, 1, 2}, {3, 4});
    const auto g2 = bipartite(n, {5, 6}, {7, 8, 9});

    CHECK(residual_matrix(repeat({g1}, 12), 4, 2).dense().cwiseAbs().maxCoeff() < 1e-12);
    CHECK(residual_matrix(repeat({g1, g2}, 6), 4, 2).max_abs_diff(g1 - g2) < 1e-12);

    const auto s = fixtures::homogeneous(20, 14, 0.3, 4);
    for (int tau : {2, 5, 7}) {
        const auto oracle = fixtures::dense_mean(s, 0, tau) - ed_truncate(fixtures::dense_mean(s, 14 - tau, tau), 2);
        CHECK(residual_matrix(s, tau, 2).max_abs_diff(oracle) < 1e-12);
    }
}

TEST_CASE("rho estimate") {
    const auto g = bipartite(12, {0, 1, 2, 3}, {4, 5, 6});
    const auto flat = split(repeat({g}, 40), 2);
    CHECK(estimate_rho(flat, 0.25, 2) == doctest::Approx(1.0).epsilon(1e-12));

    const auto empty = split(repeat({SymMatrix(12)}, 40), 2);
    CHECK(estimate_rho(empty, 0.25, 2) == rho_floor(12, 20));
    CHECK(rho_floor(12, 20) == doctest::Approx(1.0 / (144.0 * 20)));
}

TEST_CASE("rho estimate is consistent on the null design") {
    // Null design with rho = 0.02 (largest entry 0.03). The max-entry estimator
    // is biased upward at short windows; the bias shrinks as the series grows.
    const auto m = make_mean({.n = 150, .rho = 0.02, .scenario = Scenario::NullRank2, .seed = 5});
    std::vector<double> medians;
    for (int t_raw : {240, 960, 2400}) {
        std::vector<double> est;
        for (std::uint64_t seed = 0; seed < 41; ++seed) {
            RngStream rng(seed, 8);
            const auto parts = split(sample_series({m.theta1, m.theta2, t_raw, t_raw}, rng), 2);
            est.push_back(estimate_rho(parts, 0.1, 2));
        }
        std::nth_element(est.begin(), est.begin() + 20, est.end());
        medians.push_back(est[20]);
    }
    MESSAGE("median rho_hat at T_raw = 240, 960, 2400: ", medians[0], ", ", medians[1], ", ", medians[2]);
    CHECK(medians[0] > medians[1]);
    CHECK(medians[1] > medians[2]);
    CHECK(medians[2] >= 0.03);
    CHECK(medians[2] <= 0.04);
}

TEST_CASE("sigma^2 estimate") {
    const BoundaryFit flat{5, SymMatrix::constant_offdiag(8, 0.1), SymMatrix::constant_offdiag(8, 0.1)};
    CHECK(estimate_sigma2(flat, {}) == 0.0);
    const std::vector<Edge> five{{0, 1}, {0, 2}, {1, 5}, {3, 7}, {6, 7}};
    CHECK(estimate_sigma2(flat, five) == doctest::Approx(5 * 0.01));
    CHECK(estimate_sigma2_all(flat) == doctest::Approx(28 * 0.01));

    const auto parts = split(fixtures::homogeneous(25, 60, 0.2, 3), 2);
    const auto fit = fit_boundary(parts, 0.1, 2);
    const auto pairs = all_pairs(25);
    double oracle = 0.0;
    for (const auto& e : pairs) oracle += 0.5 * (std::pow(fit.left(e.i, e.j), 2) + std::pow(fit.right(e.i, e.j), 2));
    CHECK(estimate_sigma2(fit, pairs) == doctest::Approx(oracle).epsilon(1e-12));
    CHECK(estimate_sigma2_all(fit) == doctest::Approx(oracle).epsilon(1e-12));
    CHECK(estimate_sigma2(parts, 0.1, 2, pairs) == doctest::Approx(oracle).epsilon(1e-12));
}

TEST_CASE("boundary fit pools both parts") {
    const auto parts = split(fixtures::homogeneous(16, 40, 0.3, 6), 2);
    const auto fit = fit_boundary(parts, 0.1, 2);
    CHECK(fit.tau_h == 2);
    const auto a = segment_means(parts.parts[0], 2);
    const auto b = segment_means(parts.parts[1], 2);
    CHECK(fit.left.max_abs_diff(ed_truncate(0.5 * (a.left + b.left), 2)) < 1e-12);
    CHECK(fit.right.max_abs_diff(ed_truncate(0.5 * (a.right + b.right), 2)) < 1e-12);
}

TEST_CASE("screening on noiseless series") {
    const int n = 10;
    const auto g1 = bipartite(n, {0, 1, 2}, {3, 4});
    const auto g2 = bipartite(n, {2, 5}, {7, 8, 9});

    const auto none = split(repeat({g1}, 96), 2);
    CHECK(screen_edges(none, 0.25, 2, 1.0, 1.0).empty());

    // tau_h = 12, rho_hat = 1: |Z| = sqrt(6) on changed pairs, above d_n = 2.30 at n = 10.
    const auto parts = split(noiseless_change(g1, g2, 96), 2);
    const double rho_hat = estimate_rho(parts, 0.25, 2);
    CHECK(rho_hat == doctest::Approx(1.0));
    CHECK(std::sqrt(6.0) > screening_threshold(n, 1.0));
    const auto screened = screen_edges(parts, 0.25, 2, rho_hat, 1.0);
    std::vector<Edge> changed;
    for (const auto& e : all_pairs(n))
        if (g1(e.i, e.j) != g2(e.i, e.j)) changed.push_back(e);
    CHECK(screened == changed);
    CHECK_THROWS_AS(screen_edges(parts, 0.25, 2, 0.0, 1.0), InvalidInput);
}

TEST_CASE("screening shrinks as c_d grows") {
    for (std::uint64_t seed = 1; seed <= 5; ++seed) {
        const auto parts = split(fixtures::planted(60, 80, 0.1, 15, 1.5, seed), 2);
        const auto fit = fit_boundary(parts, 0.1, 2);
        const double rho_hat = estimate_rho(fit, parts.part_length());
        std::vector<Edge> prev = all_pairs(60);
        for (double c_d : {0.25, 0.5, 1.0, 1.5, 3.0}) {
            const auto cur = screen_edges(fit, rho_hat, c_d);
            CHECK(std::includes(prev.begin(), prev.end(), cur.begin(), cur.end()));
            prev = cur;
        }
    }
}

TEST_CASE("mosaic test on noiseless series") {
    const int n = 10;
    const auto g = bipartite(n, {0, 1, 2}, {3, 4});
    MosaicConfig cfg;
    cfg.h = 0.25;
    const auto r = mosaic_test(repeat({g}, 48), cfg);
    CHECK(std::abs(r.statistic) < 1e-9);
    CHECK_FALSE(r.reject);
    CHECK(r.screened_edges == 0);
}

TEST_CASE("empty screened set falls back to the all-pairs statistic") {
    MosaicConfig cfg;
    cfg.c_d = 1e6;
    for (std::uint64_t seed = 1; seed <= 5; ++seed) {
        const auto r = mosaic_test(fixtures::planted(40, 60, 0.2, 10, 1.0, seed), cfg);
        REQUIRE(r.screened_edges == 0);
        double best = -1e300;
        for (const auto& c : r.per_tau) {
            CHECK(c.screened == 0.0);
            best = std::max(best, c.omega);
        }
        CHECK(r.statistic == std::abs(best));
    }
}

TEST_CASE("mosaic statistic matches recomposition") {
    MosaicConfig cfg;
    cfg.k = 2;
    cfg.h = 0.1;
    cfg.h = 0.2;
    // tau_h = 40 and a change of 0.21 on 45 pairs: |Z| about 1.8 against d_n = 1.25.
    const auto raw = fixtures::planted(50, 400, 0.05, 10, 3.0, 9);
    const auto r = mosaic_test(raw, cfg);

    const auto parts = split(raw, 2);
    const auto fit = fit_boundary(parts, cfg.h, cfg.k);
    const double rho_hat = estimate_rho(fit, parts.part_length());
    const auto screened = screen_edges(fit, rho_hat, cfg.c_d);
    CHECK(r.rho_hat == rho_hat);
    CHECK(r.screened == screened);
    REQUIRE_FALSE(screened.empty());
    const double sd_s = std::sqrt(estimate_sigma2(fit, screened));
    const double sd_o = std::sqrt(estimate_sigma2_all(fit));
    const auto taus = candidate_taus(parts.part_length(), cfg.h);
    REQUIRE(r.per_tau.size() == taus.size());
    double best_s = -1e300, best_o = -1e300;
    for (std::size_t i = 0; i < taus.size(); ++i) {
        const int tau = taus.values()[i];
        const auto w1 = residual_matrix(parts.parts[0], tau, cfg.k);
        const auto w2 = residual_matrix(parts.parts[1], tau, cfg.k);
        const double s = tau * product_stat(w1, w2, screened) / sd_s;
        const double o = tau * product_stat_all(w1, w2) / sd_o;
        CHECK(r.per_tau[i].tau == tau);
        CHECK(r.per_tau[i].screened == doctest::Approx(s).epsilon(1e-12));
        CHECK(r.per_tau[i].omega == doctest::Approx(o).epsilon(1e-12));
        best_s = std::max(best_s, s);
        best_o = std::max(best_o, o);
    }
    CHECK(r.statistic == doctest::Approx(std::max(std::abs(best_s), std::abs(best_o))).epsilon(1e-12));
    CHECK(r.threshold == doctest::Approx(normal_quantile(1 - 0.05 / (2.0 * taus.size()))));
    CHECK(r.reject == (r.statistic > r.threshold));
}

TEST_CASE("threshold follows the size of the candidate set") {
    MosaicConfig cfg;
    cfg.k = 3;
    cfg.h = 0.1;
    cfg.tau_override = std::vector<int>{4, 8};
    const auto r = mosaic_test(fixtures::homogeneous(30, 30, 0.2, 2), cfg);
    CHECK(std::abs(r.threshold - 2.2414) < 1e-4);
    CHECK(r.per_tau.size() == 2);
    CHECK((r.tau_argmax == 4 || r.tau_argmax == 8));
}

TEST_CASE("mosaic statistic is invariant under node relabeling") {
    RngStream prng(31);
    MosaicConfig cfg;
    for (std::uint64_t seed = 1; seed <= 10; ++seed) {
        const auto raw = fixtures::planted(40, 60, 0.15, 10, 1.2, seed);
        const auto perm = fixtures::random_perm(40, prng);
        const auto a = mosaic_test(raw, cfg);
        const auto b = mosaic_test(raw.permuted(perm), cfg);
        CHECK(a.statistic == doctest::Approx(b.statistic).epsilon(1e-8));
        CHECK(a.screened_edges == b.screened_edges);
        CHECK(a.reject == b.reject);
    }
}

TEST_CASE("mosaic input validation") {
    MosaicConfig cfg;
    CHECK_THROWS_WITH_AS(mosaic_test(fixtures::homogeneous(10, 7, 0.3, 1), cfg), doctest::Contains("series too short"),
                         InvalidInput);
    cfg.k = 11;
    CHECK_THROWS_AS(mosaic_test(fixtures::homogeneous(10, 40, 0.3, 1), cfg), InvalidInput);
}
