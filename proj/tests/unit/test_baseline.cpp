#include <doctest.h>

#include "netmosaic/baseline.hpp"
#include "netmosaic/errors.hpp"

#include "fixtures.hpp"

#include <Eigen/Eigenvalues>
#include <cmath>

using namespace netmosaic;
using fixtures::bipartite;
using fixtures::repeat;

TEST_CASE("l2 statistic on deterministic series") {
    const auto g = bipartite(8, {0, 1}, {2, 3, 4});
    CHECK(l2_cusum_stat(repeat({g}, 20), candidate_taus(20, 0.25)) == 0.0);

    // One edge on for the first half only: the difference has spectral norm 1.
    SymMatrix on(6);
    on.set(0, 1, 1.0);
    const auto s = repeat({on, SymMatrix(6)}, 10);
    const auto taus = candidate_taus(20, 0.25);
    REQUIRE(taus.values() == std::vector<int>{5, 10});
    CHECK(l2_cusum_stat(s, taus) == doctest::Approx(std::sqrt(5.0)));
}

TEST_CASE("l2 statistic matches a dense recomputation") {
    const auto s = fixtures::planted(25, 40, 0.1, 6, 2.0, 5);
    const auto taus = candidate_taus(40, 0.1);
    double best = 0.0;
    for (int tau : taus) {
        const Eigen::MatrixXd d = fixtures::dense_mean(s, 0, tau).dense() - fixtures::dense_mean(s, 40 - tau, tau).dense();
        Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> es(d, Eigen::EigenvaluesOnly);
        best = std::max(best, std::sqrt(tau / 2.0) * es.eigenvalues().cwiseAbs().maxCoeff());
    }
    CHECK(l2_cusum_stat(s, taus) == doctest::Approx(best).epsilon(1e-10));
}

TEST_CASE("l2 statistic is invariant under node relabeling") {
    RngStream prng(4);
    for (std::uint64_t seed = 1; seed <= 5; ++seed) {
        const auto s = fixtures::planted(20, 30, 0.1, 5, 2.0, seed);
        const auto taus = candidate_taus(30, 0.1);
        CHECK(l2_cusum_stat(s.permuted(fixtures::random_perm(20, prng)), taus) ==
              doctest::Approx(l2_cusum_stat(s, taus)).epsilon(1e-10));
    }
}

TEST_CASE("l2 calibrated test") {
    const auto g1 = bipartite(10, {0, 1, 2}, {3, 4});
    const auto g2 = bipartite(10, {5, 6}, {7, 8, 9});
    const auto taus = candidate_taus(40, 0.1);
    RngStream rng(12);

    // A constant binary series is its own fitted mean, so every bootstrap
    // draw equals it and nothing exceeds the zero critical value.
    const auto flat = l2_cusum_test(repeat({g1}, 40), taus, 2, 0.05, 100, rng);
    CHECK_FALSE(flat.degenerate);
    CHECK_FALSE(flat.reject);
    CHECK(flat.statistic == 0.0);
    CHECK(flat.critical_value == 0.0);

    const auto hard = l2_cusum_test(repeat({g1, g2}, 20), taus, 2, 0.05, 100, rng);
    CHECK(hard.reject);
    CHECK(hard.statistic > hard.critical_value);

    const auto empty = l2_cusum_test(NetSeries(10, std::vector<std::vector<Edge>>(40)), taus, 2, 0.05, 100, rng);
    CHECK(empty.degenerate);
    CHECK_FALSE(empty.reject);

    CHECK_THROWS_AS(l2_cusum_test(repeat({g1}, 40), taus, 2, 0.05, 99, rng), InvalidInput);
    CHECK_THROWS_AS(l2_cusum_test(repeat({g1}, 40), taus, 0, 0.05, 100, rng), InvalidInput);
    CHECK_THROWS_AS(l2_cusum_test(repeat({g1}, 40), taus, 2, 1.0, 100, rng), InvalidInput);
}

TEST_CASE("l2 calibrated test is reproducible from the stream") {
    const auto s = fixtures::homogeneous(15, 30, 0.2, 3);
    const auto taus = candidate_taus(30, 0.1);
    RngStream a(77), b(77);
    const auto x = l2_cusum_test(s, taus, 2, 0.05, 100, a);
    const auto y = l2_cusum_test(s, taus, 2, 0.05, 100, b);
    CHECK(x.critical_value == y.critical_value);
    CHECK(x.reject == y.reject);
}

TEST_CASE("l2 size on homogeneous series") {
    const auto taus = candidate_taus(40, 0.1);
    int rejects = 0;
    for (std::uint64_t r = 0; r < 60; ++r) {
        RngStream rng = rng_for_rep(31, r);
        rejects += l2_cusum_test(fixtures::homogeneous(20, 40, 0.1, 1000 + r), taus, 2, 0.05, 100, rng).reject;
    }
    MESSAGE("l2 null rejections: ", rejects, " / 60");
    CHECK(rejects <= 10);
}
