#include "netmosaic/baseline.hpp"

#include "netmosaic/errors.hpp"
#include "netmosaic/netgen.hpp"

#include <algorithm>
#include <cmath>
#include <vector>

namespace netmosaic {

double l2_cusum_stat(const NetSeries& series, const TauGrid& taus) {
    double best = 0.0;
    for (int tau : taus) {
        const auto means = segment_means(series, tau);
        best = std::max(best, std::sqrt(tau / 2.0) * spectral_norm(means.left - means.right));
    }
    return best;
}

namespace {

SymMatrix fitted_null_mean(const NetSeries& series, int k) {
    const int n = series.n();
    Eigen::MatrixXd avg = Eigen::MatrixXd::Zero(n, n);
    for (int t = 0; t < series.length(); ++t)
        for (const auto& e : series.edges(t)) avg(e.i, e.j) += 1.0;
    avg.triangularView<Eigen::StrictlyLower>() = avg.transpose();
    avg /= series.length();
    Eigen::MatrixXd fit = ed_truncate(SymMatrix::from_dense(avg), k).dense().cwiseMax(0.0).cwiseMin(1.0);
    fit.diagonal().setZero();
    return SymMatrix::symmetrized(fit);
}

}  // namespace

L2CusumDecision l2_cusum_test(const NetSeries& series, const TauGrid& taus, int k, double alpha, int cal_reps,
                              RngStream& rng) {
    if (cal_reps < 100) throw InvalidInput("l2_cusum_test: need at least 100 calibration replications");
    if (!(alpha > 0.0 && alpha < 1.0)) throw InvalidInput("alpha must lie in (0, 1)");
    if (k < 1 || k > series.n()) throw InvalidInput("working rank k must lie in [1, n]");

    L2CusumDecision out;
    out.statistic = l2_cusum_stat(series, taus);
    const SymMatrix theta = fitted_null_mean(series, k);
    if (theta.dense().maxCoeff() <= 0.0) {
        out.degenerate = true;
        return out;
    }

    std::vector<double> null_stats;
    null_stats.reserve(static_cast<std::size_t>(cal_reps));
    const SeriesSpec spec{theta, theta, series.length(), series.length()};
    for (int r = 0; r < cal_reps; ++r) null_stats.push_back(l2_cusum_stat(sample_series(spec, rng), taus));
    std::sort(null_stats.begin(), null_stats.end());
    const auto rank = static_cast<std::size_t>(std::ceil((1.0 - alpha) * cal_reps));
    out.critical_value = null_stats[std::clamp<std::size_t>(rank, 1, null_stats.size()) - 1];
    out.reject = out.statistic > out.critical_value;
    return out;
}

}  // namespace netmosaic
