#include "netmosaic/segstats.hpp"

#include "netmosaic/errors.hpp"

#include <algorithm>
#include <cmath>
#include <string>

namespace netmosaic {

SplitSeries split(const NetSeries& series, int folds) {
    if (folds != 2 && folds != 3) throw InvalidInput("split: folds must be 2 or 3");
    const int len = series.length() / folds;
    if (series.length() < 2 * folds) {
        throw InvalidInput("series too short: " + std::to_string(series.length()) + " snapshots cannot be split " +
                           std::to_string(folds) + "-fold");
    }
    SplitSeries out;
    for (int k = 0; k < folds; ++k) {
        std::vector<std::vector<Edge>> snaps;
        snaps.reserve(static_cast<std::size_t>(len));
        for (int t = 0; t < len; ++t) {
            const auto es = series.edges(folds * t + k);
            snaps.emplace_back(es.begin(), es.end());
        }
        out.parts.emplace_back(series.n(), std::move(snaps));
    }
    return out;
}

TauGrid::TauGrid(std::vector<int> taus, int length) : taus_(std::move(taus)) {
    const int cap = (length + 1) / 2;
    if (taus_.empty()) throw InvalidInput("tau grid is empty");
    for (std::size_t i = 0; i < taus_.size(); ++i) {
        if (taus_[i] < 2 || taus_[i] > cap) {
            throw InvalidInput("tau " + std::to_string(taus_[i]) + " outside [2, " + std::to_string(cap) +
                               "] for series length " + std::to_string(length));
        }
        if (i > 0 && taus_[i] <= taus_[i - 1]) throw InvalidInput("tau grid must be strictly increasing");
    }
}

TauGrid candidate_taus(int length, double h, const std::optional<std::vector<int>>& override_taus) {
    if (!(h > 0.0 && h < 0.5)) throw InvalidInput("bandwidth h must lie in (0, 0.5)");
    if (override_taus) return TauGrid(*override_taus, length);
    const int cap = (length + 1) / 2;
    if (cap < 2) throw InvalidInput("series too short for any candidate change point");
    const int jmax = static_cast<int>(std::floor(std::log2(1.0 / (2.0 * h)) + 1e-9));
    std::vector<int> taus;
    for (int j = 0; j <= jmax; ++j) {
        const int tau = static_cast<int>(std::lround(std::ldexp(h * length, j)));
        taus.push_back(std::clamp(tau, 2, cap));
    }
    std::sort(taus.begin(), taus.end());
    taus.erase(std::unique(taus.begin(), taus.end()), taus.end());
    return TauGrid(std::move(taus), length);
}

SegmentMeans segment_means(const NetSeries& series, int tau) {
    const int len = series.length();
    if (tau < 1 || tau > (len + 1) / 2) {
        throw InvalidInput("segment_means: tau " + std::to_string(tau) + " outside [1, " +
                           std::to_string((len + 1) / 2) + "]");
    }
    const int n = series.n();
    Eigen::MatrixXd left = Eigen::MatrixXd::Zero(n, n);
    Eigen::MatrixXd right = Eigen::MatrixXd::Zero(n, n);
    for (int t = 0; t < tau; ++t) {
        for (const auto& e : series.edges(t)) left(e.i, e.j) += 1.0;
        for (const auto& e : series.edges(len - 1 - t)) right(e.i, e.j) += 1.0;
    }
    // Only the upper triangle was accumulated; mirror it.
    left.triangularView<Eigen::StrictlyLower>() = left.transpose();
    right.triangularView<Eigen::StrictlyLower>() = right.transpose();
    left /= tau;
    right /= tau;
    return {SymMatrix::from_dense(left), SymMatrix::from_dense(right)};
}

namespace {

double cusum_scale(int tau, double rho) {
    if (!(rho > 0.0)) throw InvalidInput("rho must be positive");
    return std::sqrt(static_cast<double>(tau) / (2.0 * rho));
}

}  // namespace

SymMatrix z_matrix(const NetSeries& series, int tau, double rho, int k) {
    const double scale = cusum_scale(tau, rho);
    const auto means = segment_means(series, tau);
    return scale * (ed_truncate(means.left, k) - ed_truncate(means.right, k));
}

SymMatrix e_matrix(const NetSeries& series, int tau, double rho) {
    const double scale = cusum_scale(tau, rho);
    const auto means = segment_means(series, tau);
    return scale * (means.left - means.right);
}

double product_stat(const SymMatrix& a, const SymMatrix& b, std::span<const Edge> edges) {
    if (a.n() != b.n()) throw InvalidInput("product_stat: dimension mismatch");
    double sum = 0.0;
    for (const auto& e : edges) {
        if (e.i >= e.j || e.j >= a.n() || e.i < 0) throw InvalidInput("product_stat: edge outside the upper triangle");
        sum += a(e.i, e.j) * b(e.i, e.j);
    }
    return sum;
}

double product_stat_all(const SymMatrix& a, const SymMatrix& b) {
    if (a.n() != b.n()) throw InvalidInput("product_stat: dimension mismatch");
    const auto& da = a.dense();
    const auto& db = b.dense();
    const Index n = a.n();
    double sum = 0.0;
    for (Index j = 1; j < n; ++j)
        for (Index i = 0; i < j; ++i) sum += da(i, j) * db(i, j);
    return sum;
}

}  // namespace netmosaic
