#include "netmosaic/mosaic.hpp"

#include "netmosaic/errors.hpp"
#include "netmosaic/statutil.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numbers>
#include <string>

namespace netmosaic {

void MosaicConfig::validate() const {
    if (k < 1) throw InvalidInput("working rank k must be at least 1");
    if (!(h > 0.0 && h < 0.5)) throw InvalidInput("bandwidth h must lie in (0, 0.5)");
    if (!(alpha > 0.0 && alpha < 1.0)) throw InvalidInput("alpha must lie in (0, 1)");
    if (!(c_d > 0.0)) throw InvalidInput("screening constant c_d must be positive");
}

namespace {

int boundary_window(double h, int length) {
    const int tau = static_cast<int>(std::lround(h * length));
    if (tau < 1) throw InvalidInput("boundary window round(h T) is zero; increase h or the series length");
    return tau;
}

void require_two_parts(const SplitSeries& split) {
    if (split.parts.size() != 2) throw InvalidInput("expected a twofold split");
}

}  // namespace

BoundaryFit fit_boundary(const SplitSeries& split, double h, int k) {
    require_two_parts(split);
    const int tau = boundary_window(h, split.part_length());
    const auto a = segment_means(split.parts[0], tau);
    const auto b = segment_means(split.parts[1], tau);
    return {tau, ed_truncate(0.5 * (a.left + b.left), k), ed_truncate(0.5 * (a.right + b.right), k)};
}

SymMatrix residual_matrix(const NetSeries& part, int tau, int k) {
    const auto means = segment_means(part, tau);
    return means.left - ed_truncate(means.right, k);
}

double rho_floor(int n, int length) {
    return 1.0 / (static_cast<double>(n) * static_cast<double>(n) * static_cast<double>(length));
}

double estimate_rho(const BoundaryFit& fit, int length) {
    const double raw = std::max(fit.left.max_abs_offdiag(), fit.right.max_abs_offdiag());
    return std::clamp(raw, rho_floor(static_cast<int>(fit.left.n()), length), 1.0);
}

double estimate_rho(const SplitSeries& split, double h, int k) {
    return estimate_rho(fit_boundary(split, h, k), split.part_length());
}

double estimate_sigma2(const BoundaryFit& fit, std::span<const Edge> edges) {
    double sum = 0.0;
    for (const auto& e : edges) {
        const double a = fit.left(e.i, e.j);
        const double b = fit.right(e.i, e.j);
        sum += 0.5 * (a * a + b * b);
    }
    return sum;
}

double estimate_sigma2_all(const BoundaryFit& fit) {
    const auto& a = fit.left.dense();
    const auto& b = fit.right.dense();
    const Index n = fit.left.n();
    double sum = 0.0;
    for (Index j = 1; j < n; ++j)
        for (Index i = 0; i < j; ++i) sum += 0.5 * (a(i, j) * a(i, j) + b(i, j) * b(i, j));
    return sum;
}

double estimate_sigma2(const SplitSeries& split, double h, int k, std::span<const Edge> edges) {
    return estimate_sigma2(fit_boundary(split, h, k), edges);
}

double screening_threshold(int n, double c_d) {
    const double dn = static_cast<double>(n);
    return 4.0 * c_d * std::sqrt((1.0 + std::log(dn)) / dn);
}

std::vector<Edge> screen_edges(const BoundaryFit& fit, double rho_hat, double c_d) {
    if (!(rho_hat > 0.0)) throw InvalidInput("screen_edges: rho_hat must be positive");
    const int n = static_cast<int>(fit.left.n());
    const double scale = std::sqrt(fit.tau_h / (2.0 * rho_hat));
    const double cut = screening_threshold(n, c_d);
    std::vector<Edge> out;
    for (int i = 0; i < n; ++i) {
        for (int j = i + 1; j < n; ++j) {
            if (std::abs(scale * (fit.left(i, j) - fit.right(i, j))) > cut) out.push_back({i, j});
        }
    }
    return out;
}

std::vector<Edge> screen_edges(const SplitSeries& split, double h, int k, double rho_hat, double c_d) {
    return screen_edges(fit_boundary(split, h, k), rho_hat, c_d);
}

TestReport mosaic_test(const NetSeries& raw, const MosaicConfig& cfg) {
    cfg.validate();
    if (raw.length() / 2 < 4) {
        throw InvalidInput("series too short: " + std::to_string(raw.length()) +
                           " snapshots leave fewer than 4 per half after splitting");
    }
    if (cfg.k > raw.n()) throw InvalidInput("working rank k exceeds the number of nodes");
    const SplitSeries parts = split(raw, 2);
    const int length = parts.part_length();
    const TauGrid taus = candidate_taus(length, cfg.h, cfg.tau_override);

    const BoundaryFit fit = fit_boundary(parts, cfg.h, cfg.k);
    TestReport report;
    report.rho_hat = estimate_rho(fit, length);
    report.screened = screen_edges(fit, report.rho_hat, cfg.c_d);
    report.screened_edges = report.screened.size();
    report.sigma2_shat = estimate_sigma2(fit, report.screened);
    report.sigma2_omega = estimate_sigma2_all(fit);

    const double floor2 = std::pow(rho_floor(raw.n(), length), 2);
    const double sd_s = std::sqrt(std::max(report.sigma2_shat, floor2));
    const double sd_omega = std::sqrt(std::max(report.sigma2_omega, floor2));

    double best_s = -std::numeric_limits<double>::infinity();
    double best_omega = -std::numeric_limits<double>::infinity();
    int arg_s = taus.values().front();
    int arg_omega = arg_s;
    for (int tau : taus) {
        const SymMatrix w1 = residual_matrix(parts.parts[0], tau, cfg.k);
        const SymMatrix w2 = residual_matrix(parts.parts[1], tau, cfg.k);
        const double a_s = report.screened.empty() ? 0.0 : product_stat(w1, w2, report.screened);
        const double a_omega = product_stat_all(w1, w2);
        TauComponents c{tau, tau * a_s / sd_s, tau * a_omega / sd_omega};
        if (c.screened > best_s) {
            best_s = c.screened;
            arg_s = tau;
        }
        if (c.omega > best_omega) {
            best_omega = c.omega;
            arg_omega = tau;
        }
        report.per_tau.push_back(c);
    }

    report.statistic = std::max(std::abs(best_s), std::abs(best_omega));
    report.tau_argmax = std::abs(best_s) >= std::abs(best_omega) ? arg_s : arg_omega;
    report.threshold = normal_quantile(1.0 - cfg.alpha / (2.0 * static_cast<double>(taus.size())));
    report.reject = report.statistic > report.threshold;
    return report;
}

}  // namespace netmosaic
