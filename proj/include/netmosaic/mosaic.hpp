#pragma once

#include "netmosaic/segstats.hpp"

#include <cstdint>
#include <optional>
#include <span>
#include <vector>

namespace netmosaic {

struct MosaicConfig {
    int k = 2;           // working rank
    double h = 0.1;      // bandwidth; boundary windows have length round(h T)
    double alpha = 0.05;
    double c_d = 1.0;    // screening constant
    std::optional<std::vector<int>> tau_override;
    std::uint64_t seed = 0;

    void validate() const;
};

struct TauComponents {
    int tau;
    double screened;  // tau * A_S(tau) / sigma_S over the screened set
    double omega;     // tau * A_Omega(tau) / sigma_Omega
};

struct TestReport {
    double statistic = 0.0;
    double threshold = 0.0;
    bool reject = false;
    std::vector<TauComponents> per_tau;
    std::size_t screened_edges = 0;
    double rho_hat = 0.0;
    double sigma2_shat = 0.0;
    double sigma2_omega = 0.0;
    int tau_argmax = 0;
    std::vector<Edge> screened;
};

/// Smoothed means of the boundary windows pooled over the two halves of a
/// twofold split: ED_k((left + left') / 2) and ED_k((right + right') / 2) at
/// window length round(h T). Shared by the rho, sigma^2 and screening steps.
struct BoundaryFit {
    int tau_h;
    SymMatrix left;
    SymMatrix right;
};

BoundaryFit fit_boundary(const SplitSeries& split, double h, int k);

/// left mean - ED_k(right mean) within a single part.
SymMatrix residual_matrix(const NetSeries& part, int tau, int k);

/// Lower clamp for rho_hat: 1 / (n^2 T).
double rho_floor(int n, int length);

double estimate_rho(const BoundaryFit& fit, int length);
double estimate_rho(const SplitSeries& split, double h, int k);

/// sum over edges of (theta_left_ij^2 + theta_right_ij^2) / 2.
double estimate_sigma2(const BoundaryFit& fit, std::span<const Edge> edges);
double estimate_sigma2_all(const BoundaryFit& fit);
double estimate_sigma2(const SplitSeries& split, double h, int k, std::span<const Edge> edges);

/// 4 c_d sqrt(log(e n) / n)
double screening_threshold(int n, double c_d);

std::vector<Edge> screen_edges(const BoundaryFit& fit, double rho_hat, double c_d);
std::vector<Edge> screen_edges(const SplitSeries& split, double h, int k, double rho_hat, double c_d);

/// Full empirical test on a raw series (split twofold internally).
TestReport mosaic_test(const NetSeries& raw, const MosaicConfig& cfg);

}  // namespace netmosaic
