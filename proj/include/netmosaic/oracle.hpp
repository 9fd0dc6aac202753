#pragma once

#include "netmosaic/netseries.hpp"
#include "netmosaic/segstats.hpp"

#include <optional>
#include <string_view>
#include <vector>

namespace netmosaic {

/// Where the screening threshold sits inside its admissible interval. For the
/// low-rank test the interval is on d^2, and Midpoint is the midpoint of d^2.
enum class DChoice { Lower, Upper, Midpoint };

DChoice d_choice_from_string(std::string_view name);

/// Configuration of the oracle tests, which know the change sparsity and rho.
/// `sparsity` is s* (changed nodes) for psi_test and m* (changed pairs) for
/// phi_test.
struct OracleConfig {
    int sparsity = 1;
    double rho = 0.05;
    int k = 2;
    double h = 0.1;
    double alpha = 0.05;
    double c_d = 1.0;
    DChoice d_choice = DChoice::Lower;
    std::optional<std::vector<int>> tau_override;
};

struct OracleTau {
    int tau;
    double screened;   // product statistic over the screening set
    double omega;      // product statistic over all pairs (psi only)
    std::size_t screened_edges;
};

struct OracleDecision {
    bool reject = false;
    double statistic = 0.0;
    double threshold = 0.0;
    double screen_cut = 0.0;
    std::vector<OracleTau> per_tau;
};

/// d(s*) for the low-rank oracle test: sqrt of the chosen point of
/// [c_d^2 log(e n / s*) / n, c_d^2 log(e n / s*) / s*].
double psi_screen_cut(int n, int s_star, double c_d, DChoice choice);

/// log(e n), the normalised rejection level r_n / s*.
double psi_level(int n);

/// sqrt(2 / alpha * log2(1 / (2h)))
double c_alpha(double alpha, double h);

/// Screening cut for the no-low-rank test; zero in the dense regime
/// m* >= sqrt(p_n).
double phi_screen_cut(int n, long long m_star);

/// Rejection level r_n for the no-low-rank test.
double phi_level(int n, long long m_star, double alpha, double h);

/// Theoretical test with spectral smoothing; threefold split, known rho and s*.
/// Rejects when max(|A_S| / s*, |A_Omega| / n) > log(e n).
OracleDecision psi_test(const NetSeries& raw, const OracleConfig& cfg);

/// Test without low-rank smoothing; threefold split, known rho and m*.
/// Rejects when max_tau B_S(tau) > r_n.
OracleDecision phi_test(const NetSeries& raw, const OracleConfig& cfg);

}  // namespace netmosaic
