#pragma once

#include "netmosaic/netseries.hpp"
#include "netmosaic/segstats.hpp"
#include "netmosaic/statutil.hpp"

namespace netmosaic {

/// max over tau of || sqrt(tau / 2) (left mean - right mean) ||_2
double l2_cusum_stat(const NetSeries& series, const TauGrid& taus);

struct L2CusumDecision {
    bool reject = false;
    bool degenerate = false;  // fitted null mean was all zero; accepted without calibration
    double statistic = 0.0;
    double critical_value = 0.0;
};

/// Operator-norm CUSUM calibrated by parametric bootstrap: the null mean is
/// ED_k of the full-series average (clipped to [0, 1], zero diagonal), and
/// `cal_reps` series of the same length are simulated from it. Rejects when
/// the observed statistic exceeds the empirical (1 - alpha) quantile,
/// taken as the ceil((1 - alpha) cal_reps)-th smallest calibrated value.
L2CusumDecision l2_cusum_test(const NetSeries& series, const TauGrid& taus, int k, double alpha, int cal_reps,
                              RngStream& rng);

}  // namespace netmosaic
