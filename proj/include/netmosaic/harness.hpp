#pragma once

#include "netmosaic/mosaic.hpp"
#include "netmosaic/netgen.hpp"
#include "netmosaic/netseries.hpp"

#include <cstdint>
#include <functional>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

namespace netmosaic {

/// Runs fn(0) .. fn(count - 1) on a pool of worker threads. fn must only touch
/// state owned by its index.
void parallel_for(int count, const std::function<void(int)>& fn, unsigned threads = 0);

struct NullDesign {
    int n = 150;
    int t_raw = 240;
    bool misspecified = false;  // adds the rank-3 perturbation to the null mean
};

struct NullDistribution {
    std::vector<double> samples;
    double mean = 0.0;
    double sd = 0.0;
    double ks_distance = 0.0;
    double normality_p = 0.0;
};

/// Null draws of tau A_S(tau) / sigma_hat_S at tau = T / 2 (T the half length),
/// with S a fixed random half of all pairs. The mean design and S come from
/// cfg.seed; replication r uses rng_for_rep(cfg.seed, r).
NullDistribution run_null_distribution(const MosaicConfig& cfg, double rho, int reps, const NullDesign& design = {});

enum class Detector { Mosaic, L2Cusum, Psi, Phi };

std::string_view to_string(Detector d);
Detector detector_from_string(std::string_view name);

struct ExperimentGrid {
    int n = 150;
    int t_raw = 240;
    int reps = 500;
    std::vector<double> rho_list{0.01};
    std::vector<int> s_star_list{0};
    std::vector<double> delta_list{1.0};
    bool misspecified = false;
    MosaicConfig cfg;
    std::vector<Detector> detectors{Detector::Mosaic};
    int cal_reps = 100;               // l2-CUSUM bootstrap size
    std::optional<int> tau_star;      // raw-time change point; default t_raw / 2

    void validate() const;
};

struct PowerRow {
    double rho = 0.0;
    int s_star = 0;
    double delta = 0.0;
    Detector detector = Detector::Mosaic;
    int rejections = 0;
    int reps = 0;

    double power() const { return static_cast<double>(rejections) / reps; }
    double se() const;
};

struct PowerTable {
    std::vector<PowerRow> rows;
    const PowerRow* find(double rho, int s_star, double delta, Detector d) const;
};

std::string power_csv_header();
std::string power_csv_line(const PowerRow& row);

/// Rejection frequencies at level cfg.alpha for every (rho, s*, delta) cell
/// and detector. `on_row` is called as each row completes.
PowerTable run_power_table(const ExperimentGrid& grid, const std::function<void(const PowerRow&)>& on_row = {});

/// mosaic_test on an ingested series.
TestReport detect(const NetSeries& series, const MosaicConfig& cfg);

struct CentralityProfile {
    std::vector<std::vector<double>> rows;  // one per snapshot, max-normalised
    std::vector<bool> degenerate;           // snapshot had no edges; row is all zero
    std::string to_csv() const;
};

CentralityProfile centrality_profile(const NetSeries& series);

}  // namespace netmosaic
