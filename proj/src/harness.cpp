#include "netmosaic/harness.hpp"

#include "netmosaic/baseline.hpp"
#include "netmosaic/errors.hpp"
#include "netmosaic/oracle.hpp"
#include "netmosaic/statutil.hpp"

#include <algorithm>
#include <atomic>
#include <bit>
#include <cmath>
#include <cstdio>
#include <exception>
#include <mutex>
#include <numeric>
#include <sstream>
#include <thread>

namespace netmosaic {

void parallel_for(int count, const std::function<void(int)>& fn, unsigned threads) {
    if (count <= 0) return;
    if (threads == 0) threads = std::max(1u, std::thread::hardware_concurrency());
    threads = std::min<unsigned>(threads, static_cast<unsigned>(count));
    if (threads == 1) {
        for (int i = 0; i < count; ++i) fn(i);
        return;
    }
    std::atomic<int> next{0};
    std::exception_ptr failure;
    std::mutex failure_mutex;
    {
        std::vector<std::jthread> pool;
        for (unsigned w = 0; w < threads; ++w) {
            pool.emplace_back([&] {
                for (int i = next++; i < count; i = next++) {
                    try {
                        fn(i);
                    } catch (...) {
                        std::lock_guard lock(failure_mutex);
                        if (!failure) failure = std::current_exception();
                        next = count;
                    }
                }
            });
        }
    }
    if (failure) std::rethrow_exception(failure);
}

namespace {

std::vector<Edge> random_half_of_pairs(int n, std::uint64_t seed) {
    std::vector<Edge> pairs = all_pairs(n);
    RngStream rng(seed, 0x68616c66);  // "half"
    const std::size_t keep = pairs.size() / 2;
    for (std::size_t k = 0; k < keep; ++k) {
        const std::size_t pick = k + static_cast<std::size_t>(rng.below(pairs.size() - k));
        std::swap(pairs[k], pairs[pick]);
    }
    pairs.resize(keep);
    std::sort(pairs.begin(), pairs.end());
    return pairs;
}

}  // namespace

NullDistribution run_null_distribution(const MosaicConfig& cfg, double rho, int reps, const NullDesign& design) {
    cfg.validate();
    if (reps < 1) throw InvalidInput("run_null_distribution: reps must be positive");
    const MeanSpec mean_spec{design.n, rho, design.misspecified ? Scenario::NullMisspecified : Scenario::NullRank2, 0,
                             0.0, cfg.seed};
    const SymMatrix theta = make_mean(mean_spec).theta1;
    const std::vector<Edge> subset = random_half_of_pairs(design.n, cfg.seed);
    const SeriesSpec series_spec{theta, theta, design.t_raw, design.t_raw};

    NullDistribution out;
    out.samples.assign(static_cast<std::size_t>(reps), 0.0);
    parallel_for(reps, [&](int r) {
        RngStream rng = rng_for_rep(cfg.seed, static_cast<std::uint64_t>(r));
        const SplitSeries parts = split(sample_series(series_spec, rng), 2);
        const int tau = parts.part_length() / 2;
        const BoundaryFit fit = fit_boundary(parts, cfg.h, cfg.k);
        const double sigma2 = estimate_sigma2(fit, subset);
        const SymMatrix w1 = residual_matrix(parts.parts[0], tau, cfg.k);
        const SymMatrix w2 = residual_matrix(parts.parts[1], tau, cfg.k);
        out.samples[static_cast<std::size_t>(r)] = tau * product_stat(w1, w2, subset) / std::sqrt(sigma2);
    });

    const double m = static_cast<double>(reps);
    out.mean = std::accumulate(out.samples.begin(), out.samples.end(), 0.0) / m;
    double ss = 0.0;
    for (double v : out.samples) ss += (v - out.mean) * (v - out.mean);
    out.sd = reps > 1 ? std::sqrt(ss / (m - 1.0)) : 0.0;
    if (reps >= 20) {
        out.ks_distance = ks_distance_std_normal(out.samples);
        if (reps <= 5000) out.normality_p = normality_pvalue(out.samples);
    }
    return out;
}

std::string_view to_string(Detector d) {
    switch (d) {
        case Detector::Mosaic: return "mosaic";
        case Detector::L2Cusum: return "l2cusum";
        case Detector::Psi: return "psi";
        case Detector::Phi: return "phi";
    }
    return "unknown";
}

Detector detector_from_string(std::string_view name) {
    for (Detector d : {Detector::Mosaic, Detector::L2Cusum, Detector::Psi, Detector::Phi}) {
        if (to_string(d) == name) return d;
    }
    throw InvalidInput("unknown detector '" + std::string(name) + "'");
}

void ExperimentGrid::validate() const {
    cfg.validate();
    if (reps < 1) throw InvalidInput("reps must be positive");
    if (n < 2) throw InvalidInput("n must be at least 2");
    if (t_raw < 8) throw InvalidInput("t_raw must be at least 8");
    if (rho_list.empty() || s_star_list.empty() || delta_list.empty() || detectors.empty()) {
        throw InvalidInput("experiment grid has an empty axis");
    }
    if (tau_star && (*tau_star < 1 || *tau_star > t_raw)) throw InvalidInput("tau_star must lie in [1, t_raw]");
}

double PowerRow::se() const {
    const double p = power();
    return std::sqrt(p * (1.0 - p) / reps);
}

const PowerRow* PowerTable::find(double rho, int s_star, double delta, Detector d) const {
    for (const auto& r : rows) {
        if (r.rho == rho && r.s_star == s_star && r.delta == delta && r.detector == d) return &r;
    }
    return nullptr;
}

std::string power_csv_header() { return "rho,s_star,delta,detector,power,se,reps"; }

std::string power_csv_line(const PowerRow& row) {
    char buf[160];
    std::snprintf(buf, sizeof buf, "%.6g,%d,%.6g,%s,%.6f,%.6f,%d", row.rho, row.s_star, row.delta,
                  std::string(to_string(row.detector)).c_str(), row.power(), row.se(), row.reps);
    return buf;
}

namespace {

struct ChangeShape {
    int changed_nodes = 0;
    long long changed_pairs = 0;
    double max_prob = 0.0;
};

ChangeShape describe_change(const MeanPair& means) {
    const Eigen::MatrixXd diff = means.theta2.dense() - means.theta1.dense();
    ChangeShape s;
    const Index n = diff.rows();
    for (Index i = 0; i < n; ++i) {
        bool row = false;
        for (Index j = 0; j < n; ++j) {
            if (diff(i, j) != 0.0) {
                row = true;
                if (i < j) ++s.changed_pairs;
            }
        }
        if (row) ++s.changed_nodes;
    }
    s.max_prob = std::max(means.theta1.dense().maxCoeff(), means.theta2.dense().maxCoeff());
    return s;
}

}  // namespace

PowerTable run_power_table(const ExperimentGrid& grid, const std::function<void(const PowerRow&)>& on_row) {
    grid.validate();
    const int tau_star = grid.tau_star.value_or(grid.t_raw / 2);
    const Scenario scenario = grid.misspecified ? Scenario::AltMisspecified : Scenario::AltBlock;
    const long long all_pairs_count = static_cast<long long>(grid.n) * (grid.n - 1) / 2;

    PowerTable table;
    for (double rho : grid.rho_list) {
        for (int s_star : grid.s_star_list) {
            // Replication streams depend on (rho, s*) but not on delta, so
            // no-change rows coincide across delta.
            const std::uint64_t cell_seed =
                mix_seed(mix_seed(grid.cfg.seed, std::bit_cast<std::uint64_t>(rho)), static_cast<std::uint64_t>(s_star));
            for (double delta : grid.delta_list) {
                const MeanPair means = make_mean({grid.n, rho, scenario, s_star, delta, grid.cfg.seed});
                const ChangeShape shape = describe_change(means);
                const SeriesSpec spec{means.theta1, means.theta2, shape.changed_pairs == 0 ? grid.t_raw : tau_star,
                                      grid.t_raw};

                OracleConfig oracle;
                oracle.rho = shape.max_prob;
                oracle.k = grid.cfg.k;
                oracle.h = grid.cfg.h;
                oracle.alpha = grid.cfg.alpha;
                oracle.c_d = grid.cfg.c_d;
                const int psi_sparsity = shape.changed_nodes > 0 ? shape.changed_nodes : grid.n;
                const long long phi_sparsity = shape.changed_pairs > 0 ? shape.changed_pairs : all_pairs_count;
                const TauGrid l2_taus = candidate_taus(grid.t_raw, grid.cfg.h);

                const std::size_t nd = grid.detectors.size();
                std::vector<std::uint8_t> rejected(nd * static_cast<std::size_t>(grid.reps), 0);
                parallel_for(grid.reps, [&](int r) {
                    RngStream rng = rng_for_rep(cell_seed, static_cast<std::uint64_t>(r));
                    const NetSeries series = sample_series(spec, rng);
                    for (std::size_t d = 0; d < nd; ++d) {
                        bool rej = false;
                        switch (grid.detectors[d]) {
                            case Detector::Mosaic: rej = mosaic_test(series, grid.cfg).reject; break;
                            case Detector::L2Cusum:
                                rej = l2_cusum_test(series, l2_taus, grid.cfg.k, grid.cfg.alpha, grid.cal_reps, rng).reject;
                                break;
                            case Detector::Psi: {
                                OracleConfig c = oracle;
                                c.sparsity = psi_sparsity;
                                rej = psi_test(series, c).reject;
                                break;
                            }
                            case Detector::Phi: {
                                OracleConfig c = oracle;
                                c.sparsity = static_cast<int>(phi_sparsity);
                                rej = phi_test(series, c).reject;
                                break;
                            }
                        }
                        rejected[d * static_cast<std::size_t>(grid.reps) + static_cast<std::size_t>(r)] = rej;
                    }
                });

                for (std::size_t d = 0; d < nd; ++d) {
                    PowerRow row{rho, s_star, delta, grid.detectors[d], 0, grid.reps};
                    for (int r = 0; r < grid.reps; ++r)
                        row.rejections += rejected[d * static_cast<std::size_t>(grid.reps) + static_cast<std::size_t>(r)];
                    table.rows.push_back(row);
                    if (on_row) on_row(row);
                }
            }
        }
    }
    return table;
}

TestReport detect(const NetSeries& series, const MosaicConfig& cfg) { return mosaic_test(series, cfg); }

CentralityProfile centrality_profile(const NetSeries& series) {
    CentralityProfile out;
    const auto n = static_cast<std::size_t>(series.n());
    for (int t = 0; t < series.length(); ++t) {
        if (series.edges(t).empty()) {
            out.rows.emplace_back(n, 0.0);
            out.degenerate.push_back(true);
        } else {
            out.rows.push_back(eigenvector_centrality(series.snapshot(t)));
            out.degenerate.push_back(false);
        }
    }
    return out;
}

std::string CentralityProfile::to_csv() const {
    std::ostringstream os;
    const std::size_t n = rows.empty() ? 0 : rows.front().size();
    for (std::size_t i = 0; i < n; ++i) os << (i ? "," : "") << i;
    os << '\n';
    char buf[32];
    for (const auto& row : rows) {
        for (std::size_t i = 0; i < row.size(); ++i) {
            std::snprintf(buf, sizeof buf, "%.10g", row[i]);
            os << (i ? "," : "") << buf;
        }
        os << '\n';
    }
    return os.str();
}

}  // namespace netmosaic
