#pragma once

#include "netmosaic/netseries.hpp"
#include "netmosaic/symmat.hpp"

#include <optional>
#include <span>
#include <vector>

namespace netmosaic {

/// Interleaved copies of a series: with m folds, part k holds raw snapshots
/// k, k + m, k + 2m, ... Trailing snapshots beyond m * floor(T / m) are dropped.
struct SplitSeries {
    std::vector<NetSeries> parts;
    int part_length() const { return parts.front().length(); }
    int n() const { return parts.front().n(); }
};

SplitSeries split(const NetSeries& series, int folds);

/// Candidate change points: strictly increasing, each in [2, floor((T + 1) / 2)].
class TauGrid {
public:
    /// Validates `taus` against series length `length`.
    TauGrid(std::vector<int> taus, int length);

    const std::vector<int>& values() const { return taus_; }
    std::size_t size() const { return taus_.size(); }
    auto begin() const { return taus_.begin(); }
    auto end() const { return taus_.end(); }

private:
    std::vector<int> taus_;
};

/// round(2^j h T) for j = 0 .. floor(log2(1 / (2h))), clamped to
/// [2, floor((T + 1) / 2)] and de-duplicated; or the validated override.
TauGrid candidate_taus(int length, double h, const std::optional<std::vector<int>>& override_taus = std::nullopt);

/// Mean of the first tau snapshots and mean of the last tau snapshots.
struct SegmentMeans {
    SymMatrix left;
    SymMatrix right;
};

SegmentMeans segment_means(const NetSeries& series, int tau);

/// sqrt(tau / (2 rho)) (ED_k(left) - ED_k(right))
SymMatrix z_matrix(const NetSeries& series, int tau, double rho, int k);

/// sqrt(tau / (2 rho)) (left - right)
SymMatrix e_matrix(const NetSeries& series, int tau, double rho);

/// sum over edges (i < j) of a_ij * b_ij; zero for an empty set.
double product_stat(const SymMatrix& a, const SymMatrix& b, std::span<const Edge> edges);

/// product_stat over every pair i < j.
double product_stat_all(const SymMatrix& a, const SymMatrix& b);

}  // namespace netmosaic
