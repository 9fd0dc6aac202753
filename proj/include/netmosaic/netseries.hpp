#pragma once

#include "netmosaic/symmat.hpp"

#include <compare>
#include <cstdint>
#include <span>
#include <vector>

namespace netmosaic {

/// Undirected edge {i, j}, stored with i < j.
struct Edge {
    std::int32_t i;
    std::int32_t j;
    auto operator<=>(const Edge&) const = default;
};

/// All pairs i < j of an n-node graph, in row-major order.
std::vector<Edge> all_pairs(int n);

/// Time-ordered sequence of undirected binary graphs on a fixed node set.
/// Snapshots are stored as sorted edge lists, which keeps the symmetric,
/// binary and zero-diagonal invariants true by construction; dense matrices
/// are materialised on demand.
class NetSeries {
public:
    /// Edges may be given in either orientation. Self-loops, out-of-range
    /// endpoints and duplicates raise InvalidInput.
    NetSeries(int n, std::vector<std::vector<Edge>> snapshots);

    /// From dense adjacency matrices, which must be binary with zero diagonal.
    static NetSeries from_matrices(const std::vector<SymMatrix>& snapshots);

    int n() const { return n_; }
    int length() const { return static_cast<int>(snaps_.size()); }
    std::span<const Edge> edges(int t) const { return snaps_.at(static_cast<std::size_t>(t)); }
    SymMatrix snapshot(int t) const;
    std::size_t total_edges() const;

    /// Snapshots t in [first, first + count).
    NetSeries slice(int first, int count) const;
    NetSeries reversed() const;
    /// Relabels nodes so that new node a is old node perm[a].
    NetSeries permuted(const std::vector<int>& perm) const;

    bool operator==(const NetSeries&) const = default;

private:
    NetSeries() = default;
    int n_ = 0;
    std::vector<std::vector<Edge>> snaps_;
};

/// Inverse permutation, validated.
std::vector<int> invert_permutation(const std::vector<int>& perm);

}  // namespace netmosaic
