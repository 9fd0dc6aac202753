#include "netmosaic/netseries.hpp"

#include "netmosaic/errors.hpp"

#include <algorithm>
#include <string>

namespace netmosaic {

std::vector<Edge> all_pairs(int n) {
    std::vector<Edge> out;
    out.reserve(static_cast<std::size_t>(n) * static_cast<std::size_t>(std::max(n - 1, 0)) / 2);
    for (int i = 0; i < n; ++i)
        for (int j = i + 1; j < n; ++j) out.push_back({i, j});
    return out;
}

NetSeries::NetSeries(int n, std::vector<std::vector<Edge>> snapshots) : n_(n), snaps_(std::move(snapshots)) {
    if (n < 2) throw InvalidInput("NetSeries: need at least 2 nodes");
    if (snaps_.empty()) throw InvalidInput("NetSeries: need at least one snapshot");
    for (std::size_t t = 0; t < snaps_.size(); ++t) {
        auto& es = snaps_[t];
        for (auto& e : es) {
            if (e.i < 0 || e.j < 0 || e.i >= n || e.j >= n) {
                throw InvalidInput("NetSeries: edge (" + std::to_string(e.i) + "," + std::to_string(e.j) +
                                   ") out of range at t=" + std::to_string(t));
            }
            if (e.i == e.j) throw InvalidInput("NetSeries: self-loop at node " + std::to_string(e.i));
            if (e.i > e.j) std::swap(e.i, e.j);
        }
        std::sort(es.begin(), es.end());
        if (std::adjacent_find(es.begin(), es.end()) != es.end()) {
            throw InvalidInput("NetSeries: duplicate edge at t=" + std::to_string(t));
        }
    }
}

NetSeries NetSeries::from_matrices(const std::vector<SymMatrix>& snapshots) {
    if (snapshots.empty()) throw InvalidInput("NetSeries: need at least one snapshot");
    const int n = static_cast<int>(snapshots.front().n());
    std::vector<std::vector<Edge>> edges(snapshots.size());
    for (std::size_t t = 0; t < snapshots.size(); ++t) {
        const auto& m = snapshots[t];
        if (m.n() != n) throw InvalidInput("NetSeries: snapshots differ in size");
        for (int i = 0; i < n; ++i) {
            if (m(i, i) != 0.0) throw InvalidInput("NetSeries: nonzero diagonal at t=" + std::to_string(t));
            for (int j = i + 1; j < n; ++j) {
                const double v = m(i, j);
                if (v == 1.0) {
                    edges[t].push_back({i, j});
                } else if (v != 0.0) {
                    throw InvalidInput("NetSeries: non-binary entry at t=" + std::to_string(t));
                }
            }
        }
    }
    return NetSeries(n, std::move(edges));
}

SymMatrix NetSeries::snapshot(int t) const {
    SymMatrix m(n_);
    for (const auto& e : edges(t)) m.set(e.i, e.j, 1.0);
    return m;
}

std::size_t NetSeries::total_edges() const {
    std::size_t total = 0;
    for (const auto& s : snaps_) total += s.size();
    return total;
}

NetSeries NetSeries::slice(int first, int count) const {
    if (first < 0 || count < 1 || first + count > length()) throw InvalidInput("NetSeries::slice: range out of bounds");
    NetSeries out;
    out.n_ = n_;
    out.snaps_.assign(snaps_.begin() + first, snaps_.begin() + first + count);
    return out;
}

NetSeries NetSeries::reversed() const {
    NetSeries out = *this;
    std::reverse(out.snaps_.begin(), out.snaps_.end());
    return out;
}

std::vector<int> invert_permutation(const std::vector<int>& perm) {
    std::vector<int> inv(perm.size(), -1);
    for (std::size_t a = 0; a < perm.size(); ++a) {
        const int p = perm[a];
        if (p < 0 || static_cast<std::size_t>(p) >= perm.size() || inv[static_cast<std::size_t>(p)] != -1) {
            throw InvalidInput("invalid permutation");
        }
        inv[static_cast<std::size_t>(p)] = static_cast<int>(a);
    }
    return inv;
}

NetSeries NetSeries::permuted(const std::vector<int>& perm) const {
    if (static_cast<int>(perm.size()) != n_) throw InvalidInput("NetSeries::permuted: permutation size mismatch");
    const std::vector<int> inv = invert_permutation(perm);
    std::vector<std::vector<Edge>> out(snaps_.size());
    for (std::size_t t = 0; t < snaps_.size(); ++t) {
        out[t].reserve(snaps_[t].size());
        for (const auto& e : snaps_[t]) out[t].push_back({inv[static_cast<std::size_t>(e.i)], inv[static_cast<std::size_t>(e.j)]});
    }
    return NetSeries(n_, std::move(out));
}

}  // namespace netmosaic
