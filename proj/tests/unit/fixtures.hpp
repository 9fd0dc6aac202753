#pragma once

#include "netmosaic/netgen.hpp"
#include "netmosaic/netseries.hpp"
#include "netmosaic/statutil.hpp"
#include "netmosaic/symmat.hpp"

#include <numeric>
#include <vector>

namespace fixtures {

using namespace netmosaic;

// Complete bipartite graph between node sets a and b: binary, zero diagonal
// and of rank 2, so ED at k >= 2 reproduces it exactly.
inline SymMatrix bipartite(int n, const std::vector<int>& a, const std::vector<int>& b) {
    SymMatrix m(n);
    for (int i : a)
        for (int j : b) m.set(i, j, 1.0);
    return m;
}

// Each matrix in `segs` repeated `each` times, in order.
inline NetSeries repeat(const std::vector<SymMatrix>& segs, int each) {
    std::vector<SymMatrix> snaps;
    for (const auto& s : segs)
        for (int t = 0; t < each; ++t) snaps.push_back(s);
    return NetSeries::from_matrices(snaps);
}

inline NetSeries homogeneous(int n, int len, double p, std::uint64_t seed) {
    RngStream rng(seed);
    const auto theta = SymMatrix::constant_offdiag(n, p);
    return sample_series({theta, theta, len, len}, rng);
}

// Alternative-design series with the change at the raw midpoint.
inline NetSeries planted(int n, int len, double rho, int s_star, double delta, std::uint64_t seed) {
    const auto m = make_mean({.n = n, .rho = rho, .scenario = Scenario::AltBlock, .s_star = s_star, .delta = delta, .seed = seed});
    RngStream rng(seed, 1);
    return sample_series({m.theta1, m.theta2, len / 2, len}, rng);
}

inline std::vector<int> random_perm(int n, RngStream& rng) {
    std::vector<int> p(static_cast<std::size_t>(n));
    std::iota(p.begin(), p.end(), 0);
    for (int i = n - 1; i > 0; --i)
        std::swap(p[static_cast<std::size_t>(i)], p[rng.below(static_cast<std::uint64_t>(i) + 1)]);
    return p;
}

inline SymMatrix dense_mean(const NetSeries& s, int first, int count) {
    Eigen::MatrixXd acc = Eigen::MatrixXd::Zero(s.n(), s.n());
    for (int t = first; t < first + count; ++t) acc += s.snapshot(t).dense();
    return SymMatrix::from_dense(acc / count);
}

}  // namespace fixtures
