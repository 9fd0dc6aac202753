#include "netmosaic/netgen.hpp"

#include "netmosaic/errors.hpp"

#include <cmath>
#include <numeric>
#include <vector>

namespace netmosaic {

std::string_view to_string(Scenario s) {
    switch (s) {
        case Scenario::NullRank2: return "null-rank2";
        case Scenario::NullMisspecified: return "null-misspecified";
        case Scenario::AltBlock: return "alt-block";
        case Scenario::AltMisspecified: return "alt-misspecified";
    }
    return "unknown";
}

Scenario scenario_from_string(std::string_view name) {
    for (Scenario s : {Scenario::NullRank2, Scenario::NullMisspecified, Scenario::AltBlock, Scenario::AltMisspecified}) {
        if (to_string(s) == name) return s;
    }
    throw InvalidInput("unknown scenario '" + std::string(name) + "'");
}

namespace {

// 0/1 vector with exactly `weight` ones at uniformly random positions.
std::vector<double> random_support(int n, int weight, RngStream& rng) {
    std::vector<int> idx(static_cast<std::size_t>(n));
    std::iota(idx.begin(), idx.end(), 0);
    for (int k = 0; k < weight; ++k) {
        const auto pick = k + static_cast<int>(rng.below(static_cast<std::uint64_t>(n - k)));
        std::swap(idx[static_cast<std::size_t>(k)], idx[static_cast<std::size_t>(pick)]);
    }
    std::vector<double> u(static_cast<std::size_t>(n), 0.0);
    for (int k = 0; k < weight; ++k) u[static_cast<std::size_t>(idx[static_cast<std::size_t>(k)])] = 1.0;
    return u;
}

// (1 - u_i) v_i with v Rademacher.
std::vector<double> signed_complement(const std::vector<double>& u, RngStream& rng) {
    std::vector<double> out(u.size());
    for (std::size_t i = 0; i < u.size(); ++i) out[i] = (1.0 - u[i]) * rng.rademacher();
    return out;
}

void add_outer(SymMatrix& m, const std::vector<double>& v, double scale) {
    const int n = static_cast<int>(v.size());
    for (int i = 0; i < n; ++i) {
        if (v[static_cast<std::size_t>(i)] == 0.0) continue;
        for (int j = i + 1; j < n; ++j) m.add(i, j, scale * v[static_cast<std::size_t>(i)] * v[static_cast<std::size_t>(j)]);
    }
}

void check_probabilities(const SymMatrix& m, const char* which) {
    const auto& d = m.dense();
    if (d.minCoeff() < 0.0 || d.maxCoeff() > 1.0) {
        throw InvalidInput(std::string("make_mean: ") + which + " has entries outside [0, 1]");
    }
}

}  // namespace

MeanPair make_mean(const MeanSpec& spec) {
    if (spec.n < 2) throw InvalidInput("make_mean: n must be at least 2");
    if (!(spec.rho > 0.0 && spec.rho <= 1.0)) throw InvalidInput("make_mean: rho must lie in (0, 1]");
    RngStream rng(spec.seed, 0x6d65616e);  // "mean"
    const int n = spec.n;

    SymMatrix base = SymMatrix::constant_offdiag(n, spec.rho);
    switch (spec.scenario) {
        case Scenario::NullRank2:
        case Scenario::NullMisspecified: {
            const auto u = random_support(n, n / 2, rng);
            add_outer(base, u, spec.rho / 2.0);
            if (spec.scenario == Scenario::NullMisspecified) add_outer(base, signed_complement(u, rng), 0.05 * spec.rho);
            check_probabilities(base, "theta");
            return {base, base};
        }
        case Scenario::AltBlock:
        case Scenario::AltMisspecified: {
            if (spec.s_star < 0 || spec.s_star > n) throw InvalidInput("make_mean: s_star must lie in [0, n]");
            if (spec.delta < 0.0) throw InvalidInput("make_mean: delta must be nonnegative");
            SymMatrix theta2 = base;
            // s* = 0 encodes "no change" in both alternative designs.
            if (spec.s_star > 0) {
                const auto w = random_support(n, spec.s_star, rng);
                add_outer(theta2, w, spec.delta * std::sqrt(spec.rho / spec.s_star));
                if (spec.scenario == Scenario::AltMisspecified) add_outer(theta2, signed_complement(w, rng), 0.1 * spec.rho);
            }
            check_probabilities(base, "theta1");
            check_probabilities(theta2, "theta2");
            return {base, theta2};
        }
    }
    throw InvalidInput("make_mean: unknown scenario");
}

namespace {

void check_theta(const SymMatrix& m, const char* which) {
    check_probabilities(m, which);
    if (m.dense().diagonal().cwiseAbs().maxCoeff() != 0.0) {
        throw InvalidInput(std::string("sample_series: ") + which + " has a nonzero diagonal");
    }
}

}  // namespace

NetSeries sample_series(const SeriesSpec& spec, RngStream& rng) {
    if (spec.theta1.n() != spec.theta2.n()) throw InvalidInput("sample_series: theta dimensions differ");
    if (spec.length < 1 || spec.tau_star < 1 || spec.tau_star > spec.length) {
        throw InvalidInput("sample_series: need 1 <= tau_star <= length");
    }
    check_theta(spec.theta1, "theta1");
    check_theta(spec.theta2, "theta2");

    const int n = static_cast<int>(spec.theta1.n());
    const int len = spec.length;
    std::vector<std::vector<Edge>> snaps(static_cast<std::size_t>(len));

    // Each entry is a Bernoulli process that is constant within a segment, so
    // success times are generated by geometric gaps. Entries are visited in
    // row-major order, which leaves every snapshot's edge list sorted.
    auto run_segment = [&](int i, int j, double theta, int t0, int t1) {
        if (theta <= 0.0 || t0 >= t1) return;
        if (theta >= 1.0) {
            for (int t = t0; t < t1; ++t) snaps[static_cast<std::size_t>(t)].push_back({i, j});
            return;
        }
        const double log_q = std::log1p(-theta);
        double t = static_cast<double>(t0) - 1.0;
        for (;;) {
            t += 1.0 + std::floor(std::log(rng.uniform_pos()) / log_q);
            if (t >= static_cast<double>(t1)) break;
            snaps[static_cast<std::size_t>(t)].push_back({i, j});
        }
    };

    for (int i = 0; i < n; ++i) {
        for (int j = i + 1; j < n; ++j) {
            run_segment(i, j, spec.theta1(i, j), 0, spec.tau_star);
            run_segment(i, j, spec.theta2(i, j), spec.tau_star, len);
        }
    }
    return NetSeries(n, std::move(snaps));
}

}  // namespace netmosaic
