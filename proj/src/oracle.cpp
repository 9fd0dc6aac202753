#include "netmosaic/oracle.hpp"

#include "netmosaic/errors.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <string>

namespace netmosaic {

DChoice d_choice_from_string(std::string_view name) {
    if (name == "lower") return DChoice::Lower;
    if (name == "upper") return DChoice::Upper;
    if (name == "midpoint") return DChoice::Midpoint;
    throw InvalidInput("unknown d_choice '" + std::string(name) + "'");
}

double psi_screen_cut(int n, int s_star, double c_d, DChoice choice) {
    if (s_star < 1 || s_star > n) throw InvalidInput("s* must lie in [1, n]");
    const double base = c_d * c_d * std::log(std::exp(1.0) * n / s_star);
    const double lo = base / n;
    const double hi = base / s_star;
    switch (choice) {
        case DChoice::Lower: return std::sqrt(lo);
        case DChoice::Upper: return std::sqrt(hi);
        case DChoice::Midpoint: return std::sqrt(0.5 * (lo + hi));
    }
    return std::sqrt(lo);
}

double psi_level(int n) { return 1.0 + std::log(static_cast<double>(n)); }

double c_alpha(double alpha, double h) {
    if (!(alpha > 0.0 && alpha < 1.0)) throw InvalidInput("alpha must lie in (0, 1)");
    if (!(h > 0.0 && h < 0.5)) throw InvalidInput("bandwidth h must lie in (0, 0.5)");
    return std::sqrt(2.0 / alpha * std::log2(1.0 / (2.0 * h)));
}

namespace {

double pair_count(int n) { return 0.5 * n * (n - 1.0); }

bool dense_regime(int n, long long m_star) { return static_cast<double>(m_star) >= std::sqrt(pair_count(n)); }

void check_m_star(int n, long long m_star) {
    if (m_star < 1 || static_cast<double>(m_star) > pair_count(n)) throw InvalidInput("m* must lie in [1, n(n-1)/2]");
}

void check_common(const NetSeries& raw, const OracleConfig& cfg) {
    if (raw.length() < 6) throw InvalidInput("series too short for a threefold split");
    if (!(cfg.rho > 0.0 && cfg.rho <= 1.0)) throw InvalidInput("rho must lie in (0, 1]");
}

std::vector<Edge> screen_abs(const SymMatrix& z, double cut) {
    std::vector<Edge> out;
    const int n = static_cast<int>(z.n());
    for (int i = 0; i < n; ++i)
        for (int j = i + 1; j < n; ++j)
            if (std::abs(z(i, j)) >= cut) out.push_back({i, j});
    return out;
}

}  // namespace

double phi_screen_cut(int n, long long m_star) {
    check_m_star(n, m_star);
    if (dense_regime(n, m_star)) return 0.0;
    const double m = static_cast<double>(m_star);
    return std::sqrt(3.0 * std::log(std::exp(1.0) * pair_count(n) / (m * m)));
}

double phi_level(int n, long long m_star, double alpha, double h) {
    check_m_star(n, m_star);
    const double ca = c_alpha(alpha, h);
    if (dense_regime(n, m_star)) return ca * std::sqrt(pair_count(n));
    const double m = static_cast<double>(m_star);
    return 3.0 * ca * m * std::log(std::exp(1.0) * pair_count(n) / (m * m));
}

OracleDecision psi_test(const NetSeries& raw, const OracleConfig& cfg) {
    check_common(raw, cfg);
    const int n = raw.n();
    if (cfg.sparsity < 1 || cfg.sparsity > n) throw InvalidInput("s* must lie in [1, n]");
    if (cfg.k < 1 || cfg.k > n) throw InvalidInput("working rank k must lie in [1, n]");
    const SplitSeries parts = split(raw, 3);
    const TauGrid taus = candidate_taus(parts.part_length(), cfg.h, cfg.tau_override);

    OracleDecision out;
    out.screen_cut = psi_screen_cut(n, cfg.sparsity, cfg.c_d, cfg.d_choice);
    double a_s = -std::numeric_limits<double>::infinity();
    double a_omega = -std::numeric_limits<double>::infinity();
    for (int tau : taus) {
        const SymMatrix z = z_matrix(parts.parts[0], tau, cfg.rho, cfg.k);
        const SymMatrix z_dot = z_matrix(parts.parts[1], tau, cfg.rho, cfg.k);
        const SymMatrix z_ddot = z_matrix(parts.parts[2], tau, cfg.rho, cfg.k);
        const auto screened = screen_abs(z_ddot, out.screen_cut);
        OracleTau row{tau, product_stat(z, z_dot, screened), product_stat_all(z, z_dot), screened.size()};
        a_s = std::max(a_s, row.screened);
        a_omega = std::max(a_omega, row.omega);
        out.per_tau.push_back(row);
    }
    out.statistic = std::max(std::abs(a_s) / cfg.sparsity, std::abs(a_omega) / n);
    out.threshold = psi_level(n);
    out.reject = out.statistic > out.threshold;
    return out;
}

OracleDecision phi_test(const NetSeries& raw, const OracleConfig& cfg) {
    check_common(raw, cfg);
    const int n = raw.n();
    const long long m_star = cfg.sparsity;
    const SplitSeries parts = split(raw, 3);
    const TauGrid taus = candidate_taus(parts.part_length(), cfg.h, cfg.tau_override);

    OracleDecision out;
    out.screen_cut = phi_screen_cut(n, m_star);
    out.threshold = phi_level(n, m_star, cfg.alpha, cfg.h);
    double best = -std::numeric_limits<double>::infinity();
    for (int tau : taus) {
        const SymMatrix e = e_matrix(parts.parts[0], tau, cfg.rho);
        const SymMatrix e_dot = e_matrix(parts.parts[1], tau, cfg.rho);
        const SymMatrix e_ddot = e_matrix(parts.parts[2], tau, cfg.rho);
        const auto screened = screen_abs(e_ddot, out.screen_cut);
        const double b = product_stat(e, e_dot, screened);
        out.per_tau.push_back({tau, b, product_stat_all(e, e_dot), screened.size()});
        best = std::max(best, b);
    }
    out.statistic = best;
    out.reject = out.statistic > out.threshold;
    return out;
}

}  // namespace netmosaic
