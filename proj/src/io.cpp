#include "netmosaic/io.hpp"

#include "netmosaic/errors.hpp"

#include <fstream>
#include <set>
#include <sstream>
#include <tuple>

namespace netmosaic {

namespace {

[[noreturn]] void fail(const std::string& source, std::size_t line, const std::string& what) {
    throw DataError(source + ": line " + std::to_string(line) + ": " + what);
}

// Parses exactly `count` non-negative integers separated by single spaces.
bool parse_fields(const std::string& text, long long* fields, int count) {
    std::istringstream is(text);
    for (int k = 0; k < count; ++k) {
        if (!(is >> fields[k]) || fields[k] < 0) return false;
    }
    std::string rest;
    return !(is >> rest);
}

}  // namespace

NetSeries parse_series(std::istream& in, const std::string& source) {
    std::string line;
    std::size_t lineno = 0;
    long long header[2];
    for (;;) {
        if (!std::getline(in, line)) throw DataError(source + ": missing header line \"n T\"");
        ++lineno;
        if (line.find_first_not_of(" \t\r") != std::string::npos) break;
    }
    if (!parse_fields(line, header, 2)) fail(source, lineno, "malformed header, expected \"n T\"");
    const long long n = header[0];
    const long long len = header[1];
    if (n < 2) fail(source, lineno, "node count must be at least 2");
    if (len < 1) fail(source, lineno, "series length must be at least 1");
    if (n > 1'000'000 || len > 1'000'000) fail(source, lineno, "header values too large");

    std::vector<std::vector<Edge>> snaps(static_cast<std::size_t>(len));
    std::set<std::tuple<long long, long long, long long>> seen;
    while (std::getline(in, line)) {
        ++lineno;
        if (line.find_first_not_of(" \t\r") == std::string::npos) continue;
        long long f[3];
        if (!parse_fields(line, f, 3)) fail(source, lineno, "malformed line, expected \"t i j\"");
        const auto [t, i, j] = std::tuple(f[0], f[1], f[2]);
        if (t >= len) fail(source, lineno, "time index " + std::to_string(t) + " out of range");
        if (i >= n || j >= n) fail(source, lineno, "node index out of range");
        if (i == j) fail(source, lineno, "self-loop at node " + std::to_string(i));
        if (i > j) fail(source, lineno, "pair must be written with i < j");
        if (!seen.insert({t, i, j}).second) fail(source, lineno, "duplicate edge");
        snaps[static_cast<std::size_t>(t)].push_back({static_cast<std::int32_t>(i), static_cast<std::int32_t>(j)});
    }
    return NetSeries(static_cast<int>(n), std::move(snaps));
}

NetSeries parse_series(const std::filesystem::path& path) {
    std::ifstream in(path);
    if (!in) throw DataError("cannot open " + path.string());
    return parse_series(in, path.string());
}

void write_series(std::ostream& out, const NetSeries& series) {
    out << series.n() << ' ' << series.length() << '\n';
    for (int t = 0; t < series.length(); ++t)
        for (const auto& e : series.edges(t)) out << t << ' ' << e.i << ' ' << e.j << '\n';
}

void write_series(const std::filesystem::path& path, const NetSeries& series) {
    std::ofstream out(path);
    if (!out) throw DataError("cannot write " + path.string());
    write_series(out, series);
}

nlohmann::json report_to_json(const TestReport& report, const nlohmann::json& config) {
    nlohmann::json per_tau = nlohmann::json::array();
    for (const auto& c : report.per_tau) per_tau.push_back({{"tau", c.tau}, {"screened", c.screened}, {"omega", c.omega}});
    return {
        {"statistic", report.statistic},
        {"threshold", report.threshold},
        {"reject", report.reject},
        {"per_tau", per_tau},
        {"screened_edges", report.screened_edges},
        {"rho_hat", report.rho_hat},
        {"sigma2_shat", report.sigma2_shat},
        {"sigma2_omega", report.sigma2_omega},
        {"tau_argmax", report.tau_argmax},
        {"config", config},
    };
}

}  // namespace netmosaic
