#include "netmosaic/cli.hpp"

#include "netmosaic/errors.hpp"
#include "netmosaic/harness.hpp"
#include "netmosaic/io.hpp"

#include <CLI11.hpp>

#include <cstdio>
#include <fstream>
#include <iostream>
#include <optional>

namespace netmosaic {

namespace {

constexpr const char* kFormatHelp =
    "Series files are edge lists: a header line \"n T\" followed by lines \"t i j\"\n"
    "(0-based; 0 <= t < T; 0 <= i < j < n), one per edge present at time t.";

std::ofstream open_output(const std::string& path) {
    std::ofstream out(path);
    if (!out) throw DataError("cannot write " + path);
    return out;
}

std::string fmt(double v) {
    char buf[40];
    std::snprintf(buf, sizeof buf, "%.17g", v);
    return buf;
}

template <class T>
std::string join(const std::vector<T>& xs) {
    std::string s;
    for (std::size_t i = 0; i < xs.size(); ++i) {
        if (i) s += ',';
        if constexpr (std::is_floating_point_v<T>) {
            char buf[40];
            std::snprintf(buf, sizeof buf, "%.6g", xs[i]);
            s += buf;
        } else {
            s += std::to_string(xs[i]);
        }
    }
    return s;
}

std::string join(const std::vector<std::string>& xs) {
    std::string s;
    for (std::size_t i = 0; i < xs.size(); ++i) s += (i ? "," : "") + xs[i];
    return s;
}

struct CommonOptions {
    int k = 2;
    double h = 0.1;
    double alpha = 0.05;
    double c_d = 1.0;
    std::uint64_t seed = 20240601;
};

void add_common(CLI::App* cmd, CommonOptions& o) {
    cmd->add_option("--k", o.k, "Working rank K")->capture_default_str();
    cmd->add_option("--h", o.h, "Bandwidth h in (0, 0.5)")->capture_default_str();
    cmd->add_option("--alpha", o.alpha, "Significance level")->capture_default_str();
    cmd->add_option("--cd", o.c_d, "Screening constant c_d")->capture_default_str();
    cmd->add_option("--seed", o.seed, "Master seed")->capture_default_str();
}

MosaicConfig to_config(const CommonOptions& o) {
    MosaicConfig cfg;
    cfg.k = o.k;
    cfg.h = o.h;
    cfg.alpha = o.alpha;
    cfg.c_d = o.c_d;
    cfg.seed = o.seed;
    return cfg;
}

int run_detect(const std::string& input, const std::string& output, const CommonOptions& o,
               const std::vector<int>& taus, std::ostream& out) {
    MosaicConfig cfg = to_config(o);
    if (!taus.empty()) cfg.tau_override = taus;
    cfg.validate();
    const NetSeries series = parse_series(std::filesystem::path(input));
    const TestReport report = detect(series, cfg);

    const int half = series.length() / 2;
    nlohmann::json config = {
        {"command", "detect"},
        {"input", input},
        {"n", series.n()},
        {"t_raw", series.length()},
        {"half_length", half},
        {"k", cfg.k},
        {"h", cfg.h},
        {"alpha", cfg.alpha},
        {"c_d", cfg.c_d},
        {"seed", cfg.seed},
        {"taus", taus.empty() ? nlohmann::json(nullptr) : nlohmann::json(taus)},
        {"resolved_taus", candidate_taus(half, cfg.h, cfg.tau_override).values()},
    };
    auto doc = report_to_json(report, config);
    open_output(output) << doc.dump(2) << '\n';
    out << "statistic " << fmt(report.statistic) << " threshold " << fmt(report.threshold) << ' '
        << (report.reject ? "reject" : "accept") << '\n';
    return kExitOk;
}

struct NullOptions {
    int n = 150;
    int t_raw = 240;
    int reps = 2000;
    double rho = 0.01;
    std::string scenario = "null-rank2";
    std::string output;
};

int run_simulate_null(const NullOptions& a, const CommonOptions& o, std::ostream& out) {
    const Scenario sc = scenario_from_string(a.scenario);
    if (sc != Scenario::NullRank2 && sc != Scenario::NullMisspecified) {
        throw InvalidInput("simulate-null needs a null scenario (null-rank2 or null-misspecified)");
    }
    const MosaicConfig cfg = to_config(o);
    const auto res = run_null_distribution(cfg, a.rho, a.reps, {a.n, a.t_raw, sc == Scenario::NullMisspecified});
    auto f = open_output(a.output);
    f << "# command=simulate-null n=" << a.n << " t_raw=" << a.t_raw << " reps=" << a.reps << " rho=" << fmt(a.rho)
      << " scenario=" << a.scenario << " k=" << cfg.k << " h=" << fmt(cfg.h) << " seed=" << cfg.seed << '\n';
    f << "# mean=" << fmt(res.mean) << " sd=" << fmt(res.sd) << " ks=" << fmt(res.ks_distance)
      << " shapiro_p=" << fmt(res.normality_p) << '\n';
    for (double v : res.samples) f << fmt(v) << '\n';
    out << "mean " << fmt(res.mean) << " sd " << fmt(res.sd) << " ks " << fmt(res.ks_distance) << " shapiro_p "
        << fmt(res.normality_p) << '\n';
    return kExitOk;
}

struct PowerOptions {
    int n = 150;
    int t_raw = 240;
    int reps = 500;
    std::vector<double> rho{0.01};
    std::vector<int> s_star{0};
    std::vector<double> delta{1.0};
    std::string scenario = "known-rank";
    std::vector<std::string> detectors{"mosaic"};
    int cal_reps = 100;
    std::optional<int> tau_star;
    std::string output;
};

int run_power(const PowerOptions& a, const CommonOptions& o, std::ostream& out) {
    ExperimentGrid grid;
    grid.n = a.n;
    grid.t_raw = a.t_raw;
    grid.reps = a.reps;
    grid.rho_list = a.rho;
    grid.s_star_list = a.s_star;
    grid.delta_list = a.delta;
    if (a.scenario == "known-rank") {
        grid.misspecified = false;
    } else if (a.scenario == "misspecified") {
        grid.misspecified = true;
    } else {
        throw InvalidInput("--scenario must be known-rank or misspecified");
    }
    grid.detectors.clear();
    for (const auto& d : a.detectors) grid.detectors.push_back(detector_from_string(d));
    grid.cfg = to_config(o);
    grid.cal_reps = a.cal_reps;
    grid.tau_star = a.tau_star;
    grid.validate();

    auto f = open_output(a.output);
    f << "# command=power-table n=" << a.n << " t_raw=" << a.t_raw << " reps=" << a.reps << " tau_star="
      << grid.tau_star.value_or(a.t_raw / 2) << " scenario=" << a.scenario << " rho=" << join(a.rho)
      << " s_star=" << join(a.s_star) << " delta=" << join(a.delta) << " detectors=" << join(a.detectors)
      << " k=" << grid.cfg.k << " h=" << fmt(grid.cfg.h) << " alpha=" << fmt(grid.cfg.alpha)
      << " c_d=" << fmt(grid.cfg.c_d) << " cal_reps=" << a.cal_reps << " seed=" << grid.cfg.seed << '\n';
    f << power_csv_header() << '\n' << std::flush;
    run_power_table(grid, [&](const PowerRow& row) {
        f << power_csv_line(row) << '\n' << std::flush;
        out << power_csv_line(row) << '\n';
    });
    return kExitOk;
}

int run_centrality(const std::string& input, const std::string& output, std::ostream& out) {
    const NetSeries series = parse_series(std::filesystem::path(input));
    const CentralityProfile prof = centrality_profile(series);
    open_output(output) << prof.to_csv();
    std::size_t flagged = 0;
    for (bool b : prof.degenerate) flagged += b;
    out << "wrote " << prof.rows.size() << " rows; " << flagged << " empty snapshots\n";
    return kExitOk;
}

}  // namespace

int cli_main(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
    CLI::App app{"Change-point tests for dynamic networks"};
    app.footer(kFormatHelp);
    // "-h" would collide with the bandwidth flag --h; subcommands inherit this.
    app.set_help_flag("--help", "Print this help message and exit");
    app.require_subcommand(1);

    CommonOptions common;

    std::string input, output;
    std::vector<int> taus;
    auto* detect_cmd = app.add_subcommand("detect", "Run the empirical test on a series file and write a JSON report");
    detect_cmd->add_option("--input", input, "Series file (edge-list format)")->required();
    detect_cmd->add_option("--output", output, "Report path (JSON)")->required();
    detect_cmd->add_option("--taus", taus, "Candidate change points, e.g. \"4,8\" (half-series time)")->delimiter(',');
    add_common(detect_cmd, common);

    NullOptions null_opts;
    auto* null_cmd = app.add_subcommand("simulate-null", "Sample the null distribution of the standardised statistic");
    null_cmd->add_option("--n", null_opts.n, "Number of nodes")->capture_default_str();
    null_cmd->add_option("--t-raw", null_opts.t_raw, "Series length before splitting")->capture_default_str();
    null_cmd->add_option("--reps", null_opts.reps, "Monte Carlo replications")->capture_default_str();
    null_cmd->add_option("--rho", null_opts.rho, "Sparsity level rho")->capture_default_str();
    null_cmd->add_option("--scenario", null_opts.scenario, "null-rank2 | null-misspecified")->capture_default_str();
    null_cmd->add_option("--output", null_opts.output, "CSV path, one value per line")->required();
    add_common(null_cmd, common);

    PowerOptions power_opts;
    auto* power_cmd = app.add_subcommand("power-table", "Monte Carlo rejection rates over a (rho, s*, delta) grid");
    power_cmd->add_option("--n", power_opts.n, "Number of nodes")->capture_default_str();
    power_cmd->add_option("--t-raw", power_opts.t_raw, "Series length before splitting")->capture_default_str();
    power_cmd->add_option("--reps", power_opts.reps, "Monte Carlo replications")->capture_default_str();
    power_cmd->add_option("--rho", power_opts.rho, "Sparsity levels, comma separated")->delimiter(',');
    power_cmd->add_option("--s-star", power_opts.s_star, "Changed-block sizes, comma separated")->delimiter(',');
    power_cmd->add_option("--delta", power_opts.delta, "Change magnitudes, comma separated")->delimiter(',');
    power_cmd->add_option("--scenario", power_opts.scenario, "known-rank | misspecified")->capture_default_str();
    power_cmd->add_option("--detectors", power_opts.detectors, "mosaic,l2cusum,psi,phi")->delimiter(',');
    power_cmd->add_option("--cal-reps", power_opts.cal_reps, "Bootstrap size for l2cusum")->capture_default_str();
    power_cmd->add_option("--tau-star", power_opts.tau_star, "Raw-time change point (default t-raw/2)");
    power_cmd->add_option("--output", power_opts.output, "CSV path")->required();
    add_common(power_cmd, common);

    std::string cent_input, cent_output;
    auto* cent_cmd = app.add_subcommand("centrality", "Per-snapshot eigenvector centrality as CSV");
    cent_cmd->add_option("--input", cent_input, "Series file (edge-list format)")->required();
    cent_cmd->add_option("--output", cent_output, "CSV path")->required();

    std::vector<std::string> argv_store{"netmosaic"};
    argv_store.insert(argv_store.end(), args.begin(), args.end());
    std::vector<const char*> argv;
    for (const auto& a : argv_store) argv.push_back(a.c_str());

    try {
        app.parse(static_cast<int>(argv.size()), argv.data());
    } catch (const CLI::CallForHelp&) {
        out << app.help();
        return kExitOk;
    } catch (const CLI::CallForAllHelp&) {
        out << app.help("", CLI::AppFormatMode::All);
        return kExitOk;
    } catch (const CLI::ParseError& e) {
        err << "error: " << e.what() << '\n';
        return kExitUsage;
    }

    try {
        if (*detect_cmd) return run_detect(input, output, common, taus, out);
        if (*null_cmd) {
            if (null_opts.reps < 20) throw InvalidInput("--reps must be at least 20");
            return run_simulate_null(null_opts, common, out);
        }
        if (*power_cmd) return run_power(power_opts, common, out);
        if (*cent_cmd) return run_centrality(cent_input, cent_output, out);
    } catch (const InvalidInput& e) {
        err << "error: " << e.what() << '\n';
        return kExitUsage;
    } catch (const NumericalError& e) {
        err << "numerical error: " << e.what() << '\n';
        return kExitNumerical;
    } catch (const Error& e) {
        err << "data error: " << e.what() << '\n';
        return kExitData;
    }
    return kExitUsage;
}

}  // namespace netmosaic
