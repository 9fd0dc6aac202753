#include <pybind11/eigen.h>
#include <pybind11/functional.h>
#include <pybind11/numpy.h>
#include <pybind11/pybind11.h>
#include <pybind11/stl.h>
#include <pybind11/stl/filesystem.h>

#include "netmosaic/baseline.hpp"
#include "netmosaic/errors.hpp"
#include "netmosaic/harness.hpp"
#include "netmosaic/io.hpp"
#include "netmosaic/oracle.hpp"

namespace py = pybind11;
using namespace netmosaic;

namespace {

using EdgeList = std::vector<std::pair<int, int>>;

NetSeries series_from_lists(int n, const std::vector<EdgeList>& snaps) {
    std::vector<std::vector<Edge>> out(snaps.size());
    for (std::size_t t = 0; t < snaps.size(); ++t)
        for (const auto& [i, j] : snaps[t]) out[t].push_back({i, j});
    return NetSeries(n, std::move(out));
}

// (T, n, n) array of 0/1 entries.
NetSeries series_from_array(const py::array_t<double, py::array::c_style | py::array::forcecast>& a) {
    if (a.ndim() != 3 || a.shape(1) != a.shape(2)) throw InvalidInput("expected an array of shape (T, n, n)");
    const auto len = a.shape(0), n = a.shape(1);
    const auto v = a.unchecked<3>();
    std::vector<SymMatrix> snaps;
    snaps.reserve(static_cast<std::size_t>(len));
    for (py::ssize_t t = 0; t < len; ++t) {
        Eigen::MatrixXd m(n, n);
        for (py::ssize_t i = 0; i < n; ++i)
            for (py::ssize_t j = 0; j < n; ++j) m(i, j) = v(t, i, j);
        if ((m - m.transpose()).cwiseAbs().maxCoeff() > 0.0)
            throw InvalidInput("snapshot " + std::to_string(t) + " is not symmetric");
        snaps.push_back(SymMatrix::from_dense(m));
    }
    return NetSeries::from_matrices(snaps);
}

py::array_t<double> series_to_array(const NetSeries& s) {
    py::array_t<double> out({static_cast<py::ssize_t>(s.length()), static_cast<py::ssize_t>(s.n()),
                             static_cast<py::ssize_t>(s.n())});
    auto v = out.mutable_unchecked<3>();
    for (py::ssize_t t = 0; t < v.shape(0); ++t)
        for (py::ssize_t i = 0; i < v.shape(1); ++i)
            for (py::ssize_t j = 0; j < v.shape(2); ++j) v(t, i, j) = 0.0;
    for (int t = 0; t < s.length(); ++t)
        for (const auto& e : s.edges(t)) v(t, e.i, e.j) = v(t, e.j, e.i) = 1.0;
    return out;
}

}  // namespace

PYBIND11_MODULE(_core, m) {
    m.doc() = "Change-point tests for dynamic networks";

    auto base = py::register_exception<Error>(m, "NetmosaicError", PyExc_RuntimeError);
    py::register_exception<InvalidInput>(m, "InvalidInput", PyExc_ValueError);
    py::register_exception<DegenerateInput>(m, "DegenerateInput", base.ptr());
    py::register_exception<DataError>(m, "DataError", base.ptr());
    py::register_exception<NumericalError>(m, "NumericalError", base.ptr());

    py::class_<NetSeries>(m, "NetSeries")
        .def(py::init(&series_from_lists), py::arg("n"), py::arg("snapshots"),
             "Series from per-snapshot lists of (i, j) pairs.")
        .def_static("from_array", &series_from_array, py::arg("adjacency"))
        .def_property_readonly("n", &NetSeries::n)
        .def_property_readonly("length", &NetSeries::length)
        .def("__len__", &NetSeries::length)
        .def("edges",
             [](const NetSeries& s, int t) {
                 EdgeList out;
                 for (const auto& e : s.edges(t)) out.emplace_back(e.i, e.j);
                 return out;
             })
        .def("snapshot", [](const NetSeries& s, int t) { return s.snapshot(t).dense(); })
        .def("to_array", &series_to_array)
        .def("reversed", &NetSeries::reversed)
        .def("permuted", &NetSeries::permuted, py::arg("perm"))
        .def("__eq__", [](const NetSeries& a, const NetSeries& b) { return a == b; });

    py::class_<MosaicConfig>(m, "MosaicConfig")
        .def(py::init([](int k, double h, double alpha, double c_d, std::optional<std::vector<int>> taus,
                         std::uint64_t seed) {
                 MosaicConfig c{k, h, alpha, c_d, std::move(taus), seed};
                 c.validate();
                 return c;
             }),
             py::arg("k") = 2, py::arg("h") = 0.1, py::arg("alpha") = 0.05, py::arg("c_d") = 1.0,
             py::arg("taus") = py::none(), py::arg("seed") = 0)
        .def_readwrite("k", &MosaicConfig::k)
        .def_readwrite("h", &MosaicConfig::h)
        .def_readwrite("alpha", &MosaicConfig::alpha)
        .def_readwrite("c_d", &MosaicConfig::c_d)
        .def_readwrite("taus", &MosaicConfig::tau_override)
        .def_readwrite("seed", &MosaicConfig::seed);

    py::class_<TauComponents>(m, "TauComponents")
        .def_readonly("tau", &TauComponents::tau)
        .def_readonly("screened", &TauComponents::screened)
        .def_readonly("omega", &TauComponents::omega);

    py::class_<TestReport>(m, "TestReport")
        .def_readonly("statistic", &TestReport::statistic)
        .def_readonly("threshold", &TestReport::threshold)
        .def_readonly("reject", &TestReport::reject)
        .def_readonly("per_tau", &TestReport::per_tau)
        .def_readonly("screened_edges", &TestReport::screened_edges)
        .def_readonly("rho_hat", &TestReport::rho_hat)
        .def_readonly("sigma2_shat", &TestReport::sigma2_shat)
        .def_readonly("sigma2_omega", &TestReport::sigma2_omega)
        .def_readonly("tau_argmax", &TestReport::tau_argmax)
        .def("__repr__", [](const TestReport& r) {
            return "TestReport(statistic=" + std::to_string(r.statistic) + ", threshold=" +
                   std::to_string(r.threshold) + ", reject=" + (r.reject ? "True" : "False") + ")";
        });

    m.def("mosaic_test", &mosaic_test, py::arg("series"), py::arg("config") = MosaicConfig{},
          py::call_guard<py::gil_scoped_release>());

    py::class_<OracleConfig>(m, "OracleConfig")
        .def(py::init([](int sparsity, double rho, int k, double h, double alpha, double c_d, const std::string& d_choice,
                         std::optional<std::vector<int>> taus) {
                 return OracleConfig{sparsity, rho, k, h, alpha, c_d, d_choice_from_string(d_choice), taus};
             }),
             py::arg("sparsity"), py::arg("rho"), py::arg("k") = 2, py::arg("h") = 0.1, py::arg("alpha") = 0.05,
             py::arg("c_d") = 1.0, py::arg("d_choice") = "lower", py::arg("taus") = py::none())
        .def_readwrite("sparsity", &OracleConfig::sparsity)
        .def_readwrite("rho", &OracleConfig::rho);

    py::class_<OracleTau>(m, "OracleTau")
        .def_readonly("tau", &OracleTau::tau)
        .def_readonly("screened", &OracleTau::screened)
        .def_readonly("omega", &OracleTau::omega)
        .def_readonly("screened_edges", &OracleTau::screened_edges);

    py::class_<OracleDecision>(m, "OracleDecision")
        .def_readonly("reject", &OracleDecision::reject)
        .def_readonly("statistic", &OracleDecision::statistic)
        .def_readonly("threshold", &OracleDecision::threshold)
        .def_readonly("screen_cut", &OracleDecision::screen_cut)
        .def_readonly("per_tau", &OracleDecision::per_tau);

    m.def("psi_test", &psi_test, py::arg("series"), py::arg("config"));
    m.def("phi_test", &phi_test, py::arg("series"), py::arg("config"));
    m.def("psi_level", &psi_level, py::arg("n"));
    m.def("c_alpha", &c_alpha, py::arg("alpha"), py::arg("h"));

    m.def(
        "l2_cusum_stat",
        [](const NetSeries& s, double h, std::optional<std::vector<int>> taus) {
            return l2_cusum_stat(s, candidate_taus(s.length(), h, taus));
        },
        py::arg("series"), py::arg("h") = 0.1, py::arg("taus") = py::none());
    m.def(
        "l2_cusum_test",
        [](const NetSeries& s, int k, double h, double alpha, int cal_reps, std::uint64_t seed) {
            RngStream rng(seed);
            const auto d = l2_cusum_test(s, candidate_taus(s.length(), h), k, alpha, cal_reps, rng);
            return py::dict(py::arg("reject") = d.reject, py::arg("degenerate") = d.degenerate,
                            py::arg("statistic") = d.statistic, py::arg("critical_value") = d.critical_value);
        },
        py::arg("series"), py::arg("k") = 2, py::arg("h") = 0.1, py::arg("alpha") = 0.05, py::arg("cal_reps") = 100,
        py::arg("seed") = 0);

    m.def("candidate_taus", [](int length, double h) { return candidate_taus(length, h).values(); },
          py::arg("length"), py::arg("h"));

    m.def(
        "make_mean",
        [](int n, double rho, const std::string& scenario, int s_star, double delta, std::uint64_t seed) {
            const auto p = make_mean({n, rho, scenario_from_string(scenario), s_star, delta, seed});
            return py::make_tuple(p.theta1.dense(), p.theta2.dense());
        },
        py::arg("n"), py::arg("rho"), py::arg("scenario") = "null-rank2", py::arg("s_star") = 0,
        py::arg("delta") = 0.0, py::arg("seed") = 0);
    m.def(
        "simulate",
        [](int n, double rho, const std::string& scenario, int s_star, double delta, int t_raw,
           std::optional<int> tau_star, std::uint64_t seed) {
            const auto p = make_mean({n, rho, scenario_from_string(scenario), s_star, delta, seed});
            const bool change = !(p.theta1.dense() == p.theta2.dense());
            RngStream rng(seed, 1);
            return sample_series({p.theta1, p.theta2, change ? tau_star.value_or(t_raw / 2) : t_raw, t_raw}, rng);
        },
        py::arg("n"), py::arg("rho"), py::arg("scenario") = "null-rank2", py::arg("s_star") = 0,
        py::arg("delta") = 0.0, py::arg("t_raw") = 240, py::arg("tau_star") = py::none(), py::arg("seed") = 0,
        "Sample a series from the simulation designs; the change sits at tau_star (default t_raw / 2).");

    m.def(
        "null_distribution",
        [](double rho, int reps, int n, int t_raw, bool misspecified, const MosaicConfig& cfg) {
            NullDistribution d;
            {
                py::gil_scoped_release release;
                d = run_null_distribution(cfg, rho, reps, {n, t_raw, misspecified});
            }
            return py::dict(py::arg("samples") = d.samples, py::arg("mean") = d.mean, py::arg("sd") = d.sd,
                            py::arg("ks_distance") = d.ks_distance, py::arg("normality_p") = d.normality_p);
        },
        py::arg("rho"), py::arg("reps"), py::arg("n") = 150, py::arg("t_raw") = 240, py::arg("misspecified") = false,
        py::arg("config") = MosaicConfig{});

    m.def(
        "power_table",
        [](std::vector<double> rho, std::vector<int> s_star, std::vector<double> delta, int reps, int n, int t_raw,
           bool misspecified, std::vector<std::string> detectors, int cal_reps, std::optional<int> tau_star,
           const MosaicConfig& cfg) {
            ExperimentGrid grid;
            grid.n = n;
            grid.t_raw = t_raw;
            grid.reps = reps;
            grid.rho_list = std::move(rho);
            grid.s_star_list = std::move(s_star);
            grid.delta_list = std::move(delta);
            grid.misspecified = misspecified;
            grid.cfg = cfg;
            grid.detectors.clear();
            for (const auto& d : detectors) grid.detectors.push_back(detector_from_string(d));
            grid.cal_reps = cal_reps;
            grid.tau_star = tau_star;
            PowerTable table;
            {
                py::gil_scoped_release release;
                table = run_power_table(grid);
            }
            py::list rows;
            for (const auto& r : table.rows) {
                rows.append(py::dict(py::arg("rho") = r.rho, py::arg("s_star") = r.s_star, py::arg("delta") = r.delta,
                                     py::arg("detector") = std::string(to_string(r.detector)),
                                     py::arg("power") = r.power(), py::arg("se") = r.se(), py::arg("reps") = r.reps));
            }
            return rows;
        },
        py::arg("rho"), py::arg("s_star"), py::arg("delta"), py::arg("reps") = 500, py::arg("n") = 150,
        py::arg("t_raw") = 240, py::arg("misspecified") = false,
        py::arg("detectors") = std::vector<std::string>{"mosaic"}, py::arg("cal_reps") = 100,
        py::arg("tau_star") = py::none(), py::arg("config") = MosaicConfig{});

    m.def(
        "centrality_profile",
        [](const NetSeries& s) {
            const auto p = centrality_profile(s);
            Eigen::MatrixXd out(s.length(), s.n());
            for (int t = 0; t < s.length(); ++t)
                for (int i = 0; i < s.n(); ++i) out(t, i) = p.rows[static_cast<std::size_t>(t)][static_cast<std::size_t>(i)];
            return py::make_tuple(out, p.degenerate);
        },
        py::arg("series"));

    m.def("parse_series", py::overload_cast<const std::filesystem::path&>(&parse_series), py::arg("path"));
    m.def("write_series", py::overload_cast<const std::filesystem::path&, const NetSeries&>(&write_series),
          py::arg("path"), py::arg("series"));

    m.def("normal_quantile", &normal_quantile, py::arg("p"));
    m.def(
        "shapiro_wilk",
        [](const std::vector<double>& x) {
            const auto r = shapiro_wilk(x);
            return py::make_tuple(r.w, r.p_value);
        },
        py::arg("samples"));

#ifdef VERSION_INFO
#define NETMOSAIC_STR(x) #x
#define NETMOSAIC_XSTR(x) NETMOSAIC_STR(x)
    m.attr("__version__") = NETMOSAIC_XSTR(VERSION_INFO);
#else
    m.attr("__version__") = "dev";
#endif
}
