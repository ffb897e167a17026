#include <pybind11/eigen.h>
#include <pybind11/pybind11.h>
#include <pybind11/stl.h>

#include "cpd/asymptotics.hpp"
#include "cpd/cpd_core.hpp"
#include "cpd/mc_engine.hpp"
#include "cpd/nonparam.hpp"
#include "cpd/simgen.hpp"

namespace py = pybind11;
using namespace cpd;

namespace {

std::vector<Eigen::VectorXd> to_rows(const Eigen::MatrixXd& data) {
    std::vector<Eigen::VectorXd> rows;
    rows.reserve(static_cast<std::size_t>(data.rows()));
    for (long i = 0; i < data.rows(); ++i) rows.push_back(data.row(i));
    return rows;
}

py::dict report_dict(const DetectionReport& r) {
    py::dict d;
    d["stat"] = r.stat;
    d["stat_root"] = r.stat_root;
    d["k_hat"] = r.k_hat;
    d["lambda_hat"] = r.lambda_hat;
    d["delta_hat_sq"] = r.delta_hat_sq;
    d["reject"] = r.reject;
    d["alpha"] = r.alpha;
    d["critical_value"] = r.critical_value;
    if (r.ci) {
        d["ci_low"] = r.ci->first;
        d["ci_high"] = r.ci->second;
    } else {
        d["ci_low"] = py::none();
        d["ci_high"] = py::none();
    }
    return d;
}

} // namespace

PYBIND11_MODULE(_core, m) {
    m.doc() = "Change point detection for exponential-family time series";

    py::class_<ExpFamilyModel>(m, "Model")
        .def_static("normal_mean", &ExpFamilyModel::normal_mean, py::arg("sigma2"))
        .def_static("normal_meanvar", &ExpFamilyModel::normal_meanvar)
        .def_static("mvnormal_mean", &ExpFamilyModel::mvnormal_mean, py::arg("cov"))
        .def_property_readonly("d", &ExpFamilyModel::d)
        .def_property_readonly("m", &ExpFamilyModel::m);

    m.def(
        "detect",
        [](const Eigen::MatrixXd& data, const ExpFamilyModel& model, double alpha,
           const std::string& method, long bridge_reps, std::uint64_t seed, int parallelism) {
            CriticalValueSource source;
            if (method == "gumbel") source = CriticalValueSource::Gumbel;
            else if (method == "bridge") source = CriticalValueSource::Bridge;
            else throw InvalidInputError("unknown method: " + method);
            return report_dict(
                cpd::detect(to_rows(data), model, alpha, source, {bridge_reps, seed, parallelism}));
        },
        py::arg("data"), py::arg("model"), py::arg("alpha") = 0.05,
        py::arg("method") = "gumbel", py::arg("bridge_reps") = 10000,
        py::arg("seed") = 20240501, py::arg("parallelism") = 1,
        "Maximally selected likelihood-ratio test; rows of `data` are observations.");

    m.def(
        "confidence_interval",
        [](const Eigen::MatrixXd& data, const ExpFamilyModel& model, double alpha,
           long argmax_samples, std::uint64_t seed) {
            DetectionReport r = cpd::detect(to_rows(data), model, alpha,
                                            CriticalValueSource::Gumbel);
            if (!(r.delta_hat_sq > 0.0)) {
                throw InvalidInputError("estimated size of change is zero");
            }
            const EmpiricalDist xi = sample_argmax_what({argmax_samples, seed, 1});
            r.ci = cpd::confidence_interval(r.k_hat, r.delta_hat_sq, xi.quantile(alpha / 2.0),
                                            xi.quantile(1.0 - alpha / 2.0), data.rows());
            return report_dict(r);
        },
        py::arg("data"), py::arg("model"), py::arg("alpha") = 0.05,
        py::arg("argmax_samples") = 20000, py::arg("seed") = 20240501);

    m.def(
        "nonparam_detect",
        [](const std::vector<double>& increments, double C, double alpha) {
            const NonparamReport r = cpd::nonparam_detect(increments, {C, alpha});
            py::dict d;
            d["vstar"] = r.vstar;
            d["vn"] = r.vn;
            d["k_n"] = r.k_n;
            d["u_n"] = r.u_n;
            d["m_n"] = r.m_n;
            d["reject"] = r.reject;
            d["alpha"] = r.alpha;
            return d;
        },
        py::arg("increments"), py::arg("C") = 1.5, py::arg("alpha") = 0.05,
        "Block-ratio volatility jump test on a series of increments.");

    m.def("gumbel_critical_value", &gumbel_critical_value, py::arg("alpha"), py::arg("d"),
          py::arg("n"));
    m.def(
        "bridge_critical_value",
        [](double alpha, int d, long n, long reps, std::uint64_t seed, int parallelism) {
            return sup_bridge_critical_value(alpha, d, n, {reps, seed, parallelism});
        },
        py::arg("alpha"), py::arg("d"), py::arg("n"), py::arg("reps") = 10000,
        py::arg("seed") = 20240501, py::arg("parallelism") = 1);

    m.def(
        "simulate",
        [](long n, double mu1, double mu2, double sigma1, double sigma2, double gamma,
           const std::string& law, double kappa, double ar_coeff, std::uint64_t seed) {
            SimConfig cfg{n, mu1, mu2, sigma1, sigma2, gamma, LocationLaw::StoppingTime, kappa,
                          ar_coeff, seed};
            if (law == "uniform") cfg.location_law = LocationLaw::Uniform;
            else if (law == "truncnormal") cfg.location_law = LocationLaw::TruncNormal;
            else if (law != "stopping") throw InvalidInputError("unknown location law: " + law);
            const SimOutput out = gen_amoc_normal(cfg);
            py::dict d;
            d["data"] = out.data;
            d["k_star"] = out.k_star;
            d["lambda_star"] = out.lambda_star;
            return d;
        },
        py::arg("n") = 10000, py::arg("mu1") = -2.0, py::arg("mu2") = -2.0,
        py::arg("sigma1") = 1.0, py::arg("sigma2") = 1.1, py::arg("gamma") = 0.1,
        py::arg("law") = "stopping", py::arg("kappa") = -1.0, py::arg("ar_coeff") = 0.0,
        py::arg("seed") = 1,
        "Normal observations with at most one change; mean applied on the n^-1/2 scale.");

    m.def(
        "argmax_quantiles",
        [](long samples, std::uint64_t seed, const std::vector<double>& levels) {
            const EmpiricalDist dist = sample_argmax_what({samples, seed, 1});
            py::dict d;
            for (double p : levels) d[py::float_(p)] = dist.quantile(p);
            return d;
        },
        py::arg("samples") = 20000, py::arg("seed") = 20240501,
        py::arg("levels") = std::vector<double>{0.01, 0.05, 0.1, 0.25, 0.5, 0.75, 0.9, 0.95, 0.99},
        "Quantiles of the location estimation error limit law.");
}
