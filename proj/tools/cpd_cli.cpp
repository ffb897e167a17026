// Command-line front end: detection on CSV data, dataset simulation,
// critical-value tables, and replication experiments with plot-ready output.

#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <sstream>
#include <string>
#include <vector>

#include <CLI11.hpp>
#include <json.hpp>

#include "cpd/asymptotics.hpp"
#include "cpd/cpd_core.hpp"
#include "cpd/errors.hpp"
#include "cpd/mc_engine.hpp"
#include "cpd/nonparam.hpp"
#include "cpd/simgen.hpp"

namespace fs = std::filesystem;
using nlohmann::json;

namespace {

constexpr int kSchemaVersion = 1;

int default_parallelism() {
    if (const char* env = std::getenv("CPD_PARALLELISM")) {
        const int p = std::atoi(env);
        if (p >= 1) return p;
    }
    return 1;
}

std::vector<Eigen::VectorXd> read_csv(const std::string& path, bool skip_header) {
    std::ifstream in(path);
    if (!in) throw cpd::InvalidInputError("cannot open input file: " + path);
    std::vector<Eigen::VectorXd> rows;
    std::string line;
    bool first = true;
    long lineno = 0;
    while (std::getline(in, line)) {
        ++lineno;
        if (first && skip_header) {
            first = false;
            continue;
        }
        first = false;
        if (line.empty() || line == "\r") continue;
        std::vector<double> values;
        std::stringstream ss(line);
        std::string cell;
        while (std::getline(ss, cell, ',')) {
            std::size_t pos = 0;
            double v;
            try {
                v = std::stod(cell, &pos);
            } catch (const std::exception&) {
                throw cpd::InvalidInputError(path + ":" + std::to_string(lineno) +
                                             ": not a number: " + cell);
            }
            values.push_back(v);
        }
        if (values.empty()) {
            throw cpd::InvalidInputError(path + ":" + std::to_string(lineno) + ": empty row");
        }
        Eigen::VectorXd row(static_cast<long>(values.size()));
        for (std::size_t j = 0; j < values.size(); ++j) row[static_cast<long>(j)] = values[j];
        if (!rows.empty() && rows.front().size() != row.size()) {
            throw cpd::InvalidInputError(path + ":" + std::to_string(lineno) +
                                         ": inconsistent column count");
        }
        rows.push_back(std::move(row));
    }
    if (rows.empty()) throw cpd::InvalidInputError(path + ": no data rows");
    return rows;
}

Eigen::MatrixXd read_matrix_csv(const std::string& path) {
    const auto rows = read_csv(path, false);
    Eigen::MatrixXd m(static_cast<long>(rows.size()), rows.front().size());
    for (std::size_t i = 0; i < rows.size(); ++i) m.row(static_cast<long>(i)) = rows[i];
    return m;
}

cpd::ExpFamilyModel make_model(const std::string& name, double sigma2,
                               const std::string& cov_path) {
    if (name == "normal-mean") return cpd::ExpFamilyModel::normal_mean(sigma2);
    if (name == "normal-meanvar") return cpd::ExpFamilyModel::normal_meanvar();
    if (name == "mvnormal-mean") {
        if (cov_path.empty()) {
            throw cpd::InvalidInputError("mvnormal-mean requires --cov FILE");
        }
        return cpd::ExpFamilyModel::mvnormal_mean(read_matrix_csv(cov_path));
    }
    throw cpd::InvalidInputError("unknown model: " + name);
}

json report_json(const cpd::DetectionReport& r) {
    json j{{"schema_version", kSchemaVersion},
           {"stat", r.stat},
           {"stat_root", r.stat_root},
           {"k_hat", r.k_hat},
           {"lambda_hat", r.lambda_hat},
           {"delta_hat_sq", r.delta_hat_sq},
           {"reject", r.reject},
           {"alpha", r.alpha},
           {"critical_value", r.critical_value}};
    if (r.ci) {
        j["ci_low"] = r.ci->first;
        j["ci_high"] = r.ci->second;
    } else {
        j["ci_low"] = nullptr;
        j["ci_high"] = nullptr;
    }
    return j;
}

void emit(const json& j, const std::string& out_path) {
    if (out_path.empty()) {
        std::cout << j.dump(2) << "\n";
        return;
    }
    std::ofstream out(out_path);
    if (!out) throw cpd::InvalidInputError("cannot write output file: " + out_path);
    out << j.dump(2) << "\n";
}

void write_samples_csv(const fs::path& path, const std::vector<double>& samples) {
    std::ofstream out(path);
    if (!out) throw cpd::InvalidInputError("cannot write file: " + path.string());
    out.precision(17);
    for (double v : samples) out << v << "\n";
}

// Minimal SVG histogram: bars plus axis labels. The CSV next to it is the
// primary artifact; this is just a quick visual check.
void write_hist_svg(const fs::path& path, const std::vector<double>& samples,
                    const std::string& title) {
    if (samples.empty()) return;
    const int bins = 40, width = 640, height = 400, margin = 50;
    double lo = samples[0], hi = samples[0];
    for (double v : samples) {
        lo = std::min(lo, v);
        hi = std::max(hi, v);
    }
    if (hi <= lo) hi = lo + 1.0;
    std::vector<long> counts(bins, 0);
    for (double v : samples) {
        int b = static_cast<int>((v - lo) / (hi - lo) * bins);
        counts[static_cast<std::size_t>(std::clamp(b, 0, bins - 1))]++;
    }
    long peak = 1;
    for (long c : counts) peak = std::max(peak, c);

    std::ofstream out(path);
    if (!out) throw cpd::InvalidInputError("cannot write file: " + path.string());
    out << "<svg xmlns=\"http://www.w3.org/2000/svg\" width=\"" << width << "\" height=\""
        << height << "\">\n";
    out << "<text x=\"" << width / 2 << "\" y=\"20\" text-anchor=\"middle\">" << title
        << "</text>\n";
    const double plot_w = width - 2.0 * margin, plot_h = height - 2.0 * margin;
    for (int b = 0; b < bins; ++b) {
        const double h = plot_h * static_cast<double>(counts[static_cast<std::size_t>(b)]) /
                         static_cast<double>(peak);
        const double x = margin + plot_w * b / bins;
        out << "<rect x=\"" << x << "\" y=\"" << (height - margin - h) << "\" width=\""
            << (plot_w / bins - 1.0) << "\" height=\"" << h << "\" fill=\"steelblue\"/>\n";
    }
    out.precision(6);
    out << "<line x1=\"" << margin << "\" y1=\"" << (height - margin) << "\" x2=\""
        << (width - margin) << "\" y2=\"" << (height - margin) << "\" stroke=\"black\"/>\n";
    out << "<text x=\"" << margin << "\" y=\"" << (height - margin + 20) << "\">" << lo
        << "</text>\n";
    out << "<text x=\"" << (width - margin) << "\" y=\"" << (height - margin + 20)
        << "\" text-anchor=\"end\">" << hi << "</text>\n";
    out << "<text x=\"" << (margin - 10) << "\" y=\"" << margin
        << "\" text-anchor=\"end\">" << peak << "</text>\n";
    out << "</svg>\n";
}

void write_path_svg(const fs::path& path, const std::vector<double>& values,
                    const std::string& title) {
    if (values.size() < 2) return;
    const int width = 640, height = 400, margin = 50;
    double lo = values[0], hi = values[0];
    for (double v : values) {
        lo = std::min(lo, v);
        hi = std::max(hi, v);
    }
    if (hi <= lo) hi = lo + 1.0;
    std::ofstream out(path);
    if (!out) throw cpd::InvalidInputError("cannot write file: " + path.string());
    out << "<svg xmlns=\"http://www.w3.org/2000/svg\" width=\"" << width << "\" height=\""
        << height << "\">\n";
    out << "<text x=\"" << width / 2 << "\" y=\"20\" text-anchor=\"middle\">" << title
        << "</text>\n";
    out << "<polyline fill=\"none\" stroke=\"steelblue\" points=\"";
    const double plot_w = width - 2.0 * margin, plot_h = height - 2.0 * margin;
    const std::size_t n = values.size();
    const std::size_t stride = std::max<std::size_t>(1, n / 2000);
    out.precision(4);
    for (std::size_t i = 0; i < n; i += stride) {
        const double x = margin + plot_w * static_cast<double>(i) / static_cast<double>(n - 1);
        const double y = height - margin - plot_h * (values[i] - lo) / (hi - lo);
        out << x << "," << y << " ";
    }
    out << "\"/>\n";
    out << "<line x1=\"" << margin << "\" y1=\"" << (height - margin) << "\" x2=\""
        << (width - margin) << "\" y2=\"" << (height - margin) << "\" stroke=\"black\"/>\n";
    out.precision(6);
    out << "<text x=\"" << (margin - 10) << "\" y=\"" << (height - margin)
        << "\" text-anchor=\"end\">" << lo << "</text>\n";
    out << "<text x=\"" << (margin - 10) << "\" y=\"" << margin << "\" text-anchor=\"end\">"
        << hi << "</text>\n";
    out << "</svg>\n";
}

json quantile_table(const cpd::EmpiricalDist& dist) {
    json q = json::object();
    for (double p : cpd::kSummaryQuantiles) {
        std::ostringstream key;
        key << p;
        q[key.str()] = dist.quantile(p);
    }
    return q;
}

struct DetectArgs {
    std::string input, model = "normal-meanvar", method = "gumbel", cov, out;
    double sigma2 = 1.0, alpha = 0.05, block_C = 1.5;
    bool header = false, want_ci = false;
    long bridge_reps = 10000;
    std::uint64_t seed = 20240501;
    long argmax_samples = 20000;
};

int run_detect(const DetectArgs& a) {
    if (a.method == "nonparam") {
        const auto rows = read_csv(a.input, a.header);
        std::vector<double> increments;
        increments.reserve(rows.size());
        for (const auto& r : rows) {
            if (r.size() != 1) {
                throw cpd::InvalidInputError("nonparam method expects one column of increments");
            }
            increments.push_back(r[0]);
        }
        const cpd::NonparamReport r = cpd::nonparam_detect(increments, {a.block_C, a.alpha});
        emit(json{{"schema_version", kSchemaVersion},
                  {"vstar", r.vstar},
                  {"vn", r.vn},
                  {"k_n", r.k_n},
                  {"u_n", r.u_n},
                  {"m_n", r.m_n},
                  {"reject", r.reject},
                  {"alpha", r.alpha}},
             a.out);
        return 0;
    }
    const auto data = read_csv(a.input, a.header);
    const cpd::ExpFamilyModel model = make_model(a.model, a.sigma2, a.cov);
    const auto source = a.method == "bridge" ? cpd::CriticalValueSource::Bridge
                                             : cpd::CriticalValueSource::Gumbel;
    if (a.method != "gumbel" && a.method != "bridge") {
        throw cpd::InvalidInputError("unknown method: " + a.method);
    }
    cpd::DetectionReport report =
        cpd::detect(data, model, a.alpha, source, {a.bridge_reps, a.seed, default_parallelism()});
    if (a.want_ci) {
        const cpd::EmpiricalDist xi = cpd::sample_argmax_what(
            {a.argmax_samples, a.seed ^ 0x78690000ULL, default_parallelism()});
        report.ci = cpd::confidence_interval(report.k_hat, report.delta_hat_sq,
                                             xi.quantile(a.alpha / 2.0),
                                             xi.quantile(1.0 - a.alpha / 2.0),
                                             static_cast<long>(data.size()));
    }
    emit(report_json(report), a.out);
    return 0;
}

int run_ci(const DetectArgs& a) {
    const auto data = read_csv(a.input, a.header);
    const cpd::ExpFamilyModel model = make_model(a.model, a.sigma2, a.cov);
    cpd::DetectionReport report =
        cpd::detect(data, model, a.alpha, cpd::CriticalValueSource::Gumbel);
    if (!(report.delta_hat_sq > 0.0)) {
        throw cpd::InvalidInputError("estimated size of change is zero; nothing to localize");
    }
    const cpd::EmpiricalDist xi = cpd::sample_argmax_what(
        {a.argmax_samples, a.seed, default_parallelism()});
    const auto ci = cpd::confidence_interval(report.k_hat, report.delta_hat_sq,
                                             xi.quantile(a.alpha / 2.0),
                                             xi.quantile(1.0 - a.alpha / 2.0),
                                             static_cast<long>(data.size()));
    emit(json{{"schema_version", kSchemaVersion},
              {"k_hat", report.k_hat},
              {"lambda_hat", report.lambda_hat},
              {"delta_hat_sq", report.delta_hat_sq},
              {"alpha", a.alpha},
              {"ci_low", ci.first},
              {"ci_high", ci.second}},
         a.out);
    return 0;
}

struct SimulateArgs {
    std::string out_prefix = "sim";
    cpd::SimConfig cfg;
    std::string law = "stopping";
};

int run_simulate(const SimulateArgs& a) {
    cpd::SimConfig cfg = a.cfg;
    if (a.law == "stopping") cfg.location_law = cpd::LocationLaw::StoppingTime;
    else if (a.law == "uniform") cfg.location_law = cpd::LocationLaw::Uniform;
    else if (a.law == "truncnormal") cfg.location_law = cpd::LocationLaw::TruncNormal;
    else throw cpd::InvalidInputError("unknown location law: " + a.law);

    const cpd::SimOutput sim = cpd::gen_amoc_normal(cfg);
    write_samples_csv(a.out_prefix + ".csv", sim.data);
    emit(json{{"schema_version", kSchemaVersion},
              {"k_star", sim.k_star},
              {"lambda_star", sim.lambda_star},
              {"config",
               {{"n", cfg.n},
                {"mu1", cfg.mu1},
                {"mu2", cfg.mu2},
                {"sigma1", cfg.sigma1},
                {"sigma2", cfg.sigma2},
                {"gamma", cfg.gamma},
                {"location_law", a.law},
                {"kappa", cfg.kappa},
                {"ar_coeff", cfg.ar_coeff},
                {"seed", cfg.seed}}}},
         a.out_prefix + ".json");
    return 0;
}

struct CritvalArgs {
    std::vector<double> alphas{0.10, 0.05, 0.01};
    int d = 2;
    long n = 10000;
    std::string method = "gumbel", format = "json", out;
    long reps = 10000;
    std::uint64_t seed = 20240501;
};

int run_critvals(const CritvalArgs& a) {
    std::vector<std::pair<double, double>> table;
    for (double alpha : a.alphas) {
        double kappa;
        if (a.method == "gumbel") {
            kappa = cpd::gumbel_critical_value(alpha, a.d, a.n);
        } else if (a.method == "bridge") {
            kappa = cpd::sup_bridge_critical_value(alpha, a.d, a.n,
                                                   {a.reps, a.seed, default_parallelism()});
        } else {
            throw cpd::InvalidInputError("unknown method: " + a.method);
        }
        table.emplace_back(alpha, kappa);
    }
    if (a.format == "csv") {
        std::ostream* os = &std::cout;
        std::ofstream file;
        if (!a.out.empty()) {
            file.open(a.out);
            if (!file) throw cpd::InvalidInputError("cannot write output file: " + a.out);
            os = &file;
        }
        os->precision(17);
        *os << "alpha,d,n,method,kappa\n";
        for (const auto& [alpha, kappa] : table) {
            *os << alpha << "," << a.d << "," << a.n << "," << a.method << "," << kappa << "\n";
        }
        return 0;
    }
    json rows = json::array();
    for (const auto& [alpha, kappa] : table) {
        rows.push_back({{"alpha", alpha}, {"d", a.d}, {"n", a.n}, {"method", a.method},
                        {"kappa", kappa}});
    }
    emit(json{{"schema_version", kSchemaVersion}, {"critical_values", rows}}, a.out);
    return 0;
}

struct ArgmaxArgs {
    long samples = 20000;
    std::uint64_t seed = 20240501;
    double half_width = 200.0, step = 0.01;
    std::string out;
};

int run_argmax_dist(const ArgmaxArgs& a) {
    const cpd::EmpiricalDist dist = cpd::sample_argmax_what(
        {a.samples, a.seed, default_parallelism()}, {a.half_width, a.step});
    emit(json{{"schema_version", kSchemaVersion},
              {"samples", a.samples},
              {"half_width", a.half_width},
              {"step", a.step},
              {"quantiles", quantile_table(dist)}},
         a.out);
    return 0;
}

struct ReplicateArgs {
    std::string figure, spec_path, out_dir = "figure-out";
    long replications = 500;
    std::uint64_t seed = 20240501;
    int parallelism = default_parallelism();
};

void write_experiment_outputs(const fs::path& dir, const std::string& tag,
                              const cpd::ExperimentResult& result) {
    json summary{{"schema_version", kSchemaVersion}, {"skipped", result.skipped}};
    for (const auto& [name, dist] : result.metrics) {
        write_samples_csv(dir / (tag + "_" + name + ".csv"), dist.samples());
        write_hist_svg(dir / (tag + "_" + name + ".svg"), dist.samples(), tag + " " + name);
        summary["metrics"][name] = {{"count", dist.count()},
                                    {"mean", dist.mean()},
                                    {"quantiles", quantile_table(dist)}};
    }
    std::ofstream out(dir / (tag + "_summary.json"));
    out << summary.dump(2) << "\n";
}

int run_replicate(const ReplicateArgs& a) {
    fs::create_directories(a.out_dir);
    const fs::path dir(a.out_dir);

    if (!a.spec_path.empty()) {
        std::ifstream in(a.spec_path);
        if (!in) throw cpd::InvalidInputError("cannot open spec file: " + a.spec_path);
        auto [spec, mc] = cpd::parse_experiment_spec(in);
        mc.parallelism = a.parallelism;
        write_experiment_outputs(dir, "experiment", cpd::run_experiment(spec, mc));
        return 0;
    }

    const cpd::MonteCarloConfig mc{a.replications, a.seed, a.parallelism};
    const cpd::MonteCarloConfig mc_null{a.replications, a.seed ^ 0x6e756c6cULL, a.parallelism};

    auto amoc_detect = [&](const cpd::SimConfig& cfg, const std::string& tag,
                           const cpd::MonteCarloConfig& run_mc) {
        cpd::ExperimentSpec spec;
        spec.generator = cfg;
        spec.pipeline = cpd::Pipeline::ParametricDetect;
        write_experiment_outputs(dir, tag, cpd::run_experiment(spec, run_mc));
    };
    auto sample_path = [&](const cpd::SimConfig& cfg, const std::string& tag) {
        cpd::SimConfig one = cfg;
        one.seed = cpd::seed_stream(a.seed, 0);
        const cpd::SimOutput sim = cpd::gen_amoc_normal(one);
        write_samples_csv(dir / (tag + "_path.csv"), sim.partial_sums);
        write_path_svg(dir / (tag + "_path.svg"), sim.partial_sums, tag + " sample path");
    };

    if (a.figure == "vol-jump" || a.figure == "mean-jump" || a.figure == "ar-dependent") {
        cpd::SimConfig alt;
        if (a.figure == "mean-jump") {
            alt.mu2 = -12.0;
            alt.sigma2 = 1.0;
        } else if (a.figure == "ar-dependent") {
            alt.ar_coeff = 0.5;
        }
        cpd::SimConfig null_cfg = alt;
        null_cfg.mu2 = null_cfg.mu1;
        null_cfg.sigma2 = null_cfg.sigma1;
        sample_path(alt, a.figure);
        amoc_detect(alt, a.figure + "_alt", mc);
        amoc_detect(null_cfg, a.figure + "_null", mc_null);
        return 0;
    }
    if (a.figure == "deviation") {
        cpd::SimConfig cfg;
        cfg.mu2 = -12.0;
        cfg.sigma2 = 1.0;
        sample_path(cfg, a.figure);
        cpd::ExperimentSpec spec;
        spec.generator = cfg;
        spec.pipeline = cpd::Pipeline::DeviationStat;
        write_experiment_outputs(dir, "deviation", cpd::run_experiment(spec, mc));
        const cpd::EmpiricalDist xi = cpd::sample_argmax_what(
            {std::max(20000L, a.replications), a.seed ^ 0x78690000ULL, a.parallelism});
        write_samples_csv(dir / "deviation_argmax_limit.csv", xi.samples());
        write_hist_svg(dir / "deviation_argmax_limit.svg", xi.samples(), "argmax limit");
        return 0;
    }
    if (a.figure == "nonparam-vol") {
        cpd::ItoConfig alt;
        cpd::ItoConfig null_cfg = alt;
        null_cfg.jump_size = 0.0;
        cpd::ItoConfig one = alt;
        one.seed = cpd::seed_stream(a.seed, 0);
        const cpd::ItoOutput path = cpd::gen_ito_path(one);
        write_samples_csv(dir / "nonparam-vol_path.csv", path.path);
        write_path_svg(dir / "nonparam-vol_path.svg", path.path, "nonparam-vol sample path");

        for (const auto& [cfg, tag, run_mc] :
             {std::tuple{alt, std::string("nonparam-vol_alt"), mc},
              std::tuple{null_cfg, std::string("nonparam-vol_null"), mc_null}}) {
            cpd::ExperimentSpec spec;
            spec.generator = cfg;
            spec.pipeline = cpd::Pipeline::NonparamDetect;
            write_experiment_outputs(dir, tag, cpd::run_experiment(spec, run_mc));
        }
        return 0;
    }
    throw cpd::InvalidInputError(
        "unknown figure id: " + a.figure +
        " (valid: vol-jump, mean-jump, deviation, ar-dependent, nonparam-vol)");
}

} // namespace

int main(int argc, char** argv) {
    CLI::App app{"Change point detection toolkit"};
    app.require_subcommand(1);

    DetectArgs det;
    auto* detect_cmd = app.add_subcommand("detect", "Test a CSV series for a change point");
    detect_cmd->add_option("input", det.input, "CSV file, one observation per row")->required();
    detect_cmd->add_option("--model", det.model, "normal-mean | normal-meanvar | mvnormal-mean");
    detect_cmd->add_option("--sigma2", det.sigma2, "known variance for normal-mean");
    detect_cmd->add_option("--cov", det.cov, "covariance CSV for mvnormal-mean");
    detect_cmd->add_option("--alpha", det.alpha, "test level");
    detect_cmd->add_option("--method", det.method, "gumbel | bridge | nonparam");
    detect_cmd->add_option("--C", det.block_C, "block constant (nonparam)");
    detect_cmd->add_flag("--ci", det.want_ci, "attach a confidence interval");
    detect_cmd->add_flag("--header", det.header, "skip one header line");
    detect_cmd->add_option("--bridge-reps", det.bridge_reps, "bridge Monte Carlo size");
    detect_cmd->add_option("--seed", det.seed, "Monte Carlo seed");
    detect_cmd->add_option("--out", det.out, "write JSON here instead of stdout");

    DetectArgs ci_args;
    auto* ci_cmd = app.add_subcommand("ci", "Confidence interval for the change location");
    ci_cmd->add_option("input", ci_args.input, "CSV file")->required();
    ci_cmd->add_option("--model", ci_args.model, "normal-mean | normal-meanvar | mvnormal-mean");
    ci_cmd->add_option("--sigma2", ci_args.sigma2, "known variance for normal-mean");
    ci_cmd->add_option("--cov", ci_args.cov, "covariance CSV for mvnormal-mean");
    ci_cmd->add_option("--alpha", ci_args.alpha, "interval level");
    ci_cmd->add_option("--argmax-samples", ci_args.argmax_samples, "limit-law sample size");
    ci_cmd->add_option("--seed", ci_args.seed, "Monte Carlo seed");
    ci_cmd->add_flag("--header", ci_args.header, "skip one header line");
    ci_cmd->add_option("--out", ci_args.out, "write JSON here instead of stdout");

    SimulateArgs sim;
    auto* sim_cmd = app.add_subcommand("simulate", "Generate a synthetic dataset");
    sim_cmd->add_option("--out", sim.out_prefix, "output prefix (writes .csv and .json)");
    sim_cmd->add_option("--n", sim.cfg.n, "sample size");
    sim_cmd->add_option("--mu1", sim.cfg.mu1, "pre-change mean (applied on the n^-1/2 scale)");
    sim_cmd->add_option("--mu2", sim.cfg.mu2, "post-change mean");
    sim_cmd->add_option("--sigma1", sim.cfg.sigma1, "pre-change standard deviation");
    sim_cmd->add_option("--sigma2", sim.cfg.sigma2, "post-change standard deviation");
    sim_cmd->add_option("--gamma", sim.cfg.gamma, "trimming fraction");
    sim_cmd->add_option("--law", sim.law, "stopping | uniform | truncnormal");
    sim_cmd->add_option("--kappa", sim.cfg.kappa, "stopping barrier");
    sim_cmd->add_option("--ar", sim.cfg.ar_coeff, "AR(1) coefficient");
    sim_cmd->add_option("--seed", sim.cfg.seed, "seed");

    CritvalArgs cv;
    auto* cv_cmd = app.add_subcommand("critvals", "Critical value table");
    cv_cmd->add_option("--alpha", cv.alphas, "levels");
    cv_cmd->add_option("--d", cv.d, "parameter dimension");
    cv_cmd->add_option("--n", cv.n, "sample size");
    cv_cmd->add_option("--method", cv.method, "gumbel | bridge");
    cv_cmd->add_option("--reps", cv.reps, "bridge Monte Carlo size");
    cv_cmd->add_option("--seed", cv.seed, "Monte Carlo seed");
    cv_cmd->add_option("--format", cv.format, "json | csv");
    cv_cmd->add_option("--out", cv.out, "output file");

    ArgmaxArgs am;
    auto* am_cmd = app.add_subcommand("argmax-dist", "Quantiles of the location limit law");
    am_cmd->add_option("--samples", am.samples, "Monte Carlo size");
    am_cmd->add_option("--seed", am.seed, "seed");
    am_cmd->add_option("--half-width", am.half_width, "grid half width");
    am_cmd->add_option("--step", am.step, "grid step");
    am_cmd->add_option("--out", am.out, "output file");

    ReplicateArgs rep;
    auto* rep_cmd = app.add_subcommand("replicate", "Replication experiments with plot data");
    rep_cmd->add_option("--figure", rep.figure,
                        "vol-jump | mean-jump | deviation | ar-dependent | nonparam-vol");
    rep_cmd->add_option("--spec", rep.spec_path, "experiment spec file (key = value lines)");
    rep_cmd->add_option("--replications", rep.replications, "replicate count");
    rep_cmd->add_option("--seed", rep.seed, "master seed");
    rep_cmd->add_option("--parallelism", rep.parallelism, "worker threads");
    rep_cmd->add_option("--out", rep.out_dir, "output directory");

    CLI11_PARSE(app, argc, argv);

    try {
        if (*detect_cmd) return run_detect(det);
        if (*ci_cmd) return run_ci(ci_args);
        if (*sim_cmd) return run_simulate(sim);
        if (*cv_cmd) return run_critvals(cv);
        if (*am_cmd) return run_argmax_dist(am);
        if (*rep_cmd) {
            if (rep.figure.empty() && rep.spec_path.empty()) {
                throw cpd::InvalidInputError("replicate needs --figure or --spec");
            }
            return run_replicate(rep);
        }
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 1;
    }
    return 1;
}
