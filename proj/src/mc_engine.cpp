#include "cpd/mc_engine.hpp"

#include <algorithm>
#include <cmath>
#include <functional>
#include <sstream>
#include <thread>

#include "cpd/asymptotics.hpp"
#include "cpd/errors.hpp"
#include "cpd/nonparam.hpp"

namespace cpd {

namespace {

/// One replicate row of metric values; empty means skipped.
using Row = std::vector<double>;

std::vector<Row> replicate_rows(long count, int parallelism,
                                const std::function<Row(long)>& fn) {
    std::vector<Row> rows(static_cast<std::size_t>(count));
    const int workers = std::max(1, parallelism);
    auto work = [&](int w) {
        for (long i = w; i < count; i += workers) {
            rows[static_cast<std::size_t>(i)] = fn(i);
        }
    };
    if (workers == 1) {
        work(0);
    } else {
        std::vector<std::thread> pool;
        for (int w = 0; w < workers; ++w) pool.emplace_back(work, w);
        for (auto& t : pool) t.join();
    }
    return rows;
}

ExperimentResult collect(const std::vector<std::string>& names, const std::vector<Row>& rows) {
    ExperimentResult result;
    std::vector<std::vector<double>> columns(names.size());
    for (const Row& row : rows) {
        if (row.empty()) {
            ++result.skipped;
            continue;
        }
        for (std::size_t j = 0; j < names.size(); ++j) columns[j].push_back(row[j]);
    }
    for (std::size_t j = 0; j < names.size(); ++j) {
        if (!columns[j].empty()) {
            result.metrics.emplace(names[j], EmpiricalDist(std::move(columns[j])));
        }
    }
    return result;
}

AlternativeParams alternative_from(const SimConfig& cfg, const ExpFamilyModel& model) {
    const double scale = 1.0 / std::sqrt(static_cast<double>(cfg.n));
    const Eigen::VectorXd mean1 = Eigen::VectorXd::Constant(1, scale * cfg.mu1);
    const Eigen::VectorXd mean2 = Eigen::VectorXd::Constant(1, scale * cfg.mu2);
    const Eigen::MatrixXd var1 = Eigen::MatrixXd::Constant(1, 1, cfg.sigma1 * cfg.sigma1);
    const Eigen::MatrixXd var2 = Eigen::MatrixXd::Constant(1, 1, cfg.sigma2 * cfg.sigma2);
    return make_alternative_params(model, model.nat_param_from_moments(mean1, var1),
                                   model.nat_param_from_moments(mean2, var2));
}

ExperimentResult run_parametric(const SimConfig& base, const ExperimentSpec& spec,
                                const MonteCarloConfig& mc, bool deviation) {
    const ExpFamilyModel model = ExpFamilyModel::normal_meanvar();
    const double crit = spec.source == CriticalValueSource::Gumbel
        ? gumbel_critical_value(spec.alpha, model.d(), base.n)
        : sup_bridge_critical_value(spec.alpha, model.d(), base.n,
                                    {std::max(10000L, mc.replications), mc.master_seed ^ 0x62726964ULL,
                                     mc.parallelism});
    const AlternativeParams ap = alternative_from(base, model);
    const double ndelta_sq = static_cast<double>(base.n) * ap.delta_sq;

    std::vector<std::string> names;
    if (deviation) {
        names = {"deviation", "lambda_err", "scaled_lambda_err"};
    } else {
        names = {"stat_root", "reject", "lambda_hat", "lambda_err", "k_err"};
    }

    auto one = [&](long i) -> Row {
        SimConfig cfg = base;
        cfg.seed = seed_stream(mc.master_seed, static_cast<std::uint64_t>(i));
        const SimOutput sim = gen_amoc_normal(cfg);
        try {
            const PrefixStats ps = prefix_stats(wrap_univariate(sim.data), model);
            const MaxStatResult ms = max_statistic(ps);
            const double lambda_hat =
                static_cast<double>(ms.k_hat) / static_cast<double>(base.n);
            const double lambda_err = std::abs(lambda_hat - sim.lambda_star);
            if (deviation) {
                const double dev = ap.sigma_a_sq * ap.delta_sq *
                                   static_cast<double>(ms.k_hat - sim.k_star);
                return {dev, lambda_err, ndelta_sq * lambda_err};
            }
            const double stat_root = std::sqrt(std::max(ms.stat, 0.0));
            return {stat_root, stat_root > crit ? 1.0 : 0.0, lambda_hat, lambda_err,
                    static_cast<double>(ms.k_hat - sim.k_star)};
        } catch (const DegenerateSeriesError&) {
            return {};
        }
    };
    return collect(names, replicate_rows(mc.replications, mc.parallelism, one));
}

ExperimentResult run_zn_grid(const SimConfig& base, const ExperimentSpec& spec,
                             const MonteCarloConfig& mc) {
    const ExpFamilyModel model = ExpFamilyModel::normal_meanvar();
    const AlternativeParams ap = alternative_from(base, model);
    if (!(ap.delta_sq > 0.0)) {
        throw InvalidInputError("zn-grid: the configured alternative has no change");
    }
    const double scale = 1.0 / std::sqrt(static_cast<double>(base.n) * ap.delta_sq);
    std::vector<std::string> names;
    for (std::size_t i = 0; i < spec.grid_t.size(); ++i) {
        for (std::size_t j = 0; j < spec.grid_lambda.size(); ++j) {
            names.push_back("zn_t" + std::to_string(i) + "_l" + std::to_string(j));
        }
    }
    const double mean_scale = 1.0 / std::sqrt(static_cast<double>(base.n));

    auto one = [&](long rep) -> Row {
        Rng rng(seed_stream(mc.master_seed, static_cast<std::uint64_t>(rep)));
        std::vector<Eigen::VectorXd> data1, data2;
        data1.reserve(static_cast<std::size_t>(base.n));
        data2.reserve(static_cast<std::size_t>(base.n));
        for (long i = 0; i < base.n; ++i) {
            data1.push_back(Eigen::VectorXd::Constant(
                1, rng.normal(mean_scale * base.mu1, base.sigma1)));
        }
        for (long i = 0; i < base.n; ++i) {
            data2.push_back(Eigen::VectorXd::Constant(
                1, rng.normal(mean_scale * base.mu2, base.sigma2)));
        }
        const AltSample sample = make_alt_sample(data1, data2, model, ap);
        Row row;
        row.reserve(names.size());
        for (double t : spec.grid_t) {
            const long k = std::max(1L, static_cast<long>(std::floor(
                                            t * static_cast<double>(base.n))));
            for (double lambda : spec.grid_lambda) {
                const long k_star = std::clamp(
                    static_cast<long>(std::floor(lambda * static_cast<double>(base.n))), 1L,
                    base.n - 1);
                row.push_back(scale * zn_value(sample, k, k_star, ap, model));
            }
        }
        return row;
    };
    return collect(names, replicate_rows(mc.replications, mc.parallelism, one));
}

ExperimentResult run_nonparam(const ItoConfig& base, const ExperimentSpec& spec,
                              const MonteCarloConfig& mc) {
    const std::vector<std::string> names = {"vn", "vstar", "reject"};
    auto one = [&](long i) -> Row {
        ItoConfig cfg = base;
        cfg.seed = seed_stream(mc.master_seed, static_cast<std::uint64_t>(i));
        const ItoOutput sim = gen_ito_path(cfg);
        try {
            const NonparamReport report =
                nonparam_detect(sim.increments, {spec.block_C, spec.alpha});
            return {report.vn, report.vstar, report.reject ? 1.0 : 0.0};
        } catch (const DegenerateSeriesError&) {
            return {};
        }
    };
    return collect(names, replicate_rows(mc.replications, mc.parallelism, one));
}

} // namespace

ExperimentResult run_experiment(const ExperimentSpec& spec, const MonteCarloConfig& mc) {
    if (mc.replications < 1) throw InvalidInputError("run_experiment: replications must be >= 1");
    switch (spec.pipeline) {
    case Pipeline::ParametricDetect:
    case Pipeline::DeviationStat:
    case Pipeline::ZnGrid: {
        const auto* cfg = std::get_if<SimConfig>(&spec.generator);
        if (cfg == nullptr) {
            throw InvalidInputError("run_experiment: pipeline needs the AMOC generator");
        }
        if (spec.pipeline == Pipeline::ZnGrid) return run_zn_grid(*cfg, spec, mc);
        return run_parametric(*cfg, spec, mc, spec.pipeline == Pipeline::DeviationStat);
    }
    case Pipeline::NonparamDetect: {
        const auto* cfg = std::get_if<ItoConfig>(&spec.generator);
        if (cfg == nullptr) {
            throw InvalidInputError("run_experiment: pipeline needs the Ito generator");
        }
        return run_nonparam(*cfg, spec, mc);
    }
    }
    throw InvalidInputError("run_experiment: unknown pipeline");
}

namespace {

std::string trim(const std::string& s) {
    const auto b = s.find_first_not_of(" \t\r");
    const auto e = s.find_last_not_of(" \t\r");
    return b == std::string::npos ? std::string() : s.substr(b, e - b + 1);
}

std::vector<double> parse_list(const std::string& value) {
    std::vector<double> out;
    std::stringstream ss(value);
    std::string item;
    while (std::getline(ss, item, ',')) out.push_back(std::stod(trim(item)));
    return out;
}

} // namespace

std::pair<ExperimentSpec, MonteCarloConfig> parse_experiment_spec(std::istream& in) {
    ExperimentSpec spec;
    MonteCarloConfig mc;
    SimConfig sim;
    ItoConfig ito;
    bool use_ito = false;

    std::string line;
    while (std::getline(in, line)) {
        const auto hash = line.find('#');
        if (hash != std::string::npos) line.erase(hash);
        const auto eq = line.find('=');
        if (eq == std::string::npos) continue;
        const std::string key = trim(line.substr(0, eq));
        const std::string value = trim(line.substr(eq + 1));
        if (key.empty() || value.empty()) continue;

        if (key == "pipeline") {
            if (value == "parametric-detect") spec.pipeline = Pipeline::ParametricDetect;
            else if (value == "nonparam-detect") spec.pipeline = Pipeline::NonparamDetect;
            else if (value == "zn-grid") spec.pipeline = Pipeline::ZnGrid;
            else if (value == "deviation-stat") spec.pipeline = Pipeline::DeviationStat;
            else throw InvalidInputError("unknown pipeline: " + value);
        } else if (key == "generator") {
            if (value == "amoc") use_ito = false;
            else if (value == "ito") use_ito = true;
            else throw InvalidInputError("unknown generator: " + value);
        } else if (key == "location_law") {
            if (value == "stopping") sim.location_law = LocationLaw::StoppingTime;
            else if (value == "uniform") sim.location_law = LocationLaw::Uniform;
            else if (value == "truncnormal") sim.location_law = LocationLaw::TruncNormal;
            else throw InvalidInputError("unknown location_law: " + value);
        } else if (key == "source") {
            if (value == "gumbel") spec.source = CriticalValueSource::Gumbel;
            else if (value == "bridge") spec.source = CriticalValueSource::Bridge;
            else throw InvalidInputError("unknown source: " + value);
        } else if (key == "n") { sim.n = std::stol(value); ito.n = sim.n; }
        else if (key == "mu1") sim.mu1 = std::stod(value);
        else if (key == "mu2") sim.mu2 = std::stod(value);
        else if (key == "sigma1") sim.sigma1 = std::stod(value);
        else if (key == "sigma2") sim.sigma2 = std::stod(value);
        else if (key == "gamma") { sim.gamma = std::stod(value); ito.gamma = sim.gamma; }
        else if (key == "kappa") { sim.kappa = std::stod(value); ito.kappa = sim.kappa; }
        else if (key == "ar_coeff") sim.ar_coeff = std::stod(value);
        else if (key == "drift") ito.drift = std::stod(value);
        else if (key == "c") ito.c = std::stod(value);
        else if (key == "rho") ito.rho = std::stod(value);
        else if (key == "jump_size") ito.jump_size = std::stod(value);
        else if (key == "alpha") spec.alpha = std::stod(value);
        else if (key == "C") spec.block_C = std::stod(value);
        else if (key == "grid_t") spec.grid_t = parse_list(value);
        else if (key == "grid_lambda") spec.grid_lambda = parse_list(value);
        else if (key == "replications") mc.replications = std::stol(value);
        else if (key == "master_seed") mc.master_seed = std::stoull(value);
        else if (key == "parallelism") mc.parallelism = std::stoi(value);
        else throw InvalidInputError("unknown experiment key: " + key);
    }
    if (use_ito) spec.generator = ito;
    else spec.generator = sim;
    return {spec, mc};
}

} // namespace cpd
