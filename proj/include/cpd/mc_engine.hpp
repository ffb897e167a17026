#pragma once

#include <istream>
#include <map>
#include <string>
#include <variant>
#include <vector>

#include "cpd/cpd_core.hpp"
#include "cpd/empirical.hpp"
#include "cpd/mc_config.hpp"
#include "cpd/rng.hpp"
#include "cpd/simgen.hpp"

namespace cpd {

enum class Pipeline { ParametricDetect, NonparamDetect, ZnGrid, DeviationStat };

/// A full replication experiment: a generator plus the statistic pipeline
/// applied to each replicate.
struct ExperimentSpec {
    std::variant<SimConfig, ItoConfig> generator;
    Pipeline pipeline = Pipeline::ParametricDetect;
    double alpha = 0.05;
    CriticalValueSource source = CriticalValueSource::Gumbel;
    double block_C = 1.5; // nonparam pipeline only
    std::vector<double> grid_t = {0.2, 0.35, 0.5, 0.65, 0.8};
    std::vector<double> grid_lambda = {0.2, 0.35, 0.5, 0.65, 0.8};
};

struct ExperimentResult {
    std::map<std::string, EmpiricalDist> metrics;
    long skipped = 0; // degenerate replicates; counted, never resampled
};

/// Runs the experiment with per-replicate seeds seed_stream(master, i);
/// the result is independent of the parallelism level.
ExperimentResult run_experiment(const ExperimentSpec& spec, const MonteCarloConfig& mc);

/// Quantile levels reported in JSON summaries.
inline constexpr double kSummaryQuantiles[] = {0.01, 0.05, 0.1, 0.25, 0.5,
                                               0.75, 0.9, 0.95, 0.99};

/// Parses the human-editable `key = value` experiment format.
std::pair<ExperimentSpec, MonteCarloConfig> parse_experiment_spec(std::istream& in);

} // namespace cpd
