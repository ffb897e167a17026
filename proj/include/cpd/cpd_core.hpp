#pragma once

#include <optional>
#include <utility>
#include <vector>

#include <Eigen/Dense>

#include "cpd/expfam.hpp"
#include "cpd/mc_config.hpp"

namespace cpd {

/// Cumulative sums of sufficient statistics; makes every S_n(k) an O(1)
/// evaluation. Immutable after construction.
class PrefixStats {
public:
    PrefixStats(const std::vector<Eigen::VectorXd>& data, ExpFamilyModel model);

    long n() const { return n_; }
    int dim() const { return model_.d(); }
    const ExpFamilyModel& model() const { return model_; }

    /// Smallest admissible split index; the trimmed range is
    /// [k_min, n - k_min] so both segment MLEs exist.
    long k_min() const { return model_.m() + 1; }

    /// cum[k] = sum_{i<=k} T(X_i); cum[0] = 0.
    Eigen::VectorXd cum(long k) const;
    Eigen::VectorXd head_mean(long k) const;  // B_n(k)
    Eigen::VectorXd tail_mean(long k) const;  // B_n*(k)
    Eigen::VectorXd total_mean() const;       // B_n(n)

private:
    long n_;
    ExpFamilyModel model_;
    std::vector<double> cum_; // (n+1) x d, row-major
};

struct MaxStatResult {
    double stat;  // max_k 2 S_n(k)
    long k_hat;   // smallest argmax
};

struct DetectionReport {
    double stat = 0.0;
    double stat_root = 0.0;
    long k_hat = 0;
    double lambda_hat = 0.0;
    double delta_hat_sq = 0.0;
    bool reject = false;
    double alpha = 0.0;
    double critical_value = 0.0;
    std::optional<std::pair<long, long>> ci;
};

enum class CriticalValueSource { Gumbel, Bridge };

PrefixStats prefix_stats(const std::vector<Eigen::VectorXd>& data, const ExpFamilyModel& model);

/// S_n(k) for one split, or nullopt when a segment moment point is
/// degenerate (skip-and-continue). Throws InvalidInputError for k
/// outside the trimmed range.
std::optional<double> sn_at(const PrefixStats& ps, long k);

/// max over admissible k of 2 S_n(k). Throws DegenerateSeriesError when
/// every split is skipped.
MaxStatResult max_statistic(const PrefixStats& ps);

/// Quadratic form (B_n - B_n*)^T H''(B_n(n)) (B_n - B_n*) at k_hat.
double size_of_change(const PrefixStats& ps, long k_hat);

/// Inverts the distribution-free argmax limit into an index interval,
/// rounded outward and clipped to [1, n-1].
std::pair<long, long> confidence_interval(long k_hat, double delta_hat_sq,
                                          double q_low, double q_high, long n);

DetectionReport detect(const std::vector<Eigen::VectorXd>& data, const ExpFamilyModel& model,
                       double alpha, CriticalValueSource source,
                       const MonteCarloConfig& bridge_mc = {10000, 20240501, 1});

/// Convenience wrapper for univariate series.
std::vector<Eigen::VectorXd> wrap_univariate(const std::vector<double>& data);

} // namespace cpd
