#include "cpd/cpd_core.hpp"

#include <cmath>

#include "cpd/asymptotics.hpp"
#include "cpd/errors.hpp"

namespace cpd {

PrefixStats::PrefixStats(const std::vector<Eigen::VectorXd>& data, ExpFamilyModel model)
    : n_(static_cast<long>(data.size())), model_(std::move(model)) {
    if (n_ < 2) throw InvalidInputError("prefix_stats: need at least two observations");
    const int d = model_.d();
    cum_.assign(static_cast<std::size_t>(n_ + 1) * d, 0.0);
    for (long k = 1; k <= n_; ++k) {
        const Eigen::VectorXd t = model_.suff_stat(data[static_cast<std::size_t>(k - 1)]);
        for (int j = 0; j < d; ++j) {
            cum_[static_cast<std::size_t>(k) * d + j] =
                cum_[static_cast<std::size_t>(k - 1) * d + j] + t[j];
        }
    }
}

Eigen::VectorXd PrefixStats::cum(long k) const {
    const int d = model_.d();
    return Eigen::Map<const Eigen::VectorXd>(cum_.data() + static_cast<std::size_t>(k) * d, d);
}

Eigen::VectorXd PrefixStats::head_mean(long k) const { return cum(k) / static_cast<double>(k); }

Eigen::VectorXd PrefixStats::tail_mean(long k) const {
    return (cum(n_) - cum(k)) / static_cast<double>(n_ - k);
}

Eigen::VectorXd PrefixStats::total_mean() const { return cum(n_) / static_cast<double>(n_); }

PrefixStats prefix_stats(const std::vector<Eigen::VectorXd>& data, const ExpFamilyModel& model) {
    return PrefixStats(data, model);
}

std::optional<double> sn_at(const PrefixStats& ps, long k) {
    const long kmin = ps.k_min();
    if (k < kmin || k > ps.n() - kmin) {
        throw InvalidInputError("sn_at: split index outside the trimmed range");
    }
    const ExpFamilyModel& model = ps.model();
    const Eigen::VectorXd head = ps.head_mean(k);
    const Eigen::VectorXd tail = ps.tail_mean(k);
    const Eigen::VectorXd pooled = ps.total_mean();
    if (!model.admissible_moment(head) || !model.admissible_moment(tail) ||
        !model.admissible_moment(pooled)) {
        return std::nullopt;
    }
    const double n = static_cast<double>(ps.n());
    const double kk = static_cast<double>(k);
    return kk * model.h_value(head) + (n - kk) * model.h_value(tail) - n * model.h_value(pooled);
}

MaxStatResult max_statistic(const PrefixStats& ps) {
    const long kmin = ps.k_min();
    if (ps.n() < 2 * kmin) {
        throw InvalidInputError("max_statistic: series too short for the trimmed range");
    }
    bool found = false;
    double best = 0.0;
    long best_k = 0;
    for (long k = kmin; k <= ps.n() - kmin; ++k) {
        const auto s = sn_at(ps, k);
        if (!s) continue;
        const double stat = 2.0 * *s;
        if (!found || stat > best) {
            found = true;
            best = stat;
            best_k = k;
        }
    }
    if (!found) {
        throw DegenerateSeriesError("max_statistic: every split index was degenerate");
    }
    return {best, best_k};
}

double size_of_change(const PrefixStats& ps, long k_hat) {
    const ExpFamilyModel& model = ps.model();
    const Eigen::VectorXd pooled = ps.total_mean();
    if (!model.admissible_moment(pooled)) {
        throw DegenerateSeriesError("size_of_change: pooled moment point is degenerate");
    }
    const Eigen::VectorXd diff = ps.head_mean(k_hat) - ps.tail_mean(k_hat);
    return diff.dot(model.h_hess(pooled) * diff);
}

std::pair<long, long> confidence_interval(long k_hat, double delta_hat_sq,
                                          double q_low, double q_high, long n) {
    if (!(delta_hat_sq > 0.0)) {
        throw InvalidInputError("confidence_interval: delta_hat_sq must be positive");
    }
    // delta_hat_sq (k_hat - k*) => xi, so k* in [k_hat - q_high/D, k_hat - q_low/D].
    long lo = static_cast<long>(std::floor(static_cast<double>(k_hat) - q_high / delta_hat_sq));
    long hi = static_cast<long>(std::ceil(static_cast<double>(k_hat) - q_low / delta_hat_sq));
    lo = std::max(lo, 1L);
    hi = std::min(hi, n - 1);
    return {lo, hi};
}

DetectionReport detect(const std::vector<Eigen::VectorXd>& data, const ExpFamilyModel& model,
                       double alpha, CriticalValueSource source,
                       const MonteCarloConfig& bridge_mc) {
    const PrefixStats ps = prefix_stats(data, model);
    const MaxStatResult ms = max_statistic(ps);

    DetectionReport report;
    report.stat = ms.stat;
    report.stat_root = std::sqrt(std::max(ms.stat, 0.0));
    report.k_hat = ms.k_hat;
    report.lambda_hat = static_cast<double>(ms.k_hat) / static_cast<double>(ps.n());
    report.delta_hat_sq = size_of_change(ps, ms.k_hat);
    report.alpha = alpha;
    report.critical_value = source == CriticalValueSource::Gumbel
        ? gumbel_critical_value(alpha, model.d(), ps.n())
        : sup_bridge_critical_value(alpha, model.d(), ps.n(), bridge_mc);
    report.reject = report.stat_root > report.critical_value;
    return report;
}

std::vector<Eigen::VectorXd> wrap_univariate(const std::vector<double>& data) {
    std::vector<Eigen::VectorXd> out;
    out.reserve(data.size());
    for (double x : data) {
        out.push_back(Eigen::VectorXd::Constant(1, x));
    }
    return out;
}

} // namespace cpd
