#pragma once

#include <algorithm>
#include <cmath>
#include <functional>
#include <vector>

#include "cpd/errors.hpp"

namespace cpd {

/// Sorted Monte Carlo sample with quantile/ECDF accessors.
class EmpiricalDist {
public:
    EmpiricalDist() = default;

    explicit EmpiricalDist(std::vector<double> samples) : samples_(std::move(samples)) {
        if (samples_.empty()) {
            throw InvalidInputError("EmpiricalDist: empty sample");
        }
        std::sort(samples_.begin(), samples_.end());
    }

    long count() const { return static_cast<long>(samples_.size()); }
    const std::vector<double>& samples() const { return samples_; }

    double mean() const {
        if (samples_.empty()) throw InvalidInputError("mean: empty distribution");
        double acc = 0.0;
        for (double v : samples_) acc += v;
        return acc / static_cast<double>(count());
    }

    /// Lower order statistic at ceil(p * count); index 1 for p = 0.
    double quantile(double p) const {
        if (samples_.empty()) throw InvalidInputError("quantile: empty distribution");
        if (p < 0.0 || p > 1.0) throw InvalidInputError("quantile: p outside [0, 1]");
        const long m = count();
        long idx = static_cast<long>(std::ceil(p * static_cast<double>(m)));
        idx = std::clamp(idx, 1L, m);
        return samples_[static_cast<std::size_t>(idx - 1)];
    }

    /// Right-continuous ECDF: F(x) = #{s <= x} / count.
    double ecdf(double x) const {
        if (samples_.empty()) throw InvalidInputError("ecdf: empty distribution");
        const auto it = std::upper_bound(samples_.begin(), samples_.end(), x);
        return static_cast<double>(it - samples_.begin()) / static_cast<double>(count());
    }

private:
    std::vector<double> samples_;
};

/// Two-sample KS distance, evaluated over the pooled sample points.
double ks_distance(const EmpiricalDist& a, const EmpiricalDist& b);

/// KS distance against a reference CDF.
double ks_distance(const EmpiricalDist& a, const std::function<double(double)>& cdf);

} // namespace cpd
