#include "cpd/nonparam.hpp"

#include <cmath>

#include "cpd/errors.hpp"

namespace cpd {

double truncation_threshold(long n) {
    if (n < 2) throw InvalidInputError("truncation_threshold: n must be >= 2");
    const double nd = static_cast<double>(n);
    return std::sqrt(2.0 * std::log(nd)) / std::sqrt(nd);
}

long block_length(long n, double C) {
    if (n < 2) throw InvalidInputError("block_length: n must be >= 2");
    const double nd = static_cast<double>(n);
    const long k_n = static_cast<long>(std::floor(C * std::sqrt(std::log(nd)) * std::sqrt(nd)));
    if (k_n < 1 || 2 * k_n >= n) {
        throw InvalidInputError("block_length: need 1 <= k_n and 2 k_n < n");
    }
    return k_n;
}

long m_of(long n, long k_n) {
    if (k_n < 1) throw InvalidInputError("m_of: k_n must be >= 1");
    return n / k_n;
}

double vstar(const std::vector<double>& increments, long k_n, double u_n) {
    const long n = static_cast<long>(increments.size());
    if (n < 2 * k_n) throw InvalidInputError("vstar: series shorter than two blocks");

    // prefix[i] = sum_{j<=i} dX_j^2 1{|dX_j| <= u_n}
    std::vector<double> prefix(static_cast<std::size_t>(n + 1), 0.0);
    for (long j = 1; j <= n; ++j) {
        const double dx = increments[static_cast<std::size_t>(j - 1)];
        const double kept = std::abs(dx) <= u_n ? dx * dx : 0.0;
        prefix[static_cast<std::size_t>(j)] = prefix[static_cast<std::size_t>(j - 1)] + kept;
    }

    bool found = false;
    double best = 0.0;
    for (long i = k_n; i <= n - k_n; ++i) {
        const double trailing = prefix[static_cast<std::size_t>(i)] -
                                prefix[static_cast<std::size_t>(i - k_n)];
        const double leading = prefix[static_cast<std::size_t>(i + k_n)] -
                               prefix[static_cast<std::size_t>(i)];
        if (leading == 0.0) continue; // skipped index
        const double ratio = std::abs(trailing / leading - 1.0);
        if (!found || ratio > best) {
            found = true;
            best = ratio;
        }
    }
    if (!found) throw DegenerateSeriesError("vstar: every block ratio was degenerate");
    return best;
}

double vn_normalized(double vstar, long n, long k_n) {
    const long m_n = m_of(n, k_n);
    if (m_n < 3) throw InvalidInputError("vn_normalized: m_n must be >= 3");
    const double md = static_cast<double>(m_n);
    return std::sqrt(std::log(md) * static_cast<double>(k_n) / 2.0) * vstar -
           2.0 * std::log(md) - 0.5 * std::log(std::log(md)) - std::log(3.0);
}

double gumbel_std_quantile(double alpha) {
    if (!(alpha > 0.0 && alpha < 1.0)) {
        throw InvalidInputError("gumbel_std_quantile: alpha outside (0, 1)");
    }
    return -std::log(-std::log1p(-alpha));
}

bool nonparam_decision(double vn, double alpha) { return vn > gumbel_std_quantile(alpha); }

NonparamReport nonparam_detect(const std::vector<double>& increments, const NonparamConfig& cfg) {
    const long n = static_cast<long>(increments.size());
    NonparamReport report;
    report.alpha = cfg.alpha;
    report.u_n = truncation_threshold(n);
    report.k_n = block_length(n, cfg.C);
    report.m_n = m_of(n, report.k_n);
    report.vstar = vstar(increments, report.k_n, report.u_n);
    report.vn = vn_normalized(report.vstar, n, report.k_n);
    report.reject = nonparam_decision(report.vn, cfg.alpha);
    return report;
}

} // namespace cpd
