#pragma once

#include <vector>

namespace cpd {

/// Non-parametric volatility-jump test on truncated squared-increment
/// block ratios.
struct NonparamConfig {
    double C = 1.5;      // block constant, > 1
    double alpha = 0.05;
};

struct NonparamReport {
    double vstar = 0.0;
    double vn = 0.0;
    long k_n = 0;
    double u_n = 0.0;
    long m_n = 0;
    bool reject = false;
    double alpha = 0.0;
};

/// u_n = sqrt(2 log n) / sqrt(n).
double truncation_threshold(long n);

/// k_n = floor(C sqrt(log n) sqrt(n)); requires 2 k_n < n.
long block_length(long n, double C);

long m_of(long n, long k_n);

/// max over i in [k_n, n-k_n] of |trailing/leading truncated
/// squared-increment block mean ratio - 1|. Zero-denominator blocks are
/// skipped; throws DegenerateSeriesError if every i is skipped.
double vstar(const std::vector<double>& increments, long k_n, double u_n);

/// V_n = sqrt(log(m_n) k_n / 2) V* - 2 log(m_n) - log(log(m_n))/2 - log 3.
double vn_normalized(double vstar, long n, long k_n);

/// Standard-Gumbel (1-alpha) quantile -log(-log(1-alpha)).
double gumbel_std_quantile(double alpha);

bool nonparam_decision(double vn, double alpha);

NonparamReport nonparam_detect(const std::vector<double>& increments, const NonparamConfig& cfg);

} // namespace cpd
