#pragma once

#include <array>
#include <utility>
#include <vector>

#include <Eigen/Dense>

#include "cpd/empirical.hpp"
#include "cpd/expfam.hpp"
#include "cpd/mc_config.hpp"

namespace cpd {

/// Extreme-value norming constants a(log n), b_d(log n).
struct GumbelNorming {
    double a_val;
    double b_val;
    int d;
    long n;
};

GumbelNorming gumbel_norming(int d, long n);

/// kappa_alpha such that P[S_n^{1/2} > kappa_alpha] -> alpha under the null.
double gumbel_critical_value(double alpha, int d, long n);

double gumbel_pvalue(double stat_root, int d, long n);

/// Monte Carlo (1-alpha)-quantile of sup_{t in [1/n, 1-1/n]} of
/// sum_i B_i^2(t) / (t(1-t)), on the S_n^{1/2} scale.
double sup_bridge_critical_value(double alpha, int d, long n, const MonteCarloConfig& mc);

/// Two-sided Brownian motion with drift -|t|/2 on a [-T, T] grid.
struct ArgmaxWhatOptions {
    double half_width = 200.0;
    double step = 0.01;
};

/// Samples xi = argmax_u What(u); ties resolved toward the smallest |u|.
EmpiricalDist sample_argmax_what(const MonteCarloConfig& mc, const ArgmaxWhatOptions& opts = {});

/// True pre/post-change parameters of a simulated alternative, with the
/// derived limit quantities. Validation-only; never part of detection.
struct AlternativeParams {
    Eigen::VectorXd theta1, theta2;
    Eigen::VectorXd tau1, tau2;       // A'(theta)
    Eigen::MatrixXd sigma1_mat, sigma2_mat; // A''(theta)
    Eigen::VectorXd tau_A;
    double delta_sq = 0.0;  // ||tau1 - tau2||^2
    double Delta_sq = 0.0;  // ||theta1 - theta2||^2
    double sigma_a_sq = 0.0;
};

AlternativeParams make_alternative_params(const ExpFamilyModel& model,
                                          const Eigen::VectorXd& theta1,
                                          const Eigen::VectorXd& theta2);

/// Finite-n Rayleigh quotient (tau1-tau2)^T H''(tau_A) (tau1-tau2) / delta^2.
double sigma_a_sq(const AlternativeParams& ap, const ExpFamilyModel& model);

/// Covariance function of the two-parameter Gaussian limit of the scaled
/// centered statistic; c((1,1),(1,1)) = 0.
double limit_covariance(double t, double lambda, double tp, double lambdap, double sigma_a_sq);

/// Expected value of S_n(k, k*) under the alternative.
double mu_n(long k, long k_star, long n, const AlternativeParams& ap, const ExpFamilyModel& model);

/// Centered prefix sums of the two iid sequences backing an alternative
/// sample: c1[k] = sum_{i<=k} (T(X_{1,i}) - tau1) and likewise c2.
struct AltSample {
    long n = 0;
    int d = 0;
    std::vector<double> c1, c2; // (n+1) x d, row-major

    Eigen::VectorXd c1_at(long k) const;
    Eigen::VectorXd c2_at(long k) const;
};

AltSample make_alt_sample(const std::vector<Eigen::VectorXd>& data1,
                          const std::vector<Eigen::VectorXd>& data2,
                          const ExpFamilyModel& model, const AlternativeParams& ap);

/// Linear (first-order Taylor) part Z_n(k, k*) of S_n(k, k*) - mu_n(k, k*).
double zn_value(const AltSample& sample, long k, long k_star,
                const AlternativeParams& ap, const ExpFamilyModel& model);

/// Closed-form limit of E[prod_i (W(beta_i) - W(alpha_i))] for standard
/// Gaussian partial sums (Wick pairing of interval overlaps).
double mixed_fourth_moment(const std::array<std::pair<double, double>, 4>& intervals);

} // namespace cpd
