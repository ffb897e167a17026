#pragma once

#include <Eigen/Dense>

#include "cpd/errors.hpp"

namespace cpd {

enum class ModelKind {
    NormalMeanKnownVar,     // univariate normal, change in the mean, variance fixed
    NormalMeanVar,          // univariate normal, simultaneous change in mean and variance
    MultiNormalMeanKnownCov // m-variate normal, change in the mean, covariance fixed
};

/// One supported exponential-family model in natural parametrization.
///
/// Bundles the sufficient statistic T, the dual function H with its
/// gradient and Hessian, and the log-normalizer derivatives A'/A''.
/// Instances are immutable and safe to share across threads.
class ExpFamilyModel {
public:
    static ExpFamilyModel normal_mean(double sigma2);
    static ExpFamilyModel normal_meanvar();
    static ExpFamilyModel mvnormal_mean(const Eigen::MatrixXd& cov);

    ModelKind kind() const { return kind_; }
    int d() const { return d_; } // natural-parameter dimension
    int m() const { return m_; } // observation dimension

    double sigma2() const { return sigma2_; }
    const Eigen::MatrixXd& cov() const { return cov_; }

    /// T(x). Throws InvalidInputError on a dimension mismatch.
    Eigen::VectorXd suff_stat(const Eigen::VectorXd& x) const;
    double suff_stat_1d(double x, int component) const;

    /// True when y lies in the admissible region of H (for NormalMeanVar:
    /// y[1] - y[0]^2 > eps * max(1, y[1]) with eps = 1e-12).
    bool admissible_moment(const Eigen::VectorXd& y) const;
    bool admissible_nat(const Eigen::VectorXd& theta) const;

    double h_value(const Eigen::VectorXd& y) const;
    Eigen::VectorXd h_grad(const Eigen::VectorXd& y) const; // H'(y) = inv A'(y)
    Eigen::MatrixXd h_hess(const Eigen::VectorXd& y) const;

    Eigen::VectorXd a_grad(const Eigen::VectorXd& theta) const; // tau = A'(theta)
    Eigen::MatrixXd a_hess(const Eigen::VectorXd& theta) const;

    /// Natural parameter from (mean, variance-or-covariance).
    Eigen::VectorXd nat_param_from_moments(const Eigen::VectorXd& mean,
                                           const Eigen::MatrixXd& var_or_cov) const;

private:
    ExpFamilyModel(ModelKind kind, int d, int m) : kind_(kind), d_(d), m_(m) {}

    void check_moment(const Eigen::VectorXd& y) const;

    ModelKind kind_;
    int d_;
    int m_;
    double sigma2_ = 1.0;
    Eigen::MatrixXd cov_;          // MultiNormalMeanKnownCov only
    Eigen::LLT<Eigen::MatrixXd> cov_llt_;
};

} // namespace cpd
