#include "cpd/expfam.hpp"

#include <cmath>
#include <numbers>

namespace cpd {

namespace {
constexpr double kDegenerateEps = 1e-12;

double meanvar_variance(const Eigen::VectorXd& y) { return y[1] - y[0] * y[0]; }
} // namespace

ExpFamilyModel ExpFamilyModel::normal_mean(double sigma2) {
    if (!(sigma2 > 0.0)) {
        throw InvalidInputError("normal_mean: sigma2 must be positive");
    }
    ExpFamilyModel model(ModelKind::NormalMeanKnownVar, 1, 1);
    model.sigma2_ = sigma2;
    return model;
}

ExpFamilyModel ExpFamilyModel::normal_meanvar() {
    return ExpFamilyModel(ModelKind::NormalMeanVar, 2, 1);
}

ExpFamilyModel ExpFamilyModel::mvnormal_mean(const Eigen::MatrixXd& cov) {
    if (cov.rows() != cov.cols() || cov.rows() < 1) {
        throw InvalidInputError("mvnormal_mean: covariance must be square");
    }
    if (!cov.isApprox(cov.transpose(), 1e-10)) {
        throw InvalidInputError("mvnormal_mean: covariance must be symmetric");
    }
    const int m = static_cast<int>(cov.rows());
    ExpFamilyModel model(ModelKind::MultiNormalMeanKnownCov, m, m);
    model.cov_ = 0.5 * (cov + cov.transpose());
    model.cov_llt_.compute(model.cov_);
    if (model.cov_llt_.info() != Eigen::Success) {
        throw InvalidInputError("mvnormal_mean: covariance must be positive definite");
    }
    return model;
}

Eigen::VectorXd ExpFamilyModel::suff_stat(const Eigen::VectorXd& x) const {
    if (x.size() != m_) {
        throw InvalidInputError("suff_stat: observation has wrong dimension");
    }
    switch (kind_) {
    case ModelKind::NormalMeanKnownVar:
        return Eigen::VectorXd::Constant(1, x[0] / sigma2_);
    case ModelKind::NormalMeanVar: {
        Eigen::VectorXd t(2);
        t << x[0], x[0] * x[0];
        return t;
    }
    case ModelKind::MultiNormalMeanKnownCov:
        return cov_llt_.solve(x);
    }
    throw InvalidInputError("suff_stat: unknown model kind");
}

double ExpFamilyModel::suff_stat_1d(double x, int component) const {
    switch (kind_) {
    case ModelKind::NormalMeanKnownVar:
        return x / sigma2_;
    case ModelKind::NormalMeanVar:
        return component == 0 ? x : x * x;
    default:
        throw InvalidInputError("suff_stat_1d: univariate models only");
    }
}

bool ExpFamilyModel::admissible_moment(const Eigen::VectorXd& y) const {
    if (y.size() != d_ || !y.allFinite()) return false;
    if (kind_ == ModelKind::NormalMeanVar) {
        return meanvar_variance(y) > kDegenerateEps * std::max(1.0, y[1]);
    }
    return true;
}

bool ExpFamilyModel::admissible_nat(const Eigen::VectorXd& theta) const {
    if (theta.size() != d_ || !theta.allFinite()) return false;
    if (kind_ == ModelKind::NormalMeanVar) {
        return theta[1] < 0.0;
    }
    return true;
}

void ExpFamilyModel::check_moment(const Eigen::VectorXd& y) const {
    if (y.size() != d_) {
        throw InvalidInputError("moment point has wrong dimension");
    }
    if (!admissible_moment(y)) {
        throw DegenerateMomentError("moment point outside the admissible region");
    }
}

double ExpFamilyModel::h_value(const Eigen::VectorXd& y) const {
    check_moment(y);
    switch (kind_) {
    case ModelKind::NormalMeanKnownVar:
        return y[0] * y[0] * sigma2_ / 2.0;
    case ModelKind::NormalMeanVar:
        return -0.5 * std::log(2.0 * std::numbers::pi * meanvar_variance(y));
    case ModelKind::MultiNormalMeanKnownCov:
        return 0.5 * y.dot(cov_ * y);
    }
    throw InvalidInputError("h_value: unknown model kind");
}

Eigen::VectorXd ExpFamilyModel::h_grad(const Eigen::VectorXd& y) const {
    check_moment(y);
    switch (kind_) {
    case ModelKind::NormalMeanKnownVar:
        return Eigen::VectorXd::Constant(1, y[0] * sigma2_);
    case ModelKind::NormalMeanVar: {
        // H' = inv A': maps (E[X], E[X^2]) back to (mu/s^2, -1/(2 s^2)).
        const double s2 = meanvar_variance(y);
        Eigen::VectorXd g(2);
        g << y[0] / s2, -0.5 / s2;
        return g;
    }
    case ModelKind::MultiNormalMeanKnownCov:
        return cov_ * y;
    }
    throw InvalidInputError("h_grad: unknown model kind");
}

Eigen::MatrixXd ExpFamilyModel::h_hess(const Eigen::VectorXd& y) const {
    check_moment(y);
    switch (kind_) {
    case ModelKind::NormalMeanKnownVar:
        return Eigen::MatrixXd::Constant(1, 1, sigma2_);
    case ModelKind::NormalMeanVar: {
        const double s2 = meanvar_variance(y);
        const double s4 = s2 * s2;
        Eigen::MatrixXd hess(2, 2);
        hess(0, 0) = (y[0] * y[0] + y[1]) / s4;
        hess(0, 1) = hess(1, 0) = -y[0] / s4;
        hess(1, 1) = 0.5 / s4;
        return hess;
    }
    case ModelKind::MultiNormalMeanKnownCov:
        return cov_;
    }
    throw InvalidInputError("h_hess: unknown model kind");
}

Eigen::VectorXd ExpFamilyModel::a_grad(const Eigen::VectorXd& theta) const {
    if (theta.size() != d_) {
        throw InvalidInputError("a_grad: parameter has wrong dimension");
    }
    if (!admissible_nat(theta)) {
        throw InvalidInputError("a_grad: natural parameter outside the admissible set");
    }
    switch (kind_) {
    case ModelKind::NormalMeanKnownVar:
        return Eigen::VectorXd::Constant(1, theta[0] / sigma2_);
    case ModelKind::NormalMeanVar: {
        const double mu = -theta[0] / (2.0 * theta[1]);
        const double s2 = -0.5 / theta[1];
        Eigen::VectorXd tau(2);
        tau << mu, mu * mu + s2;
        return tau;
    }
    case ModelKind::MultiNormalMeanKnownCov:
        return cov_llt_.solve(theta);
    }
    throw InvalidInputError("a_grad: unknown model kind");
}

Eigen::MatrixXd ExpFamilyModel::a_hess(const Eigen::VectorXd& theta) const {
    if (theta.size() != d_) {
        throw InvalidInputError("a_hess: parameter has wrong dimension");
    }
    if (!admissible_nat(theta)) {
        throw InvalidInputError("a_hess: natural parameter outside the admissible set");
    }
    switch (kind_) {
    case ModelKind::NormalMeanKnownVar:
        return Eigen::MatrixXd::Constant(1, 1, 1.0 / sigma2_);
    case ModelKind::NormalMeanVar: {
        const double t1 = theta[0];
        const double t2 = theta[1];
        Eigen::MatrixXd hess(2, 2);
        hess(0, 0) = -0.5 / t2;
        hess(0, 1) = hess(1, 0) = t1 / (2.0 * t2 * t2);
        hess(1, 1) = -t1 * t1 / (2.0 * t2 * t2 * t2) + 0.5 / (t2 * t2);
        return hess;
    }
    case ModelKind::MultiNormalMeanKnownCov:
        return cov_llt_.solve(Eigen::MatrixXd::Identity(m_, m_));
    }
    throw InvalidInputError("a_hess: unknown model kind");
}

Eigen::VectorXd ExpFamilyModel::nat_param_from_moments(const Eigen::VectorXd& mean,
                                                       const Eigen::MatrixXd& var_or_cov) const {
    switch (kind_) {
    case ModelKind::NormalMeanKnownVar:
        if (mean.size() != 1) throw InvalidInputError("nat_param_from_moments: scalar mean expected");
        return mean;
    case ModelKind::NormalMeanVar: {
        if (mean.size() != 1 || var_or_cov.size() != 1) {
            throw InvalidInputError("nat_param_from_moments: scalar mean and variance expected");
        }
        const double s2 = var_or_cov(0, 0);
        if (!(s2 > 0.0)) throw InvalidInputError("nat_param_from_moments: variance must be positive");
        Eigen::VectorXd theta(2);
        theta << mean[0] / s2, -0.5 / s2;
        return theta;
    }
    case ModelKind::MultiNormalMeanKnownCov:
        if (mean.size() != m_) throw InvalidInputError("nat_param_from_moments: mean has wrong dimension");
        return mean;
    }
    throw InvalidInputError("nat_param_from_moments: unknown model kind");
}

} // namespace cpd
