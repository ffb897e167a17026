#include <cmath>
#include <numbers>

#include <doctest.h>

#include "cpd/expfam.hpp"
#include "cpd/rng.hpp"

using cpd::ExpFamilyModel;

namespace {
Eigen::VectorXd vec1(double x) { return Eigen::VectorXd::Constant(1, x); }

Eigen::VectorXd vec2(double a, double b) {
    Eigen::VectorXd v(2);
    v << a, b;
    return v;
}
} // namespace

TEST_CASE("sufficient statistics") {
    const auto nm = ExpFamilyModel::normal_mean(1.0);
    CHECK(nm.suff_stat(vec1(2.0))[0] == doctest::Approx(2.0));

    const auto mv = ExpFamilyModel::normal_meanvar();
    CHECK(mv.suff_stat(vec1(0.0)).isZero());
    const Eigen::VectorXd t3 = mv.suff_stat(vec1(3.0));
    CHECK(t3[0] == doctest::Approx(3.0));
    CHECK(t3[1] == doctest::Approx(9.0));

    Eigen::MatrixXd cov(2, 2);
    cov << 2.0, 0.5, 0.5, 1.0;
    const auto mn = ExpFamilyModel::mvnormal_mean(cov);
    const Eigen::VectorXd x = vec2(1.0, -1.0);
    CHECK((cov * mn.suff_stat(x) - x).norm() < 1e-12);

    CHECK_THROWS_AS(nm.suff_stat(vec2(1.0, 2.0)), cpd::InvalidInputError);
}

TEST_CASE("h_value closed forms") {
    CHECK(ExpFamilyModel::normal_mean(1.0).h_value(vec1(0.0)) == doctest::Approx(0.0));
    CHECK(ExpFamilyModel::normal_mean(4.0).h_value(vec1(3.0)) == doctest::Approx(18.0));
    CHECK(ExpFamilyModel::normal_meanvar().h_value(vec2(0.0, 1.0)) ==
          doctest::Approx(-0.5 * std::log(2.0 * std::numbers::pi)).epsilon(1e-9));
    CHECK_THROWS_AS(ExpFamilyModel::normal_meanvar().h_value(vec2(1.0, 1.0)),
                    cpd::DegenerateMomentError);
}

TEST_CASE("h_hess closed forms") {
    CHECK(ExpFamilyModel::normal_mean(2.0).h_hess(vec1(7.0))(0, 0) == doctest::Approx(2.0));

    const Eigen::MatrixXd h = ExpFamilyModel::normal_meanvar().h_hess(vec2(0.0, 1.0));
    CHECK(h(0, 0) == doctest::Approx(1.0));
    CHECK(h(0, 1) == doctest::Approx(0.0));
    CHECK(h(1, 1) == doctest::Approx(0.5));

    const auto mn = ExpFamilyModel::mvnormal_mean(Eigen::MatrixXd::Identity(2, 2));
    CHECK(mn.h_hess(vec2(0.3, -0.7)).isApprox(Eigen::MatrixXd::Identity(2, 2), 1e-12));
}

TEST_CASE("natural parameter from moments") {
    const auto mv = ExpFamilyModel::normal_meanvar();
    const Eigen::VectorXd t1 = mv.nat_param_from_moments(vec1(0.0), vec1(1.0).asDiagonal());
    CHECK(t1[0] == doctest::Approx(0.0));
    CHECK(t1[1] == doctest::Approx(-0.5));
    const Eigen::VectorXd t2 = mv.nat_param_from_moments(vec1(-2.0), vec1(1.0).asDiagonal());
    CHECK(t2[0] == doctest::Approx(-2.0));
    CHECK(t2[1] == doctest::Approx(-0.5));
    CHECK(ExpFamilyModel::normal_mean(1.0)
              .nat_param_from_moments(vec1(0.0), vec1(1.0).asDiagonal())[0] ==
          doctest::Approx(0.0));
    CHECK_THROWS_AS(mv.nat_param_from_moments(vec1(0.0), vec1(-1.0).asDiagonal()),
                    cpd::InvalidInputError);

    // round trip with a_grad
    const Eigen::VectorXd tau = mv.a_grad(t2);
    CHECK(tau[0] == doctest::Approx(-2.0)); // mean
    CHECK(tau[1] - tau[0] * tau[0] == doctest::Approx(1.0)); // variance
}

TEST_CASE("a_grad and a_hess") {
    const auto nm = ExpFamilyModel::normal_mean(1.0);
    CHECK(nm.a_grad(vec1(0.0))[0] == doctest::Approx(0.0));
    CHECK(nm.a_hess(vec1(0.0))(0, 0) == doctest::Approx(1.0));

    const auto mv = ExpFamilyModel::normal_meanvar();
    const Eigen::VectorXd tau = mv.a_grad(vec2(0.0, -0.5));
    CHECK(tau[0] == doctest::Approx(0.0));
    CHECK(tau[1] == doctest::Approx(1.0));

    CHECK_THROWS_AS(mv.a_grad(vec2(0.0, 0.5)), cpd::InvalidInputError);
}

TEST_CASE("duality H''(A'(theta)) A''(theta) = I on a grid") {
    const auto mv = ExpFamilyModel::normal_meanvar();
    for (double t1 : {-3.0, -0.5, 0.0, 0.7, 2.5}) {
        for (double t2 : {-2.0, -0.8, -0.5, -0.1}) {
            const Eigen::VectorXd theta = vec2(t1, t2);
            const Eigen::MatrixXd prod = mv.h_hess(mv.a_grad(theta)) * mv.a_hess(theta);
            CHECK(prod.isApprox(Eigen::MatrixXd::Identity(2, 2), 1e-10));
        }
    }
    const auto nm = ExpFamilyModel::normal_mean(3.0);
    for (double t : {-1.0, 0.0, 2.0}) {
        CHECK(nm.h_hess(nm.a_grad(vec1(t)))(0, 0) * nm.a_hess(vec1(t))(0, 0) ==
              doctest::Approx(1.0).epsilon(1e-12));
    }
}

TEST_CASE("h_hess symmetric positive definite on admissible grid") {
    const auto mv = ExpFamilyModel::normal_meanvar();
    for (double mu : {-2.0, 0.0, 1.5}) {
        for (double s2 : {0.3, 1.0, 4.0}) {
            const Eigen::MatrixXd h = mv.h_hess(vec2(mu, mu * mu + s2));
            CHECK(h.isApprox(h.transpose(), 1e-12));
            const Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> es(h);
            CHECK(es.eigenvalues().minCoeff() > 0.0);
        }
    }
}

TEST_CASE("simulated moments match a_grad") {
    const auto mv = ExpFamilyModel::normal_meanvar();
    const Eigen::VectorXd tau = mv.a_grad(vec2(0.0, -0.5));
    cpd::Rng rng(99);
    const long reps = 1000000;
    double s1 = 0.0, s2 = 0.0;
    for (long i = 0; i < reps; ++i) {
        const double x = rng.normal();
        s1 += x;
        s2 += x * x;
    }
    s1 /= static_cast<double>(reps);
    s2 /= static_cast<double>(reps);
    // SE of the mean of X is 1/sqrt(reps); of X^2 it is sqrt(2)/sqrt(reps).
    CHECK(std::abs(s1 - tau[0]) < 4.0 / std::sqrt(static_cast<double>(reps)));
    CHECK(std::abs(s2 - tau[1]) < 4.0 * std::sqrt(2.0 / static_cast<double>(reps)));
}

TEST_CASE("model construction validation") {
    CHECK_THROWS_AS(ExpFamilyModel::normal_mean(-1.0), cpd::InvalidInputError);
    Eigen::MatrixXd bad(2, 2);
    bad << 1.0, 2.0, 2.0, 1.0; // indefinite
    CHECK_THROWS_AS(ExpFamilyModel::mvnormal_mean(bad), cpd::InvalidInputError);
    Eigen::MatrixXd asym(2, 2);
    asym << 1.0, 0.5, 0.1, 1.0;
    CHECK_THROWS_AS(ExpFamilyModel::mvnormal_mean(asym), cpd::InvalidInputError);
}
