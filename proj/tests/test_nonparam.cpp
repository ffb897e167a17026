#include <cmath>

#include <doctest.h>

#include "cpd/errors.hpp"
#include "cpd/nonparam.hpp"
#include "cpd/rng.hpp"

TEST_CASE("truncation threshold") {
    CHECK(cpd::truncation_threshold(10000) == doctest::Approx(0.042919).epsilon(1e-4));
    double prev = cpd::truncation_threshold(3);
    for (long n : {10L, 100L, 1000L, 100000L}) {
        const double u = cpd::truncation_threshold(n);
        CHECK(u < prev);
        prev = u;
    }
    CHECK_THROWS_AS(cpd::truncation_threshold(1), cpd::InvalidInputError);
}

TEST_CASE("block length and block count") {
    CHECK(cpd::block_length(10000, 1.0) == 303);
    CHECK(cpd::m_of(10000, 303) == 33);
    // doubling C doubles k_n up to flooring
    const long k1 = cpd::block_length(100000, 1.1);
    const long k2 = cpd::block_length(100000, 2.2);
    CHECK(std::abs(k2 - 2 * k1) <= 1);
    CHECK_THROWS_AS(cpd::block_length(100, 10.0), cpd::InvalidInputError); // 2 k_n >= n
}

TEST_CASE("block-ratio statistic") {
    SUBCASE("all increments equal gives zero") {
        std::vector<double> inc(100, 0.01);
        CHECK(cpd::vstar(inc, 25, 0.05) == doctest::Approx(0.0));
    }

    SUBCASE("two-level series attains the boundary ratio") {
        // first half a, second half b, k_n = n/4: extreme block pair is
        // trailing all-a against leading all-b, ratio a^2/b^2
        const long n = 400;
        std::vector<double> inc(static_cast<std::size_t>(n));
        const double a = 0.01, b = 0.02;
        for (long i = 0; i < n; ++i) inc[static_cast<std::size_t>(i)] = i < n / 2 ? a : b;
        const double v = cpd::vstar(inc, n / 4, 0.05);
        CHECK(v == doctest::Approx(std::abs(a * a / (b * b) - 1.0)));
    }

    SUBCASE("truncated increments do not contribute") {
        std::vector<double> inc(120, 0.01);
        inc[60] = 5.0; // above threshold, excluded from both block sums
        std::vector<double> base(120, 0.01);
        base[60] = 0.0; // zero contributes nothing to a squared sum
        CHECK(cpd::vstar(inc, 30, 0.05) == doctest::Approx(cpd::vstar(base, 30, 0.05)));
    }

    SUBCASE("scale invariance below the threshold") {
        cpd::Rng rng(2);
        std::vector<double> inc(200);
        for (auto& x : inc) x = 0.01 * rng.normal();
        std::vector<double> scaled(inc);
        for (auto& x : scaled) x *= 2.0;
        CHECK(cpd::vstar(inc, 50, 1.0) == doctest::Approx(cpd::vstar(scaled, 50, 1.0)));
    }

    SUBCASE("all blocks degenerate") {
        std::vector<double> inc(100, 10.0); // everything truncated away
        CHECK_THROWS_AS(cpd::vstar(inc, 25, 0.05), cpd::DegenerateSeriesError);
    }
}

TEST_CASE("normalized statistic and decision") {
    // V* = 0 at n = 10^4, C = 1: k_n = 303, m_n = 33
    const double vn = cpd::vn_normalized(0.0, 10000, 303);
    const double expect = -2.0 * std::log(33.0) - 0.5 * std::log(std::log(33.0)) - std::log(3.0);
    CHECK(vn == doctest::Approx(expect));
    CHECK(vn == doctest::Approx(-8.7175).epsilon(1e-3));
    CHECK_FALSE(cpd::nonparam_decision(vn, 0.05));

    CHECK(cpd::gumbel_std_quantile(0.05) == doctest::Approx(2.9702).epsilon(1e-4));
    CHECK_THROWS_AS(cpd::vn_normalized(0.0, 10, 5), cpd::InvalidInputError); // m_n = 2
}

TEST_CASE("full report wiring") {
    cpd::Rng rng(7);
    const long n = 10000;
    std::vector<double> inc(static_cast<std::size_t>(n));
    const double sd = 1.0 / std::sqrt(static_cast<double>(n));
    for (auto& x : inc) x = sd * rng.normal();
    const auto report = cpd::nonparam_detect(inc, {1.5, 0.05});
    CHECK(report.u_n == doctest::Approx(cpd::truncation_threshold(n)));
    CHECK(report.k_n == cpd::block_length(n, 1.5));
    CHECK(report.m_n == n / report.k_n);
    CHECK(report.vstar > 0.0);
    CHECK(report.reject == (report.vn > cpd::gumbel_std_quantile(0.05)));
}
