#include <cmath>
#include <sstream>

#include <doctest.h>

#include "cpd/empirical.hpp"
#include "cpd/errors.hpp"
#include "cpd/mc_engine.hpp"
#include "cpd/rng.hpp"

TEST_CASE("seed stream") {
    CHECK(cpd::seed_stream(42, 0) == cpd::seed_stream(42, 0));
    CHECK(cpd::seed_stream(42, 0) != cpd::seed_stream(42, 1));
    CHECK(cpd::seed_stream(42, 7) != cpd::seed_stream(43, 7));
    // injectivity spot check over a window
    std::vector<std::uint64_t> seen;
    for (std::uint64_t i = 0; i < 1000; ++i) seen.push_back(cpd::seed_stream(1, i));
    std::sort(seen.begin(), seen.end());
    CHECK(std::adjacent_find(seen.begin(), seen.end()) == seen.end());
}

TEST_CASE("empirical distribution accessors") {
    const cpd::EmpiricalDist d({4.0, 1.0, 3.0, 2.0});
    CHECK(d.quantile(0.5) == doctest::Approx(2.0)); // ceil(0.5*4) = 2nd order stat
    CHECK(d.quantile(0.0) == doctest::Approx(1.0));
    CHECK(d.quantile(1.0) == doctest::Approx(4.0));
    CHECK(d.ecdf(2.0) == doctest::Approx(0.5));
    CHECK(d.ecdf(0.5) == doctest::Approx(0.0));

    double prev = -1e300;
    for (double p = 0.0; p <= 1.0; p += 0.05) {
        const double q = d.quantile(p);
        CHECK(q >= prev);
        prev = q;
    }
    CHECK_THROWS_AS(cpd::EmpiricalDist(std::vector<double>{}), cpd::InvalidInputError);
    CHECK_THROWS_AS(d.quantile(1.5), cpd::InvalidInputError);
}

TEST_CASE("KS distances") {
    const cpd::EmpiricalDist d({1.0, 2.0, 3.0});
    CHECK(cpd::ks_distance(d, d) == doctest::Approx(0.0));

    const cpd::EmpiricalDist zeros({0.0, 0.0, 0.0, 0.0});
    CHECK(cpd::ks_distance(zeros, [](double x) { return x < 1.0 ? 0.0 : 1.0; }) ==
          doctest::Approx(1.0));

    // symmetry and triangle inequality on sampled triples
    cpd::Rng rng(6);
    std::vector<double> xs(100), ys(100), zs(100);
    for (auto& v : xs) v = rng.normal();
    for (auto& v : ys) v = rng.normal(0.5, 1.2);
    for (auto& v : zs) v = rng.normal(-0.3, 0.8);
    const cpd::EmpiricalDist a(xs), b(ys), c(zs);
    CHECK(cpd::ks_distance(a, b) == doctest::Approx(cpd::ks_distance(b, a)));
    CHECK(cpd::ks_distance(a, c) <= cpd::ks_distance(a, b) + cpd::ks_distance(b, c) + 1e-12);
}

TEST_CASE("experiment runner") {
    cpd::ExperimentSpec spec;
    cpd::SimConfig cfg;
    cfg.n = 400;
    cfg.sigma2 = 1.6;
    spec.generator = cfg;
    spec.pipeline = cpd::Pipeline::ParametricDetect;

    SUBCASE("single replicate") {
        const auto result = cpd::run_experiment(spec, {1, 5, 1});
        CHECK(result.metrics.at("stat_root").count() == 1);
        CHECK(result.skipped == 0);
    }

    SUBCASE("parallelism does not change the result") {
        const auto serial = cpd::run_experiment(spec, {40, 5, 1});
        const auto parallel = cpd::run_experiment(spec, {40, 5, 4});
        CHECK(serial.metrics.at("stat_root").samples() ==
              parallel.metrics.at("stat_root").samples());
        CHECK(serial.metrics.at("lambda_hat").samples() ==
              parallel.metrics.at("lambda_hat").samples());
    }

    SUBCASE("generator and pipeline must match") {
        cpd::ExperimentSpec bad;
        bad.generator = cpd::ItoConfig{};
        bad.pipeline = cpd::Pipeline::ParametricDetect;
        CHECK_THROWS_AS(cpd::run_experiment(bad, {10, 1, 1}), cpd::InvalidInputError);
        bad.generator = cfg;
        bad.pipeline = cpd::Pipeline::NonparamDetect;
        CHECK_THROWS_AS(cpd::run_experiment(bad, {10, 1, 1}), cpd::InvalidInputError);
    }

    SUBCASE("nonparametric pipeline runs on the volatility generator") {
        cpd::ExperimentSpec np;
        cpd::ItoConfig ito;
        ito.n = 2000;
        np.generator = ito;
        np.pipeline = cpd::Pipeline::NonparamDetect;
        const auto result = cpd::run_experiment(np, {20, 3, 1});
        CHECK(result.metrics.at("vn").count() == 20);
        CHECK(result.metrics.at("reject").count() == 20);
    }

    SUBCASE("deviation pipeline produces the scaled location error") {
        cpd::ExperimentSpec dev;
        cpd::SimConfig mean_change = cfg;
        mean_change.mu2 = -12.0;
        mean_change.sigma2 = 1.0;
        dev.generator = mean_change;
        dev.pipeline = cpd::Pipeline::DeviationStat;
        const auto result = cpd::run_experiment(dev, {30, 9, 1});
        CHECK(result.metrics.at("deviation").count() + result.skipped == 30);
    }
}

TEST_CASE("experiment spec parsing") {
    std::istringstream in(
        "# comment line\n"
        "pipeline = parametric-detect\n"
        "generator = amoc\n"
        "n = 1234\n"
        "mu2 = -12   # trailing comment\n"
        "sigma2 = 1\n"
        "location_law = uniform\n"
        "alpha = 0.01\n"
        "source = bridge\n"
        "replications = 77\n"
        "master_seed = 99\n"
        "grid_t = 0.25, 0.5, 0.75\n");
    auto [spec, mc] = cpd::parse_experiment_spec(in);
    CHECK(spec.pipeline == cpd::Pipeline::ParametricDetect);
    CHECK(spec.alpha == doctest::Approx(0.01));
    CHECK(spec.source == cpd::CriticalValueSource::Bridge);
    CHECK(spec.grid_t.size() == 3);
    CHECK(spec.grid_t[1] == doctest::Approx(0.5));
    CHECK(mc.replications == 77);
    CHECK(mc.master_seed == 99);
    const auto* cfg = std::get_if<cpd::SimConfig>(&spec.generator);
    REQUIRE(cfg != nullptr);
    CHECK(cfg->n == 1234);
    CHECK(cfg->mu2 == doctest::Approx(-12.0));
    CHECK(cfg->location_law == cpd::LocationLaw::Uniform);

    std::istringstream bad("pipeline = bogus\n");
    CHECK_THROWS_AS(cpd::parse_experiment_spec(bad), cpd::InvalidInputError);
    std::istringstream unknown("unknown_key = 1\n");
    CHECK_THROWS_AS(cpd::parse_experiment_spec(unknown), cpd::InvalidInputError);
}
