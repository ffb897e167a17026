#include "cpd/simgen.hpp"

#include <cmath>
#include <numbers>

#include "cpd/errors.hpp"

namespace cpd {

namespace {

void check_sim_config(const SimConfig& cfg) {
    if (cfg.n < 2) throw InvalidInputError("SimConfig: n must be >= 2");
    if (!(cfg.sigma1 > 0.0 && cfg.sigma2 > 0.0)) {
        throw InvalidInputError("SimConfig: standard deviations must be positive");
    }
    if (!(cfg.gamma > 0.0 && cfg.gamma < 0.5)) {
        throw InvalidInputError("SimConfig: gamma outside (0, 1/2)");
    }
    if (!(std::abs(cfg.ar_coeff) < 1.0)) {
        throw InvalidInputError("SimConfig: ar coefficient outside (-1, 1)");
    }
}

std::vector<double> partial_sums_of(const std::vector<double>& data) {
    const long n = static_cast<long>(data.size());
    std::vector<double> ps(static_cast<std::size_t>(n + 1), 0.0);
    const double scale = 1.0 / std::sqrt(static_cast<double>(n));
    double acc = 0.0;
    for (long k = 1; k <= n; ++k) {
        acc += data[static_cast<std::size_t>(k - 1)];
        ps[static_cast<std::size_t>(k)] = scale * acc;
    }
    return ps;
}

long clamp_location(double lambda, long n, double gamma) {
    const long lo = static_cast<long>(std::ceil(gamma * static_cast<double>(n)));
    const long hi = static_cast<long>(std::floor((1.0 - gamma) * static_cast<double>(n)));
    const long k = static_cast<long>(std::llround(lambda * static_cast<double>(n)));
    return std::clamp(k, lo, hi);
}

} // namespace

double seasonality(double t) {
    return 1.0 - 0.2 * std::sin(0.75 * std::numbers::pi * t);
}

long stopping_time_location(const std::vector<double>& partial_sums, double gamma, double kappa) {
    const long n = static_cast<long>(partial_sums.size()) - 1;
    const long lo = static_cast<long>(std::ceil(gamma * static_cast<double>(n)));
    const long hi = static_cast<long>(std::floor((1.0 - gamma) * static_cast<double>(n)));
    for (long k = lo; k <= hi; ++k) {
        if (partial_sums[static_cast<std::size_t>(k)] < kappa) return k;
    }
    return hi;
}

long uniform_location(double gamma, long n, Rng& rng) {
    return clamp_location(rng.uniform(gamma, 1.0 - gamma), n, gamma);
}

long truncnorm_location(double gamma, long n, Rng& rng) {
    if (!(gamma > 0.0 && gamma < 0.5)) {
        throw InvalidInputError("truncnorm_location: gamma outside (0, 1/2)");
    }
    const double sd = 1.0 / 6.0 - gamma / 3.0;
    double lambda;
    do {
        lambda = 0.5 + sd * rng.normal();
    } while (lambda < gamma || lambda > 1.0 - gamma);
    return clamp_location(lambda, n, gamma);
}

std::vector<double> ar_transform(const std::vector<double>& data, double a) {
    if (!(std::abs(a) < 1.0)) throw InvalidInputError("ar_transform: |a| must be < 1");
    if (data.empty()) return {};
    std::vector<double> out(data.size());
    out[0] = data[0];
    const double comp = std::sqrt(1.0 - a * a);
    for (std::size_t k = 1; k < data.size(); ++k) {
        out[k] = a * data[k - 1] + comp * data[k];
    }
    return out;
}

SimOutput gen_amoc_normal(const SimConfig& cfg) {
    check_sim_config(cfg);
    Rng rng(cfg.seed);
    const double scale = 1.0 / std::sqrt(static_cast<double>(cfg.n));
    const double mean1 = scale * cfg.mu1;
    const double mean2 = scale * cfg.mu2;

    // The location is drawn before any observation noise. For the
    // stopping-time law the barrier is evaluated on an auxiliary path with
    // the pre-change distribution: the hitting index then has the
    // first-passage law but stays independent of the observed noise, which
    // is what the limit theory assumes about the change location. Hitting
    // the barrier with the observed path itself would couple the pre-change
    // window to the hitting event and bias the estimator.
    long k_star = -1;
    if (cfg.location_law == LocationLaw::Uniform) {
        k_star = uniform_location(cfg.gamma, cfg.n, rng);
    } else if (cfg.location_law == LocationLaw::TruncNormal) {
        k_star = truncnorm_location(cfg.gamma, cfg.n, rng);
    } else {
        Rng aux(seed_stream(cfg.seed, 0x7a115eedULL));
        std::vector<double> walk(static_cast<std::size_t>(cfg.n));
        for (auto& y : walk) y = aux.normal(mean1, cfg.sigma1);
        if (cfg.ar_coeff != 0.0) walk = ar_transform(walk, cfg.ar_coeff);
        k_star = stopping_time_location(partial_sums_of(walk), cfg.gamma, cfg.kappa);
    }

    std::vector<double> base(static_cast<std::size_t>(cfg.n));
    for (auto& y : base) y = rng.normal(mean1, cfg.sigma1);

    for (long i = k_star; i < cfg.n; ++i) {
        base[static_cast<std::size_t>(i)] = rng.normal(mean2, cfg.sigma2);
    }

    SimOutput out;
    out.data = cfg.ar_coeff != 0.0 ? ar_transform(base, cfg.ar_coeff) : std::move(base);
    out.k_star = k_star;
    out.lambda_star = static_cast<double>(k_star) / static_cast<double>(cfg.n);
    out.partial_sums = partial_sums_of(out.data);
    return out;
}

ItoOutput gen_ito_path(const ItoConfig& cfg) {
    if (cfg.n < 2) throw InvalidInputError("ItoConfig: n must be >= 2");
    if (!(std::abs(cfg.rho) <= 1.0)) throw InvalidInputError("ItoConfig: |rho| must be <= 1");
    Rng rng(cfg.seed);
    const long n = cfg.n;
    const double dt = 1.0 / static_cast<double>(n);
    const double sqdt = std::sqrt(dt);
    const double ortho = std::sqrt(1.0 - cfg.rho * cfg.rho);

    std::vector<double> dw(static_cast<std::size_t>(n));
    std::vector<double> sigma_base(static_cast<std::size_t>(n));
    ItoOutput out;
    out.path.assign(static_cast<std::size_t>(n + 1), 0.0);
    out.increments.resize(static_cast<std::size_t>(n));
    out.sigma_path.resize(static_cast<std::size_t>(n));

    // No-jump path first; the stopping time only ever looks at the part
    // of the path both variants share.
    double factor = 1.0;
    for (long k = 1; k <= n; ++k) {
        const double t_prev = static_cast<double>(k - 1) * dt;
        const double w = sqdt * rng.normal();
        const double wp = sqdt * rng.normal();
        const double sigma = factor * seasonality(t_prev);
        dw[static_cast<std::size_t>(k - 1)] = w;
        sigma_base[static_cast<std::size_t>(k - 1)] = sigma;
        const double inc = cfg.drift * dt + sigma * w;
        out.increments[static_cast<std::size_t>(k - 1)] = inc;
        out.path[static_cast<std::size_t>(k)] = out.path[static_cast<std::size_t>(k - 1)] + inc;
        factor += cfg.c * cfg.rho * w + cfg.c * ortho * wp;
    }

    out.k_star = stopping_time_location(out.path, cfg.gamma, cfg.kappa);

    // Replay the tail with the jump added to sigma, reusing the same noise.
    for (long k = out.k_star + 1; k <= n; ++k) {
        const double sigma = sigma_base[static_cast<std::size_t>(k - 1)] + cfg.jump_size;
        sigma_base[static_cast<std::size_t>(k - 1)] = sigma;
        const double inc = cfg.drift * dt + sigma * dw[static_cast<std::size_t>(k - 1)];
        out.increments[static_cast<std::size_t>(k - 1)] = inc;
        out.path[static_cast<std::size_t>(k)] = out.path[static_cast<std::size_t>(k - 1)] + inc;
    }
    out.sigma_path = std::move(sigma_base);
    return out;
}

} // namespace cpd
