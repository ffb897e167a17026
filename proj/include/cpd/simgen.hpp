#pragma once

#include <cstdint>
#include <vector>

#include "cpd/rng.hpp"

namespace cpd {

enum class LocationLaw { StoppingTime, Uniform, TruncNormal };

/// One synthetic AMOC experiment: iid normal observations whose mean is
/// applied on the n^{-1/2} scale, with a change location drawn from the
/// configured law.
struct SimConfig {
    long n = 10000;
    double mu1 = -2.0, mu2 = -2.0;   // physical means; applied as n^{-1/2} mu
    double sigma1 = 1.0, sigma2 = 1.1;
    double gamma = 0.1;              // trimming fraction in (0, 1/2)
    LocationLaw location_law = LocationLaw::StoppingTime;
    double kappa = -1.0;             // stopping-time barrier
    double ar_coeff = 0.0;           // a in (-1, 1); 0 disables the AR transform
    std::uint64_t seed = 1;
};

struct SimOutput {
    std::vector<double> data;          // length n
    long k_star = 0;
    double lambda_star = 0.0;
    std::vector<double> partial_sums;  // length n+1; X_k = n^{-1/2} sum_{j<=k} data[j]
};

struct ItoConfig {
    long n = 10000;
    double drift = -2.0;
    double c = 0.1;          // vol-of-vol
    double rho = 0.5;
    double jump_size = 0.3;  // added to sigma after the change
    double gamma = 0.1;
    double kappa = -1.0;
    std::uint64_t seed = 1;
};

struct ItoOutput {
    std::vector<double> increments;  // length n
    std::vector<double> sigma_path;  // sigma(t_k), k = 0..n-1 (value used for step k+1)
    long k_star = 0;
    std::vector<double> path;        // X at t_k, k = 0..n
};

/// Seasonal factor v(t) = 1 - 0.2 sin(3 pi t / 4).
double seasonality(double t);

SimOutput gen_amoc_normal(const SimConfig& cfg);

/// Smallest k with k/n >= gamma and partial_sums[k] < kappa, capped at
/// floor((1-gamma) n).
long stopping_time_location(const std::vector<double>& partial_sums, double gamma, double kappa);

long uniform_location(double gamma, long n, Rng& rng);

/// lambda* ~ N(1/2, (1/6 - gamma/3)^2) truncated to [gamma, 1-gamma] by
/// rejection; k* = round(n lambda*).
long truncnorm_location(double gamma, long n, Rng& rng);

/// Y~_1 = Y_1, Y~_k = a Y_{k-1} + sqrt(1-a^2) Y_k.
std::vector<double> ar_transform(const std::vector<double>& data, double a);

ItoOutput gen_ito_path(const ItoConfig& cfg);

} // namespace cpd
