#include "cpd/asymptotics.hpp"

#include <cmath>

#include "cpd/detail/parallel.hpp"
#include "cpd/errors.hpp"
#include "cpd/rng.hpp"

namespace cpd {

GumbelNorming gumbel_norming(int d, long n) {
    if (d < 1) throw InvalidInputError("gumbel_norming: d must be >= 1");
    if (n < 16) throw InvalidInputError("gumbel_norming: n must be >= 16");
    const double x = std::log(static_cast<double>(n));
    const double a = std::sqrt(2.0 * std::log(x));
    const double b = 2.0 * std::log(x) + 0.5 * d * std::log(std::log(x)) - std::lgamma(0.5 * d);
    return {a, b, d, n};
}

double gumbel_critical_value(double alpha, int d, long n) {
    if (!(alpha > 0.0 && alpha < 1.0)) {
        throw InvalidInputError("gumbel_critical_value: alpha outside (0, 1)");
    }
    const GumbelNorming norm = gumbel_norming(d, n);
    const double t_alpha = -std::log(-0.5 * std::log1p(-alpha));
    return (t_alpha + norm.b_val) / norm.a_val;
}

double gumbel_pvalue(double stat_root, int d, long n) {
    if (stat_root < 0.0) throw InvalidInputError("gumbel_pvalue: stat_root must be >= 0");
    const GumbelNorming norm = gumbel_norming(d, n);
    const double t = norm.a_val * stat_root - norm.b_val;
    const double p = -std::expm1(-2.0 * std::exp(-t));
    return std::clamp(p, 0.0, 1.0);
}

double sup_bridge_critical_value(double alpha, int d, long n, const MonteCarloConfig& mc) {
    if (!(alpha > 0.0 && alpha < 1.0)) {
        throw InvalidInputError("sup_bridge_critical_value: alpha outside (0, 1)");
    }
    if (mc.replications < 1000) {
        throw InvalidInputError("sup_bridge_critical_value: need >= 1000 replications");
    }
    const long grid = n; // evaluation at t = i/n, i = 1..n-1
    const double inv_n = 1.0 / static_cast<double>(grid);
    const double sd = std::sqrt(inv_n);

    auto one_sup = [&](long rep) {
        Rng rng(seed_stream(mc.master_seed, static_cast<std::uint64_t>(rep)));
        // Per dimension: simulate W on the grid, form B(t) = W(t) - t W(1),
        // accumulating B^2(t)/(t(1-t)) over dimensions.
        std::vector<double> walk(static_cast<std::size_t>(grid));
        double sup = 0.0;
        std::vector<double> bsq(static_cast<std::size_t>(grid - 1), 0.0);
        for (int j = 0; j < d; ++j) {
            double w = 0.0;
            for (long i = 0; i < grid; ++i) {
                w += sd * rng.normal();
                walk[static_cast<std::size_t>(i)] = w;
            }
            const double w1 = walk[static_cast<std::size_t>(grid - 1)];
            for (long i = 1; i < grid; ++i) {
                const double t = static_cast<double>(i) * inv_n;
                const double bridge = walk[static_cast<std::size_t>(i - 1)] - t * w1;
                bsq[static_cast<std::size_t>(i - 1)] += bridge * bridge;
            }
        }
        for (long i = 1; i < grid; ++i) {
            const double t = static_cast<double>(i) * inv_n;
            sup = std::max(sup, bsq[static_cast<std::size_t>(i - 1)] / (t * (1.0 - t)));
        }
        return sup;
    };

    EmpiricalDist dist(detail::replicate_map(mc.replications, mc.parallelism, one_sup));
    return std::sqrt(dist.quantile(1.0 - alpha));
}

EmpiricalDist sample_argmax_what(const MonteCarloConfig& mc, const ArgmaxWhatOptions& opts) {
    if (mc.replications < 1000) {
        throw InvalidInputError("sample_argmax_what: need >= 1000 replications");
    }
    const long steps = static_cast<long>(std::llround(opts.half_width / opts.step));
    const double h = opts.step;
    const double sd = std::sqrt(h);

    auto one_argmax = [&](long rep) {
        Rng rng(seed_stream(mc.master_seed, static_cast<std::uint64_t>(rep)));
        double best = 0.0; // What(0) = 0
        double best_u = 0.0;
        // Fresh noise on each side (two independent Brownian motions);
        // walking outward in j keeps ties at the smallest |u|.
        double neg = 0.0, pos = 0.0;
        for (long j = 1; j <= steps; ++j) {
            const double drift = -0.5 * h;
            neg += sd * rng.normal() + drift;
            pos += sd * rng.normal() + drift;
            const double u = static_cast<double>(j) * h;
            if (neg > best) {
                best = neg;
                best_u = -u;
            }
            if (pos > best) {
                best = pos;
                best_u = u;
            }
        }
        return best_u;
    };

    return EmpiricalDist(detail::replicate_map(mc.replications, mc.parallelism, one_argmax));
}

AlternativeParams make_alternative_params(const ExpFamilyModel& model,
                                          const Eigen::VectorXd& theta1,
                                          const Eigen::VectorXd& theta2) {
    AlternativeParams ap;
    ap.theta1 = theta1;
    ap.theta2 = theta2;
    ap.tau1 = model.a_grad(theta1);
    ap.tau2 = model.a_grad(theta2);
    ap.sigma1_mat = model.a_hess(theta1);
    ap.sigma2_mat = model.a_hess(theta2);
    ap.tau_A = 0.5 * (ap.tau1 + ap.tau2);
    ap.delta_sq = (ap.tau1 - ap.tau2).squaredNorm();
    ap.Delta_sq = (theta1 - theta2).squaredNorm();
    ap.sigma_a_sq = ap.delta_sq > 0.0 ? sigma_a_sq(ap, model) : 0.0;
    return ap;
}

double sigma_a_sq(const AlternativeParams& ap, const ExpFamilyModel& model) {
    const Eigen::VectorXd diff = ap.tau1 - ap.tau2;
    const double dsq = diff.squaredNorm();
    if (!(dsq > 0.0)) throw InvalidInputError("sigma_a_sq: tau1 == tau2");
    return diff.dot(model.h_hess(ap.tau_A) * diff) / dsq;
}

double limit_covariance(double t, double lambda, double tp, double lambdap, double sigma_a_sq) {
    // Z*(1,1) = 0, so anything paired with (1,1) has zero covariance.
    if ((t == 1.0 && lambda == 1.0) || (tp == 1.0 && lambdap == 1.0)) return 0.0;
    double c;
    if (t <= lambda && tp <= lambdap) {
        c = (1.0 - lambda) * (1.0 - lambdap) *
            std::min(t / (1.0 - t), tp / (1.0 - tp));
    } else if (t <= lambda && tp > lambdap) {
        c = (1.0 - lambda) * lambdap *
            std::min(t * (1.0 - tp) / ((1.0 - t) * tp), 1.0);
    } else if (t > lambda && tp <= lambdap) {
        c = lambda * (1.0 - lambdap) *
            std::min((1.0 - t) * tp / (t * (1.0 - tp)), 1.0);
    } else {
        c = lambda * lambdap * std::min((1.0 - t) / t, (1.0 - tp) / tp);
    }
    return sigma_a_sq * c;
}

double mu_n(long k, long k_star, long n, const AlternativeParams& ap,
            const ExpFamilyModel& model) {
    if (k < 1 || k > n - 1 || k_star < 1 || k_star > n - 1) {
        throw InvalidInputError("mu_n: indices outside [1, n-1]");
    }
    const double kd = static_cast<double>(k);
    const double ks = static_cast<double>(k_star);
    const double nd = static_cast<double>(n);
    const Eigen::VectorXd pooled = (ks / nd) * ap.tau1 + ((nd - ks) / nd) * ap.tau2;
    if (k <= k_star) {
        const double w = (ks - kd) / (nd - kd);
        const Eigen::VectorXd mix = w * ap.tau1 + (1.0 - w) * ap.tau2;
        return kd * model.h_value(ap.tau1) + (nd - kd) * model.h_value(mix) -
               nd * model.h_value(pooled);
    }
    const double w = ks / kd;
    const Eigen::VectorXd mix = w * ap.tau1 + (1.0 - w) * ap.tau2;
    return kd * model.h_value(mix) + (nd - kd) * model.h_value(ap.tau2) -
           nd * model.h_value(pooled);
}

Eigen::VectorXd AltSample::c1_at(long k) const {
    return Eigen::Map<const Eigen::VectorXd>(c1.data() + static_cast<std::size_t>(k) * d, d);
}

Eigen::VectorXd AltSample::c2_at(long k) const {
    return Eigen::Map<const Eigen::VectorXd>(c2.data() + static_cast<std::size_t>(k) * d, d);
}

AltSample make_alt_sample(const std::vector<Eigen::VectorXd>& data1,
                          const std::vector<Eigen::VectorXd>& data2,
                          const ExpFamilyModel& model, const AlternativeParams& ap) {
    if (data1.size() != data2.size()) {
        throw InvalidInputError("make_alt_sample: sequences must have equal length");
    }
    AltSample s;
    s.n = static_cast<long>(data1.size());
    s.d = model.d();
    s.c1.assign(static_cast<std::size_t>(s.n + 1) * s.d, 0.0);
    s.c2.assign(static_cast<std::size_t>(s.n + 1) * s.d, 0.0);
    for (long k = 1; k <= s.n; ++k) {
        const Eigen::VectorXd t1 =
            model.suff_stat(data1[static_cast<std::size_t>(k - 1)]) - ap.tau1;
        const Eigen::VectorXd t2 =
            model.suff_stat(data2[static_cast<std::size_t>(k - 1)]) - ap.tau2;
        for (int j = 0; j < s.d; ++j) {
            s.c1[static_cast<std::size_t>(k) * s.d + j] =
                s.c1[static_cast<std::size_t>(k - 1) * s.d + j] + t1[j];
            s.c2[static_cast<std::size_t>(k) * s.d + j] =
                s.c2[static_cast<std::size_t>(k - 1) * s.d + j] + t2[j];
        }
    }
    return s;
}

double zn_value(const AltSample& sample, long k, long k_star,
                const AlternativeParams& ap, const ExpFamilyModel& model) {
    const long n = sample.n;
    if (k < 1 || k > n || k_star < 1 || k_star > n - 1) {
        throw InvalidInputError("zn_value: indices out of range");
    }
    auto h = [&](double x) {
        return model.h_grad(x * ap.tau1 + (1.0 - x) * ap.tau2);
    };
    const double nd = static_cast<double>(n);
    const double ks = static_cast<double>(k_star);
    const Eigen::VectorXd c2_tail = sample.c2_at(n) - sample.c2_at(k_star);
    const Eigen::VectorXd total = sample.c1_at(k_star) + c2_tail;
    if (k <= k_star) {
        const double kd = static_cast<double>(k);
        const Eigen::VectorXd middle = sample.c1_at(k_star) - sample.c1_at(k) + c2_tail;
        return h(1.0).dot(sample.c1_at(k)) + h((ks - kd) / (nd - kd)).dot(middle) -
               h(ks / nd).dot(total);
    }
    const Eigen::VectorXd upto_k = sample.c1_at(k_star) + sample.c2_at(k) - sample.c2_at(k_star);
    const Eigen::VectorXd after_k = sample.c2_at(n) - sample.c2_at(k);
    return h(ks / static_cast<double>(k)).dot(upto_k) + h(0.0).dot(after_k) -
           h(ks / nd).dot(total);
}

double mixed_fourth_moment(const std::array<std::pair<double, double>, 4>& intervals) {
    for (const auto& [a, b] : intervals) {
        if (!(0.0 <= a && a <= b && b <= 1.0)) {
            throw InvalidInputError("mixed_fourth_moment: need 0 <= alpha_i <= beta_i <= 1");
        }
    }
    auto overlap = [&](int i, int j) {
        const double lo = std::max(intervals[static_cast<std::size_t>(i)].first,
                                   intervals[static_cast<std::size_t>(j)].first);
        const double hi = std::min(intervals[static_cast<std::size_t>(i)].second,
                                   intervals[static_cast<std::size_t>(j)].second);
        return std::max(hi - lo, 0.0);
    };
    return overlap(0, 1) * overlap(2, 3) + overlap(0, 2) * overlap(1, 3) +
           overlap(0, 3) * overlap(1, 2);
}

} // namespace cpd
