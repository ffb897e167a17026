// Independent test oracle: computes -2 log Lambda_k by direct numerical
// maximization of the segment and pooled Gaussian log-likelihoods, without
// going through the library's sufficient-statistic machinery.
#pragma once

#include <cmath>
#include <functional>
#include <numbers>
#include <vector>

#include <Eigen/Dense>

namespace oracle {

// Nelder-Mead minimizer, good enough for the smooth low-dimensional
// likelihood surfaces used here.
inline Eigen::VectorXd nelder_mead(const std::function<double(const Eigen::VectorXd&)>& f,
                                   const Eigen::VectorXd& start, double init_step = 0.05,
                                   int max_iter = 2000, double tol = 1e-14) {
    const int n = static_cast<int>(start.size());
    std::vector<Eigen::VectorXd> pts(static_cast<std::size_t>(n + 1), start);
    for (int i = 0; i < n; ++i) pts[static_cast<std::size_t>(i + 1)][i] += init_step;
    std::vector<double> vals;
    vals.reserve(pts.size());
    for (const auto& p : pts) vals.push_back(f(p));

    auto order = [&] {
        for (std::size_t i = 1; i < pts.size(); ++i) {
            for (std::size_t j = i; j > 0 && vals[j] < vals[j - 1]; --j) {
                std::swap(vals[j], vals[j - 1]);
                std::swap(pts[j], pts[j - 1]);
            }
        }
    };
    order();

    for (int iter = 0; iter < max_iter; ++iter) {
        const std::size_t worst = pts.size() - 1;
        if (vals[worst] - vals[0] < tol) break;
        Eigen::VectorXd centroid = Eigen::VectorXd::Zero(n);
        for (std::size_t i = 0; i < worst; ++i) centroid += pts[i];
        centroid /= static_cast<double>(n);

        const Eigen::VectorXd refl = centroid + (centroid - pts[worst]);
        const double f_refl = f(refl);
        if (f_refl < vals[0]) {
            const Eigen::VectorXd exp_pt = centroid + 2.0 * (centroid - pts[worst]);
            const double f_exp = f(exp_pt);
            if (f_exp < f_refl) {
                pts[worst] = exp_pt;
                vals[worst] = f_exp;
            } else {
                pts[worst] = refl;
                vals[worst] = f_refl;
            }
        } else if (f_refl < vals[worst - 1]) {
            pts[worst] = refl;
            vals[worst] = f_refl;
        } else {
            const Eigen::VectorXd contr = centroid + 0.5 * (pts[worst] - centroid);
            const double f_contr = f(contr);
            if (f_contr < vals[worst]) {
                pts[worst] = contr;
                vals[worst] = f_contr;
            } else {
                for (std::size_t i = 1; i < pts.size(); ++i) {
                    pts[i] = pts[0] + 0.5 * (pts[i] - pts[0]);
                    vals[i] = f(pts[i]);
                }
            }
        }
        order();
    }
    return pts[0];
}

inline double max_loglik_normal_mean(const std::vector<double>& xs, long lo, long hi,
                                     double sigma2) {
    double mean0 = 0.0;
    for (long i = lo; i < hi; ++i) mean0 += xs[static_cast<std::size_t>(i)];
    mean0 /= static_cast<double>(hi - lo);
    auto neg_ll = [&](const Eigen::VectorXd& p) {
        double ll = 0.0;
        for (long i = lo; i < hi; ++i) {
            const double r = xs[static_cast<std::size_t>(i)] - p[0];
            ll += -0.5 * std::log(2.0 * std::numbers::pi * sigma2) - r * r / (2.0 * sigma2);
        }
        return -ll;
    };
    Eigen::VectorXd start(1);
    start << mean0 + 0.01;
    const Eigen::VectorXd best = nelder_mead(neg_ll, start);
    return -neg_ll(best);
}

inline double max_loglik_normal_meanvar(const std::vector<double>& xs, long lo, long hi) {
    double mean0 = 0.0, var0 = 0.0;
    const double len = static_cast<double>(hi - lo);
    for (long i = lo; i < hi; ++i) mean0 += xs[static_cast<std::size_t>(i)];
    mean0 /= len;
    for (long i = lo; i < hi; ++i) {
        const double r = xs[static_cast<std::size_t>(i)] - mean0;
        var0 += r * r;
    }
    var0 /= len;
    auto neg_ll = [&](const Eigen::VectorXd& p) {
        const double s2 = std::exp(p[1]);
        double ll = 0.0;
        for (long i = lo; i < hi; ++i) {
            const double r = xs[static_cast<std::size_t>(i)] - p[0];
            ll += -0.5 * std::log(2.0 * std::numbers::pi * s2) - r * r / (2.0 * s2);
        }
        return -ll;
    };
    Eigen::VectorXd start(2);
    start << mean0 + 0.01, std::log(var0) + 0.01;
    Eigen::VectorXd best = nelder_mead(neg_ll, start);
    best = nelder_mead(neg_ll, best, 0.001); // refine
    return -neg_ll(best);
}

inline double max_loglik_mvnormal_mean(const std::vector<Eigen::VectorXd>& xs, long lo, long hi,
                                       const Eigen::MatrixXd& cov) {
    const int m = static_cast<int>(cov.rows());
    const Eigen::MatrixXd prec = cov.inverse();
    const double logdet = std::log(cov.determinant());
    Eigen::VectorXd mean0 = Eigen::VectorXd::Zero(m);
    for (long i = lo; i < hi; ++i) mean0 += xs[static_cast<std::size_t>(i)];
    mean0 /= static_cast<double>(hi - lo);
    auto neg_ll = [&](const Eigen::VectorXd& p) {
        double ll = 0.0;
        for (long i = lo; i < hi; ++i) {
            const Eigen::VectorXd r = xs[static_cast<std::size_t>(i)] - p;
            ll += -0.5 * (m * std::log(2.0 * std::numbers::pi) + logdet + r.dot(prec * r));
        }
        return -ll;
    };
    Eigen::VectorXd best = nelder_mead(neg_ll, mean0 + Eigen::VectorXd::Constant(m, 0.01));
    best = nelder_mead(neg_ll, best, 0.001);
    return -neg_ll(best);
}

} // namespace oracle
