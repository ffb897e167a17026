#include "cpd/empirical.hpp"

namespace cpd {

double ks_distance(const EmpiricalDist& a, const EmpiricalDist& b) {
    double sup = 0.0;
    for (const auto* dist : {&a, &b}) {
        for (double x : dist->samples()) {
            sup = std::max(sup, std::abs(a.ecdf(x) - b.ecdf(x)));
        }
    }
    return sup;
}

double ks_distance(const EmpiricalDist& a, const std::function<double(double)>& cdf) {
    // The ECDF jumps at sample points; check both sides of each jump.
    double sup = 0.0;
    const auto& s = a.samples();
    const double m = static_cast<double>(a.count());
    for (std::size_t i = 0; i < s.size(); ++i) {
        const double f = cdf(s[i]);
        const double hi = static_cast<double>(i + 1) / m;
        const double lo = static_cast<double>(i) / m;
        sup = std::max({sup, std::abs(hi - f), std::abs(lo - f)});
    }
    return sup;
}

} // namespace cpd
