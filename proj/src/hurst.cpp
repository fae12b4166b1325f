#include "macorr/hurst.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>
#include <string>
#include <vector>

namespace macorr {

ScalingFit fit_scaling(std::span<const std::pair<int, double>> curve) {
    if (curve.size() < 4)
        throw std::invalid_argument("fit_scaling: need at least 4 points, got " +
                                    std::to_string(curve.size()));
    for (const auto& [n, v] : curve)
        if (!(v > 0.0))
            throw std::invalid_argument("fit_scaling: non-positive value at n=" + std::to_string(n));

    const std::size_t m = curve.size();
    std::vector<double> lx(m), ly(m);
    for (std::size_t i = 0; i < m; ++i) {
        lx[i] = std::log(static_cast<double>(curve[i].first));
        ly[i] = std::log(curve[i].second);
    }
    double mx = 0.0, my = 0.0;
    for (std::size_t i = 0; i < m; ++i) {
        mx += lx[i];
        my += ly[i];
    }
    mx /= static_cast<double>(m);
    my /= static_cast<double>(m);

    double sxx = 0.0, sxy = 0.0, syy = 0.0;
    for (std::size_t i = 0; i < m; ++i) {
        const double dx = lx[i] - mx, dy = ly[i] - my;
        sxx += dx * dx;
        sxy += dx * dy;
        syy += dy * dy;
    }
    if (sxx == 0.0) throw std::invalid_argument("fit_scaling: all n identical");

    ScalingFit fit;
    fit.slope = sxy / sxx;
    fit.intercept = my - fit.slope * mx;
    fit.exponent = fit.slope / 2.0;
    if (syy > 0.0) {
        const double ss_res = syy - sxy * sxy / sxx;
        fit.r_squared = std::clamp(1.0 - ss_res / syy, 0.0, 1.0);
    } else {
        fit.r_squared = 1.0;  // constant curve fitted exactly by slope 0
    }
    auto [lo, hi] = std::minmax_element(curve.begin(), curve.end(),
                                        [](const auto& a, const auto& b) { return a.first < b.first; });
    fit.n_min = lo->first;
    fit.n_max = hi->first;
    return fit;
}

}  // namespace macorr
