#include <doctest.h>

#include <stdexcept>

#include <cmath>
#include <vector>

#include "macorr/fbm.hpp"
#include "macorr/hurst.hpp"
#include "macorr/xcorr.hpp"

using namespace macorr;

TEST_SUITE_BEGIN("hurst");

TEST_CASE("exact power law fits exactly") {
    std::vector<std::pair<int, double>> curve;
    for (int n : {10, 20, 40, 80, 160}) curve.emplace_back(n, static_cast<double>(n));
    const ScalingFit fit = fit_scaling(curve);
    CHECK(fit.slope == doctest::Approx(1.0).epsilon(1e-12));
    CHECK(fit.exponent == doctest::Approx(0.5).epsilon(1e-12));
    CHECK(fit.r_squared == doctest::Approx(1.0).epsilon(1e-12));
    CHECK(fit.n_min == 10);
    CHECK(fit.n_max == 160);
}

TEST_CASE("exponent is invariant under curve rescaling") {
    std::vector<std::pair<int, double>> curve, scaled;
    for (int n : {16, 32, 64, 128}) {
        const double v = 0.37 * std::pow(n, 1.44);
        curve.emplace_back(n, v);
        scaled.emplace_back(n, 1000.0 * v);
    }
    const ScalingFit a = fit_scaling(curve);
    const ScalingFit b = fit_scaling(scaled);
    CHECK(std::abs(a.exponent - b.exponent) <= 1e-12);
    CHECK(b.intercept == doctest::Approx(a.intercept + std::log(1000.0)).epsilon(1e-12));
}

TEST_CASE("input validation") {
    std::vector<std::pair<int, double>> three = {{2, 1.0}, {4, 2.0}, {8, 4.0}};
    CHECK_THROWS_AS(fit_scaling(three), std::invalid_argument);

    std::vector<std::pair<int, double>> bad = {{2, 1.0}, {4, 2.0}, {8, -4.0}, {16, 8.0}};
    CHECK_THROWS_WITH_AS(fit_scaling(bad), doctest::Contains("n=8"), std::invalid_argument);

    std::vector<std::pair<int, double>> flat_n = {{4, 1.0}, {4, 2.0}, {4, 3.0}, {4, 4.0}};
    CHECK_THROWS_AS(fit_scaling(flat_n), std::invalid_argument);
}

TEST_CASE("recovers the exponent of a generated long-memory path") {
    Series path = fbm::generate_single(0.7, 1 << 17, 99);
    auto windows = geometric_windows(16, 1024, 1.5);
    XcorrOptions opt;
    auto curve = auto_scaling_curve(path, windows, opt);
    const ScalingFit fit = fit_scaling(curve);
    CHECK(std::abs(fit.exponent - 0.7) <= 0.07);
    CHECK(fit.r_squared > 0.98);
}

TEST_CASE("cross exponent is consistent with the two auto fits") {
    auto [x, y] = fbm::generate_pair({0.5, 0.8, 1 << 16, 4242});
    auto windows = geometric_windows(16, (1 << 16) / 64, 1.5);
    XcorrOptions opt;

    const ScalingFit fx = fit_scaling(auto_scaling_curve(x, windows, opt));
    const ScalingFit fy = fit_scaling(auto_scaling_curve(y, windows, opt));

    XcorrResult r = cross_correlation(x, y, windows, single_lag(0), opt);
    std::vector<std::pair<int, double>> cross;
    for (std::size_t iw = 0; iw < r.windows.size(); ++iw)
        if (r.cell(iw, 0).valid) cross.emplace_back(r.windows[iw].n, r.cell(iw, 0).value);
    const ScalingFit fxy = fit_scaling(cross);

    const double expected = (fx.exponent + fy.exponent) / 2.0;
    CHECK(std::abs(fxy.exponent - expected) <= 0.05);
}

TEST_SUITE_END();
