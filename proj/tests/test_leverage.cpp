#include <doctest.h>

#include <stdexcept>
#include <tuple>

#include <cmath>
#include <random>
#include <vector>

#include "macorr/leverage.hpp"

using namespace macorr;

namespace {

// i.i.d. symmetric returns: geometric random walk, no coupling
Series null_prices(std::size_t n, std::uint64_t seed, double vol = 0.01) {
    std::mt19937_64 rng(seed);
    std::normal_distribution<double> g(0.0, vol);
    Series p;
    p.values.reserve(n);
    double log_price = 0.0;
    p.values.push_back(1.0);
    for (std::size_t i = 1; i < n; ++i) {
        log_price += g(rng);
        p.values.push_back(std::exp(log_price));
    }
    return p;
}

// Returns whose local volatility is boosted one step after a negative
// return: a crisp one-sided (down-market) coupling at lag `d`.
Series coupled_prices(std::size_t n, std::uint64_t seed, double gamma, int d) {
    std::mt19937_64 rng(seed);
    std::normal_distribution<double> g(0.0, 1.0);
    std::vector<double> r(n - 1);
    for (std::size_t t = 0; t < r.size(); ++t) {
        const bool boosted = t >= static_cast<std::size_t>(d) && r[t - d] < 0.0;
        r[t] = 0.01 * (1.0 + (boosted ? gamma : 0.0)) * g(rng);
    }
    Series p;
    p.values.reserve(n);
    double log_price = 0.0;
    p.values.push_back(1.0);
    for (double ret : r) {
        log_price += ret;
        p.values.push_back(std::exp(log_price));
    }
    return p;
}

struct Curve {
    std::vector<long> lags;
    std::vector<double> mean;
    std::vector<double> se;
};

template <typename MakePrices, typename Eval>
Curve ensemble_curve(int members, MakePrices make, Eval eval) {
    std::vector<std::vector<double>> samples;
    Curve out;
    for (int m = 0; m < members; ++m) {
        LeverageCurve c = eval(make(static_cast<std::uint64_t>(m)));
        if (out.lags.empty()) {
            out.lags = c.lags;
            samples.resize(c.lags.size());
        }
        REQUIRE(c.lags == out.lags);
        for (std::size_t i = 0; i < c.values.size(); ++i) samples[i].push_back(c.values[i]);
    }
    out.mean.resize(out.lags.size());
    out.se.resize(out.lags.size());
    for (std::size_t i = 0; i < samples.size(); ++i) {
        double mean = 0.0;
        for (double v : samples[i]) mean += v;
        mean /= static_cast<double>(samples[i].size());
        double ss = 0.0;
        for (double v : samples[i]) ss += (v - mean) * (v - mean);
        out.mean[i] = mean;
        out.se[i] = std::sqrt(ss / (samples[i].size() - 1.0) / samples[i].size());
    }
    return out;
}

}  // namespace

TEST_SUITE_BEGIN("leverage");

TEST_CASE("constant prices are a degenerate denominator") {
    Series p;
    p.values.assign(500, 10.0);
    XcorrOptions opt;
    opt.min_count = 10;
    CHECK_THROWS_AS(leverage_curve(p, 1, 10, {20, 0.0}, lag_range(-5, 5), opt),
                    std::invalid_argument);
}

TEST_CASE("invariant under price rescaling") {
    Series p = null_prices(2000, 8);
    Series p4 = p;
    for (double& v : p4.values) v *= 4.0;
    XcorrOptions opt;
    opt.min_count = 50;
    LagGrid lags = lag_range(-20, 60, 10);
    LeverageCurve a = leverage_curve(p, 1, 10, {30, 0.0}, lags, opt);
    LeverageCurve b = leverage_curve(p4, 1, 10, {30, 0.0}, lags, opt);
    REQUIRE(a.lags == b.lags);
    for (std::size_t i = 0; i < a.values.size(); ++i)
        CHECK(a.values[i] == doctest::Approx(b.values[i]).epsilon(1e-12));
}

TEST_CASE("numerator is the generic estimator on (returns, vol^2)") {
    Series p = null_prices(3000, 9);
    XcorrOptions opt;
    opt.min_count = 100;
    LagGrid lags = lag_range(-10, 30, 10);
    const long horizon = 2;
    const int T = 15;
    const WindowSpec w{40, 0.0};

    LeverageCurve curve = leverage_curve(p, horizon, T, w, lags, opt);

    Series r = log_returns(p, horizon);
    Series vol = rolling_volatility(r, T);
    for (double& v : vol.values) v *= v;
    const WindowSpec windows[1] = {w};
    XcorrResult direct = cross_correlation(r, vol, windows, lags, opt);
    REQUIRE(curve.lags.size() == direct.lags.size());
    for (std::size_t i = 0; i < curve.lags.size(); ++i) {
        CHECK(curve.numerator[i] == direct.cell(0, i).value);
        CHECK(curve.counts[i] == direct.cell(0, i).count);
    }
}

TEST_CASE("i.i.d. null model gives a flat curve") {
    XcorrOptions opt;
    opt.min_count = 100;
    LagGrid lags{{-60, -30, -10, 5, 15, 30, 60, 120}};
    Curve curve = ensemble_curve(
        100, [](std::uint64_t m) { return null_prices(4000, 7000 + m); },
        [&](const Series& p) { return leverage_curve(p, 1, 20, {50, 0.0}, lags, opt); });
    for (std::size_t i = 0; i < curve.lags.size(); ++i)
        CHECK(std::abs(curve.mean[i]) <= 3.0 * curve.se[i]);
}

TEST_CASE("down-market coupling: negative dip at small positive lags") {
    XcorrOptions opt;
    opt.min_count = 100;
    const int T = 10;
    LagGrid lags = lag_range(-40, 200, 4);
    Curve curve = ensemble_curve(
        40, [](std::uint64_t m) { return coupled_prices(6000, 31000 + m, 3.0, 1); },
        [&](const Series& p) { return leverage_curve(p, 1, T, {50, 0.0}, lags, opt); });

    double min_v = 1e300, max_v = -1e300;
    long min_lag = 0;
    for (std::size_t i = 0; i < curve.lags.size(); ++i) {
        if (curve.mean[i] < min_v) {
            min_v = curve.mean[i];
            min_lag = curve.lags[i];
        }
        max_v = std::max(max_v, curve.mean[i]);
    }
    CHECK(min_v < 0.0);
    CHECK(min_lag > 0);
    CHECK(min_lag <= 3 * T);
    CHECK(std::abs(min_v) > std::abs(max_v));  // down-market asymmetry

    // relaxes toward zero at large lags
    double tail = 0.0;
    int tail_n = 0;
    for (std::size_t i = 0; i < curve.lags.size(); ++i) {
        if (curve.lags[i] >= 150) {
            tail += std::abs(curve.mean[i]);
            ++tail_n;
        }
    }
    CHECK(tail / tail_n <= 0.25 * std::abs(min_v));
}

TEST_CASE("return-vol cross-correlation variants") {
    XcorrOptions opt;
    opt.min_count = 100;
    const WindowSpec windows[1] = {{50, 0.0}};

    SUBCASE("power validation") {
        Series p = null_prices(1000, 5);
        CHECK_THROWS_AS(return_vol_xcorr(p, 1, 10, 3, windows, single_lag(0), opt),
                        std::invalid_argument);
    }

    SUBCASE("zero-coupling model is flat at zero") {
        LagGrid lags{{-30, -10, 10, 30}};
        std::vector<std::vector<double>> samples(lags.lags.size());
        for (int m = 0; m < 100; ++m) {
            Series p = null_prices(4000, 9000 + static_cast<std::uint64_t>(m));
            XcorrResult r = return_vol_xcorr(p, 1, 20, 1, windows, lags, opt);
            for (std::size_t i = 0; i < lags.lags.size(); ++i)
                samples[i].push_back(r.cell(0, i).value);
        }
        for (auto& xs : samples) {
            double mean = 0.0;
            for (double v : xs) mean += v;
            mean /= static_cast<double>(xs.size());
            double ss = 0.0;
            for (double v : xs) ss += (v - mean) * (v - mean);
            const double se = std::sqrt(ss / (xs.size() - 1.0) / xs.size());
            CHECK(std::abs(mean) <= 3.0 * se);
        }
    }

    SUBCASE("asymmetric model: shared zero crossing and sign structure") {
        const int T = 10;
        LagGrid lags = lag_range(-40, 160, 4);
        std::vector<double> mean1(lags.lags.size(), 0.0), mean2(lags.lags.size(), 0.0);
        const int members = 40;
        for (int m = 0; m < members; ++m) {
            Series p = coupled_prices(6000, 52000 + static_cast<std::uint64_t>(m), 3.0, 1);
            XcorrResult r1 = return_vol_xcorr(p, 1, T, 1, windows, lags, opt);
            XcorrResult r2 = return_vol_xcorr(p, 1, T, 2, windows, lags, opt);
            for (std::size_t i = 0; i < lags.lags.size(); ++i) {
                mean1[i] += r1.cell(0, i).value / members;
                mean2[i] += r2.cell(0, i).value / members;
            }
        }
        auto stats = [&](const std::vector<double>& mean) {
            double min_v = 1e300, max_v = -1e300;
            long zero_after_min = -1;
            std::size_t min_i = 0;
            for (std::size_t i = 0; i < mean.size(); ++i)
                if (mean[i] < min_v) {
                    min_v = mean[i];
                    min_i = i;
                }
            for (std::size_t i = 0; i < mean.size(); ++i) max_v = std::max(max_v, mean[i]);
            for (std::size_t i = min_i; i < mean.size(); ++i)
                if (mean[i] >= 0.0) {
                    zero_after_min = lags.lags[i];
                    break;
                }
            return std::make_tuple(min_v, max_v, zero_after_min);
        };
        auto [min1, max1, z1] = stats(mean1);
        auto [min2, max2, z2] = stats(mean2);
        CHECK(min1 < 0.0);
        CHECK(min2 < 0.0);
        CHECK(std::abs(min1) > std::abs(max1));
        CHECK(std::abs(min2) > std::abs(max2));
        REQUIRE(z1 >= 0);
        REQUIRE(z2 >= 0);
        CHECK(std::abs(z1 - z2) <= 3 * 4);  // within a few grid steps
    }
}

TEST_SUITE_END();
