#include <doctest.h>

#include <stdexcept>

#include <cmath>
#include <random>

#include "macorr/moving_average.hpp"

using namespace macorr;

namespace {

// Direct-sum reference, O(N * n).
Series naive_moving_average(const Series& s, const WindowSpec& w) {
    const long N = static_cast<long>(s.values.size());
    const long n = w.n;
    const long m = static_cast<long>(std::floor(w.theta * n));
    Series out;
    out.origin_index = s.origin_index + (n - m);
    for (long t = n - m; t <= N - 1 - m; ++t) {
        double sum = 0.0;
        for (long k = -m; k <= n - m; ++k) sum += s.values[static_cast<std::size_t>(t - k)];
        out.values.push_back(sum / static_cast<double>(n + 1));
    }
    return out;
}

Series random_series(std::size_t n, std::uint64_t seed, double lo = -1.0, double hi = 1.0) {
    std::mt19937_64 rng(seed);
    std::uniform_real_distribution<double> u(lo, hi);
    Series s;
    s.values.resize(n);
    for (double& v : s.values) v = u(rng);
    return s;
}

}  // namespace

TEST_SUITE_BEGIN("moving_average");

TEST_CASE("trailing window hand value") {
    Series s{{0.0, 1.0, 2.0, 3.0, 4.0}};
    Series ma = moving_average(s, {2, 0.0});
    REQUIRE(ma.values.size() == 3);
    CHECK(ma.origin_index == 2);
    CHECK(ma.values[0] == 1.0);  // (s[2]+s[1]+s[0]) / 3
    CHECK(ma.values[1] == 2.0);
    CHECK(ma.values[2] == 3.0);
}

TEST_CASE("constant series maps to itself") {
    Series s;
    s.values.assign(64, 0.5);  // dyadic constant: prefix sums are exact
    for (double theta : {0.0, 0.3, 0.5, 1.0}) {
        for (int n : {2, 5, 17}) {
            Series ma = moving_average(s, {n, theta});
            REQUIRE(ma.values.size() == s.values.size() - static_cast<std::size_t>(n));
            for (double v : ma.values) CHECK(v == 0.5);
        }
    }
    s.values.assign(64, 0.1);
    Series ma = moving_average(s, {7, 0.5});
    for (double v : ma.values) CHECK(v == doctest::Approx(0.1).epsilon(1e-14));
}

TEST_CASE("centered window preserves linear ramps") {
    Series s;
    for (int t = 0; t < 16; ++t) s.values.push_back(static_cast<double>(t));
    Series ma = moving_average(s, {2, 0.5});
    CHECK(ma.origin_index == 1);
    for (std::size_t i = 0; i < ma.values.size(); ++i)
        CHECK(ma.values[i] == static_cast<double>(ma.origin_index) + static_cast<double>(i));
}

TEST_CASE("validity range per anchor position") {
    Series s = random_series(32, 1);
    SUBCASE("trailing") {
        Series ma = moving_average(s, {4, 0.0});
        CHECK(ma.origin_index == 4);
        CHECK(ma.values.size() == 28);
    }
    SUBCASE("leading") {
        Series ma = moving_average(s, {4, 1.0});
        CHECK(ma.origin_index == 0);
        CHECK(ma.values.size() == 28);
    }
}

TEST_CASE("prefix sums match the direct sum") {
    for (std::uint64_t seed : {2u, 3u}) {
        Series s = random_series(10'000, seed, -10.0, 10.0);
        for (double theta : {0.0, 0.3, 0.5, 1.0}) {
            for (int n : {2, 5, 16, 100}) {
                Series fast = moving_average(s, {n, theta});
                Series slow = naive_moving_average(s, {n, theta});
                REQUIRE(fast.values.size() == slow.values.size());
                REQUIRE(fast.origin_index == slow.origin_index);
                for (std::size_t i = 0; i < fast.values.size(); ++i) {
                    // tolerance scaled by the window-sum magnitude
                    double mag = std::abs(slow.values[i]) + 10.0;
                    CHECK(std::abs(fast.values[i] - slow.values[i]) <= 1e-12 * mag);
                }
            }
        }
    }
}

TEST_CASE("compensated summation path agrees") {
    Series s = random_series(4096, 5);
    Series plain = moving_average(s, {9, 0.0}, Compensation::Off);
    Series comp = moving_average(s, {9, 0.0}, Compensation::On);
    REQUIRE(plain.values.size() == comp.values.size());
    for (std::size_t i = 0; i < plain.values.size(); ++i)
        CHECK(plain.values[i] == doctest::Approx(comp.values[i]).epsilon(1e-12));
}

TEST_CASE("shift equivariance on the overlapping range") {
    Series s = random_series(256, 8);
    Series tail;
    tail.values.assign(s.values.begin() + 50, s.values.end());
    tail.origin_index = s.origin_index + 50;

    const WindowSpec w{10, 0.3};
    Series full = moving_average(s, w);
    Series sub = moving_average(tail, w);
    for (long idx = sub.first_index(); idx <= sub.last_index(); ++idx)
        CHECK(sub.at_index(idx) == doctest::Approx(full.at_index(idx)).epsilon(1e-12));
}

TEST_CASE("linearity") {
    Series s1 = random_series(300, 13);
    Series s2 = random_series(300, 14);
    const double a = 2.5, b = -1.25;
    Series mix;
    mix.values.resize(s1.values.size());
    for (std::size_t i = 0; i < mix.values.size(); ++i)
        mix.values[i] = a * s1.values[i] + b * s2.values[i];

    const WindowSpec w{8, 0.5};
    Series lhs = moving_average(mix, w);
    Series m1 = moving_average(s1, w);
    Series m2 = moving_average(s2, w);
    for (std::size_t i = 0; i < lhs.values.size(); ++i)
        CHECK(lhs.values[i] == doctest::Approx(a * m1.values[i] + b * m2.values[i]).epsilon(1e-12));
}

TEST_CASE("detrend subtracts the window mean on the valid range") {
    Series s = random_series(100, 21);
    const WindowSpec w{6, 0.0};
    Series d = detrend(s, w);
    Series ma = moving_average(s, w);
    REQUIRE(d.values.size() == ma.values.size());
    CHECK(d.origin_index == ma.origin_index);
    for (long idx = d.first_index(); idx <= d.last_index(); ++idx)
        CHECK(d.at_index(idx) == s.at_index(idx) - ma.at_index(idx));
}

TEST_CASE("window validation") {
    Series s = random_series(10, 30);
    CHECK_THROWS_AS(moving_average(s, {10, 0.0}), std::invalid_argument);  // no full window fits
    CHECK_THROWS_AS(moving_average(s, {1, 0.0}), std::invalid_argument);
    CHECK_THROWS_AS(moving_average(s, {4, 1.5}), std::invalid_argument);
    CHECK_NOTHROW(moving_average(s, {9, 0.0}));  // exactly one full window
}

TEST_CASE("window grids") {
    auto arith = arithmetic_windows(100, 500, 100);
    REQUIRE(arith.size() == 5);
    CHECK(arith.front().n == 100);
    CHECK(arith.back().n == 500);

    auto geom = geometric_windows(16, 1024, 2.0);
    REQUIRE(geom.size() == 7);
    CHECK(geom.front().n == 16);
    CHECK(geom.back().n == 1024);
    for (std::size_t i = 1; i < geom.size(); ++i) CHECK(geom[i].n > geom[i - 1].n);

    CHECK_THROWS_AS(arithmetic_windows(1, 10, 1), std::invalid_argument);
    CHECK_THROWS_AS(geometric_windows(16, 8, 1.3), std::invalid_argument);
    CHECK_THROWS_AS(geometric_windows(16, 32, 1.0), std::invalid_argument);
}

TEST_SUITE_END();
