#include "macorr/moving_average.hpp"

#include <cmath>
#include <stdexcept>
#include <string>

namespace macorr {

void validate_window(const WindowSpec& w) {
    if (w.n < 2) throw std::invalid_argument("moving_average: window n must be >= 2");
    if (!(w.theta >= 0.0 && w.theta <= 1.0))
        throw std::invalid_argument("moving_average: theta must lie in [0, 1]");
}

namespace {

// prefix[i] = sum of s[0..i-1]
std::vector<double> prefix_sums(const std::vector<double>& v, bool compensated) {
    std::vector<double> p(v.size() + 1);
    p[0] = 0.0;
    if (compensated) {
        double sum = 0.0, c = 0.0;
        for (std::size_t i = 0; i < v.size(); ++i) {
            double y = v[i] - c;
            double t = sum + y;
            c = (t - sum) - y;
            sum = t;
            p[i + 1] = sum;
        }
    } else {
        double sum = 0.0;
        for (std::size_t i = 0; i < v.size(); ++i) {
            sum += v[i];
            p[i + 1] = sum;
        }
    }
    return p;
}

bool use_compensation(Compensation comp, std::size_t n) {
    switch (comp) {
        case Compensation::On: return true;
        case Compensation::Off: return false;
        default: return n > 10'000'000;
    }
}

}  // namespace

Series moving_average(const Series& s, const WindowSpec& w, Compensation comp) {
    validate_window(w);
    const long N = static_cast<long>(s.values.size());
    const long n = w.n;
    if (N < n + 1)
        throw std::invalid_argument("moving_average: series of length " + std::to_string(N) +
                                    " shorter than window of " + std::to_string(n + 1) + " samples");

    // Sum over k in [-m, n-m] of s[t-k], i.e. samples [t-(n-m), t+m].
    const long m = static_cast<long>(std::floor(w.theta * n));
    const auto prefix = prefix_sums(s.values, use_compensation(comp, s.values.size()));
    const double inv = 1.0 / static_cast<double>(n + 1);

    Series out;
    out.axis_unit = s.axis_unit;
    out.origin_index = s.origin_index + (n - m);
    out.values.resize(static_cast<std::size_t>(N - n));
    for (long t = n - m; t <= N - 1 - m; ++t) {
        const double windowed = prefix[static_cast<std::size_t>(t + m + 1)] -
                                prefix[static_cast<std::size_t>(t - (n - m))];
        out.values[static_cast<std::size_t>(t - (n - m))] = windowed * inv;
    }
    return out;
}

Series detrend(const Series& s, const WindowSpec& w, Compensation comp) {
    Series ma = moving_average(s, w, comp);
    const long shift = ma.origin_index - s.origin_index;
    for (std::size_t i = 0; i < ma.values.size(); ++i)
        ma.values[i] = s.values[i + static_cast<std::size_t>(shift)] - ma.values[i];
    return ma;
}

std::vector<WindowSpec> arithmetic_windows(int first, int last, int step, double theta) {
    if (first < 2 || step < 1 || last < first)
        throw std::invalid_argument("arithmetic_windows: need 2 <= first <= last and step >= 1");
    std::vector<WindowSpec> out;
    for (int n = first; n <= last; n += step) out.push_back({n, theta});
    return out;
}

std::vector<WindowSpec> geometric_windows(int first, int last, double ratio, double theta) {
    if (first < 2 || last < first || !(ratio > 1.0))
        throw std::invalid_argument("geometric_windows: need 2 <= first <= last and ratio > 1");
    std::vector<WindowSpec> out;
    double x = first;
    int prev = -1;
    while (true) {
        int n = static_cast<int>(std::lround(x));
        if (n > last) break;
        if (n != prev) out.push_back({n, theta});
        prev = n;
        x *= ratio;
    }
    return out;
}

}  // namespace macorr
