#pragma once

#include <vector>

#include "macorr/series.hpp"

namespace macorr {

/// Moving-average window. A window holds n+1 samples; `theta` in [0,1]
/// anchors it relative to the current position: 0 trailing, 1/2 centered,
/// 1 leading. The sum runs over k in [-floor(theta*n), n - floor(theta*n)]
/// of s[t-k], normalized by the term count so constants map to themselves.
struct WindowSpec {
    int n = 2;
    double theta = 0.0;
};

void validate_window(const WindowSpec& w);

/// Prefix-sum accumulation mode. Auto switches to compensated (Kahan)
/// summation for series longer than 1e7 samples.
enum class Compensation { Auto, On, Off };

/// Windowed mean of `s`. Output covers only positions where the full window
/// fits; no partial windows, no zero fill. Output origin_index marks the
/// first valid position; length is s.size() - n.
Series moving_average(const Series& s, const WindowSpec& w, Compensation comp = Compensation::Auto);

/// s - moving_average(s) on the valid range.
Series detrend(const Series& s, const WindowSpec& w, Compensation comp = Compensation::Auto);

/// Window lists: arithmetic progressions (first, first+step, ..., <=last)
/// and geometric ones with the given ratio (rounded, deduplicated).
std::vector<WindowSpec> arithmetic_windows(int first, int last, int step, double theta = 0.0);
std::vector<WindowSpec> geometric_windows(int first, int last, double ratio = 1.3, double theta = 0.0);

}  // namespace macorr
