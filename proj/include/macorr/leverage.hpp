#pragma once

#include <span>
#include <vector>

#include "macorr/series.hpp"
#include "macorr/xcorr.hpp"

namespace macorr {

/// Leverage correlation function L(tau) = C_{r, sigma^2}(tau; n) / <r^2>^2:
/// the detrended cross-correlation of returns with future squared
/// volatility, normalized by the squared plain second moment of returns.
struct LeverageCurve {
    std::vector<long> lags;
    std::vector<double> values;     // L(tau)
    std::vector<double> numerator;  // C_{r, sigma^2}(tau; n)
    std::vector<long> counts;
    double denominator = 0.0;  // <r^2>^2, plain time average, no detrending
    long horizon = 1;
    int vol_window = 2;
    WindowSpec window;
};

/// Build returns (log, `horizon` samples apart) and trailing volatility
/// (window `vol_window`) from prices, then L(tau) on the given lag grid.
/// The volatility-squared series keeps rolling_volatility's alignment, so
/// sigma^2 at absolute position t covers returns (t - vol_window, t].
/// All-zero returns (constant prices) make the denominator degenerate: error.
LeverageCurve leverage_curve(const Series& prices, long horizon, int vol_window,
                             const WindowSpec& window, const LagGrid& lags,
                             const XcorrOptions& opt = {});

/// Cross-correlation of returns with volatility (power 1) or squared
/// volatility (power 2) on a (window, lag) grid. Same building blocks and
/// alignment as leverage_curve, without the normalization.
XcorrResult return_vol_xcorr(const Series& prices, long horizon, int vol_window, int power,
                             std::span<const WindowSpec> windows, const LagGrid& lags,
                             const XcorrOptions& opt = {});

}  // namespace macorr
