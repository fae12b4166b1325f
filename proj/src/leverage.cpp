#include "macorr/leverage.hpp"

#include <cmath>
#include <stdexcept>

namespace macorr {

namespace {

Series squared(Series s) {
    for (double& v : s.values) v *= v;
    return s;
}

double mean_square(const Series& s) {
    double acc = 0.0;
    for (double v : s.values) acc += v * v;
    return acc / static_cast<double>(s.values.size());
}

}  // namespace

LeverageCurve leverage_curve(const Series& prices, long horizon, int vol_window,
                             const WindowSpec& window, const LagGrid& lags,
                             const XcorrOptions& opt) {
    const Series returns = log_returns(prices, horizon);
    const Series vol = rolling_volatility(returns, vol_window);

    const double r2 = mean_square(returns);
    if (r2 == 0.0)
        throw std::invalid_argument("leverage: degenerate denominator, returns are identically zero");

    // numerator is the generic estimator on (r, sigma^2); no separate path
    const WindowSpec windows[1] = {window};
    const XcorrResult num = cross_correlation(returns, squared(vol), windows, lags, opt);

    LeverageCurve curve;
    curve.horizon = horizon;
    curve.vol_window = vol_window;
    curve.window = window;
    curve.denominator = r2 * r2;
    for (std::size_t il = 0; il < num.lags.size(); ++il) {
        const XcorrCell& cell = num.cell(0, il);
        if (!cell.valid) continue;
        curve.lags.push_back(num.lags[il]);
        curve.numerator.push_back(cell.value);
        curve.counts.push_back(cell.count);
        curve.values.push_back(cell.value / curve.denominator);
    }
    return curve;
}

XcorrResult return_vol_xcorr(const Series& prices, long horizon, int vol_window, int power,
                             std::span<const WindowSpec> windows, const LagGrid& lags,
                             const XcorrOptions& opt) {
    if (power != 1 && power != 2)
        throw std::invalid_argument("leverage: volatility power must be 1 or 2");
    const Series returns = log_returns(prices, horizon);
    Series vol = rolling_volatility(returns, vol_window);
    if (power == 2) vol = squared(std::move(vol));
    return cross_correlation(returns, vol, windows, lags, opt);
}

}  // namespace macorr
