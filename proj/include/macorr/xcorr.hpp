#pragma once

#include <span>
#include <utility>
#include <vector>

#include "macorr/moving_average.hpp"
#include "macorr/series.hpp"

namespace macorr {

/// Strictly increasing integer lags.
struct LagGrid {
    std::vector<long> lags;
};

/// Inclusive range [first, last] with the given stride.
LagGrid lag_range(long first, long last, long step = 1);
LagGrid single_lag(long lag);

struct XcorrCell {
    double value = 0.0;
    long count = 0;
    bool valid = false;
};

struct XcorrOptions {
    /// Cells averaging fewer positions than this are reported absent.
    long min_count = 100;
    /// Worker threads over the window axis. 0 reads MACORR_THREADS
    /// (default 1). Output is identical for any thread count.
    int threads = 0;
    Compensation comp = Compensation::Auto;
};

/// Grid of detrended cross-correlation values indexed by (window, lag).
struct XcorrResult {
    std::vector<WindowSpec> windows;
    std::vector<long> lags;
    std::vector<XcorrCell> cells;  // row-major, windows x lags
    /// Set by collapse_transform when the lag axis is rescaled to tau/n.
    bool lags_scaled = false;

    XcorrCell& cell(std::size_t iw, std::size_t il) { return cells[iw * lags.size() + il]; }
    const XcorrCell& cell(std::size_t iw, std::size_t il) const { return cells[iw * lags.size() + il]; }
    double tau_hat(std::size_t iw, std::size_t il) const {
        return static_cast<double>(lags[il]) / static_cast<double>(windows[iw].n);
    }
};

/// C_xy(tau; n): time average over t of the product of the two
/// moving-average-detrended series, x residual at t times y residual at
/// t + tau, for every (window, lag) pair. Series are aligned by absolute
/// origin_index. Each cell is normalized by its own count of jointly valid
/// positions; a cell with no valid position at all is an error.
XcorrResult cross_correlation(const Series& x, const Series& y,
                              std::span<const WindowSpec> windows, const LagGrid& lags,
                              const XcorrOptions& opt = {});

/// The tau = 0 diagonal of cross_correlation(x, x): one (n, C_xx(0)) point
/// per window. Values are means of squares, so nonnegative.
std::vector<std::pair<int, double>> auto_scaling_curve(const Series& x,
                                                       std::span<const WindowSpec> windows,
                                                       const XcorrOptions& opt = {});

/// Multiply every cell by n^-(H1+H2). With scale_lags set, downstream
/// consumers should read the lag axis as tau_hat = tau / n.
XcorrResult collapse_transform(XcorrResult r, double H1, double H2, bool scale_lags = false);

/// All lags in [-max_lag, max_lag] at once via FFT correlation of the
/// detrended series, with the same per-lag count normalization as the
/// direct path. Numerically equal to cross_correlation within rounding.
XcorrResult cross_correlation_fft(const Series& x, const Series& y, const WindowSpec& window,
                                  long max_lag, const XcorrOptions& opt = {});

/// Pooled average over realizations: sums and counts accumulate across
/// added pairs, so the result is the ensemble-plus-time average on the
/// same (window, lag) grid.
class EnsembleXcorr {
public:
    EnsembleXcorr(std::vector<WindowSpec> windows, LagGrid lags, XcorrOptions opt = {});

    void add(const Series& x, const Series& y);
    long realizations() const { return realizations_; }
    XcorrResult result() const;

private:
    std::vector<WindowSpec> windows_;
    LagGrid lags_;
    XcorrOptions opt_;
    std::vector<double> sums_;
    std::vector<long> counts_;
    long realizations_ = 0;
};

}  // namespace macorr
