#include "macorr/xcorr.hpp"

#include <algorithm>
#include <cmath>
#include <cstdlib>
#include <stdexcept>
#include <string>
#include <thread>

#include "fft_util.hpp"

namespace macorr {

namespace {

int resolve_threads(int requested) {
    if (requested > 0) return requested;
    if (const char* env = std::getenv("MACORR_THREADS")) {
        int v = std::atoi(env);
        if (v > 0) return v;
    }
    return 1;
}

void validate_lags(const LagGrid& lags) {
    if (lags.lags.empty()) throw std::invalid_argument("xcorr: empty lag grid");
    for (std::size_t i = 1; i < lags.lags.size(); ++i)
        if (lags.lags[i] <= lags.lags[i - 1])
            throw std::invalid_argument("xcorr: lag grid must be strictly increasing");
}

struct CellSums {
    double sum = 0.0;
    long count = 0;
};

// Raw product sums over jointly valid positions for one detrended pair and
// one lag. Alignment is by absolute index: x residual at t, y residual at
// t + tau.
CellSums lag_sums(const Series& dx, const Series& dy, long tau) {
    const long tlo = std::max(dx.first_index(), dy.first_index() - tau);
    const long thi = std::min(dx.last_index(), dy.last_index() - tau);
    CellSums out;
    if (thi < tlo) return out;
    out.count = thi - tlo + 1;
    const double* a = dx.values.data() + (tlo - dx.origin_index);
    const double* b = dy.values.data() + (tlo + tau - dy.origin_index);
    double sum = 0.0;
    for (long i = 0; i < out.count; ++i) sum += a[i] * b[i];
    out.sum = sum;
    return out;
}

void fill_window_row(const Series& x, const Series& y, const WindowSpec& w,
                     const std::vector<long>& lags, const Compensation comp, double* sums,
                     long* counts) {
    const Series dx = detrend(x, w, comp);
    const Series dy = detrend(y, w, comp);
    for (std::size_t il = 0; il < lags.size(); ++il) {
        CellSums cs = lag_sums(dx, dy, lags[il]);
        if (cs.count == 0)
            throw std::invalid_argument("xcorr: no jointly valid positions for n=" +
                                        std::to_string(w.n) + ", tau=" + std::to_string(lags[il]));
        sums[il] = cs.sum;
        counts[il] = cs.count;
    }
}

// Shared by the one-shot estimator and the ensemble accumulator: raw sums
// and counts for the whole (window, lag) grid, optionally threaded over
// windows. Deterministic for any thread count (disjoint output slots).
void grid_sums(const Series& x, const Series& y, std::span<const WindowSpec> windows,
               const LagGrid& lags, const XcorrOptions& opt, std::vector<double>& sums,
               std::vector<long>& counts) {
    if (x.empty() || y.empty()) throw std::invalid_argument("xcorr: empty input series");
    if (windows.empty()) throw std::invalid_argument("xcorr: empty window list");
    validate_lags(lags);
    for (const auto& w : windows) validate_window(w);
    const long max_len = std::max<long>(static_cast<long>(x.size()), static_cast<long>(y.size()));
    for (long tau : lags.lags)
        if (std::labs(tau) >= max_len)
            throw std::invalid_argument("xcorr: |tau|=" + std::to_string(std::labs(tau)) +
                                        " must be smaller than the series length");

    const std::size_t nl = lags.lags.size();
    sums.assign(windows.size() * nl, 0.0);
    counts.assign(windows.size() * nl, 0);

    const int threads = std::min<int>(resolve_threads(opt.threads), static_cast<int>(windows.size()));
    if (threads <= 1) {
        for (std::size_t iw = 0; iw < windows.size(); ++iw)
            fill_window_row(x, y, windows[iw], lags.lags, opt.comp, &sums[iw * nl], &counts[iw * nl]);
        return;
    }

    std::vector<std::thread> pool;
    std::vector<std::exception_ptr> errors(static_cast<std::size_t>(threads));
    for (int t = 0; t < threads; ++t) {
        pool.emplace_back([&, t]() {
            try {
                for (std::size_t iw = static_cast<std::size_t>(t); iw < windows.size();
                     iw += static_cast<std::size_t>(threads))
                    fill_window_row(x, y, windows[iw], lags.lags, opt.comp, &sums[iw * nl],
                                    &counts[iw * nl]);
            } catch (...) {
                errors[static_cast<std::size_t>(t)] = std::current_exception();
            }
        });
    }
    for (auto& th : pool) th.join();
    for (auto& e : errors)
        if (e) std::rethrow_exception(e);
}

XcorrResult assemble(std::vector<WindowSpec> windows, LagGrid lags, const std::vector<double>& sums,
                     const std::vector<long>& counts, long min_count) {
    XcorrResult r;
    r.windows = std::move(windows);
    r.lags = std::move(lags.lags);
    r.cells.resize(sums.size());
    for (std::size_t i = 0; i < sums.size(); ++i) {
        if (counts[i] >= std::max<long>(min_count, 1)) {
            r.cells[i].value = sums[i] / static_cast<double>(counts[i]);
            r.cells[i].count = counts[i];
            r.cells[i].valid = true;
        }
    }
    return r;
}

}  // namespace

LagGrid lag_range(long first, long last, long step) {
    if (step < 1) throw std::invalid_argument("lag_range: step must be >= 1");
    if (last < first) throw std::invalid_argument("lag_range: last < first");
    LagGrid g;
    for (long tau = first; tau <= last; tau += step) g.lags.push_back(tau);
    return g;
}

LagGrid single_lag(long lag) { return LagGrid{{lag}}; }

XcorrResult cross_correlation(const Series& x, const Series& y,
                              std::span<const WindowSpec> windows, const LagGrid& lags,
                              const XcorrOptions& opt) {
    std::vector<double> sums;
    std::vector<long> counts;
    grid_sums(x, y, windows, lags, opt, sums, counts);
    return assemble({windows.begin(), windows.end()}, lags, sums, counts, opt.min_count);
}

std::vector<std::pair<int, double>> auto_scaling_curve(const Series& x,
                                                       std::span<const WindowSpec> windows,
                                                       const XcorrOptions& opt) {
    XcorrResult r = cross_correlation(x, x, windows, single_lag(0), opt);
    std::vector<std::pair<int, double>> curve;
    for (std::size_t iw = 0; iw < r.windows.size(); ++iw)
        if (r.cell(iw, 0).valid) curve.emplace_back(r.windows[iw].n, r.cell(iw, 0).value);
    return curve;
}

XcorrResult collapse_transform(XcorrResult r, double H1, double H2, bool scale_lags) {
    const double s = H1 + H2;
    for (std::size_t iw = 0; iw < r.windows.size(); ++iw) {
        const double factor = std::pow(static_cast<double>(r.windows[iw].n), -s);
        for (std::size_t il = 0; il < r.lags.size(); ++il)
            if (r.cell(iw, il).valid) r.cell(iw, il).value *= factor;
    }
    r.lags_scaled = scale_lags;
    return r;
}

XcorrResult cross_correlation_fft(const Series& x, const Series& y, const WindowSpec& window,
                                  long max_lag, const XcorrOptions& opt) {
    if (max_lag < 0) throw std::invalid_argument("xcorr: max_lag must be >= 0");
    LagGrid lags = lag_range(-max_lag, max_lag);
    validate_window(window);
    if (x.empty() || y.empty()) throw std::invalid_argument("xcorr: empty input series");

    const Series dx = detrend(x, window, opt.comp);
    const Series dy = detrend(y, window, opt.comp);
    const std::size_t la = dx.values.size(), lb = dy.values.size();
    const std::size_t L = la + lb;  // linear correlation needs la+lb-1 bins

    auto A = detail::rfft(dx.values, L);
    auto B = detail::rfft(dy.values, L);
    for (std::size_t k = 0; k < A.size(); ++k) A[k] = std::conj(A[k]) * B[k];
    const std::vector<double> raw = detail::irfft(A, L);  // raw[m] = sum_u dx[u] dy[u+m], m mod L

    // dy index u + tau - shift must equal the raw-correlation offset
    const long shift = dy.origin_index - dx.origin_index;
    const std::size_t nl = lags.lags.size();
    std::vector<double> sums(nl, 0.0);
    std::vector<long> counts(nl, 0);
    for (std::size_t il = 0; il < nl; ++il) {
        const long tau = lags.lags[il];
        const long tlo = std::max(dx.first_index(), dy.first_index() - tau);
        const long thi = std::min(dx.last_index(), dy.last_index() - tau);
        if (thi < tlo)
            throw std::invalid_argument("xcorr: no jointly valid positions for n=" +
                                        std::to_string(window.n) + ", tau=" + std::to_string(tau));
        counts[il] = thi - tlo + 1;
        long m = tau - shift;
        if (m < 0) m += static_cast<long>(L);
        sums[il] = raw[static_cast<std::size_t>(m)] / static_cast<double>(L);
    }
    return assemble({window}, lags, sums, counts, opt.min_count);
}

EnsembleXcorr::EnsembleXcorr(std::vector<WindowSpec> windows, LagGrid lags, XcorrOptions opt)
    : windows_(std::move(windows)), lags_(std::move(lags)), opt_(opt) {
    if (windows_.empty()) throw std::invalid_argument("xcorr: empty window list");
    validate_lags(lags_);
    sums_.assign(windows_.size() * lags_.lags.size(), 0.0);
    counts_.assign(windows_.size() * lags_.lags.size(), 0);
}

void EnsembleXcorr::add(const Series& x, const Series& y) {
    std::vector<double> sums;
    std::vector<long> counts;
    grid_sums(x, y, windows_, lags_, opt_, sums, counts);
    for (std::size_t i = 0; i < sums.size(); ++i) {
        sums_[i] += sums[i];
        counts_[i] += counts[i];
    }
    ++realizations_;
}

XcorrResult EnsembleXcorr::result() const {
    if (realizations_ == 0) throw std::logic_error("xcorr: ensemble has no realizations");
    return assemble(windows_, lags_, sums_, counts_, opt_.min_count);
}

}  // namespace macorr
