#include <pybind11/numpy.h>
#include <pybind11/pybind11.h>
#include <pybind11/stl.h>

#include <cstdint>
#include <vector>

#include "macorr/analytic.hpp"
#include "macorr/fbm.hpp"
#include "macorr/hurst.hpp"
#include "macorr/leverage.hpp"
#include "macorr/series.hpp"
#include "macorr/xcorr.hpp"

namespace py = pybind11;
using namespace pybind11::literals;

namespace {

macorr::Series to_series(const py::array_t<double, py::array::c_style | py::array::forcecast>& a,
                         long origin = 0) {
    if (a.ndim() != 1) throw std::invalid_argument("expected a 1-d array");
    macorr::Series s;
    s.origin_index = origin;
    s.values.assign(a.data(), a.data() + a.size());
    return s;
}

py::array_t<double> to_array(const std::vector<double>& v) {
    return py::array_t<double>({static_cast<py::ssize_t>(v.size())}, v.data());
}

std::vector<macorr::WindowSpec> to_windows(const std::vector<int>& ns, double theta) {
    std::vector<macorr::WindowSpec> windows;
    windows.reserve(ns.size());
    for (int n : ns) windows.push_back({n, theta});
    return windows;
}

py::dict result_dict(const macorr::XcorrResult& r) {
    const py::ssize_t nw = static_cast<py::ssize_t>(r.windows.size());
    const py::ssize_t nl = static_cast<py::ssize_t>(r.lags.size());
    py::array_t<double> value({nw, nl});
    py::array_t<double> tau_hat({nw, nl});
    py::array_t<std::int64_t> count({nw, nl});
    auto v = value.mutable_unchecked<2>();
    auto th = tau_hat.mutable_unchecked<2>();
    auto c = count.mutable_unchecked<2>();
    for (py::ssize_t iw = 0; iw < nw; ++iw) {
        for (py::ssize_t il = 0; il < nl; ++il) {
            const macorr::XcorrCell& cell = r.cell(iw, il);
            v(iw, il) = cell.valid ? cell.value : std::numeric_limits<double>::quiet_NaN();
            c(iw, il) = cell.count;
            th(iw, il) = r.tau_hat(iw, il);
        }
    }
    std::vector<int> ns;
    for (const auto& w : r.windows) ns.push_back(w.n);
    return py::dict("n"_a = to_array(std::vector<double>(ns.begin(), ns.end())),
                    "lags"_a = r.lags, "tau_hat"_a = tau_hat, "value"_a = value,
                    "count"_a = count, "lags_scaled"_a = r.lags_scaled);
}

using Array = py::array_t<double, py::array::c_style | py::array::forcecast>;

}  // namespace

PYBIND11_MODULE(_macorr, m) {
    m.doc() = "moving-average detrended cross-correlation for long-range correlated series";
    m.attr("__version__") = "0.1.0";

    // series transforms
    m.def(
        "mean_subtract_integrate",
        [](const Array& a) { return to_array(macorr::mean_subtract_integrate(to_series(a)).values); },
        "values"_a, "Subtract the mean, then cumulative-sum.");
    m.def(
        "log_returns",
        [](const Array& p, long horizon) {
            return to_array(macorr::log_returns(to_series(p), horizon).values);
        },
        "prices"_a, "horizon"_a = 1);
    m.def(
        "rolling_volatility",
        [](const Array& r, int window) {
            return to_array(macorr::rolling_volatility(to_series(r), window).values);
        },
        "returns"_a, "window"_a,
        "Trailing sample standard deviation; element k covers returns [k, k+window-1].");
    m.def(
        "moving_average",
        [](const Array& a, int n, double theta) {
            macorr::Series ma = macorr::moving_average(to_series(a), {n, theta});
            return py::make_tuple(to_array(ma.values), ma.origin_index);
        },
        "values"_a, "n"_a, "theta"_a = 0.0,
        "Windowed mean on the valid range; returns (values, first_valid_index).");
    m.def(
        "detrend",
        [](const Array& a, int n, double theta) {
            macorr::Series d = macorr::detrend(to_series(a), {n, theta});
            return py::make_tuple(to_array(d.values), d.origin_index);
        },
        "values"_a, "n"_a, "theta"_a = 0.0);

    // estimator
    m.def(
        "cross_correlation",
        [](const Array& x, const Array& y, const std::vector<int>& ns,
           const std::vector<long>& lags, double theta, long min_count) {
            macorr::XcorrOptions opt;
            opt.min_count = min_count;
            return result_dict(macorr::cross_correlation(
                to_series(x), to_series(y), to_windows(ns, theta), macorr::LagGrid{lags}, opt));
        },
        "x"_a, "y"_a, "ns"_a, "lags"_a, "theta"_a = 0.0, "min_count"_a = 100,
        "C_xy(tau; n) grid; absent cells are NaN.");
    m.def(
        "cross_correlation_fft",
        [](const Array& x, const Array& y, int n, long max_lag, double theta, long min_count) {
            macorr::XcorrOptions opt;
            opt.min_count = min_count;
            return result_dict(
                macorr::cross_correlation_fft(to_series(x), to_series(y), {n, theta}, max_lag, opt));
        },
        "x"_a, "y"_a, "n"_a, "max_lag"_a, "theta"_a = 0.0, "min_count"_a = 100);
    m.def(
        "auto_scaling_curve",
        [](const Array& x, const std::vector<int>& ns, double theta, long min_count) {
            macorr::XcorrOptions opt;
            opt.min_count = min_count;
            return macorr::auto_scaling_curve(to_series(x), to_windows(ns, theta), opt);
        },
        "x"_a, "ns"_a, "theta"_a = 0.0, "min_count"_a = 100,
        "List of (n, C_xx(0)) scaling points.");
    m.def(
        "ensemble_cross_correlation",
        [](const std::vector<Array>& xs, const std::vector<Array>& ys, const std::vector<int>& ns,
           const std::vector<long>& lags, double theta, long min_count) {
            if (xs.size() != ys.size() || xs.empty())
                throw std::invalid_argument("expected equally many x and y realizations");
            macorr::XcorrOptions opt;
            opt.min_count = min_count;
            macorr::EnsembleXcorr acc(to_windows(ns, theta), macorr::LagGrid{lags}, opt);
            for (std::size_t i = 0; i < xs.size(); ++i) acc.add(to_series(xs[i]), to_series(ys[i]));
            return result_dict(acc.result());
        },
        "xs"_a, "ys"_a, "ns"_a, "lags"_a, "theta"_a = 0.0, "min_count"_a = 100,
        "Pooled ensemble-plus-time average of C_xy over paired realizations.");

    m.def(
        "fit_scaling",
        [](const std::vector<std::pair<int, double>>& curve) {
            macorr::ScalingFit f = macorr::fit_scaling(curve);
            return py::dict("exponent"_a = f.exponent, "slope"_a = f.slope,
                            "intercept"_a = f.intercept, "r_squared"_a = f.r_squared,
                            "n_min"_a = f.n_min, "n_max"_a = f.n_max);
        },
        "curve"_a, "Log-log OLS; exponent = slope / 2.");

    m.def(
        "leverage_curve",
        [](const Array& prices, long horizon, int vol_window, int n, const std::vector<long>& lags,
           double theta, long min_count) {
            macorr::XcorrOptions opt;
            opt.min_count = min_count;
            macorr::LeverageCurve c =
                macorr::leverage_curve(to_series(prices), horizon, vol_window, {n, theta},
                                       macorr::LagGrid{lags}, opt);
            return py::dict("lags"_a = c.lags, "L"_a = to_array(c.values),
                            "numerator"_a = to_array(c.numerator), "count"_a = c.counts,
                            "denominator"_a = c.denominator);
        },
        "prices"_a, "horizon"_a, "vol_window"_a, "n"_a, "lags"_a, "theta"_a = 0.0,
        "min_count"_a = 100);

    // analytic closed forms
    auto analytic = m.def_submodule("analytic", "closed-form fBm asymptotics");
    analytic.def("covariance_coefficient", &macorr::analytic::covariance_coefficient, "h1"_a,
                 "h2"_a, "Normalization coefficient; 1 at H1 = H2 = 1/2.");
    analytic.def("covariance_coefficient_literal", &macorr::analytic::covariance_coefficient_literal,
                 "h1"_a, "h2"_a);
    analytic.def("pair_covariance", &macorr::analytic::pair_covariance, "t"_a, "tau"_a, "h1"_a,
                 "h2"_a);
    analytic.def("trailing_bracket", &macorr::analytic::trailing_bracket, "tau_hat"_a, "s"_a);
    analytic.def("asymptotic_xcorr_trailing", &macorr::analytic::asymptotic_xcorr_trailing,
                 "tau_hat"_a, "h1"_a, "h2"_a, "n"_a);
    analytic.def("select_case", &macorr::analytic::select_case, "tau_hat"_a, "theta"_a);
    analytic.def("case_bracket", &macorr::analytic::case_bracket, "case_id"_a, "tau_hat"_a,
                 "theta"_a, "s"_a);
    analytic.def("case_value", &macorr::analytic::case_value, "case_id"_a, "tau_hat"_a, "theta"_a,
                 "h1"_a, "h2"_a, "n"_a);
    analytic.def("case_value_auto", &macorr::analytic::case_value_auto, "tau_hat"_a, "theta"_a,
                 "h1"_a, "h2"_a, "n"_a);
    analytic.def("bracket_quadrature", &macorr::analytic::bracket_quadrature, "tau_hat"_a,
                 "theta"_a, "s"_a, "abs_tol"_a = 1e-10,
                 "Adaptive-quadrature oracle for the bracket.");

    // generator
    auto fbm = m.def_submodule("fbm", "coupled fBm pair synthesis");
    fbm.def(
        "generate_pair",
        [](double h1, double h2, long length, std::uint64_t seed) {
            auto [x, y] = macorr::fbm::generate_pair({h1, h2, length, seed});
            return py::make_tuple(to_array(x.values), to_array(y.values));
        },
        "h1"_a, "h2"_a, "length"_a, "seed"_a,
        "Two paths driven by one shared noise realization.");
    fbm.def(
        "generate_single",
        [](double h, long length, std::uint64_t seed) {
            return to_array(macorr::fbm::generate_single(h, length, seed).values);
        },
        "h"_a, "length"_a, "seed"_a);
    fbm.def(
        "pair_covariance_exact",
        [](double h1, double h2, long length, std::uint64_t seed, long t, long tau) {
            return macorr::fbm::pair_covariance_exact({h1, h2, length, seed}, t, tau);
        },
        "h1"_a, "h2"_a, "length"_a, "seed"_a, "t"_a, "tau"_a);
    fbm.def(
        "calibrate_scale",
        [](double h1, double h2, long length) {
            return macorr::fbm::calibrate_scale({h1, h2, length, 0});
        },
        "h1"_a, "h2"_a, "length"_a,
        "Deterministic scale relating generator covariance to the closed form.");
    fbm.def("derive_seed", &macorr::fbm::derive_seed, "base"_a, "index"_a);
}
