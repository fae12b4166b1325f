#include "macorr/analytic.hpp"

#include <boost/math/quadrature/tanh_sinh.hpp>

#include <algorithm>
#include <cmath>
#include <functional>
#include <numbers>
#include <stdexcept>
#include <string>

namespace macorr::analytic {

namespace {

constexpr double kPi = std::numbers::pi;

void require_s(double s) {
    if (!(s > 0.0 && s < 2.0))
        throw std::invalid_argument("analytic: H1 + H2 = " + std::to_string(s) +
                                    " must lie in (0, 2)");
}

void require_tau_hat(double tau_hat) {
    if (!(tau_hat >= 0.0 && tau_hat < 1.0))
        throw std::invalid_argument("analytic: tau_hat must lie in [0, 1)");
}

void require_theta(double theta) {
    if (!(theta >= 0.0 && theta <= 1.0))
        throw std::invalid_argument("analytic: theta must lie in [0, 1]");
}

// Block-term bases are nonnegative once the region check passed; snub the
// odd 1-ulp negative produced by boundary arithmetic before pow.
double pospow(double base, double expo) { return std::pow(std::max(base, 0.0), expo); }

// Common to all four cases: -tau^s minus the double-integral term.
double common_bracket(double tau_hat, double s) {
    const double p2 = 2.0 + s;
    const double dbl = (std::pow(1.0 - tau_hat, p2) - 2.0 * std::pow(tau_hat, p2) +
                        std::pow(1.0 + tau_hat, p2)) /
                       ((1.0 + s) * (2.0 + s));
    return -std::pow(tau_hat, s) - dbl;
}

}  // namespace

double covariance_coefficient(double H1, double H2) {
    const double s = H1 + H2;
    require_s(s);
    return 1.0 / (std::tgamma(s + 1.0) * std::sin(kPi * s / 2.0));
}

double covariance_coefficient_literal(double H1, double H2) {
    const double s = H1 + H2;
    require_s(s);
    if (s == 1.0)
        throw std::invalid_argument(
            "analytic: gamma-product form is indeterminate at H1 + H2 = 1");
    return -(2.0 / kPi) * std::cos(s * kPi / 2.0) * std::tgamma(-s);
}

double AnalyticParams::coefficient() const { return covariance_coefficient(H1, H2); }

void validate_params(const AnalyticParams& p) {
    if (!(p.H1 > 0.0 && p.H1 < 1.0) || !(p.H2 > 0.0 && p.H2 < 1.0))
        throw std::invalid_argument("analytic: Hurst exponents must lie in (0, 1)");
    require_theta(p.theta);
}

double pair_covariance(double t, double tau, double H1, double H2) {
    const double s = H1 + H2;
    require_s(s);
    if (!(t > 0.0) || !(t + tau > 0.0))
        throw std::invalid_argument("analytic: pair covariance needs t > 0 and t + tau > 0");
    return covariance_coefficient(H1, H2) *
           (std::pow(t, s) + std::pow(t + tau, s) - std::pow(std::abs(tau), s));
}

double trailing_bracket(double tau_hat, double s) {
    require_s(s);
    require_tau_hat(tau_hat);
    const double p1 = 1.0 + s;
    const double mid = (std::pow(1.0 + tau_hat, p1) + std::pow(1.0 - tau_hat, p1)) / p1;
    return common_bracket(tau_hat, s) + mid;
}

double asymptotic_xcorr_trailing(double tau_hat, double H1, double H2, double n) {
    const double s = H1 + H2;
    return std::pow(n, s) * covariance_coefficient(H1, H2) * trailing_bracket(tau_hat, s);
}

int select_case(double tau_hat, double theta) {
    // ties resolve toward cases 3/4, so the trailing window (theta = 0)
    // always dispatches to the case containing its closed form
    if (tau_hat < theta) return tau_hat + theta <= 1.0 ? 1 : 2;
    return tau_hat + theta <= 1.0 ? 3 : 4;
}

double case_bracket(int case_id, double tau_hat, double theta, double s) {
    require_s(s);
    require_tau_hat(tau_hat);
    require_theta(theta);

    const bool below = tau_hat <= theta;   // tau_hat on the theta side of the split
    const bool above = tau_hat >= theta;
    const bool inside = tau_hat + theta <= 1.0;
    const bool outside = tau_hat + theta >= 1.0;
    const double p1 = 1.0 + s;

    double block;
    switch (case_id) {
        case 1:
            if (!(below && inside)) throw std::invalid_argument("analytic: (tau_hat, theta) not in case 1");
            block = pospow(1.0 + tau_hat - theta, p1) + pospow(theta - tau_hat, p1) +
                    pospow(1.0 - tau_hat - theta, p1) + pospow(tau_hat + theta, p1);
            break;
        case 2:
            if (!(below && outside)) throw std::invalid_argument("analytic: (tau_hat, theta) not in case 2");
            block = pospow(1.0 + tau_hat - theta, p1) + pospow(theta - tau_hat, p1) -
                    pospow(tau_hat + theta - 1.0, p1) + pospow(tau_hat + theta, p1);
            break;
        case 3:
            if (!(above && inside)) throw std::invalid_argument("analytic: (tau_hat, theta) not in case 3");
            block = pospow(1.0 + tau_hat - theta, p1) - pospow(tau_hat - theta, p1) +
                    pospow(1.0 - tau_hat - theta, p1) + pospow(tau_hat + theta, p1);
            break;
        case 4:
            if (!(above && outside)) throw std::invalid_argument("analytic: (tau_hat, theta) not in case 4");
            block = pospow(1.0 + tau_hat - theta, p1) - pospow(tau_hat - theta, p1) -
                    pospow(tau_hat + theta - 1.0, p1) + pospow(tau_hat + theta, p1);
            break;
        default:
            throw std::invalid_argument("analytic: case_id must be 1..4");
    }
    return common_bracket(tau_hat, s) + block / p1;
}

double case_value(int case_id, double tau_hat, double theta, double H1, double H2, double n) {
    const double s = H1 + H2;
    return std::pow(n, s) * covariance_coefficient(H1, H2) * case_bracket(case_id, tau_hat, theta, s);
}

double case_value_auto(double tau_hat, double theta, double H1, double H2, double n) {
    return case_value(select_case(tau_hat, theta), tau_hat, theta, H1, H2, n);
}

namespace {

double ts_integrate(const std::function<double(double)>& f, double lo, double hi, double tol) {
    if (!(hi > lo)) return 0.0;
    thread_local boost::math::quadrature::tanh_sinh<double> integrator;
    return integrator.integrate(f, lo, hi, tol);
}

// integral of |center - u|^s over [lo, hi], split at the kink when interior
double abs_pow_integral(double center, double s, double lo, double hi, double tol) {
    auto f = [center, s](double u) { return std::pow(std::abs(center - u), s); };
    if (center > lo && center < hi) return ts_integrate(f, lo, center, tol) + ts_integrate(f, center, hi, tol);
    return ts_integrate(f, lo, hi, tol);
}

}  // namespace

double bracket_quadrature(double tau_hat, double theta, double s, double abs_tol) {
    require_s(s);
    require_theta(theta);
    if (!(tau_hat > -1.0 && tau_hat < 1.0))
        throw std::invalid_argument("analytic: quadrature needs tau_hat in (-1, 1)");
    if (!(abs_tol > 0.0)) throw std::invalid_argument("analytic: abs_tol must be positive");

    const double a = -theta, b = 1.0 - theta;
    const double tol = std::min(abs_tol * 1e-2, 1e-12);

    const double i1 = abs_pow_integral(tau_hat, s, a, b, tol);    // |tau - h|
    const double i2 = abs_pow_integral(-tau_hat, s, a, b, tol);   // |tau + k| = |k - (-tau)|

    // double integral: inner over k with a kink at k = h - tau, outer over h
    // split where that kink crosses the k-limits (h = tau + a, h = tau + b)
    auto inner = [&](double h) { return abs_pow_integral(h - tau_hat, s, a, b, tol); };
    double cuts[4] = {a, std::clamp(tau_hat + a, a, b), std::clamp(tau_hat + b, a, b), b};
    std::sort(std::begin(cuts), std::end(cuts));
    double i3 = 0.0;
    for (int p = 0; p < 3; ++p) i3 += ts_integrate(inner, cuts[p], cuts[p + 1], tol * 10.0);

    return -std::pow(std::abs(tau_hat), s) + i1 + i2 - i3;
}

}  // namespace macorr::analytic
