#pragma once

namespace macorr::analytic {

/// Parameters of the closed-form asymptotics for a pair of fractional
/// Brownian motions with Hurst exponents H1, H2 and window anchor theta.
/// s = H1 + H2 must lie in (0, 2).
struct AnalyticParams {
    double H1 = 0.5;
    double H2 = 0.5;
    double theta = 0.0;

    double s() const { return H1 + H2; }
    double coefficient() const;
};

void validate_params(const AnalyticParams& p);

/// Normalization coefficient of the two-fBm cross-covariance, equal to 1 at
/// H1 = H2 = 1/2. Evaluated as 1 / (Gamma(s+1) * sin(pi s / 2)), which is
/// finite and smooth across s = 1 where the gamma-product form is a 0*inf
/// indeterminate.
double covariance_coefficient(double H1, double H2);

/// The same coefficient as -(2/pi) * cos(s pi / 2) * Gamma(-s). Undefined at
/// s = 1 (gamma pole against cosine zero); kept as an independent algebraic
/// route for cross-checking away from s = 1.
double covariance_coefficient_literal(double H1, double H2);

/// <B_H1(t) B_H2(t+tau)> = D * (t^s + (t+tau)^s - |tau|^s), valid on the
/// quadrant t > 0, t + tau > 0.
double pair_covariance(double t, double tau, double H1, double H2);

/// Bracket of the trailing-window (theta = 0) asymptotic cross-correlation
/// as a function of the scaled lag tau_hat = tau/n in [0, 1).
double trailing_bracket(double tau_hat, double s);

/// Full trailing-window asymptote: n^s * D * trailing_bracket.
double asymptotic_xcorr_trailing(double tau_hat, double H1, double H2, double n);

/// Region of the (tau_hat, theta) square, numbered 1-4:
///   1: tau_hat <= theta, tau_hat + theta <= 1
///   2: tau_hat <= theta, tau_hat + theta >  1
///   3: tau_hat >  theta, tau_hat + theta <= 1
///   4: tau_hat >  theta, tau_hat + theta >  1
/// The formulas agree on the boundaries, so the tie-break is immaterial.
int select_case(double tau_hat, double theta);

/// Bracket of the case formula (unit n, unit D). `case_id` must match the
/// region of (tau_hat, theta) up to boundary ties.
double case_bracket(int case_id, double tau_hat, double theta, double s);

/// Full case formula: n^s * D * case_bracket.
double case_value(int case_id, double tau_hat, double theta, double H1, double H2, double n);

/// Convenience dispatcher: select_case then case_value.
double case_value_auto(double tau_hat, double theta, double H1, double H2, double n);

/// Numerical oracle for the bracket: adaptive quadrature of
///   -|tau_hat|^s + int |tau_hat - h|^s dh + int |tau_hat + k|^s dk
///   - int int |tau_hat - h + k|^s dh dk,
/// all panels over [-theta, 1-theta], split at the non-smooth loci
/// (h = tau_hat, k = -tau_hat, and the line tau_hat - h + k = 0).
/// Accepts tau_hat in (-1, 1); target absolute error 1e-10.
double bracket_quadrature(double tau_hat, double theta, double s, double abs_tol = 1e-10);

}  // namespace macorr::analytic
