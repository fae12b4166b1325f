#pragma once

#include <span>
#include <utility>

namespace macorr {

/// Log-log power-law fit of a scaling curve. `exponent` is slope/2: the
/// Hurst exponent for an autocorrelation curve C_xx(0) ~ n^2H, and the
/// exponent average for a cross curve C_xy(0) ~ n^(H1+H2).
struct ScalingFit {
    double exponent = 0.0;
    double slope = 0.0;
    double intercept = 0.0;  // in ln-value units
    double r_squared = 0.0;
    int n_min = 0;
    int n_max = 0;
};

/// Ordinary least squares on (ln n, ln value). Needs at least 4 points and
/// strictly positive values; a non-positive value is reported with its n.
ScalingFit fit_scaling(std::span<const std::pair<int, double>> curve);

}  // namespace macorr
