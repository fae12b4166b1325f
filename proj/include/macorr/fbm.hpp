#pragma once

#include <cstdint>
#include <string>
#include <utility>

#include "macorr/series.hpp"

namespace macorr::fbm {

/// Specification of a coupled fBm pair: both paths are synthesized from one
/// shared frequency-domain Gaussian draw, filtered through the H1 and H2
/// kernels respectively, so the coupling is maximal. Same spec, same bytes.
struct PairSpec {
    double H1 = 0.5;
    double H2 = 0.5;
    long length = 2;
    std::uint64_t seed = 0;
    std::string method = "spectral-v1";
};

void validate_spec(const PairSpec& spec);

/// Generate the coupled pair (B_H1, B_H2), each `length` samples with
/// B(0) = 0. Spectral synthesis: increments are the inverse FFT of shared
/// complex Gaussian draws shaped by |xi|^(1/2 - H) on a 4x oversized grid
/// (first quarter kept, against periodicity); the path is their cumulative
/// sum. At H = 1/2 the increments are exactly white unit-variance Gaussians.
std::pair<Series, Series> generate_pair(const PairSpec& spec);

/// Single path convenience wrapper.
Series generate_single(double H, long length, std::uint64_t seed);

/// Exact ensemble covariance <B_H1(t) B_H2(t+tau)> of the generator's
/// discretization, as a closed sum over the frequency grid (no sampling
/// noise). Requires 0 <= t, t+tau < length.
double pair_covariance_exact(const PairSpec& spec, long t, long tau);

/// Scale constant relating the generator's covariance to the analytic
/// closed form, least-squares fitted over a (t, tau) grid using
/// pair_covariance_exact. Deterministic; depends on (H1, H2, length).
double calibrate_scale(const PairSpec& spec);

/// Member seed for ensemble stream `index` derived from `base` (splitmix64).
std::uint64_t derive_seed(std::uint64_t base, std::uint64_t index);

}  // namespace macorr::fbm
