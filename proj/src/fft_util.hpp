#pragma once

#include <complex>
#include <cstddef>
#include <vector>

namespace macorr::detail {

/// Forward real-to-complex DFT of `in` zero-padded to length L
/// (e^{-i 2 pi k t / L} convention); returns L/2+1 bins.
std::vector<std::complex<double>> rfft(const std::vector<double>& in, std::size_t L);

/// Backward complex-to-real DFT (e^{+i...}, unnormalized): `spec` holds bins
/// k = 0..L/2 of a Hermitian spectrum; returns L real samples.
std::vector<double> irfft(const std::vector<std::complex<double>>& spec, std::size_t L);

}  // namespace macorr::detail
