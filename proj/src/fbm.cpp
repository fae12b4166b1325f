#include "macorr/fbm.hpp"

#include <cmath>
#include <complex>
#include <numbers>
#include <random>
#include <stdexcept>
#include <vector>

#include "fft_util.hpp"
#include "macorr/analytic.hpp"

namespace macorr::fbm {

namespace {

constexpr double kPi = std::numbers::pi;

// Pinned uniform-(0,1] mapping and Box-Muller order, so a seed defines the
// same byte stream everywhere: per pair of Gaussians, draw u1 then u2,
// return sqrt(-2 ln u1) * (cos, sin)(2 pi u2).
class GaussianStream {
public:
    explicit GaussianStream(std::uint64_t seed) : engine_(seed) {}

    double next() {
        if (have_spare_) {
            have_spare_ = false;
            return spare_;
        }
        const double u1 = uniform01();
        const double u2 = uniform01();
        const double r = std::sqrt(-2.0 * std::log(u1));
        spare_ = r * std::sin(2.0 * kPi * u2);
        have_spare_ = true;
        return r * std::cos(2.0 * kPi * u2);
    }

private:
    double uniform01() {
        // (x >> 11) + 1 over 2^53: uniform on (0, 1], never 0, log-safe
        return (static_cast<double>(engine_() >> 11) + 1.0) * 0x1.0p-53;
    }

    std::mt19937_64 engine_;
    double spare_ = 0.0;
    bool have_spare_ = false;
};

// Increment-spectrum amplitudes: the target density is u^(1-2H) in the
// Nyquist-normalized frequency u = xi/pi. Each bin takes the *mean* density
// over one segment of a partition of [0, 1] whose segment lengths equal the
// bin's weight in the variance sum (1/M for the DC and Nyquist bins, 2/M
// for interior pairs), so the synthesized band power integrates the
// spectrum exactly. Point sampling with a zeroed DC bin instead pins the
// period sum of the increments to zero, which bends paths bridge-like and
// starves the long wavelengths; the DC bin here carries the lowest band as
// a shared random drift. At H = 1/2 every amplitude is exactly 1 and the
// increments are exactly white.
std::vector<double> kernel_amplitudes(double H, std::size_t half) {
    const double m = 2.0 * static_cast<double>(half);
    const double p = 2.0 - 2.0 * H;
    std::vector<double> a(half + 1, 0.0);
    double lo = 0.0, lo_pow = 0.0;
    for (std::size_t k = 0; k <= half; ++k) {
        const double hi = (k < half) ? (2.0 * static_cast<double>(k) + 1.0) / m : 1.0;
        const double hi_pow = std::pow(hi, p);
        a[k] = std::sqrt((hi_pow - lo_pow) / (p * (hi - lo)));
        lo = hi;
        lo_pow = hi_pow;
    }
    return a;
}

struct SharedDraws {
    std::vector<std::complex<double>> z;  // interior bins complex; z[0], z[half] real
    std::size_t half = 0;
};

SharedDraws draw_spectrum(std::uint64_t seed, std::size_t half) {
    GaussianStream g(seed);
    SharedDraws d;
    d.half = half;
    d.z.resize(half + 1);
    const double inv_sqrt2 = std::sqrt(0.5);
    for (std::size_t k = 1; k < half; ++k) {
        const double re = g.next();
        const double im = g.next();
        d.z[k] = std::complex<double>(re * inv_sqrt2, im * inv_sqrt2);
    }
    d.z[half] = std::complex<double>(g.next(), 0.0);  // Nyquist bin is real
    d.z[0] = std::complex<double>(g.next(), 0.0);     // DC bin: shared drift draw
    return d;
}

// Path from the shared draws through one kernel: increments by backward FFT
// of the shaped spectrum, normalized to unit variance at H = 1/2, then
// cumulative sum with B(0) = 0.
std::vector<double> synthesize(const SharedDraws& d, double H, long length) {
    const std::size_t half = d.half;
    const std::size_t M = 2 * half;
    const std::vector<double> amp = kernel_amplitudes(H, half);
    std::vector<std::complex<double>> spec(half + 1);
    for (std::size_t k = 0; k <= half; ++k) spec[k] = d.z[k] * amp[k];

    const std::vector<double> raw = detail::irfft(spec, M);
    const double scale = 1.0 / std::sqrt(static_cast<double>(M));

    std::vector<double> path(static_cast<std::size_t>(length));
    path[0] = 0.0;
    double acc = 0.0;
    for (long t = 1; t < length; ++t) {
        acc += raw[static_cast<std::size_t>(t - 1)] * scale;
        path[static_cast<std::size_t>(t)] = acc;
    }
    return path;
}

std::size_t grid_half(long length) {
    // 4x oversized frequency grid; only the first quarter of the periodic
    // synthesis is kept.
    return static_cast<std::size_t>(2 * length);
}

}  // namespace

void validate_spec(const PairSpec& spec) {
    if (!(spec.H1 > 0.0 && spec.H1 < 1.0) || !(spec.H2 > 0.0 && spec.H2 < 1.0))
        throw std::invalid_argument("fbm: Hurst exponents must lie in (0, 1)");
    if (spec.length < 2) throw std::invalid_argument("fbm: length must be >= 2");
    if (spec.method != "spectral-v1")
        throw std::invalid_argument("fbm: unknown method '" + spec.method + "'");
}

std::pair<Series, Series> generate_pair(const PairSpec& spec) {
    validate_spec(spec);
    const SharedDraws draws = draw_spectrum(spec.seed, grid_half(spec.length));

    Series a, b;
    a.values = synthesize(draws, spec.H1, spec.length);
    b.values = synthesize(draws, spec.H2, spec.length);
    return {std::move(a), std::move(b)};
}

Series generate_single(double H, long length, std::uint64_t seed) {
    PairSpec spec{H, H, length, seed};
    validate_spec(spec);
    Series out;
    out.values = synthesize(draw_spectrum(seed, grid_half(length)), H, length);
    return out;
}

double pair_covariance_exact(const PairSpec& spec, long t, long tau) {
    validate_spec(spec);
    const long u = t + tau;
    if (t < 0 || t >= spec.length || u < 0 || u >= spec.length)
        throw std::invalid_argument("fbm: covariance positions must lie inside the path");
    if (t == 0 || u == 0) return 0.0;

    const std::size_t half = grid_half(spec.length);
    const std::size_t M = 2 * half;
    const double c2 = 1.0 / static_cast<double>(M);
    const std::vector<double> a1 = kernel_amplitudes(spec.H1, half);
    const std::vector<double> a2 = kernel_amplitudes(spec.H2, half);

    // B[t] = c * sum_k Z_k A_k E_k(t) + conj, with E_k(t) the geometric sum
    // of e^{i xi_k j} over j < t; independent bins give
    //   <B1[t] B2[u]> = c^2 [ 2 sum_{0<k<half} A1 A2 Re(E(t) conj(E(u)))
    //                         + A1 A2 t u   at DC (E_0 = t)
    //                         + A1 A2 S(t) S(u) at Nyquist ].
    double total = a1[0] * a2[0] * static_cast<double>(t) * static_cast<double>(u);
    for (std::size_t k = 1; k < half; ++k) {
        const double xi = 2.0 * kPi * static_cast<double>(k) / static_cast<double>(M);
        const std::complex<double> w(std::cos(xi), std::sin(xi));
        const std::complex<double> et = (std::pow(w, static_cast<double>(t)) - 1.0) / (w - 1.0);
        const std::complex<double> eu = (std::pow(w, static_cast<double>(u)) - 1.0) / (w - 1.0);
        total += 2.0 * a1[k] * a2[k] * (et * std::conj(eu)).real();
    }
    // Nyquist: e^{i pi j} = (-1)^j, S(t) = sum_{j<t} (-1)^j = t odd ? 1 : 0
    const double st = (t % 2 != 0) ? 1.0 : 0.0;
    const double su = (u % 2 != 0) ? 1.0 : 0.0;
    total += a1[half] * a2[half] * st * su;
    return c2 * total;
}

double calibrate_scale(const PairSpec& spec) {
    validate_spec(spec);
    const long N = spec.length;

    // least squares of the generator's exact covariance against the analytic
    // form over interior (t, tau) pairs: scale = sum g*a / sum a^2
    std::vector<std::pair<long, long>> grid;
    for (long t : {N / 8, N / 4, 3 * N / 8, N / 2}) {
        for (long tau : {-N / 8, -N / 16, 0L, N / 16, N / 8}) {
            if (t > 0 && t + tau > 0 && t + tau < N) grid.emplace_back(t, tau);
        }
    }
    if (grid.empty()) grid.emplace_back(N / 2, 0);  // degenerate short paths
    double num = 0.0, den = 0.0;
    for (auto [t, tau] : grid) {
        const double g = pair_covariance_exact(spec, t, tau);
        const double a = analytic::pair_covariance(static_cast<double>(t), static_cast<double>(tau),
                                                   spec.H1, spec.H2);
        num += g * a;
        den += a * a;
    }
    if (den == 0.0) throw std::logic_error("fbm: degenerate calibration grid");
    return num / den;
}

std::uint64_t derive_seed(std::uint64_t base, std::uint64_t index) {
    // splitmix64 step applied to base + index
    std::uint64_t z = base + 0x9E3779B97F4A7C15ULL * (index + 1);
    z = (z ^ (z >> 30)) * 0xBF58476D1CE4E5B9ULL;
    z = (z ^ (z >> 27)) * 0x94D049BB133111EBULL;
    return z ^ (z >> 31);
}

}  // namespace macorr::fbm
