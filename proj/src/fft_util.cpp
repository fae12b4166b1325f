#include "fft_util.hpp"

#include <fftw3.h>

#include <mutex>
#include <stdexcept>

namespace macorr::detail {

namespace {
// FFTW plan creation/destruction is not thread-safe; execution is.
std::mutex& planner_mutex() {
    static std::mutex m;
    return m;
}
}  // namespace

std::vector<std::complex<double>> rfft(const std::vector<double>& in, std::size_t L) {
    if (L < in.size() || L == 0) throw std::invalid_argument("rfft: bad transform length");
    std::vector<double> padded(L, 0.0);
    std::copy(in.begin(), in.end(), padded.begin());
    std::vector<std::complex<double>> out(L / 2 + 1);

    fftw_plan plan;
    {
        std::lock_guard<std::mutex> lock(planner_mutex());
        plan = fftw_plan_dft_r2c_1d(static_cast<int>(L), padded.data(),
                                    reinterpret_cast<fftw_complex*>(out.data()), FFTW_ESTIMATE);
    }
    if (!plan) throw std::runtime_error("rfft: fftw plan creation failed");
    fftw_execute(plan);
    {
        std::lock_guard<std::mutex> lock(planner_mutex());
        fftw_destroy_plan(plan);
    }
    return out;
}

std::vector<double> irfft(const std::vector<std::complex<double>>& spec, std::size_t L) {
    if (spec.size() != L / 2 + 1) throw std::invalid_argument("irfft: bad spectrum length");
    std::vector<std::complex<double>> tmp(spec);  // c2r destroys its input
    std::vector<double> out(L);

    fftw_plan plan;
    {
        std::lock_guard<std::mutex> lock(planner_mutex());
        plan = fftw_plan_dft_c2r_1d(static_cast<int>(L), reinterpret_cast<fftw_complex*>(tmp.data()),
                                    out.data(), FFTW_ESTIMATE);
    }
    if (!plan) throw std::runtime_error("irfft: fftw plan creation failed");
    fftw_execute(plan);
    {
        std::lock_guard<std::mutex> lock(planner_mutex());
        fftw_destroy_plan(plan);
    }
    return out;
}

}  // namespace macorr::detail
