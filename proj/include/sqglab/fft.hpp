// Thin RAII wrapper around FFTW3 for the 2D periodic transforms used
// throughout the library. Plans are cached per grid size and created with
// FFTW_UNALIGNED so they can execute on plain std::vector storage from any
// thread (planning itself is serialized; execution via the new-array API
// is thread-safe).
#pragma once

#include <complex>
#include <cstddef>
#include <map>
#include <mutex>
#include <vector>

#include <fftw3.h>

namespace sqg {

namespace detail {

struct PlanSet {
    fftw_plan r2c = nullptr;
    fftw_plan c2r = nullptr;
    fftw_plan c2c_fwd = nullptr;
    fftw_plan c2c_bwd = nullptr;
};

inline std::mutex& planner_mutex() {
    static std::mutex m;
    return m;
}

inline PlanSet& plans_for(int n) {
    static std::map<int, PlanSet> cache;
    static std::mutex cache_mutex;
    std::lock_guard<std::mutex> lk(cache_mutex);
    auto it = cache.find(n);
    if (it != cache.end()) return it->second;

    PlanSet ps;
    {
        std::lock_guard<std::mutex> plk(planner_mutex());
        std::vector<double> re(static_cast<size_t>(n) * n);
        std::vector<std::complex<double>> ch(static_cast<size_t>(n) * (n / 2 + 1));
        std::vector<std::complex<double>> cf(static_cast<size_t>(n) * n);
        std::vector<std::complex<double>> cg(static_cast<size_t>(n) * n);
        unsigned flags = FFTW_ESTIMATE | FFTW_UNALIGNED;
        ps.r2c = fftw_plan_dft_r2c_2d(n, n, re.data(),
                                      reinterpret_cast<fftw_complex*>(ch.data()), flags);
        ps.c2r = fftw_plan_dft_c2r_2d(n, n, reinterpret_cast<fftw_complex*>(ch.data()),
                                      re.data(), flags);
        ps.c2c_fwd = fftw_plan_dft_2d(n, n, reinterpret_cast<fftw_complex*>(cf.data()),
                                      reinterpret_cast<fftw_complex*>(cg.data()),
                                      FFTW_FORWARD, flags);
        ps.c2c_bwd = fftw_plan_dft_2d(n, n, reinterpret_cast<fftw_complex*>(cf.data()),
                                      reinterpret_cast<fftw_complex*>(cg.data()),
                                      FFTW_BACKWARD, flags);
    }
    return cache.emplace(n, ps).first->second;
}

}  // namespace detail

// Forward transforms carry the 1/N^2 normalization so spectral coefficients
// are O(field amplitude); inverse transforms are unnormalized.

inline void fft_r2c(int n, const double* phys, std::complex<double>* spec) {
    auto& ps = detail::plans_for(n);
    fftw_execute_dft_r2c(ps.r2c, const_cast<double*>(phys),
                         reinterpret_cast<fftw_complex*>(spec));
    const double scale = 1.0 / (static_cast<double>(n) * n);
    const size_t m = static_cast<size_t>(n) * (n / 2 + 1);
    for (size_t i = 0; i < m; ++i) spec[i] *= scale;
}

inline void fft_c2r(int n, const std::complex<double>* spec, double* phys) {
    auto& ps = detail::plans_for(n);
    // c2r destroys its input; work on a copy.
    std::vector<std::complex<double>> tmp(spec, spec + static_cast<size_t>(n) * (n / 2 + 1));
    fftw_execute_dft_c2r(ps.c2r, reinterpret_cast<fftw_complex*>(tmp.data()), phys);
}

inline void fft_c2c(int n, const std::complex<double>* in, std::complex<double>* out,
                    bool forward) {
    auto& ps = detail::plans_for(n);
    fftw_execute_dft(forward ? ps.c2c_fwd : ps.c2c_bwd,
                     reinterpret_cast<fftw_complex*>(const_cast<std::complex<double>*>(in)),
                     reinterpret_cast<fftw_complex*>(out));
    if (forward) {
        const double scale = 1.0 / (static_cast<double>(n) * n);
        const size_t m = static_cast<size_t>(n) * n;
        for (size_t i = 0; i < m; ++i) out[i] *= scale;
    }
}

}  // namespace sqg
