#pragma once

#include <cmath>
#include <stdexcept>
#include <vector>

namespace sqg {

// Uniform slice grid for time slabs.
struct TimeGrid {
    double t0 = 0.0;
    double dt = 1.0;
    int n = 0;

    double t(int i) const { return t0 + i * dt; }
    double t_end() const { return t(n - 1); }
    int nearest(double time) const {
        int i = static_cast<int>(std::lround((time - t0) / dt));
        return std::min(std::max(i, 0), n - 1);
    }
    bool contains_index(int i) const { return i >= 0 && i < n; }
    // Index range [lo, hi] of slices inside [a, b].
    std::pair<int, int> cover(double a, double b) const {
        int lo = static_cast<int>(std::ceil((a - t0) / dt - 1e-9));
        int hi = static_cast<int>(std::floor((b - t0) / dt + 1e-9));
        return {std::max(lo, 0), std::min(hi, n - 1)};
    }
};

// 4th-order centered first derivative along a slab of values; valid for
// 2 <= i <= n-3.
template <typename T, typename Axpy>
T d4_time(const std::vector<T>& slab, int i, double dt, const T& zero, Axpy&& axpy) {
    if (i < 2 || i + 2 >= static_cast<int>(slab.size()))
        throw std::out_of_range("d4_time: index too close to the slab edge");
    T out = zero;
    const double c = 1.0 / (12.0 * dt);
    axpy(out, 1.0 * c, slab[i - 2]);
    axpy(out, -8.0 * c, slab[i - 1]);
    axpy(out, 8.0 * c, slab[i + 1]);
    axpy(out, -1.0 * c, slab[i + 2]);
    return out;
}

inline std::vector<double> d4_coeffs(double dt) {
    const double c = 1.0 / (12.0 * dt);
    return {c, -8.0 * c, 0.0, 8.0 * c, -c};
}

// Cubic Lagrange weights in time over 4 consecutive slices starting at i0.
inline void cubic_time_weights(const TimeGrid& g, double time, int& i0, double w[4]) {
    double s = (time - g.t0) / g.dt;
    i0 = static_cast<int>(std::floor(s)) - 1;
    if (i0 < 0) i0 = 0;
    if (i0 + 3 >= g.n) i0 = g.n - 4;
    if (i0 < 0) throw std::out_of_range("cubic_time_weights: slab too short");
    double f = s - i0;  // in [1, 2] for interior points
    double m0 = f, m1 = f - 1.0, m2 = f - 2.0, m3 = f - 3.0;
    w[0] = m1 * m2 * m3 / (-6.0);
    w[1] = m0 * m2 * m3 / 2.0;
    w[2] = m0 * m1 * m3 / (-2.0);
    w[3] = m0 * m1 * m2 / 6.0;
}

}  // namespace sqg
