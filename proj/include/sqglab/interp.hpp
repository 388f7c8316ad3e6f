// Off-grid evaluation of band-limited fields: spectral zero-padding onto an
// oversampled grid followed by 6-point tensor Lagrange correction. Keeps the
// cost of semi-Lagrangian transport far below direct Fourier summation while
// staying well under the integrator tolerances.
#pragma once

#include <array>
#include <memory>

#include "sqglab/field.hpp"
#include "sqglab/grid.hpp"

namespace sqg {

// Spectral resampling onto a coarser/finer grid (truncation or zero-pad).
inline ScalarField resample(const ScalarField& f, int new_n) {
    if (new_n == f.N()) return f;
    const int n = f.N();
    const auto& s = f.spec();
    std::vector<cplx> out(static_cast<size_t>(new_n) * (new_n / 2 + 1), cplx{0, 0});
    int kmax = std::min(n / 2 - 1, new_n / 2 - 1);
    for (int k1 = -kmax; k1 <= kmax; ++k1) {
        int i_src = k1 >= 0 ? k1 : k1 + n;
        int i_dst = k1 >= 0 ? k1 : k1 + new_n;
        for (int k2 = 0; k2 <= kmax; ++k2)
            out[static_cast<size_t>(i_dst) * (new_n / 2 + 1) + k2] =
                s[static_cast<size_t>(i_src) * (n / 2 + 1) + k2];
    }
    auto g = ScalarField::from_spec(GridSpec(new_n, f.grid().dealias_fraction), std::move(out),
                                    f.time());
    g.set_band(std::min(f.band(), kmax));
    return g;
}

class FourierInterpolator {
  public:
    FourierInterpolator() = default;
    // oversample: fine grid has oversample * N points per dimension (at
    // least 4x the field band is advisable).
    explicit FourierInterpolator(const ScalarField& f, int oversample = 4) {
        n_fine_ = f.N() * oversample;
        ScalarField fine = resample(f, n_fine_);
        data_ = fine.phys();
        h_ = kTwoPi / n_fine_;
    }

    double operator()(double x, double y) const {
        // locate the 6-point stencil around (x, y)
        double tx = x / h_, ty = y / h_;
        int ix = static_cast<int>(std::floor(tx));
        int iy = static_cast<int>(std::floor(ty));
        double fx = tx - ix, fy = ty - iy;
        std::array<double, 6> wx, wy;
        weights(fx, wx);
        weights(fy, wy);
        double acc = 0.0;
        for (int a = 0; a < 6; ++a) {
            int i = wrap(ix + a - 2);
            double row = 0.0;
            const double* base = data_.data() + static_cast<size_t>(i) * n_fine_;
            for (int b = 0; b < 6; ++b) row += wy[b] * base[wrap(iy + b - 2)];
            acc += wx[a] * row;
        }
        return acc;
    }

  private:
    int wrap(int i) const {
        i %= n_fine_;
        return i < 0 ? i + n_fine_ : i;
    }
    // 6-point Lagrange weights at nodes {-2,-1,0,1,2,3} for offset f in [0,1).
    static void weights(double f, std::array<double, 6>& w) {
        const double n0 = f + 2.0, n1 = f + 1.0, n2 = f, n3 = f - 1.0, n4 = f - 2.0,
                     n5 = f - 3.0;
        w[0] = n1 * n2 * n3 * n4 * n5 / (-120.0);
        w[1] = n0 * n2 * n3 * n4 * n5 / 24.0;
        w[2] = n0 * n1 * n3 * n4 * n5 / (-12.0);
        w[3] = n0 * n1 * n2 * n4 * n5 / 12.0;
        w[4] = n0 * n1 * n2 * n3 * n5 / (-24.0);
        w[5] = n0 * n1 * n2 * n3 * n4 / 120.0;
    }

    int n_fine_ = 0;
    double h_ = 1.0;
    std::vector<double> data_;
};

struct VectorInterpolator {
    FourierInterpolator x, y;
    VectorInterpolator() = default;
    VectorInterpolator(const VectorField& v, int oversample = 4)
        : x(v.x, oversample), y(v.y, oversample) {}
};

}  // namespace sqg
