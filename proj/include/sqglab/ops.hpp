// Fourier-multiplier operators on torus fields: fractional Laplacians, perp
// gradients, the Riesz-type operator T = grad_perp Lambda^{-1}, frequency
// projections, the second-order anti-divergence, dealiased products and
// C^N sup norms.
#pragma once

#include <atomic>
#include <cmath>
#include <functional>
#include <random>
#include <stdexcept>

#include "sqglab/field.hpp"

namespace sqg {

// ---------------------------------------------------------------------------
// multiplier application

template <typename Fn>
ScalarField apply_multiplier(const ScalarField& f, Fn&& m) {
    const int n = f.N();
    const auto& s = f.spec();
    std::vector<cplx> out(s.size());
    for (int i = 0; i < n; ++i) {
        int k1 = i <= n / 2 ? i : i - n;
        for (int j = 0; j <= n / 2; ++j)
            out[static_cast<size_t>(i) * (n / 2 + 1) + j] =
                m(k1, j) * s[static_cast<size_t>(i) * (n / 2 + 1) + j];
    }
    auto g = ScalarField::from_spec(f.grid(), std::move(out), f.time());
    g.set_band(f.band());
    return g;
}

template <typename Fn>
CScalarField apply_multiplier(const CScalarField& f, Fn&& m) {
    const int n = f.N();
    const auto& s = f.spec();
    std::vector<cplx> out(s.size());
    for (int i = 0; i < n; ++i) {
        int k1 = i <= n / 2 ? i : i - n;
        for (int j = 0; j < n; ++j) {
            int k2 = j <= n / 2 ? j : j - n;
            out[static_cast<size_t>(i) * n + j] = m(k1, k2) * s[static_cast<size_t>(i) * n + j];
        }
    }
    return CScalarField::from_spec(f.grid(), std::move(out), f.time());
}

// ---------------------------------------------------------------------------
// Lambda^s, derivatives, Riesz

template <typename Field>
Field fractional_laplacian(const Field& f, double s) {
    if (s < 0.0 && std::abs(f.mean()) > 1e-12 * (1.0 + f.sup_abs()))
        throw std::domain_error("fractional_laplacian: negative order on non-mean-zero field");
    return apply_multiplier(f, [s](int k1, int k2) -> cplx {
        if (k1 == 0 && k2 == 0) return {0.0, 0.0};
        return {std::pow(std::sqrt(double(k1) * k1 + double(k2) * k2), s), 0.0};
    });
}

template <typename Field>
Field derivative(const Field& f, int axis, int order = 1) {
    return apply_multiplier(f, [axis, order](int k1, int k2) -> cplx {
        double k = axis == 0 ? k1 : k2;
        cplx ik{0.0, k};
        cplx r{1.0, 0.0};
        for (int p = 0; p < order; ++p) r *= ik;
        return r;
    });
}

// grad_perp = (-d2, d1)
inline VectorField perp_gradient(const ScalarField& f) {
    ScalarField a = derivative(f, 1);
    a *= -1.0;
    return {std::move(a), derivative(f, 0)};
}

inline VectorField gradient(const ScalarField& f) {
    return {derivative(f, 0), derivative(f, 1)};
}

inline ScalarField divergence(const VectorField& v) {
    return derivative(v.x, 0) + derivative(v.y, 1);
}

// T = grad_perp Lambda^{-1}; symbol i xi_perp / |xi| with xi_perp = (-xi2, xi1).
inline VectorField riesz_perp(const ScalarField& f) {
    if (std::abs(f.mean()) > 1e-12 * (1.0 + f.sup_abs()))
        throw std::domain_error("riesz_perp: field must be mean-zero");
    ScalarField ux = apply_multiplier(f, [](int k1, int k2) -> cplx {
        if (k1 == 0 && k2 == 0) return {0.0, 0.0};
        double r = std::sqrt(double(k1) * k1 + double(k2) * k2);
        return cplx{0.0, -k2 / r};
    });
    ScalarField uy = apply_multiplier(f, [](int k1, int k2) -> cplx {
        if (k1 == 0 && k2 == 0) return {0.0, 0.0};
        double r = std::sqrt(double(k1) * k1 + double(k2) * k2);
        return cplx{0.0, k1 / r};
    });
    return {std::move(ux), std::move(uy)};
}

// ---------------------------------------------------------------------------
// frequency projections

// Sharp (default) or polynomially tapered band-pass onto lo <= |k| <= hi.
template <typename Field>
Field project_annulus_band(const Field& f, double lo, double hi, double taper_frac = 0.0) {
    return apply_multiplier(f, [lo, hi, taper_frac](int k1, int k2) -> cplx {
        double r = std::sqrt(double(k1) * k1 + double(k2) * k2);
        if (taper_frac <= 0.0) return {r >= lo && r <= hi ? 1.0 : 0.0, 0.0};
        double wlo = taper_frac * lo, whi = taper_frac * hi;
        auto smooth_up = [](double x) {
            if (x <= 0.0) return 0.0;
            if (x >= 1.0) return 1.0;
            double x2 = x * x;
            return x2 * x * (10.0 - 15.0 * x + 6.0 * x2);
        };
        double g = smooth_up((r - (lo - wlo)) / (wlo > 0 ? wlo : 1.0)) *
                   (1.0 - smooth_up((r - hi) / (whi > 0 ? whi : 1.0)));
        return {g, 0.0};
    });
}

// Paper-style annulus [lambda/2, 2 lambda].
template <typename Field>
Field project_annulus(const Field& f, double lambda, double taper_frac = 0.0) {
    return project_annulus_band(f, lambda / 2.0, 2.0 * lambda, taper_frac);
}

namespace detail {
// C^6 descending step: 1 for u<=0, 0 for u>=1 (order-6 smootherstep).
inline double smootherstep6(double u) {
    if (u <= 0.0) return 0.0;
    if (u >= 1.0) return 1.0;
    // S_6(x): degree 13, first 6 derivatives vanish at both ends,
    // S(x) + S(1-x) = 1.
    const double c[] = {1716.0, -9009.0, 20020.0, -24024.0, 16380.0, -6006.0, 924.0};
    double x7 = std::pow(u, 7.0);
    double p = 0.0, xp = 1.0;
    for (int i = 0; i < 7; ++i) { p += c[i] * xp; xp *= u; }
    return x7 * p;
}
}  // namespace detail

// Radial bump centered at dir (in units of lambda): identically 1 for
// |k/lambda - dir| <= |dir|/4, supported in |k/lambda - dir| <= |dir|/2,
// C^6 polynomial taper between.
inline double wave_bump(double k1, double k2, double d1, double d2, double lambda) {
    double dn = std::hypot(d1, d2);
    double r = std::hypot(k1 / lambda - d1, k2 / lambda - d2);
    if (r <= 0.25 * dn) return 1.0;
    if (r >= 0.5 * dn) return 0.0;
    return 1.0 - detail::smootherstep6((r - 0.25 * dn) / (0.25 * dn));
}

// One-sided projection for complex modulated waves.
inline CScalarField project_wave(const CScalarField& f, double d1, double d2, double lambda) {
    return apply_multiplier(f, [d1, d2, lambda](int k1, int k2) -> cplx {
        return {wave_bump(k1, k2, d1, d2, lambda), 0.0};
    });
}

// Hermitian-symmetrized variant for real fields (keeps both half-spectra).
inline ScalarField project_wave(const ScalarField& f, double d1, double d2, double lambda) {
    return apply_multiplier(f, [d1, d2, lambda](int k1, int k2) -> cplx {
        double b = wave_bump(k1, k2, d1, d2, lambda) + wave_bump(-k1, -k2, d1, d2, lambda);
        return {std::min(b, 1.0), 0.0};
    });
}

// ---------------------------------------------------------------------------
// anti-divergence  R = 2 grad grad Delta^{-2} - Id Delta^{-1}
// (symmetric, traceless, with div div R[f] = f on mean-zero f)

inline SymTensorField anti_divergence(const ScalarField& f) {
    if (std::abs(f.mean()) > 1e-12 * (1.0 + f.sup_abs()))
        throw std::domain_error("anti_divergence: field must be mean-zero");
    auto mul = [&f](int a, int b) {
        return apply_multiplier(f, [a, b](int k1, int k2) -> cplx {
            if (k1 == 0 && k2 == 0) return {0.0, 0.0};
            double r2 = double(k1) * k1 + double(k2) * k2;
            double ka = a == 0 ? k1 : k2;
            double kb = b == 0 ? k1 : k2;
            // 2 (i ka)(i kb)/r^4 - delta_ab * (-1/r^2)
            double val = -2.0 * ka * kb / (r2 * r2);
            if (a == b) val += 1.0 / r2;
            return {val, 0.0};
        });
    };
    return {mul(0, 0), mul(0, 1), mul(1, 1)};
}

inline ScalarField double_divergence(const SymTensorField& t) {
    return derivative(t.t11, 0, 2) + 2.0 * derivative(derivative(t.t12, 0), 1) +
           derivative(t.t22, 1, 2);
}

inline VectorField tensor_divergence(const SymTensorField& t) {
    return {derivative(t.t11, 0) + derivative(t.t12, 1),
            derivative(t.t12, 0) + derivative(t.t22, 1)};
}

// ---------------------------------------------------------------------------
// dealiased products

inline std::atomic<long>& dealias_overflow_count() {
    static std::atomic<long> n{0};
    return n;
}

inline ScalarField truncate_band(const ScalarField& f, int cut) {
    auto g = apply_multiplier(f, [cut](int k1, int k2) -> cplx {
        return {std::abs(k1) <= cut && std::abs(k2) <= cut ? 1.0 : 0.0, 0.0};
    });
    g.set_band(std::min(cut, f.band()));
    return g;
}

inline CScalarField truncate_band(const CScalarField& f, int cut) {
    return apply_multiplier(f, [cut](int k1, int k2) -> cplx {
        return {std::abs(k1) <= cut && std::abs(k2) <= cut ? 1.0 : 0.0, 0.0};
    });
}

// Pointwise product with 2/3-rule truncation. Exact whenever the combined
// bandwidth fits the retained spectrum; otherwise the overflow flag is set.
inline ScalarField multiply_dealiased(const ScalarField& f, const ScalarField& g,
                                      bool* overflow = nullptr) {
    if (!(f.grid() == g.grid()))
        throw std::invalid_argument("multiply_dealiased: grid mismatch");
    const int cut = f.grid().dealias_cut();
    bool over = f.band() + g.band() > cut;
    if (overflow) *overflow = over;
    if (over) dealias_overflow_count()++;
    ScalarField a = f.band() > cut ? truncate_band(f, cut) : f;
    ScalarField b = g.band() > cut ? truncate_band(g, cut) : g;
    const auto& pa = a.phys();
    const auto& pb = b.phys();
    std::vector<double> pr(pa.size());
    for (size_t i = 0; i < pa.size(); ++i) pr[i] = pa[i] * pb[i];
    auto r = ScalarField::from_phys(f.grid(), std::move(pr), f.time());
    r.set_band(std::min(a.band() + b.band(), f.grid().N / 2));
    return truncate_band(r, cut);
}

inline ScalarField multiply_dealiased(const ScalarField& f, const ScalarField& g, bool& overflow) {
    return multiply_dealiased(f, g, &overflow);
}

// Complex product, optionally on a zero-padded grid so that the full true
// bandwidth is retained alias-free (used by the microlocal analysis path).
inline CScalarField multiply_padded(const CScalarField& f, const CScalarField& g,
                                    int pad_factor = 2) {
    const int n = f.N();
    const int np = n * pad_factor;
    if (pad_factor <= 1) {
        const auto& pa = f.phys();
        const auto& pb = g.phys();
        std::vector<cplx> pr(pa.size());
        for (size_t i = 0; i < pa.size(); ++i) pr[i] = pa[i] * pb[i];
        return CScalarField::from_phys(f.grid(), std::move(pr), f.time());
    }
    auto pad = [n, np](const CScalarField& h) {
        std::vector<cplx> big(static_cast<size_t>(np) * np, cplx{0, 0});
        const auto& s = h.spec();
        for (int i = 0; i < n; ++i) {
            int k1 = i <= n / 2 ? i : i - n;
            int ip = k1 >= 0 ? k1 : k1 + np;
            for (int j = 0; j < n; ++j) {
                int k2 = j <= n / 2 ? j : j - n;
                int jp = k2 >= 0 ? k2 : k2 + np;
                big[static_cast<size_t>(ip) * np + jp] = s[static_cast<size_t>(i) * n + j];
            }
        }
        return CScalarField::from_spec(GridSpec(np, 1.0), std::move(big), h.time());
    };
    CScalarField fa = pad(f), fb = pad(g);
    const auto& pa = fa.phys();
    const auto& pb = fb.phys();
    std::vector<cplx> pr(pa.size());
    for (size_t i = 0; i < pa.size(); ++i) pr[i] = pa[i] * pb[i];
    CScalarField prod = CScalarField::from_phys(GridSpec(np, 1.0), std::move(pr), f.time());
    // fold back to the original grid (content beyond N/2 is discarded)
    const auto& s = prod.spec();
    std::vector<cplx> out(static_cast<size_t>(n) * n, cplx{0, 0});
    for (int i = 0; i < n; ++i) {
        int k1 = i <= n / 2 ? i : i - n;
        int ip = k1 >= 0 ? k1 : k1 + np;
        for (int j = 0; j < n; ++j) {
            int k2 = j <= n / 2 ? j : j - n;
            int jp = k2 >= 0 ? k2 : k2 + np;
            out[static_cast<size_t>(i) * n + j] = s[static_cast<size_t>(ip) * np + jp];
        }
    }
    return CScalarField::from_spec(f.grid(), std::move(out), f.time());
}

// ---------------------------------------------------------------------------
// norms

// Max over grid points and over all derivative multi-indices of total
// order `order`, derivatives taken spectrally.
inline double sup_norm(const ScalarField& f, int order = 0) {
    if (order == 0) return f.sup_abs();
    double m = 0.0;
    for (int a1 = 0; a1 <= order; ++a1) {
        int a2 = order - a1;
        ScalarField d = f;
        if (a1 > 0) d = derivative(d, 0, a1);
        if (a2 > 0) d = derivative(d, 1, a2);
        m = std::max(m, d.sup_abs());
    }
    return m;
}

inline double sup_norm(const VectorField& v, int order = 0) {
    return std::max(sup_norm(v.x, order), sup_norm(v.y, order));
}

inline double sup_norm(const SymTensorField& t, int order = 0) {
    return std::max({sup_norm(t.t11, order), sup_norm(t.t12, order), sup_norm(t.t22, order)});
}

// Fraction of spectral energy outside max-wavenumber radius (|k|_2 > r).
inline double energy_outside(const ScalarField& f, double r) {
    const int n = f.N();
    const auto& s = f.spec();
    double inside = 0.0, outside = 0.0;
    for (int i = 0; i < n; ++i) {
        int k1 = i <= n / 2 ? i : i - n;
        for (int j = 0; j <= n / 2; ++j) {
            double w = (j == 0 || j == n / 2) ? 1.0 : 2.0;  // hermitian pair weight
            double e = w * std::norm(s[static_cast<size_t>(i) * (n / 2 + 1) + j]);
            if (std::sqrt(double(k1) * k1 + double(j) * j) > r) outside += e;
            else inside += e;
        }
    }
    double tot = inside + outside;
    return tot > 0.0 ? outside / tot : 0.0;
}

inline double energy_outside_annulus(const CScalarField& f, double lo, double hi) {
    const int n = f.N();
    const auto& s = f.spec();
    double in = 0.0, out = 0.0;
    for (int i = 0; i < n; ++i) {
        int k1 = i <= n / 2 ? i : i - n;
        for (int j = 0; j < n; ++j) {
            int k2 = j <= n / 2 ? j : j - n;
            double r = std::sqrt(double(k1) * k1 + double(k2) * k2);
            double e = std::norm(s[static_cast<size_t>(i) * n + j]);
            if (r < lo || r > hi) out += e;
            else in += e;
        }
    }
    double tot = in + out;
    return tot > 0.0 ? out / tot : 0.0;
}

inline double energy_outside_annulus(const ScalarField& f, double lo, double hi) {
    const int n = f.N();
    const auto& s = f.spec();
    double in = 0.0, out = 0.0;
    for (int i = 0; i < n; ++i) {
        int k1 = i <= n / 2 ? i : i - n;
        for (int j = 0; j <= n / 2; ++j) {
            double w = (j == 0 || j == n / 2) ? 1.0 : 2.0;
            double r = std::sqrt(double(k1) * k1 + double(j) * j);
            double e = w * std::norm(s[static_cast<size_t>(i) * (n / 2 + 1) + j]);
            if (r < lo || r > hi) out += e;
            else in += e;
        }
    }
    double tot = in + out;
    return tot > 0.0 ? out / tot : 0.0;
}

// ---------------------------------------------------------------------------
// random band-limited fields (tests, verify-lemmas)

inline ScalarField random_band_limited(const GridSpec& g, int kmax, std::mt19937_64& rng,
                                       bool mean_zero = true) {
    std::normal_distribution<double> gauss(0.0, 1.0);
    const int n = g.N;
    std::vector<cplx> s(static_cast<size_t>(n) * (n / 2 + 1), cplx{0, 0});
    for (int k1 = -kmax; k1 <= kmax; ++k1) {
        for (int k2 = 0; k2 <= kmax; ++k2) {
            if (k2 == 0 && k1 < 0) continue;  // hermitian partner fills these
            if (mean_zero && k1 == 0 && k2 == 0) continue;
            double decay = std::exp(-2.0 * (double(k1) * k1 + double(k2) * k2) / (kmax * kmax));
            cplx c{gauss(rng) * decay, gauss(rng) * decay};
            if (k2 == 0 && k1 == 0) c = {c.real(), 0.0};
            int i = k1 >= 0 ? k1 : k1 + n;
            s[static_cast<size_t>(i) * (n / 2 + 1) + k2] = c;
            if (k2 == 0 && k1 > 0) s[static_cast<size_t>(n - k1) * (n / 2 + 1)] = std::conj(c);
        }
    }
    auto f = ScalarField::from_spec(g, std::move(s));
    f.set_band(kmax);
    return f;
}

}  // namespace sqg
