// Band-limited periodic fields on the 2-torus with paired physical/spectral
// representations. ScalarField holds real-valued samples (half-plane r2c
// spectrum); CScalarField is its complex counterpart used for modulated
// waves. Representations synchronize lazily; fields are value types and are
// treated as immutable once handed across threads (materialize first).
#pragma once

#include <algorithm>
#include <cassert>
#include <cmath>
#include <complex>
#include <functional>
#include <stdexcept>
#include <vector>

#include "sqglab/fft.hpp"
#include "sqglab/grid.hpp"

namespace sqg {

using cplx = std::complex<double>;

class ScalarField {
  public:
    ScalarField() = default;
    explicit ScalarField(const GridSpec& g, double time = 0.0)
        : grid_(g), time_(time), phys_(static_cast<size_t>(g.N) * g.N, 0.0),
          has_phys_(true), has_spec_(false), band_(0) {}

    static ScalarField from_phys(const GridSpec& g, std::vector<double> v, double time = 0.0) {
        ScalarField f(g, time);
        if (v.size() != static_cast<size_t>(g.N) * g.N)
            throw std::invalid_argument("ScalarField::from_phys: size mismatch");
        f.phys_ = std::move(v);
        f.band_ = -1;
        return f;
    }
    static ScalarField from_spec(const GridSpec& g, std::vector<cplx> v, double time = 0.0) {
        ScalarField f(g, time);
        if (v.size() != static_cast<size_t>(g.N) * (g.N / 2 + 1))
            throw std::invalid_argument("ScalarField::from_spec: size mismatch");
        f.spec_ = std::move(v);
        f.has_phys_ = false;
        f.has_spec_ = true;
        f.band_ = -1;
        return f;
    }
    // Sample a function on the grid.
    static ScalarField sample(const GridSpec& g, const std::function<double(double, double)>& fn,
                              double time = 0.0) {
        ScalarField f(g, time);
        for (int i = 0; i < g.N; ++i)
            for (int j = 0; j < g.N; ++j)
                f.phys_[static_cast<size_t>(i) * g.N + j] = fn(g.x(i), g.x(j));
        f.band_ = -1;
        return f;
    }

    const GridSpec& grid() const { return grid_; }
    int N() const { return grid_.N; }
    double time() const { return time_; }
    void set_time(double t) { time_ = t; }
    // Conservative max |k|_inf bound of the spectral support; measured
    // lazily (relative floor 1e-13) when not tracked through an operation.
    int band() const {
        if (band_ < 0) band_ = measure_band_tol(1e-13);
        return band_;
    }
    void set_band(int b) { band_ = std::min(b, grid_.N / 2); }
    int measure_band_tol(double rel_tol) const {
        const int n = grid_.N;
        const auto& s = spec();
        double mx = 0.0;
        for (const auto& c : s) mx = std::max(mx, std::abs(c));
        const double tol = rel_tol * mx;
        int b = 0;
        for (int i = 0; i < n; ++i) {
            int k1 = i <= n / 2 ? i : i - n;
            for (int k2 = 0; k2 <= n / 2; ++k2)
                if (std::abs(s[static_cast<size_t>(i) * (n / 2 + 1) + k2]) > tol)
                    b = std::max({b, std::abs(k1), k2});
        }
        return b;
    }

    const std::vector<double>& phys() const {
        if (!has_phys_) {
            phys_.resize(static_cast<size_t>(grid_.N) * grid_.N);
            fft_c2r(grid_.N, spec_.data(), phys_.data());
            has_phys_ = true;
        }
        return phys_;
    }
    const std::vector<cplx>& spec() const {
        if (!has_spec_) {
            spec_.resize(static_cast<size_t>(grid_.N) * (grid_.N / 2 + 1));
            fft_r2c(grid_.N, phys_.data(), spec_.data());
            has_spec_ = true;
        }
        return spec_;
    }
    // Mutable access invalidates the other representation.
    std::vector<double>& mutable_phys() {
        phys();
        has_spec_ = false;
        band_ = -1;
        return phys_;
    }
    std::vector<cplx>& mutable_spec() {
        spec();
        has_phys_ = false;
        band_ = -1;
        return spec_;
    }
    void materialize_both() const { phys(); spec(); }

    cplx coeff(int k1, int k2) const {
        const int n = grid_.N;
        const auto& s = spec();
        bool conj = false;
        if (k2 < 0 || (k2 == 0 && k1 < 0)) { k1 = -k1; k2 = -k2; conj = true; }
        int i = k1 >= 0 ? k1 : k1 + n;
        if (k1 > n / 2 || k1 < -n / 2 || k2 > n / 2) return {0.0, 0.0};
        cplx c = s[static_cast<size_t>(i) * (n / 2 + 1) + k2];
        return conj ? std::conj(c) : c;
    }

    double mean() const { return spec()[0].real(); }
    bool is_mean_zero(double tol = 1e-12) const { return std::abs(mean()) <= tol; }

    double sup_abs() const {
        const auto& p = phys();
        double m = 0.0;
        for (double v : p) m = std::max(m, std::abs(v));
        return m;
    }
    double l2() const {
        const auto& p = phys();
        double s = 0.0;
        for (double v : p) s += v * v;
        return std::sqrt(s / p.size());
    }

    ScalarField& operator+=(const ScalarField& o) { return axpy(1.0, o); }
    ScalarField& operator-=(const ScalarField& o) { return axpy(-1.0, o); }
    ScalarField& axpy(double a, const ScalarField& o) {
        assert(grid_ == o.grid_);
        if (has_spec_ && o.has_spec_) {
            auto& s = spec_;
            const auto& os = o.spec_;
            for (size_t i = 0; i < s.size(); ++i) s[i] += a * os[i];
            has_phys_ = false;
        } else {
            auto& p = const_cast<std::vector<double>&>(phys());
            const auto& op = o.phys();
            for (size_t i = 0; i < p.size(); ++i) p[i] += a * op[i];
            has_spec_ = false;
        }
        band_ = std::max(band(), o.band());
        if (band_ >= grid_.N / 2) band_ = -1;
        return *this;
    }
    ScalarField& operator*=(double a) {
        if (has_spec_) {
            for (auto& c : spec_) c *= a;
            if (has_phys_)
                for (auto& v : phys_) v *= a;
        } else {
            for (auto& v : phys_) v *= a;
        }
        return *this;
    }

    friend ScalarField operator+(ScalarField a, const ScalarField& b) { a += b; return a; }
    friend ScalarField operator-(ScalarField a, const ScalarField& b) { a -= b; return a; }
    friend ScalarField operator*(double a, ScalarField f) { f *= a; return f; }

  private:
    GridSpec grid_;
    double time_ = 0.0;
    mutable std::vector<double> phys_;
    mutable std::vector<cplx> spec_;
    mutable bool has_phys_ = false;
    mutable bool has_spec_ = false;
    mutable int band_ = -1;
};

class CScalarField {
  public:
    CScalarField() = default;
    explicit CScalarField(const GridSpec& g, double time = 0.0)
        : grid_(g), time_(time), phys_(static_cast<size_t>(g.N) * g.N, cplx{0.0, 0.0}),
          has_phys_(true), has_spec_(false) {}

    static CScalarField from_phys(const GridSpec& g, std::vector<cplx> v, double time = 0.0) {
        CScalarField f(g, time);
        f.phys_ = std::move(v);
        return f;
    }
    static CScalarField from_spec(const GridSpec& g, std::vector<cplx> v, double time = 0.0) {
        CScalarField f(g, time);
        f.spec_ = std::move(v);
        f.has_phys_ = false;
        f.has_spec_ = true;
        return f;
    }
    static CScalarField from_real(const ScalarField& r) {
        CScalarField f(r.grid(), r.time());
        const auto& p = r.phys();
        for (size_t i = 0; i < p.size(); ++i) f.phys_[i] = p[i];
        return f;
    }

    const GridSpec& grid() const { return grid_; }
    int N() const { return grid_.N; }
    double time() const { return time_; }
    void set_time(double t) { time_ = t; }

    const std::vector<cplx>& phys() const {
        if (!has_phys_) {
            phys_.resize(static_cast<size_t>(grid_.N) * grid_.N);
            fft_c2c(grid_.N, spec_.data(), phys_.data(), false);
            has_phys_ = true;
        }
        return phys_;
    }
    const std::vector<cplx>& spec() const {
        if (!has_spec_) {
            spec_.resize(static_cast<size_t>(grid_.N) * grid_.N);
            fft_c2c(grid_.N, phys_.data(), spec_.data(), true);
            has_spec_ = true;
        }
        return spec_;
    }
    std::vector<cplx>& mutable_phys() {
        phys();
        has_spec_ = false;
        return phys_;
    }
    std::vector<cplx>& mutable_spec() {
        spec();
        has_phys_ = false;
        return spec_;
    }

    cplx coeff(int k1, int k2) const {
        const int n = grid_.N;
        if (k1 > n / 2 || k1 < -n / 2 || k2 > n / 2 || k2 < -n / 2) return {0.0, 0.0};
        int i = k1 >= 0 ? k1 : k1 + n;
        int j = k2 >= 0 ? k2 : k2 + n;
        return spec()[static_cast<size_t>(i) * n + j];
    }
    cplx mean() const { return spec()[0]; }

    CScalarField conjugate() const {
        CScalarField out(grid_, time_);
        const auto& p = phys();
        auto& q = out.mutable_phys();
        for (size_t i = 0; i < p.size(); ++i) q[i] = std::conj(p[i]);
        return out;
    }
    // Real part as a real field.
    ScalarField real_part() const {
        const auto& p = phys();
        std::vector<double> r(p.size());
        for (size_t i = 0; i < p.size(); ++i) r[i] = p[i].real();
        return ScalarField::from_phys(grid_, std::move(r), time_);
    }
    double sup_abs() const {
        const auto& p = phys();
        double m = 0.0;
        for (const auto& v : p) m = std::max(m, std::abs(v));
        return m;
    }
    double sup_imag() const {
        const auto& p = phys();
        double m = 0.0;
        for (const auto& v : p) m = std::max(m, std::abs(v.imag()));
        return m;
    }
    double l2() const {
        const auto& p = phys();
        double s = 0.0;
        for (const auto& v : p) s += std::norm(v);
        return std::sqrt(s / p.size());
    }

    CScalarField& operator+=(const CScalarField& o) {
        auto& p = mutable_phys();
        const auto& op = o.phys();
        for (size_t i = 0; i < p.size(); ++i) p[i] += op[i];
        return *this;
    }
    CScalarField& operator*=(cplx a) {
        auto& p = mutable_phys();
        for (auto& v : p) v *= a;
        return *this;
    }

  private:
    GridSpec grid_;
    double time_ = 0.0;
    mutable std::vector<cplx> phys_;
    mutable std::vector<cplx> spec_;
    mutable bool has_phys_ = false;
    mutable bool has_spec_ = false;
};

struct VectorField {
    ScalarField x, y;
    VectorField() = default;
    VectorField(ScalarField a, ScalarField b) : x(std::move(a)), y(std::move(b)) {}
    explicit VectorField(const GridSpec& g, double time = 0.0) : x(g, time), y(g, time) {}
    const GridSpec& grid() const { return x.grid(); }
    double time() const { return x.time(); }
    double sup_abs() const { return std::max(x.sup_abs(), y.sup_abs()); }
    double l2() const { return std::hypot(x.l2(), y.l2()); }
    VectorField& operator+=(const VectorField& o) { x += o.x; y += o.y; return *this; }
};

// Symmetric 2x2 tensor field stored as (t11, t12, t22).
struct SymTensorField {
    ScalarField t11, t12, t22;
    SymTensorField() = default;
    explicit SymTensorField(const GridSpec& g, double time = 0.0)
        : t11(g, time), t12(g, time), t22(g, time) {}
    SymTensorField(ScalarField a, ScalarField b, ScalarField c)
        : t11(std::move(a)), t12(std::move(b)), t22(std::move(c)) {}
    const GridSpec& grid() const { return t11.grid(); }
    double time() const { return t11.time(); }
    double sup_abs() const {
        return std::max({t11.sup_abs(), t12.sup_abs(), t22.sup_abs()});
    }
    double trace_sup() const { return (t11 + t22).sup_abs(); }
    SymTensorField& operator+=(const SymTensorField& o) {
        t11 += o.t11; t12 += o.t12; t22 += o.t22;
        return *this;
    }
    SymTensorField& operator-=(const SymTensorField& o) {
        t11 -= o.t11; t12 -= o.t12; t22 -= o.t22;
        return *this;
    }
    SymTensorField& operator*=(double a) { t11 *= a; t12 *= a; t22 *= a; return *this; }
    friend SymTensorField operator+(SymTensorField a, const SymTensorField& b) { a += b; return a; }
    friend SymTensorField operator-(SymTensorField a, const SymTensorField& b) { a -= b; return a; }
};

// Dense spectral box |k1|,|k2| <= band of a real field's half-plane spectrum.
// Slab containers store finalized slices in this form to keep long time
// slabs at high N affordable.
class CompactScalar {
  public:
    CompactScalar() = default;
    CompactScalar(const ScalarField& f, double drop_tol = 0.0) {
        grid_ = f.grid();
        time_ = f.time();
        band_ = measure_band(f, drop_tol);
        const int b = band_;
        data_.assign(static_cast<size_t>(2 * b + 1) * (b + 1), cplx{0, 0});
        for (int k1 = -b; k1 <= b; ++k1)
            for (int k2 = 0; k2 <= b; ++k2)
                data_[static_cast<size_t>(k1 + b) * (b + 1) + k2] = f.coeff(k1, k2);
    }
    ScalarField expand() const {
        std::vector<cplx> s(static_cast<size_t>(grid_.N) * (grid_.N / 2 + 1), cplx{0, 0});
        const int b = band_;
        const int n = grid_.N;
        for (int k1 = -b; k1 <= b; ++k1) {
            int i = k1 >= 0 ? k1 : k1 + n;
            for (int k2 = 0; k2 <= b; ++k2)
                s[static_cast<size_t>(i) * (n / 2 + 1) + k2] =
                    data_[static_cast<size_t>(k1 + b) * (b + 1) + k2];
        }
        auto f = ScalarField::from_spec(grid_, std::move(s), time_);
        f.set_band(band_);
        return f;
    }
    int band() const { return band_; }
    double time() const { return time_; }
    size_t bytes() const { return data_.size() * sizeof(cplx); }

    static int measure_band(const ScalarField& f, double drop_tol) {
        return std::min(f.measure_band_tol(drop_tol > 0 ? drop_tol : 1e-13), f.band());
    }

  private:
    GridSpec grid_;
    double time_ = 0.0;
    int band_ = 0;
    std::vector<cplx> data_;
};

}  // namespace sqg
