// Backward characteristics, flow maps, flow-advected phase functions with
// their gradient bounds, and the time cutoff partition.
#pragma once

#include <array>
#include <cmath>
#include <functional>
#include <map>
#include <memory>
#include <mutex>
#include <stdexcept>
#include <vector>

#include "sqglab/bumps.hpp"
#include "sqglab/interp.hpp"
#include "sqglab/ops.hpp"
#include "sqglab/params.hpp"
#include "sqglab/timegrid.hpp"

namespace sqg {

struct Vec2 {
    double x = 0.0, y = 0.0;
    double norm() const { return std::hypot(x, y); }
    Vec2 operator-() const { return {-x, -y}; }
};

// Index I = (k, v), v in F = {+-(1,2), +-(2,1)}; k selects the time slot.
struct WaveIndex {
    int k = 0;
    std::array<int, 2> v{1, 2};

    static const std::array<std::array<int, 2>, 4>& directions() {
        static const std::array<std::array<int, 2>, 4> F = {
            {{1, 2}, {2, 1}, {-1, -2}, {-2, -1}}};
        return F;
    }
    static const std::array<std::array<int, 2>, 2>& positive_directions() {
        static const std::array<std::array<int, 2>, 2> Fp = {{{1, 2}, {2, 1}}};
        return Fp;
    }

    bool valid() const {
        for (const auto& d : directions())
            if (d == v) return true;
        return false;
    }
    int parity() const { return ((k % 2) + 2) % 2; }
    WaveIndex conjugate() const { return {k, {-v[0], -v[1]}}; }

    // grad xi_in = J^k v with J the 90-degree rotation (x,y) -> (-y,x).
    Vec2 dir_in() const {
        double a = v[0], b = v[1];
        int r = ((k % 4) + 4) % 4;
        for (int i = 0; i < r; ++i) {
            double na = -b, nb = a;
            a = na;
            b = nb;
        }
        return {a, b};
    }
};

inline bool operator==(const WaveIndex& a, const WaveIndex& b) {
    return a.k == b.k && a.v == b.v;
}

// chi_k(t) = chi(t / tau - k); squares sum to one over k.
struct TimeCutoff {
    double tau = 1.0;
    int k = 0;
    double operator()(double t) const { return time_cutoff_unit(t / tau - k); }
    double support_lo() const { return (k - 2.0 / 3.0) * tau; }
    double support_hi() const { return (k + 2.0 / 3.0) * tau; }
    double plateau_lo() const { return (k - 1.0 / 3.0) * tau; }
    double plateau_hi() const { return (k + 1.0 / 3.0) * tau; }
};

inline TimeCutoff time_cutoff(int k, const Schedule& s, int q) {
    return TimeCutoff{s.tau(q), k};
}

// ---------------------------------------------------------------------------
// velocity sampling on a time slab

class VelocitySampler {
  public:
    VelocitySampler(TimeGrid grid, std::vector<VectorField> slices, int oversample = 4)
        : grid_(grid), slices_(std::move(slices)), oversample_(oversample) {
        if (static_cast<int>(slices_.size()) != grid_.n)
            throw std::invalid_argument("VelocitySampler: slab size mismatch");
        cache_.resize(slices_.size());
    }

    const TimeGrid& grid() const { return grid_; }

    Vec2 operator()(double x, double y, double t) const {
        int i0;
        double w[4];
        cubic_time_weights(grid_, t, i0, w);
        Vec2 out;
        for (int j = 0; j < 4; ++j) {
            if (std::abs(w[j]) < 1e-300) continue;
            const VectorInterpolator& vi = interp(i0 + j);
            out.x += w[j] * vi.x(x, y);
            out.y += w[j] * vi.y(x, y);
        }
        return out;
    }

    // sup over slices of the max-entry norm of grad u.
    double sup_grad(int ilo, int ihi) const {
        double m = 0.0;
        for (int i = std::max(0, ilo); i <= std::min(grid_.n - 1, ihi); ++i) {
            m = std::max(m, sup_norm(slices_[i].x, 1));
            m = std::max(m, sup_norm(slices_[i].y, 1));
        }
        return m;
    }

  private:
    const VectorInterpolator& interp(int i) const {
        std::lock_guard<std::mutex> lk(mu_);
        if (!cache_[i]) cache_[i] = std::make_shared<VectorInterpolator>(slices_[i], oversample_);
        return *cache_[i];
    }

    TimeGrid grid_;
    std::vector<VectorField> slices_;
    int oversample_;
    mutable std::vector<std::shared_ptr<VectorInterpolator>> cache_;
    mutable std::mutex mu_;
};

// ---------------------------------------------------------------------------
// characteristic integration

// Displacement field of the characteristic flow from t_from to t_to,
// sampled on pgrid: X(t_to) = x + d(x) for the trajectory with X(t_from) = x.
// Fixed-step RK4.
inline VectorField characteristic_displacement(const VelocitySampler& u, double t_from,
                                               double t_to, const GridSpec& pgrid,
                                               int substeps) {
    const int n = pgrid.N;
    std::vector<double> px(static_cast<size_t>(n) * n), py(px.size());
    for (int i = 0; i < n; ++i)
        for (int j = 0; j < n; ++j) {
            px[static_cast<size_t>(i) * n + j] = pgrid.x(i);
            py[static_cast<size_t>(i) * n + j] = pgrid.x(j);
        }
    substeps = std::max(substeps, 1);
    const double h = (t_to - t_from) / substeps;
    for (int s = 0; s < substeps; ++s) {
        const double t = t_from + s * h;
        for (size_t p = 0; p < px.size(); ++p) {
            double X = px[p], Y = py[p];
            Vec2 k1 = u(X, Y, t);
            Vec2 k2 = u(X + 0.5 * h * k1.x, Y + 0.5 * h * k1.y, t + 0.5 * h);
            Vec2 k3 = u(X + 0.5 * h * k2.x, Y + 0.5 * h * k2.y, t + 0.5 * h);
            Vec2 k4 = u(X + h * k3.x, Y + h * k3.y, t + h);
            px[p] = X + h / 6.0 * (k1.x + 2 * k2.x + 2 * k3.x + k4.x);
            py[p] = Y + h / 6.0 * (k1.y + 2 * k2.y + 2 * k3.y + k4.y);
        }
    }
    std::vector<double> dx(px.size()), dy(px.size());
    for (int i = 0; i < n; ++i)
        for (int j = 0; j < n; ++j) {
            size_t p = static_cast<size_t>(i) * n + j;
            dx[p] = px[p] - pgrid.x(i);
            dy[p] = py[p] - pgrid.x(j);
        }
    VectorField d(ScalarField::from_phys(pgrid, std::move(dx), t_from),
                  ScalarField::from_phys(pgrid, std::move(dy), t_from));
    return d;
}

// Flow-to-anchor displacements for every slice of `window`, built by
// composing one-slice steps outward from the anchor. disp[i](x) is the
// displacement from (x, t_i) to the anchor time.
inline std::vector<VectorField> flow_to_anchor(const VelocitySampler& u, const TimeGrid& window,
                                               double anchor, const GridSpec& pgrid,
                                               int substeps_per_dt = 2, int oversample = 4) {
    const int n = window.n;
    std::vector<VectorField> disp(n);
    int j = window.nearest(anchor);
    disp[j] = characteristic_displacement(u, window.t(j), anchor, pgrid,
                                          2 * substeps_per_dt);
    auto compose = [&](int from, int to) {
        // d_to(x) = s(x) + d_from(x + s(x)), s = one-step displacement
        VectorField s =
            characteristic_displacement(u, window.t(to), window.t(from), pgrid, substeps_per_dt);
        FourierInterpolator fx(disp[from].x, oversample), fy(disp[from].y, oversample);
        const auto& sx = s.x.phys();
        const auto& sy = s.y.phys();
        std::vector<double> dx(sx.size()), dy(sx.size());
        const int N = pgrid.N;
        for (int a = 0; a < N; ++a)
            for (int b = 0; b < N; ++b) {
                size_t p = static_cast<size_t>(a) * N + b;
                double qx = pgrid.x(a) + sx[p], qy = pgrid.x(b) + sy[p];
                dx[p] = sx[p] + fx(qx, qy);
                dy[p] = sy[p] + fy(qx, qy);
            }
        disp[to] = VectorField(ScalarField::from_phys(pgrid, std::move(dx), window.t(to)),
                               ScalarField::from_phys(pgrid, std::move(dy), window.t(to)));
    };
    for (int i = j + 1; i < n; ++i) compose(i - 1, i);
    for (int i = j - 1; i >= 0; --i) compose(i + 1, i);
    return disp;
}

// ---------------------------------------------------------------------------
// flow map (transport-phi)

struct FlowMap {
    double t0 = 0.0;
    TimeGrid stimes;                  // absolute slice times around t0
    std::vector<VectorField> disp;    // Phi(x, t) -> anchor displacement per slice
    double du_sup = 0.0;
};

struct FlowBoundError : std::runtime_error {
    double measured, bound, at_time;
    FlowBoundError(double m, double b, double t)
        : std::runtime_error("flow_map: Lemma gradient bound violated"),
          measured(m), bound(b), at_time(t) {}
};

// Flow map based at t0 covering [t0 - window, t0 + window]; asserts the
// transport estimate |D Phi - Id| <= e^{|s| |Du|} - 1 on every slice.
inline FlowMap flow_map(const VelocitySampler& u, double t0, double window,
                        const GridSpec& pgrid, int slices_per_side = 8,
                        int substeps_per_dt = 4) {
    FlowMap fm;
    fm.t0 = t0;
    int n = 2 * slices_per_side + 1;
    fm.stimes = TimeGrid{t0 - window, window / slices_per_side, n};
    fm.disp = flow_to_anchor(u, fm.stimes, t0, pgrid, substeps_per_dt);
    auto [ilo, ihi] = u.grid().cover(t0 - window, t0 + window);
    fm.du_sup = u.sup_grad(ilo, ihi);
    for (int i = 0; i < n; ++i) {
        double s = std::abs(fm.stimes.t(i) - t0);
        double measured = std::max(
            {sup_norm(fm.disp[i].x, 1), sup_norm(fm.disp[i].y, 1)});
        double bound = std::expm1(s * fm.du_sup);
        if (measured > bound * (1.0 + 1e-6) + 1e-7)
            throw FlowBoundError(measured, bound, fm.stimes.t(i));
    }
    return fm;
}

// ---------------------------------------------------------------------------
// phase families

struct PhaseConditionError : std::runtime_error {
    double deformation, min_grad, at_time;
    PhaseConditionError(double d, double g, double t)
        : std::runtime_error("advect_phase: time-condition violated"),
          deformation(d), min_grad(g), at_time(t) {}
};

// xi_I(x, t) = dir_in . x + psi(x, t) with psi periodic.
struct PhaseFamily {
    WaveIndex index;
    Vec2 dir_in;
    TimeGrid window;
    std::vector<ScalarField> psi;
    std::vector<VectorField> grad_xi;
    double deformation = 0.0;  // sup |grad xi - dir_in|_2
    double min_grad = 1e300;

    PhaseFamily conjugated() const {
        PhaseFamily out;
        out.index = index.conjugate();
        out.dir_in = -dir_in;
        out.window = window;
        out.deformation = deformation;
        out.min_grad = min_grad;
        out.psi.reserve(psi.size());
        out.grad_xi.reserve(grad_xi.size());
        for (const auto& p : psi) {
            ScalarField q = p;
            q *= -1.0;
            out.psi.push_back(std::move(q));
        }
        for (const auto& g : grad_xi) {
            ScalarField gx = g.x, gy = g.y;
            gx *= -1.0;
            gy *= -1.0;
            out.grad_xi.emplace_back(std::move(gx), std::move(gy));
        }
        return out;
    }
};

// Shared characteristics for all four directions of one time slot.
struct PhaseSlot {
    int k = 0;
    double anchor = 0.0;
    TimeGrid window;
    std::vector<VectorField> disp;  // flow-to-anchor displacement per slice

    PhaseFamily family(const WaveIndex& I, double c1_check = -1.0) const {
        if (I.k != k) throw std::invalid_argument("PhaseSlot::family: slot mismatch");
        if (!I.valid()) throw std::invalid_argument("PhaseSlot::family: direction not in F");
        PhaseFamily f;
        f.index = I;
        f.dir_in = I.dir_in();
        f.window = window;
        f.psi.reserve(disp.size());
        f.grad_xi.reserve(disp.size());
        for (const auto& d : disp) {
            // xi(x) = dir . (x + d(x)) = dir . x + dir . d(x)
            ScalarField p = d.x;
            p *= f.dir_in.x;
            p.axpy(f.dir_in.y, d.y);
            VectorField g = gradient(p);
            {
                auto& gx = g.x.mutable_phys();
                for (auto& v : gx) v += f.dir_in.x;
                auto& gy = g.y.mutable_phys();
                for (auto& v : gy) v += f.dir_in.y;
            }
            const auto& gx = g.x.phys();
            const auto& gy = g.y.phys();
            for (size_t i = 0; i < gx.size(); ++i) {
                double ex = gx[i] - f.dir_in.x, ey = gy[i] - f.dir_in.y;
                f.deformation = std::max(f.deformation, std::hypot(ex, ey));
                f.min_grad = std::min(f.min_grad, std::hypot(gx[i], gy[i]));
            }
            f.psi.push_back(std::move(p));
            f.grad_xi.push_back(std::move(g));
        }
        if (c1_check >= 0.0 && (f.deformation > c1_check || f.min_grad < 1.0))
            throw PhaseConditionError(f.deformation, f.min_grad, anchor);
        return f;
    }
};

inline PhaseSlot build_phase_slot(const VelocitySampler& u, int k, double tau,
                                  const TimeGrid& slab, const GridSpec& pgrid,
                                  int substeps_per_dt = 2) {
    PhaseSlot slot;
    slot.k = k;
    slot.anchor = k * tau;
    auto [ilo, ihi] = slab.cover(slot.anchor - tau, slot.anchor + tau);
    if (ilo > ihi) throw std::invalid_argument("build_phase_slot: window outside slab");
    slot.window = TimeGrid{slab.t(ilo), slab.dt, ihi - ilo + 1};
    slot.disp = flow_to_anchor(u, slot.window, slot.anchor, pgrid, substeps_per_dt);
    return slot;
}

// Spec-level operation: phases for a single index (shares no work).
inline PhaseFamily advect_phase(const VelocitySampler& u, const WaveIndex& I,
                                const Schedule& sched, int q, const TimeGrid& slab,
                                const GridSpec& pgrid, int substeps_per_dt = 2) {
    PhaseSlot slot = build_phase_slot(u, I.k, sched.tau(q), slab, pgrid, substeps_per_dt);
    return slot.family(I, to_double(sched.config().c1));
}

struct PhaseConditionReport {
    double deformation = 0.0;
    double min_grad = 0.0;
    bool ok = false;
};

inline PhaseConditionReport check_phase_condition(const PhaseFamily& f, const Schedule& s) {
    PhaseConditionReport r;
    r.deformation = f.deformation;
    r.min_grad = f.min_grad;
    r.ok = f.deformation <= to_double(s.config().c1) && f.min_grad >= 1.0;
    return r;
}

}  // namespace sqg
