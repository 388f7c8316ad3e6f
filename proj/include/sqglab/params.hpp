// Frequency/amplitude/time-scale schedule and the admissibility inequality
// system. All gate evaluations run in exact rational arithmetic; lambda_q is
// the exact integer ceiling of lambda_0^{b^q} whenever the exact power is
// affordable, with certified upward rounding beyond that.
#pragma once

#include <gmpxx.h>
#include <mpfr.h>

#include <cmath>
#include <cstdint>
#include <map>
#include <optional>
#include <sstream>
#include <stdexcept>
#include <string>
#include <vector>

#include "sqglab/rational.hpp"

namespace sqg {

struct ParamConfig {
    int64_t lambda0 = 16;
    Rational b = Rational(5, 4);        // super-exponential rate, > 1
    Rational beta = Rational(4, 5);     // amplitude exponent
    Rational gamma = 0;                 // dissipation order
    Rational alpha = Rational(-1, 4);   // target spatial Hoelder exponent (theta level)
    Rational zeta = Rational(1, 4);     // target temporal exponent
    int L = 2;                          // derivative-count parameter
    Rational M_const = 4;
    Rational c0 = Rational(1, 100);
    Rational c1 = Rational(1, 100);
    Rational C_lift = 10;
    Rational K_lift = 10;

    // Structural invariants; soft inequalities live in check_admissibility.
    void validate() const {
        if (lambda0 < 2) throw std::invalid_argument("ParamConfig: lambda0 must be >= 2");
        if (b <= 1) throw std::invalid_argument("ParamConfig: b must exceed 1");
        if (beta < 0) throw std::invalid_argument("ParamConfig: beta must be >= 0");
        if (gamma < 0) throw std::invalid_argument("ParamConfig: gamma must be >= 0");
        if (L < 2) throw std::invalid_argument("ParamConfig: L must be >= 2");
        if (M_const < 4) throw std::invalid_argument("ParamConfig: M_const must be >= 4");
        if (c0 <= 0 || c1 <= 0) throw std::invalid_argument("ParamConfig: c0, c1 must be positive");
        if (C_lift <= 0 || K_lift <= 0)
            throw std::invalid_argument("ParamConfig: lifting constants must be positive");
    }
};

struct ScheduleOverflow : std::runtime_error {
    int max_usable_q;
    explicit ScheduleOverflow(int mq)
        : std::runtime_error("Schedule: lambda_q exceeds representable integers beyond q = " +
                             std::to_string(mq)),
          max_usable_q(mq) {}
};

class Schedule {
  public:
    explicit Schedule(ParamConfig cfg) : cfg_(std::move(cfg)) { cfg_.validate(); }

    const ParamConfig& config() const { return cfg_; }

    // lambda_q = ceil(lambda0^{b^q}), exact.
    int64_t lambda(int q) const {
        if (q < 0) q = 0;
        auto it = lam_cache_.find(q);
        if (it != lam_cache_.end()) return it->second;
        int64_t v = compute_lambda(q);
        lam_cache_[q] = v;
        return v;
    }

    double delta(int q) const {
        if (q < 0) q = 0;
        return std::pow(static_cast<double>(lambda(q)), -to_double(cfg_.beta));
    }

    // tau_q = delta_{q-2}^{-1/4} delta_q^{-1/4} lambda_{q-1}^{-3/4} lambda_{q+1}^{-3/4}
    // (indices below zero clamp to level 0).
    double tau(int q) const {
        if (q < 0) q = 0;
        return std::pow(delta(q - 2), -0.25) * std::pow(delta(q), -0.25) *
               std::pow(static_cast<double>(lambda(q - 1)), -0.75) *
               std::pow(static_cast<double>(lambda(q + 1)), -0.75);
    }

    // Spatial mollification scale l_q = c0 (lambda_{q+1}/lambda_q)^{-3/(2L)} / lambda_q.
    double ell(int q) const {
        if (q < 0) q = 0;
        double ratio = static_cast<double>(lambda(q + 1)) / lambda(q);
        return to_double(cfg_.c0) * std::pow(ratio, -1.5 / cfg_.L) / lambda(q);
    }

    // (lambda_q^{3/2} delta_{q-1}^{1/2})^{-1}: the transport/lifting time width.
    double w(int q) const {
        if (q < 0) q = 0;
        return 1.0 / (std::pow(static_cast<double>(lambda(q)), 1.5) * std::sqrt(delta(q - 1)));
    }

    // Temporal mollification scale, capped by the w(q) constraint.
    double tau_tilde(int q) const {
        if (q < 0) q = 0;
        double ratio = static_cast<double>(lambda(q + 1)) / lambda(q);
        double v = to_double(cfg_.c0) * std::pow(ratio, -1.5) *
                   std::pow(static_cast<double>(lambda(q)), -1.5) / std::sqrt(delta(q));
        return std::min(v, w(q));
    }

    bool lambda_is_exact(int q) const {
        lambda(q);
        return exact_flag_.count(q) ? exact_flag_.at(q) : true;
    }

  private:
    int64_t compute_lambda(int q) const {
        if (q == 0) return cfg_.lambda0;
        const mpz_class p = cfg_.b.get_num();
        const mpz_class r = cfg_.b.get_den();
        // Overflow guard: log2(lambda_q) = (p/r)^q log2(lambda0).
        double log2lam = std::pow(to_double(cfg_.b), q) * std::log2(double(cfg_.lambda0));
        if (log2lam > 62.5) {
            int mq = q - 1;
            while (mq > 0 &&
                   std::pow(to_double(cfg_.b), mq) * std::log2(double(cfg_.lambda0)) > 62.5)
                --mq;
            throw ScheduleOverflow(mq);
        }
        mpz_class pq, rq;
        mpz_pow_ui(pq.get_mpz_t(), p.get_mpz_t(), q);
        mpz_pow_ui(rq.get_mpz_t(), r.get_mpz_t(), q);

        // Exact route: lambda_q = ceil((lambda0^{p^q})^{1/r^q}) when the big
        // power stays modest.
        const double kMaxBits = 1 << 23;
        if (mpz_fits_ulong_p(pq.get_mpz_t()) &&
            mpz_get_ui(pq.get_mpz_t()) * std::log2(double(cfg_.lambda0)) < kMaxBits &&
            mpz_fits_ulong_p(rq.get_mpz_t())) {
            mpz_class big, root;
            mpz_class base(static_cast<long>(cfg_.lambda0));
            mpz_pow_ui(big.get_mpz_t(), base.get_mpz_t(), mpz_get_ui(pq.get_mpz_t()));
            int exact = mpz_root(root.get_mpz_t(), big.get_mpz_t(), mpz_get_ui(rq.get_mpz_t()));
            if (!exact) root += 1;  // ceiling of a non-integer root
            exact_flag_[q] = true;
            if (!root.fits_slong_p()) throw ScheduleOverflow(q - 1);
            return static_cast<int64_t>(root.get_si());
        }

        // Directed rounding route: certified upper bound, so the ceiling is
        // never under-approximated.
        mpq_class e = Rational(mpz_class(pq), mpz_class(rq));
        mpfr_t x, t, up;
        mpfr_inits2(320, x, t, up, static_cast<mpfr_ptr>(nullptr));
        mpfr_set_si(x, static_cast<long>(cfg_.lambda0), MPFR_RNDN);
        mpfr_set_q(t, e.get_mpq_t(), MPFR_RNDU);
        mpfr_pow(up, x, t, MPFR_RNDU);
        mpfr_ceil(up, up);
        long v = mpfr_get_si(up, MPFR_RNDN);
        mpfr_clears(x, t, up, static_cast<mpfr_ptr>(nullptr));
        exact_flag_[q] = false;
        return static_cast<int64_t>(v);
    }

    ParamConfig cfg_;
    mutable std::map<int, int64_t> lam_cache_;
    mutable std::map<int, bool> exact_flag_;
};

inline Schedule build_schedule(const ParamConfig& cfg) { return Schedule(cfg); }

inline double time_scale(int q, const Schedule& s) { return s.tau(q); }

// ---------------------------------------------------------------------------
// admissibility gates

struct GateRecord {
    std::string name;
    std::string lhs;
    std::string rhs;
    bool satisfied = false;
    bool gating = true;  // report-only gates never affect the verdict
};

struct AdmissibilityReport {
    std::vector<GateRecord> gates;
    bool admissible = false;
    Rational max_alpha_theta;   // theta-level spatial exponent bound
    Rational max_alpha_eta;     // Lambda^{-1}theta-level bound (= theta bound + 1)
    Rational max_zeta;          // temporal exponent bound

    const GateRecord* find(const std::string& name) const {
        for (const auto& g : gates)
            if (g.name == name) return &g;
        return nullptr;
    }
    std::vector<std::string> failed_gates() const {
        std::vector<std::string> out;
        for (const auto& g : gates)
            if (g.gating && !g.satisfied) out.push_back(g.name);
        return out;
    }
};

inline AdmissibilityReport check_admissibility(const ParamConfig& cfg) {
    cfg.validate();
    const Rational b = cfg.b, beta = cfg.beta, gamma = cfg.gamma;
    AdmissibilityReport rep;

    auto add = [&rep](const std::string& name, const Rational& lhs, const Rational& rhs,
                      bool strict, bool gating) {
        GateRecord g;
        g.name = name;
        g.lhs = to_string(lhs);
        g.rhs = to_string(rhs);
        g.satisfied = strict ? lhs < rhs : lhs <= rhs;
        g.gating = gating;
        rep.gates.push_back(g);
    };

    // forced-SQG pair
    add("forced_beta_1", beta, 3 * b * (b + 1) / (4 * b * b + b + 1), true, true);
    add("forced_beta_2", beta, 3 * b * (b + 1) / (2 * b * b + b + 1), true, true);
    // dissipation and mollification gates
    add("dissipation", beta, (b - 2 * b * (gamma - 1)) / (2 * b - 1), true, true);
    add("mollification", beta, Rational(3, 2), true, true);
    // unforced pair, reported for comparison only
    add("unforced_beta_1", beta, 3 * b / (4 * b + 1), true, false);
    add("unforced_beta_2", beta, 3 * b / (2 * b + 1), true, false);
    // theorem hypothesis ranges
    add("alpha_lower", Rational(-1, 2), cfg.alpha, false, true);
    add("alpha_upper", cfg.alpha, Rational(0), true, true);
    add("gamma_upper", gamma, 1 - cfg.alpha, true, true);
    add("zeta_lower", Rational(0), cfg.zeta, true, true);
    add("zeta_upper", cfg.zeta, Rational(1, 2), true, true);

    // attainable regularity of the construction
    rep.max_alpha_theta = beta / (2 * b) - Rational(1, 2);
    rep.max_alpha_eta = rep.max_alpha_theta + 1;
    rep.max_zeta = beta / (2 * b + 1 - beta / b);
    add("alpha_attainable_theta", cfg.alpha, rep.max_alpha_theta, true, true);
    add("zeta_attainable", cfg.zeta, rep.max_zeta, true, true);

    rep.admissible = true;
    for (const auto& g : rep.gates)
        if (g.gating && !g.satisfied) rep.admissible = false;
    return rep;
}

}  // namespace sqg
