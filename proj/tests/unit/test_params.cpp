#include <catch2/catch_amalgamated.hpp>

#include "sqglab/params.hpp"

using namespace sqg;

namespace {
ParamConfig cfg_16_54() {
    ParamConfig c;
    c.lambda0 = 16;
    c.b = Rational(5, 4);
    c.beta = Rational(4, 5);
    return c;
}
}  // namespace

TEST_CASE("rational parsing is exact") {
    CHECK(parse_rational("5/4") == Rational(5, 4));
    CHECK(parse_rational("1.001") == Rational(1001, 1000));
    CHECK(parse_rational("-0.25") == Rational(-1, 4));
    CHECK(parse_rational("3") == Rational(3));
    CHECK(parse_rational(" 0.59 ") == Rational(59, 100));
    CHECK_THROWS(parse_rational("1.0.1"));
    CHECK_THROWS(parse_rational("x"));
}

TEST_CASE("b = 1 is rejected") {
    ParamConfig c = cfg_16_54();
    c.b = 1;
    CHECK_THROWS_AS(build_schedule(c), std::invalid_argument);
}

TEST_CASE("lambda_q exact ceiling table at (16, 5/4)") {
    // ceil(16^{(5/4)^q}) computed with an arbitrary-precision integer-root
    // oracle before the build.
    Schedule s = build_schedule(cfg_16_54());
    const int64_t expect[] = {16, 32, 77, 225, 871, 4729, 39207, 551686, 15035380};
    for (int q = 0; q < 9; ++q) {
        CAPTURE(q);
        CHECK(s.lambda(q) == expect[q]);
        CHECK(s.lambda_is_exact(q));
    }
}

TEST_CASE("lambda tables for other bases") {
    {
        ParamConfig c = cfg_16_54();
        c.lambda0 = 8;
        Schedule s(c);
        const int64_t expect[] = {8, 14, 26, 59, 161, 571};
        for (int q = 0; q < 6; ++q) CHECK(s.lambda(q) == expect[q]);
    }
    {
        ParamConfig c = cfg_16_54();
        c.lambda0 = 4;
        c.b = Rational(5, 2);
        Schedule s(c);
        CHECK(s.lambda(1) == 32);
        CHECK(s.lambda(2) == 5793);
    }
    {
        ParamConfig c = cfg_16_54();
        c.lambda0 = 8;
        c.b = 2;
        Schedule s(c);
        CHECK(s.lambda(1) == 64);
        CHECK(s.lambda(2) == 4096);
    }
}

TEST_CASE("lambda overflow reports max usable q") {
    ParamConfig c = cfg_16_54();
    c.b = 2;  // lambda_q = 16^{2^q}: overflows past q = 3 (16^16 = 2^64)
    Schedule s(c);
    CHECK(s.lambda(3) == 4294967296LL);  // 16^8 = 2^32
    try {
        s.lambda(4);
        FAIL("expected ScheduleOverflow");
    } catch (const ScheduleOverflow& e) {
        CHECK(e.max_usable_q == 3);
    }
}

TEST_CASE("delta_0 matches arbitrary-precision oracle") {
    Schedule s = build_schedule(cfg_16_54());
    CHECK(s.delta(0) == Catch::Approx(0.10881882041201552).epsilon(1e-13));
    CHECK(s.delta(1) == Catch::Approx(0.0625).epsilon(1e-13));
    CHECK(s.delta(-1) == s.delta(0));  // clamped index
}

TEST_CASE("time scale: clamped tau_0 and beta = 0 collapse") {
    Schedule s = build_schedule(cfg_16_54());
    // oracle: delta_0^{-1/2} (16*32)^{-3/4}
    CHECK(time_scale(0, s) == Catch::Approx(0.028164076956588445).epsilon(1e-12));

    ParamConfig c = cfg_16_54();
    c.beta = 0;
    Schedule s0(c);
    double expect = std::pow(16.0 * 77.0, -0.75);  // (lambda_0 lambda_2)^{-3/4} at q = 1
    CHECK(time_scale(1, s0) == Catch::Approx(expect).epsilon(1e-13));
}

TEST_CASE("tau_q * lambda_q^{3/2} delta_{q-1}^{1/2} <= 1 for q <= 6") {
    Schedule s = build_schedule(cfg_16_54());
    for (int q = 0; q <= 6; ++q) {
        CAPTURE(q);
        double r = s.tau(q) * std::pow(double(s.lambda(q)), 1.5) * std::sqrt(s.delta(q - 1));
        CHECK(r <= 1.0);
    }
}

TEST_CASE("schedule monotonicity for q < q' <= 8") {
    Schedule s = build_schedule(cfg_16_54());
    for (int q = 0; q < 8; ++q) {
        CAPTURE(q);
        CHECK(s.lambda(q) < s.lambda(q + 1));
        CHECK(s.delta(q) > s.delta(q + 1));
        CHECK(s.tau(q) > s.tau(q + 1));
        CHECK(s.ell(q) > s.ell(q + 1));
    }
}

TEST_CASE("tau_tilde cap") {
    Schedule s = build_schedule(cfg_16_54());
    for (int q = 0; q <= 6; ++q) {
        CAPTURE(q);
        CHECK(s.tau_tilde(q) <= s.w(q) * (1 + 1e-15));
    }
    CHECK(s.tau_tilde(0) == Catch::Approx(1.674646035212958e-4).epsilon(1e-12));
    CHECK(s.ell(0) == Catch::Approx(3.716272234383503e-4).epsilon(1e-12));
}

TEST_CASE("admissibility: forced pair thresholds") {
    ParamConfig c = cfg_16_54();
    c.b = parse_rational("1.001");
    c.beta = parse_rational("0.99");
    c.alpha = parse_rational("-0.25");
    c.zeta = parse_rational("0.25");
    auto rep = check_admissibility(c);
    CHECK(rep.find("forced_beta_1")->satisfied);
    CHECK(rep.find("forced_beta_2")->satisfied);
    // exact threshold 6009003/6009004
    CHECK(rep.find("forced_beta_1")->rhs == "6009003/6009004");
    CHECK(rep.admissible);

    c.b = 2;
    rep = check_admissibility(c);
    CHECK_FALSE(rep.find("forced_beta_1")->satisfied);  // 18/19 < 0.99
    CHECK(rep.find("forced_beta_1")->rhs == "18/19");
    CHECK_FALSE(rep.admissible);
}

TEST_CASE("admissibility: unforced threshold tends to 3/5 as b -> 1") {
    ParamConfig c = cfg_16_54();
    c.b = parse_rational("1.0001");
    c.beta = parse_rational("0.61");
    auto rep = check_admissibility(c);
    CHECK_FALSE(rep.find("unforced_beta_1")->satisfied);
    CHECK_FALSE(rep.find("unforced_beta_1")->gating);  // reported, never gates

    c.beta = parse_rational("0.59");
    rep = check_admissibility(c);
    CHECK(rep.find("unforced_beta_1")->satisfied);
}

TEST_CASE("admissibility: theorem hypothesis at the alpha endpoint") {
    ParamConfig c = cfg_16_54();
    c.gamma = 0;
    c.alpha = Rational(-1, 2);
    auto rep = check_admissibility(c);
    CHECK(rep.find("gamma_upper")->satisfied);  // 0 < 3/2
    CHECK(rep.find("alpha_lower")->satisfied);
}

TEST_CASE("admissibility: dissipation and mollification gates") {
    ParamConfig c = cfg_16_54();
    c.gamma = Rational(1, 2);
    auto rep = check_admissibility(c);
    // (b - 2b(gamma-1))/(2b-1) = 2b/(2b-1) = 5/3 at b = 5/4
    CHECK(rep.find("dissipation")->rhs == "5/3");
    CHECK(rep.find("dissipation")->satisfied);
    CHECK(rep.find("mollification")->satisfied);

    c.beta = parse_rational("1.6");
    rep = check_admissibility(c);
    CHECK_FALSE(rep.find("mollification")->satisfied);
    CHECK_FALSE(rep.admissible);
}

TEST_CASE("admissibility: regularity outputs") {
    auto rep = check_admissibility(cfg_16_54());
    CHECK(rep.max_alpha_theta == Rational(-9, 50));
    CHECK(rep.max_alpha_eta == Rational(41, 50));
    CHECK(rep.max_zeta == Rational(40, 143));
}

TEST_CASE("gate consistency: forced thresholds do not depend on beta") {
    ParamConfig c = cfg_16_54();
    c.beta = parse_rational("0.9");
    auto rep1 = check_admissibility(c);
    if (rep1.find("forced_beta_1")->satisfied) {
        for (int k = 1; k <= 8; ++k) {
            c.beta = Rational(9, 10) * Rational(k, 9);
            auto rep = check_admissibility(c);
            CAPTURE(k);
            CHECK(rep.find("forced_beta_1")->satisfied);
            CHECK(rep.find("forced_beta_2")->satisfied);
        }
    }
}

TEST_CASE("gate evaluation is reproducible (exact strings)") {
    ParamConfig c = cfg_16_54();
    auto r1 = check_admissibility(c);
    auto r2 = check_admissibility(c);
    REQUIRE(r1.gates.size() == r2.gates.size());
    for (size_t i = 0; i < r1.gates.size(); ++i) {
        CHECK(r1.gates[i].lhs == r2.gates[i].lhs);
        CHECK(r1.gates[i].rhs == r2.gates[i].rhs);
        CHECK(r1.gates[i].satisfied == r2.gates[i].satisfied);
    }
    CHECK(r1.find("forced_beta_1")->rhs == "135/136");
}
