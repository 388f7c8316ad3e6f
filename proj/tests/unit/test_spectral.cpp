#include <catch2/catch_amalgamated.hpp>

#include <random>

#include "sqglab/ops.hpp"

using namespace sqg;

namespace {
const GridSpec g64(64);

ScalarField cosx(const GridSpec& g, int k1, int k2, double phase = 0.0) {
    return ScalarField::sample(
        g, [=](double x, double y) { return std::cos(k1 * x + k2 * y + phase); });
}
}  // namespace

TEST_CASE("round trip physical -> spectral -> physical") {
    std::mt19937_64 rng(7);
    ScalarField f = random_band_limited(g64, 20, rng);
    ScalarField f2 = ScalarField::from_spec(g64, std::vector<cplx>(f.spec()));
    const auto& a = f.phys();
    const auto& b = f2.phys();
    double err = 0.0, scale = f.sup_abs();
    for (size_t i = 0; i < a.size(); ++i) err = std::max(err, std::abs(a[i] - b[i]));
    CHECK(err / scale < 1e-13);
}

TEST_CASE("fractional laplacian eigenfunctions") {
    ScalarField f = cosx(g64, 1, 0);
    ScalarField lf = fractional_laplacian(f, 1.0);
    CHECK((lf - f).sup_abs() < 1e-13);  // |xi| = 1

    // cos(2x + y): |xi|^2 = 5
    ScalarField h = cosx(g64, 2, 1);
    ScalarField lh = fractional_laplacian(h, 2.0);
    CHECK((lh - 5.0 * h).sup_abs() < 5e-12);

    // sin(3y), s = -1 -> sin(3y)/3
    ScalarField s3 = ScalarField::sample(g64, [](double, double y) { return std::sin(3 * y); });
    ScalarField ls = fractional_laplacian(s3, -1.0);
    CHECK((ls - (1.0 / 3.0) * s3).sup_abs() < 1e-13);

    // Lambda^0 is the identity here (the gamma = 0 equation convention is
    // applied by the engine, not by the operator)
    ScalarField l0 = fractional_laplacian(h, 0.0);
    CHECK((l0 - h).sup_abs() < 1e-13);
}

TEST_CASE("fractional laplacian rejects nonzero mean for negative order") {
    ScalarField one = ScalarField::sample(g64, [](double, double) { return 1.0; });
    CHECK_THROWS_AS(fractional_laplacian(one, -1.0), std::domain_error);
}

TEST_CASE("multiplier composition on mean-zero fields") {
    std::mt19937_64 rng(11);
    ScalarField f = random_band_limited(g64, 15, rng);
    ScalarField a = fractional_laplacian(fractional_laplacian(f, 0.7), -1.2);
    ScalarField b = fractional_laplacian(f, -0.5);
    CHECK((a - b).sup_abs() / b.sup_abs() < 1e-12);
}

TEST_CASE("riesz_perp hand oracle and divergence-free output") {
    // T[cos x1] = grad_perp Lambda^{-1} cos x1 = (0, -sin x1)
    ScalarField f = cosx(g64, 1, 0);
    VectorField u = riesz_perp(f);
    ScalarField expect_y =
        ScalarField::sample(g64, [](double x, double) { return -std::sin(x); });
    CHECK(u.x.sup_abs() < 1e-13);
    CHECK((u.y - expect_y).sup_abs() < 1e-13);

    ScalarField z(g64);
    VectorField uz = riesz_perp(z);
    CHECK(uz.sup_abs() == 0.0);

    std::mt19937_64 rng(3);
    ScalarField r = random_band_limited(g64, 18, rng);
    VectorField ur = riesz_perp(r);
    CHECK(divergence(ur).sup_abs() < 1e-12 * std::max(1.0, ur.sup_abs()));
}

TEST_CASE("riesz_perp requires mean zero") {
    ScalarField one = ScalarField::sample(g64, [](double, double) { return 1.0; });
    CHECK_THROWS_AS(riesz_perp(one), std::domain_error);
}

TEST_CASE("annulus projection") {
    ScalarField inside = cosx(g64, 8, 0);
    CHECK((project_annulus(inside, 8.0) - inside).sup_abs() < 1e-13);

    ScalarField outside = cosx(g64, 2, 0);
    CHECK(project_annulus(outside, 8.0).sup_abs() < 1e-14);

    // sharp cutoff: band + complement reconstructs
    std::mt19937_64 rng(5);
    ScalarField f = random_band_limited(g64, 25, rng);
    ScalarField band = project_annulus(f, 8.0);
    ScalarField rest = f - band;
    CHECK(energy_outside_annulus(band, 4.0, 16.0) < 1e-26);
    CHECK(((band + rest) - f).sup_abs() < 1e-13 * f.sup_abs());
}

TEST_CASE("wave projection bump") {
    const GridSpec g(128);
    const double lam = 16.0;
    // plane wave exactly at lambda * dir is kept
    CScalarField w(g);
    {
        auto& p = w.mutable_phys();
        for (int i = 0; i < g.N; ++i)
            for (int j = 0; j < g.N; ++j)
                p[size_t(i) * g.N + j] = std::exp(cplx(0, lam * (g.x(i) + 2 * g.x(j))));
    }
    CScalarField pw = project_wave(w, 1.0, 2.0, lam);
    const auto& a = w.phys();
    const auto& b = pw.phys();
    double err = 0.0;
    for (size_t i = 0; i < a.size(); ++i) err = std::max(err, std::abs(a[i] - b[i]));
    CHECK(err < 1e-12);

    // wavevector displaced by 0.6|dir| e1 falls outside the support
    CScalarField far(g);
    {
        int k1 = int(std::lround(lam * (1.0 + 0.6 * std::sqrt(5.0))));
        auto& p = far.mutable_phys();
        for (int i = 0; i < g.N; ++i)
            for (int j = 0; j < g.N; ++j)
                p[size_t(i) * g.N + j] = std::exp(cplx(0, k1 * g.x(i) + lam * 2 * g.x(j)));
    }
    CHECK(project_wave(far, 1.0, 2.0, lam).sup_abs() < 1e-13);
}

TEST_CASE("anti-divergence hand oracle") {
    ScalarField f = cosx(g64, 1, 0);
    SymTensorField t = anti_divergence(f);
    CHECK((t.t11 + f).sup_abs() < 1e-13);  // -cos x1
    CHECK(t.t12.sup_abs() < 1e-14);
    CHECK((t.t22 - f).sup_abs() < 1e-13);  // +cos x1

    SymTensorField z = anti_divergence(ScalarField(g64));
    CHECK(z.sup_abs() == 0.0);
}

TEST_CASE("anti-divergence identity and tracelessness on random fields") {
    const GridSpec g(128);
    std::mt19937_64 rng(2024);
    for (int trial = 0; trial < 10; ++trial) {
        ScalarField f = random_band_limited(g, 40, rng);
        SymTensorField t = anti_divergence(f);
        ScalarField back = double_divergence(t);
        CHECK((back - f).sup_abs() / f.sup_abs() < 1e-9);
        CHECK(t.trace_sup() < 1e-13 * std::max(1.0, t.sup_abs()));
        double asym = (t.t12 - t.t12).sup_abs();  // symmetric by construction
        CHECK(asym == 0.0);
    }
}

TEST_CASE("anti-divergence requires mean zero") {
    ScalarField one = ScalarField::sample(g64, [](double, double) { return 2.0; });
    CHECK_THROWS_AS(anti_divergence(one), std::domain_error);
}

TEST_CASE("sup_norm with derivative order") {
    CHECK(sup_norm(cosx(g64, 1, 0), 0) == Catch::Approx(1.0).epsilon(1e-12));
    CHECK(sup_norm(cosx(g64, 3, 0), 1) == Catch::Approx(3.0).epsilon(1e-10));
    CHECK(sup_norm(ScalarField(g64), 2) == 0.0);
}

TEST_CASE("spectral derivative matches 4th-order finite differences") {
    const GridSpec g(64);
    ScalarField f = ScalarField::sample(
        g, [](double x, double y) { return std::sin(2 * x) * std::cos(3 * y) + std::cos(x); });
    ScalarField dfs = derivative(f, 0);
    const auto& p = f.phys();
    const auto& d = dfs.phys();
    double h = g.dx();
    double err = 0.0;
    for (int i = 0; i < g.N; ++i) {
        for (int j = 0; j < g.N; ++j) {
            auto at = [&](int ii) { return p[size_t((ii + g.N) % g.N) * g.N + j]; };
            double fd =
                (-at(i + 2) + 8 * at(i + 1) - 8 * at(i - 1) + at(i - 2)) / (12.0 * h);
            err = std::max(err, std::abs(fd - d[size_t(i) * g.N + j]));
        }
    }
    CHECK(err < 20.0 * std::pow(h, 4));
}

TEST_CASE("dealiased product hand oracle") {
    ScalarField f = cosx(g64, 1, 0);
    ScalarField prod = multiply_dealiased(f, f);
    ScalarField expect = ScalarField::sample(
        g64, [](double x, double) { return 0.5 + 0.5 * std::cos(2 * x); });
    CHECK((prod - expect).sup_abs() < 1e-13);

    ScalarField one = ScalarField::sample(g64, [](double, double) { return 1.0; });
    std::mt19937_64 rng(9);
    ScalarField r = random_band_limited(g64, 10, rng);
    CHECK((multiply_dealiased(r, one) - r).sup_abs() < 1e-13 * r.sup_abs());
}

TEST_CASE("dealiased product kills aliased energy") {
    const GridSpec g(192);
    int k = g.dealias_cut();  // 63, the edge of the retained spectrum
    ScalarField f = cosx(g, k, 0);
    bool overflow = false;
    ScalarField prod = multiply_dealiased(f, f, overflow);
    CHECK(overflow);  // combined bandwidth 2k exceeds the retained spectrum
    // true content: 1/2 + cos(2k x)/2; the 2k mode aliases to N - 2k = 66.
    // Nothing may survive beyond the cut after truncation.
    double bad = std::abs(prod.coeff(g.N - 2 * k, 0)) + std::abs(prod.coeff(2 * k - g.N, 0)) +
                 std::abs(prod.coeff(k, 0));
    CHECK(bad < 1e-14);
    CHECK(std::abs(prod.coeff(0, 0) - 0.5) < 1e-14);
}

TEST_CASE("product within budget has no overflow flag") {
    bool overflow = true;
    ScalarField f = cosx(g64, 4, 1);
    ScalarField h = cosx(g64, 3, 2);
    multiply_dealiased(f, h, overflow);
    CHECK_FALSE(overflow);
}

TEST_CASE("compact spectral slab storage round trip") {
    std::mt19937_64 rng(31);
    ScalarField f = random_band_limited(g64, 9, rng);
    f.set_time(1.5);
    CompactScalar c(f);
    CHECK(c.band() <= 9);
    ScalarField back = c.expand();
    CHECK((back - f).sup_abs() < 1e-14 * std::max(1.0, f.sup_abs()));
    CHECK(back.time() == 1.5);
}

TEST_CASE("grid invariant checks") {
    CHECK_THROWS(GridSpec(65));
    CHECK_THROWS(GridSpec(64, 1.5));
    GridSpec g(512);
    CHECK(g.dealias_cut() == 170);
    CHECK(g.max_wavenumber() == 255);
}
