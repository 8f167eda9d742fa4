#include <catch2/catch_amalgamated.hpp>

#include "zmlab/identities.hpp"
#include "zmlab/norms.hpp"

using namespace zm;

TEST_CASE("constants: Sobolev and sphere areas") {
    REQUIRE(Constants::sphere_area(3) == Catch::Approx(2.0 * pi * pi).epsilon(1e-14));
    REQUIRE(Constants::sphere_area(2) == Catch::Approx(4.0 * pi).epsilon(1e-14));
    REQUIRE(Constants::sobolev(3) ==
            Catch::Approx(3.0 * std::pow(0.5 * pi, 4.0 / 3.0)).margin(1e-12));
}

TEST_CASE("L^p norms of the closed-form profiles") {
    SECTION("|B_LY|: ||B||_{3/2} = 4 S_3") {
        LossYauFamily ly;
        RadialProfile prof = radial_absB(ly);
        double n = lp_norm_radial(prof, 1.5, 3);
        REQUIRE(n == Catch::Approx(4.0 * Constants::sobolev(3)).epsilon(1e-9));
        REQUIRE(n == Catch::Approx(21.91194).margin(2e-5));
    }
    SECTION("lambda: (int |lambda|^3)^{2/3} = S_3 / 3") {
        double n = lp_norm_radial(radial_lambda(), 3.0, 3);
        REQUIRE(n * n == Catch::Approx(Constants::sobolev(3) / 3.0).epsilon(1e-10));
    }
    SECTION("zero profile gives zero") {
        RadialProfile z;
        z.f = [](double) { return 0.0; };
        z.monotone_nonincreasing = true;
        z.decay_exponent = 100.0;
        REQUIRE(lp_norm_radial(z, 1.5, 3) == 0.0);
    }
    SECTION("monopole |B| is not in L^{3/2}: divergence error") {
        MonopoleFamily mono;
        RadialProfile prof = radial_absB(mono);
        REQUIRE_THROWS_AS(lp_norm_radial(prof, 1.5, 3), DivergenceError);
    }
    SECTION("quadrature self-consistency under tolerance tightening") {
        double a = lp_norm_radial(radial_lambda(), 3.0, 3, 1e-9);
        double b = lp_norm_radial(radial_lambda(), 3.0, 3, 1e-12);
        REQUIRE(std::abs(a - b) < 1e-9 * std::abs(b));
    }
}

TEST_CASE("weak L^p norms") {
    SECTION("monopole: sup r^2 |B| = 1/2 exactly, saturating the weak bound") {
        MonopoleFamily mono;
        RadialProfile prof = radial_absB(mono);
        REQUIRE(weak_sup_radial(prof, 1.5) == Catch::Approx(0.5).margin(1e-12));
        double wn = weak_lp_radial(prof, 1.5);
        REQUIRE(wn ==
                Catch::Approx(0.5 * std::pow(4.0 * pi / 3.0, 2.0 / 3.0)).margin(1e-12));
    }
    SECTION("f = 1/(1+r^2): sup attained in the r -> inf limit") {
        REQUIRE(weak_sup_radial(radial_lambda(), 1.5) == Catch::Approx(1.0).margin(1e-9));
    }
    SECTION("V = (1/4) r^{-2}: the borderline value 1/4") {
        RadialProfile v;
        v.f = [](double r) { return 0.25 / (r * r); };
        v.monotone_nonincreasing = true;
        v.decay_exponent = 2.0;
        REQUIRE(weak_sup_radial(v, 1.5) == Catch::Approx(0.25).margin(1e-12));
    }
    SECTION("non-monotone profiles are unsupported") {
        RadialProfile v;
        v.f = [](double r) { return r * std::exp(-r); };
        v.monotone_nonincreasing = false;
        REQUIRE_THROWS_AS(weak_lp_radial(v, 1.5), UnsupportedError);
    }
}

TEST_CASE("stability quotient: 9 pi^3 for Loss-Yau, with conversions") {
    LossYauFamily ly;
    double q = zc_quotient(ly);
    REQUIRE(q == Catch::Approx(9.0 * pi * pi * pi).epsilon(1e-8));
    ZcReport rep = zc_report(ly);
    REQUIRE(rep.quotient >= rep.lower_bound);  // 9 pi^3 >= 32 pi / 3
    REQUIRE(rep.zc_lower == Catch::Approx(25025.0).epsilon(0.005));
    REQUIRE(rep.zc_upper == Catch::Approx(208400.0).epsilon(0.005));
    // monopole quotient diverges
    MonopoleFamily mono;
    REQUIRE_THROWS_AS(zc_quotient(mono), DivergenceError);
}

TEST_CASE("bound table rows") {
    LossYauFamily ly;
    SECTION("Theorem bound for ||B||_{3/2}: Loss-Yau sits at ratio 2") {
        BoundReport r = bound_table("magnetic", &ly, 3);
        REQUIRE(r.ratio == Catch::Approx(2.0).epsilon(1e-8));
        REQUIRE_FALSE(r.equality);
    }
    SECTION("lambda equality cases in d = 3, 5") {
        BoundReport r3 = bound_table("spinor", nullptr, 3);
        REQUIRE(r3.equality);
        REQUIRE(r3.ratio == Catch::Approx(1.0).margin(1e-9));
        BoundReport r5 = bound_table("spinorgeneral", nullptr, 5);
        REQUIRE(r5.equality);
    }
    SECTION("general-d field bound: d = 3 consistency with the first theorem") {
        AppendixAFamily fam(3);
        BoundReport gen = bound_table("genmagnetic", &fam, 3);
        BoundReport mag = bound_table("magnetic", &ly, 3);
        REQUIRE(gen.bound == Catch::Approx(mag.bound).epsilon(1e-12));
        REQUIRE(gen.ratio == Catch::Approx(2.0).epsilon(1e-8));
    }
    SECTION("general-d field bound holds for d = 5") {
        AppendixAFamily fam(5);
        BoundReport r = bound_table("genmagnetic", &fam, 5);
        REQUIRE(r.ratio >= 1.0 - 1e-9);
    }
    SECTION("weak-norm equality at the monopole") {
        MonopoleFamily mono;
        BoundReport r = bound_table("magneticweak", &mono, 3);
        REQUIRE(r.equality);
        REQUIRE(r.ratio == Catch::Approx(1.0).margin(1e-10));
    }
    SECTION("improved stability bound ratio for Loss-Yau") {
        BoundReport r = bound_table("improvedz", &ly, 3);
        REQUIRE(r.lhs == Catch::Approx(9.0 * pi * pi * pi).epsilon(1e-8));
        REQUIRE(r.bound == Catch::Approx(32.0 * pi / 3.0).epsilon(1e-14));
        REQUIRE(r.ratio >= 1.0);
    }
    SECTION("incompatible pairs are rejected") {
        REQUIRE_THROWS_AS(bound_table("magnetic", nullptr, 3), ValidationError);
        REQUIRE_THROWS_AS(bound_table("unknown", &ly, 3), ValidationError);
    }
}

TEST_CASE("conformal constant identity for several d") {
    for (int d : {3, 4, 5, 6, 10}) REQUIRE(hijazi_constant_check(d) < 1e-12);
    REQUIRE_THROWS_AS(hijazi_constant_check(2), ValidationError);
}

TEST_CASE("closed-form radial integral table vs quadrature") {
    for (const auto& e : green_radial_integrals()) {
        INFO(e.name);
        REQUIRE(e.gap < 1e-12);
    }
}

TEST_CASE("integration by parts over a box") {
    const LossYauFamily& ly = cache::lossyau();
    BumpSpinor eta;
    eta.radius = 2.0;
    eta.sharpness = 1.0;
    eta.dir = ly.phi0();

    SECTION("Loss-Yau pair at order 24: gap < 1e-6") {
        auto psi_src = [&ly](const Vec& y) { return ly.psi(y); };
        auto A_src = [&ly](const Vec& y) { return ly.A(y); };
        BypartsResult bp = integral_byparts_check(psi_src, A_src, ly.rep(), eta, 2.5, 24);
        REQUIRE(bp.gap < 1e-6);
        REQUIRE(std::abs(bp.lhs) > 0.1);  // non-trivial integrals
    }
    SECTION("A = 0, psi = eta: both sides are the Dirichlet energy") {
        auto psi_src = [&eta](const Vec& y) { return eta.jets(y); };
        BypartsResult bp = integral_byparts_check(psi_src, {}, ly.rep(), eta, 2.5, 24);
        REQUIRE(bp.gap < 1e-8);
        REQUIRE(bp.lhs.real() > 0.0);
        REQUIRE(std::abs(bp.lhs.imag()) < 1e-10);
    }
    SECTION("support touching the boundary is rejected") {
        auto psi_src = [&ly](const Vec& y) { return ly.psi(y); };
        BumpSpinor wide = eta;
        wide.radius = 3.0;
        REQUIRE_THROWS_AS(integral_byparts_check(psi_src, {}, ly.rep(), wide, 2.5, 8),
                          ValidationError);
    }
    SECTION("d = 5 analogue with the vacuum family") {
        const AppendixAFamily& fam = cache::appendix_a(5);
        BumpSpinor eta5;
        eta5.radius = 2.0;
        eta5.sharpness = 1.0;
        eta5.dir = fam.vacuum();
        auto psi_src = [&fam](const Vec& y) { return fam.psi(y); };
        auto A_src = [&fam](const Vec& y) { return fam.A(y); };
        BypartsResult bp = integral_byparts_check(psi_src, A_src, fam.rep(), eta5, 2.5, 12);
        REQUIRE(bp.gap < 1e-5);
    }
}

TEST_CASE("radial profile audits") {
    SECTION("isotropy audit passes for the implemented families") {
        LossYauFamily ly;
        REQUIRE_NOTHROW(radial_absB(ly));
        REQUIRE_NOTHROW(radial_abspsi2(ly));
        AppendixAFamily a5(5);
        REQUIRE_NOTHROW(radial_absB(a5));
    }
    SECTION("appendix-A |B| has the closed radial form 4 sqrt(nu) d / (1+r^2)^2") {
        AppendixAFamily a5(5);
        RadialProfile prof = radial_absB(a5);
        for (double r : {0.5, 1.0, 2.0, 4.0}) {
            double expect = 4.0 * std::sqrt(2.0) * 5.0 / std::pow(1.0 + r * r, 2);
            REQUIRE(prof.f(r) == Catch::Approx(expect).epsilon(1e-12));
        }
    }
}
