#include <catch2/catch_amalgamated.hpp>

#include "zmlab/fields.hpp"
#include "zmlab/identities.hpp"

using namespace zm;

namespace {

double zero_mode_residual(const FieldFamily& fam, const Vec& x) {
    return spinor_norm(dirac_apply(fam.rep(), fam.psi(x), fam.A(x)));
}

}  // namespace

TEST_CASE("Loss-Yau: values at the origin and the profile identities") {
    LossYauFamily fam;
    Vec zero = Vec::Zero(3);

    SECTION("psi(0) = phi0 exactly") {
        SpinorJets psi = fam.psi(zero);
        REQUIRE(std::abs(psi[0].v - fam.phi0()[0]) < 1e-15);
        REQUIRE(std::abs(psi[1].v - fam.phi0()[1]) < 1e-15);
    }
    SECTION("A(0) = 3w") {
        VectorJets A = fam.A(zero);
        for (int l = 0; l < 3; ++l) REQUIRE(A[l].v == Catch::Approx(3.0 * fam.w()[l]).margin(1e-15));
    }
    SECTION("|psi|^2 = 1/(1+r^2)^2 and |w| = 1 for the unit default spinor") {
        double wn = std::sqrt(fam.w()[0] * fam.w()[0] + fam.w()[1] * fam.w()[1] +
                              fam.w()[2] * fam.w()[2]);
        REQUIRE(wn == Catch::Approx(1.0).margin(1e-14));
        Rng rng = make_rng(3);
        for (int i = 0; i < 20; ++i) {
            Vec x = random_point_in_ball(rng, 3, 5.0);
            double n2 = norm2_jet(fam.psi(x)).v;
            REQUIRE(n2 == Catch::Approx(std::pow(1.0 + x.squaredNorm(), -2)).margin(1e-14));
        }
    }
    SECTION("the default direction is w = e1 (phi0 = vacuum)") {
        REQUIRE(fam.w()[0] == Catch::Approx(1.0).margin(1e-14));
        REQUIRE(std::abs(fam.w()[1]) < 1e-14);
        REQUIRE(std::abs(fam.w()[2]) < 1e-14);
    }
}

TEST_CASE("Loss-Yau is a zero mode at 50 seeded points") {
    LossYauFamily fam;
    Rng rng = make_rng(42);
    for (int i = 0; i < 50; ++i) {
        Vec x = random_point_in_ball(rng, 3, 5.0);
        REQUIRE(zero_mode_residual(fam, x) < 1e-12);
    }
}

TEST_CASE("Loss-Yau with a user-supplied unit spinor is still a zero mode") {
    Rng rng = make_rng(8);
    CVec phi0 = random_unit_spinor(rng, 2);
    LossYauFamily fam(phi0);
    for (int i = 0; i < 20; ++i) {
        Vec x = random_point_in_ball(rng, 3, 4.0);
        REQUIRE(zero_mode_residual(fam, x) < 1e-12);
    }
}

TEST_CASE("Loss-Yau B: closed form vs derivatives of A, and B = 4A/(1+r^2)") {
    LossYauFamily fam;
    Rng rng = make_rng(19);
    for (int i = 0; i < 20; ++i) {
        Vec x = random_point_in_ball(rng, 3, 4.0);
        VectorJets A = fam.A(x);
        TensorJets B = fam.B(x);
        for (int j = 0; j < 3; ++j)
            for (int k = 0; k < 3; ++k) {
                double from_A = A[k].g[j] - A[j].g[k];
                REQUIRE(B[j][k].v == Catch::Approx(from_A).margin(1e-12));
            }
        double scale = 4.0 / (1.0 + x.squaredNorm());
        auto b = fam.curl3(x);
        for (int l = 0; l < 3; ++l)
            REQUIRE(b[l].v == Catch::Approx(scale * A[l].v).margin(1e-12));
    }
}

TEST_CASE("Appendix-A family: d = 3 reduces to Loss-Yau with w = e1") {
    AppendixAFamily fam(3);
    LossYauFamily ly;
    Rng rng = make_rng(4);
    for (int i = 0; i < 20; ++i) {
        Vec x = random_point_in_ball(rng, 3, 5.0);
        SpinorJets pa = fam.psi(x), pl = ly.psi(x);
        for (int c = 0; c < 2; ++c) REQUIRE(std::abs(pa[c].v - pl[c].v) < 1e-14);
        VectorJets Aa = fam.A(x), Al = ly.A(x);
        for (int l = 0; l < 3; ++l) REQUIRE(std::abs(Aa[l].v - Al[l].v) < 1e-13);
    }
}

TEST_CASE("Appendix-A family: |U|^2 = 1 at 100 points, d = 5") {
    AppendixAFamily fam(5);
    Rng rng = make_rng(21);
    for (int i = 0; i < 100; ++i) {
        Vec x = random_point_in_ball(rng, 5, 5.0);
        VectorJets u = fam.U(x);
        double n2 = 0.0;
        for (const auto& c : u) n2 += c.v * c.v;
        REQUIRE(std::abs(n2 - 1.0) < 1e-12);
    }
}

TEST_CASE("Appendix-A family: zero-mode residual in d = 5 and d = 7") {
    for (int d : {5, 7}) {
        AppendixAFamily fam(d);
        Rng rng = make_rng(100 + d);
        for (int i = 0; i < 20; ++i) {
            Vec x = random_point_in_ball(rng, d, 5.0);
            REQUIRE(zero_mode_residual(fam, x) < 1e-12);
        }
    }
}

TEST_CASE("Appendix-A B tensor: closed form matches derivatives of A") {
    AppendixAFamily fam(5);
    Rng rng = make_rng(33);
    for (int i = 0; i < 10; ++i) {
        Vec x = random_point_in_ball(rng, 5, 4.0);
        VectorJets A = fam.A(x);
        TensorJets B = fam.B(x);
        for (int j = 0; j < 5; ++j)
            for (int k = 0; k < 5; ++k)
                REQUIRE(B[j][k].v == Catch::Approx(A[k].g[j] - A[j].g[k]).margin(1e-12));
    }
}

TEST_CASE("even d rejected where the construction needs the vacuum") {
    REQUIRE_THROWS_AS(AppendixAFamily(4), UnsupportedError);
    REQUIRE_THROWS_AS(DunneMinFamily(4), UnsupportedError);
}

TEST_CASE("general conformal spinor solves the lambda equation, d = 4") {
    CliffordRep rep = gamma_rep(4);
    Rng rng = make_rng(6);
    CVec phi0 = random_unit_spinor(rng, rep.N);
    for (int i = 0; i < 20; ++i) {
        Vec x = random_point_in_ball(rng, 4, 5.0);
        SpinorJets psi = conformal_spinor_jets(rep, phi0, x, 2.0);
        RJet lam = lambda_of(coordinate_jets(x));
        REQUIRE(spinor_norm(dirac_lambda_apply(rep, psi, lam, 4.0)) < 1e-12);
    }
}

TEST_CASE("free constant spinor: gamma.(-i grad) psi = 0 exactly") {
    CliffordRep rep = gamma_rep(3);
    CVec phi0(2);
    phi0 << Complex(0.6, 0.0), Complex(0.0, 0.8);
    SpinorJets psi(2, CJet(3));
    psi[0].v = phi0[0];
    psi[1].v = phi0[1];
    VectorJets A(3, RJet(3));
    REQUIRE(spinor_norm(dirac_apply(rep, psi, A)) == 0.0);
}

TEST_CASE("Dunne-Min family matches the published component formulas") {
    for (int d : {3, 5, 7}) {
        DunneMinFamily fam(d);
        const int nu = d / 2;
        // J = diag(i sigma2, ..., i sigma2, -i sigma2) as a real (d-1)x(d-1) matrix
        Mat J = Mat::Zero(d - 1, d - 1);
        for (int blk = 0; blk < nu; ++blk) {
            double s = (blk == nu - 1) ? -1.0 : 1.0;
            J(2 * blk, 2 * blk + 1) = s;
            J(2 * blk + 1, 2 * blk) = -s;
        }
        Rng rng = make_rng(50 + d);
        for (int trial = 0; trial < 10; ++trial) {
            Vec y = random_point_in_ball(rng, d, 4.0);
            const double u = 1.0 + y.squaredNorm();
            VectorJets A = fam.A(y);
            for (int i = 0; i < d - 1; ++i) {
                double jx = 0.0;
                for (int j = 0; j < d - 1; ++j) jx += J(i, j) * y[j];
                double expect = d / (u * u) * (-2.0 * jx + 2.0 * y[i] * y[d - 1]);
                REQUIRE(A[i].v == Catch::Approx(expect).margin(1e-12));
            }
            double expect_d = d * (1.0 - y.squaredNorm() + 2.0 * y[d - 1] * y[d - 1]) / (u * u);
            REQUIRE(A[d - 1].v == Catch::Approx(expect_d).margin(1e-12));
        }
    }
}

TEST_CASE("Dunne-Min d = 3: A(0) = 3 e3 and the published bracket with w = e3") {
    DunneMinFamily fam(3);
    Vec zero = Vec::Zero(3);
    VectorJets A0 = fam.A(zero);
    REQUIRE(A0[2].v == Catch::Approx(3.0));
    REQUIRE(std::abs(A0[0].v) < 1e-15);
    REQUIRE(std::abs(A0[1].v) < 1e-15);

    // published d=3 form: 3/(1+r^2)^2 [ (1-r^2) e3 + 2 x3 x + 2 x x e3 ]
    Rng rng = make_rng(61);
    for (int i = 0; i < 20; ++i) {
        Vec x = random_point_in_ball(rng, 3, 4.0);
        const double u = 1.0 + x.squaredNorm();
        Vec e3 = Vec::Zero(3);
        e3[2] = 1.0;
        Vec xe3(3);  // x cross e3
        xe3 << x[1], -x[0], 0.0;
        Vec expect = 3.0 / (u * u) *
                     ((1.0 - x.squaredNorm()) * e3 + 2.0 * x[2] * x + 2.0 * xe3);
        VectorJets A = fam.A(x);
        for (int l = 0; l < 3; ++l) REQUIRE(A[l].v == Catch::Approx(expect[l]).margin(1e-12));
    }
}

TEST_CASE("Dunne-Min is a zero mode of the relabeled gamma representation") {
    for (int d : {3, 5}) {
        DunneMinFamily fam(d);
        Rng rng = make_rng(70 + d);
        for (int i = 0; i < 20; ++i) {
            Vec y = random_point_in_ball(rng, d, 5.0);
            REQUIRE(zero_mode_residual(fam, y) < 1e-10);
        }
    }
}

TEST_CASE("Dunne-Min relabeling flips the chirality class of its base") {
    for (int d : {3, 5}) {
        DunneMinFamily fam(d);
        AppendixAFamily base(d);
        REQUIRE(fam.relabeling().determinant() == Catch::Approx(-1.0));
        // improper relabeling: opposite chirality scalar, so no intertwiner
        REQUIRE(std::abs(chirality_scalar(base.rep()) + chirality_scalar(fam.rep())) < 1e-12);
        REQUIRE_THROWS_AS(intertwiner(base.rep(), fam.rep()), NoIntertwinerError);
        // the gamma_1-flipped base representation is in the same class
        CliffordRep flipped = base.rep();
        flipped.gammas[0] = -flipped.gammas[0];
        CMat U = intertwiner(flipped, fam.rep());
        double resid = 0.0;
        for (int j = 0; j < d; ++j)
            resid = std::max(resid, (U.adjoint() * flipped.gammas[j] * U - fam.rep().gammas[j])
                                        .cwiseAbs()
                                        .maxCoeff());
        REQUIRE(resid < 1e-12);
    }
}

TEST_CASE("monopole: pointwise identities and domain errors") {
    MonopoleFamily fam(0.5);
    Rng rng = make_rng(9);

    SECTION("|psi|^2 = 1/r^2 and sigma.x psi = r psi") {
        for (int i = 0; i < 30; ++i) {
            Vec x = random_point_in_ball(rng, 3, 5.0);
            if (x.norm() < 0.2 || std::hypot(x[0], x[1]) < 0.1) continue;
            SpinorJets psi = fam.psi(x);
            double n2 = norm2_jet(psi).v;
            REQUIRE(n2 == Catch::Approx(1.0 / x.squaredNorm()).margin(1e-13));
            std::vector<Complex> v = values(psi);
            CMat sx = x[0] * fam.rep().gammas[0] + x[1] * fam.rep().gammas[1] +
                      x[2] * fam.rep().gammas[2];
            CVec vv(2);
            vv << v[0], v[1];
            CVec res = sx * vv - x.norm() * vv;
            REQUIRE(res.norm() < 1e-13);
        }
    }
    SECTION("zero mode for g = 1/2") {
        for (int i = 0; i < 30; ++i) {
            Vec x = random_point_in_ball(rng, 3, 5.0);
            if (x.norm() < 0.3 || std::hypot(x[0], x[1]) < 0.2) continue;
            REQUIRE(zero_mode_residual(fam, x) < 1e-12);
        }
    }
    SECTION("g != 1/2 is not a zero mode") {
        MonopoleFamily off(0.3);
        Vec x(3);
        x << 1.0, 0.5, -0.2;
        REQUIRE(zero_mode_residual(off, x) > 1e-3);
    }
    SECTION("domain errors") {
        Vec origin = Vec::Zero(3);
        REQUIRE_THROWS_AS(fam.psi(origin), DomainError);
        Vec on_string(3);
        on_string << 0.0, 0.0, -1.0;
        REQUIRE_THROWS_AS(fam.A(on_string), DomainError);
        REQUIRE_THROWS_AS(fam.psi(on_string), DomainError);
        Vec on_plus(3);
        on_plus << 0.0, 0.0, 1.0;
        REQUIRE_THROWS_AS(fam.A_prime(on_plus), DomainError);
        REQUIRE_NOTHROW(fam.A(on_plus));
        Vec on_minus(3);
        on_minus << 0.0, 0.0, -1.0;
        REQUIRE_NOTHROW(fam.A_prime(on_minus));
    }
}

TEST_CASE("finite-difference audit of the jets") {
    LossYauFamily ly;
    Vec x(3);
    x << 0.8, -0.3, 1.1;

    SECTION("Loss-Yau at h = 1e-4: deviation < 1e-7") {
        REQUIRE(finite_difference_audit(ly, 'p', x, 1e-4) < 1e-7);
        REQUIRE(finite_difference_audit(ly, 'A', x, 1e-4) < 1e-7);
        REQUIRE(finite_difference_audit(ly, 'l', x, 1e-4) < 1e-8);
    }
    SECTION("second-order stencil: deviation ratio at h and h/2 is about 4") {
        double dev1 = finite_difference_audit(ly, 'p', x, 2e-2);
        double dev2 = finite_difference_audit(ly, 'p', x, 1e-2);
        REQUIRE(dev1 / dev2 == Catch::Approx(4.0).epsilon(0.25));
    }
    SECTION("monopole A near the string propagates the domain error") {
        MonopoleFamily mono;
        Vec bad(3);
        bad << 0.0, 0.0, -2.0;
        REQUIRE_THROWS_AS(finite_difference_audit(mono, 'A', bad, 1e-4), DomainError);
    }
    SECTION("appendix-A jets audit, d = 5") {
        AppendixAFamily fam(5);
        Vec y(5);
        y << 0.4, -0.2, 0.9, 0.3, -0.6;
        REQUIRE(finite_difference_audit(fam, 'p', y, 1e-4) < 1e-7);
        REQUIRE(finite_difference_audit(fam, 'A', y, 1e-4) < 5e-7);
    }
}

TEST_CASE("make_family dispatch") {
    REQUIRE(make_family("lossyau", 3)->name() == "lossyau");
    REQUIRE(make_family("monopole", 3)->name() == "monopole");
    REQUIRE(make_family("appendixa", 5)->dim() == 5);
    REQUIRE(make_family("dunnemin", 5)->dim() == 5);
    REQUIRE_THROWS_AS(make_family("nope", 3), ValidationError);
    REQUIRE_THROWS_AS(make_family("lossyau", 5), UnsupportedError);
}
