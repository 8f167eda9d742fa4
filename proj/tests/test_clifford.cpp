#include <catch2/catch_amalgamated.hpp>

#include "zmlab/clifford.hpp"

using namespace zm;

TEST_CASE("gamma_rep satisfies the anticommutation relations for d = 2..8") {
    for (int d = 2; d <= 8; ++d) {
        CliffordRep rep = gamma_rep(d);
        REQUIRE(rep.N == (1 << (d / 2)));
        REQUIRE(anticommutator_residual(rep) < 1e-14);
    }
}

TEST_CASE("gamma_rep rejects d < 2") {
    REQUIRE_THROWS_AS(gamma_rep(1), InvalidDimensionError);
}

TEST_CASE("d = 3 construction gives the Pauli triple") {
    CliffordRep rep = gamma_rep(3);
    REQUIRE((rep.gammas[0] - pauli::sigma1()).cwiseAbs().maxCoeff() < 1e-15);
    REQUIRE((rep.gammas[1] - pauli::sigma2()).cwiseAbs().maxCoeff() < 1e-15);
    REQUIRE((rep.gammas[2] - pauli::sigma3()).cwiseAbs().maxCoeff() < 1e-15);
}

TEST_CASE("ladder operators: CAR relations") {
    SECTION("even d unsupported") {
        REQUIRE_THROWS_AS(ladder_ops(gamma_rep(4)), UnsupportedError);
    }
    SECTION("d = 3: c1 = (sigma2 + i sigma3)/2, c1^2 = 0") {
        CliffordRep rep = gamma_rep(3);
        LadderSet l = ladder_ops(rep);
        CMat expected = 0.5 * (pauli::sigma2() + Complex(0, 1) * pauli::sigma3());
        REQUIRE((l.cs[0] - expected).cwiseAbs().maxCoeff() < 1e-15);
        REQUIRE((l.cs[0] * l.cs[0]).cwiseAbs().maxCoeff() < 1e-15);
        CMat anti = l.cs[0] * l.cdags[0] + l.cdags[0] * l.cs[0];
        REQUIRE((anti - CMat::Identity(2, 2)).cwiseAbs().maxCoeff() < 1e-14);
    }
    SECTION("d = 7: all mixed anticommutators vanish") {
        REQUIRE(car_residual(ladder_ops(gamma_rep(7))) < 1e-14);
    }
}

TEST_CASE("vacuum: annihilated, normalized, gamma_1 convention") {
    for (int d : {3, 5, 7}) {
        CliffordRep rep = gamma_rep(d);
        LadderSet l = ladder_ops(rep);
        Vacuum vac = find_vacuum(rep, l);
        REQUIRE(std::abs(vac.phi.norm() - 1.0) < 1e-14);
        for (const auto& c : l.cs) REQUIRE((c * vac.phi).norm() < 1e-14);
        REQUIRE((vac.rep.gammas[0] * vac.phi - vac.phi).norm() < 1e-14);
    }
}

TEST_CASE("d = 3 vacuum is (1,1)/sqrt(2)") {
    CliffordRep rep = gamma_rep(3);
    Vacuum vac = find_vacuum(rep, ladder_ops(rep));
    const double s = 1.0 / std::sqrt(2.0);
    REQUIRE(std::abs(vac.phi[0] - Complex(s, 0)) < 1e-12);
    REQUIRE(std::abs(vac.phi[1] - Complex(s, 0)) < 1e-12);
}

TEST_CASE("vacuum is unique: the joint nullspace is one-dimensional") {
    for (int d : {3, 5, 7}) {
        CliffordRep rep = gamma_rep(d);
        LadderSet l = ladder_ops(rep);
        CMat stacked(rep.N * static_cast<int>(l.cs.size()), rep.N);
        for (std::size_t j = 0; j < l.cs.size(); ++j)
            stacked.block(static_cast<int>(j) * rep.N, 0, rep.N, rep.N) = l.cs[j];
        Eigen::JacobiSVD<CMat> svd(stacked);
        int nullity = 0;
        for (int i = 0; i < svd.singularValues().size(); ++i)
            if (svd.singularValues()[i] < 1e-10) ++nullity;
        REQUIRE(nullity == 1);
    }
}

TEST_CASE("fock basis: orthonormal, repeated creation kills the state") {
    for (int d : {3, 7}) {
        CliffordRep rep = gamma_rep(d);
        LadderSet l = ladder_ops(rep);
        Vacuum vac = find_vacuum(rep, l);
        auto basis = fock_basis(l, vac);
        REQUIRE(static_cast<int>(basis.size()) == rep.N);
        REQUIRE(gram_residual(basis) < 1e-13);
        REQUIRE((l.cdags[0] * (l.cdags[0] * vac.phi)).norm() < 1e-14);
    }
}

TEST_CASE("omega matrix equals the canonical block form") {
    for (int d : {3, 5, 7}) {
        CliffordRep rep = gamma_rep(d);
        Vacuum vac = find_vacuum(rep, ladder_ops(rep));
        Mat om = omega_matrix(vac.rep, vac).omega;
        REQUIRE((om - omega_canonical(d)).cwiseAbs().maxCoeff() < 1e-13);
        // omega^T omega = diag(0, 1, ..., 1)
        Mat ot = om.transpose() * om;
        Mat expect = Mat::Identity(d, d);
        expect(0, 0) = 0.0;
        REQUIRE((ot - expect).cwiseAbs().maxCoeff() < 1e-13);
    }
}

TEST_CASE("d = 3 omega from the explicit vacuum") {
    CliffordRep rep = gamma_rep(3);
    Vacuum vac = find_vacuum(rep, ladder_ops(rep));
    Mat om = omega_matrix(vac.rep, vac).omega;
    REQUIRE(om(1, 2) == Catch::Approx(-1.0).margin(1e-14));
    REQUIRE(om(2, 1) == Catch::Approx(1.0).margin(1e-14));
    for (int i = 0; i < 3; ++i) REQUIRE(om(i, i) == 0.0);
    REQUIRE(om.row(0).cwiseAbs().maxCoeff() == 0.0);
}

TEST_CASE("intertwiner: identity, conjugated and rotated representations") {
    Rng rng = make_rng(11);
    for (int d : {3, 4, 5}) {
        CliffordRep rep = gamma_rep(d);

        SECTION("identity case, d = " + std::to_string(d)) {
            CMat U = intertwiner(rep, rep);
            // U is the identity up to a global phase
            Complex ph = U(0, 0) / std::abs(U(0, 0));
            REQUIRE((U / ph - CMat::Identity(rep.N, rep.N)).cwiseAbs().maxCoeff() < 1e-10);
        }

        SECTION("conjugated representation recovers V, d = " + std::to_string(d)) {
            // random unitary via QR of a Gaussian matrix
            CMat G(rep.N, rep.N);
            for (int i = 0; i < rep.N; ++i)
                for (int j = 0; j < rep.N; ++j)
                    G(i, j) = Complex(uniform(rng, -1, 1), uniform(rng, -1, 1));
            Eigen::HouseholderQR<CMat> qr(G);
            CMat V = qr.householderQ();
            CliffordRep repB = rep;
            for (int j = 0; j < d; ++j) repB.gammas[j] = V.adjoint() * rep.gammas[j] * V;
            CMat U = intertwiner(rep, repB);
            double resid = 0.0;
            for (int j = 0; j < d; ++j)
                resid = std::max(resid, (U.adjoint() * rep.gammas[j] * U - repB.gammas[j])
                                            .cwiseAbs()
                                            .maxCoeff());
            REQUIRE(resid < 1e-12);
            REQUIRE((U.adjoint() * U - CMat::Identity(rep.N, rep.N)).cwiseAbs().maxCoeff() <
                    1e-13);
            // and U equals V up to a global phase
            int bi = 0, bj = 0;
            double best = 0.0;
            for (int i = 0; i < rep.N; ++i)
                for (int j = 0; j < rep.N; ++j)
                    if (std::abs(V(i, j)) > best) {
                        best = std::abs(V(i, j));
                        bi = i;
                        bj = j;
                    }
            Complex ph = U(bi, bj) / V(bi, bj);
            REQUIRE(std::abs(std::abs(ph) - 1.0) < 1e-10);
            REQUIRE((U / ph - V).cwiseAbs().maxCoeff() < 1e-10);
        }
    }
}

TEST_CASE("intertwiner: rotation in SO(3) works, improper rotation is rejected") {
    CliffordRep rep = gamma_rep(3);
    Rng rng = make_rng(5);
    Mat M(3, 3);
    for (int i = 0; i < 3; ++i)
        for (int j = 0; j < 3; ++j) M(i, j) = uniform(rng, -1, 1);
    Eigen::HouseholderQR<Mat> qr(M);
    Mat R = qr.householderQ();
    if (R.determinant() < 0) R.col(0) = -R.col(0);

    CliffordRep rot = rep;
    for (int j = 0; j < 3; ++j) {
        CMat g = CMat::Zero(2, 2);
        for (int k = 0; k < 3; ++k) g += R(j, k) * rep.gammas[k];
        rot.gammas[j] = g;
    }
    CMat U = intertwiner(rep, rot);
    for (int j = 0; j < 3; ++j)
        REQUIRE((U.adjoint() * rep.gammas[j] * U - rot.gammas[j]).cwiseAbs().maxCoeff() < 1e-12);

    // improper rotation flips the chirality: no intertwiner exists
    CliffordRep flipped = rep;
    flipped.gammas[0] = -flipped.gammas[0];
    REQUIRE_THROWS_AS(intertwiner(rep, flipped), NoIntertwinerError);
}

TEST_CASE("antisym_canonical: validation, reconstruction, eigenvalue oracle") {
    SECTION("non-antisymmetric input rejected") {
        Mat B = Mat::Identity(3, 3);
        REQUIRE_THROWS_AS(antisym_canonical(B), ValidationError);
    }
    SECTION("d = 2 canonical block") {
        Mat B(2, 2);
        B << 0, 1, -1, 0;
        AntisymCanonical c = antisym_canonical(B);
        REQUIRE(c.Ds.size() == 1);
        REQUIRE(c.Ds[0] == Catch::Approx(1.0));
        REQUIRE((c.R * c.block_form() * c.R.transpose() - B).cwiseAbs().maxCoeff() < 1e-14);
    }
    SECTION("random d = 5: reconstruction and eigenvalue pairing") {
        Rng rng = make_rng(17);
        Mat B = Mat::Zero(5, 5);
        for (int i = 0; i < 5; ++i)
            for (int j = i + 1; j < 5; ++j) {
                B(i, j) = uniform(rng, -2, 2);
                B(j, i) = -B(i, j);
            }
        AntisymCanonical c = antisym_canonical(B);
        REQUIRE((c.R * c.block_form() * c.R.transpose() - B).cwiseAbs().maxCoeff() < 1e-12);
        REQUIRE((c.R * c.R.transpose() - Mat::Identity(5, 5)).cwiseAbs().maxCoeff() < 1e-13);
        // oracle: positive imaginary parts of B's eigenvalues
        Eigen::ComplexEigenSolver<CMat> es(B.cast<Complex>());
        std::vector<double> imag_pos;
        for (int i = 0; i < 5; ++i) {
            double im = es.eigenvalues()[i].imag();
            if (im > 1e-12) imag_pos.push_back(im);
        }
        std::sort(imag_pos.rbegin(), imag_pos.rend());
        REQUIRE(imag_pos.size() == c.Ds.size());
        for (std::size_t i = 0; i < imag_pos.size(); ++i)
            REQUIRE(c.Ds[i] == Catch::Approx(imag_pos[i]).margin(1e-12));
    }
}

TEST_CASE("spin-field matrix: d = 3 block, operator norm, quadratic-form bound") {
    SECTION("d = 3, single component: i g1 g2 = -sigma3") {
        CliffordRep rep = gamma_rep(3);
        Mat B = Mat::Zero(3, 3);
        B(0, 1) = 0.7;
        B(1, 0) = -0.7;
        CMat F = spin_field_matrix(rep, B);
        REQUIRE((F - (-0.7) * pauli::sigma3()).cwiseAbs().maxCoeff() < 1e-14);
        Eigen::SelfAdjointEigenSolver<CMat> es(F);
        REQUIRE(es.eigenvalues()[0] == Catch::Approx(-0.7));
        REQUIRE(es.eigenvalues()[1] == Catch::Approx(0.7));
    }
    SECTION("200 seeded B over d = 2..7: norm identity and nu^(1/2) bound") {
        Rng rng = make_rng(23);
        for (int trial = 0; trial < 200; ++trial) {
            int d = 2 + trial % 6;
            CliffordRep rep = gamma_rep(d);
            Mat B = Mat::Zero(d, d);
            for (int i = 0; i < d; ++i)
                for (int j = i + 1; j < d; ++j) {
                    B(i, j) = uniform(rng, -2, 2);
                    B(j, i) = -B(i, j);
                }
            AntisymCanonical c = antisym_canonical(B);
            REQUIRE((c.R * c.block_form() * c.R.transpose() - B).cwiseAbs().maxCoeff() < 1e-12);
            double sumD = 0.0, sumD2 = 0.0;
            for (double dk : c.Ds) {
                sumD += dk;
                sumD2 += dk * dk;
            }
            CMat F = spin_field_matrix(rep, B);
            REQUIRE((F - F.adjoint()).cwiseAbs().maxCoeff() < 1e-13);
            Eigen::SelfAdjointEigenSolver<CMat> es(F);
            double opnorm = std::max(std::abs(es.eigenvalues()[0]),
                                     std::abs(es.eigenvalues()[rep.N - 1]));
            REQUIRE(std::abs(opnorm - sumD) < 1e-11);
            REQUIRE(sumD <= std::sqrt(double(d / 2)) * std::sqrt(sumD2) + 1e-12);
            CVec psi = random_unit_spinor(rng, rep.N);
            double form = std::abs((psi.adjoint() * (F * psi)).value().real());
            double frob = B.norm() / std::sqrt(2.0);  // sqrt(sum_{j<k} B_jk^2)
            REQUIRE(form <= std::sqrt(double(d / 2)) * frob + 1e-12);
        }
    }
    SECTION("dimension mismatch rejected") {
        REQUIRE_THROWS_AS(spin_field_matrix(gamma_rep(3), Mat::Zero(4, 4)), ValidationError);
    }
}
