#pragma once

#include <chrono>
#include <sstream>

#include "zmlab/identities.hpp"
#include "zmlab/integralops.hpp"
#include "zmlab/norms.hpp"
#include "zmlab/report.hpp"

namespace zm {

namespace detail {

inline std::int64_t ms_since(const std::chrono::steady_clock::time_point& t0) {
    return std::chrono::duration_cast<std::chrono::milliseconds>(
               std::chrono::steady_clock::now() - t0)
        .count();
}

inline std::string fmt_point(const Vec& x) {
    std::ostringstream os;
    os.precision(6);
    os << "[";
    for (int i = 0; i < x.size(); ++i) os << (i ? "," : "") << x[i];
    os << "]";
    return os.str();
}

}  // namespace detail

// ---------------------------------------------------------------------------
// identities suite: every catalog entry at `samples` seeded points, one report
// row per (id, d, eps); the row records the worst point.
// ---------------------------------------------------------------------------

inline std::vector<CheckReport> suite_identities(int d, int samples, std::uint64_t seed,
                                                 double tol_override = 0.0) {
    std::vector<CheckReport> rows;
    const std::vector<double> eps_grid = {1e-3, 0.1, 1.0};
    for (const auto& entry : identity_catalog()) {
        bool applicable = false;
        for (int dd : entry.dims) applicable = applicable || dd == d;
        if (!applicable) continue;
        const int n_pts = entry.inequality ? 4 * samples : samples;
        std::vector<double> eps_values = entry.uses_eps ? eps_grid : std::vector<double>{0.0};
        for (double eps : eps_values) {
            auto t0 = std::chrono::steady_clock::now();
            CheckReport row;
            row.id = entry.id;
            if (entry.uses_eps) {
                std::ostringstream os;
                os << entry.id << "[eps=" << eps << "]";
                row.id = os.str();
            }
            row.d = d;
            row.inputs["seed"] = std::to_string(seed);
            row.inputs["samples"] = std::to_string(n_pts);
            if (entry.uses_eps) row.inputs["eps"] = std::to_string(eps);
            row.tol = tol_override > 0.0 ? tol_override
                                         : (entry.inequality ? kInequalityTol : kEqualityTol);

            std::vector<IdentityCheck> checks(n_pts);
            parallel_for(n_pts, [&](std::int64_t i) {
                Vec x = identity_sample_point(entry.id, d, seed, static_cast<std::uint64_t>(i));
                checks[i] = check_identity(entry.id, d, x, eps,
                                           hash_mix(seed + 7919 * (i + 1)));
            });
            double worst = -1.0;
            for (int i = 0; i < n_pts; ++i) {
                if (checks[i].gap > worst) {
                    worst = checks[i].gap;
                    row.lhs = checks[i].lhs;
                    row.rhs = checks[i].rhs;
                    row.gap = checks[i].gap;
                    row.inputs["worst_x"] = detail::fmt_point(checks[i].x);
                }
            }
            row.pass = row.gap <= row.tol;
            row.runtime_ms = detail::ms_since(t0);
            rows.push_back(std::move(row));
        }
    }
    if (rows.empty()) throw ValidationError("suite_identities: no catalog entry applies to d");
    return rows;
}

// ---------------------------------------------------------------------------
// appendix suite: Clifford-algebra invariants for one dimension
// ---------------------------------------------------------------------------

inline std::vector<CheckReport> suite_appendix(int d, std::uint64_t seed) {
    std::vector<CheckReport> rows;
    auto add = [&rows](const std::string& id, int dd, double gap, double tol,
                       std::chrono::steady_clock::time_point t0,
                       std::map<std::string, std::string> inputs = {}) {
        CheckReport r;
        r.id = id;
        r.d = dd;
        r.inputs = std::move(inputs);
        r.lhs = gap;
        r.rhs = 0.0;
        r.gap = gap;
        r.tol = tol;
        r.pass = gap <= tol;
        r.runtime_ms = detail::ms_since(t0);
        rows.push_back(std::move(r));
    };

    auto t0 = std::chrono::steady_clock::now();
    CliffordRep rep = gamma_rep(d);
    add("GAMMA_ANTICOMM", d, anticommutator_residual(rep), 1e-14, t0);

    if (d % 2 == 1) {
        t0 = std::chrono::steady_clock::now();
        LadderSet ladder = ladder_ops(rep);
        add("LADDER_CAR", d, car_residual(ladder), 1e-14, t0);

        t0 = std::chrono::steady_clock::now();
        Vacuum vac = find_vacuum(rep, ladder);
        double worst = 0.0;
        for (const auto& c : ladder.cs) worst = std::max(worst, (c * vac.phi).norm());
        worst = std::max(worst, std::abs(vac.phi.norm() - 1.0));
        worst = std::max(worst, (vac.rep.gammas[0] * vac.phi - vac.phi).norm());
        add("VACUUM", d, worst, 1e-14, t0);

        t0 = std::chrono::steady_clock::now();
        add("FOCK_GRAM", d, gram_residual(fock_basis(ladder, vac)), 1e-13, t0);

        t0 = std::chrono::steady_clock::now();
        Mat om = omega_matrix(vac.rep, vac).omega;
        add("OMEGA_BLOCK", d, (om - omega_canonical(d)).cwiseAbs().maxCoeff(), 1e-13, t0);

        // |U|^2 = 1 at 100 seeded points
        t0 = std::chrono::steady_clock::now();
        const AppendixAFamily& fam = cache::appendix_a(d);
        Rng rng = sub_rng(seed, "ufield", d);
        double ug = 0.0;
        for (int i = 0; i < 100; ++i) {
            Vec x = random_point_in_ball(rng, d, 5.0);
            VectorJets u = fam.U(x);
            double n2 = 0.0;
            for (const auto& c : u) n2 += c.v * c.v;
            ug = std::max(ug, std::abs(n2 - 1.0));
        }
        add("UFIELD_UNIT", d, ug, 1e-12, t0, {{"samples", "100"}});

        // rotated representation intertwiner, R in SO(d)
        t0 = std::chrono::steady_clock::now();
        Rng rng2 = sub_rng(seed, "rot", d);
        Mat M(d, d);
        for (int i = 0; i < d; ++i)
            for (int j = 0; j < d; ++j) M(i, j) = uniform(rng2, -1.0, 1.0);
        Eigen::HouseholderQR<Mat> qr(M);
        Mat R = qr.householderQ();
        if (R.determinant() < 0) R.col(0) = -R.col(0);
        CliffordRep rotated = rep;
        for (int j = 0; j < d; ++j) {
            CMat gj = CMat::Zero(rep.N, rep.N);
            for (int k = 0; k < d; ++k) gj += R(j, k) * rep.gammas[k];
            rotated.gammas[j] = gj;
        }
        CMat U = intertwiner(rep, rotated);
        double ig = 0.0;
        for (int j = 0; j < d; ++j)
            ig = std::max(ig, (U.adjoint() * rep.gammas[j] * U - rotated.gammas[j])
                                  .cwiseAbs()
                                  .maxCoeff());
        ig = std::max(ig, (U.adjoint() * U - CMat::Identity(rep.N, rep.N)).cwiseAbs().maxCoeff());
        add("INTERTWINER_ROT", d, ig, 1e-12, t0);
    }

    // canonical form + spin-field matrix over seeded antisymmetric B
    t0 = std::chrono::steady_clock::now();
    Rng rng3 = sub_rng(seed, "antisym", d);
    const int trials = 200;
    double recon = 0.0, norm_gap = 0.0, bound_slack = 0.0, frob_gap = 0.0;
    CliffordRep repd = gamma_rep(d);
    for (int trial = 0; trial < trials; ++trial) {
        Mat B = Mat::Zero(d, d);
        for (int i = 0; i < d; ++i)
            for (int j = i + 1; j < d; ++j) {
                B(i, j) = uniform(rng3, -2.0, 2.0);
                B(j, i) = -B(i, j);
            }
        AntisymCanonical can = antisym_canonical(B);
        recon = std::max(recon,
                         (can.R * can.block_form() * can.R.transpose() - B).cwiseAbs().maxCoeff());
        double sumD = 0.0, sumD2 = 0.0;
        for (double dk : can.Ds) {
            sumD += dk;
            sumD2 += dk * dk;
        }
        double frob2 = 0.0;
        for (int i = 0; i < d; ++i)
            for (int j = i + 1; j < d; ++j) frob2 += B(i, j) * B(i, j);
        frob_gap = std::max(frob_gap, std::abs(sumD2 - frob2));
        CMat F = spin_field_matrix(repd, B);
        Eigen::SelfAdjointEigenSolver<CMat> es(F);
        double opnorm = std::max(std::abs(es.eigenvalues()[0]),
                                 std::abs(es.eigenvalues()[es.eigenvalues().size() - 1]));
        norm_gap = std::max(norm_gap, std::abs(opnorm - sumD));
        // Cauchy-Schwarz chain sum D_k <= nu^{1/2} (sum D_k^2)^{1/2}
        bound_slack = std::max(bound_slack, sumD - std::sqrt(double(d / 2)) * std::sqrt(sumD2));
        // |<psi, F psi>| <= nu^{1/2} |psi|^2 |B|
        CVec psi = random_unit_spinor(rng3, repd.N);
        double form = std::abs((psi.adjoint() * (F * psi)).value().real());
        bound_slack =
            std::max(bound_slack, form - std::sqrt(double(d / 2)) * std::sqrt(frob2));
    }
    add("ANTISYM_RECON", d, recon, 1e-12, t0, {{"trials", std::to_string(trials)}});
    add("ANTISYM_FROB", d, frob_gap, 1e-11, t0);
    add("SPINFIELD_NORM", d, norm_gap, 1e-11, t0);
    add("SPINFIELD_BOUND", d, std::max(0.0, bound_slack), 1e-12, t0);

    return rows;
}

// ---------------------------------------------------------------------------
// integrals suite: Biot-Savart and Green-convolution cross-checks plus the
// integration-by-parts identity
// ---------------------------------------------------------------------------

inline std::vector<CheckReport> suite_integrals(std::uint64_t seed) {
    std::vector<CheckReport> rows;
    const LossYauFamily& ly = cache::lossyau();

    auto Bfunc = [&ly](const Vec& y) {
        auto b = ly.curl3(y);
        Vec out(3);
        out << b[0].v, b[1].v, b[2].v;
        return out;
    };
    auto Afunc = [&ly](const Vec& y) {
        VectorJets a = ly.A(y);
        Vec out(3);
        out << a[0].v, a[1].v, a[2].v;
        return out;
    };

    // closed-form radial integral oracle table
    {
        auto t0 = std::chrono::steady_clock::now();
        double worst = 0.0;
        for (const auto& e : green_radial_integrals()) worst = std::max(worst, e.gap);
        CheckReport r;
        r.id = "GREEN_RADIAL_TABLE";
        r.d = 3;
        r.lhs = worst;
        r.gap = worst;
        r.tol = 1e-12;
        r.pass = worst <= r.tol;
        r.runtime_ms = detail::ms_since(t0);
        rows.push_back(r);
    }

    // Biot-Savart vs closed form at 5 seeded points
    {
        auto t0 = std::chrono::steady_clock::now();
        Rng rng = sub_rng(seed, "biot", 0);
        double worst = 0.0;
        std::string worst_at;
        for (int i = 0; i < 5; ++i) {
            Vec x = (i == 0) ? Vec(Vec::Zero(3)) : Vec(random_point_in_ball(rng, 3, 2.0));
            SingularQuadSpec spec;
            spec.target_rel_tol = 1e-4;
            BiotSavartResult bs = biot_savart(Bfunc, x, spec);
            Vec closed = Afunc(x);
            double rel = (bs.value - closed).norm() / std::max(closed.norm(), 1e-12);
            if (rel > worst) {
                worst = rel;
                worst_at = detail::fmt_point(x);
            }
        }
        CheckReport r;
        r.id = "BIOT_SAVART_CLOSED_FORM";
        r.d = 3;
        r.inputs["points"] = "5";
        r.inputs["worst_x"] = worst_at;
        r.lhs = worst;
        r.gap = worst;
        r.tol = 1e-3;
        r.pass = worst <= r.tol;
        r.runtime_ms = detail::ms_since(t0);
        rows.push_back(r);
    }

    // Green-function fixed point psi = Gamma * (sigma.A psi)
    {
        auto t0 = std::chrono::steady_clock::now();
        auto src = [&ly](const Vec& y) {
            SpinorJets psi = ly.psi(y);
            VectorJets a = ly.A(y);
            CVec v(2);
            v << psi[0].v, psi[1].v;
            CMat sa = a[0].v * ly.rep().gammas[0] + a[1].v * ly.rep().gammas[1] +
                      a[2].v * ly.rep().gammas[2];
            return CVec(sa * v);
        };
        double worst = 0.0;
        std::vector<Vec> pts;
        pts.push_back(Vec::Zero(3));
        Vec p1(3);
        p1 << 1.0 / std::sqrt(2.0), 1.0 / std::sqrt(2.0), 0.0;
        pts.push_back(p1);
        Rng rng = sub_rng(seed, "green", 0);
        pts.push_back(random_point_in_ball(rng, 3, 1.5));
        for (const auto& x : pts) {
            SingularQuadSpec spec;
            spec.target_rel_tol = 5e-4;
            GreenConvolveResult gc = dirac_green_convolve(ly.rep(), src, x, spec);
            SpinorJets psi = ly.psi(x);
            CVec pv(2);
            pv << psi[0].v, psi[1].v;
            worst = std::max(worst, (gc.value - pv).norm() / pv.norm());
        }
        CheckReport r;
        r.id = "GREEN_FIXED_POINT";
        r.d = 3;
        r.inputs["points"] = std::to_string(pts.size());
        r.lhs = worst;
        r.gap = worst;
        r.tol = 2e-3;
        r.pass = worst <= r.tol;
        r.runtime_ms = detail::ms_since(t0);
        rows.push_back(r);
    }

    // curl/div audit of the quadrature output
    {
        auto t0 = std::chrono::steady_clock::now();
        SingularQuadSpec spec;
        spec.target_rel_tol = 1e-5;
        spec.angular_order = 32;
        spec.radial_order = 48;
        auto Anum = [&](const Vec& y) { return biot_savart(Bfunc, y, spec).value; };
        Vec x(3);
        x << 0.5, 0.5, 0.5;
        CurlDivAudit audit = curl_div_audit(Anum, Bfunc, x, 5e-3);
        CheckReport r;
        r.id = "CURL_DIV_AUDIT";
        r.d = 3;
        r.inputs["x"] = detail::fmt_point(x);
        r.lhs = std::max(audit.curl_residual, audit.div_abs);
        r.gap = r.lhs;
        r.tol = 5e-3;
        r.pass = r.gap <= r.tol;
        r.runtime_ms = detail::ms_since(t0);
        rows.push_back(r);
    }

    // integration by parts over a box, d = 3
    {
        auto t0 = std::chrono::steady_clock::now();
        BumpSpinor eta;
        eta.radius = 2.0;
        eta.sharpness = 1.0;
        eta.dir = ly.phi0();
        auto psi_src = [&ly](const Vec& y) { return ly.psi(y); };
        auto A_src = [&ly](const Vec& y) { return ly.A(y); };
        BypartsResult bp = integral_byparts_check(psi_src, A_src, ly.rep(), eta, 2.5, 24);
        CheckReport r;
        r.id = "BYPARTS_D3";
        r.d = 3;
        r.inputs["order"] = "24";
        r.lhs = std::abs(bp.lhs);
        r.rhs = std::abs(bp.rhs);
        r.gap = bp.gap;
        r.tol = 1e-6;
        r.pass = r.gap <= r.tol;
        r.runtime_ms = detail::ms_since(t0);
        rows.push_back(r);
    }

    // free case A = 0, psi = eta: both sides equal int |grad eta|^2
    {
        auto t0 = std::chrono::steady_clock::now();
        BumpSpinor eta;
        eta.radius = 2.0;
        eta.sharpness = 1.0;
        eta.dir = ly.phi0();
        auto psi_src = [&eta](const Vec& y) { return eta.jets(y); };
        BypartsResult bp = integral_byparts_check(psi_src, {}, ly.rep(), eta, 2.5, 24);
        CheckReport r;
        r.id = "BYPARTS_FREE";
        r.d = 3;
        r.lhs = std::abs(bp.lhs);
        r.rhs = std::abs(bp.rhs);
        r.gap = bp.gap;
        r.tol = 1e-8;
        r.pass = r.gap <= r.tol;
        r.runtime_ms = detail::ms_since(t0);
        rows.push_back(r);
    }

    // monopole gauge pair: curl(A - A') = 0 off the z-axis
    {
        auto t0 = std::chrono::steady_clock::now();
        const MonopoleFamily& mono = cache::monopole();
        auto Am = [&mono](const Vec& y) {
            VectorJets a = mono.A(y);
            Vec out(3);
            out << a[0].v, a[1].v, a[2].v;
            return out;
        };
        auto Ap = [&mono](const Vec& y) {
            VectorJets a = mono.A_prime(y);
            Vec out(3);
            out << a[0].v, a[1].v, a[2].v;
            return out;
        };
        double worst = 0.0;
        Vec x1(3), x2(3);
        x1 << 1.0, 0.0, 0.0;
        x2 << 0.0, 1.0, 1.0;
        worst = std::max(worst, gauge_difference_check(Am, Ap, x1));
        worst = std::max(worst, gauge_difference_check(Am, Ap, x2));
        CheckReport r;
        r.id = "MONOPOLE_GAUGE_PAIR";
        r.d = 3;
        r.lhs = worst;
        r.gap = worst;
        r.tol = 1e-8;
        r.pass = worst <= r.tol;
        r.runtime_ms = detail::ms_since(t0);
        rows.push_back(r);
    }

    return rows;
}

}  // namespace zm
