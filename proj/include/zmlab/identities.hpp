#pragma once

#include <cmath>
#include <map>
#include <memory>
#include <mutex>
#include <string>
#include <vector>

#include "zmlab/fields.hpp"

namespace zm {

struct IdentityCheck {
    std::string id;
    int d = 0;
    Vec x;
    double eps = 0.0;
    double lhs = 0.0;
    double rhs = 0.0;
    double gap = 0.0;
    double tol = 0.0;
    bool pass = false;
};

struct CatalogEntry {
    std::string id;
    std::vector<int> dims;
    bool uses_eps = false;
    bool inequality = false;
};

inline const std::vector<CatalogEntry>& identity_catalog() {
    static const std::vector<CatalogEntry> entries = {
        {"ZM_LY", {3}},
        {"ZM_APPA", {3, 5, 7}},
        {"ZM_MONO", {3}},
        {"LAMBDA_EQ", {3, 4, 5, 6}},
        {"SPIN_ID", {3}},
        {"SQUARED", {3}},
        {"SELFDUAL_S", {3}},
        {"SELFDUAL_F", {3}},
        {"EL_S", {3}},
        {"EL_F", {3}},
        {"NONLIN", {3, 4, 5, 6}},
        {"HLS_OPT", {3, 5, 7}},
        {"DIAMAG", {3, 5, 7}, false, true},
        {"DIAMAG_LAMBDA", {3}, false, true},
        {"SQRT_ID", {3}, true},
        {"ROOTGEN_ID", {3, 4, 5, 6}, true},
        {"SPIN_ORTHO", {3}, true},
        {"PI_NORM", {3, 4, 5, 6, 7}},
        {"PI_FIX", {3, 5, 7}},
        {"MONO_SAT", {3}},
        {"MONO_IDS", {3}},
        {"SOB_EQ", {3}},
    };
    return entries;
}

inline constexpr double kEqualityTol = 1e-11;
inline constexpr double kInequalityTol = 1e-13;

// ---------------------------------------------------------------------------
// cached families / representations
// ---------------------------------------------------------------------------

namespace cache {

inline std::mutex& mu() {
    static std::mutex m;
    return m;
}

inline const LossYauFamily& lossyau() {
    static const LossYauFamily f;
    return f;
}

inline const MonopoleFamily& monopole() {
    static const MonopoleFamily f(0.5);
    return f;
}

inline const AppendixAFamily& appendix_a(int d) {
    std::lock_guard<std::mutex> lk(mu());
    static std::map<int, std::unique_ptr<AppendixAFamily>> c;
    auto& p = c[d];
    if (!p) p = std::make_unique<AppendixAFamily>(d);
    return *p;
}

inline const DunneMinFamily& dunne_min(int d) {
    std::lock_guard<std::mutex> lk(mu());
    static std::map<int, std::unique_ptr<DunneMinFamily>> c;
    auto& p = c[d];
    if (!p) p = std::make_unique<DunneMinFamily>(d);
    return *p;
}

inline const CliffordRep& rep(int d) {
    std::lock_guard<std::mutex> lk(mu());
    static std::map<int, std::unique_ptr<CliffordRep>> c;
    auto& p = c[d];
    if (!p) p = std::make_unique<CliffordRep>(gamma_rep(d));
    return *p;
}

}  // namespace cache

// zero-mode family for a given dimension: Loss-Yau in d=3, the vacuum-based
// odd-d family otherwise
inline const FieldFamily& zero_mode_family(int d) {
    if (d == 3) return cache::lossyau();
    return cache::appendix_a(d);
}

namespace detail {

inline std::vector<Complex> spinor_values(const SpinorJets& psi) { return values(psi); }

inline double vec_norm(const std::vector<Complex>& v) { return spinor_norm(v); }

// (d_j - i A_j) psi component values, indexed [j][c]
inline std::vector<std::vector<Complex>> cov_deriv(const SpinorJets& psi, const VectorJets& A) {
    const int d = psi[0].dim();
    const int N = static_cast<int>(psi.size());
    std::vector<std::vector<Complex>> T(d, std::vector<Complex>(N));
    for (int j = 0; j < d; ++j)
        for (int c = 0; c < N; ++c) T[j][c] = psi[c].g[j] - Complex(0, 1) * A[j].v * psi[c].v;
    return T;
}

// eta = -i gamma.grad psi as jets; values and gradients are valid, the
// second-order data of the result is intentionally zeroed (it would need
// third derivatives of psi and no identity reads it).
inline SpinorJets dirac_grad_jets(const CliffordRep& rep, const SpinorJets& psi) {
    const int d = rep.d, N = rep.N;
    SpinorJets eta(N, CJet(d));
    for (int c = 0; c < N; ++c) {
        for (int j = 0; j < d; ++j)
            for (int cc = 0; cc < N; ++cc) {
                Complex g = rep.gammas[j](c, cc);
                if (g == Complex(0, 0)) continue;
                eta[c].v += Complex(0, -1) * g * psi[cc].g[j];
                for (int a = 0; a < d; ++a)
                    eta[c].g[a] += Complex(0, -1) * g * psi[cc].h(j, a);
            }
    }
    return eta;
}

inline std::vector<Complex> sigma_dot(const CliffordRep& rep, const std::array<double, 3>& b,
                                      const std::vector<Complex>& v) {
    std::vector<Complex> out(v.size(), Complex(0, 0));
    for (int l = 0; l < 3; ++l)
        for (int c = 0; c < 2; ++c)
            for (int cc = 0; cc < 2; ++cc) out[c] += b[l] * rep.gammas[l](c, cc) * v[cc];
    return out;
}

inline Vec sample_point(Rng& rng, const std::string& id, int d) {
    // points in |x| <= 5; monopole checks keep a margin from the string
    const bool mono = id.rfind("ZM_MONO", 0) == 0 || id.rfind("MONO", 0) == 0;
    const bool origin_sensitive = mono || id == "SOB_EQ";
    for (int attempt = 0; attempt < 256; ++attempt) {
        Vec x = random_point_in_ball(rng, d, 5.0);
        if (origin_sensitive && x.norm() < 0.3) continue;
        if (mono && std::hypot(x[0], x[1]) < 0.2) continue;
        return x;
    }
    throw Error("sample_point: rejection sampling failed");
}

}  // namespace detail

// ---------------------------------------------------------------------------
// check_identity: evaluate one catalog identity at one point.
// Equalities report gap = |lhs - rhs| (or a residual norm with rhs = 0);
// inequalities report gap = max(0, lhs - rhs).
// ---------------------------------------------------------------------------

inline IdentityCheck check_identity(const std::string& id, int d, const Vec& x, double eps,
                                    std::uint64_t seed) {
    IdentityCheck out;
    out.id = id;
    out.d = d;
    out.x = x;
    out.eps = eps;
    out.tol = kEqualityTol;

    Rng rng = sub_rng(seed, id, static_cast<std::uint64_t>(d));

    auto finish_residual = [&out](double resid) {
        out.lhs = resid;
        out.rhs = 0.0;
        out.gap = resid;
    };
    auto finish_pair = [&out](double lhs, double rhs) {
        out.lhs = lhs;
        out.rhs = rhs;
        out.gap = std::abs(lhs - rhs);
    };
    auto finish_inequality = [&out](double lhs, double rhs) {
        out.lhs = lhs;
        out.rhs = rhs;
        out.gap = std::max(0.0, lhs - rhs);
        out.tol = kInequalityTol;
    };

    if (id == "ZM_LY" || id == "ZM_APPA" || id == "ZM_MONO") {
        const FieldFamily& fam = (id == "ZM_LY")    ? static_cast<const FieldFamily&>(cache::lossyau())
                                 : (id == "ZM_MONO") ? static_cast<const FieldFamily&>(cache::monopole())
                                                     : cache::appendix_a(d);
        finish_residual(detail::vec_norm(dirac_apply(fam.rep(), fam.psi(x), fam.A(x))));
    } else if (id == "LAMBDA_EQ" || id == "NONLIN") {
        const CliffordRep& rep = cache::rep(d);
        CVec phi0 = random_unit_spinor(rng, rep.N);
        SpinorJets psi = conformal_spinor_jets(rep, phi0, x, d / 2.0);
        if (id == "LAMBDA_EQ") {
            RJet lam = lambda_of(coordinate_jets(x));
            finish_residual(detail::vec_norm(dirac_lambda_apply(rep, psi, lam, d)));
        } else {
            RJet n2 = norm2_jet(psi);
            double coeff = d * std::pow(n2.v, 1.0 / (d - 1.0));
            std::vector<Complex> res(rep.N, Complex(0, 0));
            SpinorJets eta = detail::dirac_grad_jets(rep, psi);
            for (int c = 0; c < rep.N; ++c) res[c] = eta[c].v - coeff * psi[c].v;
            finish_residual(detail::vec_norm(res));
        }
    } else if (id == "SPIN_ID") {
        const LossYauFamily& fam = cache::lossyau();
        SpinorJets psi = fam.psi(x);
        std::vector<Complex> v = values(psi);
        double n2 = 0.0;
        for (auto c : v) n2 += std::norm(c);
        std::array<double, 3> u{};
        for (int l = 0; l < 3; ++l) {
            Complex s(0, 0);
            for (int c = 0; c < 2; ++c)
                for (int cc = 0; cc < 2; ++cc) s += std::conj(v[c]) * fam.rep().gammas[l](c, cc) * v[cc];
            u[l] = s.real() / n2;
        }
        std::vector<Complex> res = detail::sigma_dot(fam.rep(), u, v);
        for (int c = 0; c < 2; ++c) res[c] -= v[c];
        finish_residual(detail::vec_norm(res));
    } else if (id == "SQUARED") {
        const LossYauFamily& fam = cache::lossyau();
        SpinorJets psi = fam.psi(x);
        VectorJets A = fam.A(x);
        auto b3 = fam.curl3(x);
        std::array<double, 3> b{b3[0].v, b3[1].v, b3[2].v};
        double divA = 0.0, absA2 = 0.0;
        for (int j = 0; j < 3; ++j) {
            divA += A[j].g[j];
            absA2 += A[j].v * A[j].v;
        }
        std::vector<Complex> v = values(psi);
        std::vector<Complex> res(2, Complex(0, 0));
        for (int c = 0; c < 2; ++c) {
            Complex lap(0, 0), adg(0, 0);
            for (int j = 0; j < 3; ++j) {
                lap += psi[c].h(j, j);
                adg += A[j].v * psi[c].g[j];
            }
            res[c] = -lap + Complex(0, 1) * divA * v[c] + Complex(0, 2) * adg + absA2 * v[c];
        }
        std::vector<Complex> sb = detail::sigma_dot(fam.rep(), b, v);
        for (int c = 0; c < 2; ++c) res[c] -= sb[c];
        finish_residual(detail::vec_norm(res));
    } else if (id == "SELFDUAL_S") {
        const LossYauFamily& fam = cache::lossyau();
        SpinorJets psi = fam.psi(x);
        SpinorJets eta = detail::dirac_grad_jets(fam.rep(), psi);
        double apsi = std::sqrt(norm2_jet(psi).v);
        std::vector<Complex> res(2);
        for (int c = 0; c < 2; ++c) res[c] = eta[c].v - 3.0 * apsi * psi[c].v;
        finish_residual(detail::vec_norm(res));
    } else if (id == "SELFDUAL_F") {
        const LossYauFamily& fam = cache::lossyau();
        VectorJets A = fam.A(x);
        auto b = fam.curl3(x);
        double absA = 0.0;
        for (int j = 0; j < 3; ++j) absA += A[j].v * A[j].v;
        absA = std::sqrt(absA);
        double resid = 0.0;
        for (int l = 0; l < 3; ++l)
            resid = std::hypot(resid, b[l].v - (4.0 / 3.0) * absA * A[l].v);
        finish_residual(resid);
    } else if (id == "EL_S") {
        const LossYauFamily& fam = cache::lossyau();
        SpinorJets psi = fam.psi(x);
        SpinorJets eta = detail::dirac_grad_jets(fam.rep(), psi);
        RJet n2e(3);
        for (const auto& c : eta) n2e += abs2(c);
        RJet scale = inverse(pow(n2e, 0.25));  // |eta|^{-1/2}
        SpinorJets zeta(2, CJet(3));
        for (int c = 0; c < 2; ++c) zeta[c] = eta[c] * to_complex(scale);
        double apsi = std::sqrt(norm2_jet(psi).v);
        const double es = std::pow(3.0, 1.5);
        std::vector<Complex> res(2, Complex(0, 0));
        for (int c = 0; c < 2; ++c) {
            for (int j = 0; j < 3; ++j)
                for (int cc = 0; cc < 2; ++cc) {
                    Complex g = fam.rep().gammas[j](c, cc);
                    if (g != Complex(0, 0)) res[c] += Complex(0, -1) * g * zeta[cc].g[j];
                }
            res[c] -= es * apsi * psi[c].v;
        }
        finish_residual(detail::vec_norm(res));
    } else if (id == "EL_F") {
        const LossYauFamily& fam = cache::lossyau();
        VectorJets A = fam.A(x);
        auto b = fam.curl3(x);
        RJet n2b = b[0] * b[0] + b[1] * b[1] + b[2] * b[2];
        RJet scale = inverse(pow(n2b, 0.25));  // |b|^{-1/2}
        std::array<RJet, 3> C{b[0] * scale, b[1] * scale, b[2] * scale};
        double absA = std::sqrt(A[0].v * A[0].v + A[1].v * A[1].v + A[2].v * A[2].v);
        const double ef = std::pow(4.0 / 3.0, 1.5);
        double resid = 0.0;
        for (int l = 0; l < 3; ++l) {
            const int l1 = (l + 1) % 3, l2 = (l + 2) % 3;
            double curl_l = C[l2].g[l1] - C[l1].g[l2];
            resid = std::hypot(resid, curl_l - ef * absA * A[l].v);
        }
        finish_residual(resid);
    } else if (id == "HLS_OPT") {
        const AppendixAFamily& fam = cache::appendix_a(d);
        const CliffordRep& rep = fam.rep();
        SpinorJets phi = conformal_spinor_jets(rep, fam.vacuum(), x, (d + 2) / 2.0);
        RJet m = pow(norm2_jet(phi), -1.0 / (d + 1.0));
        SpinorJets chi(rep.N, CJet(d));
        for (int c = 0; c < rep.N; ++c) chi[c] = phi[c] * to_complex(m);
        SpinorJets eta = detail::dirac_grad_jets(rep, chi);
        std::vector<Complex> res(rep.N);
        for (int c = 0; c < rep.N; ++c) res[c] = eta[c].v - static_cast<double>(d) * phi[c].v;
        finish_residual(detail::vec_norm(res));
    } else if (id == "DIAMAG") {
        const FieldFamily& fam = zero_mode_family(d);
        SpinorJets psi = fam.psi(x);
        VectorJets A = fam.A(x);
        RJet apsi = sqrt(norm2_jet(psi));
        double lhs = 0.0;
        for (int j = 0; j < d; ++j) lhs += apsi.g[j] * apsi.g[j];
        auto T = detail::cov_deriv(psi, A);
        double rhs = 0.0;
        for (int j = 0; j < d; ++j)
            for (std::size_t c = 0; c < psi.size(); ++c) rhs += std::norm(T[j][c]);
        finish_inequality(lhs, (d - 1.0) / d * rhs);
    } else if (id == "DIAMAG_LAMBDA") {
        const LossYauFamily& fam = cache::lossyau();
        SpinorJets psi = fam.psi(x);
        double lam = fam.lambda(x).v;
        RJet apsi = sqrt(norm2_jet(psi));
        double lhs = 0.0;
        for (int j = 0; j < 3; ++j) lhs += apsi.g[j] * apsi.g[j];
        double rhs = 0.0;
        std::vector<Complex> v = values(psi);
        for (int j = 0; j < 3; ++j) {
            for (int c = 0; c < 2; ++c) {
                Complex sj(0, 0);
                for (int cc = 0; cc < 2; ++cc) sj += fam.rep().gammas[j](c, cc) * v[cc];
                rhs += std::norm(psi[c].g[j] - Complex(0, 1) * lam * sj);
            }
        }
        finish_inequality(lhs, (2.0 / 3.0) * rhs);
    } else if (id == "SQRT_ID") {
        if (eps <= 0.0) throw ValidationError("SQRT_ID needs eps > 0");
        const LossYauFamily& fam = cache::lossyau();
        SpinorJets psi = fam.psi(x);
        RJet n2 = norm2_jet(psi);
        RJet neps2 = n2 + eps * eps;
        RJet q = pow(neps2, 0.25);  // |psi|_eps^{1/2}
        double lhs = 0.0;
        for (int j = 0; j < 3; ++j) lhs += q.g[j] * q.g[j];
        RJet se = sqrt(neps2);  // |psi|_eps
        double term1 = 0.0, grad2 = 0.0;
        for (int c = 0; c < 2; ++c) {
            CJet w = psi[c] / se;
            for (int j = 0; j < 3; ++j) {
                term1 += (std::conj(w.g[j]) * psi[c].g[j]).real();
                grad2 += std::norm(psi[c].g[j]);
            }
        }
        RJet apsi = sqrt(n2);
        double gabs2 = 0.0;
        for (int j = 0; j < 3; ++j) gabs2 += apsi.g[j] * apsi.g[j];
        double rhs = 0.5 * (term1 - grad2 / se.v) + 0.75 * (n2.v / std::pow(se.v, 3)) * gabs2;
        finish_pair(lhs, rhs);
    } else if (id == "ROOTGEN_ID") {
        if (eps <= 0.0) throw ValidationError("ROOTGEN_ID needs eps > 0");
        const CliffordRep& rep = cache::rep(d);
        CVec phi0 = random_unit_spinor(rng, rep.N);
        SpinorJets psi = conformal_spinor_jets(rep, phi0, x, d / 2.0);
        const double e = 2.0 / (d - 1.0);
        RJet n2 = norm2_jet(psi);
        RJet neps2 = n2 + eps * eps;
        RJet scale = pow(neps2, -e / 2.0);  // |psi|_eps^{-2/(d-1)}
        double lhs = 0.0, grad2 = 0.0;
        for (std::size_t c = 0; c < psi.size(); ++c) {
            CJet w = psi[c] * to_complex(scale);
            for (int j = 0; j < d; ++j) {
                lhs += (std::conj(w.g[j]) * psi[c].g[j]).real();
                grad2 += std::norm(psi[c].g[j]);
            }
        }
        RJet apsi = sqrt(n2);
        double gabs2 = 0.0;
        for (int j = 0; j < d; ++j) gabs2 += apsi.g[j] * apsi.g[j];
        double rhs = grad2 * scale.v - e * (n2.v * std::pow(neps2.v, -(1.0 + e / 2.0))) * gabs2;
        finish_pair(lhs, rhs);
    } else if (id == "SPIN_ORTHO") {
        if (eps <= 0.0) throw ValidationError("SPIN_ORTHO needs eps > 0");
        const LossYauFamily& fam = cache::lossyau();
        SpinorJets psi = fam.psi(x);
        RJet ij = inverse(sqrt(norm2_jet(psi) + eps * eps));  // 1/|psi|_eps
        std::vector<Complex> v = values(psi);
        Complex dot(0, 0);
        for (int l = 0; l < 3; ++l) {
            Complex s(0, 0);
            for (int c = 0; c < 2; ++c)
                for (int cc = 0; cc < 2; ++cc)
                    s += std::conj(v[c]) * Complex(0, 1) * fam.rep().gammas[l](c, cc) * v[cc];
            dot += ij.g[l] * s;
        }
        finish_residual(std::abs(dot.real()));
    } else if (id == "PI_NORM") {
        const CliffordRep& rep = cache::rep(d);
        Vec alpha(d);
        for (int j = 0; j < d; ++j) alpha[j] = uniform(rng, -1.0, 1.0);
        CVec v = random_unit_spinor(rng, rep.N) * uniform(rng, 0.5, 2.0);
        CMat gdota = CMat::Zero(rep.N, rep.N);
        for (int j = 0; j < d; ++j) gdota += alpha[j] * rep.gammas[j];
        CVec gav = gdota * v;
        double lhs = 0.0;
        for (int j = 0; j < d; ++j)
            lhs += (alpha[j] * v - (1.0 / d) * (rep.gammas[j] * gav)).squaredNorm();
        double rhs = (d - 1.0) / d * alpha.squaredNorm() * v.squaredNorm();
        finish_pair(lhs, rhs);
    } else if (id == "PI_FIX") {
        const FieldFamily& fam = zero_mode_family(d);
        SpinorJets psi = fam.psi(x);
        VectorJets A = fam.A(x);
        auto T = detail::cov_deriv(psi, A);
        const CliffordRep& rep = fam.rep();
        CVec S = CVec::Zero(rep.N);
        for (int k = 0; k < d; ++k) {
            CVec tk(rep.N);
            for (int c = 0; c < rep.N; ++c) tk[c] = T[k][c];
            S += rep.gammas[k] * tk;
        }
        double resid2 = 0.0;
        for (int j = 0; j < d; ++j) resid2 += ((1.0 / d) * (rep.gammas[j] * S)).squaredNorm();
        finish_residual(std::sqrt(resid2));
    } else if (id == "MONO_SAT") {
        const MonopoleFamily& fam = cache::monopole();
        SpinorJets psi = fam.psi(x);
        auto b = fam.curl3(x);
        RJet root = pow(norm2_jet(psi), 0.25);  // |psi|^{1/2}
        double lhs = 0.0;
        for (int j = 0; j < 3; ++j) lhs += root.g[j] * root.g[j];
        std::vector<Complex> v = values(psi);
        double apsi = std::sqrt(std::norm(v[0]) + std::norm(v[1]));
        double rhs = 0.0;
        for (int l = 0; l < 3; ++l) {
            Complex s(0, 0);
            for (int c = 0; c < 2; ++c)
                for (int cc = 0; cc < 2; ++cc) s += std::conj(v[c]) * fam.rep().gammas[l](c, cc) * v[cc];
            rhs += 0.5 * b[l].v * s.real() / apsi;
        }
        finish_pair(lhs, rhs);
    } else if (id == "MONO_IDS") {
        const MonopoleFamily& fam = cache::monopole();
        SpinorJets psi = fam.psi(x);
        std::vector<Complex> v = values(psi);
        const double r = x.norm();
        // sigma.x psi = r psi
        std::array<double, 3> xv{x[0], x[1], x[2]};
        std::vector<Complex> sx = detail::sigma_dot(fam.rep(), xv, v);
        double g1 = 0.0;
        for (int c = 0; c < 2; ++c) g1 = std::hypot(g1, std::abs(sx[c] - r * v[c]));
        // |psi|^2 = 1/r^2
        double g2 = std::abs(std::norm(v[0]) + std::norm(v[1]) - 1.0 / (r * r));
        // curl A (from the A jets) = g x / r^3
        VectorJets A = fam.A(x);
        double g3 = 0.0;
        for (int l = 0; l < 3; ++l) {
            const int l1 = (l + 1) % 3, l2 = (l + 2) % 3;
            double curl_l = A[l2].g[l1] - A[l1].g[l2];
            g3 = std::max(g3, std::abs(curl_l - fam.strength() * x[l] / std::pow(r, 3)));
        }
        finish_residual(std::max({g1, g2, g3}));
    } else if (id == "SOB_EQ") {
        VectorJets xs = coordinate_jets(x);
        RJet f = pow(radius2_jet(xs), -0.25);  // r^{-1/2}
        double lap = 0.0;
        for (int j = 0; j < 3; ++j) lap += f.h(j, j);
        finish_pair(-lap, 0.25 * std::pow(x.squaredNorm(), -1.25));
    } else {
        throw ValidationError("check_identity: unknown id " + id);
    }

    out.pass = out.gap <= out.tol;
    return out;
}

// Draw a valid sample point for an identity check (rejection keeps monopole
// checks away from the string and origin-based ones away from 0).
inline Vec identity_sample_point(const std::string& id, int d, std::uint64_t seed,
                                 std::uint64_t index) {
    Rng rng = sub_rng(seed, "pt:" + id, index * 1000003ull + static_cast<std::uint64_t>(d));
    return detail::sample_point(rng, id, d);
}

}  // namespace zm
