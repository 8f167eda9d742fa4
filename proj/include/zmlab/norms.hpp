#pragma once

#include <cmath>
#include <functional>
#include <string>
#include <vector>

#include "zmlab/fields.hpp"
#include "zmlab/quadrature.hpp"

namespace zm {

// ---------------------------------------------------------------------------
// Constants
// ---------------------------------------------------------------------------

struct Constants {
    // |S^d|, the area of the unit d-sphere in R^{d+1}
    static double sphere_area(int d) {
        return 2.0 * std::pow(pi, 0.5 * (d + 1)) / std::tgamma(0.5 * (d + 1));
    }
    // S_d = d(d-2)/4 |S^d|^{2/d}
    static double sobolev(int d) {
        return 0.25 * d * (d - 2.0) * std::pow(sphere_area(d), 2.0 / d);
    }
    static constexpr double alpha = 1.0 / 137.035999;  // reporting only
};

// ---------------------------------------------------------------------------
// Radial profiles
// ---------------------------------------------------------------------------

struct RadialProfile {
    std::function<double(double)> f;
    bool monotone_nonincreasing = false;
    double decay_exponent = 0.0;  // f ~ r^{-decay_exponent} as r -> inf
};

namespace detail {

inline Vec fixed_direction(int d) {
    Vec dir(d);
    for (int j = 0; j < d; ++j) dir[j] = 1.0 + 0.37 * j;  // all positive: off-string
    return dir / dir.norm();
}

inline void isotropy_audit(const std::function<double(const Vec&)>& f, int d,
                           std::uint64_t seed) {
    Rng rng = make_rng(seed);
    for (double r : {0.31, 1.0, 2.7, 6.2}) {
        double lo = 0.0, hi = 0.0;
        for (int k = 0; k < 32; ++k) {
            Vec dir(d);
            std::normal_distribution<double> nd(0.0, 1.0);
            for (int j = 0; j < d; ++j) dir[j] = nd(rng);
            dir /= dir.norm();
            double v = f(r * dir);
            if (k == 0) { lo = hi = v; }
            lo = std::min(lo, v);
            hi = std::max(hi, v);
        }
        if (hi - lo > 1e-10 * std::max(1.0, std::abs(hi)))
            throw ValidationError("radial profile: isotropy audit failed");
    }
}

inline void monotone_audit(const std::function<double(double)>& f) {
    double prev = f(1e-3);
    for (double lr = -2.9; lr <= 4.0; lr += 0.1) {
        double v = f(std::pow(10.0, lr));
        if (v > prev + 1e-12 * std::max(1.0, std::abs(prev)))
            throw ValidationError("radial profile: monotone flag violated");
        prev = v;
    }
}

}  // namespace detail

inline double field_strength_norm(const FieldFamily& fam, const Vec& x) {
    TensorJets B = fam.B(x);
    double s = 0.0;
    for (int j = 0; j < fam.dim(); ++j)
        for (int k = j + 1; k < fam.dim(); ++k) s += B[j][k].v * B[j][k].v;
    return std::sqrt(s);
}

inline RadialProfile radial_absB(const FieldFamily& fam, std::uint64_t seed = 42) {
    const int d = fam.dim();
    auto point_eval = [&fam](const Vec& x) { return field_strength_norm(fam, x); };
    detail::isotropy_audit(point_eval, d, hash_mix(seed ^ 0xB));
    Vec dir = detail::fixed_direction(d);
    RadialProfile p;
    p.f = [&fam, dir](double r) { return field_strength_norm(fam, r * dir); };
    p.monotone_nonincreasing = true;
    p.decay_exponent = (fam.name() == "monopole") ? 2.0 : 4.0;
    if (p.monotone_nonincreasing) detail::monotone_audit(p.f);
    return p;
}

inline RadialProfile radial_abspsi2(const FieldFamily& fam, std::uint64_t seed = 42) {
    const int d = fam.dim();
    auto point_eval = [&fam](const Vec& x) {
        SpinorJets psi = fam.psi(x);
        double s = 0.0;
        for (const auto& c : psi) s += std::norm(c.v);
        return s;
    };
    detail::isotropy_audit(point_eval, d, hash_mix(seed ^ 0x51));
    Vec dir = detail::fixed_direction(d);
    RadialProfile p;
    p.f = [&fam, dir, point_eval](double r) { return point_eval(r * dir); };
    p.monotone_nonincreasing = true;
    p.decay_exponent = (fam.name() == "monopole") ? 2.0 : 2.0 * (d - 1.0);
    return p;
}

inline RadialProfile radial_lambda() {
    RadialProfile p;
    p.f = [](double r) { return 1.0 / (1.0 + r * r); };
    p.monotone_nonincreasing = true;
    p.decay_exponent = 2.0;
    return p;
}

// ---------------------------------------------------------------------------
// L^p and weak-L^p machinery
// ---------------------------------------------------------------------------

namespace detail {

// numeric power-law slope audits at both ends of (0, inf)
inline void divergence_audit(const RadialProfile& prof, double p, double weight_pow) {
    // tail: integrand f^p r^w must fall off faster than r^{-1}
    if (prof.decay_exponent > 0.0 && p * prof.decay_exponent - weight_pow <= 1.0 + 1e-9)
        throw DivergenceError("radial integral: tail diverges (decay hint)");
    double f1 = prof.f(1e3), f2 = prof.f(1e5);
    if (f1 > 0.0 && f2 > 0.0) {
        double slope = -(std::log(f2) - std::log(f1)) / (std::log(1e5) - std::log(1e3));
        if (p * slope - weight_pow <= 1.0 - 1e-6)
            throw DivergenceError("radial integral: tail diverges (numeric slope)");
    }
    // origin: f^p r^w must blow up slower than r^{-1}
    double g1 = prof.f(1e-6), g2 = prof.f(1e-3);
    if (g1 > 0.0 && g2 > 0.0) {
        double growth = (std::log(g1) - std::log(g2)) / (std::log(1e-3) - std::log(1e-6));
        if (-p * growth + weight_pow <= -1.0 + 1e-6)
            throw DivergenceError("radial integral: origin diverges (numeric slope)");
    }
}

}  // namespace detail

// |S^{d-1}| * Int_0^inf f(r)^p r^weight_pow dr
inline double radial_integral(const RadialProfile& prof, double p, double weight_pow, int d,
                              double rel_tol = 1e-11) {
    detail::divergence_audit(prof, p, weight_pow);
    auto integrand = [&prof, p, weight_pow](double r) {
        double fv = prof.f(r);
        return (fv == 0.0 ? 0.0 : std::pow(fv, p)) * std::pow(r, weight_pow);
    };
    return Constants::sphere_area(d - 1) * integrate_halfline(integrand, rel_tol);
}

inline double lp_norm_radial(const RadialProfile& prof, double p, int d,
                             double rel_tol = 1e-11) {
    return std::pow(radial_integral(prof, p, d - 1.0, d, rel_tol), 1.0 / p);
}

// (4 pi / 3)^{1/p} sup_r r^{3/p} f(r), d = 3, monotone profiles
inline double weak_lp_radial(const RadialProfile& prof, double p) {
    if (!prof.monotone_nonincreasing)
        throw UnsupportedError(
            "weak_lp_radial: only monotone radial profiles (|f|* = f) are supported");
    auto g = [&prof, p](double s) {
        double r = std::exp(s);
        return std::pow(r, 3.0 / p) * prof.f(r);
    };
    const double s_lo = -25.0, s_hi = 25.0;
    const int n = 2001;
    double best = -1.0;
    int best_i = 0;
    for (int i = 0; i < n; ++i) {
        double s = s_lo + (s_hi - s_lo) * i / (n - 1);
        double v = g(s);
        if (v > best) { best = v; best_i = i; }
    }
    // golden-section refinement inside the bracketing interval
    double a = s_lo + (s_hi - s_lo) * std::max(0, best_i - 1) / (n - 1);
    double b = s_lo + (s_hi - s_lo) * std::min(n - 1, best_i + 1) / (n - 1);
    const double gr = 0.5 * (std::sqrt(5.0) - 1.0);
    double c = b - gr * (b - a), e = a + gr * (b - a);
    double fc = g(c), fe = g(e);
    for (int it = 0; it < 200 && (b - a) > 1e-12; ++it) {
        if (fc > fe) {
            b = e; e = c; fe = fc;
            c = b - gr * (b - a); fc = g(c);
        } else {
            a = c; c = e; fc = fe;
            e = a + gr * (b - a); fe = g(e);
        }
    }
    best = std::max({best, fc, fe});
    return std::pow(4.0 * pi / 3.0, 1.0 / p) * best;
}

// sup_r r^{3/p} f(r) alone (the rearrangement-side quantity of the bound)
inline double weak_sup_radial(const RadialProfile& prof, double p) {
    return weak_lp_radial(prof, p) / std::pow(4.0 * pi / 3.0, 1.0 / p);
}

// ---------------------------------------------------------------------------
// Scale-invariant stability quotient (int |B|^2)(int |psi|^2)/(int |psi|^2/|x|)
// ---------------------------------------------------------------------------

inline double zc_quotient(const FieldFamily& fam, double rel_tol = 1e-11) {
    if (fam.dim() != 3) throw UnsupportedError("zc_quotient: d = 3 families only");
    RadialProfile pb = radial_absB(fam);
    RadialProfile ps = radial_abspsi2(fam);
    double ib2 = radial_integral(pb, 2.0, 2.0, 3, rel_tol);
    double ipsi2 = radial_integral(ps, 1.0, 2.0, 3, rel_tol);
    double ipsi2_over_r = radial_integral(ps, 1.0, 1.0, 3, rel_tol);
    return ib2 * ipsi2 / ipsi2_over_r;
}

struct ZcReport {
    double quotient;         // (int|B|^2)(int|psi|^2)/(int|psi|^2/|x|)
    double lower_bound;      // 32 pi / 3
    double zc_lower;         // (32 pi/3) / (8 pi alpha^2)
    double zc_upper;         // quotient / (8 pi alpha^2)
};

inline ZcReport zc_report(const FieldFamily& fam) {
    ZcReport r;
    r.quotient = zc_quotient(fam);
    r.lower_bound = 32.0 * pi / 3.0;
    const double denom = 8.0 * pi * Constants::alpha * Constants::alpha;
    r.zc_lower = r.lower_bound / denom;
    r.zc_upper = r.quotient / denom;
    return r;
}

// ---------------------------------------------------------------------------
// Theorem bound table
// ---------------------------------------------------------------------------

struct BoundReport {
    std::string theorem;
    std::string family;
    int d = 0;
    double lhs = 0.0;
    double bound = 0.0;
    double ratio = 0.0;
    bool equality = false;
};

inline BoundReport bound_table(const std::string& theorem, const FieldFamily* fam, int d) {
    BoundReport r;
    r.theorem = theorem;
    r.family = fam ? fam->name() : "lambda";
    r.d = d;
    if (theorem == "magnetic") {
        if (!fam || fam->dim() != 3)
            throw ValidationError("bound_table: magnetic needs a d=3 family");
        r.lhs = lp_norm_radial(radial_absB(*fam), 1.5, 3);
        r.bound = 2.0 * Constants::sobolev(3);
    } else if (theorem == "genmagnetic") {
        if (!fam) throw ValidationError("bound_table: genmagnetic needs a family");
        const int nu = d / 2;
        r.lhs = lp_norm_radial(radial_absB(*fam), 0.5 * d, d);
        r.bound = (d - 1.0) / (d - 2.0) * Constants::sobolev(d) / std::sqrt(double(nu));
    } else if (theorem == "spinor") {
        if (d != 3) throw ValidationError("bound_table: spinor is the d=3 statement");
        double n = lp_norm_radial(radial_lambda(), 3.0, 3);
        r.lhs = n * n;
        r.bound = Constants::sobolev(3) / 3.0;
    } else if (theorem == "spinorgeneral") {
        double n = lp_norm_radial(radial_lambda(), d, d);
        r.lhs = n * n;
        r.bound = Constants::sobolev(d) / (d * (d - 2.0));
    } else if (theorem == "magneticweak") {
        if (!fam || fam->dim() != 3)
            throw ValidationError("bound_table: magneticweak needs a d=3 family");
        r.lhs = weak_lp_radial(radial_absB(*fam), 1.5);
        r.bound = 0.5 * std::pow(4.0 * pi / 3.0, 2.0 / 3.0);
    } else if (theorem == "improvedz") {
        if (!fam) throw ValidationError("bound_table: improvedz needs a family");
        r.lhs = zc_quotient(*fam);
        r.bound = 32.0 * pi / 3.0;
    } else {
        throw ValidationError("bound_table: unknown theorem id " + theorem);
    }
    r.ratio = r.lhs / r.bound;
    r.equality = std::abs(r.ratio - 1.0) < 1e-6;
    return r;
}

// constant identity behind the conformal lower bound:
// (d/(d-2)) S_d = (d^2/4) |S^d|^{2/d}
inline double hijazi_constant_check(int d) {
    if (d < 3) throw ValidationError("hijazi_constant_check: d >= 3");
    double lhs = d / (d - 2.0) * Constants::sobolev(d);
    double rhs = 0.25 * d * d * std::pow(Constants::sphere_area(d), 2.0 / d);
    return std::abs(lhs - rhs);
}

// ---------------------------------------------------------------------------
// Integration-by-parts identity over a box:
//   int <D eta, D psi> = int [ <gamma.D eta, gamma.D psi>
//                              - sum_{j<k} B_jk <eta, i g_j g_k psi> ],
// D_j = d_j - i A_j, with eta compactly supported inside the box.  In d=3 the
// spin term equals + <eta, sigma.(curl A) psi>.
// ---------------------------------------------------------------------------

struct BumpSpinor {
    double radius = 2.0;
    double sharpness = 1.0;  // eta = exp(-k s/(1-s)), s = r^2/R^2
    CVec dir;                // constant spinor factor

    SpinorJets jets(const Vec& x) const {
        const int d = static_cast<int>(x.size());
        const int N = static_cast<int>(dir.size());
        VectorJets xs = coordinate_jets(x);
        RJet s = radius2_jet(xs) * (1.0 / (radius * radius));
        SpinorJets out(N, CJet(d));
        if (s.v >= 1.0 - 1e-12) return out;
        RJet bump = exp((-sharpness) * (s / (1.0 - s)));
        for (int c = 0; c < N; ++c) out[c] = to_complex(bump) * dir[c];
        return out;
    }
};

struct BypartsResult {
    Complex lhs;
    Complex rhs;
    double gap;
};

inline BypartsResult integral_byparts_check(
    const std::function<SpinorJets(const Vec&)>& psi_src,
    const std::function<VectorJets(const Vec&)>& A_src,  // nullptr-like: pass {}
    const CliffordRep& rep, const BumpSpinor& eta, double L, int order) {
    const int d = rep.d, N = rep.N;
    if (eta.radius >= L)
        throw ValidationError("integral_byparts_check: bump support touches the box boundary");

    // skew products i g_j g_k for j < k
    std::vector<CMat> spin_mats;
    for (int j = 0; j < d; ++j)
        for (int k = j + 1; k < d; ++k)
            spin_mats.push_back(Complex(0, 1) * rep.gammas[j] * rep.gammas[k]);

    GaussRule rule = gauss_legendre(order);
    std::vector<Complex> lhs_slab(order, Complex(0, 0)), rhs_slab(order, Complex(0, 0));

    parallel_for(order, [&](std::int64_t i0) {
        std::vector<int> idx(d, 0);
        Vec x(d);
        Complex lhs_acc(0, 0), rhs_acc(0, 0);
        x[0] = L * rule.x[i0];
        const double w0 = L * rule.w[i0];
        while (true) {
            double w = w0;
            for (int k = 1; k < d; ++k) {
                x[k] = L * rule.x[idx[k]];
                w *= L * rule.w[idx[k]];
            }
            SpinorJets etaJ = eta.jets(x);
            bool inside = false;
            for (const auto& c : etaJ)
                if (std::abs(c.v) != 0.0 || c.g.cwiseAbs().maxCoeff() != 0.0) inside = true;
            if (inside) {
                SpinorJets psiJ = psi_src(x);
                VectorJets AJ;
                if (A_src) AJ = A_src(x);
                auto covd = [&](const SpinorJets& s, int j, int c) -> Complex {
                    Complex v = s[c].g[j];
                    if (!AJ.empty()) v -= Complex(0, 1) * AJ[j].v * s[c].v;
                    return v;
                };
                Complex lhs_pt(0, 0);
                std::vector<Complex> gde(N, Complex(0, 0)), gdp(N, Complex(0, 0));
                for (int j = 0; j < d; ++j) {
                    for (int c = 0; c < N; ++c) {
                        Complex te = covd(etaJ, j, c), tp = covd(psiJ, j, c);
                        lhs_pt += std::conj(te) * tp;
                        for (int cc = 0; cc < N; ++cc) {
                            Complex g = rep.gammas[j](cc, c);
                            if (g != Complex(0, 0)) {
                                gde[cc] += g * te;
                                gdp[cc] += g * tp;
                            }
                        }
                    }
                }
                Complex rhs_pt(0, 0);
                for (int c = 0; c < N; ++c) rhs_pt += std::conj(gde[c]) * gdp[c];
                int m = 0;
                for (int j = 0; j < d; ++j)
                    for (int k = j + 1; k < d; ++k, ++m) {
                        double Bjk = 0.0;
                        if (!AJ.empty()) Bjk = AJ[k].g[j] - AJ[j].g[k];
                        if (Bjk != 0.0) {
                            Complex me(0, 0);
                            for (int c = 0; c < N; ++c)
                                for (int cc = 0; cc < N; ++cc)
                                    me += std::conj(etaJ[c].v) * spin_mats[m](c, cc) * psiJ[cc].v;
                            rhs_pt -= Bjk * me;
                        }
                    }
                lhs_acc += w * lhs_pt;
                rhs_acc += w * rhs_pt;
            }
            int k = 1;
            while (k < d && ++idx[k] == order) idx[k++] = 0;
            if (k == d) break;
        }
        lhs_slab[i0] = lhs_acc;
        rhs_slab[i0] = rhs_acc;
    });

    BypartsResult res;
    res.lhs = Complex(0, 0);
    res.rhs = Complex(0, 0);
    for (int i = 0; i < order; ++i) {
        res.lhs += lhs_slab[i];
        res.rhs += rhs_slab[i];
    }
    res.gap = std::abs(res.lhs - res.rhs);
    return res;
}

// ---------------------------------------------------------------------------
// Closed-form radial integrals backing the derived values, with quadrature
// cross-check.
// ---------------------------------------------------------------------------

struct GreenIntegral {
    std::string name;
    double closed;
    double quadrature;
    double gap;
};

inline std::vector<GreenIntegral> green_radial_integrals() {
    auto entry = [](const std::string& name, double closed,
                    const std::function<double(double)>& f) {
        double q = integrate_halfline(f, 1e-13);
        return GreenIntegral{name, closed, q, std::abs(q - closed)};
    };
    std::vector<GreenIntegral> table;
    table.push_back(entry("int r^2 (1+r^2)^-3", pi / 16.0, [](double r) {
        return r * r / std::pow(1.0 + r * r, 3);
    }));
    table.push_back(entry("int r^2 (1+r^2)^-4", pi / 32.0, [](double r) {
        return r * r / std::pow(1.0 + r * r, 4);
    }));
    table.push_back(entry("int r (1+r^2)^-2", 0.5, [](double r) {
        return r / std::pow(1.0 + r * r, 2);
    }));
    table.push_back(entry("int r^2 (1+r)^-4", 1.0 / 3.0, [](double r) {
        return r * r / std::pow(1.0 + r, 4);
    }));
    table.push_back(entry("int r (1+r)^-4", 1.0 / 6.0, [](double r) {
        return r / std::pow(1.0 + r, 4);
    }));
    return table;
}

}  // namespace zm
