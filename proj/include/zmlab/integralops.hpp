#pragma once

#include <cmath>
#include <functional>

#include "zmlab/clifford.hpp"
#include "zmlab/common.hpp"
#include "zmlab/quadrature.hpp"

namespace zm {

// Quadrature plan for the |x-y|^{-2}-singular convolutions: spherical
// coordinates centered at the target cancel the singularity exactly; the
// radial integral is split at r_split and the outer part is tan-substituted
// up to outer_cutoff, with an analytic tail bound from the |y|^{-4} decay
// folded into the error estimate.
struct SingularQuadSpec {
    double r_split = 1.0;
    double outer_cutoff = 50.0;
    int angular_order = 24;  // Gauss order in cos(theta); 2x nodes in phi
    int radial_order = 32;
    double target_rel_tol = 1e-3;
};

namespace detail {

// visit(s, Omega, w) over ds x dOmega, fixed deterministic order
inline void spherical_nodes(const SingularQuadSpec& spec, int angular, int radial,
                            const std::function<void(double, const Vec&, double)>& visit) {
    GaussRule au = gauss_legendre(angular);
    const int nphi = 2 * angular;
    std::vector<Vec> dirs;
    std::vector<double> wdir;
    dirs.reserve(static_cast<std::size_t>(angular) * nphi);
    for (int iu = 0; iu < angular; ++iu) {
        double u = au.x[iu];
        double su = std::sqrt(std::max(0.0, 1.0 - u * u));
        for (int ip = 0; ip < nphi; ++ip) {
            double phi = 2.0 * pi * (ip + 0.5) / nphi;
            Vec d(3);
            d << su * std::cos(phi), su * std::sin(phi), u;
            dirs.push_back(d);
            wdir.push_back(au.w[iu] * (2.0 * pi / nphi));
        }
    }

    GaussRule rr = gauss_legendre(radial);
    // inner [0, r_split] in s
    for (int is = 0; is < radial; ++is) {
        double s = 0.5 * spec.r_split * (rr.x[is] + 1.0);
        double ws = 0.5 * spec.r_split * rr.w[is];
        for (std::size_t k = 0; k < dirs.size(); ++k) visit(s, dirs[k], ws * wdir[k]);
    }
    // outer [r_split, cutoff] via s = tan(theta)
    const double th0 = std::atan(spec.r_split), th1 = std::atan(spec.outer_cutoff);
    for (int is = 0; is < radial; ++is) {
        double th = 0.5 * (th1 - th0) * (rr.x[is] + 1.0) + th0;
        double s = std::tan(th);
        double c = std::cos(th);
        double ws = 0.5 * (th1 - th0) * rr.w[is] / (c * c);
        for (std::size_t k = 0; k < dirs.size(); ++k) visit(s, dirs[k], ws * wdir[k]);
    }
}

}  // namespace detail

struct BiotSavartResult {
    Vec value;
    double error_estimate;
};

// A(x) = -(1/4pi) int (x-y)/|x-y|^3 x B(y) dy
//      = (1/4pi) int_0^inf int_{S^2} Omega x B(x + s Omega) dOmega ds
inline BiotSavartResult biot_savart(const std::function<Vec(const Vec&)>& Bfunc, const Vec& x,
                                    const SingularQuadSpec& spec = {}) {
    auto run = [&](int angular, int radial) {
        Vec acc = Vec::Zero(3);
        detail::spherical_nodes(spec, angular, radial, [&](double s, const Vec& om, double w) {
            Vec b = Bfunc(x + s * om);
            Vec cross(3);
            cross << om[1] * b[2] - om[2] * b[1], om[2] * b[0] - om[0] * b[2],
                om[0] * b[1] - om[1] * b[0];
            acc += w * cross;
        });
        return Vec((1.0 / (4.0 * pi)) * acc);
    };

    Vec coarse = run(spec.angular_order, spec.radial_order);
    Vec fine = run(spec.angular_order + 8, spec.radial_order + 16);
    // tail bound: |B| ~ C s^{-4} beyond the cutoff
    double bmax = 0.0;
    for (double u : {-0.7, 0.0, 0.7}) {
        Vec om(3);
        om << std::sqrt(1.0 - u * u), 0.0, u;
        bmax = std::max(bmax, Bfunc(x + spec.outer_cutoff * om).norm());
    }
    double tail = bmax * spec.outer_cutoff / 3.0;  // int_L^inf C s^-4 ds = C/(3 L^3), C = bmax L^4
    double err = (fine - coarse).norm() + tail;
    double scale = std::max(fine.norm(), 1e-12);
    if (err > spec.target_rel_tol * scale) {
        Vec finer = run(spec.angular_order + 16, spec.radial_order + 32);
        err = (finer - fine).norm() + tail;
        fine = finer;
        if (err > spec.target_rel_tol * scale)
            throw AccuracyError("biot_savart: target tolerance not reached", fine.norm(), err);
    }
    return {fine, err};
}

struct GreenConvolveResult {
    CVec value;
    double error_estimate;
};

// (Gamma * f)(x) with Gamma(z) = (i/4pi) sigma.z / |z|^3:
//   (Gamma * f)(x) = -(i/4pi) int int sigma.Omega f(x + s Omega) dOmega ds
inline GreenConvolveResult dirac_green_convolve(const CliffordRep& rep,
                                                const std::function<CVec(const Vec&)>& f,
                                                const Vec& x,
                                                const SingularQuadSpec& spec = {}) {
    if (rep.d != 3) throw UnsupportedError("dirac_green_convolve: d = 3 kernel");
    auto run = [&](int angular, int radial) {
        CVec acc = CVec::Zero(rep.N);
        detail::spherical_nodes(spec, angular, radial, [&](double s, const Vec& om, double w) {
            CVec fv = f(x + s * om);
            CMat so = om[0] * rep.gammas[0] + om[1] * rep.gammas[1] + om[2] * rep.gammas[2];
            acc += w * (so * fv);
        });
        return CVec(Complex(0, -1.0 / (4.0 * pi)) * acc);
    };
    CVec coarse = run(spec.angular_order, spec.radial_order);
    CVec fine = run(spec.angular_order + 8, spec.radial_order + 16);
    double fmax = 0.0;
    for (double u : {-0.7, 0.0, 0.7}) {
        Vec om(3);
        om << std::sqrt(1.0 - u * u), 0.0, u;
        fmax = std::max(fmax, f(x + spec.outer_cutoff * om).norm());
    }
    double tail = fmax * spec.outer_cutoff / 2.0;  // |f| ~ C s^-3 tail
    double err = (fine - coarse).norm() + tail;
    double scale = std::max(fine.norm(), 1e-12);
    if (err > spec.target_rel_tol * scale) {
        CVec finer = run(spec.angular_order + 16, spec.radial_order + 32);
        err = (finer - fine).norm() + tail;
        fine = finer;
        if (err > spec.target_rel_tol * scale)
            throw AccuracyError("dirac_green_convolve: target tolerance not reached",
                                fine.norm(), err);
    }
    return {fine, err};
}

// central-difference curl and divergence of a numerically defined A
struct CurlDivAudit {
    double curl_residual;  // || curl A - B ||
    double div_abs;        // | div A |
};

inline CurlDivAudit curl_div_audit(const std::function<Vec(const Vec&)>& Afunc,
                                   const std::function<Vec(const Vec&)>& Bfunc, const Vec& x,
                                   double h) {
    if (h < 1e-3 || h > 1e-2)
        throw ValidationError("curl_div_audit: h must lie in [1e-3, 1e-2]");
    Mat dA(3, 3);  // dA(i,j) = d A_j / d x_i
    for (int i = 0; i < 3; ++i) {
        Vec xp = x, xm = x;
        xp[i] += h;
        xm[i] -= h;
        Vec ap = Afunc(xp), am = Afunc(xm);
        for (int j = 0; j < 3; ++j) dA(i, j) = (ap[j] - am[j]) / (2.0 * h);
    }
    Vec curl(3);
    curl << dA(1, 2) - dA(2, 1), dA(2, 0) - dA(0, 2), dA(0, 1) - dA(1, 0);
    CurlDivAudit out;
    out.curl_residual = (curl - Bfunc(x)).norm();
    out.div_abs = std::abs(dA(0, 0) + dA(1, 1) + dA(2, 2));
    return out;
}

// curl(A - A') at a point off the z-axis, fourth-order stencil
inline double gauge_difference_check(const std::function<Vec(const Vec&)>& A,
                                     const std::function<Vec(const Vec&)>& Aprime,
                                     const Vec& x) {
    const double h = 5e-3;
    if (std::hypot(x[0], x[1]) < 8.0 * h)
        throw DomainError("gauge_difference_check: point too close to the z-axis");
    auto D = [&](const Vec& p) { return Vec(A(p) - Aprime(p)); };
    Mat dD(3, 3);
    for (int i = 0; i < 3; ++i) {
        Vec x1 = x, x2 = x, x3 = x, x4 = x;
        x1[i] += 2 * h;
        x2[i] += h;
        x3[i] -= h;
        x4[i] -= 2 * h;
        Vec f1 = D(x1), f2 = D(x2), f3 = D(x3), f4 = D(x4);
        for (int j = 0; j < 3; ++j)
            dD(i, j) = (-f1[j] + 8.0 * f2[j] - 8.0 * f3[j] + f4[j]) / (12.0 * h);
    }
    Vec curl(3);
    curl << dD(1, 2) - dD(2, 1), dD(2, 0) - dD(0, 2), dD(0, 1) - dD(1, 0);
    return curl.norm();
}

}  // namespace zm
