#pragma once

#include <cmath>
#include <functional>
#include <vector>

#include "zmlab/common.hpp"

namespace zm {

// Gauss-Legendre nodes/weights on (-1,1) by Newton iteration on P_n.
struct GaussRule {
    std::vector<double> x;
    std::vector<double> w;
};

inline GaussRule gauss_legendre(int n) {
    GaussRule rule;
    rule.x.resize(n);
    rule.w.resize(n);
    for (int i = 0; i < (n + 1) / 2; ++i) {
        double z = std::cos(pi * (i + 0.75) / (n + 0.5));
        double pp = 0.0;
        for (int it = 0; it < 100; ++it) {
            double p0 = 1.0, p1 = 0.0;
            for (int j = 0; j < n; ++j) {
                double p2 = p1;
                p1 = p0;
                p0 = ((2.0 * j + 1.0) * z * p1 - j * p2) / (j + 1.0);
            }
            pp = n * (z * p0 - p1) / (z * z - 1.0);
            double dz = p0 / pp;
            z -= dz;
            if (std::abs(dz) < 1e-16) break;
        }
        rule.x[i] = -z;
        rule.x[n - 1 - i] = z;
        rule.w[i] = 2.0 / ((1.0 - z * z) * pp * pp);
        rule.w[n - 1 - i] = rule.w[i];
    }
    return rule;
}

namespace detail {

inline const GaussRule& gl15() {
    static const GaussRule r = gauss_legendre(15);
    return r;
}

inline double gl_panel(const std::function<double(double)>& f, double a, double b) {
    const GaussRule& r = gl15();
    const double mid = 0.5 * (a + b), half = 0.5 * (b - a);
    double s = 0.0;
    for (std::size_t i = 0; i < r.x.size(); ++i) s += r.w[i] * f(mid + half * r.x[i]);
    return s * half;
}

inline double adapt(const std::function<double(double)>& f, double a, double b,
                    double whole, double tol, int depth) {
    const double m = 0.5 * (a + b);
    const double left = gl_panel(f, a, m);
    const double right = gl_panel(f, m, b);
    const double err = std::abs(left + right - whole);
    if (err < tol || depth >= 48) return left + right;
    return adapt(f, a, m, left, 0.5 * tol, depth + 1) +
           adapt(f, m, b, right, 0.5 * tol, depth + 1);
}

}  // namespace detail

// Adaptive integration on a finite interval; tol is treated as absolute on
// the scale of the integral (callers pass rel_tol * scale estimates).
inline double integrate(const std::function<double(double)>& f, double a, double b,
                        double rel_tol = 1e-12) {
    // first pass over a few panels to get a scale
    const int n0 = 8;
    double coarse = 0.0;
    std::vector<double> panel(n0);
    for (int i = 0; i < n0; ++i) {
        double pa = a + (b - a) * i / n0;
        double pb = a + (b - a) * (i + 1) / n0;
        panel[i] = detail::gl_panel(f, pa, pb);
        coarse += std::abs(panel[i]);
    }
    double tol = rel_tol * std::max(coarse, 1e-300);
    double total = 0.0;
    for (int i = 0; i < n0; ++i) {
        double pa = a + (b - a) * i / n0;
        double pb = a + (b - a) * (i + 1) / n0;
        total += detail::adapt(f, pa, pb, panel[i], tol / n0, 0);
    }
    return total;
}

// integral over (0, infinity) via r = tan(theta)
inline double integrate_halfline(const std::function<double(double)>& f,
                                 double rel_tol = 1e-12) {
    auto g = [&f](double th) {
        double c = std::cos(th);
        double r = std::tan(th);
        return f(r) / (c * c);
    };
    return integrate(g, 0.0, 0.5 * pi * (1.0 - 1e-14), rel_tol);
}

// Iterate a tensor-product Gauss-Legendre rule over the box [-L,L]^d.
// visit(point, weight) is called once per node, in a fixed order.
inline void tensor_gauss_box(int d, double L, int order,
                             const std::function<void(const Vec&, double)>& visit) {
    GaussRule r = gauss_legendre(order);
    std::vector<int> idx(d, 0);
    Vec x(d);
    while (true) {
        double w = 1.0;
        for (int k = 0; k < d; ++k) {
            x[k] = L * r.x[idx[k]];
            w *= L * r.w[idx[k]];
        }
        visit(x, w);
        int k = 0;
        while (k < d && ++idx[k] == order) idx[k++] = 0;
        if (k == d) break;
    }
}

}  // namespace zm
