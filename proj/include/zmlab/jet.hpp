#pragma once

#include <cmath>
#include <vector>

#include "zmlab/common.hpp"

namespace zm {

// ---------------------------------------------------------------------------
// Order-2 forward-mode Taylor arithmetic over d real coordinates.
//
// A Jet carries (value, gradient, Hessian) and propagates them exactly (to
// rounding) through ring operations and smooth scalar functions.  Closed-form
// fields evaluated on coordinate jets therefore come with analytic first and
// second derivatives; no finite differences are involved.
// ---------------------------------------------------------------------------

template <class T>
struct Jet {
    using GradT = Eigen::Matrix<T, Eigen::Dynamic, 1, 0, 9, 1>;
    using HessT = Eigen::Matrix<T, Eigen::Dynamic, Eigen::Dynamic, 0, 9, 9>;

    T v{};
    GradT g;
    HessT h;

    Jet() = default;

    explicit Jet(int dim) : v(T(0)) {
        g = GradT::Zero(dim);
        h = HessT::Zero(dim, dim);
    }

    int dim() const { return static_cast<int>(g.size()); }

    static Jet constant(T value, int dim) {
        Jet j(dim);
        j.v = value;
        return j;
    }

    static Jet coordinate(T value, int index, int dim) {
        Jet j(dim);
        j.v = value;
        j.g[index] = T(1);
        return j;
    }

    Jet operator-() const {
        Jet r = *this;
        r.v = -r.v;
        r.g = -r.g;
        r.h = -r.h;
        return r;
    }

    Jet& operator+=(const Jet& o) { v += o.v; g += o.g; h += o.h; return *this; }
    Jet& operator-=(const Jet& o) { v -= o.v; g -= o.g; h -= o.h; return *this; }
};

using RJet = Jet<double>;
using CJet = Jet<Complex>;

template <class T> Jet<T> operator+(Jet<T> a, const Jet<T>& b) { a += b; return a; }
template <class T> Jet<T> operator-(Jet<T> a, const Jet<T>& b) { a -= b; return a; }

template <class T> Jet<T> operator+(Jet<T> a, T s) { a.v += s; return a; }
template <class T> Jet<T> operator+(T s, Jet<T> a) { a.v += s; return a; }
template <class T> Jet<T> operator-(Jet<T> a, T s) { a.v -= s; return a; }
template <class T> Jet<T> operator-(T s, const Jet<T>& a) { return (-a) + s; }

template <class T>
Jet<T> operator*(const Jet<T>& a, const Jet<T>& b) {
    Jet<T> r(a.dim());
    r.v = a.v * b.v;
    r.g = a.v * b.g + b.v * a.g;
    r.h = a.v * b.h + b.v * a.h + a.g * b.g.transpose() + b.g * a.g.transpose();
    return r;
}

template <class T> Jet<T> operator*(Jet<T> a, T s) { a.v *= s; a.g *= s; a.h *= s; return a; }
template <class T> Jet<T> operator*(T s, Jet<T> a) { return a * s; }
template <class T> Jet<T> operator/(Jet<T> a, T s) { return a * (T(1) / s); }

// 1/u
template <class T>
Jet<T> inverse(const Jet<T>& u) {
    Jet<T> r(u.dim());
    T iv = T(1) / u.v;
    r.v = iv;
    T iv2 = iv * iv;
    r.g = -iv2 * u.g;
    r.h = -iv2 * u.h + (T(2) * iv2 * iv) * (u.g * u.g.transpose());
    return r;
}

template <class T>
Jet<T> operator/(const Jet<T>& a, const Jet<T>& b) { return a * inverse(b); }

template <class T> Jet<T> operator/(T s, const Jet<T>& b) { return inverse(b) * s; }

inline RJet sqrt(const RJet& u) {
    RJet r(u.dim());
    double s = std::sqrt(u.v);
    r.v = s;
    double is = 0.5 / s;
    r.g = is * u.g;
    r.h = is * u.h - (0.25 / (s * u.v)) * (u.g * u.g.transpose());
    return r;
}

inline RJet exp(const RJet& u) {
    RJet r(u.dim());
    double e = std::exp(u.v);
    r.v = e;
    r.g = e * u.g;
    r.h = e * (u.h + u.g * u.g.transpose());
    return r;
}

// u^alpha for u > 0
inline RJet pow(const RJet& u, double alpha) {
    RJet r(u.dim());
    double p = std::pow(u.v, alpha);
    r.v = p;
    double c1 = alpha * std::pow(u.v, alpha - 1.0);
    double c2 = alpha * (alpha - 1.0) * std::pow(u.v, alpha - 2.0);
    r.g = c1 * u.g;
    r.h = c1 * u.h + c2 * (u.g * u.g.transpose());
    return r;
}

inline CJet conj(const CJet& a) {
    CJet r(a.dim());
    r.v = std::conj(a.v);
    r.g = a.g.conjugate();
    r.h = a.h.conjugate();
    return r;
}

inline CJet to_complex(const RJet& a) {
    CJet r(a.dim());
    r.v = Complex(a.v, 0.0);
    r.g = a.g.cast<Complex>();
    r.h = a.h.cast<Complex>();
    return r;
}

inline RJet real_part(const CJet& a) {
    RJet r(a.dim());
    r.v = a.v.real();
    r.g = a.g.real();
    r.h = a.h.real();
    return r;
}

inline CJet operator*(const RJet& a, const CJet& b) { return to_complex(a) * b; }
inline CJet operator*(const CJet& a, const RJet& b) { return a * to_complex(b); }
inline CJet operator/(const CJet& a, const RJet& b) { return a * inverse(to_complex(b)); }

// |a|^2 as a real jet
inline RJet abs2(const CJet& a) {
    RJet r(a.dim());
    r.v = std::norm(a.v);
    const Complex cv = std::conj(a.v);
    for (int j = 0; j < a.dim(); ++j) r.g[j] = 2.0 * (cv * a.g[j]).real();
    for (int j = 0; j < a.dim(); ++j)
        for (int k = 0; k < a.dim(); ++k)
            r.h(j, k) = 2.0 * (cv * a.h(j, k) + std::conj(a.g[j]) * a.g[k]).real();
    return r;
}

// ---------------------------------------------------------------------------
// Jet bundles: spinors (complex components) and vector fields (real
// components), plus the coordinate seed.
// ---------------------------------------------------------------------------

using SpinorJets = std::vector<CJet>;
using VectorJets = std::vector<RJet>;

inline VectorJets coordinate_jets(const Vec& x) {
    const int d = static_cast<int>(x.size());
    VectorJets xs;
    xs.reserve(d);
    for (int i = 0; i < d; ++i) xs.push_back(RJet::coordinate(x[i], i, d));
    return xs;
}

inline RJet radius2_jet(const VectorJets& xs) {
    RJet r2(xs[0].dim());
    for (const auto& xi : xs) r2 += xi * xi;
    return r2;
}

// Sum_c |psi_c|^2
inline RJet norm2_jet(const SpinorJets& psi) {
    RJet n(psi[0].dim());
    for (const auto& c : psi) n += abs2(c);
    return n;
}

// <a, b> = sum_c conj(a_c) b_c
inline CJet inner_jet(const SpinorJets& a, const SpinorJets& b) {
    CJet r(a[0].dim());
    for (std::size_t c = 0; c < a.size(); ++c) r += conj(a[c]) * b[c];
    return r;
}

inline std::vector<Complex> values(const SpinorJets& psi) {
    std::vector<Complex> v(psi.size());
    for (std::size_t i = 0; i < psi.size(); ++i) v[i] = psi[i].v;
    return v;
}

inline double spinor_norm(const std::vector<Complex>& v) {
    double s = 0.0;
    for (auto c : v) s += std::norm(c);
    return std::sqrt(s);
}

}  // namespace zm
