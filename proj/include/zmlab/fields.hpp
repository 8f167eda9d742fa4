#pragma once

#include <array>
#include <cmath>
#include <memory>
#include <string>
#include <vector>

#include "zmlab/clifford.hpp"
#include "zmlab/common.hpp"
#include "zmlab/jet.hpp"

namespace zm {

// antisymmetric field-strength tensor B_jk = d_j A_k - d_k A_j, as jets
using TensorJets = std::vector<std::vector<RJet>>;

inline RJet lambda_of(const VectorJets& xs) {
    return inverse(radius2_jet(xs) + 1.0);
}

// (1 + i gamma.x) (1+|x|^2)^{-power} Phi0
inline SpinorJets conformal_spinor_jets(const CliffordRep& rep, const CVec& phi0,
                                        const Vec& x, double power) {
    const int d = rep.d, N = rep.N;
    VectorJets xs = coordinate_jets(x);
    RJet f = pow(radius2_jet(xs) + 1.0, -power);
    SpinorJets psi(N, CJet(d));
    for (int c = 0; c < N; ++c) {
        CJet acc = CJet::constant(phi0[c], d);
        for (int k = 0; k < d; ++k) {
            Complex gphi = (rep.gammas[k].row(c) * phi0).value();
            acc += to_complex(xs[k]) * (Complex(0, 1) * gphi);
        }
        psi[c] = acc * to_complex(f);
    }
    return psi;
}

inline SpinorJets apply_matrix(const CMat& m, const SpinorJets& psi) {
    const int N = static_cast<int>(m.rows());
    SpinorJets out(N, CJet(psi[0].dim()));
    for (int c = 0; c < N; ++c)
        for (int cc = 0; cc < static_cast<int>(psi.size()); ++cc) {
            if (m(c, cc) == Complex(0, 0)) continue;
            out[c] += psi[cc] * m(c, cc);
        }
    return out;
}

// gamma . (-i grad - A) psi, evaluated at the base point
inline std::vector<Complex> dirac_apply(const CliffordRep& rep, const SpinorJets& psi,
                                        const VectorJets& A) {
    const int d = rep.d, N = rep.N;
    if (static_cast<int>(psi.size()) != N || static_cast<int>(A.size()) != d)
        throw ValidationError("dirac_apply: inconsistent dimensions");
    std::vector<Complex> out(N, Complex(0, 0));
    for (int j = 0; j < d; ++j) {
        for (int c = 0; c < N; ++c) {
            Complex comp(0, 0);
            for (int cc = 0; cc < N; ++cc) {
                Complex g = rep.gammas[j](c, cc);
                if (g == Complex(0, 0)) continue;
                comp += g * (Complex(0, -1) * psi[cc].g[j] - A[j].v * psi[cc].v);
            }
            out[c] += comp;
        }
    }
    return out;
}

// -i gamma.grad psi - coeff * lambda * psi
inline std::vector<Complex> dirac_lambda_apply(const CliffordRep& rep, const SpinorJets& psi,
                                               const RJet& lam, double coeff) {
    const int d = rep.d, N = rep.N;
    std::vector<Complex> out(N, Complex(0, 0));
    for (int j = 0; j < d; ++j)
        for (int c = 0; c < N; ++c)
            for (int cc = 0; cc < N; ++cc) {
                Complex g = rep.gammas[j](c, cc);
                if (g != Complex(0, 0)) out[c] += g * Complex(0, -1) * psi[cc].g[j];
            }
    for (int c = 0; c < N; ++c) out[c] -= coeff * lam.v * psi[c].v;
    return out;
}

// ---------------------------------------------------------------------------
// Field families.  Each bundles (psi, A, B, lambda) evaluators returning jets
// with analytic first and second derivatives.
// ---------------------------------------------------------------------------

class FieldFamily {
  public:
    virtual ~FieldFamily() = default;

    const CliffordRep& rep() const { return rep_; }
    int dim() const { return rep_.d; }
    const std::string& name() const { return name_; }

    virtual SpinorJets psi(const Vec& x) const = 0;
    virtual VectorJets A(const Vec& x) const = 0;
    virtual TensorJets B(const Vec& x) const = 0;

    RJet lambda(const Vec& x) const { return lambda_of(coordinate_jets(x)); }

    // curl vector (d = 3 only): b = (B_23, B_31, B_12)
    std::array<RJet, 3> curl3(const Vec& x) const {
        if (dim() != 3) throw UnsupportedError("curl3: d = 3 only");
        TensorJets t = B(x);
        return {t[1][2], t[2][0], t[0][1]};
    }

  protected:
    CliffordRep rep_;
    std::string name_;
};

namespace detail {

// B tensor for A = d/(1+r^2)^2 [ (1-r^2) e_a + 2 x_a x + 2 w x ], w
// antisymmetric with zero row/column a:
//   B_jk = 2 g' (x_j V_k - x_k V_j) + 4 g (delta_ja x_k - delta_ka x_j + w_kj),
// g(s) = d/(1+s)^2 evaluated at s = r^2, V the bracket.
inline TensorJets axial_field_tensor(const VectorJets& xs, const Mat& omega, int axis,
                                     double strength) {
    const int d = static_cast<int>(xs.size());
    RJet u = radius2_jet(xs) + 1.0;
    RJet iu = inverse(u);
    RJet g = strength * (iu * iu);
    RJet gp = (-2.0 * strength) * (iu * iu * iu);

    VectorJets V(d, RJet(d));
    RJet one_minus_r2 = 2.0 - u;  // 1 - r^2
    for (int k = 0; k < d; ++k) {
        RJet vk = 2.0 * (xs[axis] * xs[k]);
        if (k == axis) vk += one_minus_r2;
        for (int m = 0; m < d; ++m)
            if (omega(k, m) != 0.0) vk += (2.0 * omega(k, m)) * xs[m];
        V[k] = vk;
    }

    TensorJets B(d, std::vector<RJet>(d, RJet(d)));
    for (int j = 0; j < d; ++j)
        for (int k = j + 1; k < d; ++k) {
            RJet b = 2.0 * (gp * (xs[j] * V[k] - xs[k] * V[j]));
            RJet lin(d);
            if (j == axis) lin += xs[k];
            if (k == axis) lin -= xs[j];
            b += 4.0 * (g * lin);
            b += (4.0 * omega(k, j)) * g;
            B[j][k] = b;
            B[k][j] = -b;
        }
    return B;
}

inline TensorJets tensor_from_curl3(const std::array<RJet, 3>& b) {
    TensorJets B(3, std::vector<RJet>(3, RJet(3)));
    B[1][2] = b[0];
    B[2][1] = -b[0];
    B[2][0] = b[1];
    B[0][2] = -b[1];
    B[0][1] = b[2];
    B[1][0] = -b[2];
    return B;
}

}  // namespace detail

// ---------------------------------------------------------------------------
// Loss-Yau pair (d = 3):
//   psi = (1 + i sigma.x)(1+|x|^2)^{-3/2} phi0,
//   A   = 3/(1+|x|^2)^2 [ (1-|x|^2) w + 2 (x.w) x + 2 w x x ],
//   B   = 4/(1+|x|^2) A,   w = <phi0, sigma phi0>.
// The rotational term is w x x (= -x x w): that is the sign produced by the
// spin identity and by the omega-matrix computation, and the one for which
// sigma.(-i grad - A) psi vanishes in this representation.
// ---------------------------------------------------------------------------

class LossYauFamily : public FieldFamily {
  public:
    explicit LossYauFamily(CVec phi0 = CVec()) {
        rep_ = gamma_rep(3);
        name_ = "lossyau";
        if (phi0.size() == 0) {
            Vacuum vac = find_vacuum(rep_, ladder_ops(rep_));
            rep_ = vac.rep;
            phi0 = vac.phi;
        }
        if (phi0.size() != 2) throw ValidationError("LossYau: phi0 must be a 2-spinor");
        phi0_ = phi0 / phi0.norm();
        for (int l = 0; l < 3; ++l)
            w_[l] = (phi0_.adjoint() * (rep_.gammas[l] * phi0_)).value().real();
    }

    const CVec& phi0() const { return phi0_; }
    const std::array<double, 3>& w() const { return w_; }

    SpinorJets psi(const Vec& x) const override {
        return conformal_spinor_jets(rep_, phi0_, x, 1.5);
    }

    VectorJets A(const Vec& x) const override { return bracket_jets(x, 3.0, 2); }

    TensorJets B(const Vec& x) const override {
        VectorJets b = bracket_jets(x, 12.0, 3);
        return detail::tensor_from_curl3({b[0], b[1], b[2]});
    }

  private:
    // c/(1+r^2)^p [ (1-r^2) w + 2 (x.w) x + 2 w x x ]
    VectorJets bracket_jets(const Vec& x, double c, int p) const {
        VectorJets xs = coordinate_jets(x);
        RJet u = radius2_jet(xs) + 1.0;
        RJet f = inverse(u);
        for (int i = 1; i < p; ++i) f = f * inverse(u);
        f = c * f;
        RJet one_minus_r2 = 2.0 - u;
        RJet xw(3);
        for (int l = 0; l < 3; ++l) xw += w_[l] * xs[l];
        VectorJets out(3, RJet(3));
        for (int l = 0; l < 3; ++l) {
            const int l1 = (l + 1) % 3, l2 = (l + 2) % 3;
            RJet wxx = w_[l1] * xs[l2] - w_[l2] * xs[l1];  // (w x x)_l
            out[l] = f * (one_minus_r2 * w_[l] + 2.0 * (xw * xs[l]) + 2.0 * wxx);
        }
        return out;
    }

    CVec phi0_;
    std::array<double, 3> w_{};
};

// ---------------------------------------------------------------------------
// General odd-d family built on the vacuum:
//   psi = (1 + i gamma.x)(1+|x|^2)^{-d/2} |0>,
//   U   = [ (1-|x|^2) e_1 + 2 x_1 x + 2 omega x ] / (1+|x|^2),  |U| = 1,
//   A   = d U / (1+|x|^2).
// ---------------------------------------------------------------------------

class AppendixAFamily : public FieldFamily {
  public:
    explicit AppendixAFamily(int d) {
        if (d % 2 == 0 || d < 3 || d > 9)
            throw UnsupportedError("AppendixA: construction works in odd d, 3 <= d <= 9");
        CliffordRep raw = gamma_rep(d);
        Vacuum vac = find_vacuum(raw, ladder_ops(raw));
        rep_ = vac.rep;
        phi_ = vac.phi;
        omega_ = omega_matrix(rep_, vac).omega;
        name_ = "appendix_a";
    }

    const CVec& vacuum() const { return phi_; }
    const Mat& omega() const { return omega_; }

    SpinorJets psi(const Vec& x) const override {
        return conformal_spinor_jets(rep_, phi_, x, dim() / 2.0);
    }

    VectorJets U(const Vec& x) const {
        const int d = dim();
        VectorJets xs = coordinate_jets(x);
        RJet iu = inverse(radius2_jet(xs) + 1.0);
        RJet one_minus_r2 = 2.0 - (radius2_jet(xs) + 1.0);
        VectorJets out(d, RJet(d));
        for (int k = 0; k < d; ++k) {
            RJet vk = 2.0 * (xs[0] * xs[k]);
            if (k == 0) vk += one_minus_r2;
            for (int m = 0; m < d; ++m)
                if (omega_(k, m) != 0.0) vk += (2.0 * omega_(k, m)) * xs[m];
            out[k] = iu * vk;
        }
        return out;
    }

    VectorJets A(const Vec& x) const override {
        const int d = dim();
        VectorJets u = U(x);
        RJet f = static_cast<double>(d) * inverse(radius2_jet(coordinate_jets(x)) + 1.0);
        for (int k = 0; k < d; ++k) u[k] = f * u[k];
        return u;
    }

    TensorJets B(const Vec& x) const override {
        return detail::axial_field_tensor(coordinate_jets(x), omega_, 0,
                                          static_cast<double>(dim()));
    }

  private:
    CVec phi_;
    Mat omega_;
};

// ---------------------------------------------------------------------------
// Dunne-Min family: the Appendix-A family conjugated by the coordinate
// relabeling that moves the distinguished axis 1 to axis d and matches the
// omega blocks to the -J pattern of the published formulas.  The relabeling
// has determinant -1, so the gammas of this family are the correspondingly
// permuted matrices (the opposite chirality class in odd d).
// ---------------------------------------------------------------------------

class DunneMinFamily : public FieldFamily {
  public:
    explicit DunneMinFamily(int d) : base_(d) {
        if (d % 2 == 0) throw UnsupportedError("DunneMin: odd d only");
        name_ = "dunne_min";
        const int nu = d / 2;
        // 1-based target axis of source axis k
        to_.assign(d + 1, 0);
        to_[1] = d;
        for (int j = 1; j <= nu - 1; ++j) {
            to_[2 * j] = 2 * j - 1;
            to_[2 * j + 1] = 2 * j;
        }
        to_[2 * nu] = 2 * nu;
        to_[2 * nu + 1] = 2 * nu - 1;
        from_.assign(d + 1, 0);
        for (int k = 1; k <= d; ++k) from_[to_[k]] = k;

        rep_ = base_.rep();
        for (int j = 1; j <= d; ++j) rep_.gammas[j - 1] = base_.rep().gammas[from_[j] - 1];
    }

    Mat relabeling() const {
        const int d = dim();
        Mat P = Mat::Zero(d, d);
        for (int k = 1; k <= d; ++k) P(to_[k] - 1, k - 1) = 1.0;
        return P;
    }

    SpinorJets psi(const Vec& y) const override {
        return conformal_spinor_jets(rep_, base_.vacuum(), y, dim() / 2.0);
    }

    VectorJets A(const Vec& y) const override {
        VectorJets ax = base_.A(pullback(y));
        VectorJets out(dim(), RJet(dim()));
        for (int j = 1; j <= dim(); ++j) out[j - 1] = pushforward(ax[from_[j] - 1]);
        return out;
    }

    TensorJets B(const Vec& y) const override {
        TensorJets bx = base_.B(pullback(y));
        TensorJets out(dim(), std::vector<RJet>(dim(), RJet(dim())));
        for (int j = 1; j <= dim(); ++j)
            for (int k = 1; k <= dim(); ++k)
                out[j - 1][k - 1] = pushforward(bx[from_[j] - 1][from_[k] - 1]);
        return out;
    }

  private:
    // x = P^T y as a plain point
    Vec pullback(const Vec& y) const {
        Vec x(dim());
        for (int k = 1; k <= dim(); ++k) x[k - 1] = y[to_[k] - 1];
        return x;
    }

    // re-index x-derivatives as y-derivatives: d/dy_i = d/dx_{from(i)}
    RJet pushforward(const RJet& in) const {
        const int d = dim();
        RJet out(d);
        out.v = in.v;
        for (int i = 1; i <= d; ++i) out.g[i - 1] = in.g[from_[i] - 1];
        for (int i = 1; i <= d; ++i)
            for (int k = 1; k <= d; ++k) out.h(i - 1, k - 1) = in.h(from_[i] - 1, from_[k] - 1);
        return out;
    }

    AppendixAFamily base_;
    std::vector<int> to_, from_;
};

// ---------------------------------------------------------------------------
// Monopole pair (d = 3), strength g; zero mode requires g = 1/2:
//   psi = (2 r^3)^{-1/2} ( sqrt(r+z), (x+iy)/sqrt(r+z) ),
//   A   = g (-y, x, 0) / (r (r+z)),   string on { x=y=0, z <= 0 },
//   A'  = -g (-y, x, 0) / (r (r-z)),  string on { x=y=0, z >= 0 },
//   curl A = g x / r^3.
// ---------------------------------------------------------------------------

class MonopoleFamily : public FieldFamily {
  public:
    explicit MonopoleFamily(double g = 0.5) : g_(g) {
        rep_ = gamma_rep(3);
        Vacuum vac = find_vacuum(rep_, ladder_ops(rep_));
        rep_ = vac.rep;
        name_ = "monopole";
    }

    double strength() const { return g_; }

    void check_off_origin(const Vec& x) const {
        if (x.norm() < 1e-12)
            throw DomainError("monopole psi: undefined at the origin x = 0");
    }
    void check_off_string(const Vec& x) const {
        check_off_origin(x);
        if (std::hypot(x[0], x[1]) < 1e-12 && x[2] <= 0.0)
            throw DomainError(
                "monopole: point on the gauge string { x=y=0, z <= 0 } is excluded");
    }
    void check_off_string_prime(const Vec& x) const {
        check_off_origin(x);
        if (std::hypot(x[0], x[1]) < 1e-12 && x[2] >= 0.0)
            throw DomainError(
                "monopole: point on the gauge string { x=y=0, z >= 0 } is excluded");
    }

    SpinorJets psi(const Vec& x) const override {
        check_off_string(x);
        VectorJets xs = coordinate_jets(x);
        RJet r = sqrt(radius2_jet(xs));
        RJet rz = sqrt(r + xs[2]);
        RJet norm = inverse(sqrt(2.0 * (r * (r * r))));
        CJet xy = to_complex(xs[0]) + Complex(0, 1) * to_complex(xs[1]);
        SpinorJets out(2, CJet(3));
        out[0] = to_complex(norm * rz);
        out[1] = xy * to_complex(norm * inverse(rz));
        return out;
    }

    VectorJets A(const Vec& x) const override {
        check_off_string(x);
        VectorJets xs = coordinate_jets(x);
        RJet r = sqrt(radius2_jet(xs));
        RJet f = g_ * inverse(r * (r + xs[2]));
        VectorJets out(3, RJet(3));
        out[0] = f * (-1.0 * xs[1]);
        out[1] = f * xs[0];
        out[2] = RJet(3);
        return out;
    }

    VectorJets A_prime(const Vec& x) const {
        check_off_string_prime(x);
        VectorJets xs = coordinate_jets(x);
        RJet r = sqrt(radius2_jet(xs));
        RJet f = (-g_) * inverse(r * (r - xs[2]));
        VectorJets out(3, RJet(3));
        out[0] = f * (-1.0 * xs[1]);
        out[1] = f * xs[0];
        out[2] = RJet(3);
        return out;
    }

    // curl A = g x / r^3, defined away from the origin
    TensorJets B(const Vec& x) const override {
        check_off_origin(x);
        VectorJets xs = coordinate_jets(x);
        RJet ir3 = pow(radius2_jet(xs), -1.5);
        std::array<RJet, 3> b{g_ * (xs[0] * ir3), g_ * (xs[1] * ir3), g_ * (xs[2] * ir3)};
        return detail::tensor_from_curl3(b);
    }

  private:
    double g_;
};

inline std::unique_ptr<FieldFamily> make_family(const std::string& id, int d) {
    if (id == "lossyau") {
        if (d != 3) throw UnsupportedError("lossyau family is three-dimensional");
        return std::make_unique<LossYauFamily>();
    }
    if (id == "appendixa" || id == "appendix_a") return std::make_unique<AppendixAFamily>(d);
    if (id == "dunnemin" || id == "dunne_min") return std::make_unique<DunneMinFamily>(d);
    if (id == "monopole") {
        if (d != 3) throw UnsupportedError("monopole family is three-dimensional");
        return std::make_unique<MonopoleFamily>();
    }
    throw ValidationError("unknown family id: " + id);
}

// ---------------------------------------------------------------------------
// Finite-difference audit of the jets: max deviation between analytic
// derivatives and second-order central differences of the evaluator values.
// ---------------------------------------------------------------------------

inline double finite_difference_audit(const FieldFamily& family, char which, const Vec& x,
                                      double h) {
    const int d = family.dim();
    auto eval = [&](const Vec& p) -> std::vector<Complex> {
        std::vector<Complex> vals;
        if (which == 'p') {
            for (const auto& j : family.psi(p)) vals.push_back(j.v);
        } else if (which == 'A') {
            for (const auto& j : family.A(p)) vals.push_back(Complex(j.v, 0));
        } else if (which == 'l') {
            vals.push_back(Complex(family.lambda(p).v, 0));
        } else {
            throw ValidationError("finite_difference_audit: which must be p, A or l");
        }
        return vals;
    };

    std::vector<std::vector<Complex>> grads;  // [component][direction]
    std::vector<std::vector<std::vector<Complex>>> hesses;
    if (which == 'p') {
        for (const auto& j : family.psi(x)) {
            std::vector<Complex> g(d);
            std::vector<std::vector<Complex>> hh(d, std::vector<Complex>(d));
            for (int a = 0; a < d; ++a) {
                g[a] = j.g[a];
                for (int b = 0; b < d; ++b) hh[a][b] = j.h(a, b);
            }
            grads.push_back(g);
            hesses.push_back(hh);
        }
    } else if (which == 'A') {
        for (const auto& j : family.A(x)) {
            std::vector<Complex> g(d);
            std::vector<std::vector<Complex>> hh(d, std::vector<Complex>(d));
            for (int a = 0; a < d; ++a) {
                g[a] = Complex(j.g[a], 0);
                for (int b = 0; b < d; ++b) hh[a][b] = Complex(j.h(a, b), 0);
            }
            grads.push_back(g);
            hesses.push_back(hh);
        }
    } else {
        RJet j = family.lambda(x);
        std::vector<Complex> g(d);
        std::vector<std::vector<Complex>> hh(d, std::vector<Complex>(d));
        for (int a = 0; a < d; ++a) {
            g[a] = Complex(j.g[a], 0);
            for (int b = 0; b < d; ++b) hh[a][b] = Complex(j.h(a, b), 0);
        }
        grads.push_back(g);
        hesses.push_back(hh);
    }

    const std::vector<Complex> f0 = eval(x);
    const int nc = static_cast<int>(f0.size());
    double worst = 0.0;

    std::vector<std::vector<Complex>> fp(d), fm(d);
    for (int a = 0; a < d; ++a) {
        Vec xp = x, xm = x;
        xp[a] += h;
        xm[a] -= h;
        fp[a] = eval(xp);
        fm[a] = eval(xm);
    }
    for (int a = 0; a < d; ++a)
        for (int c = 0; c < nc; ++c) {
            Complex fd = (fp[a][c] - fm[a][c]) / (2.0 * h);
            worst = std::max(worst, std::abs(fd - grads[c][a]));
            Complex fdd = (fp[a][c] - 2.0 * f0[c] + fm[a][c]) / (h * h);
            worst = std::max(worst, std::abs(fdd - hesses[c][a][a]));
        }
    for (int a = 0; a < d; ++a)
        for (int b = a + 1; b < d; ++b) {
            Vec xpp = x, xpm = x, xmp = x, xmm = x;
            xpp[a] += h; xpp[b] += h;
            xpm[a] += h; xpm[b] -= h;
            xmp[a] -= h; xmp[b] += h;
            xmm[a] -= h; xmm[b] -= h;
            auto vpp = eval(xpp), vpm = eval(xpm), vmp = eval(xmp), vmm = eval(xmm);
            for (int c = 0; c < nc; ++c) {
                Complex fd = (vpp[c] - vpm[c] - vmp[c] + vmm[c]) / (4.0 * h * h);
                worst = std::max(worst, std::abs(fd - hesses[c][a][b]));
            }
        }
    return worst;
}

}  // namespace zm
