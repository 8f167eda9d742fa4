#pragma once

#include <algorithm>
#include <cmath>
#include <vector>

#include <Eigen/Dense>
#include <Eigen/Eigenvalues>

#include "zmlab/common.hpp"

namespace zm {

// ---------------------------------------------------------------------------
// Gamma-matrix representations.
//
// gamma_rep(d) builds a fixed representation of the relations
// g_j g_k + g_k g_j = 2 delta_jk by recursive tensor doubling: start from
// (sigma1, sigma2) in d=2, for even d tensor the previous even step, and for
// odd d append the product of the first d-1 matrices rescaled to a Hermitian
// square root of the identity.  The construction is deterministic, so every
// downstream object (ladder operators, vacuum, omega) is bit-reproducible.
// ---------------------------------------------------------------------------

struct CliffordRep {
    int d = 0;            // spatial dimension
    int nu = 0;           // d = 2 nu + 1 (odd) or d = 2 nu (even)
    int N = 0;            // 2^nu
    std::vector<CMat> gammas;
};

namespace pauli {
inline CMat sigma1() {
    CMat m(2, 2);
    m << 0, 1, 1, 0;
    return m;
}
inline CMat sigma2() {
    CMat m(2, 2);
    m << 0, Complex(0, -1), Complex(0, 1), 0;
    return m;
}
inline CMat sigma3() {
    CMat m(2, 2);
    m << 1, 0, 0, -1;
    return m;
}
}  // namespace pauli

inline CMat kron(const CMat& a, const CMat& b) {
    CMat r(a.rows() * b.rows(), a.cols() * b.cols());
    for (int i = 0; i < a.rows(); ++i)
        for (int j = 0; j < a.cols(); ++j)
            r.block(i * b.rows(), j * b.cols(), b.rows(), b.cols()) = a(i, j) * b;
    return r;
}

inline CliffordRep gamma_rep(int d) {
    if (d < 2) throw InvalidDimensionError("gamma_rep: dimension must be >= 2");
    CliffordRep rep;
    rep.d = d;
    rep.nu = d / 2;
    rep.N = 1 << rep.nu;

    // even ladder: gammas for dimension 2, 4, 6, ...
    std::vector<CMat> g = {pauli::sigma1(), pauli::sigma2()};
    const int even_target = (d % 2 == 0) ? d : d - 1;
    for (int dim = 4; dim <= even_target; dim += 2) {
        const int half = 1 << (dim / 2 - 1);
        std::vector<CMat> next;
        next.reserve(dim);
        CMat eye = CMat::Identity(half, half);
        for (const auto& gj : g) next.push_back(kron(gj, pauli::sigma3()));
        next.push_back(kron(eye, pauli::sigma1()));
        next.push_back(kron(eye, pauli::sigma2()));
        g = std::move(next);
    }

    if (d % 2 == 1) {
        // chirality element of the even block, rescaled so that the result is
        // Hermitian with square I; branch fixed by the principal square root.
        CMat m = CMat::Identity(rep.N, rep.N);
        for (const auto& gj : g) m = m * gj;
        Complex c = (m * m)(0, 0);
        double theta = std::arg(c);
        g.push_back(std::exp(Complex(0, -0.5 * theta)) * m);
    }

    rep.gammas = std::move(g);
    return rep;
}

inline double anticommutator_residual(const CliffordRep& rep) {
    double worst = 0.0;
    const CMat eye = CMat::Identity(rep.N, rep.N);
    for (int j = 0; j < rep.d; ++j) {
        for (int k = j; k < rep.d; ++k) {
            CMat ac = rep.gammas[j] * rep.gammas[k] + rep.gammas[k] * rep.gammas[j];
            if (j == k) ac -= 2.0 * eye;
            worst = std::max(worst, ac.cwiseAbs().maxCoeff());
        }
        worst = std::max(worst, (rep.gammas[j] - rep.gammas[j].adjoint()).cwiseAbs().maxCoeff());
    }
    return worst;
}

// Scalar value of gamma_1 ... gamma_d (a multiple of I for odd d); two odd-d
// representations are unitarily equivalent iff these scalars agree.
inline Complex chirality_scalar(const CliffordRep& rep) {
    CMat m = CMat::Identity(rep.N, rep.N);
    for (const auto& gj : rep.gammas) m = m * gj;
    return m.trace() / static_cast<double>(rep.N);
}

// ---------------------------------------------------------------------------
// Ladder operators (odd d): c_j = (g_{2j} + i g_{2j+1})/2, leaving gamma_1
// aside.  Indices below are 1-based as in the defining formula.
// ---------------------------------------------------------------------------

struct LadderSet {
    std::vector<CMat> cs;
    std::vector<CMat> cdags;
};

inline LadderSet ladder_ops(const CliffordRep& rep) {
    if (rep.d % 2 == 0)
        throw UnsupportedError("ladder_ops: construction singles out gamma_1; odd d only");
    LadderSet l;
    for (int j = 1; j <= rep.nu; ++j) {
        CMat c = 0.5 * (rep.gammas[2 * j - 1] + Complex(0, 1) * rep.gammas[2 * j]);
        l.cs.push_back(c);
        l.cdags.push_back(c.adjoint());
    }
    return l;
}

inline double car_residual(const LadderSet& l) {
    const int nu = static_cast<int>(l.cs.size());
    const int N = static_cast<int>(l.cs[0].rows());
    const CMat eye = CMat::Identity(N, N);
    double worst = 0.0;
    for (int j = 0; j < nu; ++j) {
        worst = std::max(worst, (l.cs[j] * l.cdags[j] + l.cdags[j] * l.cs[j] - eye).cwiseAbs().maxCoeff());
        worst = std::max(worst, (l.cs[j] * l.cs[j]).cwiseAbs().maxCoeff());
        for (int k = 0; k < nu; ++k) {
            if (j == k) continue;
            worst = std::max(worst, (l.cs[j] * l.cs[k] + l.cs[k] * l.cs[j]).cwiseAbs().maxCoeff());
            worst = std::max(worst, (l.cs[j] * l.cdags[k] + l.cdags[k] * l.cs[j]).cwiseAbs().maxCoeff());
        }
    }
    return worst;
}

// ---------------------------------------------------------------------------
// Vacuum: the joint null vector of all c_j, with the convention gamma_1 phi =
// phi.  If the constructed representation has gamma_1 phi = -phi, the sign of
// gamma_1 is flipped in the returned representation (the relations are
// unchanged).  Phase fixed by making the largest-modulus component real
// positive, ties broken by lowest index.
// ---------------------------------------------------------------------------

struct Vacuum {
    CVec phi;
    CliffordRep rep;  // representation with the gamma_1 sign convention applied
    bool gamma1_flipped = false;
};

inline CVec fix_phase(CVec v) {
    int best = 0;
    double mod = -1.0;
    for (int i = 0; i < v.size(); ++i) {
        double m = std::abs(v[i]);
        if (m > mod + 1e-12) {
            mod = m;
            best = i;
        }
    }
    Complex ph = v[best] / std::abs(v[best]);
    return v / ph;
}

inline Vacuum find_vacuum(const CliffordRep& rep, const LadderSet& ladder) {
    const int N = rep.N;
    CMat stacked(N * static_cast<int>(ladder.cs.size()), N);
    for (std::size_t j = 0; j < ladder.cs.size(); ++j)
        stacked.block(static_cast<int>(j) * N, 0, N, N) = ladder.cs[j];
    Eigen::JacobiSVD<CMat> svd(stacked, Eigen::ComputeFullV);
    const auto& sv = svd.singularValues();
    if (sv[N - 1] > 1e-10 || (N >= 2 && sv[N - 2] < 1e-10))
        throw DegenerateRepresentationError("find_vacuum: joint nullspace is not one-dimensional");
    CVec phi = svd.matrixV().col(N - 1);
    phi = fix_phase(phi / phi.norm());

    Vacuum vac;
    vac.rep = rep;
    Complex s = phi.adjoint() * (rep.gammas[0] * phi);
    if (s.real() < 0.0) {
        vac.rep.gammas[0] = -vac.rep.gammas[0];
        vac.gamma1_flipped = true;
    }
    vac.phi = phi;
    return vac;
}

// Fock basis |beta> = cdag_1^{b1} ... cdag_nu^{b_nu} phi, enumerated with
// beta_j = bit j-1 of the basis index.
inline std::vector<CVec> fock_basis(const LadderSet& ladder, const Vacuum& vac) {
    const int nu = static_cast<int>(ladder.cs.size());
    std::vector<CVec> basis;
    basis.reserve(std::size_t(1) << nu);
    for (int bits = 0; bits < (1 << nu); ++bits) {
        CVec v = vac.phi;
        for (int j = nu; j >= 1; --j)
            if (bits & (1 << (j - 1))) v = ladder.cdags[j - 1] * v;
        basis.push_back(v);
    }
    return basis;
}

inline double gram_residual(const std::vector<CVec>& basis) {
    const int n = static_cast<int>(basis.size());
    double worst = 0.0;
    for (int i = 0; i < n; ++i)
        for (int j = 0; j < n; ++j) {
            Complex g = basis[i].adjoint() * basis[j];
            worst = std::max(worst, std::abs(g - (i == j ? 1.0 : 0.0)));
        }
    return worst;
}

// ---------------------------------------------------------------------------
// omega matrix: omega_ab = <0| i g_a g_b |0> for a,b >= 2 and a != b, zero in
// the first row/column and on the diagonal.  Equals
// diag(0, -i sigma2, ..., -i sigma2) as a real matrix.
// ---------------------------------------------------------------------------

struct OmegaMatrix {
    Mat omega;
};

inline OmegaMatrix omega_matrix(const CliffordRep& rep, const Vacuum& vac) {
    if (rep.d % 2 == 0) throw UnsupportedError("omega_matrix: odd d only");
    const int d = rep.d;
    Mat w = Mat::Zero(d, d);
    for (int a = 2; a <= d; ++a) {
        for (int b = 2; b <= d; ++b) {
            if (a == b) continue;
            Complex val = vac.phi.adjoint() *
                          (Complex(0, 1) * rep.gammas[a - 1] * rep.gammas[b - 1] * vac.phi);
            w(a - 1, b - 1) = val.real();
        }
    }
    OmegaMatrix om;
    om.omega = w;
    return om;
}

inline Mat omega_canonical(int d) {
    Mat w = Mat::Zero(d, d);
    for (int j = 1; 2 * j + 1 <= d; ++j) {
        w(2 * j - 1, 2 * j) = -1.0;  // rows/cols 2j, 2j+1 in 1-based labels
        w(2 * j, 2 * j - 1) = 1.0;
    }
    return w;
}

// ---------------------------------------------------------------------------
// Intertwiner.  Both representations are reduced to their Fock structure; the
// matrix elements of every gamma in that basis are universal, so the basis
// change W_A W_B^* conjugates one representation into the other.  For odd d
// the two chirality classes are inequivalent and a mismatch is reported.
// ---------------------------------------------------------------------------

namespace detail {

// Fock column matrix for any rep: for odd d uses the ladder pairs
// (g_2,g_3),... with the gamma_1 convention; for even d pairs (g_1,g_2),...
inline CMat fock_frame(const CliffordRep& rep) {
    LadderSet l;
    if (rep.d % 2 == 1) {
        l = ladder_ops(rep);
    } else {
        for (int j = 0; 2 * j + 1 < rep.d; ++j) {
            CMat c = 0.5 * (rep.gammas[2 * j] + Complex(0, 1) * rep.gammas[2 * j + 1]);
            l.cs.push_back(c);
            l.cdags.push_back(c.adjoint());
        }
    }
    Vacuum vac = find_vacuum(rep, l);
    std::vector<CVec> basis = fock_basis(l, vac);
    CMat W(rep.N, rep.N);
    for (int i = 0; i < rep.N; ++i) W.col(i) = basis[i];
    return W;
}

}  // namespace detail

inline CMat intertwiner(const CliffordRep& repA, const CliffordRep& repB) {
    if (repA.d != repB.d || repA.N != repB.N)
        throw ValidationError("intertwiner: representations must share d and N");
    if (repA.d % 2 == 1) {
        Complex ca = chirality_scalar(repA);
        Complex cb = chirality_scalar(repB);
        if (std::abs(ca - cb) > 1e-8)
            throw NoIntertwinerError(
                "intertwiner: chirality mismatch, the representations are inequivalent");
    }
    CMat WA = detail::fock_frame(repA);
    CMat WB = detail::fock_frame(repB);
    CMat U = WA * WB.adjoint();

    // The gamma_1 convention may have flipped the sign inside fock_frame for
    // either rep; rebuild against the original matrices and check.
    double resid = 0.0;
    for (int j = 0; j < repA.d; ++j)
        resid = std::max(resid,
                         (U.adjoint() * repA.gammas[j] * U - repB.gammas[j]).cwiseAbs().maxCoeff());
    if (resid > 1e-9)
        throw NoIntertwinerError("intertwiner: residual too large, representations inequivalent");
    return U;
}

// ---------------------------------------------------------------------------
// Canonical form of a real antisymmetric matrix: B = R D R^T with
// D = diag(D_1 i sigma2, ..., D_nu i sigma2 [, 0]), D_k >= 0 descending.
// Built from the spectral decomposition of the Hermitian matrix iB.
// ---------------------------------------------------------------------------

struct AntisymCanonical {
    Mat R;
    std::vector<double> Ds;
    Mat block_form() const {
        const int d = static_cast<int>(R.rows());
        Mat D = Mat::Zero(d, d);
        for (std::size_t k = 0; k < Ds.size(); ++k) {
            D(2 * static_cast<int>(k), 2 * static_cast<int>(k) + 1) = Ds[k];
            D(2 * static_cast<int>(k) + 1, 2 * static_cast<int>(k)) = -Ds[k];
        }
        return D;
    }
};

inline AntisymCanonical antisym_canonical(const Mat& B) {
    const int d = static_cast<int>(B.rows());
    if (B.cols() != d || (B + B.transpose()).cwiseAbs().maxCoeff() > 1e-13)
        throw ValidationError("antisym_canonical: input must be real antisymmetric");

    CMat H = Complex(0, 1) * B.cast<Complex>();
    Eigen::SelfAdjointEigenSolver<CMat> es(H);
    const Vec evals = es.eigenvalues();

    // eigenvectors with negative eigenvalue -D carry the pair (Re u, Im u)
    struct Pair {
        double D;
        Vec p, q;
    };
    std::vector<Pair> pairs;
    for (int i = 0; i < d; ++i) {
        if (evals[i] < -1e-13) {
            CVec u = es.eigenvectors().col(i);
            Pair pr;
            pr.D = -evals[i];
            pr.p = std::sqrt(2.0) * u.real();
            pr.q = std::sqrt(2.0) * u.imag();
            // orientation: largest-|entry| component of p made positive
            int best = 0;
            for (int j = 1; j < d; ++j)
                if (std::abs(pr.p[j]) > std::abs(pr.p[best]) + 1e-14) best = j;
            if (pr.p[best] < 0.0) {
                pr.p = -pr.p;
                pr.q = -pr.q;
            }
            pairs.push_back(std::move(pr));
        }
    }
    std::stable_sort(pairs.begin(), pairs.end(),
                     [](const Pair& a, const Pair& b) { return a.D > b.D; });

    AntisymCanonical out;
    Mat R(d, d);
    int col = 0;
    for (const auto& pr : pairs) {
        out.Ds.push_back(pr.D);
        R.col(col++) = pr.p;
        R.col(col++) = pr.q;
    }
    // complete with an orthonormal kernel basis (deterministic Gram-Schmidt
    // over the coordinate directions)
    for (int e = 0; e < d && col < d; ++e) {
        Vec v = Vec::Zero(d);
        v[e] = 1.0;
        for (int c = 0; c < col; ++c) v -= R.col(c).dot(v) * R.col(c);
        if (v.norm() > 1e-8) R.col(col++) = v / v.norm();
    }
    if (col != d) throw DegenerateRepresentationError("antisym_canonical: completion failed");
    out.R = R;
    return out;
}

// F_B = (i/2) sum_{j != k} g_j g_k B_jk; Hermitian with operator norm sum D_k.
inline CMat spin_field_matrix(const CliffordRep& rep, const Mat& B) {
    const int d = rep.d;
    if (B.rows() != d || B.cols() != d)
        throw ValidationError("spin_field_matrix: dimension mismatch");
    if ((B + B.transpose()).cwiseAbs().maxCoeff() > 1e-13)
        throw ValidationError("spin_field_matrix: B must be antisymmetric");
    CMat F = CMat::Zero(rep.N, rep.N);
    for (int j = 0; j < d; ++j)
        for (int k = 0; k < d; ++k)
            if (j != k) F += Complex(0, 0.5) * B(j, k) * (rep.gammas[j] * rep.gammas[k]);
    return F;
}

}  // namespace zm
