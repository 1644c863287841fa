#pragma once

// Chern connection and curvature, Ricci form, torsion, the
// Hermitian-Yang-Mills and anomaly residuals, and the pointwise
// Uhlenbeck-Yau inequality.  Conventions:
//   (F_H)_{j kbar} = -d_kbar (H^{-1} d_j H),   A_j = H^{-1} d_j H,
//   (i Lambda_omega F)^p_q = g^{j kbar} (F)_{j kbar}^p_q,
//   <A, B>_H = Tr(A B^dagger_H),  T^r_{ij} = (A_g)_i^r_j - (A_g)_j^r_i.

#include "conifold/fields.hpp"
#include "conifold/forms.hpp"

namespace conifold {

using Mat33 = std::array<std::array<Matrix3cd, 3>, 3>;

struct CurvatureData {
    Mat33 F;                       // F[j][k] = F_{j kbar}, endomorphism valued
    std::array<Matrix3cd, 3> A;    // connection matrices at the center
    Matrix3cd H;                   // metric value at the center
    double hermitian_defect = 0;   // sup_j,k |F_{j kbar}^dagger - F_{k jbar}|
};

struct TorsionData {
    std::array<std::array<std::array<cd, 3>, 3>, 3> T{};  // T[r][i][j], antisymmetric in (i,j)
    double norm = 0;                                      // |T|_g
};

// curvature of a Hermitian metric field given by jets of order >= 2
template <int N>
CurvatureData chern_curvature(const Mat3J<N>& Hjet) {
    static_assert(N >= 2, "chern_curvature needs 2-jets of the metric");
    CurvatureData out;
    out.H = value_of(Hjet);
    Eigen::SelfAdjointEigenSolver<Matrix3cd> es(out.H);
    if (es.eigenvalues().minCoeff() <= 0)
        throw SingularMetricError("chern_curvature: metric not positive definite");

    Mat3J<N - 1> Hinv = truncate3<N, N - 1>(inv3(Hjet));
    for (int j = 0; j < 3; ++j) {
        Mat3J<N - 1> dH;
        for (int p = 0; p < 3; ++p)
            for (int q = 0; q < 3; ++q) dH(p, q) = Hjet(p, q).d(j);
        Mat3J<N - 1> Aj = Hinv * dH;
        out.A[j] = value_of(Aj);
        for (int k = 0; k < 3; ++k) {
            Matrix3cd F;
            for (int p = 0; p < 3; ++p)
                for (int q = 0; q < 3; ++q) F(p, q) = -Aj(p, q).d(k + 3).value();
            out.F[j][k] = F;
        }
    }
    Matrix3cd Hi = out.H.inverse();
    double defect = 0;
    for (int j = 0; j < 3; ++j)
        for (int k = 0; k < 3; ++k) {
            Matrix3cd dag = Hi * out.F[j][k].adjoint() * out.H;
            defect = std::max(defect, (dag - out.F[k][j]).norm());
        }
    out.hermitian_defect = defect;
    return out;
}

// Ricci form as -i del dbar log det g (equals Tr F_g)
template <int N>
Matrix3cd ricci_form(const Mat3J<N>& g) {
    static_assert(N >= 2);
    Jet<N> ldet = log_jet(det3(g));
    Matrix3cd R;
    for (int k = 0; k < 3; ++k)
        for (int j = 0; j < 3; ++j) {
            std::array<int, 3> aa{0, 0, 0}, bb{0, 0, 0};
            aa[j] = 1;
            bb[k] = 1;
            R(k, j) = -ldet.deriv(aa, bb);
        }
    return R;
}

struct HymResidual {
    Matrix3cd endo;  // i Lambda_omega F_H
    double norm;     // |.|_{H}
};

template <int N>
HymResidual hym_residual(const Matrix3cd& g, const Mat3J<N>& Hjet) {
    CurvatureData c = chern_curvature(Hjet);
    HymResidual r;
    r.endo = contract(g, c.F);
    r.norm = endo_norm(r.endo, c.H);
    return r;
}

template <int N>
TorsionData torsion(const Mat3J<N>& gjet) {
    static_assert(N >= 1);
    TorsionData out;
    Matrix3cd g = value_of(gjet);
    Matrix3cd gi = g.inverse();
    std::array<Matrix3cd, 3> dg;
    for (int i = 0; i < 3; ++i)
        for (int p = 0; p < 3; ++p)
            for (int q = 0; q < 3; ++q) dg[i](p, q) = gjet(p, q).d(i).value();
    for (int r = 0; r < 3; ++r)
        for (int i = 0; i < 3; ++i)
            for (int j = 0; j < 3; ++j) {
                cd s(0);
                for (int k = 0; k < 3; ++k) s += gi(r, k) * (dg[i](k, j) - dg[j](k, i));
                out.T[r][i][j] = s;
            }
    cd n2(0);
    for (int r = 0; r < 3; ++r)
        for (int i = 0; i < 3; ++i)
            for (int j = 0; j < 3; ++j)
                for (int r2 = 0; r2 < 3; ++r2)
                    for (int i2 = 0; i2 < 3; ++i2)
                        for (int j2 = 0; j2 < 3; ++j2)
                            n2 += out.T[r][i][j] * std::conj(out.T[r2][i2][j2]) * g(r2, r) *
                                  gi(i, i2) * gi(j, j2);
    out.norm = std::sqrt(std::max(0.0, 0.5 * n2.real()));
    return out;
}

// pointwise Uhlenbeck-Yau inequality margin
//   g^{j kbar} < h^{-1} nabla_j h, nabla_k h^sigma >_Hhat
//     - | h^{-sigma/2} nabla h^sigma |^2_{Hhat, g}  >= 0,
// evaluated for arbitrary first-derivative data D_j of h = Hhat^{-1} H.
// Matrix powers use the eigendecomposition in the Hhat inner product
// (Cholesky-whitened); the derivative of h^sigma uses divided differences.
double uy_inequality_margin(const Matrix3cd& Hhat, const Matrix3cd& H, const Matrix3cd& g,
                            double sigma, const std::array<Matrix3cd, 3>& D);

// Tr F ^ F of a curvature array as a (2,2)-form
Form22 tr_f_wedge_f(const Mat33& F);

// anomaly residual |i del dbar omega - (alpha'/4)(Tr Rm ^ Rm - Tr F_H ^ F_H)|_g
// where Rm is the Chern curvature of g
template <int N>
double anomaly_residual(const Form22& i_ddbar_omega, const Mat3J<N>& gjet, const Mat3J<N>& Hjet,
                        double alpha_prime) {
    CurvatureData cg = chern_curvature(gjet);
    CurvatureData ch = chern_curvature(Hjet);
    Form22 diff = tr_f_wedge_f(cg.F) - tr_f_wedge_f(ch.F);
    Form22 total = i_ddbar_omega - (alpha_prime / 4.0) * diff;
    return form22_norm(total, cg.H);
}

}  // namespace conifold
