#pragma once

// Holomorphic cylindrical coordinates on V_t.  A chart is centered at a
// nonsingular point zhat, uses w_i = (z_i - zhat_i)/||zhat|| over the three
// coordinates that are not eliminated, and solves the defining equation for
// the eliminated coordinate by the quadratic branch continuous at w = 0.
// On B_rho with rho = 1/8 the cone radius satisfies rhat/4 <= r <= 4 rhat.

#include <array>

#include "conifold/jet.hpp"
#include "conifold/point.hpp"

namespace conifold {

using Eigen::Matrix3cd;
using Eigen::Vector3cd;

struct Chart {
    ModelPoint center;
    int eliminated = 3;   // index of the solved-for coordinate
    double rho = 0.125;   // chart radius in w
    double rhat = 0.0;    // r(center)
    double znorm = 0.0;   // ||zhat||
    double C0 = 1e3;      // euclidean-comparison constant recorded for the chart

    std::array<int, 3> free;  // the three non-eliminated ambient indices

    // embedding w -> z(w) as jets at base offset w0 (w0 in B_rho); the jet
    // variables are the displacement from w0 and its formal conjugate
    template <int N>
    Vec4J<N> embed(const Vector3cd& w0 = Vector3cd::Zero()) const {
        Vec4J<N> z;
        Vec3J<N> w;
        for (int a = 0; a < 3; ++a) w(a) = Jet<N>::variable(a, w0(a));
        Jet<N> sum_sq(cd(0));
        for (int a = 0; a < 3; ++a) {
            z(free[a]) = cd(center.z(free[a])) + znorm * w(a);
            sum_sq += z(free[a]) * z(free[a]);
        }
        // z_e = zhat_e sqrt(1 + (t - sum - zhat_e^2)/zhat_e^2), branch at w=0
        cd ze = center.z(eliminated);
        Jet<N> arg = (Jet<N>(center.t) - sum_sq - Jet<N>(ze * ze)) * (cd(1) / (ze * ze)) + cd(1);
        z(eliminated) = cd(ze) * sqrt_jet(arg);
        return z;
    }

    // conjugate embedding: zbar_i(w, wbar) with jet variables shared with embed()
    template <int N>
    Vec4J<N> embed_conj(const Vector3cd& w0 = Vector3cd::Zero()) const {
        Vec4J<N> z = embed<N>(w0);
        Vec4J<N> zb;
        for (int i = 0; i < 4; ++i) zb(i) = conj_jet(z(i));
        return zb;
    }

    Vector4cd embed_point(const Vector3cd& w) const;
    Eigen::Matrix<cd, 4, 3> frame(const Vector3cd& w) const;  // columns d z / d w_a
    Vector3cd coords(const Vector4cd& q) const;               // w(q), free coordinates only

    double r_at(const Vector3cd& w) const { return std::cbrt(embed_point(w).squaredNorm()); }
};

// Chart factory following the construction above; the eliminated coordinate is
// always the largest-modulus one (ties by lowest index).
Chart make_cyl_chart(const ModelPoint& p);

// A symmetric real 2-tensor in a chart frame, stored by its complexified
// blocks: T = sum P_ab dw^a dw^b + Q_{a bbar} dw^a dwbar^b + conjugates.
// Reality fixes the conjugate blocks, so (P, Q) with Q Hermitian determines T.
struct Sym2Tensor {
    Matrix3cd P = Matrix3cd::Zero();  // (2,0) block, symmetric
    Matrix3cd Q = Matrix3cd::Zero();  // mixed block, Q(a,b) = coefficient of dw^a (x) dwbar^b

    // evaluate on real tangent vectors given by their holomorphic parts
    double eval(const Vector3cd& uh, const Vector3cd& vh) const {
        cd s(0);
        for (int a = 0; a < 3; ++a)
            for (int b = 0; b < 3; ++b)
                s += P(a, b) * uh(a) * vh(b) + Q(a, b) * uh(a) * std::conj(vh(b));
        return 2.0 * s.real();
    }
};

// (1,1) projection (A + J A J)/2 of a symmetric 2-tensor: kills the (2,0) and
// (0,2) blocks and returns the Hermitian matrix K with K(b,a) = Q(a,b), i.e.
// the metric-convention matrix K_{bbar a}.
Matrix3cd project_11(const Sym2Tensor& A);

// inverse embedding for tests: rebuild the block tensor of a Hermitian form
inline Sym2Tensor to_sym2(const Matrix3cd& K) {
    Sym2Tensor T;
    for (int a = 0; a < 3; ++a)
        for (int b = 0; b < 3; ++b) T.Q(a, b) = K(b, a);
    return T;
}

// real-frame norm of a symmetric 2-tensor against a Hermitian metric G: embed
// both as 6x6 real bilinear forms, whiten by G, take the Frobenius norm
double real_tensor_norm(const Sym2Tensor& T, const Matrix3cd& G);

}  // namespace conifold
