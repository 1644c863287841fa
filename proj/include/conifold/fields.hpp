#pragma once

// Chart-evaluated tensor fields.  Metrics on V_t are produced as Hermitian
// matrices of jets in holomorphic cylindrical coordinates; metrics defined on
// V_0 are carried to V_t by pulling back through Phi_t^{-1}, which is not
// holomorphic, so pullbacks are tracked as full symmetric 2-tensors with a
// (2,0) block and a mixed block.

#include "conifold/chart.hpp"
#include "conifold/forms.hpp"
#include "conifold/point.hpp"
#include "conifold/potentials.hpp"

namespace conifold {

// ---------------------------------------------------------------- ambient forms

// ambient Hessian form of f(||z||^2) on C^4:
// H(k,j) = d_j d_kbar f = f''(s) zbar_j z_k + f'(s) delta_{jk}, all entries
// jets; fp/fpp are jets of f' and f'' composed with s
template <int N>
Mat4J<N> ambient_hessian_profile(const Vec4J<N>& z, const Vec4J<N>& zbar, const Jet<N>& fp,
                                 const Jet<N>& fpp) {
    Mat4J<N> H;
    for (int k = 0; k < 4; ++k)
        for (int j = 0; j < 4; ++j) {
            H(k, j) = fpp * zbar(j) * z(k);
            if (j == k) H(k, j) += fp;
        }
    return H;
}

// ambient form of the cone metric c_scale * (3/2) i del dbar ||z||^{4/3}
template <int N>
Mat4J<N> ambient_cone_metric(const Vec4J<N>& z, const Vec4J<N>& zbar, double c_scale = 1.0) {
    Jet<N> s(cd(0));
    for (int i = 0; i < 4; ++i) s += z(i) * zbar(i);
    // f(s) = s^{2/3}: f' = (2/3) s^{-1/3}, f'' = -(2/9) s^{-4/3}
    Jet<N> fp = (2.0 / 3.0) * pow_jet(s, -1.0 / 3.0);
    Jet<N> fpp = (-2.0 / 9.0) * pow_jet(s, -4.0 / 3.0);
    Mat4J<N> H = ambient_hessian_profile(z, zbar, fp, fpp);
    for (int k = 0; k < 4; ++k)
        for (int j = 0; j < 4; ++j) H(k, j) = (1.5 * c_scale) * H(k, j);
    return H;
}

// ambient form of the smoothing metric i del dbar f_t(||z||^2)
template <int N>
Mat4J<N> ambient_co_metric(const SmoothingPotential& pot, const Vec4J<N>& z,
                           const Vec4J<N>& zbar, double c_scale = 1.0) {
    static_assert(N <= 2, "f_t jets are available to order 4 only");
    Jet<N> s(cd(0));
    for (int i = 0; i < 4; ++i) s += z(i) * zbar(i);
    double s0 = s.value().real();
    ScalarJet sj = pot.jet(s0, N + 2);
    // univariate jets of f' and f'' composed with s
    std::array<cd, N + 1> gp{}, gpp{};
    double fact = 1;
    for (int k = 0; k <= N; ++k) {
        gp[k] = sj.d[k + 1] / fact;
        gpp[k] = sj.d[k + 2] / fact;
        fact *= (k + 1);
    }
    Jet<N> fp = compose1<N>(gp, s);
    Jet<N> fpp = compose1<N>(gpp, s);
    Mat4J<N> H = ambient_hessian_profile(z, zbar, fp, fpp);
    for (int k = 0; k < 4; ++k)
        for (int j = 0; j < 4; ++j) H(k, j) = c_scale * H(k, j);
    return H;
}

// ---------------------------------------------------------------- pullbacks

// jets of the blocks of a symmetric 2-tensor pulled back through a smooth map
template <int N>
struct PulledTensor {
    Mat3J<N> P;  // dw (x) dw block
    Mat3J<N> Q;  // dw (x) dwbar block; Q(a,b) multiplies dw^a (x) dwbar^b
};

// pull back the Hermitian ambient form H (plus its conjugate, i.e. the real
// symmetric tensor it induces) through the map with component jets y, ybar
template <int N>
PulledTensor<N - 1> pullback_hermitian(const Mat4J<N>& H, const Vec4J<N>& y,
                                       const Vec4J<N>& ybar) {
    static_assert(N >= 1);
    PulledTensor<N - 1> out;
    Mat4J<N - 1> Ht, Hc;
    for (int k = 0; k < 4; ++k)
        for (int j = 0; j < 4; ++j) {
            Ht(k, j) = H(k, j).template truncate<N - 1>();
            Hc(k, j) = conj_jet(Ht(k, j));
        }
    // derivative jets of the map and its conjugate
    std::array<std::array<Jet<N - 1>, 3>, 4> Dy, Ey, Dyb, Eyb;
    for (int j = 0; j < 4; ++j)
        for (int a = 0; a < 3; ++a) {
            Dy[j][a] = y(j).d(a);        // d y^j / d w_a
            Ey[j][a] = y(j).d(a + 3);    // d y^j / d wbar_a
            Dyb[j][a] = ybar(j).d(a);    // d ybar^j / d w_a
            Eyb[j][a] = ybar(j).d(a + 3);
        }
    for (int a = 0; a < 3; ++a)
        for (int b = 0; b < 3; ++b) {
            Jet<N - 1> p(cd(0)), q(cd(0));
            for (int k = 0; k < 4; ++k)
                for (int j = 0; j < 4; ++j) {
                    p += Ht(k, j) * Dy[j][a] * Dyb[k][b] + Hc(k, j) * Dyb[j][a] * Dy[k][b];
                    q += Ht(k, j) * Dy[j][a] * Eyb[k][b] + Hc(k, j) * Dyb[j][a] * Ey[k][b];
                }
            out.P(a, b) = p;
            out.Q(a, b) = q;
        }
    return out;
}

// Hermitian matrix (metric convention, K(b,a) = coefficient of dw^a dwbar^b)
// of the (1,1) part of a pulled-back tensor
template <int N>
Mat3J<N> project_11_jets(const PulledTensor<N>& T) {
    Mat3J<N> K;
    for (int a = 0; a < 3; ++a)
        for (int b = 0; b < 3; ++b) K(b, a) = T.Q(a, b);
    return K;
}

// ---------------------------------------------------------------- chart metrics

// chart components of c * (3/2) i del dbar r^2 on V_0 or V_t (the cone metric
// extends to C^4 minus the origin)
template <int K>
Mat3J<K> cone_metric_chart(const Chart& ch, const Vector3cd& w0, double c_scale = 1.0) {
    auto z = ch.embed<K + 2>(w0);
    Jet<K + 2> s(cd(0));
    for (int i = 0; i < 4; ++i) s += z(i) * conj_jet(z(i));
    Jet<K + 2> r2 = pow_jet(s, 2.0 / 3.0);
    Mat3J<K> g = i_ddbar_jet(r2);
    for (int k = 0; k < 3; ++k)
        for (int j = 0; j < 3; ++j) g(k, j) = (1.5 * c_scale) * g(k, j);
    return g;
}

// chart components of c * i del dbar f_t(||z||^2)
template <int K>
Mat3J<K> co_metric_chart(const SmoothingPotential& pot, const Chart& ch, const Vector3cd& w0,
                         double c_scale = 1.0) {
    auto z = ch.embed<K + 2>(w0);
    Jet<K + 2> s(cd(0));
    for (int i = 0; i < 4; ++i) s += z(i) * conj_jet(z(i));
    Jet<K + 2> f = pot.eval(s);
    Mat3J<K> g = i_ddbar_jet(f);
    if (c_scale != 1.0)
        for (int k = 0; k < 3; ++k)
            for (int j = 0; j < 3; ++j) g(k, j) = c_scale * g(k, j);
    return g;
}

// ---------------------------------------------------------------- H0 model

// synthetic tail parameters: H0 = c g_{co,0} + amplitude r^lambda q (g (P1 - I/3))
struct TailParams {
    double c = 1.0;
    double lambda = 0.5;
    double amplitude = 0.0;
};

// ambient 4x4 form of the model metric H0 on V_0, as jets of (y, ybar)
template <int N>
Mat4J<N> h0_ambient(const Vec4J<N>& y, const Vec4J<N>& ybar, const TailParams& tail) {
    Mat4J<N> G0 = ambient_cone_metric(y, ybar, 1.0);
    Mat4J<N> H;
    for (int k = 0; k < 4; ++k)
        for (int j = 0; j < 4; ++j) H(k, j) = tail.c * G0(k, j);
    if (tail.amplitude == 0.0) return H;

    Jet<N> s(cd(0));
    for (int i = 0; i < 4; ++i) s += y(i) * ybar(i);
    Jet<N> rlam = pow_jet(s, tail.lambda / 3.0);
    // bounded scale-invariant angular factor
    Jet<N> cross = y(0) * ybar(1);
    Jet<N> q = (cross + conj_jet(cross)) * recip(s) * 0.5 + 1.0;

    // P1 = projection onto the radial holomorphic direction xi = (3/2) y
    std::array<Jet<N>, 4> rho;  // rho_j = sum_k conj(xi_k) G0(k,j)
    Jet<N> denom(cd(0));
    for (int j = 0; j < 4; ++j) {
        rho[j] = Jet<N>(cd(0));
        for (int k = 0; k < 4; ++k) rho[j] += conj_jet(y(k) * 1.5) * G0(k, j);
        denom += rho[j] * (y(j) * 1.5);
    }
    Jet<N> inv_den = recip(denom);
    Mat4J<N> S;  // P1 - I/3 as an endomorphism
    for (int i = 0; i < 4; ++i)
        for (int j = 0; j < 4; ++j) {
            S(i, j) = (y(i) * 1.5) * rho[j] * inv_den;
            if (i == j) S(i, j) -= cd(1.0 / 3.0);
        }
    Jet<N> amp = tail.amplitude * rlam * q;
    for (int k = 0; k < 4; ++k)
        for (int j = 0; j < 4; ++j) {
            Jet<N> e(cd(0));
            for (int m = 0; m < 4; ++m) e += G0(k, m) * S(m, j);
            H(k, j) += amp * e;
        }
    return H;
}

// jets of Phi_t^{-1} along a chart embedding of V_t: solves
// y = z - t ybar / (2 ||y||^2) in the jet ring by fixed-point iteration
template <int N>
void phi_inverse_jets(cd t, const Vec4J<N>& z, Vec4J<N>& y, Vec4J<N>& ybar, int max_iter = 600) {
    Eigen::Vector4cd z0;
    for (int i = 0; i < 4; ++i) z0(i) = z(i).value();
    Eigen::Vector4cd y0 = phi_inverse(t, z0);
    for (int i = 0; i < 4; ++i) y(i) = Jet<N>(y0(i));
    for (int it = 0; it < max_iter; ++it) {
        for (int i = 0; i < 4; ++i) ybar(i) = conj_jet(y(i));
        Jet<N> n2(cd(0));
        for (int i = 0; i < 4; ++i) n2 += y(i) * ybar(i);
        Jet<N> fac = Jet<N>(t * 0.5) * recip(n2);
        double delta = 0;
        for (int i = 0; i < 4; ++i) {
            Jet<N> next = z(i) - fac * ybar(i);
            Jet<N> diff = next - y(i);
            for (int m = 0; m < Jet<N>::Count; ++m) delta = std::max(delta, std::abs(diff.raw(m)));
            y(i) = next;
        }
        if (delta < 1e-15 * std::max(1.0, std::sqrt(y0.squaredNorm()))) break;
        if (it == max_iter - 1)
            throw EvaluationError("phi_inverse_jets: fixed-point iteration did not converge");
    }
    for (int i = 0; i < 4; ++i) ybar(i) = conj_jet(y(i));
}

}  // namespace conifold
