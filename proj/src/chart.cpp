#include "conifold/chart.hpp"

namespace conifold {

Chart make_cyl_chart(const ModelPoint& p) {
    if (p.tag != Variety::smoothing)
        throw OutsideDomainError("cylindrical charts are defined on the smoothing family");
    double zn = std::sqrt(p.z.squaredNorm());
    if (std::cbrt(p.z.squaredNorm()) < 1e-8)
        throw DegeneratePointError("chart center too close to the tip of the cone");

    int elim = 0;
    double best = -1.0;
    for (int i = 0; i < 4; ++i) {
        double m = std::abs(p.z(i));
        if (m > best + 0.0) { best = m; elim = i; }
    }
    if (best < 1e-8 * zn)
        throw IllConditionedChartError("eliminated coordinate too small relative to ||z||");

    Chart c;
    c.center = p;
    c.eliminated = elim;
    c.rho = 0.125;
    c.znorm = zn;
    c.rhat = std::cbrt(p.z.squaredNorm());
    int k = 0;
    for (int i = 0; i < 4; ++i)
        if (i != elim) c.free[k++] = i;
    return c;
}

Vector4cd Chart::embed_point(const Vector3cd& w) const {
    Vector4cd z;
    cd sum(0);
    for (int a = 0; a < 3; ++a) {
        z(free[a]) = center.z(free[a]) + znorm * w(a);
        sum += z(free[a]) * z(free[a]);
    }
    cd ze = center.z(eliminated);
    cd arg = cd(1) + (center.t - sum - ze * ze) / (ze * ze);
    z(eliminated) = ze * std::sqrt(arg);  // principal sqrt at 1: branch continuous at w = 0
    return z;
}

Eigen::Matrix<cd, 4, 3> Chart::frame(const Vector3cd& w) const {
    Eigen::Matrix<cd, 4, 3> F = Eigen::Matrix<cd, 4, 3>::Zero();
    Vector4cd z = embed_point(w);
    for (int a = 0; a < 3; ++a) {
        F(free[a], a) = znorm;
        // z_e^2 = t - sum z_i^2  =>  dz_e/dw_a = -znorm z_a / z_e
        F(eliminated, a) = -znorm * z(free[a]) / z(eliminated);
    }
    return F;
}

Vector3cd Chart::coords(const Vector4cd& q) const {
    Vector3cd w;
    for (int a = 0; a < 3; ++a) w(a) = (q(free[a]) - center.z(free[a])) / znorm;
    return w;
}

double real_tensor_norm(const Sym2Tensor& T, const Matrix3cd& G) {
    // real frame: holomorphic parts of d/dx_a and d/dy_a are e_a and i e_a
    std::array<Vector3cd, 6> frame;
    for (int a = 0; a < 3; ++a) {
        Vector3cd e = Vector3cd::Zero();
        e(a) = 1.0;
        frame[2 * a] = e;
        frame[2 * a + 1] = cd(0, 1) * e;
    }
    Sym2Tensor g2 = to_sym2(G);
    Eigen::Matrix<double, 6, 6> TR, GR;
    for (int i = 0; i < 6; ++i)
        for (int j = 0; j < 6; ++j) {
            TR(i, j) = T.eval(frame[i], frame[j]);
            GR(i, j) = g2.eval(frame[i], frame[j]);
        }
    Eigen::LLT<Eigen::Matrix<double, 6, 6>> llt(GR);
    if (llt.info() != Eigen::Success)
        throw SingularMetricError("real_tensor_norm: reference metric not positive definite");
    Eigen::Matrix<double, 6, 6> L = llt.matrixL();
    Eigen::Matrix<double, 6, 6> W =
        L.triangularView<Eigen::Lower>().solve(TR);
    Eigen::Matrix<double, 6, 6> W2 =
        L.triangularView<Eigen::Lower>().solve(W.transpose().eval());
    return W2.norm();
}

Matrix3cd project_11(const Sym2Tensor& A) {
    if ((A.P - A.P.transpose()).norm() > 1e-10 * (1.0 + A.P.norm()))
        throw ShapeError("project_11: input tensor is not symmetric");
    Matrix3cd K;
    for (int a = 0; a < 3; ++a)
        for (int b = 0; b < 3; ++b) K(b, a) = A.Q(a, b);
    return K;
}

}  // namespace conifold
