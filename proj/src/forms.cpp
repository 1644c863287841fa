#include "conifold/forms.hpp"

#include <Eigen/Dense>

namespace conifold {

namespace {

int levi(int i, int j, int k) {
    if (i == j || j == k || i == k) return 0;
    return ((j - i) * (k - j) * (k - i) > 0) ? 1 : -1;
}

constexpr double kPosTolFactor = 1e-10;  // scale-free positivity threshold

}  // namespace

Form22& Form22::operator+=(const Form22& o) {
    for (int s = 0; s < 3; ++s)
        for (int r = 0; r < 3; ++r)
            for (int j = 0; j < 3; ++j)
                for (int k = 0; k < 3; ++k) a[s][r][j][k] += o.a[s][r][j][k];
    return *this;
}

Form22& Form22::operator-=(const Form22& o) {
    for (int s = 0; s < 3; ++s)
        for (int r = 0; r < 3; ++r)
            for (int j = 0; j < 3; ++j)
                for (int k = 0; k < 3; ++k) a[s][r][j][k] -= o.a[s][r][j][k];
    return *this;
}

Form22 operator*(double s, Form22 x) {
    for (auto& b : x.a)
        for (auto& c : b)
            for (auto& d : c)
                for (auto& v : d) v *= s;
    return x;
}

Form22 Form22::conj() const {
    // conj(dz^s ^ dzb^r ^ dz^j ^ dzb^k) = dz^r ^ dzb^s ^ dz^k ^ dzb^j
    Form22 out;
    for (int s = 0; s < 3; ++s)
        for (int r = 0; r < 3; ++r)
            for (int j = 0; j < 3; ++j)
                for (int k = 0; k < 3; ++k) out.a[r][s][k][j] = std::conj(a[s][r][j][k]);
    return out;
}

double Form22::max_abs() const {
    double m = 0;
    for (const auto& b : a)
        for (const auto& c : b)
            for (const auto& d : c)
                for (const auto& v : d) m = std::max(m, std::abs(v));
    return m;
}

Matrix3cd to_lemma(const Form22& f) {
    Matrix3cd psi = Matrix3cd::Zero();
    for (int aa = 0; aa < 3; ++aa)
        for (int bb = 0; bb < 3; ++bb) {
            cd sum(0);
            for (int s = 0; s < 3; ++s)
                for (int j = 0; j < 3; ++j) {
                    int e1 = levi(aa, s, j);
                    if (!e1) continue;
                    for (int r = 0; r < 3; ++r)
                        for (int k = 0; k < 3; ++k) {
                            int e2 = levi(bb, r, k);
                            if (!e2) continue;
                            sum += double(e1 * e2) * f.a[s][r][j][k];
                        }
                }
            psi(aa, bb) = -sum / 8.0;
        }
    return psi;
}

Form22 from_lemma(const Matrix3cd& psi) {
    Form22 out;
    for (int s = 0; s < 3; ++s)
        for (int r = 0; r < 3; ++r)
            for (int j = 0; j < 3; ++j)
                for (int k = 0; k < 3; ++k) {
                    cd sum(0);
                    for (int aa = 0; aa < 3; ++aa)
                        for (int bb = 0; bb < 3; ++bb) {
                            int e = levi(s, j, aa) * levi(r, k, bb);
                            if (e) sum += double(e) * psi(aa, bb);
                        }
                    out.a[s][r][j][k] = -2.0 * sum;
                }
    return out;
}

Form22 wedge11(const Matrix3cd& A, const Matrix3cd& B) {
    // (i A_{rbar s} dz^s ^ dzb^r) ^ (i B_{kbar j} dz^j ^ dzb^k)
    Form22 out;
    for (int s = 0; s < 3; ++s)
        for (int r = 0; r < 3; ++r)
            for (int j = 0; j < 3; ++j)
                for (int k = 0; k < 3; ++k) out.add_term(s, r, j, k, -A(r, s) * B(k, j));
    return out;
}

double herm_norm(const Matrix3cd& S, const Matrix3cd& G) {
    Matrix3cd gi = G.inverse();
    return std::sqrt(std::max(0.0, (gi * S * gi * S.adjoint()).trace().real()));
}

double endo_norm(const Matrix3cd& M, const Matrix3cd& H) {
    Matrix3cd dag = H.inverse() * M.adjoint() * H;
    return std::sqrt(std::max(0.0, (M * dag).trace().real()));
}

double form22_norm(const Form22& f, const Matrix3cd& G) {
    Matrix3cd gi = G.inverse();
    cd sum(0);
    for (int s = 0; s < 3; ++s)
        for (int r = 0; r < 3; ++r)
            for (int j = 0; j < 3; ++j)
                for (int k = 0; k < 3; ++k)
                    for (int s2 = 0; s2 < 3; ++s2)
                        for (int r2 = 0; r2 < 3; ++r2)
                            for (int j2 = 0; j2 < 3; ++j2)
                                for (int k2 = 0; k2 < 3; ++k2)
                                    sum += f.a[s][r][j][k] * std::conj(f.a[s2][r2][j2][k2]) *
                                           gi(s, s2) * std::conj(gi(r, r2)) * gi(j, j2) *
                                           std::conj(gi(k, k2));
    return std::sqrt(std::max(0.0, sum.real() / 4.0));
}

PQForm PQForm::from_hermitian(const Matrix3cd& G) {
    PQForm f;
    f.p = f.q = 1;
    for (int j = 0; j < 3; ++j)
        for (int k = 0; k < 3; ++k) {
            unsigned mask = (1u << j) | (1u << (k + 3));
            f.mv.c[mask] += cd(0, 1) * G(k, j) * double(Multivector::merge_sign(1u << j, 1u << (k + 3)));
        }
    return f;
}

PQForm PQForm::from_form22(const Form22& f22) {
    PQForm f;
    f.p = f.q = 2;
    for (int s = 0; s < 3; ++s)
        for (int r = 0; r < 3; ++r)
            for (int j = 0; j < 3; ++j)
                for (int k = 0; k < 3; ++k) {
                    if (s == j || r == k) continue;
                    // letters in the order (s, rbar, j, kbar)
                    unsigned l0 = 1u << s, l1 = 1u << (r + 3), l2 = 1u << j, l3 = 1u << (k + 3);
                    int sign = Multivector::merge_sign(l0, l1);
                    sign *= Multivector::merge_sign(l0 | l1, l2);
                    sign *= Multivector::merge_sign(l0 | l1 | l2, l3);
                    if (!sign) continue;
                    f.mv.c[l0 | l1 | l2 | l3] += 0.25 * double(sign) * f22.a[s][r][j][k];
                }
    return f;
}

Form22 PQForm::to_form22() const {
    if (p != 2 || q != 2) throw DegreeError("to_form22 requires a (2,2)-form");
    Form22 out;
    // invert the monomial expansion: visit each canonical 4-letter mask once
    for (int s = 0; s < 3; ++s)
        for (int j = s + 1; j < 3; ++j)
            for (int r = 0; r < 3; ++r)
                for (int k = r + 1; k < 3; ++k) {
                    unsigned l0 = 1u << s, l1 = 1u << (r + 3), l2 = 1u << j, l3 = 1u << (k + 3);
                    int sign = Multivector::merge_sign(l0, l1);
                    sign *= Multivector::merge_sign(l0 | l1, l2);
                    sign *= Multivector::merge_sign(l0 | l1 | l2, l3);
                    cd coeff = mv.c[l0 | l1 | l2 | l3] * double(sign);
                    out.add_term(s, r, j, k, coeff);
                }
    return out;
}

PQForm wedge(const PQForm& A, const PQForm& B) {
    if (A.p + B.p > 3 || A.q + B.q > 3)
        throw DegreeError("wedge: bidegree exceeds (3,3)");
    PQForm r;
    r.p = A.p + B.p;
    r.q = A.q + B.q;
    r.mv = wedge(A.mv, B.mv);
    return r;
}

Matrix3cd contract(const Matrix3cd& omega, const std::array<std::array<Matrix3cd, 3>, 3>& F) {
    Eigen::SelfAdjointEigenSolver<Matrix3cd> es(omega);
    if (es.eigenvalues().minCoeff() <= kPosTolFactor * std::abs(omega.trace().real()))
        throw SingularMetricError("contract: metric form is not positive definite");
    Matrix3cd gi = omega.inverse();
    Matrix3cd out = Matrix3cd::Zero();
    for (int j = 0; j < 3; ++j)
        for (int k = 0; k < 3; ++k) out += gi(j, k) * F[j][k];
    return out;
}

Matrix3cd sqrt_22(const Form22& psi_form) {
    Matrix3cd psi = to_lemma(psi_form);
    double herm_defect = (psi - psi.adjoint()).norm();
    if (herm_defect > 1e-8 * (1.0 + psi.norm()))
        throw NotASquareError("sqrt_22: coefficient matrix is not Hermitian");
    psi = 0.5 * (psi + psi.adjoint().eval());
    Eigen::SelfAdjointEigenSolver<Matrix3cd> es(psi);
    double mineig = es.eigenvalues().minCoeff();
    if (mineig <= kPosTolFactor * std::abs(psi.trace().real()))
        throw NotASquareError("sqrt_22: coefficient matrix not positive, min eigenvalue " +
                              std::to_string(mineig));
    double det = psi.determinant().real();
    return std::sqrt(det) * psi.inverse();
}

std::array<Matrix3cd, 3> sqrt22_variation(const Matrix3cd& eta,
                                          const std::array<Form22, 3>& dtheta,
                                          const std::array<Form22, 3>& dthetabar) {
    Eigen::SelfAdjointEigenSolver<Matrix3cd> es(0.5 * (eta + eta.adjoint().eval()));
    if (es.eigenvalues().minCoeff() <= kPosTolFactor * std::abs(eta.trace().real()))
        throw SingularMetricError("sqrt22_variation: eta is not positive definite");
    Matrix3cd ei = eta.inverse();
    std::array<Matrix3cd, 3> out;
    for (int i = 0; i < 3; ++i) {
        Form22 th = dtheta[i] + dthetabar[i];
        Matrix3cd first = Matrix3cd::Zero();
        for (int j = 0; j < 3; ++j)
            for (int k = 0; k < 3; ++k) {
                cd sum(0);
                for (int s = 0; s < 3; ++s)
                    for (int r = 0; r < 3; ++r) sum += ei(s, r) * th.a[s][r][j][k];
                first(k, j) = -0.5 * sum;
            }
        cd trace_part(0);
        for (int p = 0; p < 3; ++p)
            for (int q = 0; q < 3; ++q)
                for (int s = 0; s < 3; ++s)
                    for (int r = 0; r < 3; ++r)
                        trace_part += ei(p, q) * ei(s, r) * th.a[s][r][p][q];
        out[i] = first + (trace_part / 8.0) * eta;
    }
    return out;
}

namespace {

// fourth-order central difference of a Form22-valued function along one real
// coordinate direction
Form22 central_diff(const std::function<Form22(const Vector3cd&)>& f, const Vector3cd& w0,
                    const Vector3cd& dir, double h) {
    Form22 r = (1.0 / (12 * h)) * ((f(w0 - 2 * h * dir) - f(w0 + 2 * h * dir)) +
                                   8.0 * (f(w0 + h * dir) - f(w0 - h * dir)));
    return r;
}

}  // namespace

double d_residual(const std::function<Form22(const Vector3cd&)>& field, const Vector3cd& w0,
                  double h) {
    Form22 base;
    try {
        base = field(w0);
    } catch (const Error&) {
        throw EvaluationError("d_residual: field not evaluable at the base point");
    }

    auto d_at = [&](double step) {
        Multivector dtheta;
        for (int m = 0; m < 3; ++m) {
            Vector3cd ex = Vector3cd::Zero(), ey = Vector3cd::Zero();
            ex(m) = 1.0;
            ey(m) = cd(0, 1);
            Form22 dx = central_diff(field, w0, ex, step);
            Form22 dy = central_diff(field, w0, ey, step);
            // del_m = (d/dx - i d/dy)/2, del_mbar = (d/dx + i d/dy)/2
            for (int s = 0; s < 3; ++s)
                for (int r = 0; r < 3; ++r)
                    for (int j = 0; j < 3; ++j)
                        for (int k = 0; k < 3; ++k) {
                            cd hol = 0.5 * (dx.a[s][r][j][k] - cd(0, 1) * dy.a[s][r][j][k]);
                            cd anti = 0.5 * (dx.a[s][r][j][k] + cd(0, 1) * dy.a[s][r][j][k]);
                            unsigned mono = 0;
                            int sgn0 = 1;
                            // monomial letters (s, rbar, j, kbar)
                            unsigned l0 = 1u << s, l1 = 1u << (r + 3), l2 = 1u << j,
                                     l3 = 1u << (k + 3);
                            int ms = Multivector::merge_sign(l0, l1);
                            ms *= Multivector::merge_sign(l0 | l1, l2);
                            ms *= Multivector::merge_sign(l0 | l1 | l2, l3);
                            if (!ms) continue;
                            mono = l0 | l1 | l2 | l3;
                            (void)sgn0;
                            // dz^m ^ mono and dzb^m ^ mono
                            unsigned bm = 1u << m, bmb = 1u << (m + 3);
                            int s1 = Multivector::merge_sign(bm, mono);
                            if (s1) dtheta.c[bm | mono] += 0.25 * double(s1 * ms) * hol;
                            int s2 = Multivector::merge_sign(bmb, mono);
                            if (s2) dtheta.c[bmb | mono] += 0.25 * double(s2 * ms) * anti;
                        }
        }
        return dtheta;
    };

    Multivector d1 = d_at(h), d2 = d_at(0.5 * h);
    // Richardson for a 4th-order scheme: (16 d2 - d1)/15
    Multivector dext;
    for (int i = 0; i < 64; ++i) dext.c[i] = (16.0 * d2.c[i] - d1.c[i]) / 15.0;
    double denom = base.max_abs();
    return dext.max_abs(5) / (denom + 1e-300);
}

double positivity_margin(const Form22& f) {
    Matrix3cd psi = to_lemma(f);
    psi = 0.5 * (psi + psi.adjoint().eval());
    Eigen::SelfAdjointEigenSolver<Matrix3cd> es(psi);
    return es.eigenvalues().minCoeff();
}

}  // namespace conifold
