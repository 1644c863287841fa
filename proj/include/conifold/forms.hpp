#pragma once

// Pointwise exterior algebra of (p,q)-forms in a 3-dimensional chart frame.
//
// Two representations are used.  A general form is a Multivector over the six
// one-forms (dz1,dz2,dz3,dzb1,dzb2,dzb3) indexed by bitmask.  A (2,2)-form is
// also kept as the 4-index array Theta_{s rbar j kbar} with the convention
//   Theta = (1/4) Theta_{s rbar j kbar} dz^s ^ dzb^r ^ dz^j ^ dzb^k,
// antisymmetric under s<->j and r<->k.  In that convention the square of a
// positive (1,1)-form omega = i g_{kbar j} dz^j ^ dzb^k has the coefficient
// matrix Psi^{j kbar} = (det g) g^{j kbar}, which makes the square root and
// positivity questions plain Hermitian linear algebra.

#include <array>
#include <functional>

#include "conifold/errors.hpp"
#include "conifold/jet.hpp"

namespace conifold {

using Eigen::Matrix3cd;
using Eigen::Vector3cd;

// ---------------------------------------------------------------- Multivector

struct Multivector {
    std::array<cd, 64> c{};

    // sign of dz^(bits a) ^ dz^(bits b) relative to the sorted basis; 0 on overlap
    static int merge_sign(unsigned a, unsigned b) {
        if (a & b) return 0;
        int inversions = 0;
        for (int j = 0; j < 6; ++j)
            if (b & (1u << j))
                for (int i = j + 1; i < 6; ++i)
                    if (a & (1u << i)) ++inversions;
        return (inversions % 2) ? -1 : 1;
    }

    friend Multivector wedge(const Multivector& x, const Multivector& y) {
        Multivector r;
        for (unsigned a = 0; a < 64; ++a) {
            if (x.c[a] == cd(0)) continue;
            for (unsigned b = 0; b < 64; ++b) {
                if (y.c[b] == cd(0)) continue;
                int s = merge_sign(a, b);
                if (s) r.c[a | b] += double(s) * x.c[a] * y.c[b];
            }
        }
        return r;
    }

    Multivector& operator+=(const Multivector& o) {
        for (int i = 0; i < 64; ++i) c[i] += o.c[i];
        return *this;
    }
    friend Multivector operator*(double s, Multivector m) {
        for (auto& v : m.c) v *= s;
        return m;
    }
    double max_abs(int degree = -1) const {
        double m = 0;
        for (unsigned i = 0; i < 64; ++i)
            if (degree < 0 || __builtin_popcount(i) == degree) m = std::max(m, std::abs(c[i]));
        return m;
    }
};

// ---------------------------------------------------------------- Form22

struct Form22 {
    // quarter-convention antisymmetrized components Theta[s][r][j][k]
    std::array<std::array<std::array<std::array<cd, 3>, 3>, 3>, 3> a{};

    cd& at(int s, int r, int j, int k) { return a[s][r][j][k]; }
    const cd& at(int s, int r, int j, int k) const { return a[s][r][j][k]; }

    // accumulate the raw term c * dz^s ^ dzb^r ^ dz^j ^ dzb^k
    void add_term(int s, int r, int j, int k, cd c) {
        a[s][r][j][k] += c;
        a[j][r][s][k] -= c;
        a[s][k][j][r] -= c;
        a[j][k][s][r] += c;
    }

    Form22& operator+=(const Form22& o);
    Form22& operator-=(const Form22& o);
    friend Form22 operator+(Form22 x, const Form22& y) { x += y; return x; }
    friend Form22 operator-(Form22 x, const Form22& y) { x -= y; return x; }
    friend Form22 operator*(double s, Form22 x);

    Form22 conj() const;  // complex conjugate form
    double max_abs() const;
};

// Lemma-representation coefficient matrix Psi^{a bbar} and its inverse map.
Matrix3cd to_lemma(const Form22& f);
Form22 from_lemma(const Matrix3cd& psi);

// wedge of two (1,1)-forms given by their Hermitian matrices
Form22 wedge11(const Matrix3cd& A, const Matrix3cd& B);

// Hermitian-form norm: |S|_g^2 = Tr(g^-1 S g^-1 S^H)
double herm_norm(const Matrix3cd& S, const Matrix3cd& G);
// endomorphism norm under <A,B>_H = Tr(A B^dagger_H)
double endo_norm(const Matrix3cd& M, const Matrix3cd& H);
// (2,2)-form norm with all four indices raised by g
double form22_norm(const Form22& f, const Matrix3cd& G);

// ---------------------------------------------------------------- PQForm

struct PQForm {
    int p = 0, q = 0;
    Multivector mv;

    static PQForm from_hermitian(const Matrix3cd& G);  // (1,1): i g_{kbar j} dz^j ^ dzb^k
    static PQForm from_form22(const Form22& f);
    Form22 to_form22() const;
};

PQForm wedge(const PQForm& A, const PQForm& B);

// ---------------------------------------------------------------- operations

// i del dbar of a scalar jet: the Hermitian matrix of mixed second partials
template <int N>
Matrix3cd i_ddbar(const Jet<N>& f) {
    static_assert(N >= 2, "i_ddbar needs a jet of order >= 2");
    Matrix3cd g;
    for (int k = 0; k < 3; ++k)
        for (int j = 0; j < 3; ++j) {
            std::array<int, 3> aa{0, 0, 0}, bb{0, 0, 0};
            aa[j] = 1;
            bb[k] = 1;
            g(k, j) = f.deriv(aa, bb);
        }
    return g;
}

// same, but keeping jets of the remaining orders in the entries
template <int N>
Mat3J<N - 2> i_ddbar_jet(const Jet<N>& f) {
    static_assert(N >= 2);
    Mat3J<N - 2> g;
    for (int k = 0; k < 3; ++k)
        for (int j = 0; j < 3; ++j) g(k, j) = f.d(j).d(k + 3);
    return g;
}

// i del dbar of a (1,1)-form field with jet coefficients -> (2,2)-form value
template <int N>
Form22 i_ddbar_11(const Mat3J<N>& gamma) {
    static_assert(N >= 2);
    Form22 out;
    for (int s = 0; s < 3; ++s)
        for (int r = 0; r < 3; ++r)
            for (int j = 0; j < 3; ++j)
                for (int k = 0; k < 3; ++k) {
                    std::array<int, 3> aa{0, 0, 0}, bb{0, 0, 0};
                    aa[s] = 1;
                    bb[r] = 1;
                    out.add_term(s, r, j, k, -gamma(k, j).deriv(aa, bb));
                }
    return out;
}

// i del f ^ dbar f as a (1,1) matrix: (del_j f)(dbar_k f)
template <int N>
Matrix3cd i_del_dbar_product(const Jet<N>& f, const Jet<N>& g) {
    Matrix3cd m;
    for (int k = 0; k < 3; ++k)
        for (int j = 0; j < 3; ++j) {
            std::array<int, 3> aa{0, 0, 0}, bb{0, 0, 0}, zz{0, 0, 0};
            aa[j] = 1;
            bb[k] = 1;
            m(k, j) = f.deriv(aa, zz) * g.deriv(zz, bb);
        }
    return m;
}

// contraction i Lambda_omega F = g^{j kbar} F_{j kbar} for a (1,1)-form-valued
// endomorphism F
Matrix3cd contract(const Matrix3cd& omega, const std::array<std::array<Matrix3cd, 3>, 3>& F);

// the positive square root of a positive (2,2)-form (Hermitian matrix of the
// resulting metric); throws NotASquareError when the coefficient matrix fails
// to be positive
Matrix3cd sqrt_22(const Form22& psi);

// square root on the Lemma-matrix representation, templated so jets flow through
template <class Mat>
Mat sqrt22_from_psi_jets(const Mat& psi) {
    auto d = det3(psi);
    return sqrt_jet(d) * inv3(psi);
}

// derivative of the square root: given eta solving eta^2 = omega^2 + theta +
// thetabar and the arrays (nabla_i theta), (nabla_i thetabar), returns nabla_i eta
std::array<Matrix3cd, 3> sqrt22_variation(const Matrix3cd& eta,
                                          const std::array<Form22, 3>& dtheta,
                                          const std::array<Form22, 3>& dthetabar);

// sup-norm of the exterior derivative of a (2,2)-form field over a chart
// neighborhood, normalized by the field's own size; coefficients are
// differentiated by 4th-order central differences with Richardson
// extrapolation (step h, then h/2)
double d_residual(const std::function<Form22(const Vector3cd&)>& field, const Vector3cd& w0,
                  double h);

// positivity margin: smallest eigenvalue of the Lemma coefficient matrix
double positivity_margin(const Form22& f);

}  // namespace conifold
