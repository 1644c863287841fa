#include "conifold/curvature.hpp"

namespace conifold {

namespace {

// divided difference (a^sigma - b^sigma)/(a - b), stable when a ~ b
double divided_pow(double a, double b, double sigma) {
    if (std::abs(a - b) < 1e-9 * std::max(a, b))
        return sigma * std::pow(0.5 * (a + b), sigma - 1.0);
    return (std::pow(a, sigma) - std::pow(b, sigma)) / (a - b);
}

}  // namespace

double uy_inequality_margin(const Matrix3cd& Hhat, const Matrix3cd& H, const Matrix3cd& g,
                            double sigma, const std::array<Matrix3cd, 3>& D) {
    if (sigma <= 0.0 || sigma > 1.0)
        throw OutsideDomainError("uy_inequality_margin: sigma must lie in (0, 1]");
    Eigen::LLT<Matrix3cd> llt(Hhat);
    if (llt.info() != Eigen::Success)
        throw SingularMetricError("uy_inequality_margin: Hhat not positive definite");
    Matrix3cd L = llt.matrixL();
    Matrix3cd Linv = L.inverse();

    // whiten: htil = L^-1 H L^-H is Hermitian positive; endomorphisms map as
    // X -> L^H X L^-H, which turns dagger_Hhat into the plain adjoint
    Matrix3cd htil = Linv * H * Linv.adjoint();
    htil = 0.5 * (htil + htil.adjoint().eval());
    Eigen::SelfAdjointEigenSolver<Matrix3cd> es(htil);
    if (es.eigenvalues().minCoeff() <= 0)
        throw SingularMetricError("uy_inequality_margin: h = Hhat^{-1} H not positive");
    Matrix3cd U = es.eigenvectors();
    Eigen::Vector3d lam = es.eigenvalues();

    Matrix3cd gi = g.inverse();
    std::array<Matrix3cd, 3> Dp;  // derivative data in the h eigenbasis
    for (int j = 0; j < 3; ++j) {
        Matrix3cd Dt = L.adjoint() * D[j] * Linv.adjoint();
        Dp[j] = U.adjoint() * Dt * U;
    }

    Matrix3cd phi;  // divided differences of lambda^sigma
    for (int p = 0; p < 3; ++p)
        for (int q = 0; q < 3; ++q) phi(p, q) = divided_pow(lam(p), lam(q), sigma);

    cd term1(0), term2(0);
    for (int j = 0; j < 3; ++j)
        for (int k = 0; k < 3; ++k) {
            // M1 = h^{-1} D_j, N = nabla_k h^sigma, M2 = h^{-sigma/2} nabla h^sigma
            Matrix3cd M1, Nk, M2j, M2k;
            for (int p = 0; p < 3; ++p)
                for (int q = 0; q < 3; ++q) {
                    M1(p, q) = Dp[j](p, q) / lam(p);
                    Nk(p, q) = phi(p, q).real() * Dp[k](p, q);
                    M2j(p, q) = std::pow(lam(p), -sigma / 2) * phi(p, q).real() * Dp[j](p, q);
                    M2k(p, q) = std::pow(lam(p), -sigma / 2) * phi(p, q).real() * Dp[k](p, q);
                }
            term1 += gi(j, k) * (M1 * Nk.adjoint()).trace();
            term2 += gi(j, k) * (M2j * M2k.adjoint()).trace();
        }
    return term1.real() - term2.real();
}

Form22 tr_f_wedge_f(const Mat33& F) {
    // F = F_{j kbar} dz^j ^ dzb^k (endomorphism valued), so
    // Tr F ^ F = Tr(F_{j kbar} F_{s lbar}) dz^j ^ dzb^k ^ dz^s ^ dzb^l
    Form22 out;
    for (int j = 0; j < 3; ++j)
        for (int k = 0; k < 3; ++k)
            for (int s = 0; s < 3; ++s)
                for (int l = 0; l < 3; ++l)
                    out.add_term(j, k, s, l, (F[j][k] * F[s][l]).trace());
    return out;
}

}  // namespace conifold
