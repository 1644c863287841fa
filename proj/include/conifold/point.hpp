#pragma once

// Points of the local models: the smoothing family V_t = { z1^2+..+z4^2 = t }
// in C^4, and the small resolution O(-1)+O(-1) -> P^1 with base coordinate x
// and fiber coordinates (u,v).  The cone radius is r = ||z||^{2/3} on the
// smoothing family and r^3 = (1+|x|^2)(|u|^2+|v|^2) on the resolution.

#include <complex>

#include <Eigen/Dense>

#include "conifold/errors.hpp"

namespace conifold {

using cd = std::complex<double>;
using Eigen::Vector4cd;

enum class Variety { smoothing, resolution };

struct ModelPoint {
    Variety tag = Variety::smoothing;

    // smoothing data
    Vector4cd z = Vector4cd::Zero();
    cd t{0.0, 0.0};

    // resolution data: base chart coordinate x, fiber (u, v)
    cd x{0.0, 0.0}, u{0.0, 0.0}, v{0.0, 0.0};

    static constexpr double kMembershipTol = 1e-12;

    static ModelPoint smoothing_point(const Vector4cd& z, cd t) {
        ModelPoint p;
        p.tag = Variety::smoothing;
        p.z = z;
        p.t = t;
        if (membership_residual(z, t) > kMembershipTol * std::max(1.0, z.squaredNorm()))
            throw OutsideDomainError("point does not satisfy the defining equation of V_t");
        return p;
    }

    static ModelPoint resolution_point(cd x, cd u, cd v) {
        ModelPoint p;
        p.tag = Variety::resolution;
        p.x = x;
        p.u = u;
        p.v = v;
        return p;
    }

    static double membership_residual(const Vector4cd& z, cd t) {
        cd s = z(0) * z(0) + z(1) * z(1) + z(2) * z(2) + z(3) * z(3);
        return std::abs(s - t);
    }

    double norm2() const {  // ||z||^2, or its resolution analogue r^3
        if (tag == Variety::smoothing) return z.squaredNorm();
        return (1.0 + std::norm(x)) * (std::norm(u) + std::norm(v));
    }

    double radius() const { return std::cbrt(norm2()); }  // r = (||z||^2)^{1/3}
};

// C* action on the family: S_lambda(z, t) = (lambda^{3/2} z, lambda^3 t) with
// the principal branch of lambda^{1/2}; on the resolution it scales the fiber
// only.  r(S_lambda p) = |lambda| r(p).
ModelPoint scale_action(cd lambda, const ModelPoint& p);

// The identification map Phi_t : V_0 \ {||z||^2 <= |t|/2} -> V_t,
// z -> z + t conj(z) / (2 ||z||^2).
ModelPoint phi_map(cd t, const ModelPoint& p0);

// Pointwise inverse of Phi_t by fixed-point iteration; requires
// ||z||^2 > |t| strictly (the vanishing cycle is not in the image).
Vector4cd phi_inverse(cd t, const Vector4cd& z, int max_iter = 500, double tol = 1e-15);

// principal branch lambda^{3/2} = exp(1.5 Log lambda)
inline cd pow32(cd lambda) { return std::exp(1.5 * std::log(lambda)); }

}  // namespace conifold
