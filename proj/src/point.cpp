#include "conifold/point.hpp"

namespace conifold {

ModelPoint scale_action(cd lambda, const ModelPoint& p) {
    if (lambda == cd(0.0)) throw InvalidScaleError("scaling by lambda = 0");
    cd s = pow32(lambda);
    if (p.tag == Variety::resolution) {
        return ModelPoint::resolution_point(p.x, s * p.u, s * p.v);
    }
    ModelPoint q;
    q.tag = Variety::smoothing;
    q.z = s * p.z;
    q.t = lambda * lambda * lambda * p.t;
    return q;
}

ModelPoint phi_map(cd t, const ModelPoint& p0) {
    if (p0.tag != Variety::smoothing || p0.t != cd(0.0))
        throw OutsideDomainError("phi_map expects a point of the cone V_0");
    double n2 = p0.z.squaredNorm();
    if (n2 <= 0.5 * std::abs(t))
        throw OutsideDomainError("phi_map: ||z||^2 <= |t|/2 is outside the domain");
    ModelPoint q;
    q.tag = Variety::smoothing;
    q.z = p0.z + (t / (2.0 * n2)) * p0.z.conjugate();
    q.t = t;
    return q;
}

Vector4cd phi_inverse(cd t, const Vector4cd& z, int max_iter, double tol) {
    double n2 = z.squaredNorm();
    if (n2 <= std::abs(t))
        throw OutsideDomainError("phi_inverse: ||z||^2 <= |t| has no preimage in the chart domain");
    Vector4cd y = z;
    for (int it = 0; it < max_iter; ++it) {
        Vector4cd next = z - (t / (2.0 * y.squaredNorm())) * y.conjugate();
        double step = (next - y).norm();
        y = next;
        if (step < tol * std::max(1.0, y.norm())) return y;
    }
    throw EvaluationError("phi_inverse: fixed-point iteration did not converge");
}

}  // namespace conifold
