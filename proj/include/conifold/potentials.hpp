#pragma once

// Scalar potentials with 4th-order jets: the cone potential r^2 = ||z||^{4/3},
// the smoothing potential f_t, the resolution profile f_a with x f_a' solving
// (x f_a')^3 + 6 a^2 (x f_a')^2 = x^2, the large-x asymptotics of f_1, and the
// C^1 cutoff profile used by the balanced gluing.

#include <array>
#include <functional>
#include <vector>

#include "conifold/errors.hpp"
#include "conifold/jet.hpp"

namespace conifold {

// value and derivatives d^k/ds^k, k = 0..4, of a univariate function
struct ScalarJet {
    std::array<double, 5> d{};
    double value() const { return d[0]; }
};

// adaptive Gauss-Legendre quadrature, relative tolerance `tol`
double adaptive_quadrature(const std::function<double(double)>& f, double a, double b,
                           double tol = 1e-12, int max_depth = 40);

// nodes/weights of n-point Gauss-Legendre on [-1, 1] (cached)
const std::pair<std::vector<double>, std::vector<double>>& gauss_legendre(int n);

// -- smoothing potential f_t --------------------------------------------
//
// f_t(s) = 2^{-1/3} |t|^{2/3} int_0^{arccosh(s/|t|)} (sinh 2tau - 2tau)^{1/3} dtau,
// defined for s >= |t|.  Derivatives in s are computed analytically from the
// closed form of f_t' (never by differentiating the quadrature); near the
// vanishing cycle s = |t| the derivative is evaluated through a series in
// u^2 = arccosh(s/|t|)^2, which is analytic in s/|t| - 1.
class SmoothingPotential {
  public:
    explicit SmoothingPotential(cd t);

    double abs_t() const { return abst_; }
    double operator()(double s) const;
    ScalarJet jet(double s, int order = 4) const;

    template <int N>
    Jet<N> eval(const Jet<N>& s) const {
        double s0 = s.value().real();
        ScalarJet j = jet(s0, N);
        std::array<cd, N + 1> g{};
        double fact = 1;
        for (int k = 0; k <= N; ++k) { g[k] = j.d[k] / fact; fact *= (k + 1); }
        return compose1<N>(g, s);
    }

    // quadrature value with n-fold denser panels, for convergence tests
    double value_with_tol(double s, double tol) const;

  private:
    double abst_;
    // derivatives of F(v) = f_1 at v = s/|t|; dF[k] = F^(k)(v), k = 0..order
    void dF(double v, int order, std::array<double, 5>& out) const;

    template <int N>
    Jet<N> Fprime_jet(double v0) const;
};

// -- resolution profile f_a ---------------------------------------------
class ResolutionProfile {
  public:
    explicit ResolutionProfile(double a);

    double a() const { return a_; }
    double y_of(double x) const;  // the nonnegative root of y^3 + 6 a^2 y^2 = x^2
    double f(double x) const;     // f_a(x) = int_0^x y(xi)/xi dxi
    ScalarJet y_jet(double x, int order = 4) const;
    ScalarJet f_jet(double x, int order = 4) const;

    template <int N>
    Jet<N> eval_f(const Jet<N>& x) const {
        double x0 = x.value().real();
        ScalarJet j = f_jet(x0, N);
        std::array<cd, N + 1> g{};
        double fact = 1;
        for (int k = 0; k <= N; ++k) { g[k] = j.d[k] / fact; fact *= (k + 1); }
        return compose1<N>(g, x);
    }

  private:
    double a_;
};

// -- f_1 large-x asymptotics ---------------------------------------------
//
// f_1(x) - (3/2) x^{2/3} + 2 log x converges to a constant c0; the remainder
// after subtracting c0 decays like x^{-2/3}.
struct F1Asymptotics {
    double c0_hat = 0;               // extrapolated limit constant
    double correction_exponent = 0;  // fitted slope of log|remainder - c0| vs log x
    double cauchy_gap = 0;           // max |remainder(x_i) - remainder(x_j)| over the top decade
    double fit_r2 = 0;
};
F1Asymptotics f1_asymptotics(const std::vector<double>& x_grid);

// -- balanced-gluing cutoff ----------------------------------------------
//
// v = chi' equals 1 on [0,5], a s^-3 + b s^-2 + c s^2 + d on [5, R^2-1], and 0
// beyond; the four coefficients are fixed by C^1 matching at both knots.  A
// mollified C^inf evaluator (bump of half-width 0.05, fixed 64-node
// convolution) provides 4th-order jets for use inside i del dbar expressions.
struct CutoffProfile {
    double R = 0;
    double a = 0, b = 0, c = 0, d = 0;
    double S = 0;        // right knot R^2 - 1
    double chi_inf = 0;  // value of chi for s >= S
    double min_v = 0;    // min of v over [4, R^2]
    double min_div = 0;  // min of (1/s^2) d/ds (s^2 v) over [4, R^2]
    double moll_half_width = 0.05;

    double v(double s) const;
    double vp(double s) const;
    double chi(double s) const;
    std::array<double, 5> chi_smooth_jet(double s) const;  // mollified chi, derivs 0..4

    template <int N>
    Jet<N> eval_chi(const Jet<N>& s) const {
        auto j = chi_smooth_jet(s.value().real());
        std::array<cd, N + 1> g{};
        double fact = 1;
        for (int k = 0; k <= N; ++k) { g[k] = j[k] / fact; fact *= (k + 1); }
        return compose1<N>(g, s);
    }
};

CutoffProfile fly_cutoff(double R);

}  // namespace conifold
