#include "conifold/potentials.hpp"

#include <algorithm>
#include <cmath>
#include <map>
#include <mutex>

namespace conifold {

// ---------------------------------------------------------------- quadrature

const std::pair<std::vector<double>, std::vector<double>>& gauss_legendre(int n) {
    static std::map<int, std::pair<std::vector<double>, std::vector<double>>> cache;
    static std::mutex mu;
    std::lock_guard<std::mutex> lock(mu);
    auto it = cache.find(n);
    if (it != cache.end()) return it->second;

    std::vector<double> x(n), w(n);
    for (int i = 0; i < n; ++i) {
        double t = std::cos(M_PI * (i + 0.75) / (n + 0.5));
        double p0 = 0, dp = 0;
        for (int iter = 0; iter < 100; ++iter) {
            p0 = 1.0;
            double p1 = 0.0;
            for (int j = 0; j < n; ++j) {
                double p2 = p1;
                p1 = p0;
                p0 = ((2 * j + 1) * t * p1 - j * p2) / (j + 1);
            }
            dp = n * (t * p0 - p1) / (t * t - 1.0);
            double dt = p0 / dp;
            t -= dt;
            if (std::abs(dt) < 1e-16) break;
        }
        x[i] = t;
        w[i] = 2.0 / ((1.0 - t * t) * dp * dp);
    }
    return cache.emplace(n, std::make_pair(std::move(x), std::move(w))).first->second;
}

namespace {

double gl_panel(const std::function<double(double)>& f, double a, double b, int n) {
    const auto& [x, w] = gauss_legendre(n);
    double mid = 0.5 * (a + b), half = 0.5 * (b - a);
    double s = 0;
    for (int i = 0; i < n; ++i) s += w[i] * f(mid + half * x[i]);
    return s * half;
}

double adapt(const std::function<double(double)>& f, double a, double b, double tol,
             double scale, int depth, int max_depth) {
    double c = gl_panel(f, a, b, 16);
    double m = 0.5 * (a + b);
    double fine = gl_panel(f, a, m, 16) + gl_panel(f, m, b, 16);
    if (std::abs(fine - c) <= tol * std::max(scale, std::abs(fine)) || depth >= max_depth)
        return fine;
    return adapt(f, a, m, tol, scale, depth + 1, max_depth) +
           adapt(f, m, b, tol, scale, depth + 1, max_depth);
}

}  // namespace

double adaptive_quadrature(const std::function<double(double)>& f, double a, double b,
                           double tol, int max_depth) {
    if (a == b) return 0.0;
    // pre-split long intervals geometrically from the left endpoint
    std::vector<double> cuts{a};
    double span = b - a;
    double step = std::min(1.0, span);
    double pos = a + step;
    while (pos < b && cuts.size() < 64) {
        cuts.push_back(pos);
        step *= 4.0;
        pos = cuts.back() + step;
    }
    cuts.push_back(b);
    double rough = 0;
    for (size_t i = 0; i + 1 < cuts.size(); ++i) rough += std::abs(gl_panel(f, cuts[i], cuts[i + 1], 16));
    double total = 0;
    for (size_t i = 0; i + 1 < cuts.size(); ++i)
        total += adapt(f, cuts[i], cuts[i + 1], tol, rough, 0, max_depth);
    return total;
}

// --------------------------------------------------- univariate order-4 jets
// tiny truncated Taylor helper used by the mollifier and profile internals

namespace {

struct Poly5 {
    std::array<double, 5> c{};
    Poly5() = default;
    explicit Poly5(double v) { c[0] = v; }
    static Poly5 var(double v) { Poly5 p; p.c[0] = v; p.c[1] = 1; return p; }
    friend Poly5 operator+(const Poly5& a, const Poly5& b) {
        Poly5 r;
        for (int i = 0; i < 5; ++i) r.c[i] = a.c[i] + b.c[i];
        return r;
    }
    friend Poly5 operator-(const Poly5& a, const Poly5& b) {
        Poly5 r;
        for (int i = 0; i < 5; ++i) r.c[i] = a.c[i] - b.c[i];
        return r;
    }
    friend Poly5 operator*(const Poly5& a, const Poly5& b) {
        Poly5 r;
        for (int i = 0; i < 5; ++i)
            for (int j = 0; i + j < 5; ++j) r.c[i + j] += a.c[i] * b.c[j];
        return r;
    }
    friend Poly5 operator*(double s, Poly5 a) {
        for (auto& v : a.c) v *= s;
        return a;
    }
};

Poly5 recip5(const Poly5& f) {
    Poly5 u = f;
    double c0 = f.c[0];
    u.c[0] = 0;
    u = (1.0 / c0) * u;
    Poly5 r(1.0), term(1.0);
    for (int k = 1; k <= 4; ++k) {
        term = term * u;
        r = (k % 2) ? r - term : r + term;
    }
    return (1.0 / c0) * r;
}

Poly5 exp5(const Poly5& f) {
    Poly5 u = f;
    u.c[0] = 0;
    double e = std::exp(f.c[0]);
    Poly5 r(1.0), term(1.0);
    double fact = 1;
    for (int k = 1; k <= 4; ++k) {
        term = term * u;
        fact *= k;
        r = r + (1.0 / fact) * term;
    }
    return e * r;
}

}  // namespace

// ------------------------------------------------------- smoothing potential

namespace {

constexpr double kSeriesSplit = 1.5431;  // ~cosh(1); below this use the u^2 series
constexpr int kSeriesTerms = 16;

// (sinh 2u - 2u) = (4u^3/3)(1 + sum_{k>=1} a_k x^k),  x = u^2
double series_a_coeff(int k) {
    double num = 3.0 * std::pow(2.0, 2 * k + 1);
    double den = 1.0;
    for (int i = 2; i <= 2 * k + 3; ++i) den *= i;
    return num / den;
}

// sinh(u)/u = 1 + sum_{k>=1} b_k x^k
double series_b_coeff(int k) {
    double den = 1.0;
    for (int i = 2; i <= 2 * k + 1; ++i) den *= i;
    return 1.0 / den;
}

// cosh(sqrt(x)) = sum_k x^k/(2k)!  and its derivative in x
template <int N>
Jet<N> cosh_sqrt(const Jet<N>& x) {
    Jet<N> s(cd(0));
    for (int k = kSeriesTerms; k >= 1; --k) {
        double den = 1.0;
        for (int i = 2; i <= 2 * k; ++i) den *= i;
        s = (s + 1.0 / den) * x;
    }
    return s + 1.0;
}

template <int N>
Jet<N> cosh_sqrt_deriv(const Jet<N>& x) {
    Jet<N> s(cd(0));
    for (int k = kSeriesTerms; k >= 2; --k) {
        double den = 1.0;
        for (int i = 2; i <= 2 * k; ++i) den *= i;
        s = (s + k / den) * x;
    }
    return s + 0.5;
}

double integrand_cbrt(double tau) { return std::cbrt(std::sinh(2 * tau) - 2 * tau); }

}  // namespace

SmoothingPotential::SmoothingPotential(cd t) : abst_(std::abs(t)) {
    if (abst_ == 0.0)
        throw OutsideDomainError("t = 0: the smoothing potential degenerates; use the cone potential");
}

double SmoothingPotential::value_with_tol(double s, double tol) const {
    if (s < abst_ * (1.0 - 1e-12))
        throw OutsideDomainError("smoothing potential requires s >= |t|");
    double v = std::max(s / abst_, 1.0);
    double u = std::acosh(v);
    if (u == 0.0) return 0.0;
    double integral = adaptive_quadrature(integrand_cbrt, 0.0, u, tol);
    return std::cbrt(0.5) * std::pow(abst_, 2.0 / 3.0) * integral;
}

double SmoothingPotential::operator()(double s) const { return value_with_tol(s, 1e-12); }

template <int N>
Jet<N> SmoothingPotential::Fprime_jet(double v0) const {
    const double kappa = std::cbrt(2.0 / 3.0);
    Jet<N> v = Jet<N>::variable(0, v0);
    if (v0 < kSeriesSplit) {
        // solve cosh(sqrt(x)) = v for x = u^2 by Newton in the jet ring
        double u0 = std::acosh(v0);
        Jet<N> x(cd(u0 * u0));
        for (int it = 0; it < 8 + N; ++it)
            x = x - (cosh_sqrt(x) - v) * recip(cosh_sqrt_deriv(x));
        Jet<N> A(cd(0)), B(cd(0));
        for (int k = kSeriesTerms; k >= 1; --k) {
            A = (A + series_a_coeff(k)) * x;
            B = (B + series_b_coeff(k)) * x;
        }
        return kappa * pow_jet(A + 1.0, 1.0 / 3.0) * recip(B + 1.0);
    }
    // direct regime: u = log(v + sqrt(v^2 - 1)), sinh u = sqrt(v^2 - 1)
    Jet<N> w = sqrt_jet(v * v - 1.0);
    Jet<N> u = log_jet(v + w);
    Jet<N> e2u = exp_jet(u * 2.0);
    Jet<N> sinh2u = (e2u - recip(e2u)) * 0.5;
    return std::cbrt(0.5) * pow_jet(sinh2u - u * 2.0, 1.0 / 3.0) * recip(w);
}

void SmoothingPotential::dF(double v, int order, std::array<double, 5>& out) const {
    out.fill(0.0);
    out[0] = value_with_tol(v * abst_, 1e-12) / std::pow(abst_, 2.0 / 3.0);
    if (order == 0) return;
    auto fill = [&](const auto& fp, int n) {
        for (int k = 1; k <= n; ++k)
            out[k] = fp.deriv({k - 1, 0, 0}, {0, 0, 0}).real();
    };
    switch (order) {
        case 1:
        case 2: fill(Fprime_jet<1>(v), order); break;
        case 3: fill(Fprime_jet<2>(v), 3); break;
        default: fill(Fprime_jet<3>(v), 4); break;
    }
}

ScalarJet SmoothingPotential::jet(double s, int order) const {
    if (s < abst_ * (1.0 - 1e-12))
        throw OutsideDomainError("smoothing potential requires s >= |t|");
    double v = std::max(s / abst_, 1.0);
    std::array<double, 5> F{};
    dF(v, order, F);
    ScalarJet j;
    // f_t(s) = |t|^{2/3} F(s/|t|)
    for (int k = 0; k <= order; ++k) j.d[k] = std::pow(abst_, 2.0 / 3.0 - k) * F[k];
    return j;
}

// ------------------------------------------------------- resolution profile

ResolutionProfile::ResolutionProfile(double a) : a_(a) {
    if (a <= 0.0) throw OutsideDomainError("resolution profile requires a > 0");
}

double ResolutionProfile::y_of(double x) const {
    if (x < 0.0) throw OutsideDomainError("resolution profile requires x >= 0");
    if (x == 0.0) return 0.0;
    double hi = std::min(std::cbrt(x * x), x / (std::sqrt(6.0) * a_));
    double lo = 0.0, y = hi;
    auto N = [&](double yy) { return yy * yy * yy + 6 * a_ * a_ * yy * yy - x * x; };
    for (int it = 0; it < 200; ++it) {
        double fval = N(y);
        if (fval > 0) hi = y; else lo = y;
        double dp = 3 * y * y + 12 * a_ * a_ * y;
        double next = y - fval / dp;
        if (!(next >= lo && next <= hi)) next = 0.5 * (lo + hi);
        if (std::abs(next - y) < 1e-16 * std::max(1e-300, y)) { y = next; break; }
        y = next;
    }
    return y;
}

ScalarJet ResolutionProfile::y_jet(double x, int order) const {
    double y0 = y_of(x);
    ScalarJet j;
    if (x == 0.0) {
        j.d[0] = 0.0;
        if (order >= 1) j.d[1] = 1.0 / (std::sqrt(6.0) * a_);
        return j;
    }
    Jet4 xj = Jet4::variable(0, x);
    Jet4 y(cd(y0));
    for (int it = 0; it < 8; ++it) {
        Jet4 g = y * y * y + (6 * a_ * a_) * y * y - xj * xj;
        y = y - g * recip(3.0 * y * y + (12 * a_ * a_) * y);
    }
    for (int k = 0; k <= order; ++k) j.d[k] = y.deriv({k, 0, 0}, {0, 0, 0}).real();
    return j;
}

double ResolutionProfile::f(double x) const {
    if (x < 0.0) throw OutsideDomainError("resolution profile requires x >= 0");
    if (x == 0.0) return 0.0;
    auto integrand = [&](double xi) {
        return xi > 0 ? y_of(xi) / xi : 1.0 / (std::sqrt(6.0) * a_);
    };
    return adaptive_quadrature(integrand, 0.0, x, 1e-12);
}

ScalarJet ResolutionProfile::f_jet(double x, int order) const {
    ScalarJet j;
    j.d[0] = f(x);
    if (order == 0) return j;
    if (x == 0.0) {
        j.d[1] = 1.0 / (std::sqrt(6.0) * a_);
        return j;  // higher jets at the cone point are not needed
    }
    // f' = y/x, then differentiate the quotient in the jet ring
    ScalarJet y = y_jet(x, order - 1);
    Jet4 xj = Jet4::variable(0, x);
    Jet4 dx = xj - cd(x);
    Jet4 yj(cd(0)), pw(cd(1));
    double fact = 1;
    for (int k = 0; k <= order - 1; ++k) {
        yj += (y.d[k] / fact) * pw;
        pw = pw * dx;
        fact *= (k + 1);
    }
    Jet4 fp = yj * recip(xj);
    for (int k = 1; k <= order; ++k) j.d[k] = fp.deriv({k - 1, 0, 0}, {0, 0, 0}).real();
    return j;
}

// ------------------------------------------------------- f_1 asymptotics

F1Asymptotics f1_asymptotics(const std::vector<double>& x_grid) {
    if (x_grid.size() < 6) throw FitFailureError("f1_asymptotics: need at least 6 grid points");
    std::vector<double> xs = x_grid;
    std::sort(xs.begin(), xs.end());
    if (xs.front() < 1e2 || xs.back() > 1e8 || xs.back() / xs.front() < 10.0)
        throw FitFailureError("f1_asymptotics: grid must span at least a decade inside [1e2, 1e8]");

    ResolutionProfile p1(1.0);
    size_t n = xs.size();
    std::vector<double> rem(n);
    for (size_t i = 0; i < n; ++i)
        rem[i] = p1.f(xs[i]) - 1.5 * std::pow(xs[i], 2.0 / 3.0) + 2.0 * std::log(xs[i]);

    // extrapolate assuming remainder = c0 + c1 x^{-2/3} + o(x^{-2/3})
    double w1 = std::pow(xs[n - 2], -2.0 / 3.0), w2 = std::pow(xs[n - 1], -2.0 / 3.0);
    double c0 = (rem[n - 1] * w1 - rem[n - 2] * w2) / (w1 - w2);

    F1Asymptotics out;
    out.c0_hat = c0;
    double top = xs.back() / 10.0;
    double lo = 1e300, hi = -1e300;
    for (size_t i = 0; i < n; ++i)
        if (xs[i] >= top) { lo = std::min(lo, rem[i]); hi = std::max(hi, rem[i]); }
    out.cauchy_gap = hi - lo;

    std::vector<double> lx, ly;
    for (size_t i = 0; i + 2 < n; ++i) {
        double d = std::abs(rem[i] - c0);
        if (d > 1e-12 * std::max(1.0, std::abs(c0))) {
            lx.push_back(std::log(xs[i]));
            ly.push_back(std::log(d));
        }
    }
    if (lx.size() < 4) throw FitFailureError("f1_asymptotics: too few usable points for the slope fit");
    double mx = 0, my = 0;
    for (size_t i = 0; i < lx.size(); ++i) { mx += lx[i]; my += ly[i]; }
    mx /= lx.size();
    my /= ly.size();
    double sxx = 0, sxy = 0, syy = 0;
    for (size_t i = 0; i < lx.size(); ++i) {
        sxx += (lx[i] - mx) * (lx[i] - mx);
        sxy += (lx[i] - mx) * (ly[i] - my);
        syy += (ly[i] - my) * (ly[i] - my);
    }
    out.correction_exponent = sxy / sxx;
    out.fit_r2 = syy > 0 ? (sxy * sxy) / (sxx * syy) : 1.0;
    return out;
}

// ------------------------------------------------------- gluing cutoff

namespace {

// bump derivatives 0..4 at tau, for the mollifier of half-width h (unit mass
// is enforced by the caller through `mass`)
std::array<double, 5> bump_jet(double tau, double h, double mass) {
    std::array<double, 5> out{};
    double y = tau / h;
    if (std::abs(y) >= 1.0) return out;
    Poly5 tj = Poly5::var(tau);
    Poly5 g = -1.0 * recip5(Poly5(1.0) - (1.0 / (h * h)) * (tj * tj));
    Poly5 phi = (1.0 / mass) * exp5(g);
    double fact = 1;
    for (int k = 0; k <= 4; ++k) {
        out[k] = phi.c[k] * fact;
        fact *= (k + 1);
    }
    return out;
}

double bump_mass(double h) {
    const auto& [x, w] = gauss_legendre(64);
    double m = 0;
    for (int i = 0; i < 64; ++i) {
        double tau = h * x[i];
        m += h * w[i] * std::exp(-1.0 / (1.0 - (tau / h) * (tau / h)));
    }
    return m;
}

}  // namespace

double CutoffProfile::v(double s) const {
    if (s <= 5.0) return 1.0;
    if (s >= S) return 0.0;
    return a / (s * s * s) + b / (s * s) + c * s * s + d;
}

double CutoffProfile::vp(double s) const {
    if (s <= 5.0 || s >= S) return 0.0;
    return -3 * a / (s * s * s * s) - 2 * b / (s * s * s) + 2 * c * s;
}

double CutoffProfile::chi(double s) const {
    auto poly_int = [&](double t) { return -a / (2 * t * t) - b / t + c * t * t * t / 3 + d * t; };
    if (s <= 5.0) return s;
    if (s >= S) return chi_inf;
    return 5.0 + poly_int(s) - poly_int(5.0);
}

std::array<double, 5> CutoffProfile::chi_smooth_jet(double s) const {
    // (chi * phi)^(k)(s) = int chi(s - tau) phi^(k)(tau) dtau.  chi is only C^1
    // at the knots, so split the integral where s - tau crosses one; each piece
    // is then analytic and 64-node Gauss is exact to machine precision.
    double h = moll_half_width;
    static std::map<double, double> mass_cache;
    static std::mutex mu;
    double mass;
    {
        std::lock_guard<std::mutex> lock(mu);
        auto it = mass_cache.find(h);
        if (it == mass_cache.end()) it = mass_cache.emplace(h, bump_mass(h)).first;
        mass = it->second;
    }
    std::vector<double> cuts{-h, h};
    for (double knot : {5.0, S}) {
        double tstar = s - knot;
        if (tstar > -h && tstar < h) cuts.push_back(tstar);
    }
    std::sort(cuts.begin(), cuts.end());
    std::array<double, 5> out{};
    const auto& [x, w] = gauss_legendre(64);
    for (size_t seg = 0; seg + 1 < cuts.size(); ++seg) {
        double mid = 0.5 * (cuts[seg] + cuts[seg + 1]);
        double half = 0.5 * (cuts[seg + 1] - cuts[seg]);
        if (half <= 0) continue;
        for (int i = 0; i < 64; ++i) {
            double tau = mid + half * x[i];
            auto pd = bump_jet(tau, h, mass);
            double cs = chi(s - tau);
            for (int k = 0; k <= 4; ++k) out[k] += half * w[i] * pd[k] * cs;
        }
    }
    return out;
}

CutoffProfile fly_cutoff(double R) {
    if (R < 10.0) throw OutsideDomainError("fly_cutoff requires R >= 10");
    CutoffProfile p;
    p.R = R;
    double S = R * R - 1.0;
    p.S = S;

    // C^1 matching at s = 5 and s = S.  Eliminating (c, d) via
    //   c = (3a/2) S^-5 + b S^-4,   d = -(5a/2) S^-3 - 2 b S^-2
    // leaves a well-conditioned 2x2 system in (a, b); this keeps c and d
    // accurate even though they are O(R^-8) and O(R^-4).
    double S2 = S * S, S3 = S2 * S, S4 = S2 * S2, S5 = S4 * S;
    double A11 = 1.0 / 125.0 + 37.5 / S5 - 2.5 / S3;
    double A12 = 1.0 / 25.0 + 25.0 / S4 - 2.0 / S2;
    double A21 = -3.0 / 625.0 + 15.0 / S5;
    double A22 = -2.0 / 125.0 + 10.0 / S4;
    double det = A11 * A22 - A12 * A21;
    if (std::abs(det) < 1e-14) throw SolveError("fly_cutoff: singular matching system");
    p.a = A22 / det;
    p.b = -A21 / det;
    p.c = 1.5 * p.a / S5 + p.b / S4;
    p.d = -2.5 * p.a / S3 - 2.0 * p.b / S2;
    auto poly_int = [&](double t) { return -p.a / (2 * t * t) - p.b / t + p.c * t * t * t / 3 + p.d * t; };
    p.chi_inf = 5.0 + poly_int(S) - poly_int(5.0);

    auto div = [&](double s) { return 2.0 * p.v(s) / s + p.vp(s); };
    double mv = 1e300, md = 1e300;
    int n = 200000;
    double l0 = std::log(4.0), l1 = std::log(R * R);
    for (int i = 0; i <= n; ++i) {
        double s = std::exp(l0 + (l1 - l0) * i / n);
        mv = std::min(mv, p.v(s));
        md = std::min(md, div(s));
    }
    p.min_v = mv;
    p.min_div = md;
    return p;
}

}  // namespace conifold
