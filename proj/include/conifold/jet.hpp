#pragma once

// Truncated polynomial jets in the six variables (w1,w2,w3,conj w1,conj w2,conj w3),
// used as a forward-mode AD scalar.  A Jet<N> stores all mixed partials
// d^a_w d^b_{wbar} up to total order N at a point, treating w and wbar as
// independent variables.  Coefficients are Taylor coefficients (derivative
// divided by multi-index factorial), so products truncate cleanly.

#include <array>
#include <cassert>
#include <cmath>
#include <complex>
#include <cstdint>
#include <vector>

#include <Eigen/Core>

namespace conifold {

using cd = std::complex<double>;

namespace jet_detail {

inline constexpr int kVars = 6;

struct MonoTable {
    std::vector<std::array<std::uint8_t, kVars>> mono;  // graded-lex list of multi-indices
    std::vector<int> lookup;                            // mixed-radix encode -> position
    std::vector<std::array<int, 3>> products;           // (i, j, k): mono[i]*mono[j] -> mono[k]
    std::vector<int> conj_perm;                         // swap w-block and wbar-block
    std::vector<double> factorial;                      // prod of alpha_i! per mono
    int order = 0;

    int encode(const std::array<std::uint8_t, kVars>& a) const {
        int idx = 0;
        for (int v = 0; v < kVars; ++v) idx = idx * (order + 1) + a[v];
        return idx;
    }

    explicit MonoTable(int n) : order(n) {
        std::array<std::uint8_t, kVars> a{};
        // enumerate all multi-indices with |a| <= n, graded then lex
        std::vector<std::array<std::uint8_t, kVars>> all;
        for (int total = 0; total <= n; ++total) {
            std::array<std::uint8_t, kVars> cur{};
            // recursive enumeration without recursion: odometer over compositions
            std::vector<std::array<std::uint8_t, kVars>> level;
            std::array<int, kVars> stack{};
            // simple recursive lambda
            auto rec = [&](auto&& self, int var, int rem) -> void {
                if (var == kVars - 1) {
                    cur[var] = static_cast<std::uint8_t>(rem);
                    level.push_back(cur);
                    return;
                }
                for (int k = rem; k >= 0; --k) {
                    cur[var] = static_cast<std::uint8_t>(k);
                    self(self, var + 1, rem - k);
                }
            };
            (void)stack;
            rec(rec, 0, total);
            for (auto& m : level) all.push_back(m);
        }
        mono = std::move(all);
        lookup.assign(1, -1);
        int span = 1;
        for (int v = 0; v < kVars; ++v) span *= (n + 1);
        lookup.assign(span, -1);
        for (int i = 0; i < static_cast<int>(mono.size()); ++i) lookup[encode(mono[i])] = i;

        for (int i = 0; i < static_cast<int>(mono.size()); ++i) {
            int oi = 0;
            for (int v = 0; v < kVars; ++v) oi += mono[i][v];
            for (int j = 0; j < static_cast<int>(mono.size()); ++j) {
                int oj = 0;
                for (int v = 0; v < kVars; ++v) oj += mono[j][v];
                if (oi + oj > n) continue;
                std::array<std::uint8_t, kVars> s{};
                for (int v = 0; v < kVars; ++v) s[v] = static_cast<std::uint8_t>(mono[i][v] + mono[j][v]);
                products.push_back({i, j, lookup[encode(s)]});
            }
        }
        conj_perm.resize(mono.size());
        for (int i = 0; i < static_cast<int>(mono.size()); ++i) {
            std::array<std::uint8_t, kVars> s{};
            for (int v = 0; v < 3; ++v) { s[v] = mono[i][v + 3]; s[v + 3] = mono[i][v]; }
            conj_perm[i] = lookup[encode(s)];
        }
        factorial.resize(mono.size());
        auto fact = [](int k) { double f = 1; for (int i = 2; i <= k; ++i) f *= i; return f; };
        for (int i = 0; i < static_cast<int>(mono.size()); ++i) {
            double f = 1;
            for (int v = 0; v < kVars; ++v) f *= fact(mono[i][v]);
            factorial[i] = f;
        }
    }
};

template <int N>
const MonoTable& table() {
    static const MonoTable t(N);
    return t;
}

constexpr int mono_count(int n) {
    // C(n+6, 6) terms in 6 variables up to total order n
    long num = 1, den = 1;
    for (int i = 1; i <= 6; ++i) { num *= (n + i); den *= i; }
    return static_cast<int>(num / den);
}

}  // namespace jet_detail

template <int N>
class Jet {
  public:
    static constexpr int Order = N;
    static constexpr int Count = jet_detail::mono_count(N);

    Jet() { c_.fill(cd(0)); }
    Jet(double v) : Jet() { c_[0] = v; }        // NOLINT: implicit by design
    Jet(const cd& v) : Jet() { c_[0] = v; }     // NOLINT

    static Jet variable(int var, cd value) {
        Jet j;
        j.c_[0] = value;
        if constexpr (N >= 1) {
            std::array<std::uint8_t, 6> a{};
            a[var] = 1;
            j.c_[jet_detail::table<N>().lookup[jet_detail::table<N>().encode(a)]] = cd(1);
        }
        return j;
    }

    cd value() const { return c_[0]; }
    cd& raw(int i) { return c_[i]; }
    const cd& raw(int i) const { return c_[i]; }

    // mixed partial d^{a}_w d^{b}_{wbar}; a,b are 3-vectors of exponents
    cd deriv(const std::array<int, 3>& a, const std::array<int, 3>& b) const {
        std::array<std::uint8_t, 6> m{};
        int tot = 0;
        for (int v = 0; v < 3; ++v) { m[v] = static_cast<std::uint8_t>(a[v]); tot += a[v]; }
        for (int v = 0; v < 3; ++v) { m[v + 3] = static_cast<std::uint8_t>(b[v]); tot += b[v]; }
        assert(tot <= N);
        const auto& t = jet_detail::table<N>();
        int i = t.lookup[t.encode(m)];
        return c_[i] * t.factorial[i];
    }

    Jet operator-() const {
        Jet r;
        for (int i = 0; i < Count; ++i) r.c_[i] = -c_[i];
        return r;
    }
    Jet& operator+=(const Jet& o) { for (int i = 0; i < Count; ++i) c_[i] += o.c_[i]; return *this; }
    Jet& operator-=(const Jet& o) { for (int i = 0; i < Count; ++i) c_[i] -= o.c_[i]; return *this; }
    Jet& operator*=(const cd& s) { for (int i = 0; i < Count; ++i) c_[i] *= s; return *this; }
    Jet& operator*=(const Jet& o) { *this = (*this) * o; return *this; }
    Jet& operator/=(const Jet& o) { *this = (*this) / o; return *this; }

    friend Jet operator+(Jet a, const Jet& b) { a += b; return a; }
    friend Jet operator-(Jet a, const Jet& b) { a -= b; return a; }
    friend Jet operator*(const Jet& a, const Jet& b) {
        Jet r;
        const auto& t = jet_detail::table<N>();
        for (const auto& p : t.products) r.c_[p[2]] += a.c_[p[0]] * b.c_[p[1]];
        return r;
    }
    friend Jet operator*(Jet a, const cd& s) { a *= s; return a; }
    friend Jet operator*(const cd& s, Jet a) { a *= s; return a; }
    friend Jet operator*(Jet a, double s) { a *= cd(s); return a; }
    friend Jet operator*(double s, Jet a) { a *= cd(s); return a; }
    friend Jet operator+(Jet a, const cd& s) { a.c_[0] += s; return a; }
    friend Jet operator+(const cd& s, Jet a) { a.c_[0] += s; return a; }
    friend Jet operator-(Jet a, const cd& s) { a.c_[0] -= s; return a; }
    friend Jet operator-(const cd& s, const Jet& a) { return (-a) + s; }
    friend Jet operator/(const Jet& a, const Jet& b) { return a * recip(b); }
    friend Jet operator/(Jet a, const cd& s) { a *= cd(1) / s; return a; }
    friend Jet operator/(const cd& s, const Jet& b) { return recip(b) * s; }
    friend bool operator==(const Jet& a, const Jet& b) { return a.c_ == b.c_; }
    friend bool operator!=(const Jet& a, const Jet& b) { return !(a == b); }

    // 1/f for f with nonzero constant term: 1/(c(1+u)) = (1/c) sum (-u)^k
    friend Jet recip(const Jet& f) {
        cd c0 = f.c_[0];
        assert(std::abs(c0) > 0);
        Jet u = f * (cd(1) / c0);
        u.c_[0] = cd(0);
        Jet r(cd(1)), term(cd(1));
        for (int k = 1; k <= N; ++k) {
            term = term * u;
            double sgn = (k % 2) ? -1.0 : 1.0;
            r += term * cd(sgn);
        }
        return r * (cd(1) / c0);
    }

    // conjugate jet: swaps the w-block with the wbar-block and conjugates
    // coefficients.  This is the polarization of complex conjugation of a
    // function evaluated on the diagonal wbar = conj(w).
    friend Jet conj_jet(const Jet& f) {
        Jet r;
        const auto& t = jet_detail::table<N>();
        for (int i = 0; i < Count; ++i) r.c_[t.conj_perm[i]] = std::conj(f.c_[i]);
        return r;
    }

    // formal partial derivative with respect to variable `var`
    Jet<(N > 0 ? N - 1 : 0)> d(int var) const {
        static_assert(N >= 1, "cannot differentiate an order-0 jet");
        Jet<N - 1> r;
        const auto& t = jet_detail::table<N>();
        const auto& tl = jet_detail::table<N - 1>();
        for (int i = 0; i < Count; ++i) {
            if (t.mono[i][var] == 0) continue;
            std::array<std::uint8_t, 6> m = t.mono[i];
            int e = m[var];
            m[var] = static_cast<std::uint8_t>(e - 1);
            r.raw(tl.lookup[tl.encode(m)]) = c_[i] * double(e);
        }
        return r;
    }

    template <int M>
    Jet<M> truncate() const {
        static_assert(M <= N);
        Jet<M> r;
        const auto& t = jet_detail::table<N>();
        const auto& tm = jet_detail::table<M>();
        for (int i = 0; i < Jet<M>::Count; ++i) r.raw(i) = c_[t.lookup[t.encode(tm_mono(tm, i))]];
        return r;
    }

  private:
    template <class T>
    static std::array<std::uint8_t, 6> tm_mono(const T& tm, int i) { return tm.mono[i]; }

    std::array<cd, Count> c_;
};

// Compose a univariate Taylor expansion g (coefficients g[k] of (x - x0)^k,
// k = 0..N) with a jet whose constant term is x0.
template <int N>
Jet<N> compose1(const std::array<cd, N + 1>& g, const Jet<N>& f) {
    Jet<N> u = f;
    u = u - f.value();
    Jet<N> r(g[N]);
    for (int k = N - 1; k >= 0; --k) r = r * u + g[k];
    return r;
}

// pow with real exponent, principal branch at the constant term;
// g[k] = p(p-1)...(p-k+1)/k! * c0^{p-k}
template <int N>
Jet<N> pow_jet(const Jet<N>& f, double p) {
    cd c0 = f.value();
    assert(std::abs(c0) > 0);
    std::array<cd, N + 1> g{};
    cd ck = std::pow(c0, p);
    double fall = 1, fact = 1;
    for (int k = 0; k <= N; ++k) {
        g[k] = ck * fall / fact;
        ck /= c0;
        fall *= (p - k);
        fact *= (k + 1);
    }
    return compose1<N>(g, f);
}

template <int N>
Jet<N> sqrt_jet(const Jet<N>& f) { return pow_jet(f, 0.5); }

template <int N>
Jet<N> log_jet(const Jet<N>& f) {
    cd c0 = f.value();
    assert(std::abs(c0) > 0);
    std::array<cd, N + 1> g{};
    g[0] = std::log(c0);
    cd ck = cd(1);
    for (int k = 1; k <= N; ++k) {
        ck /= c0;
        g[k] = ((k % 2) ? 1.0 : -1.0) * ck / double(k);
    }
    return compose1<N>(g, f);
}

template <int N>
Jet<N> exp_jet(const Jet<N>& f) {
    cd e = std::exp(f.value());
    std::array<cd, N + 1> g{};
    double fact = 1;
    for (int k = 0; k <= N; ++k) { g[k] = e / fact; fact *= (k + 1); }
    return compose1<N>(g, f);
}

using Jet1 = Jet<1>;
using Jet2 = Jet<2>;
using Jet3 = Jet<3>;
using Jet4 = Jet<4>;

// -- Eigen interop ------------------------------------------------------

template <int N>
using Mat3J = Eigen::Matrix<Jet<N>, 3, 3>;
template <int N>
using Mat4J = Eigen::Matrix<Jet<N>, 4, 4>;
template <int N>
using Vec3J = Eigen::Matrix<Jet<N>, 3, 1>;
template <int N>
using Vec4J = Eigen::Matrix<Jet<N>, 4, 1>;

// 3x3 inverse and determinant over the jet ring via cofactors (no pivoting:
// jets with invertible constant term form a local ring).
template <int N>
Jet<N> det3(const Mat3J<N>& m) {
    return m(0, 0) * (m(1, 1) * m(2, 2) - m(1, 2) * m(2, 1))
         - m(0, 1) * (m(1, 0) * m(2, 2) - m(1, 2) * m(2, 0))
         + m(0, 2) * (m(1, 0) * m(2, 1) - m(1, 1) * m(2, 0));
}

template <int N>
Mat3J<N> inv3(const Mat3J<N>& m) {
    Mat3J<N> adj;
    adj(0, 0) = m(1, 1) * m(2, 2) - m(1, 2) * m(2, 1);
    adj(0, 1) = m(0, 2) * m(2, 1) - m(0, 1) * m(2, 2);
    adj(0, 2) = m(0, 1) * m(1, 2) - m(0, 2) * m(1, 1);
    adj(1, 0) = m(1, 2) * m(2, 0) - m(1, 0) * m(2, 2);
    adj(1, 1) = m(0, 0) * m(2, 2) - m(0, 2) * m(2, 0);
    adj(1, 2) = m(0, 2) * m(1, 0) - m(0, 0) * m(1, 2);
    adj(2, 0) = m(1, 0) * m(2, 1) - m(1, 1) * m(2, 0);
    adj(2, 1) = m(0, 1) * m(2, 0) - m(0, 0) * m(2, 1);
    adj(2, 2) = m(0, 0) * m(1, 1) - m(0, 1) * m(1, 0);
    Jet<N> d = recip(det3(m));
    for (int i = 0; i < 3; ++i)
        for (int j = 0; j < 3; ++j) adj(i, j) = adj(i, j) * d;
    return adj;
}

template <int N>
Eigen::Matrix3cd value_of(const Mat3J<N>& m) {
    Eigen::Matrix3cd r;
    for (int i = 0; i < 3; ++i)
        for (int j = 0; j < 3; ++j) r(i, j) = m(i, j).value();
    return r;
}

template <int N, int M>
Mat3J<M> truncate3(const Mat3J<N>& m) {
    Mat3J<M> r;
    for (int i = 0; i < 3; ++i)
        for (int j = 0; j < 3; ++j) r(i, j) = m(i, j).template truncate<M>();
    return r;
}

}  // namespace conifold

namespace Eigen {
template <int N>
struct NumTraits<conifold::Jet<N>> {
    using Real = conifold::Jet<N>;
    using NonInteger = conifold::Jet<N>;
    using Nested = conifold::Jet<N>;
    using Literal = double;
    enum {
        IsComplex = 0,
        IsInteger = 0,
        IsSigned = 1,
        RequireInitialization = 1,
        ReadCost = conifold::Jet<N>::Count,
        AddCost = conifold::Jet<N>::Count,
        MulCost = conifold::Jet<N>::Count * 8,
    };
    static inline Real epsilon() { return Real(NumTraits<double>::epsilon()); }
    static inline Real dummy_precision() { return Real(NumTraits<double>::dummy_precision()); }
    static inline int digits10() { return NumTraits<double>::digits10(); }
};
}  // namespace Eigen
