#pragma once

// Second-order forward-mode jets: value, gradient and Hessian in N variables.
// Elementary maps are templated on the scalar type, so pushing a seeded
// Jet<N> through a chain yields exact first and second partials.

#include <array>
#include <cmath>
#include <limits>

namespace vb {

template <int N>
struct Jet {
    static constexpr int nh = N * (N + 1) / 2;
    double v = 0.0;
    std::array<double, N> g{};
    std::array<double, nh> h{};

    Jet() = default;
    Jet(double value) : v(value) {}  // NOLINT: constants promote implicitly

    static Jet var(double value, int i) {
        Jet r(value);
        r.g[i] = 1.0;
        return r;
    }

    static constexpr int idx(int i, int j) {
        if (i > j) { int t = i; i = j; j = t; }
        return i * N - i * (i - 1) / 2 + (j - i);
    }
    double hess(int i, int j) const { return h[idx(i, j)]; }

    Jet& operator+=(const Jet& o) {
        v += o.v;
        for (int i = 0; i < N; ++i) g[i] += o.g[i];
        for (int k = 0; k < nh; ++k) h[k] += o.h[k];
        return *this;
    }
    Jet& operator-=(const Jet& o) {
        v -= o.v;
        for (int i = 0; i < N; ++i) g[i] -= o.g[i];
        for (int k = 0; k < nh; ++k) h[k] -= o.h[k];
        return *this;
    }
    Jet& operator*=(double s) {
        v *= s;
        for (auto& x : g) x *= s;
        for (auto& x : h) x *= s;
        return *this;
    }
    Jet& operator*=(const Jet& o) { return *this = *this * o; }
    Jet& operator/=(const Jet& o) { return *this = *this / o; }
    Jet& operator/=(double s) { return *this *= (1.0 / s); }

    friend Jet operator+(Jet a, const Jet& b) { return a += b; }
    friend Jet operator-(Jet a, const Jet& b) { return a -= b; }
    friend Jet operator+(Jet a, double b) { a.v += b; return a; }
    friend Jet operator+(double b, Jet a) { a.v += b; return a; }
    friend Jet operator-(Jet a, double b) { a.v -= b; return a; }
    friend Jet operator-(double b, const Jet& a) { return -a + b; }
    friend Jet operator-(Jet a) { return a *= -1.0; }
    friend Jet operator*(Jet a, double s) { return a *= s; }
    friend Jet operator*(double s, Jet a) { return a *= s; }
    friend Jet operator/(Jet a, double s) { return a *= (1.0 / s); }

    friend Jet operator*(const Jet& a, const Jet& b) {
        Jet r;
        r.v = a.v * b.v;
        for (int i = 0; i < N; ++i) r.g[i] = a.g[i] * b.v + a.v * b.g[i];
        for (int i = 0; i < N; ++i)
            for (int j = i; j < N; ++j) {
                const int k = idx(i, j);
                r.h[k] = a.h[k] * b.v + a.v * b.h[k] + a.g[i] * b.g[j] + a.g[j] * b.g[i];
            }
        return r;
    }
    friend Jet operator/(const Jet& a, const Jet& b) { return a * recip(b); }
    friend Jet operator/(double a, const Jet& b) { return recip(b) * a; }

    // f(x) given f, f', f'' at x.v
    friend Jet chain(const Jet& x, double f0, double f1, double f2) {
        Jet r;
        r.v = f0;
        for (int i = 0; i < N; ++i) r.g[i] = f1 * x.g[i];
        for (int i = 0; i < N; ++i)
            for (int j = i; j < N; ++j) {
                const int k = idx(i, j);
                r.h[k] = f1 * x.h[k] + f2 * x.g[i] * x.g[j];
            }
        return r;
    }
    friend Jet recip(const Jet& x) {
        const double iv = 1.0 / x.v;
        return chain(x, iv, -iv * iv, 2.0 * iv * iv * iv);
    }
    friend Jet sin(const Jet& x) {
        const double s = std::sin(x.v), c = std::cos(x.v);
        return chain(x, s, c, -s);
    }
    friend Jet cos(const Jet& x) {
        const double s = std::sin(x.v), c = std::cos(x.v);
        return chain(x, c, -s, -c);
    }
    friend Jet exp(const Jet& x) {
        const double e = std::exp(x.v);
        return chain(x, e, e, e);
    }
    friend Jet log(const Jet& x) {
        const double iv = 1.0 / x.v;
        return chain(x, std::log(x.v), iv, -iv * iv);
    }
    friend Jet sqrt(const Jet& x) {
        const double s = std::sqrt(x.v);
        return chain(x, s, 0.5 / s, -0.25 / (s * x.v));
    }
    // atan2 through the local angle z = (x0 y - y0 x)/(x0 x + y0 y), whose value is 0.
    friend Jet atan2(const Jet& y, const Jet& x) {
        const double t0 = std::atan2(y.v, x.v);
        Jet num = x.v * y - y.v * x;
        Jet den = x.v * x + y.v * y;
        Jet z = num / den;
        z.v = 0.0;
        Jet r = chain(z, 0.0, 1.0, 0.0);
        r.v = t0;
        return r;
    }
};

inline double value(double x) { return x; }
template <int N>
double value(const Jet<N>& x) { return x.v; }

template <class T>
inline T nan_like() { return T(std::numeric_limits<double>::quiet_NaN()); }

using Jet2 = Jet<2>;
using Jet3 = Jet<3>;

}  // namespace vb
