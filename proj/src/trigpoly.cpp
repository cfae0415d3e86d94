#include "vb/trigpoly.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>
#include <sstream>

namespace vb {

namespace {

constexpr double kTwoPi = 2.0 * std::numbers::pi;

void pad(std::vector<cplx>& v, std::size_t n) {
    if (v.size() < n) v.resize(n, cplx{0.0});
}

}  // namespace

TrigPoly::TrigPoly(cplx c0, std::vector<cplx> cos_coeffs, std::vector<cplx> sin_coeffs)
    : c0_(c0), cos_(std::move(cos_coeffs)), sin_(std::move(sin_coeffs)) {
    const std::size_t n = std::max(cos_.size(), sin_.size());
    pad(cos_, n);
    pad(sin_, n);
    refresh_kind();
}

void TrigPoly::refresh_kind() {
    bool complex = c0_.imag() != 0.0;
    for (std::size_t i = 0; i < cos_.size() && !complex; ++i)
        complex = cos_[i].imag() != 0.0 || sin_[i].imag() != 0.0;
    kind_ = complex ? ScalarKind::Complex : ScalarKind::Real;
}

TrigPoly TrigPoly::constant(cplx c) { return TrigPoly(c, {}, {}); }

TrigPoly TrigPoly::cos_n(int n, double a) {
    if (n == 0) return TrigPoly(a);
    std::vector<cplx> c(n, 0.0), s(n, 0.0);
    c[n - 1] = a;
    return TrigPoly(0.0, c, s);
}

TrigPoly TrigPoly::sin_n(int n, double a) {
    if (n == 0) return TrigPoly();
    std::vector<cplx> c(n, 0.0), s(n, 0.0);
    s[n - 1] = a;
    return TrigPoly(0.0, c, s);
}

TrigPoly TrigPoly::exp_i(int n, cplx c) {
    if (n == 0) return constant(c);
    const int k = std::abs(n);
    std::vector<cplx> cc(k, 0.0), ss(k, 0.0);
    cc[k - 1] = c;
    ss[k - 1] = (n > 0 ? 1.0 : -1.0) * cplx(0.0, 1.0) * c;
    return TrigPoly(0.0, cc, ss);
}

TrigPoly TrigPoly::real_coeffs(double c0, const std::vector<double>& a, const std::vector<double>& b) {
    std::vector<cplx> ca(a.begin(), a.end()), cb(b.begin(), b.end());
    return TrigPoly(c0, ca, cb);
}

cplx TrigPoly::cos_coeff(int n) const {
    if (n == 0) return c0_;
    return n <= max_harmonic() ? cos_[n - 1] : cplx{0.0};
}

cplx TrigPoly::sin_coeff(int n) const {
    return (n >= 1 && n <= max_harmonic()) ? sin_[n - 1] : cplx{0.0};
}

cplx TrigPoly::eval(double theta) const {
    cplx acc = c0_;
    for (int n = 1; n <= max_harmonic(); ++n)
        acc += cos_[n - 1] * std::cos(n * theta) + sin_[n - 1] * std::sin(n * theta);
    return acc;
}

double TrigPoly::sup_bound() const {
    double s = std::abs(c0_);
    for (std::size_t i = 0; i < cos_.size(); ++i) s += std::abs(cos_[i]) + std::abs(sin_[i]);
    return s;
}

TrigPoly TrigPoly::real_part() const {
    std::vector<cplx> c(cos_.size()), s(sin_.size());
    for (std::size_t i = 0; i < c.size(); ++i) {
        c[i] = cos_[i].real();
        s[i] = sin_[i].real();
    }
    return TrigPoly(c0_.real(), c, s);
}

TrigPoly TrigPoly::imag_part() const {
    std::vector<cplx> c(cos_.size()), s(sin_.size());
    for (std::size_t i = 0; i < c.size(); ++i) {
        c[i] = cos_[i].imag();
        s[i] = sin_[i].imag();
    }
    return TrigPoly(c0_.imag(), c, s);
}

TrigPoly TrigPoly::trimmed() const {
    std::size_t n = cos_.size();
    while (n > 0 && cos_[n - 1] == 0.0 && sin_[n - 1] == 0.0) --n;
    return TrigPoly(c0_, {cos_.begin(), cos_.begin() + n}, {sin_.begin(), sin_.begin() + n});
}

bool TrigPoly::is_zero(double tol) const {
    if (std::abs(c0_) > tol) return false;
    for (std::size_t i = 0; i < cos_.size(); ++i)
        if (std::abs(cos_[i]) > tol || std::abs(sin_[i]) > tol) return false;
    return true;
}

double TrigPoly::max_coeff_diff(const TrigPoly& o) const {
    const TrigPoly d = *this - o;
    double m = std::abs(d.c0_);
    for (std::size_t i = 0; i < d.cos_.size(); ++i)
        m = std::max({m, std::abs(d.cos_[i]), std::abs(d.sin_[i])});
    return m;
}

std::string TrigPoly::to_string() const {
    std::ostringstream os;
    os.precision(17);
    auto put = [&](cplx c) {
        if (c.imag() == 0.0) os << c.real();
        else os << "(" << c.real() << (c.imag() < 0 ? "" : "+") << c.imag() << "i)";
    };
    put(c0_);
    for (int n = 1; n <= max_harmonic(); ++n) {
        if (cos_[n - 1] != 0.0) { os << " + "; put(cos_[n - 1]); os << " cos" << n; }
        if (sin_[n - 1] != 0.0) { os << " + "; put(sin_[n - 1]); os << " sin" << n; }
    }
    return os.str();
}

TrigPoly operator+(const TrigPoly& a, const TrigPoly& b) {
    const std::size_t n = std::max(a.cos_.size(), b.cos_.size());
    std::vector<cplx> c(n, 0.0), s(n, 0.0);
    for (std::size_t i = 0; i < a.cos_.size(); ++i) { c[i] += a.cos_[i]; s[i] += a.sin_[i]; }
    for (std::size_t i = 0; i < b.cos_.size(); ++i) { c[i] += b.cos_[i]; s[i] += b.sin_[i]; }
    return TrigPoly(a.c0_ + b.c0_, c, s);
}

TrigPoly operator-(const TrigPoly& a) { return cplx(-1.0) * a; }
TrigPoly operator-(const TrigPoly& a, const TrigPoly& b) { return a + (-b); }

TrigPoly operator*(cplx s, const TrigPoly& a) {
    std::vector<cplx> c(a.cos_), t(a.sin_);
    for (auto& x : c) x *= s;
    for (auto& x : t) x *= s;
    return TrigPoly(a.c0_ * s, c, t);
}

TrigPoly operator*(double s, const TrigPoly& a) { return cplx(s) * a; }

TrigPoly tp_derivative(const TrigPoly& p) {
    const int m = p.max_harmonic();
    std::vector<cplx> c(m), s(m);
    for (int n = 1; n <= m; ++n) {
        c[n - 1] = double(n) * p.sin_coeff(n);
        s[n - 1] = -double(n) * p.cos_coeff(n);
    }
    return TrigPoly(0.0, c, s);
}

TrigPoly tp_multiply(const TrigPoly& p, const TrigPoly& q, int harmonic_cap) {
    const int mp = p.max_harmonic(), mq = q.max_harmonic();
    const int m = mp + mq;
    if (m > harmonic_cap)
        throw HarmonicCapError("tp_multiply: product harmonic " + std::to_string(m) +
                               " exceeds cap " + std::to_string(harmonic_cap));
    std::vector<cplx> rc(m + 1, 0.0), rs(m + 1, 0.0);
    for (int n = 0; n <= mp; ++n) {
        const cplx an = p.cos_coeff(n), bn = p.sin_coeff(n);
        if (an == 0.0 && bn == 0.0) continue;
        for (int k = 0; k <= mq; ++k) {
            const cplx ck = q.cos_coeff(k), dk = q.sin_coeff(k);
            if (ck == 0.0 && dk == 0.0) continue;
            const int sum = n + k, diff = std::abs(n - k);
            const double sgn = n >= k ? 1.0 : -1.0;  // sin(n-k) = sgn sin|n-k|
            // cos n cos k
            rc[sum] += 0.5 * an * ck;
            rc[diff] += 0.5 * an * ck;
            // sin n sin k
            rc[diff] += 0.5 * bn * dk;
            rc[sum] -= 0.5 * bn * dk;
            // sin n cos k
            rs[sum] += 0.5 * bn * ck;
            if (diff) rs[diff] += sgn * 0.5 * bn * ck;
            // cos n sin k
            rs[sum] += 0.5 * an * dk;
            if (diff) rs[diff] -= sgn * 0.5 * an * dk;
        }
    }
    return TrigPoly(rc[0], {rc.begin() + 1, rc.end()}, {rs.begin() + 1, rs.end()});
}

cplx tp_integrate_period(const TrigPoly& p) { return kTwoPi * p.constant_term(); }

TrigPoly tp_fit_samples(const std::vector<double>& samples, int max_harmonic, double trim_tol) {
    const int n = static_cast<int>(samples.size());
    max_harmonic = std::min(max_harmonic, (n - 1) / 2);
    double c0 = 0.0;
    for (double f : samples) c0 += f;
    c0 /= n;
    std::vector<cplx> a(max_harmonic, 0.0), b(max_harmonic, 0.0);
    for (int k = 1; k <= max_harmonic; ++k) {
        double sa = 0.0, sb = 0.0;
        for (int j = 0; j < n; ++j) {
            const double t = kTwoPi * j / n;
            sa += samples[j] * std::cos(k * t);
            sb += samples[j] * std::sin(k * t);
        }
        sa *= 2.0 / n;
        sb *= 2.0 / n;
        a[k - 1] = std::abs(sa) > trim_tol ? sa : 0.0;
        b[k - 1] = std::abs(sb) > trim_tol ? sb : 0.0;
    }
    if (std::abs(c0) <= trim_tol) c0 = 0.0;
    return TrigPoly(c0, a, b).trimmed();
}

CircleField circle_bracket(const CircleField& v, const CircleField& w) {
    const TrigPoly& a = v.component;
    const TrigPoly& b = w.component;
    return {tp_multiply(a, tp_derivative(b)) - tp_multiply(tp_derivative(a), b)};
}

cplx gelfand_fuchs(const CircleField& v, const CircleField& w) {
    const TrigPoly vp = tp_derivative(v.component);
    const TrigPoly wpp = tp_derivative(tp_derivative(w.component));
    const cplx integral = tp_integrate_period(tp_multiply(vp, wpp));
    return integral / (cplx(0.0, 24.0 * std::numbers::pi));
}

cplx heisenberg_cocycle(const CircleField& v, const CircleField& w) {
    return tp_integrate_period(tp_multiply(tp_derivative(v.component), w.component));
}

}  // namespace vb
