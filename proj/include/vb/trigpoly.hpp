#pragma once

#include <complex>
#include <cstddef>
#include <string>
#include <vector>

#include "vb/errors.hpp"

namespace vb {

using cplx = std::complex<double>;

enum class ScalarKind { Real, Complex };

inline constexpr int kDefaultHarmonicCap = 256;

// c0 + sum_n (a_n cos n theta + b_n sin n theta), coefficients stored as complex
// numbers; `kind` records whether any imaginary part is allowed.
class TrigPoly {
public:
    TrigPoly() = default;
    explicit TrigPoly(double c) : c0_(c) {}
    TrigPoly(cplx c0, std::vector<cplx> cos_coeffs, std::vector<cplx> sin_coeffs);

    static TrigPoly constant(cplx c);
    static TrigPoly cos_n(int n, double a = 1.0);
    static TrigPoly sin_n(int n, double a = 1.0);
    // c e^{i n theta}, any integer n
    static TrigPoly exp_i(int n, cplx c = 1.0);
    static TrigPoly real_coeffs(double c0, const std::vector<double>& a,
                                const std::vector<double>& b);

    ScalarKind kind() const { return kind_; }
    bool is_real() const { return kind_ == ScalarKind::Real; }
    int max_harmonic() const { return static_cast<int>(cos_.size()); }
    cplx constant_term() const { return c0_; }
    cplx cos_coeff(int n) const;
    cplx sin_coeff(int n) const;
    const std::vector<cplx>& cos_coeffs() const { return cos_; }
    const std::vector<cplx>& sin_coeffs() const { return sin_; }

    cplx eval(double theta) const;

    // Real polynomials only; T may be a jet.  Harmonics by the Chebyshev-like
    // recurrence on (cos theta, sin theta).
    template <class T>
    T eval_cs(const T& c, const T& s) const {
        T acc = T(c0_.real());
        T cn = c, sn = s;
        const int m = max_harmonic();
        for (int n = 1; n <= m; ++n) {
            const double a = cos_[n - 1].real(), b = sin_[n - 1].real();
            if (a != 0.0) acc += a * cn;
            if (b != 0.0) acc += b * sn;
            if (n < m) {
                T cn1 = cn * c - sn * s;
                T sn1 = sn * c + cn * s;
                cn = cn1;
                sn = sn1;
            }
        }
        return acc;
    }
    template <class T>
    T eval_real(const T& theta) const {
        using std::cos;
        using std::sin;
        return eval_cs(cos(theta), sin(theta));
    }

    double sup_bound() const;  // sum of |coefficients|
    TrigPoly real_part() const;
    TrigPoly imag_part() const;
    TrigPoly trimmed() const;
    bool is_zero(double tol = 0.0) const;
    double max_coeff_diff(const TrigPoly& o) const;
    std::string to_string() const;

    friend TrigPoly operator+(const TrigPoly& a, const TrigPoly& b);
    friend TrigPoly operator-(const TrigPoly& a, const TrigPoly& b);
    friend TrigPoly operator-(const TrigPoly& a);
    friend TrigPoly operator*(cplx s, const TrigPoly& a);
    friend TrigPoly operator*(double s, const TrigPoly& a);

private:
    void refresh_kind();

    cplx c0_{0.0};
    std::vector<cplx> cos_, sin_;
    ScalarKind kind_ = ScalarKind::Real;
};

TrigPoly tp_derivative(const TrigPoly& p);
TrigPoly tp_multiply(const TrigPoly& p, const TrigPoly& q, int harmonic_cap = kDefaultHarmonicCap);
cplx tp_integrate_period(const TrigPoly& p);

// Least-squares fit by discrete Fourier sums of samples f(2 pi j / n), j < n.
TrigPoly tp_fit_samples(const std::vector<double>& samples, int max_harmonic, double trim_tol);

struct CircleField {
    TrigPoly component;
};

CircleField circle_bracket(const CircleField& v, const CircleField& w);
cplx gelfand_fuchs(const CircleField& v, const CircleField& w);
cplx heisenberg_cocycle(const CircleField& v, const CircleField& w);

}  // namespace vb
