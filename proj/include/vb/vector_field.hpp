#pragma once

#include <array>
#include <cmath>
#include <memory>
#include <optional>
#include <string>
#include <utility>

#include "vb/jet.hpp"
#include "vb/trigpoly.hpp"

namespace vb {

template <class T>
using Vec2 = std::array<T, 2>;

// Type-erased field evaluator.  polar_* return (V3, V4) at (r, theta);
// cart_* return (V1, V2) at (x, y).
class FieldExpr {
public:
    virtual ~FieldExpr() = default;
    virtual Vec2<double> polar(double r, double th) const = 0;
    virtual Vec2<Jet2> polar(const Jet2& r, const Jet2& th) const = 0;
    virtual Vec2<Jet3> polar(const Jet3& r, const Jet3& th) const = 0;
    virtual Vec2<double> cart(double x, double y) const = 0;
    virtual Vec2<Jet2> cart(const Jet2& x, const Jet2& y) const = 0;
    virtual Vec2<Jet3> cart(const Jet3& x, const Jet3& y) const = 0;
    // JSON text describing a named family, or empty if not serializable.
    virtual std::string describe() const { return {}; }
};

using FieldPtr = std::shared_ptr<const FieldExpr>;

template <class T>
Vec2<T> polar_to_cart_components(const Vec2<T>& v34, const T& r, const T& c, const T& s) {
    return {v34[0] * c - r * v34[1] * s, v34[0] * s + r * v34[1] * c};
}

template <class T>
Vec2<T> cart_to_polar_components(const Vec2<T>& v12, const T& r, const T& c, const T& s) {
    return {v12[0] * c + v12[1] * s, (v12[1] * c - v12[0] * s) / r};
}

// Derived supplies template<class T> Vec2<T> polar_t(const T& r, const T& th) const.
template <class Derived>
class PolarDefined : public FieldExpr {
public:
    Vec2<double> polar(double r, double th) const override { return self().polar_t(r, th); }
    Vec2<Jet2> polar(const Jet2& r, const Jet2& th) const override { return self().polar_t(r, th); }
    Vec2<Jet3> polar(const Jet3& r, const Jet3& th) const override { return self().polar_t(r, th); }
    Vec2<double> cart(double x, double y) const override { return cart_t(x, y); }
    Vec2<Jet2> cart(const Jet2& x, const Jet2& y) const override { return cart_t(x, y); }
    Vec2<Jet3> cart(const Jet3& x, const Jet3& y) const override { return cart_t(x, y); }

private:
    const Derived& self() const { return static_cast<const Derived&>(*this); }
    template <class T>
    Vec2<T> cart_t(const T& x, const T& y) const {
        using std::atan2;
        using std::sqrt;
        const T r = sqrt(x * x + y * y);
        const T c = x / r, s = y / r;
        return polar_to_cart_components(self().polar_t(r, atan2(y, x)), r, c, s);
    }
};

template <class Derived>
class CartDefined : public FieldExpr {
public:
    Vec2<double> cart(double x, double y) const override { return self().cart_t(x, y); }
    Vec2<Jet2> cart(const Jet2& x, const Jet2& y) const override { return self().cart_t(x, y); }
    Vec2<Jet3> cart(const Jet3& x, const Jet3& y) const override { return self().cart_t(x, y); }
    Vec2<double> polar(double r, double th) const override { return polar_t(r, th); }
    Vec2<Jet2> polar(const Jet2& r, const Jet2& th) const override { return polar_t(r, th); }
    Vec2<Jet3> polar(const Jet3& r, const Jet3& th) const override { return polar_t(r, th); }

private:
    const Derived& self() const { return static_cast<const Derived&>(*this); }
    template <class T>
    Vec2<T> polar_t(const T& r, const T& th) const {
        using std::cos;
        using std::sin;
        const T c = cos(th), s = sin(th);
        return cart_to_polar_components(self().cart_t(r * c, r * s), r, c, s);
    }
};

template <class F>
class PolarLambda final : public PolarDefined<PolarLambda<F>> {
public:
    PolarLambda(F f, std::string desc) : f_(std::move(f)), desc_(std::move(desc)) {}
    template <class T>
    Vec2<T> polar_t(const T& r, const T& th) const { return f_(r, th); }
    std::string describe() const override { return desc_; }

private:
    F f_;
    std::string desc_;
};

template <class F>
class CartLambda final : public CartDefined<CartLambda<F>> {
public:
    CartLambda(F f, std::string desc) : f_(std::move(f)), desc_(std::move(desc)) {}
    template <class T>
    Vec2<T> cart_t(const T& x, const T& y) const { return f_(x, y); }
    std::string describe() const override { return desc_; }

private:
    F f_;
    std::string desc_;
};

struct FieldFlags {
    bool genuine = false;
    bool asymptotically_radial = false;
    bool asymptotically_zero = false;
};

inline constexpr double kDefaultArEpsilon = 0.05;

class DiscVectorField {
public:
    // Boundary polys are fitted from samples at r = 1 unless given; either way
    // they are checked against the field at 64 angles.
    explicit DiscVectorField(FieldPtr expr, double ar_epsilon = kDefaultArEpsilon,
                             std::optional<std::pair<TrigPoly, TrigPoly>> boundary = std::nullopt);

    // f(r, theta) -> {V3, V4}, generic in the scalar type.
    template <class F>
    static DiscVectorField from_polar(F f, double ar_epsilon = kDefaultArEpsilon,
                                      std::optional<std::pair<TrigPoly, TrigPoly>> boundary = std::nullopt,
                                      std::string desc = {}) {
        return DiscVectorField(std::make_shared<PolarLambda<F>>(std::move(f), std::move(desc)),
                               ar_epsilon, std::move(boundary));
    }
    // f(x, y) -> {V1, V2}
    template <class F>
    static DiscVectorField from_cartesian(F f, double ar_epsilon = kDefaultArEpsilon, std::string desc = {}) {
        return DiscVectorField(std::make_shared<CartLambda<F>>(std::move(f), std::move(desc)),
                               ar_epsilon);
    }

    const FieldExpr& expr() const { return *expr_; }
    const FieldPtr& expr_ptr() const { return expr_; }
    const TrigPoly& boundary_v3() const { return bv3_; }
    const TrigPoly& boundary_v4() const { return bv4_; }
    const FieldFlags& flags() const { return flags_; }
    double ar_epsilon() const { return ar_eps_; }

    double v3(double r, double th) const { return expr_->polar(r, th)[0]; }
    double v4(double r, double th) const { return expr_->polar(r, th)[1]; }
    template <class T>
    Vec2<T> polar(const T& r, const T& th) const { return expr_->polar(r, th); }
    template <class T>
    Vec2<T> cart(const T& x, const T& y) const { return expr_->cart(x, y); }

    // Smallest sampled radius beyond which the field vanishes, for flows.
    bool vanishes_beyond(double radius) const;

private:
    FieldPtr expr_;
    TrigPoly bv3_, bv4_;
    FieldFlags flags_;
    double ar_eps_;
};

DiscVectorField operator+(const DiscVectorField& a, const DiscVectorField& b);
DiscVectorField operator-(const DiscVectorField& a, const DiscVectorField& b);
DiscVectorField operator*(double s, const DiscVectorField& a);

// Compactly supported Cartesian families usable as FlowMap generators.
// vortex: rotation about `center` with angular speed amp * psi'(q) profile,
// q = |z - center|^2 / radius^2; drift: psi(q) * (dx, dy).
DiscVectorField bump_vortex_field(double cx, double cy, double radius, double amp);
DiscVectorField bump_drift_field(double cx, double cy, double radius, double dx, double dy);

// psi(q) = exp(1 - 1/(1 - q)) for q < 1, else 0; flat at q = 1.
template <class T>
T bump_psi(const T& q) {
    using std::exp;
    if (value(q) >= 1.0) return T(0.0);
    return exp(1.0 - 1.0 / (1.0 - q));
}

}  // namespace vb
