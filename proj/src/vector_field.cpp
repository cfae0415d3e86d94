#include "vb/vector_field.hpp"

#include <cmath>
#include <numbers>
#include <sstream>
#include <vector>

namespace vb {

namespace {

constexpr double kTwoPi = 2.0 * std::numbers::pi;
constexpr int kBoundarySamples = 128;
constexpr int kCheckAngles = 64;

class LinComb final : public FieldExpr {
public:
    LinComb(FieldPtr a, double ca, FieldPtr b, double cb)
        : a_(std::move(a)), b_(std::move(b)), ca_(ca), cb_(cb) {}
    Vec2<double> polar(double r, double th) const override { return mix(a_->polar(r, th), b_->polar(r, th)); }
    Vec2<Jet2> polar(const Jet2& r, const Jet2& th) const override { return mix(a_->polar(r, th), b_->polar(r, th)); }
    Vec2<Jet3> polar(const Jet3& r, const Jet3& th) const override { return mix(a_->polar(r, th), b_->polar(r, th)); }
    Vec2<double> cart(double x, double y) const override { return mix(a_->cart(x, y), b_->cart(x, y)); }
    Vec2<Jet2> cart(const Jet2& x, const Jet2& y) const override { return mix(a_->cart(x, y), b_->cart(x, y)); }
    Vec2<Jet3> cart(const Jet3& x, const Jet3& y) const override { return mix(a_->cart(x, y), b_->cart(x, y)); }

private:
    template <class T>
    Vec2<T> mix(const Vec2<T>& u, const Vec2<T>& v) const {
        return {ca_ * u[0] + cb_ * v[0], ca_ * u[1] + cb_ * v[1]};
    }
    FieldPtr a_, b_;
    double ca_, cb_;
};

std::string fmt_json(const char* kind, std::initializer_list<std::pair<const char*, double>> kv) {
    std::ostringstream os;
    os.precision(17);
    os << "{\"kind\":\"" << kind << "\"";
    for (auto& [k, v] : kv) os << ",\"" << k << "\":" << v;
    os << "}";
    return os.str();
}

}  // namespace

DiscVectorField::DiscVectorField(FieldPtr expr, double ar_epsilon,
                                 std::optional<std::pair<TrigPoly, TrigPoly>> boundary)
    : expr_(std::move(expr)), ar_eps_(ar_epsilon) {
    if (boundary) {
        bv3_ = boundary->first;
        bv4_ = boundary->second;
    } else {
        std::vector<double> s3(kBoundarySamples), s4(kBoundarySamples);
        for (int j = 0; j < kBoundarySamples; ++j) {
            const auto v = expr_->polar(1.0, kTwoPi * j / kBoundarySamples);
            s3[j] = v[0];
            s4[j] = v[1];
        }
        bv3_ = tp_fit_samples(s3, kBoundarySamples / 2 - 1, 1e-13);
        bv4_ = tp_fit_samples(s4, kBoundarySamples / 2 - 1, 1e-13);
    }
    for (int j = 0; j < kCheckAngles; ++j) {
        const double th = kTwoPi * (j + 0.5) / kCheckAngles;
        const auto v = expr_->polar(1.0, th);
        if (std::abs(v[0] - bv3_.eval(th).real()) > 1e-10 || std::abs(v[1] - bv4_.eval(th).real()) > 1e-10)
            throw DomainError("DiscVectorField: boundary polynomials disagree with the field at r = 1");
    }

    flags_.genuine = bv3_.is_zero(1e-12);
    bool radial = true, zero = true;
    for (int k = 0; k < 4; ++k) {
        const double r = 1.0 - ar_eps_ * k / 4.0;
        for (int j = 0; j < kCheckAngles; ++j) {
            const double th = kTwoPi * j / kCheckAngles;
            const auto v = expr_->polar(Jet2::var(r, 0), Jet2::var(th, 1));
            if (std::abs(v[0].g[0]) > 1e-10 || std::abs(v[1].g[0]) > 1e-10) radial = false;
            if (std::abs(v[0].v) > 1e-12 || std::abs(v[1].v) > 1e-12) zero = false;
        }
    }
    flags_.asymptotically_radial = radial;
    flags_.asymptotically_zero = zero;
}

bool DiscVectorField::vanishes_beyond(double radius) const {
    for (int k = 0; k <= 8; ++k) {
        const double r = radius + (1.0 - radius) * k / 8.0;
        for (int j = 0; j < kCheckAngles; ++j) {
            const double th = kTwoPi * j / kCheckAngles;
            const auto v = expr_->cart(r * std::cos(th), r * std::sin(th));
            if (std::abs(v[0]) > 1e-14 || std::abs(v[1]) > 1e-14) return false;
        }
    }
    return true;
}

DiscVectorField operator+(const DiscVectorField& a, const DiscVectorField& b) {
    return DiscVectorField(std::make_shared<LinComb>(a.expr_ptr(), 1.0, b.expr_ptr(), 1.0),
                           std::min(a.ar_epsilon(), b.ar_epsilon()),
                           std::make_pair(a.boundary_v3() + b.boundary_v3(), a.boundary_v4() + b.boundary_v4()));
}

DiscVectorField operator-(const DiscVectorField& a, const DiscVectorField& b) {
    return DiscVectorField(std::make_shared<LinComb>(a.expr_ptr(), 1.0, b.expr_ptr(), -1.0),
                           std::min(a.ar_epsilon(), b.ar_epsilon()),
                           std::make_pair(a.boundary_v3() - b.boundary_v3(), a.boundary_v4() - b.boundary_v4()));
}

DiscVectorField operator*(double s, const DiscVectorField& a) {
    return DiscVectorField(std::make_shared<LinComb>(a.expr_ptr(), s, a.expr_ptr(), 0.0), a.ar_epsilon(),
                           std::make_pair(s * a.boundary_v3(), s * a.boundary_v4()));
}

DiscVectorField bump_vortex_field(double cx, double cy, double radius, double amp) {
    const double ir2 = 1.0 / (radius * radius);
    auto f = [=](const auto& x, const auto& y) {
        using T = std::decay_t<decltype(x)>;
        const T dx = x - cx, dy = y - cy;
        const T w = amp * bump_psi(ir2 * (dx * dx + dy * dy));
        return Vec2<T>{-w * dy, w * dx};
    };
    return DiscVectorField::from_cartesian(
        f, kDefaultArEpsilon,
        fmt_json("vortex", {{"cx", cx}, {"cy", cy}, {"radius", radius}, {"amp", amp}}));
}

DiscVectorField bump_drift_field(double cx, double cy, double radius, double dx, double dy) {
    const double ir2 = 1.0 / (radius * radius);
    auto f = [=](const auto& x, const auto& y) {
        using T = std::decay_t<decltype(x)>;
        const T ux = x - cx, uy = y - cy;
        const T w = bump_psi(ir2 * (ux * ux + uy * uy));
        return Vec2<T>{dx * w, dy * w};
    };
    return DiscVectorField::from_cartesian(
        f, kDefaultArEpsilon,
        fmt_json("drift", {{"cx", cx}, {"cy", cy}, {"radius", radius}, {"dx", dx}, {"dy", dy}}));
}

}  // namespace vb
