#pragma once

#include <array>
#include <cmath>
#include <numbers>
#include <string>
#include <variant>
#include <vector>

#include <Eigen/Dense>

#include "vb/errors.hpp"
#include "vb/jet.hpp"
#include "vb/trigpoly.hpp"
#include "vb/vector_field.hpp"

namespace vb {

template <class T>
using Vec3 = std::array<T, 3>;

inline constexpr double kTwoPi = 2.0 * std::numbers::pi;

// ---------------------------------------------------------------- cutoffs

struct CutoffFn {
    double eps1 = 0.2;
    double eps2 = 0.2;

    template <class T>
    T operator()(const T& r) const {
        using std::exp;
        const double rv = value(r);
        if (rv <= eps1) return T(0.0);
        if (rv >= 1.0 - eps2) return T(1.0);
        const T x = (r - eps1) / (1.0 - eps2 - eps1);
        const T bx = exp(-1.0 / x);
        const T b1 = exp(-1.0 / (1.0 - x));
        return bx / (bx + b1);
    }
};

CutoffFn cutoff_make(double eps1, double eps2);

// ------------------------------------------------------------ circle maps

class CircleDiffeoLift {
public:
    CircleDiffeoLift() = default;
    CircleDiffeoLift(int winding_offset, TrigPoly periodic_part);

    int winding_offset() const { return k_; }
    const TrigPoly& periodic_part() const { return p_; }
    const TrigPoly& periodic_derivative() const { return dp_; }
    double operator()(double theta) const;
    double derivative(double theta) const;

private:
    int k_ = 0;
    TrigPoly p_, dp_;
};

// Default linear family s -> theta + s (2 pi k + p(theta)).
class CircleIsotopy {
public:
    CircleIsotopy() = default;
    explicit CircleIsotopy(CircleDiffeoLift endpoint) : end_(std::move(endpoint)) {}
    static CircleIsotopy rotation_path(double alpha);

    const CircleDiffeoLift& endpoint() const { return end_; }
    CircleDiffeoLift path(double s) const;
    double shift() const { return kTwoPi * end_.winding_offset(); }

private:
    CircleDiffeoLift end_;
};

double circle_invert(const CircleDiffeoLift& f, double theta, double tol = 1e-12);

// Solves x + shift*u + u p(x) = target (the lift of the u-scaled family).
double solve_scaled_lift(const TrigPoly& p, const TrigPoly& dp, double shift, double u,
                         double target, double tol = 1e-12);

// -------------------------------------------------------- elementary maps

struct Rotation {
    double alpha = 0.0;
};

// Angle tau(r) = amp * exp(4 - 1/x - 1/(1-x)), x = (r-a)/(b-a), zero off (a,b).
struct RadialTwist {
    double a = 0.3, b = 0.7, amp = 0.0;

    template <class T>
    T tau(const T& r) const {
        using std::exp;
        const T x = (r - a) / (b - a);
        return amp * exp(4.0 - 1.0 / x - 1.0 / (1.0 - x));
    }
};

struct AlexanderRadial {
    CircleIsotopy iso;
    CutoffFn xi;
    double t = 1.0;
};

// Inverse of an AlexanderRadial map, radius by radius.
struct AlexanderRadialInverse {
    AlexanderRadial fwd;
};

struct FlowMap {
    DiscVectorField field;
    double time = 1.0;
    int steps = 64;
};

using ElementaryMap = std::variant<Rotation, RadialTwist, AlexanderRadial, AlexanderRadialInverse, FlowMap>;

// Elementary map with its strength multiplied by s (the canonical isotopy).
ElementaryMap scale_map(const ElementaryMap& m, double s);

namespace detail {

template <class T, class S>
void rotate_by(T& x, T& y, const S& ang) {
    using std::cos;
    using std::sin;
    const S c = cos(ang), s = sin(ang);
    const T nx = c * x - s * y;
    const T ny = s * x + c * y;
    x = nx;
    y = ny;
}

template <class T, class S>
void apply_one(const Rotation& m, T& x, T& y, const S& s) {
    rotate_by(x, y, s * m.alpha);
}

template <class T, class S>
void apply_one(const RadialTwist& m, T& x, T& y, const S& s) {
    using std::sqrt;
    const double r2 = value(x) * value(x) + value(y) * value(y);
    if (r2 <= m.a * m.a || r2 >= m.b * m.b) return;
    const T r = sqrt(x * x + y * y);
    const T ang = s * m.tau(r);
    rotate_by(x, y, ang);
}

template <class T, class S>
void apply_one(const AlexanderRadial& m, T& x, T& y, const S& s) {
    using std::sqrt;
    const double r2 = value(x) * value(x) + value(y) * value(y);
    if (r2 <= m.xi.eps1 * m.xi.eps1 || m.t == 0.0) return;
    const T r = sqrt(x * x + y * y);
    const T c = x / r, sn = y / r;
    const T u = (s * m.t) * m.xi(r);
    const T ang = u * (m.iso.shift() + m.iso.endpoint().periodic_part().eval_cs(c, sn));
    rotate_by(x, y, ang);
}

template <class T, class S>
void apply_one(const AlexanderRadialInverse& m, T& x, T& y, const S& s) {
    using std::atan2;
    using std::cos;
    using std::sin;
    using std::sqrt;
    const AlexanderRadial& f = m.fwd;
    const double r2 = value(x) * value(x) + value(y) * value(y);
    if (r2 <= f.xi.eps1 * f.xi.eps1 || f.t == 0.0) return;
    const T r = sqrt(x * x + y * y);
    const T u = (s * f.t) * f.xi(r);
    const T phi = atan2(y, x);
    const TrigPoly& p = f.iso.endpoint().periodic_part();
    const TrigPoly& dp = f.iso.endpoint().periodic_derivative();
    const double shift = f.iso.shift();
    T th = T(solve_scaled_lift(p, dp, shift, value(u), value(phi)));
    if constexpr (!std::is_same_v<T, double>) {
        for (int it = 0; it < 2; ++it) {
            const T c = cos(th), sn = sin(th);
            const T F = th + u * (shift + p.eval_cs(c, sn)) - phi;
            const T dF = 1.0 + u * dp.eval_cs(c, sn);
            th = th - F / dF;
        }
    }
    x = r * cos(th);
    y = r * sin(th);
}

template <class T, class S>
void apply_one(const FlowMap& m, T& x, T& y, const S& s) {
    const T dt = T(0.0) + s * (m.time / m.steps);
    const FieldExpr& f = m.field.expr();
    for (int k = 0; k < m.steps; ++k) {
        const Vec2<T> k1 = f.cart(x, y);
        const Vec2<T> k2 = f.cart(x + 0.5 * dt * k1[0], y + 0.5 * dt * k1[1]);
        const Vec2<T> k3 = f.cart(x + 0.5 * dt * k2[0], y + 0.5 * dt * k2[1]);
        const Vec2<T> k4 = f.cart(x + dt * k3[0], y + dt * k3[1]);
        x = x + dt * (k1[0] + 2.0 * k2[0] + 2.0 * k3[0] + k4[0]) / 6.0;
        y = y + dt * (k1[1] + 2.0 * k2[1] + 2.0 * k3[1] + k4[1]) / 6.0;
    }
}

template <class T, class S>
void apply_map(const ElementaryMap& m, T& x, T& y, const S& s) {
    std::visit([&](const auto& e) { apply_one(e, x, y, s); }, m);
}

}  // namespace detail

struct Link {
    ElementaryMap map;
    bool follows_isotopy = true;
};

// ---------------------------------------------------------------- disc maps

// Chain stored in application order: chain()[0] acts first.
class DiscDiffeo {
public:
    DiscDiffeo() = default;
    explicit DiscDiffeo(std::vector<Link> chain) : chain_(std::move(chain)) {}
    static DiscDiffeo identity() { return {}; }
    static DiscDiffeo of(ElementaryMap m) { return DiscDiffeo({Link{std::move(m), true}}); }

    const std::vector<Link>& chain() const { return chain_; }
    bool empty() const { return chain_.empty(); }

    template <class T>
    Vec2<T> apply(T x, T y) const {
        for (const Link& l : chain_) detail::apply_map(l.map, x, y, 1.0);
        return {x, y};
    }
    // Canonical isotopy at parameter s: links flagged follows_isotopy are scaled.
    template <class T, class S>
    Vec2<T> apply_isotopy(T x, T y, const S& s) const {
        for (const Link& l : chain_) {
            if (l.follows_isotopy) detail::apply_map(l.map, x, y, s);
            else detail::apply_map(l.map, x, y, 1.0);
        }
        return {x, y};
    }
    Vec2<double> operator()(double x, double y) const { return apply(x, y); }

    DiscDiffeo fixed() const;
    DiscDiffeo at_isotopy(double s) const;
    std::string serialize() const;
    static DiscDiffeo deserialize(const std::string& text);

private:
    std::vector<Link> chain_;
};

DiscDiffeo rotation(double alpha);
DiscDiffeo radial_twist(double a, double b, double amp);
DiscDiffeo alexander_extend(const CircleIsotopy& iso, const CutoffFn& xi, double t);
DiscDiffeo flow_map(const DiscVectorField& field, double time, int steps = 64);
DiscDiffeo disc_compose(const DiscDiffeo& g, const DiscDiffeo& h);
DiscDiffeo disc_invert(const DiscDiffeo& g, double tol = 1e-12);
// g h g^{-1}; the conjugating links do not move with the isotopy.
DiscDiffeo conjugate(const DiscDiffeo& g, const DiscDiffeo& h);
// Boundary-trivial winding map theta -> theta + 2 pi k (xi(r) - 1) with its H-isotopy.
DiscDiffeo winding_twist(int k, const CutoffFn& xi);

struct DerivativePlan {
    enum Kind { ANALYTIC, FD4 } kind = ANALYTIC;
    double rel_step = 1e-4;
};

Eigen::Matrix2d disc_jacobian(const DiscDiffeo& g, double x, double y, const DerivativePlan& plan = {});

// J and the two partials dJ/dx, dJ/dy at a point.
struct JacobianJet2 {
    Eigen::Matrix2d J;
    std::array<Eigen::Matrix2d, 2> dJ;
};
JacobianJet2 disc_jacobian_jet(const DiscDiffeo& g, double x, double y, const DerivativePlan& plan = {});

bool is_boundary_trivial(const DiscDiffeo& h, double eps = 0.05, double tol = 1e-12);

// -------------------------------------------------------------- sphere maps

class SphereDiffeo {
public:
    SphereDiffeo() = default;
    const DiscDiffeo& interior() const { return h_; }
    template <class T>
    Vec2<T> apply(T x, T y) const {
        if (value(x) * value(x) + value(y) * value(y) >= 1.0) return {x, y};
        return h_.apply(x, y);
    }

private:
    friend SphereDiffeo sphere_extend(const DiscDiffeo& h, double eps);
    explicit SphereDiffeo(DiscDiffeo h) : h_(std::move(h)) {}
    DiscDiffeo h_;
};

SphereDiffeo sphere_extend(const DiscDiffeo& h, double eps = 0.05);

// phi(u) = sum_k c_k u^k; an empty profile marks a fixed link.
struct IsoLink {
    ElementaryMap map;
    std::vector<double> profile;

    template <class T>
    T scale(const T& u) const {
        T acc = T(0.0);
        for (std::size_t k = profile.size(); k-- > 0;) acc = acc * u + profile[k];
        return acc;
    }
};

class SphereIsotopy {
public:
    SphereIsotopy() = default;
    explicit SphereIsotopy(std::vector<IsoLink> links) : links_(std::move(links)) {}
    // Linear profile on links that follow the isotopy, fixed otherwise.
    static SphereIsotopy canonical(const DiscDiffeo& h);

    const std::vector<IsoLink>& links() const { return links_; }
    DiscDiffeo at(double u) const;

    template <class T, class U>
    Vec2<T> apply(T x, T y, const U& u) const {
        if (value(x) * value(x) + value(y) * value(y) >= 1.0) return {x, y};
        for (const IsoLink& l : links_) {
            if (l.profile.empty()) detail::apply_map(l.map, x, y, 1.0);
            else detail::apply_map(l.map, x, y, l.scale(u));
        }
        return {x, y};
    }

private:
    std::vector<IsoLink> links_;
};

// ---------------------------------------------------------------- ball maps

struct BallLayer {
    SphereIsotopy iso;
    CutoffFn xi;
};

// rho -> rho + amp psi(|p-c|^2/R^2) (1 - rho) xi(rho): identity near rho = 0,
// keeps rho = 1 fixed, normal derivative 1 - amp psi at the boundary.
struct NormalStretch {
    double cx = 0.0, cy = 0.0, radius = 0.5, amp = 0.2;
    CutoffFn xi;
};

using BallLink = std::variant<BallLayer, NormalStretch>;

class BallDiffeo {
public:
    BallDiffeo() = default;
    explicit BallDiffeo(std::vector<BallLink> links) : links_(std::move(links)) {}

    const std::vector<BallLink>& links() const { return links_; }
    bool layered() const;

    template <class T>
    Vec3<T> apply(T rho, T x, T y) const {
        using std::exp;
        for (const BallLink& l : links_) {
            if (const auto* L = std::get_if<BallLayer>(&l)) {
                const T u = L->xi(rho);
                const Vec2<T> p = L->iso.apply(x, y, u);
                x = p[0];
                y = p[1];
            } else {
                const auto& N = std::get<NormalStretch>(l);
                const T dx = x - N.cx, dy = y - N.cy;
                const T q = (dx * dx + dy * dy) / (N.radius * N.radius);
                const T sig = bump_psi(q);
                rho = rho + N.amp * sig * (1.0 - rho) * N.xi(rho);
            }
        }
        return {rho, x, y};
    }

    // Restriction to the boundary sphere rho = 1, as a disc chain.
    DiscDiffeo boundary_layer() const;

private:
    std::vector<BallLink> links_;
};

BallDiffeo ball_extend(const SphereIsotopy& iso, const CutoffFn& xi);
BallDiffeo ball_compose(const BallDiffeo& g, const BallDiffeo& h);

Eigen::Matrix3d ball_jacobian(const BallDiffeo& B, double rho, double x, double y, const DerivativePlan& plan = {});

struct JacobianJet3 {
    Eigen::Matrix3d J;
    std::array<Eigen::Matrix3d, 3> dJ;
};
JacobianJet3 ball_jacobian_jet(const BallDiffeo& B, double rho, double x, double y, const DerivativePlan& plan = {});

}  // namespace vb
