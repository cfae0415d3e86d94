#include "vb/diffeo.hpp"

#include <algorithm>
#include <json.hpp>

namespace vb {

using nlohmann::json;

CutoffFn cutoff_make(double eps1, double eps2) {
    if (!(eps1 > 0.0 && eps2 > 0.0 && eps1 < 1.0 - eps2))
        throw DomainError("cutoff_make: need 0 < eps1 < 1 - eps2 < 1");
    return CutoffFn{eps1, eps2};
}

CircleDiffeoLift::CircleDiffeoLift(int winding_offset, TrigPoly periodic_part)
    : k_(winding_offset), p_(std::move(periodic_part)) {
    if (!p_.is_real()) throw DomainError("CircleDiffeoLift: periodic part must be real");
    dp_ = tp_derivative(p_);
    constexpr int n = 1024;
    for (int j = 0; j < n; ++j) {
        const double th = kTwoPi * j / n;
        if (1.0 + dp_.eval_real(th) <= 0.0)
            throw DomainError("CircleDiffeoLift: not orientation preserving");
    }
}

double CircleDiffeoLift::operator()(double theta) const {
    return theta + kTwoPi * k_ + p_.eval_real(theta);
}

double CircleDiffeoLift::derivative(double theta) const { return 1.0 + dp_.eval_real(theta); }

CircleIsotopy CircleIsotopy::rotation_path(double alpha) {
    return CircleIsotopy(CircleDiffeoLift(0, TrigPoly(alpha)));
}

CircleDiffeoLift CircleIsotopy::path(double s) const {
    if (s == 1.0) return end_;
    return CircleDiffeoLift(0, s * (end_.periodic_part() + TrigPoly(shift())));
}

double solve_scaled_lift(const TrigPoly& p, const TrigPoly& dp, double shift, double u, double target,
                         double tol) {
    auto F = [&](double x) { return x + u * (shift + p.eval_cs(std::cos(x), std::sin(x))) - target; };
    auto dF = [&](double x) { return 1.0 + u * dp.eval_cs(std::cos(x), std::sin(x)); };
    const double B = std::abs(u) * p.sup_bound() + 1e-9;
    const double x0 = target - u * shift;
    double lo = x0 - B, hi = x0 + B;
    constexpr int cap = 200;
    int it = 0;
    for (; it < 8; ++it) {
        const double mid = 0.5 * (lo + hi);
        (F(mid) > 0.0 ? hi : lo) = mid;
    }
    double x = 0.5 * (lo + hi);
    for (; it < cap; ++it) {
        const double f = F(x);
        if (std::abs(f) <= tol) return x - f / dF(x);
        (f > 0.0 ? hi : lo) = x;
        double nx = x - f / dF(x);
        if (!(nx > lo && nx < hi)) nx = 0.5 * (lo + hi);
        if (nx == x) return x;
        x = nx;
    }
    throw ConvergenceError("circle inversion did not reach tolerance");
}

double circle_invert(const CircleDiffeoLift& f, double theta, double tol) {
    return solve_scaled_lift(f.periodic_part(), f.periodic_derivative(), kTwoPi * f.winding_offset(), 1.0,
                             theta, tol);
}

ElementaryMap scale_map(const ElementaryMap& m, double s) {
    return std::visit(
        [s](auto e) -> ElementaryMap {
            using E = decltype(e);
            if constexpr (std::is_same_v<E, Rotation>) e.alpha *= s;
            else if constexpr (std::is_same_v<E, RadialTwist>) e.amp *= s;
            else if constexpr (std::is_same_v<E, AlexanderRadial>) e.t *= s;
            else if constexpr (std::is_same_v<E, AlexanderRadialInverse>) e.fwd.t *= s;
            else e.time *= s;
            return e;
        },
        m);
}

// ------------------------------------------------------------ DiscDiffeo

DiscDiffeo DiscDiffeo::fixed() const {
    std::vector<Link> c = chain_;
    for (auto& l : c) l.follows_isotopy = false;
    return DiscDiffeo(std::move(c));
}

DiscDiffeo DiscDiffeo::at_isotopy(double s) const {
    std::vector<Link> c;
    for (const auto& l : chain_) c.push_back({l.follows_isotopy ? scale_map(l.map, s) : l.map, false});
    return DiscDiffeo(std::move(c));
}

DiscDiffeo rotation(double alpha) { return DiscDiffeo::of(Rotation{alpha}); }

DiscDiffeo radial_twist(double a, double b, double amp) {
    if (!(0.0 < a && a < b && b < 1.0)) throw DomainError("radial_twist: need 0 < a < b < 1");
    return DiscDiffeo::of(RadialTwist{a, b, amp});
}

DiscDiffeo alexander_extend(const CircleIsotopy& iso, const CutoffFn& xi, double t) {
    if (!(t >= 0.0 && t <= 1.0)) throw DomainError("alexander_extend: t must lie in [0,1]");
    return DiscDiffeo::of(AlexanderRadial{iso, xi, t});
}

DiscDiffeo flow_map(const DiscVectorField& field, double time, int steps) {
    if (steps < 1) throw DomainError("flow_map: steps must be positive");
    return DiscDiffeo::of(FlowMap{field, time, steps});
}

DiscDiffeo disc_compose(const DiscDiffeo& g, const DiscDiffeo& h) {
    std::vector<Link> c = h.chain();
    c.insert(c.end(), g.chain().begin(), g.chain().end());
    return DiscDiffeo(std::move(c));
}

DiscDiffeo disc_invert(const DiscDiffeo& g, double tol) {
    (void)tol;
    std::vector<Link> c;
    for (auto it = g.chain().rbegin(); it != g.chain().rend(); ++it) {
        ElementaryMap inv = std::visit(
            [](const auto& e) -> ElementaryMap {
                using E = std::decay_t<decltype(e)>;
                if constexpr (std::is_same_v<E, Rotation>) return Rotation{-e.alpha};
                else if constexpr (std::is_same_v<E, RadialTwist>) return RadialTwist{e.a, e.b, -e.amp};
                else if constexpr (std::is_same_v<E, AlexanderRadial>) return AlexanderRadialInverse{e};
                else if constexpr (std::is_same_v<E, AlexanderRadialInverse>) return e.fwd;
                else throw UnsupportedError("disc_invert: FlowMap links are not invertible; flow the negated field");
            },
            it->map);
        c.push_back({std::move(inv), it->follows_isotopy});
    }
    return DiscDiffeo(std::move(c));
}

DiscDiffeo conjugate(const DiscDiffeo& g, const DiscDiffeo& h) {
    return disc_compose(disc_compose(g.fixed(), h), disc_invert(g).fixed());
}

DiscDiffeo winding_twist(int k, const CutoffFn& xi) {
    return disc_compose(rotation(-kTwoPi * k), alexander_extend(CircleIsotopy(CircleDiffeoLift(k, TrigPoly())), xi, 1.0));
}

// ------------------------------------------------------------ serialization

namespace {

json poly_json(const TrigPoly& p) {
    json c = json::array(), s = json::array();
    for (int n = 1; n <= p.max_harmonic(); ++n) {
        c.push_back(p.cos_coeff(n).real());
        s.push_back(p.sin_coeff(n).real());
    }
    return {{"c0", p.constant_term().real()}, {"cos", c}, {"sin", s}};
}

TrigPoly poly_from(const json& j) {
    return TrigPoly::real_coeffs(j.at("c0").get<double>(), j.at("cos").get<std::vector<double>>(),
                                 j.at("sin").get<std::vector<double>>());
}

json alexander_json(const AlexanderRadial& a) {
    return {{"k", a.iso.endpoint().winding_offset()},
            {"p", poly_json(a.iso.endpoint().periodic_part())},
            {"eps1", a.xi.eps1},
            {"eps2", a.xi.eps2},
            {"t", a.t}};
}

AlexanderRadial alexander_from(const json& j) {
    return AlexanderRadial{CircleIsotopy(CircleDiffeoLift(j.at("k").get<int>(), poly_from(j.at("p")))),
                           CutoffFn{j.at("eps1").get<double>(), j.at("eps2").get<double>()}, j.at("t").get<double>()};
}

DiscVectorField field_from(const json& j) {
    const std::string kind = j.at("kind");
    if (kind == "vortex")
        return bump_vortex_field(j.at("cx"), j.at("cy"), j.at("radius"), j.at("amp"));
    if (kind == "drift")
        return bump_drift_field(j.at("cx"), j.at("cy"), j.at("radius"), j.at("dx"), j.at("dy"));
    throw ConfigError("unknown field family: " + kind);
}

}  // namespace

std::string DiscDiffeo::serialize() const {
    json arr = json::array();
    for (const Link& l : chain_) {
        json rec = std::visit(
            [](const auto& e) -> json {
                using E = std::decay_t<decltype(e)>;
                if constexpr (std::is_same_v<E, Rotation>) return {{"type", "rotation"}, {"alpha", e.alpha}};
                else if constexpr (std::is_same_v<E, RadialTwist>)
                    return {{"type", "radial_twist"}, {"a", e.a}, {"b", e.b}, {"amp", e.amp}};
                else if constexpr (std::is_same_v<E, AlexanderRadial>) {
                    json j = alexander_json(e);
                    j["type"] = "alexander";
                    return j;
                } else if constexpr (std::is_same_v<E, AlexanderRadialInverse>) {
                    json j = alexander_json(e.fwd);
                    j["type"] = "alexander_inverse";
                    return j;
                } else {
                    const std::string d = e.field.expr().describe();
                    if (d.empty()) throw UnsupportedError("serialize: flow field has no named family");
                    return {{"type", "flow"}, {"field", json::parse(d)}, {"time", e.time}, {"steps", e.steps}};
                }
            },
            l.map);
        rec["isotopy"] = l.follows_isotopy;
        arr.push_back(std::move(rec));
    }
    return arr.dump();
}

DiscDiffeo DiscDiffeo::deserialize(const std::string& text) {
    json arr;
    try {
        arr = json::parse(text);
    } catch (const json::exception& e) {
        throw ConfigError(std::string("diffeo description: ") + e.what());
    }
    if (!arr.is_array()) throw ConfigError("diffeo description must be a list of records");
    std::vector<Link> chain;
    try {
        for (const json& r : arr) {
            const std::string type = r.at("type");
            const bool iso = r.value("isotopy", true);
            ElementaryMap m;
            if (type == "rotation") m = Rotation{r.at("alpha").get<double>()};
            else if (type == "radial_twist") m = RadialTwist{r.at("a"), r.at("b"), r.at("amp")};
            else if (type == "alexander") m = alexander_from(r);
            else if (type == "alexander_inverse") m = AlexanderRadialInverse{alexander_from(r)};
            else if (type == "flow") m = FlowMap{field_from(r.at("field")), r.at("time"), r.value("steps", 64)};
            else throw ConfigError("unknown elementary map: " + type);
            chain.push_back({std::move(m), iso});
        }
    } catch (const json::exception& e) {
        throw ConfigError(std::string("diffeo description: ") + e.what());
    }
    return DiscDiffeo(std::move(chain));
}

// ------------------------------------------------------------ Jacobians

namespace {

constexpr double fd4_w[4] = {1.0, -8.0, 8.0, -1.0};
constexpr double fd4_o[4] = {-2.0, -1.0, 1.0, 2.0};

template <int N, class F>
Eigen::Matrix<double, N, N> fd4_jacobian(F&& f, const Eigen::Matrix<double, N, 1>& p, double h) {
    Eigen::Matrix<double, N, N> J = Eigen::Matrix<double, N, N>::Zero();
    for (int j = 0; j < N; ++j) {
        for (int k = 0; k < 4; ++k) {
            Eigen::Matrix<double, N, 1> q = p;
            q[j] += fd4_o[k] * h;
            J.col(j) += fd4_w[k] * f(q);
        }
        J.col(j) /= 12.0 * h;
    }
    return J;
}

template <int N>
void check_det(const Eigen::Matrix<double, N, N>& J, const char* what) {
    if (!(J.determinant() > 0.0)) throw DegenerateError(std::string(what) + ": nonpositive Jacobian determinant");
}

}  // namespace

JacobianJet2 disc_jacobian_jet(const DiscDiffeo& g, double x, double y, const DerivativePlan& plan) {
    JacobianJet2 out;
    if (plan.kind == DerivativePlan::ANALYTIC) {
        const auto v = g.apply(Jet2::var(x, 0), Jet2::var(y, 1));
        for (int i = 0; i < 2; ++i)
            for (int j = 0; j < 2; ++j) {
                out.J(i, j) = v[i].g[j];
                for (int k = 0; k < 2; ++k) out.dJ[k](i, j) = v[i].hess(j, k);
            }
    } else {
        const double h = plan.rel_step * std::max(1.0, std::hypot(x, y));
        auto map = [&](const Eigen::Vector2d& q) {
            const auto v = g.apply(q[0], q[1]);
            return Eigen::Vector2d(v[0], v[1]);
        };
        out.J = fd4_jacobian<2>(map, Eigen::Vector2d(x, y), h);
        for (int k = 0; k < 2; ++k) {
            out.dJ[k].setZero();
            for (int m = 0; m < 4; ++m) {
                Eigen::Vector2d q(x, y);
                q[k] += fd4_o[m] * h;
                out.dJ[k] += fd4_w[m] * fd4_jacobian<2>(map, q, h);
            }
            out.dJ[k] /= 12.0 * h;
        }
    }
    check_det<2>(out.J, "disc_jacobian");
    return out;
}

Eigen::Matrix2d disc_jacobian(const DiscDiffeo& g, double x, double y, const DerivativePlan& plan) {
    if (plan.kind == DerivativePlan::FD4) {
        const double h = plan.rel_step * std::max(1.0, std::hypot(x, y));
        auto map = [&](const Eigen::Vector2d& q) {
            const auto v = g.apply(q[0], q[1]);
            return Eigen::Vector2d(v[0], v[1]);
        };
        Eigen::Matrix2d J = fd4_jacobian<2>(map, Eigen::Vector2d(x, y), h);
        check_det<2>(J, "disc_jacobian");
        return J;
    }
    return disc_jacobian_jet(g, x, y, plan).J;
}

bool is_boundary_trivial(const DiscDiffeo& h, double eps, double tol) {
    for (double r : {1.0 - eps / 2.0, 1.0 - eps / 4.0}) {
        for (int j = 0; j < 256; ++j) {
            const double th = kTwoPi * j / 256;
            const double x = r * std::cos(th), y = r * std::sin(th);
            const auto v = h.apply(x, y);
            if (std::abs(v[0] - x) > tol || std::abs(v[1] - y) > tol) return false;
        }
    }
    return true;
}

SphereDiffeo sphere_extend(const DiscDiffeo& h, double eps) {
    if (!is_boundary_trivial(h, eps)) throw NotBoundaryTrivialError("sphere_extend: map is not the identity near the boundary");
    return SphereDiffeo(h);
}

SphereIsotopy SphereIsotopy::canonical(const DiscDiffeo& h) {
    std::vector<IsoLink> links;
    for (const Link& l : h.chain()) {
        IsoLink il{l.map, {}};
        if (l.follows_isotopy) il.profile = {0.0, 1.0};
        links.push_back(std::move(il));
    }
    return SphereIsotopy(std::move(links));
}

DiscDiffeo SphereIsotopy::at(double u) const {
    std::vector<Link> c;
    for (const IsoLink& l : links_)
        c.push_back({l.profile.empty() ? l.map : scale_map(l.map, l.scale(u)), false});
    return DiscDiffeo(std::move(c));
}

bool BallDiffeo::layered() const {
    return std::all_of(links_.begin(), links_.end(), [](const BallLink& l) { return std::holds_alternative<BallLayer>(l); });
}

DiscDiffeo BallDiffeo::boundary_layer() const {
    DiscDiffeo d;
    for (const BallLink& l : links_)
        if (const auto* L = std::get_if<BallLayer>(&l)) d = disc_compose(L->iso.at(1.0), d);
    return d;
}

BallDiffeo ball_extend(const SphereIsotopy& iso, const CutoffFn& xi) {
    for (int i = 1; i <= 8; ++i)
        for (int j = 0; j < 16; ++j) {
            const double r = (i - 0.5) / 8.0, th = kTwoPi * j / 16;
            const double x = r * std::cos(th), y = r * std::sin(th);
            const auto v = iso.apply(x, y, 0.0);
            if (std::abs(v[0] - x) > 1e-10 || std::abs(v[1] - y) > 1e-10)
                throw DomainError("ball_extend: isotopy does not start at the identity");
        }
    return BallDiffeo({BallLayer{iso, xi}});
}

BallDiffeo ball_compose(const BallDiffeo& g, const BallDiffeo& h) {
    std::vector<BallLink> c = h.links();
    c.insert(c.end(), g.links().begin(), g.links().end());
    return BallDiffeo(std::move(c));
}

JacobianJet3 ball_jacobian_jet(const BallDiffeo& B, double rho, double x, double y, const DerivativePlan& plan) {
    JacobianJet3 out;
    if (plan.kind == DerivativePlan::ANALYTIC) {
        const auto v = B.apply(Jet3::var(rho, 0), Jet3::var(x, 1), Jet3::var(y, 2));
        for (int i = 0; i < 3; ++i)
            for (int j = 0; j < 3; ++j) {
                out.J(i, j) = v[i].g[j];
                for (int k = 0; k < 3; ++k) out.dJ[k](i, j) = v[i].hess(j, k);
            }
    } else {
        const double h = plan.rel_step;
        auto map = [&](const Eigen::Vector3d& q) {
            const auto v = B.apply(q[0], q[1], q[2]);
            return Eigen::Vector3d(v[0], v[1], v[2]);
        };
        const Eigen::Vector3d p(rho, x, y);
        out.J = fd4_jacobian<3>(map, p, h);
        for (int k = 0; k < 3; ++k) {
            out.dJ[k].setZero();
            for (int m = 0; m < 4; ++m) {
                Eigen::Vector3d q = p;
                q[k] += fd4_o[m] * h;
                out.dJ[k] += fd4_w[m] * fd4_jacobian<3>(map, q, h);
            }
            out.dJ[k] /= 12.0 * h;
        }
    }
    check_det<3>(out.J, "ball_jacobian");
    return out;
}

Eigen::Matrix3d ball_jacobian(const BallDiffeo& B, double rho, double x, double y, const DerivativePlan& plan) {
    return ball_jacobian_jet(B, rho, x, y, plan).J;
}

}  // namespace vb
