#include <cmath>
#include <numbers>
#include <random>

#include "doctest.h"
#include "vb/diffeo.hpp"
#include "vb/families.hpp"

using namespace vb;

namespace {

constexpr double kPi = std::numbers::pi;

struct Pt {
    double x, y;
};

std::vector<Pt> random_points(families::Rng& rng, int n, double rmax = 0.95) {
    std::uniform_real_distribution<double> u(0.0, 1.0);
    std::vector<Pt> p;
    for (int k = 0; k < n; ++k) {
        const double r = rmax * std::sqrt(u(rng)), t = 2 * kPi * u(rng);
        p.push_back({r * std::cos(t), r * std::sin(t)});
    }
    return p;
}

double dist(const Vec2<double>& a, const Vec2<double>& b) { return std::hypot(a[0] - b[0], a[1] - b[1]); }

Eigen::Matrix2d fd4_jacobian(const DiscDiffeo& g, double x, double y, double h) {
    Eigen::Matrix2d J;
    for (int k = 0; k < 2; ++k) {
        const double dx = k == 0 ? h : 0.0, dy = k == 1 ? h : 0.0;
        const auto p1 = g(x + dx, y + dy), m1 = g(x - dx, y - dy);
        const auto p2 = g(x + 2 * dx, y + 2 * dy), m2 = g(x - 2 * dx, y - 2 * dy);
        for (int i = 0; i < 2; ++i) J(i, k) = (-p2[i] + 8 * p1[i] - 8 * m1[i] + m2[i]) / (12 * h);
    }
    return J;
}

// Finite-difference Jacobian (FD4 plus one Richardson step), an oracle
// independent of the jet path.
Eigen::Matrix2d fd_jacobian(const DiscDiffeo& g, double x, double y) {
    return (16.0 * fd4_jacobian(g, x, y, 1e-3) - fd4_jacobian(g, x, y, 2e-3)) / 15.0;
}

DiscDiffeo sample_alexander() {
    return alexander_extend(CircleIsotopy(CircleDiffeoLift(0, TrigPoly::real_coeffs(0.4, {0.2, 0.05}, {0.1}))),
                            CutoffFn{0.2, 0.25}, 1.0);
}

}  // namespace

TEST_CASE("cutoff examples and invariants") {
    const CutoffFn xi = cutoff_make(0.25, 0.25);
    CHECK(xi(0.1) == 0.0);
    CHECK(xi(0.9) == 1.0);
    CHECK(xi(0.5) > 0.0);
    CHECK(xi(0.5) < 1.0);
    CHECK(xi(0.5) <= xi(0.6));
    CHECK(xi(0.5) == doctest::Approx(0.5));  // symmetric profile
    double prev = 0.0;
    for (int k = 0; k <= 1000; ++k) {
        const double v = xi(k / 1000.0);
        CHECK(v >= prev);
        prev = v;
    }
    // flat junctions: all jet derivatives vanish just inside the transition
    const Jet2 d = xi(Jet2::var(0.2501, 0));
    CHECK(std::abs(d.g[0]) < 1e-100);
    CHECK_THROWS_AS(cutoff_make(0.6, 0.5), DomainError);
    CHECK_THROWS_AS(cutoff_make(0.0, 0.5), DomainError);
}

TEST_CASE("circle inversion") {
    CHECK(circle_invert(CircleDiffeoLift(), 1.3) == doctest::Approx(1.3).epsilon(1e-14));
    const CircleDiffeoLift rot(0, TrigPoly(0.7));
    CHECK(circle_invert(rot, 2.0) == doctest::Approx(1.3).epsilon(1e-12));
    const CircleDiffeoLift f(0, TrigPoly::sin_n(1, 0.3));
    CHECK(std::abs(circle_invert(f, 0.0)) < 1e-12);
    for (double t : {-2.0, 0.4, 3.1}) CHECK(std::abs(f(circle_invert(f, t)) - t) < 1e-12);
    CHECK_THROWS_AS(CircleDiffeoLift(0, TrigPoly::sin_n(1, 1.5)), DomainError);
    const CircleDiffeoLift w(1, TrigPoly::cos_n(2, 0.1));
    CHECK(w(0.3 + 2 * kPi) == doctest::Approx(w(0.3) + 2 * kPi));
}

TEST_CASE("Alexander extension examples") {
    families::Rng rng(1);
    const auto pts = random_points(rng, 50);
    const DiscDiffeo id = alexander_extend(CircleIsotopy(), CutoffFn{0.2, 0.2}, 1.0);
    const DiscDiffeo t0 = alexander_extend(CircleIsotopy(CircleDiffeoLift(0, TrigPoly::cos_n(1, 0.3))),
                                           CutoffFn{0.2, 0.2}, 0.0);
    const double alpha = 0.9;
    const CutoffFn xi{0.2, 0.3};
    const DiscDiffeo rot = alexander_extend(CircleIsotopy::rotation_path(alpha), xi, 1.0);
    for (const Pt& p : pts) {
        CHECK(dist(id(p.x, p.y), {p.x, p.y}) < 1e-15);
        CHECK(dist(t0(p.x, p.y), {p.x, p.y}) < 1e-15);
        const double r = std::hypot(p.x, p.y), th = std::atan2(p.y, p.x) + xi(r) * alpha;
        CHECK(dist(rot(p.x, p.y), {r * std::cos(th), r * std::sin(th)}) < 1e-14);
    }
    // asymptotically radial: radius kept, angular map r-independent near the boundary
    const DiscDiffeo g = sample_alexander();
    for (int j = 0; j < 32; ++j) {
        const double th = 2 * kPi * j / 32;
        const auto a = g(0.8 * std::cos(th), 0.8 * std::sin(th));
        const auto b = g(0.97 * std::cos(th), 0.97 * std::sin(th));
        CHECK(std::hypot(a[0], a[1]) == doctest::Approx(0.8).epsilon(1e-14));
        CHECK(std::abs(std::atan2(a[1], a[0]) - std::atan2(b[1], b[0])) < 1e-13);
    }
    CHECK_THROWS_AS(alexander_extend(CircleIsotopy(), CutoffFn{}, 1.5), DomainError);
}

TEST_CASE("composition") {
    families::Rng rng(2);
    const auto pts = random_points(rng, 100);
    const DiscDiffeo g = families::random_disc_diffeo(rng), h = families::random_disc_diffeo(rng);
    const DiscDiffeo gh = disc_compose(g, h);
    const DiscDiffeo gid = disc_compose(g, DiscDiffeo::identity());
    const DiscDiffeo rr = disc_compose(rotation(0.4), rotation(-1.1));
    for (const Pt& p : pts) {
        const auto hp = h(p.x, p.y);
        CHECK(dist(gh(p.x, p.y), g(hp[0], hp[1])) <= 1e-14);
        CHECK(dist(gid(p.x, p.y), g(p.x, p.y)) <= 1e-14);
        CHECK(dist(rr(p.x, p.y), rotation(-0.7)(p.x, p.y)) <= 1e-14);
    }
}

TEST_CASE("inversion") {
    families::Rng rng(3);
    CHECK(disc_invert(DiscDiffeo::identity()).empty());
    const DiscDiffeo r = disc_invert(rotation(0.8));
    CHECK(dist(r(0.3, 0.2), rotation(-0.8)(0.3, 0.2)) < 1e-15);
    const DiscDiffeo g = sample_alexander();
    const DiscDiffeo gi = disc_invert(g);
    double worst = 0.0;
    for (int i = 0; i < 64; ++i)
        for (int j = 0; j < 64; ++j) {
            const double x = -0.99 + 1.98 * i / 63, y = -0.99 + 1.98 * j / 63;
            if (x * x + y * y >= 1.0) continue;
            const auto q = gi(x, y);
            worst = std::max(worst, dist(g(q[0], q[1]), {x, y}));
        }
    CHECK(worst <= 1e-10);
    const DiscDiffeo h = families::random_disc_diffeo(rng);
    const DiscDiffeo hh = disc_compose(h, disc_invert(h));
    for (const Pt& p : random_points(rng, 50)) CHECK(dist(hh(p.x, p.y), {p.x, p.y}) < 1e-10);
    CHECK_THROWS_AS(disc_invert(flow_map(bump_vortex_field(0.1, 0.0, 0.5, 1.0), 1.0)), UnsupportedError);
}

TEST_CASE("Jacobian examples") {
    CHECK((disc_jacobian(DiscDiffeo::identity(), 0.3, 0.1) - Eigen::Matrix2d::Identity()).norm() == 0.0);
    const double a = 0.6;
    Eigen::Matrix2d R;
    R << std::cos(a), -std::sin(a), std::sin(a), std::cos(a);
    CHECK((disc_jacobian(rotation(a), 0.2, -0.5) - R).norm() < 1e-15);
}

TEST_CASE("Jacobian: determinant, chain rule, inverse rule") {
    families::Rng rng(4);
    const DiscDiffeo g = families::random_disc_diffeo(rng), h = families::random_disc_diffeo(rng);
    const DiscDiffeo gh = disc_compose(g, h), hi = disc_invert(h);
    const DiscDiffeo flow = flow_map(bump_vortex_field(0.2, -0.1, 0.6, 1.5), 1.0);
    const DerivativePlan fd{DerivativePlan::FD4};
    for (const Pt& p : random_points(rng, 500)) CHECK(disc_jacobian(gh, p.x, p.y).determinant() > 0.0);
    for (const Pt& p : random_points(rng, 40)) {
        const auto hp = h(p.x, p.y);
        const Eigen::Matrix2d chain = disc_jacobian(g, hp[0], hp[1]) * disc_jacobian(h, p.x, p.y);
        CHECK((disc_jacobian(gh, p.x, p.y) - chain).cwiseAbs().maxCoeff() < 1e-8);
        CHECK((disc_jacobian(gh, p.x, p.y, fd) - chain).cwiseAbs().maxCoeff() < 1e-6);
        CHECK((disc_jacobian(gh, p.x, p.y) - fd_jacobian(gh, p.x, p.y)).cwiseAbs().maxCoeff() < 1e-7);
        // J(h) o h^{-1} = J(h^{-1})^{-1}
        const auto q = hi(p.x, p.y);
        CHECK((disc_jacobian(h, q[0], q[1]) - disc_jacobian(hi, p.x, p.y).inverse()).cwiseAbs().maxCoeff() < 1e-8);
        // flow: variational (jet) Jacobian vs FD
        CHECK((disc_jacobian(flow, p.x, p.y) - fd_jacobian(flow, p.x, p.y)).cwiseAbs().maxCoeff() < 1e-7);
    }
}

TEST_CASE("boundary triviality and sphere extension") {
    const DiscDiffeo tw = radial_twist(0.3, 0.7, 0.8);
    CHECK(is_boundary_trivial(tw));
    const SphereDiffeo s = sphere_extend(tw);
    for (int j = 0; j < 64; ++j) {
        const double th = 2 * kPi * j / 64;
        for (double r : {0.7, 0.85, 1.0, 1.7}) {
            const auto v = s.apply(r * std::cos(th), r * std::sin(th));
            CHECK(dist(v, {r * std::cos(th), r * std::sin(th)}) == 0.0);
        }
    }
    const SphereDiffeo id = sphere_extend(DiscDiffeo::identity());
    CHECK(dist(id.apply(0.2, 0.1), {0.2, 0.1}) == 0.0);
    CHECK_THROWS_AS(sphere_extend(sample_alexander()), NotBoundaryTrivialError);
    CHECK(is_boundary_trivial(flow_map(bump_vortex_field(0.0, 0.1, 0.5, 1.0), 1.0)));
    CHECK(is_boundary_trivial(families::conjugated_twist(0.3, 0.5)));
}

TEST_CASE("ball extension") {
    const CutoffFn xi{0.2, 0.3};
    const BallDiffeo idb = ball_extend(SphereIsotopy(), xi);
    CHECK((ball_jacobian(idb, 0.5, 0.1, 0.2) - Eigen::Matrix3d::Identity()).norm() == 0.0);

    const DiscDiffeo h = families::conjugated_twist(0.4, 1.2);
    const SphereIsotopy iso = SphereIsotopy::canonical(h);
    const BallDiffeo B = ball_extend(iso, xi);
    CHECK(B.layered());
    families::Rng rng(5);
    for (const Pt& p : random_points(rng, 30)) {
        // g^{-1} g with a zero-strength twist between: identity up to round-off
        const auto low = B.apply(0.15, p.x, p.y);
        CHECK(dist({low[1], low[2]}, {p.x, p.y}) < 1e-13);
        for (double rho : {0.3, 0.55, 0.8, 1.0}) CHECK(B.apply(rho, p.x, p.y)[0] == rho);
        const auto top = B.apply(1.0, p.x, p.y);
        CHECK(dist({top[1], top[2]}, h(p.x, p.y)) <= 1e-14);
        const Eigen::Matrix3d J = ball_jacobian(B, 0.45, p.x, p.y);
        CHECK(J(0, 0) == 1.0);
        CHECK(J(0, 1) == 0.0);
        CHECK(J(0, 2) == 0.0);
        // lower-right block = plane Jacobian of the layer map (FD oracle)
        const DiscDiffeo layer = iso.at(xi(0.45));
        CHECK((J.block<2, 2>(1, 1) - fd_jacobian(layer, p.x, p.y)).cwiseAbs().maxCoeff() < 1e-9);
    }
    CHECK((B.boundary_layer()(0.3, 0.4)[0] - h(0.3, 0.4)[0]) == doctest::Approx(0.0).epsilon(1e-14));
    SphereIsotopy bad({IsoLink{Rotation{0.3}, {}}});
    CHECK_THROWS_AS(ball_extend(bad, xi), DomainError);
}

TEST_CASE("serialization round trip") {
    families::Rng rng(6);
    const DiscDiffeo g = disc_compose(families::random_disc_diffeo(rng),
                                      flow_map(bump_drift_field(0.1, 0.2, 0.4, 0.3, -0.2), 0.5, 32));
    const DiscDiffeo g2 = DiscDiffeo::deserialize(g.serialize());
    CHECK(g2.serialize() == g.serialize());
    for (const Pt& p : random_points(rng, 20)) CHECK(dist(g(p.x, p.y), g2(p.x, p.y)) == 0.0);
    CHECK_THROWS_AS(DiscDiffeo::deserialize("{\"type\": 1}"), ConfigError);
    CHECK_THROWS_AS(DiscDiffeo::deserialize("[{\"type\": \"shear\"}]"), ConfigError);
}
