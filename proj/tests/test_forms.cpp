#include <cmath>
#include <numbers>
#include <random>

#include "doctest.h"
#include "vb/families.hpp"
#include "vb/forms.hpp"
#include "vb/quadrature.hpp"

using namespace vb;

namespace {

constexpr double kPi = std::numbers::pi;

int levi_civita(int i, int j, int k) { return (i - j) * (j - k) * (k - i) / 2; }

// sum_{ijk} eps_{ijk} tr(a_i a_j a_k)
double cube_oracle(const MC3& a) {
    double s = 0.0;
    for (int i = 0; i < 3; ++i)
        for (int j = 0; j < 3; ++j)
            for (int k = 0; k < 3; ++k)
                if (int e = levi_civita(i, j, k)) s += e * (a[i] * a[j] * a[k]).trace();
    return s;
}

MC3 random_mc3(families::Rng& rng) {
    std::uniform_real_distribution<double> u(-1.0, 1.0);
    MC3 a;
    for (auto& m : a)
        for (int i = 0; i < 3; ++i)
            for (int j = 0; j < 3; ++j) m(i, j) = u(rng);
    return a;
}

}  // namespace

TEST_CASE("Maurer-Cartan form examples") {
    for (const DiscDiffeo& g : {DiscDiffeo::identity(), rotation(1.3)}) {
        const MCFormSample s = mc_form(g, 0.3, -0.2);
        CHECK(s.n == 2);
        for (const auto& m : s.components) CHECK(m.cwiseAbs().maxCoeff() == 0.0);
    }
    const MCFormSample b = mc_form(ball_extend(SphereIsotopy(), CutoffFn{}), 0.5, 0.1, 0.1);
    CHECK(b.n == 3);
    CHECK(b.components.size() == 3);
}

TEST_CASE("composition law for theta and derivative of the inverse") {
    families::Rng rng(11);
    std::uniform_real_distribution<double> u(0.0, 1.0);
    for (int k = 0; k < 4; ++k) {
        const DiscDiffeo g = families::random_disc_diffeo(rng), h = families::random_disc_diffeo(rng);
        const DiscDiffeo gh = disc_compose(g, h);
        for (int j = 0; j < 10; ++j) {
            const double r = 0.95 * std::sqrt(u(rng)), t = 2 * kPi * u(rng);
            const double x = r * std::cos(t), y = r * std::sin(t);
            const MC2 lhs = mc_components(disc_jacobian_jet(gh, x, y));
            const JacobianJet2 jh = disc_jacobian_jet(h, x, y);
            const MC2 th = mc_components(jh);
            const auto p = h(x, y);
            const MC2 tg = mc_components(disc_jacobian_jet(g, p[0], p[1]));
            for (int i = 0; i < 2; ++i) {
                const Eigen::Matrix2d pulled = tg[0] * jh.J(0, i) + tg[1] * jh.J(1, i);
                const Eigen::Matrix2d rhs = jh.J.inverse() * pulled * jh.J + th[i];
                CHECK((lhs[i] - rhs).cwiseAbs().maxCoeff() < 1e-7);
            }
            // d(J^{-1}) = -J^{-1} dJ J^{-1}, FD4 in x
            const double hs = 1e-4;
            auto Jinv = [&](double s) { return disc_jacobian(g, x + s, y).inverse(); };
            const Eigen::Matrix2d fd = (-Jinv(2 * hs) + 8 * Jinv(hs) - 8 * Jinv(-hs) + Jinv(-2 * hs)) / (12 * hs);
            const JacobianJet2 jg = disc_jacobian_jet(g, x, y);
            const Eigen::Matrix2d an = -jg.J.inverse() * jg.dJ[0] * jg.J.inverse();
            CHECK((fd - an).cwiseAbs().maxCoeff() < 1e-6);
        }
    }
}

TEST_CASE("wedge of 2-forms") {
    families::Rng rng(12);
    const DiscDiffeo g = families::random_disc_diffeo(rng), h = families::random_disc_diffeo(rng);
    const MCFormSample a = mc_form(g, 0.2, 0.5), b = mc_form(h, 0.2, 0.5);
    const MCFormSample zero{2, {Eigen::Matrix2d::Zero(), Eigen::Matrix2d::Zero()}};
    CHECK(wedge_trace_2form(zero, b) == 0.0);
    CHECK(wedge_trace_2form(a, b) + wedge_trace_2form(b, a) == 0.0);
    const MCFormSample scalar{2, {Eigen::Matrix2d::Identity(), Eigen::Matrix2d::Identity()}};
    const double tb = b.components[1].trace() - b.components[0].trace();
    CHECK(std::abs(wedge_trace_2form(scalar, b) - tb) < 1e-15);
    const MCFormSample diag{2, {b.components[0], b.components[0]}};
    CHECK(wedge_trace_2form(scalar, diag) == 0.0);
    const MCFormSample three{3, {Eigen::Matrix3d::Identity(), Eigen::Matrix3d::Identity(), Eigen::Matrix3d::Identity()}};
    CHECK_THROWS_AS(wedge_trace_2form(three, b), DimensionError);
    CHECK_THROWS_AS(wedge_trace_cube(a), DimensionError);
}

TEST_CASE("wedge cube against the Levi-Civita oracle") {
    families::Rng rng(13);
    CHECK(wedge_trace_cube(MC3{Eigen::Matrix3d::Zero(), Eigen::Matrix3d::Zero(), Eigen::Matrix3d::Zero()}) == 0.0);
    for (int k = 0; k < 20; ++k) {
        const MC3 a = random_mc3(rng);
        CHECK(std::abs(wedge_trace_cube(a) - cube_oracle(a)) < 1e-12);
        const MC3 rep{a[0], a[0], a[2]};
        CHECK(std::abs(wedge_trace_cube(rep) - cube_oracle(rep)) < 1e-12);
    }
}

TEST_CASE("layered form reduces to the 2x2 block") {
    // theta = [[0, 0], [u_k, M_k]] with M_k = A^{-1} d_k A, A the plane Jacobian of
    // the layer, so tr(theta^3) = sum eps tr(M_i M_j M_k).
    const CutoffFn xi{0.2, 0.2};
    const SphereIsotopy iso = SphereIsotopy::canonical(families::conjugated_twist(0.5, 0.4));
    const BallDiffeo B = ball_extend(iso, xi);
    for (auto [rho, x, y] : {std::tuple{0.45, 0.3, 0.2}, std::tuple{0.6, -0.4, 0.1}, std::tuple{0.5, 0.05, -0.55}}) {
        const double full = wedge_trace_cube(mc_form(B, rho, x, y));
        auto A = [&](double r) { return disc_jacobian(iso.at(xi(r)), x, y); };
        auto dA_rho = [&](double h) { return (-A(rho + 2 * h) + 8 * A(rho + h) - 8 * A(rho - h) + A(rho - 2 * h)) / (12 * h); };
        const Eigen::Matrix2d dr = (16 * dA_rho(5e-4) - dA_rho(1e-3)) / 15;
        const JacobianJet2 jj = disc_jacobian_jet(iso.at(xi(rho)), x, y);
        const Eigen::Matrix2d Ai = jj.J.inverse();
        const std::array<Eigen::Matrix2d, 3> M = {Ai * dr, Ai * jj.dJ[0], Ai * jj.dJ[1]};
        double red = 0.0;
        for (int i = 0; i < 3; ++i)
            for (int j = 0; j < 3; ++j)
                for (int k = 0; k < 3; ++k)
                    if (int e = levi_civita(i, j, k)) red += e * (M[i] * M[j] * M[k]).trace();
        CHECK(std::abs(full - red) < 1e-9);
    }
}

TEST_CASE("disc quadrature examples") {
    const DiscGrid g = DiscGrid::make(96, 256);
    CHECK(std::abs(integrate_disc([](double, double) { return 1.0; }, g) - kPi) < 1e-12);
    CHECK(std::abs(integrate_disc([](double r, double) { return r * r; }, g) - kPi / 2) < 1e-12);
    CHECK(std::abs(integrate_disc([](double, double t) { return std::sin(t); }, g)) < 1e-12);
    CHECK_THROWS_AS(integrate_disc([](double, double) { return NAN; }, g), NumericError);
    CHECK_THROWS_AS(DiscGrid::make(3, 64), ConfigError);
}

TEST_CASE("plane and ball quadrature examples") {
    // the flat element: box volume
    CHECK(std::abs(integrate_plane([](double, double) { return 1.0; }, 16, 1.0) - 4.0) < 1e-13);
    const BallGrid bg = BallGrid::make(24, 64, 1.25);
    // ball: unit weight in rho times a polynomial vanishing on the box edge
    auto edge_poly = [](double, double x, double y) {
        const double L2 = 1.25 * 1.25;
        return (L2 - x * x) * (L2 - y * y);
    };
    const double L = 1.25, one_d = 4.0 * L * L * L / 3.0;
    CHECK(std::abs(integrate_ball(edge_poly, bg) - one_d * one_d) < 1e-12);

    // separable Gaussians: tensor rule equals the product of 1-D rules
    const double s = 0.15;
    auto gx = [s](double x) { return std::exp(-(x - 0.1) * (x - 0.1) / (s * s)); };
    auto gy = [s](double y) { return std::exp(-(y + 0.2) * (y + 0.2) / (s * s)); };
    auto grho = [](double r) { return 1.0 + r * r; };
    const auto& P = *gauss_legendre_unit(64);
    const auto& R = *gauss_legendre_unit(24);
    double sx = 0, sy = 0, sr = 0;
    for (int i = 0; i < 64; ++i) {
        sx += 2 * L * P.weights[i] * gx(-L + 2 * L * P.nodes[i]);
        sy += 2 * L * P.weights[i] * gy(-L + 2 * L * P.nodes[i]);
    }
    for (int i = 0; i < 24; ++i) sr += R.weights[i] * grho(R.nodes[i]);
    const double tensor = integrate_ball([&](double r, double x, double y) { return grho(r) * gx(x) * gy(y); }, bg);
    CHECK(std::abs(tensor - sx * sy * sr) < 1e-10);
    CHECK(std::abs(tensor - (4.0 / 3.0) * kPi * s * s) < 1e-10);

    CHECK(integrate_ball([](double, double, double) { return 0.0; }, bg) == 0.0);
    CHECK_THROWS_AS(integrate_ball([](double, double, double) { return 1.0; }, bg), SupportError);
    CHECK_THROWS_AS(BallGrid::make(24, 64, 0.9), ConfigError);
}

TEST_CASE("serial and parallel kernels agree") {
    families::Rng rng(14);
    const DiscDiffeo g = families::random_disc_diffeo(rng);
    auto dens = [&](double r, double t) {
        const MC2 a = mc_components(disc_jacobian_jet(g, r * std::cos(t), r * std::sin(t)));
        return a[0].trace() * a[1](0, 1);
    };
    const DiscGrid grid = DiscGrid::make(32, 64);
    const double ser = integrate_disc(dens, grid, Exec::Serial), par = integrate_disc(dens, grid, Exec::Parallel);
    CHECK(std::abs(ser - par) <= 1e-13 * std::max(1.0, std::abs(ser)));
}

TEST_CASE("Gauss-Legendre rules") {
    for (int n : {4, 24, 96, 192, 384}) {
        const auto& r = *gauss_legendre_unit(n);
        double s = 0, m4 = 0;
        for (int i = 0; i < n; ++i) {
            CHECK(r.weights[i] > 0.0);
            s += r.weights[i];
            m4 += r.weights[i] * std::pow(r.nodes[i], 4);
        }
        CHECK(std::abs(s - 1.0) < 1e-14);
        CHECK(std::abs(m4 - 0.2) < 1e-14);
    }
}

TEST_CASE("eta closedness") {
    CHECK(eta_closedness_residual(2, 100, 42) <= 1e-12);
    CHECK(eta_closedness_residual(3, 100, 42) <= 1e-12);
    CHECK_THROWS_AS(eta_closedness_residual(4, 10, 1), DimensionError);
}
