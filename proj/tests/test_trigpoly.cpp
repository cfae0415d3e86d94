#include <cmath>
#include <functional>
#include <numbers>
#include <random>

#include "doctest.h"
#include "vb/families.hpp"
#include "vb/trigpoly.hpp"

using namespace vb;

namespace {

constexpr double kPi = std::numbers::pi;

// Sampled oracle: compare coefficient-level results with pointwise evaluation.
double max_eval_diff(const TrigPoly& p, const std::function<cplx(double)>& f) {
    double d = 0.0;
    for (int j = 0; j < 97; ++j) {
        const double t = 2 * kPi * j / 97 + 0.013;
        d = std::max(d, std::abs(p.eval(t) - f(t)));
    }
    return d;
}

TrigPoly random_poly(families::Rng& rng, int h) { return families::random_trigpoly(rng, h, 1.0); }

}  // namespace

TEST_CASE("derivative examples") {
    const TrigPoly p = TrigPoly(3.0) + TrigPoly::cos_n(1, 2.0);
    CHECK(tp_derivative(p).max_coeff_diff(TrigPoly::sin_n(1, -2.0)) == 0.0);
    CHECK(tp_derivative(TrigPoly::sin_n(2)).max_coeff_diff(TrigPoly::cos_n(2, 2.0)) == 0.0);
    CHECK(tp_derivative(TrigPoly(5.0)).is_zero());
    CHECK(tp_derivative(p).max_harmonic() == p.max_harmonic());
}

TEST_CASE("product examples") {
    const TrigPoly c = TrigPoly::cos_n(1), s = TrigPoly::sin_n(1);
    CHECK(tp_multiply(c, c).max_coeff_diff(TrigPoly(0.5) + TrigPoly::cos_n(2, 0.5)) < 1e-16);
    CHECK(tp_multiply(c, s).max_coeff_diff(TrigPoly::sin_n(2, 0.5)) < 1e-16);
    families::Rng rng(3);
    const TrigPoly p = random_poly(rng, 6);
    CHECK(tp_multiply(TrigPoly(1.0), p).max_coeff_diff(p) == 0.0);
    CHECK(tp_multiply(p, p).max_harmonic() <= 12);
}

TEST_CASE("product agrees with pointwise multiplication") {
    families::Rng rng(4);
    const TrigPoly p = random_poly(rng, 7), q = random_poly(rng, 5);
    const TrigPoly pq = tp_multiply(p, q);
    CHECK(max_eval_diff(pq, [&](double t) { return p.eval(t) * q.eval(t); }) < 1e-14);
}

TEST_CASE("harmonic cap is enforced") {
    CHECK_THROWS_AS(tp_multiply(TrigPoly::cos_n(200), TrigPoly::cos_n(100)), HarmonicCapError);
    CHECK_NOTHROW(tp_multiply(TrigPoly::cos_n(200), TrigPoly::cos_n(100), 300));
}

TEST_CASE("period integral examples") {
    CHECK(std::abs(tp_integrate_period(TrigPoly(5.0) + TrigPoly::cos_n(3)) - 10 * kPi) < 1e-14);
    CHECK(std::abs(tp_integrate_period(tp_multiply(TrigPoly::cos_n(1), TrigPoly::cos_n(1))) - kPi) < 1e-14);
    CHECK(std::abs(tp_integrate_period(TrigPoly::sin_n(1))) == 0.0);
}

TEST_CASE("exponentials and periodicity") {
    const TrigPoly e = TrigPoly::exp_i(3, cplx(0.5, -1.0));
    CHECK_FALSE(e.is_real());
    CHECK(max_eval_diff(e, [](double t) { return cplx(0.5, -1.0) * std::exp(cplx(0, 3 * t)); }) < 1e-14);
    CHECK(std::abs(tp_integrate_period(tp_multiply(TrigPoly::exp_i(2), TrigPoly::exp_i(-2))) - 2 * kPi) < 1e-14);
    CHECK(std::abs(tp_integrate_period(tp_multiply(TrigPoly::exp_i(2), TrigPoly::exp_i(-3)))) < 1e-14);
    families::Rng rng(5);
    const TrigPoly p = random_poly(rng, 9);
    for (double t : {0.1, 1.7, -2.3}) CHECK(std::abs(p.eval(t) - p.eval(t + 2 * kPi)) < 1e-14);
}

TEST_CASE("Leibniz rule and zero mean of derivatives") {
    families::Rng rng(6);
    for (int k = 0; k < 20; ++k) {
        const TrigPoly p = random_poly(rng, 8), q = random_poly(rng, 8);
        const TrigPoly lhs = tp_derivative(tp_multiply(p, q));
        const TrigPoly rhs = tp_multiply(tp_derivative(p), q) + tp_multiply(p, tp_derivative(q));
        CHECK(lhs.max_coeff_diff(rhs) < 1e-13);
        CHECK(std::abs(tp_integrate_period(tp_derivative(p))) == 0.0);
    }
}

TEST_CASE("circle bracket examples") {
    const CircleField c{TrigPoly::cos_n(1)}, s{TrigPoly::sin_n(1)};
    CHECK(circle_bracket(c, s).component.max_coeff_diff(TrigPoly(1.0)) < 1e-15);
    CHECK(circle_bracket(c, c).component.is_zero(1e-15));
    for (int n = 1; n <= 5; ++n) {
        const CircleField dn{TrigPoly::sin_n(n)};
        CHECK(circle_bracket({TrigPoly(1.0)}, dn).component.max_coeff_diff(TrigPoly::cos_n(n, n)) < 1e-14);
    }
}

TEST_CASE("circle bracket: antisymmetry and Jacobi on random triples") {
    families::Rng rng(7);
    for (int k = 0; k < 20; ++k) {
        const CircleField u{random_poly(rng, 8)}, v{random_poly(rng, 8)}, w{random_poly(rng, 8)};
        const TrigPoly uv = circle_bracket(u, v).component, vu = circle_bracket(v, u).component;
        CHECK((uv + vu).is_zero(1e-14));
        const TrigPoly jac = circle_bracket(u, circle_bracket(v, w)).component +
                             circle_bracket(v, circle_bracket(w, u)).component +
                             circle_bracket(w, circle_bracket(u, v)).component;
        CHECK(jac.is_zero(1e-12));
    }
}

TEST_CASE("Gelfand-Fuchs examples and cocycle property") {
    const CircleField e1{TrigPoly::exp_i(1)}, em1{TrigPoly::exp_i(-1)};
    CHECK(std::abs(gelfand_fuchs(e1, em1) + 1.0 / 12.0) < 1e-15);
    // (1/24 pi i)(-2 pi i n^3) for e^{in}, e^{-in}
    for (int n = 1; n <= 6; ++n)
        CHECK(std::abs(gelfand_fuchs({TrigPoly::exp_i(n)}, {TrigPoly::exp_i(-n)}) + n * n * n / 12.0) < 1e-12);
    families::Rng rng(8);
    const CircleField v{random_poly(rng, 6)}, w{random_poly(rng, 6)}, z{random_poly(rng, 6)};
    CHECK(std::abs(gelfand_fuchs(v, v)) < 1e-15);
    CHECK(std::abs(gelfand_fuchs({TrigPoly(1.0)}, w)) == 0.0);
    const cplx cyc = gelfand_fuchs(circle_bracket(v, w), z) + gelfand_fuchs(circle_bracket(w, z), v) +
                     gelfand_fuchs(circle_bracket(z, v), w);
    CHECK(std::abs(cyc) < 1e-12);
}

TEST_CASE("Heisenberg cocycle examples") {
    const CircleField c{TrigPoly::cos_n(1)}, s{TrigPoly::sin_n(1)};
    CHECK(std::abs(heisenberg_cocycle(c, s) + kPi) < 1e-14);
    CHECK(std::abs(heisenberg_cocycle(c, c)) < 1e-15);
    CHECK(std::abs(heisenberg_cocycle({TrigPoly(2.0)}, s)) == 0.0);
    families::Rng rng(9);
    for (int k = 0; k < 10; ++k) {
        const CircleField v{random_poly(rng, 7)}, w{random_poly(rng, 7)};
        CHECK(std::abs(heisenberg_cocycle(v, w) + heisenberg_cocycle(w, v)) < 1e-13);
    }
}

TEST_CASE("sample fitting recovers a polynomial") {
    families::Rng rng(10);
    const TrigPoly p = random_poly(rng, 6);
    std::vector<double> s(64);
    for (int j = 0; j < 64; ++j) s[j] = p.eval(2 * kPi * j / 64).real();
    CHECK(tp_fit_samples(s, 12, 1e-13).max_coeff_diff(p) < 1e-13);
}
