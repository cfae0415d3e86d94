#include <cmath>

#include "doctest.h"
#include "vb/jet.hpp"

using namespace vb;

namespace {

// f(x, y) = sin(x y) exp(x) / (1 + y^2) + sqrt(x^2 + y^2) + atan2(y, x) + log(2 + x)
template <class T>
T f(const T& x, const T& y) {
    using std::atan2;
    using std::exp;
    using std::log;
    using std::sin;
    using std::sqrt;
    return sin(x * y) * exp(x) / (1.0 + y * y) + sqrt(x * x + y * y) + atan2(y, x) + log(2.0 + x);
}

double fd_partial(int i, double x, double y, double h = 1e-4) {
    auto g = [&](double s) { return i == 0 ? f(x + s, y) : f(x, y + s); };
    return (-g(2 * h) + 8 * g(h) - 8 * g(-h) + g(-2 * h)) / (12 * h);
}

}  // namespace

TEST_CASE("jet gradient and Hessian match finite differences") {
    for (auto [x, y] : {std::pair{0.3, 0.7}, std::pair{-0.4, 0.2}, std::pair{0.9, -1.1}}) {
        const Jet2 v = f(Jet2::var(x, 0), Jet2::var(y, 1));
        CHECK(v.v == doctest::Approx(f(x, y)).epsilon(1e-15));
        CHECK(std::abs(v.g[0] - fd_partial(0, x, y)) < 1e-9);
        CHECK(std::abs(v.g[1] - fd_partial(1, x, y)) < 1e-9);
        const double h = 1e-4;
        for (int i = 0; i < 2; ++i)
            for (int j = 0; j < 2; ++j) {
                const double dx = j == 0 ? h : 0.0, dy = j == 1 ? h : 0.0;
                const double d = (-fd_partial(i, x + 2 * dx, y + 2 * dy) + 8 * fd_partial(i, x + dx, y + dy) -
                                  8 * fd_partial(i, x - dx, y - dy) + fd_partial(i, x - 2 * dx, y - 2 * dy)) /
                                 (12 * h);
                CHECK(std::abs(v.hess(i, j) - d) < 1e-6);
            }
    }
}

TEST_CASE("jet closed forms") {
    const Jet2 x = Jet2::var(0.5, 0), y = Jet2::var(2.0, 1);
    const Jet2 p = x * x * y;  // 2xy, x^2 ; 2y, 2x, 0
    CHECK(p.g[0] == 2.0);
    CHECK(p.g[1] == 0.25);
    CHECK(p.hess(0, 0) == 4.0);
    CHECK(p.hess(0, 1) == 1.0);
    CHECK(p.hess(1, 1) == 0.0);
    const Jet2 q = 1.0 / y;
    CHECK(q.g[1] == -0.25);
    CHECK(q.hess(1, 1) == 0.25);
    const Jet3 r = Jet3::var(1.0, 2);
    CHECK(Jet3::idx(0, 2) == Jet3::idx(2, 0));
    CHECK(exp(r).hess(2, 2) == doctest::Approx(std::exp(1.0)));
    CHECK(value(r) == 1.0);
}

TEST_CASE("atan2 jet equals the polar angle derivatives") {
    const double x = -0.6, y = 0.8;
    const Jet2 t = atan2(Jet2::var(y, 1), Jet2::var(x, 0));
    const double r2 = x * x + y * y;
    CHECK(t.v == doctest::Approx(std::atan2(y, x)));
    CHECK(t.g[0] == doctest::Approx(-y / r2));
    CHECK(t.g[1] == doctest::Approx(x / r2));
    CHECK(t.hess(0, 0) == doctest::Approx(2 * x * y / (r2 * r2)));
    CHECK(t.hess(0, 1) == doctest::Approx((y * y - x * x) / (r2 * r2)));
}
