#include "vb/quadrature.hpp"

#include <cmath>
#include <exception>
#include <map>
#include <mutex>
#include <numbers>
#include <string>

#include <gsl/gsl_integration.h>

#include "vb/errors.hpp"

namespace vb {

std::shared_ptr<const GaussLegendre> gauss_legendre_unit(int n) {
    static std::mutex mu;
    static std::map<int, std::shared_ptr<const GaussLegendre>> cache;
    std::lock_guard<std::mutex> lock(mu);
    auto it = cache.find(n);
    if (it != cache.end()) return it->second;
    auto rule = std::make_shared<GaussLegendre>();
    // Golub-Welsch rule; the glfixed tables lose ~1e-10 in the weights beyond n = 100
    gsl_integration_fixed_workspace* w =
        gsl_integration_fixed_alloc(gsl_integration_fixed_legendre, n, 0.0, 1.0, 0.0, 0.0);
    if (!w) throw NumericError("gauss_legendre_unit: GSL rule allocation failed");
    const double* x = gsl_integration_fixed_nodes(w);
    const double* wt = gsl_integration_fixed_weights(w);
    rule->nodes.assign(x, x + n);
    rule->weights.assign(wt, wt + n);
    gsl_integration_fixed_free(w);
    cache.emplace(n, rule);
    return rule;
}

DiscGrid DiscGrid::make(int n_r, int n_theta) {
    if (n_r < 4 || n_theta < 8) throw ConfigError("DiscGrid: need n_r >= 4 and n_theta >= 8");
    return DiscGrid{n_r, n_theta, gauss_legendre_unit(n_r)};
}

BallGrid BallGrid::make(int n_rho, int n_plane, double L) {
    if (n_rho < 4 || n_plane < 4) throw ConfigError("BallGrid: node counts must be >= 4");
    if (!(L >= 1.0)) throw ConfigError("BallGrid: plane box half-width must be >= 1");
    return BallGrid{n_rho, n_plane, L, gauss_legendre_unit(n_rho), gauss_legendre_unit(n_plane)};
}

double pairwise_sum(const double* v, std::size_t n) {
    if (n <= 32) {
        double s = 0.0;
        for (std::size_t i = 0; i < n; ++i) s += v[i];
        return s;
    }
    const std::size_t h = n / 2;
    return pairwise_sum(v, h) + pairwise_sum(v + h, n - h);
}

double neumaier_sum(const std::vector<double>& v) {
    double s = 0.0, c = 0.0;
    for (double x : v) {
        const double t = s + x;
        c += std::abs(s) >= std::abs(x) ? (s - t) + x : (x - t) + s;
        s = t;
    }
    return s + c;
}

namespace {

// Evaluates f(i) * w(i) for i < n into a buffer.  The parallel path fills the
// buffer with OpenMP and reduces pairwise; the serial path is the reference.
template <class F>
double weighted_reduce(std::size_t n, F&& term, Exec exec, const char* what) {
    std::vector<double> vals(n);
    if (exec == Exec::Parallel) {
        std::exception_ptr err;
#pragma omp parallel for schedule(dynamic, 64)
        for (std::ptrdiff_t i = 0; i < static_cast<std::ptrdiff_t>(n); ++i) {
            try {
                vals[i] = term(static_cast<std::size_t>(i));
            } catch (...) {
#pragma omp critical(vb_quad_err)
                if (!err) err = std::current_exception();
            }
        }
        if (err) std::rethrow_exception(err);
        for (double v : vals)
            if (!std::isfinite(v)) throw NumericError(std::string(what) + ": non-finite density sample");
        return pairwise_sum(vals.data(), n);
    }
    for (std::size_t i = 0; i < n; ++i) {
        vals[i] = term(i);
        if (!std::isfinite(vals[i])) throw NumericError(std::string(what) + ": non-finite density sample");
    }
    return neumaier_sum(vals);
}

}  // namespace

double integrate_disc(const DiscDensity& density, const DiscGrid& grid, Exec exec) {
    const auto& R = *grid.r_rule;
    const int nt = grid.n_theta;
    const double wt = 2.0 * std::numbers::pi / nt;
    auto term = [&](std::size_t k) {
        const int i = static_cast<int>(k / nt), j = static_cast<int>(k % nt);
        const double r = R.nodes[i];
        return density(r, wt * j) * r * R.weights[i] * wt;
    };
    return weighted_reduce(static_cast<std::size_t>(grid.n_r) * nt, term, exec, "integrate_disc");
}

double integrate_plane(const PlaneDensity& density, int n_plane, double L, Exec exec) {
    const auto& P = *gauss_legendre_unit(n_plane);
    const double span = 2.0 * L;
    auto term = [&](std::size_t k) {
        const int i = static_cast<int>(k / n_plane), j = static_cast<int>(k % n_plane);
        const double x = -L + span * P.nodes[i], y = -L + span * P.nodes[j];
        return density(x, y) * span * span * P.weights[i] * P.weights[j];
    };
    return weighted_reduce(static_cast<std::size_t>(n_plane) * n_plane, term, exec, "integrate_plane");
}

double integrate_ball(const BallDensity& density, const BallGrid& grid, Exec exec) {
    const auto& Rh = *grid.rho_rule;
    const auto& P = *grid.plane_rule;
    const int np = grid.n_plane, nr = grid.n_rho;
    const double L = grid.L, span = 2.0 * L;

    for (int i = 0; i < nr; ++i)
        for (int j = 0; j < np; ++j) {
            const double t = -L + span * P.nodes[j];
            for (auto [x, y] : {std::pair{-L, t}, std::pair{L, t}, std::pair{t, -L}, std::pair{t, L}}) {
                const double d = density(Rh.nodes[i], x, y);
                if (!(std::abs(d) <= 1e-10)) throw SupportError("integrate_ball: density leaks to the plane box edge");
            }
        }

    const std::size_t plane = static_cast<std::size_t>(np) * np;
    auto term = [&](std::size_t k) {
        const int i = static_cast<int>(k / plane);
        const std::size_t rem = k % plane;
        const int a = static_cast<int>(rem / np), b = static_cast<int>(rem % np);
        const double x = -L + span * P.nodes[a], y = -L + span * P.nodes[b];
        return density(Rh.nodes[i], x, y) * Rh.weights[i] * span * span * P.weights[a] * P.weights[b];
    };
    return weighted_reduce(plane * nr, term, exec, "integrate_ball");
}

}  // namespace vb
