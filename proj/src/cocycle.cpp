#include "vb/cocycle.hpp"

#include <algorithm>
#include <cmath>
#include <mutex>
#include <shared_mutex>
#include <unordered_map>

namespace vb {

namespace {

class GammaCache {
public:
    bool find(const std::string& key, double& out) const {
        std::shared_lock lock(mu_);
        auto it = map_.find(key);
        if (it == map_.end()) return false;
        out = it->second;
        return true;
    }
    void insert(const std::string& key, double v) {
        std::unique_lock lock(mu_);
        map_.emplace(key, v);
    }
    void clear() {
        std::unique_lock lock(mu_);
        map_.clear();
    }
    std::size_t size() const {
        std::shared_lock lock(mu_);
        return map_.size();
    }

private:
    mutable std::shared_mutex mu_;
    std::unordered_map<std::string, double> map_;
};

GammaCache& cache() {
    static GammaCache c;
    return c;
}

std::string cache_key(const DiscDiffeo& g, const DiscDiffeo& h_inv, const CocycleConfig& cfg) {
    try {
        return g.serialize() + "|" + h_inv.serialize() + "|" + std::to_string(cfg.disc.n_r) + "x" +
               std::to_string(cfg.disc.n_theta) + "|" + std::to_string(int(cfg.plan.kind)) + ":" +
               std::to_string(cfg.plan.rel_step) + "|" + std::to_string(int(cfg.exec));
    } catch (const UnsupportedError&) {
        return {};
    }
}

MC2 disc_mc(const DiscDiffeo& g, double x, double y, const DerivativePlan& plan) {
    return mc_components(disc_jacobian_jet(g, x, y, plan));
}

}  // namespace

double gamma_m_given_inverse(const DiscDiffeo& g, const DiscDiffeo& h_inv, const CocycleConfig& cfg) {
    if (g.empty() || h_inv.empty()) return 0.0;
    std::string key;
    if (cfg.use_cache) {
        key = cache_key(g, h_inv, cfg);
        double v;
        if (!key.empty() && cache().find(key, v)) return v;
    }
    auto density = [&](double r, double th) {
        const double x = r * std::cos(th), y = r * std::sin(th);
        return wedge_trace_2form(disc_mc(g, x, y, cfg.plan), disc_mc(h_inv, x, y, cfg.plan));
    };
    const double v = integrate_disc(density, cfg.disc, cfg.exec);
    if (!key.empty()) cache().insert(key, v);
    return v;
}

double gamma_m(const DiscDiffeo& g, const DiscDiffeo& h, const CocycleConfig& cfg) {
    return gamma_m_given_inverse(g, disc_invert(h), cfg);
}

double gamma(const DiscDiffeo& g, const DiscDiffeo& h, const CocycleConfig& cfg) {
    if (cfg.c0 == 0.0) return 0.0;
    return 3.0 * cfg.c0 * gamma_m(g, h, cfg);
}

void gamma_cache_clear() { cache().clear(); }
std::size_t gamma_cache_size() { return cache().size(); }

ExtElement ext_mul(const ExtElement& e1, const ExtElement& e2, const CocycleConfig& cfg) {
    return {disc_compose(e1.g, e2.g), e1.a + e2.a + gamma(e1.g, e2.g, cfg)};
}

ExtElement ext_inverse(const ExtElement& e) { return {disc_invert(e.g), -e.a}; }

double wz_term(const BallDiffeo& B, const CocycleConfig& cfg) {
    if (B.links().empty()) return 0.0;
    auto density = [&](double rho, double x, double y) {
        return wedge_trace_cube(mc_components(ball_jacobian_jet(B, rho, x, y, cfg.plan)));
    };
    return integrate_ball(density, cfg.ball, cfg.exec);
}

double omega0(const DiscDiffeo& h, const CocycleConfig& cfg) {
    for (double s : {0.25, 0.5, 0.75, 1.0})
        if (!is_boundary_trivial(h.at_isotopy(s)))
            throw NotBoundaryTrivialError("omega0: map or its isotopy is not boundary-trivial");
    if (h.empty()) return 0.0;
    return cfg.c0 * wz_term(ball_extend(SphereIsotopy::canonical(h), cfg.ball_xi), cfg);
}

ExtElement iota(const DiscDiffeo& h, const CocycleConfig& cfg) { return {h, omega0(h, cfg)}; }

double delta_g_residual(const DiscDiffeo& g, const DiscDiffeo& h, const CocycleConfig& cfg) {
    const DiscDiffeo ghg = conjugate(g, h);
    const DiscDiffeo gh = disc_compose(g, h);
    const DiscDiffeo g_inv = disc_invert(g);
    return std::abs(omega0(h, cfg) + gamma(g, h, cfg) + gamma(gh, g_inv, cfg) - omega0(ghg, cfg));
}

double sphere_pairing(const BallDiffeo& g, const BallDiffeo& h, const CocycleConfig& cfg) {
    const DiscDiffeo gb = g.boundary_layer();
    const DiscDiffeo hb_inv = disc_invert(h.boundary_layer());
    if (gb.empty() || hb_inv.empty()) return 0.0;
    auto density = [&](double x, double y) {
        if (x * x + y * y >= 1.0) return 0.0;
        return wedge_trace_2form(disc_mc(gb, x, y, cfg.plan), disc_mc(hb_inv, x, y, cfg.plan));
    };
    return integrate_plane(density, cfg.ball.n_plane, cfg.ball.L, cfg.exec);
}

double w_coboundary_residual(const BallDiffeo& g, const BallDiffeo& h, const CocycleConfig& cfg) {
    const double lhs = wz_term(ball_compose(g, h), cfg) - wz_term(g, cfg) - wz_term(h, cfg);
    return std::abs(lhs - 3.0 * sphere_pairing(g, h, cfg));
}

namespace {

// gradient of phi = log(d_rho g^(1)) at rho = 1
std::array<double, 2> phi_gradient(const BallDiffeo& B, double x, double y) {
    const auto v = B.apply(Jet3::var(1.0, 0), Jet3::var(x, 1), Jet3::var(y, 2));
    const double dn = v[0].g[0];
    if (!(dn > 0.0)) throw DomainError("phi_correction_integral: nonpositive boundary normal derivative");
    return {v[0].hess(0, 1) / dn, v[0].hess(0, 2) / dn};
}

}  // namespace

double phi_correction_integral(const BallDiffeo& g, const BallDiffeo& h, const CocycleConfig& cfg) {
    auto density = [&](double x, double y) {
        const auto a = phi_gradient(g, x, y);
        const auto b = phi_gradient(h, x, y);
        return a[0] * b[1] - b[0] * a[1];
    };
    return integrate_plane(density, cfg.ball.n_plane, cfg.ball.L, cfg.exec);
}

CheckResult make_check(std::string name, std::string anchor, double residual, double tolerance,
                       std::map<std::string, double> params) {
    CheckResult c{std::move(name), std::move(anchor), residual, tolerance, false, std::move(params)};
    c.pass = std::isfinite(residual) && residual <= tolerance;
    return c;
}

bool decays(double coarse, double fine, double scale, double factor) {
    return coarse <= kDecayFloor * std::max(1.0, std::abs(scale)) || fine * factor <= coarse;
}

}  // namespace vb
