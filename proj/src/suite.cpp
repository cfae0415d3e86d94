#include "vb/suite.hpp"

#include <algorithm>
#include <atomic>
#include <cmath>
#include <cstdio>
#include <fstream>
#include <mutex>
#include <numbers>
#include <sstream>
#include <thread>

#include "vb/families.hpp"
#include "vb/forms.hpp"
#include "vb/liealg.hpp"

namespace vb {

namespace {

using families::Rng;
using json = nlohmann::ordered_json;
constexpr double kPi = std::numbers::pi;

// Per-check stream: independent of which other checks run and in what order.
Rng check_rng(std::uint64_t seed, const std::string& name) {
    std::uint64_t h = 1469598103934665603ULL;
    for (unsigned char ch : name) h = (h ^ ch) * 1099511628211ULL;
    std::seed_seq seq{std::uint32_t(seed), std::uint32_t(seed >> 32), std::uint32_t(h), std::uint32_t(h >> 32)};
    return Rng(seq);
}

double unif(Rng& rng, double lo, double hi) { return std::uniform_real_distribution<double>(lo, hi)(rng); }

Measurement worst_of(const std::vector<double>& residuals, double value) {
    Measurement m;
    m.value = value;
    for (double r : residuals) m.residual = std::max(m.residual, std::isfinite(r) ? r : INFINITY);
    m.params["samples"] = double(residuals.size());
    return m;
}

// ------------------------------------------------------------------ forms

Measurement forms_disc_area(const SuiteConfig& sc, const GridSpec& g) {
    const CocycleConfig cfg = sc.cocycle(g);
    const double v = integrate_disc([](double, double) { return 1.0; }, cfg.disc, cfg.exec);
    return {v, std::abs(v - kPi), {}};
}

Measurement forms_eta(int n, const SuiteConfig& sc) {
    const double r = eta_closedness_residual(n, 100, sc.seed);
    return {r, r, {{"n", double(n)}, {"samples", 100.0}}};
}

// theta(g o h) = J(h)^{-1} (h^* theta(g)) J(h) + theta(h), entrywise at random points
Measurement forms_mc_composition(const SuiteConfig& sc, const GridSpec&, Rng rng) {
    const DerivativePlan plan{sc.plan};
    std::vector<double> res;
    for (int k = 0; k < 2; ++k) {
        const DiscDiffeo g = families::random_disc_diffeo(rng), h = families::random_disc_diffeo(rng);
        const DiscDiffeo gh = disc_compose(g, h);
        for (int j = 0; j < 10; ++j) {
            const double r = std::sqrt(unif(rng, 0.0, 0.9)), t = unif(rng, 0.0, kTwoPi);
            const double x = r * std::cos(t), y = r * std::sin(t);
            const MC2 lhs = mc_components(disc_jacobian_jet(gh, x, y, plan));
            const JacobianJet2 jh = disc_jacobian_jet(h, x, y, plan);
            const MC2 th = mc_components(jh);
            const Vec2<double> p = h(x, y);
            const MC2 tg = mc_components(disc_jacobian_jet(g, p[0], p[1], plan));
            const Eigen::Matrix2d Jinv = jh.J.inverse();
            double worst = 0.0;
            for (int i = 0; i < 2; ++i) {
                const Eigen::Matrix2d pulled = tg[0] * jh.J(0, i) + tg[1] * jh.J(1, i);
                const Eigen::Matrix2d rhs = Jinv * pulled * jh.J + th[i];
                worst = std::max(worst, (lhs[i] - rhs).cwiseAbs().maxCoeff());
            }
            res.push_back(worst);
        }
    }
    return worst_of(res, 0.0);
}

Measurement forms_wedge_antisymmetry(const SuiteConfig& sc, const GridSpec&, Rng rng) {
    const DerivativePlan plan{sc.plan};
    const DiscDiffeo g = families::random_disc_diffeo(rng), h = families::random_disc_diffeo(rng);
    std::vector<double> res;
    for (int j = 0; j < 20; ++j) {
        const double r = std::sqrt(unif(rng, 0.0, 0.9)), t = unif(rng, 0.0, kTwoPi);
        const double x = r * std::cos(t), y = r * std::sin(t);
        const MC2 a = mc_components(disc_jacobian_jet(g, x, y, plan));
        const MC2 b = mc_components(disc_jacobian_jet(h, x, y, plan));
        res.push_back(std::abs(wedge_trace_2form(a, b) + wedge_trace_2form(b, a)));
    }
    return worst_of(res, 0.0);
}

// ---------------------------------------------------------------- cocycle

Measurement gamma_2cocycle(const SuiteConfig& sc, const GridSpec& g, Rng rng) {
    const CocycleConfig cfg = sc.cocycle(g);
    std::vector<double> res;
    double scale = 0.0;
    for (int k = 0; k < 3; ++k) {
        const DiscDiffeo g1 = families::random_disc_diffeo(rng), g2 = families::random_disc_diffeo(rng),
                         g3 = families::random_disc_diffeo(rng);
        const double a = gamma(g1, g2, cfg), b = gamma(disc_compose(g1, g2), g3, cfg);
        const double c = gamma(g2, g3, cfg), d = gamma(g1, disc_compose(g2, g3), cfg);
        res.push_back(std::abs(a + b - c - d));
        scale = std::max({scale, std::abs(a), std::abs(b), std::abs(c), std::abs(d)});
    }
    Measurement m = worst_of(res, scale);
    m.params["max_abs_gamma"] = scale;
    return m;
}

Measurement gamma_normalization(const SuiteConfig& sc, const GridSpec& g, Rng rng) {
    const CocycleConfig cfg = sc.cocycle(g);
    std::vector<double> res;
    for (int k = 0; k < 3; ++k) {
        const DiscDiffeo h = families::random_disc_diffeo(rng);
        res.push_back(std::abs(gamma(h, disc_invert(h), cfg)));
        res.push_back(std::abs(gamma(DiscDiffeo::identity(), h, cfg)));
        res.push_back(std::abs(gamma(h, DiscDiffeo::identity(), cfg)));
    }
    return worst_of(res, 0.0);
}

Measurement gamma_antisymmetry(const SuiteConfig& sc, const GridSpec& g, Rng rng) {
    const CocycleConfig cfg = sc.cocycle(g);
    std::vector<double> res;
    double scale = 0.0;
    for (int k = 0; k < 3; ++k) {
        const DiscDiffeo a = families::random_disc_diffeo(rng), b = families::random_disc_diffeo(rng);
        const double v = gamma(a, b, cfg);
        res.push_back(std::abs(v + gamma(disc_invert(b), disc_invert(a), cfg)));
        scale = std::max(scale, std::abs(v));
    }
    return worst_of(res, scale);
}

Measurement gamma_rotations(const SuiteConfig& sc, const GridSpec& g, Rng rng) {
    const CocycleConfig cfg = sc.cocycle(g);
    std::vector<double> res;
    for (int k = 0; k < 3; ++k)
        res.push_back(std::abs(gamma_m(rotation(unif(rng, -3.0, 3.0)), rotation(unif(rng, -3.0, 3.0)), cfg)));
    return worst_of(res, 0.0);
}

Measurement ext_associativity(const SuiteConfig& sc, const GridSpec& g, Rng rng) {
    const CocycleConfig cfg = sc.cocycle(g);
    std::vector<double> res;
    for (int k = 0; k < 2; ++k) {
        const ExtElement e1{families::random_disc_diffeo(rng), unif(rng, -1.0, 1.0)};
        const ExtElement e2{families::random_disc_diffeo(rng), unif(rng, -1.0, 1.0)};
        const ExtElement e3{families::random_disc_diffeo(rng), unif(rng, -1.0, 1.0)};
        const ExtElement l = ext_mul(ext_mul(e1, e2, cfg), e3, cfg);
        const ExtElement r = ext_mul(e1, ext_mul(e2, e3, cfg), cfg);
        res.push_back(std::abs(l.a - r.a));
    }
    return worst_of(res, 0.0);
}

// --------------------------------------------------------------------- wz

Measurement wz_identity(const SuiteConfig& sc, const GridSpec& g) {
    const double w = wz_term(ball_extend(SphereIsotopy(), CutoffFn{0.2, 0.2}), sc.cocycle(g));
    return {w, std::abs(w), {}};
}

Measurement wz_cutoff_independence(const SuiteConfig& sc, const GridSpec& g, Rng rng) {
    const CocycleConfig cfg = sc.cocycle(g);
    constexpr double amp = 0.025;
    const std::vector<DiscDiffeo> maps = {radial_twist(0.1, 0.9, amp), families::conjugated_twist(amp, 1.0),
                                          families::random_h_element(rng, amp)};
    std::vector<double> res;
    double scale = 0.0;
    for (const DiscDiffeo& h : maps) {
        const SphereIsotopy iso = SphereIsotopy::canonical(h);
        const double w1 = wz_term(ball_extend(iso, CutoffFn{0.2, 0.2}), cfg);
        const double w2 = wz_term(ball_extend(iso, CutoffFn{0.3, 0.1}), cfg);
        res.push_back(std::abs(w1 - w2));
        scale = std::max(scale, std::abs(w1));
    }
    Measurement m = worst_of(res, scale);
    m.params["amplitude"] = amp;
    return m;
}

Measurement wz_boundary_trivial(const SuiteConfig& sc, const GridSpec& g) {
    const CocycleConfig cfg = sc.cocycle(g);
    constexpr double amp = 0.03;
    std::vector<double> res;
    for (int k = 0; k < 5; ++k) res.push_back(std::abs(wz_term(ball_extend(families::loop_isotopy(k, amp), cfg.ball_xi), cfg)));
    Measurement m = worst_of(res, 0.0);
    m.params["amplitude"] = amp;
    return m;
}

Measurement omega0_coboundary(const SuiteConfig& sc, const GridSpec& g, Rng rng) {
    const CocycleConfig cfg = sc.cocycle(g);
    constexpr double amp = 0.08;
    std::vector<double> res;
    double scale = 0.0;
    for (int k = 0; k < 2; ++k) {
        const DiscDiffeo h1 = families::random_h_element(rng, amp), h2 = families::random_h_element(rng, amp);
        const double gm = gamma(h1, h2, cfg);
        res.push_back(std::abs(omega0(disc_compose(h1, h2), cfg) - omega0(h1, cfg) - omega0(h2, cfg) - gm));
        scale = std::max(scale, std::abs(gm));
    }
    Measurement m = worst_of(res, scale);
    m.params["amplitude"] = amp;
    return m;
}

Measurement delta_g(const SuiteConfig& sc, const GridSpec& g, Rng rng) {
    const CocycleConfig cfg = sc.cocycle(g);
    constexpr double amp = 0.3;
    std::vector<double> res;
    for (int k = 0; k < 2; ++k)
        res.push_back(delta_g_residual(rotation(unif(rng, -3.0, 3.0)),
                                       families::conjugated_twist(amp, unif(rng, -3.0, 3.0)), cfg));
    Measurement m = worst_of(res, 0.0);
    m.params["amplitude"] = amp;
    return m;
}

Measurement w_coboundary(const SuiteConfig& sc, const GridSpec& g, Rng rng) {
    const CocycleConfig cfg = sc.cocycle(g);
    constexpr double amp = 0.08;
    const DiscDiffeo h1 = families::random_h_element(rng, amp), h2 = families::random_h_element(rng, amp);
    const BallDiffeo B1 = ball_extend(SphereIsotopy::canonical(h1), cfg.ball_xi);
    const BallDiffeo B2 = ball_extend(SphereIsotopy::canonical(h2), cfg.ball_xi);
    Measurement m;
    m.value = sphere_pairing(B1, B2, cfg);
    m.residual = w_coboundary_residual(B1, B2, cfg);
    m.params["amplitude"] = amp;
    return m;
}

// The bump profiles are steep near the edge of their support, so the plane
// rule is taken 4x finer than the configured one.
Measurement phi_correction(const SuiteConfig& sc, const GridSpec& g) {
    GridSpec fine = g;
    fine.n_plane = 4 * g.n_plane;
    const CocycleConfig cfg = sc.cocycle(fine);
    const CutoffFn xi{0.2, 0.2};
    const BallDiffeo a({NormalStretch{0.2, 0.1, 0.6, 0.3, xi}});
    const BallDiffeo b({NormalStretch{-0.15, 0.05, 0.7, -0.25, xi}});
    const double v = phi_correction_integral(a, b, cfg);
    return {v, std::abs(v), {{"n_plane_used", double(fine.n_plane)}}};
}

// ----------------------------------------------------------------- liealg

struct GenOracle {
    std::vector<GeneratorTerm> terms;
    cplx central;
};

// closed-form structure constants, derived independently of the trig-poly path
GenOracle generator_oracle(int n, int m, GeneratorKind kind, double c0) {
    const cplx i(0.0, 1.0);
    GenOracle o;
    const bool resonant = n + m == 0;
    switch (kind) {
        case GeneratorKind::LL:
            if (n != m) o.terms.push_back({false, n + m, double(n - m)});
            if (resonant) o.central = -12.0 * kPi * c0 * i * double(n * n * n - 2 * n);
            break;
        case GeneratorKind::LJ:
            if (m != 0) o.terms.push_back({true, n + m, double(-m)});
            if (resonant) o.central = 12.0 * kPi * c0 * double(n * n);
            break;
        case GeneratorKind::JJ:
            if (resonant) o.central = -36.0 * kPi * c0 * i * double(n);
            break;
    }
    return o;
}

double generator_deviation(const GeneratorBracket& got, const GenOracle& want) {
    double dev = std::abs(got.central - want.central);
    auto coeff_of = [](const std::vector<GeneratorTerm>& ts, bool is_j, int idx) {
        cplx c = 0.0;
        for (const auto& t : ts)
            if (t.is_j == is_j && t.index == idx) c += t.coeff;
        return c;
    };
    for (const auto& t : got.terms) dev = std::max(dev, std::abs(t.coeff - coeff_of(want.terms, t.is_j, t.index)));
    for (const auto& t : want.terms) dev = std::max(dev, std::abs(t.coeff - coeff_of(got.terms, t.is_j, t.index)));
    return dev;
}

Measurement generator_check(GeneratorKind kind, const SuiteConfig& sc) {
    double worst = 0.0;
    for (int n = -8; n <= 8; ++n)
        for (int m = -8; m <= 8; ++m)
            worst = std::max(worst, generator_deviation(generator_bracket({n, m, kind}, sc.c0),
                                                        generator_oracle(n, m, kind, sc.c0)));
    return {worst, worst, {{"max_index", 8.0}}};
}

Measurement gbeta_cyclic(const SuiteConfig& sc, Rng rng) {
    std::vector<double> res;
    for (int k = 0; k < 5; ++k) {
        const auto x0 = families::random_semidirect(rng, 5), x1 = families::random_semidirect(rng, 5),
                   x2 = families::random_semidirect(rng, 5);
        res.push_back(gbeta_cyclic_residual(x0, x1, x2, sc.c0));
    }
    Measurement m = worst_of(res, 0.0);
    m.params["max_harmonic"] = 5.0;
    return m;
}

double element_diff(const SemidirectElement& a, const SemidirectElement& b) {
    return std::max(a.v.component.max_coeff_diff(b.v.component), a.w.component.max_coeff_diff(b.w.component));
}

SemidirectElement add3(const SemidirectElement& a, const SemidirectElement& b, const SemidirectElement& c) {
    return {{a.v.component + b.v.component + c.v.component}, {a.w.component + b.w.component + c.w.component}, 0.0};
}

Measurement semidirect_jacobi(const SuiteConfig& sc, Rng rng) {
    std::vector<double> res;
    for (int k = 0; k < 5; ++k) {
        const auto x = families::random_semidirect(rng, 5), y = families::random_semidirect(rng, 5),
                   z = families::random_semidirect(rng, 5);
        const auto a = semidirect_bracket(x, semidirect_bracket(y, z, sc.c0), sc.c0);
        const auto b = semidirect_bracket(y, semidirect_bracket(z, x, sc.c0), sc.c0);
        const auto c = semidirect_bracket(z, semidirect_bracket(x, y, sc.c0), sc.c0);
        res.push_back(element_diff(add3(a, b, c), SemidirectElement{}));
    }
    return worst_of(res, 0.0);
}

Measurement gelfand_fuchs_value(const SuiteConfig&) {
    const cplx v = gelfand_fuchs({TrigPoly::exp_i(1)}, {TrigPoly::exp_i(-1)});
    return {v.real(), std::abs(v + 1.0 / 12.0), {}};
}

Measurement stokes(const SuiteConfig& sc, const GridSpec& g, Rng rng) {
    const CocycleConfig cfg = sc.cocycle(g);
    std::vector<double> res;
    double scale = 0.0;
    for (int k = 0; k < 3; ++k) {
        const DiscVectorField V = families::random_ar_field(rng, 5, 0.5, false);
        const DiscVectorField W = families::random_ar_field(rng, 5, 0.5, false);
        const double b = gbeta_boundary(V, W, sc.c0);
        res.push_back(std::abs(b - beta_integral(V, W, cfg)));
        scale = std::max(scale, std::abs(b));
    }
    return worst_of(res, scale);
}

std::vector<std::pair<FieldCurve, FieldCurve>> fd_curve_pairs() {
    const FieldCurve a1 = alexander_curve(TrigPoly::real_coeffs(0.1, {0.2, 0.05}, {0.1}), CutoffFn{0.1, 0.1});
    const FieldCurve a2 = alexander_curve(TrigPoly::real_coeffs(-0.05, {0.1}, {0.15, 0.04}), CutoffFn{0.2, 0.2});
    const FieldCurve tw = twist_curve(0.2, 0.8, 0.7);
    return {{a1, a2}, {a1, tw}, {rotation_curve(0.4), a2}};
}

Measurement beta_fd(const SuiteConfig& sc, const GridSpec& g) {
    const CocycleConfig cfg = sc.cocycle(g);
    std::vector<double> res;
    double scale = 0.0;
    for (const auto& [h, k] : fd_curve_pairs()) {
        const double bi = beta_integral(h.field, k.field, cfg);
        res.push_back(std::abs(beta_from_gamma_fd(h, k, cfg) - bi));
        scale = std::max(scale, std::abs(bi));
    }
    return worst_of(res, scale);
}

Measurement theta_variation(const SuiteConfig& sc, const GridSpec& g, Rng rng) {
    const CocycleConfig cfg = sc.cocycle(g);
    const DiscDiffeo gg = families::random_disc_diffeo(rng);
    const FieldCurve tw = twist_curve(0.2, 0.8, 0.7);
    const FieldCurve ac = alexander_curve(TrigPoly::real_coeffs(0.1, {0.2, 0.05}, {0.1}), CutoffFn{0.1, 0.1});
    std::vector<double> res{theta_variation_residual(DiscDiffeo(), tw, 0.3, 0.4, cfg),
                            theta_variation_residual(rotation(0.5), tw, 0.3, 0.4, cfg),
                            theta_variation_residual(gg, ac, 0.5, -0.3, cfg),
                            theta_variation_residual(gg, tw, 0.1, 0.6, cfg)};
    return worst_of(res, 0.0);
}

// ---------------------------------------------------------------- registry

const std::vector<GridSpec> kDiscSeries = {{32, 64, 24, 64}, {64, 128, 24, 64}, {128, 256, 24, 64}};
const std::vector<GridSpec> kBallSeries = {{96, 256, 8, 64}, {96, 256, 16, 64}, {96, 256, 32, 64}};
const std::vector<GridSpec> kFixedSeries = {{32, 64, 8, 32}, {96, 256, 24, 64}};

using RunFn = std::function<Measurement(const SuiteConfig&, const GridSpec&)>;

// Checks whose residual is discretization error get a companion ".decay" check.
struct Entry {
    CheckSpec spec;
    bool decay = false;
};

template <class F>
RunFn seeded(std::string name, F f) {
    return [name, f](const SuiteConfig& sc, const GridSpec& g) { return f(sc, g, check_rng(sc.seed, name)); };
}

std::vector<Entry> build_registry() {
    std::vector<Entry> e;
    auto add = [&e](std::string name, std::string suite, std::string anchor, double tol, RunFn fn,
                    std::vector<GridSpec> series, bool decay = false) {
        e.push_back({CheckSpec{std::move(name), std::move(suite), std::move(anchor), tol, std::move(fn),
                               std::move(series)},
                     decay});
    };
    auto grid_free = [](auto f) { return [f](const SuiteConfig& sc, const GridSpec&) { return f(sc); }; };

    add("forms.disc_area", "forms", "polar quadrature: area of the unit disc", 1e-12, forms_disc_area, kDiscSeries);
    add("forms.eta_closed_n2", "forms", "lemma: eta_n is closed (n = 2)", 1e-12,
        grid_free([](const SuiteConfig& sc) { return forms_eta(2, sc); }), kFixedSeries);
    add("forms.eta_closed_n3", "forms", "lemma: eta_n is closed (n = 3)", 1e-12,
        grid_free([](const SuiteConfig& sc) { return forms_eta(3, sc); }), kFixedSeries);
    add("forms.mc_composition", "forms", "lemma: composition law for theta_M", 1e-7,
        seeded("forms.mc_composition", forms_mc_composition), kFixedSeries);
    add("forms.wedge_antisymmetry", "forms", "skew-symmetry of tr(a ^ b)", 1e-14,
        seeded("forms.wedge_antisymmetry", forms_wedge_antisymmetry), kFixedSeries);

    add("cocycle.gamma_2cocycle", "cocycle", "gamma_M satisfies the group 2-cocycle identity", 1e-7,
        seeded("cocycle.gamma_2cocycle", gamma_2cocycle), kDiscSeries, true);
    add("cocycle.gamma_normalization", "cocycle", "normalization gamma(g, g^-1) = gamma(id, g) = 0", 1e-8,
        seeded("cocycle.gamma_normalization", gamma_normalization), kDiscSeries);
    add("cocycle.gamma_antisymmetry", "cocycle", "gamma_M(g, h) = -gamma_M(h^-1, g^-1)", 1e-8,
        seeded("cocycle.gamma_antisymmetry", gamma_antisymmetry), kDiscSeries);
    add("cocycle.gamma_rotations", "cocycle", "theta_M vanishes on rotations", 1e-12,
        seeded("cocycle.gamma_rotations", gamma_rotations), kDiscSeries);
    add("cocycle.ext_associativity", "cocycle", "associativity of the extension product", 1e-7,
        seeded("cocycle.ext_associativity", ext_associativity), kDiscSeries);

    add("wz.identity", "wz", "W(id) = 0", 1e-12, wz_identity, kBallSeries);
    add("wz.cutoff_independence", "wz", "proposition: W depends only on the boundary value", 1e-6,
        seeded("wz.cutoff_independence", wz_cutoff_independence), kBallSeries, true);
    add("wz.boundary_trivial_zero", "wz", "W vanishes on boundary-trivial layered maps", 1e-6,
        wz_boundary_trivial, kBallSeries, true);
    add("wz.omega0_coboundary", "wz", "lemma: coboundary of omega_0 equals gamma on H x H", 1e-5,
        seeded("wz.omega0_coboundary", omega0_coboundary), kBallSeries, true);
    add("wz.delta_g", "wz", "normality: Delta_g vanishes", 1e-4, seeded("wz.delta_g", delta_g), kBallSeries, true);
    add("wz.w_coboundary", "wz", "proposition: coboundary of W is 3 x sphere pairing", 1e-4,
        seeded("wz.w_coboundary", w_coboundary), kBallSeries, true);
    add("wz.phi_correction", "wz", "exact 2-form d(phi^g) ^ d(phi^h) integrates to zero", 1e-8, phi_correction,
        kBallSeries);

    add("liealg.generator_LL", "liealg", "bracket lemma: [L_n, L_m]", 1e-10,
        grid_free([](const SuiteConfig& sc) { return generator_check(GeneratorKind::LL, sc); }), kFixedSeries);
    add("liealg.generator_LJ", "liealg", "bracket lemma: [L_n, J_m]", 1e-10,
        grid_free([](const SuiteConfig& sc) { return generator_check(GeneratorKind::LJ, sc); }), kFixedSeries);
    add("liealg.generator_JJ", "liealg", "bracket lemma: [J_n, J_m]", 1e-10,
        grid_free([](const SuiteConfig& sc) { return generator_check(GeneratorKind::JJ, sc); }), kFixedSeries);
    add("liealg.gbeta_cyclic", "liealg", "proposition: G-beta is a Lie algebra 2-cocycle", 1e-10,
        grid_free([](const SuiteConfig& sc) { return gbeta_cyclic(sc, check_rng(sc.seed, "liealg.gbeta_cyclic")); }),
        kFixedSeries);
    add("liealg.semidirect_jacobi", "liealg", "Jacobi identity in the semidirect product", 1e-10,
        grid_free([](const SuiteConfig& sc) {
            return semidirect_jacobi(sc, check_rng(sc.seed, "liealg.semidirect_jacobi"));
        }),
        kFixedSeries);
    add("liealg.gelfand_fuchs", "liealg", "Gelfand-Fuchs value on (e^{i theta}, e^{-i theta})", 1e-12,
        grid_free(gelfand_fuchs_value), kFixedSeries);
    add("liealg.stokes", "liealg", "lemma: computation of G-beta (Stokes reduction)", 1e-5,
        seeded("liealg.stokes", stokes), kDiscSeries, true);
    add("liealg.beta_fd", "liealg", "beta as the mixed derivative of gamma", 1e-3, beta_fd, kDiscSeries);
    add("liealg.theta_variation", "liealg", "lemma: variation of theta_M", 1e-5,
        seeded("liealg.theta_variation", theta_variation), kFixedSeries);
    return e;
}

const std::vector<Entry>& entries() {
    static const std::vector<Entry> e = build_registry();
    return e;
}

GridSpec refined(const GridSpec& g) { return {2 * g.n_r, 2 * g.n_theta, 2 * g.n_rho, 2 * g.n_plane}; }

std::string plan_name(DerivativePlan::Kind k) { return k == DerivativePlan::ANALYTIC ? "ANALYTIC" : "FD4"; }

json params_json(const std::map<std::string, double>& p) {
    json o = json::object();
    for (const auto& [k, v] : p) o[k] = v;
    return o;
}

json number_or_null(double v) { return std::isfinite(v) ? json(v) : json(nullptr); }

}  // namespace

// ------------------------------------------------------------------ config

void SuiteConfig::validate() const {
    const auto& names = suite_names();
    if (std::find(names.begin(), names.end(), suite) == names.end())
        throw ConfigError("unknown suite '" + suite + "'");
    if (!std::isfinite(c0)) throw ConfigError("c0 must be finite");
    if (grid.n_r < 4 || grid.n_theta < 8) throw ConfigError("disc grid needs n_r >= 4 and n_theta >= 8");
    if (grid.n_rho < 4 || grid.n_plane < 4) throw ConfigError("ball grid needs n_rho >= 4 and n_plane >= 4");
    if (!(L >= 1.0)) throw ConfigError("plane box half-width must be >= 1");
    if (jobs < 1) throw ConfigError("jobs must be >= 1");
    for (const auto& [k, v] : tol) {
        find_check(k);
        if (!(v >= 0.0)) throw ConfigError("tolerance for '" + k + "' must be nonnegative");
    }
}

CocycleConfig SuiteConfig::cocycle(const GridSpec& g) const {
    CocycleConfig c;
    c.c0 = c0;
    c.disc = DiscGrid::make(g.n_r, g.n_theta);
    c.ball = BallGrid::make(g.n_rho, g.n_plane, L);
    c.plan.kind = plan;
    return c;
}

const std::vector<CheckSpec>& check_registry() {
    static const std::vector<CheckSpec> specs = [] {
        std::vector<CheckSpec> s;
        for (const Entry& e : entries()) s.push_back(e.spec);
        return s;
    }();
    return specs;
}

const CheckSpec& find_check(const std::string& name) {
    for (const CheckSpec& s : check_registry())
        if (s.name == name) return s;
    for (const Entry& e : entries())
        if (e.decay && e.spec.name + ".decay" == name) return e.spec;
    throw ConfigError("unknown check '" + name + "'");
}

const std::vector<std::string>& suite_names() {
    static const std::vector<std::string> n = {"all", "cocycle", "wz", "liealg", "forms"};
    return n;
}

// ------------------------------------------------------------------ report

bool Report::pass() const {
    return std::all_of(checks.begin(), checks.end(), [](const CheckResult& c) { return c.pass; });
}

json Report::to_json() const {
    json arr = json::array();
    for (const CheckResult& c : checks) {
        json o = {{"name", c.name},
                  {"paper_anchor", c.paper_anchor},
                  {"residual", number_or_null(c.residual)},
                  {"tolerance", c.tolerance},
                  {"pass", c.pass},
                  {"params", params_json(c.params)}};
        if (auto it = errors.find(c.name); it != errors.end()) o["error"] = it->second;
        arr.push_back(std::move(o));
    }
    return {{"suite", suite}, {"checks", arr}, {"meta", meta}};
}

namespace {

double tolerance_for(const SuiteConfig& cfg, const std::string& name, double fallback) {
    auto it = cfg.tol.find(name);
    return it == cfg.tol.end() ? fallback : it->second;
}

struct Outcome {
    std::vector<CheckResult> checks;
    std::map<std::string, std::string> errors;
};

Outcome run_entry(const Entry& e, const SuiteConfig& cfg) {
    Outcome out;
    const CheckSpec& s = e.spec;
    const std::string dname = s.name + ".decay";
    auto fail = [&](const std::string& name, const std::string& anchor, double tol, const std::string& what) {
        out.checks.push_back(make_check(name, anchor, INFINITY, tolerance_for(cfg, name, tol)));
        out.errors[name] = what;
    };
    Measurement coarse;
    try {
        coarse = s.run(cfg, cfg.grid);
        CheckResult c = make_check(s.name, s.anchor, coarse.residual, tolerance_for(cfg, s.name, s.tolerance),
                                   coarse.params);
        c.params["value"] = coarse.value;
        out.checks.push_back(std::move(c));
    } catch (const std::exception& ex) {
        fail(s.name, s.anchor, s.tolerance, ex.what());
        if (e.decay) fail(dname, s.anchor + " (refinement decay)", 1.0, "coarse grid failed");
        return out;
    }
    if (!e.decay) return out;
    try {
        const GridSpec fg = refined(cfg.grid);
        const Measurement fine = s.run(cfg, fg);
        // <= 1 iff decays(coarse, fine, scale)
        const double floor = kDecayFloor * std::max(1.0, std::abs(coarse.value));
        const double ratio = coarse.residual > 0.0 ? 4.0 * fine.residual / coarse.residual : 0.0;
        const double metric = std::min(ratio, coarse.residual / floor);
        out.checks.push_back(make_check(dname, s.anchor + " (refinement decay)", metric,
                                        tolerance_for(cfg, dname, 1.0),
                                        {{"coarse_residual", coarse.residual},
                                         {"fine_residual", fine.residual},
                                         {"fine_n_r", double(fg.n_r)},
                                         {"fine_n_theta", double(fg.n_theta)},
                                         {"fine_n_rho", double(fg.n_rho)},
                                         {"fine_n_plane", double(fg.n_plane)}}));
    } catch (const std::exception& ex) {
        fail(dname, s.anchor + " (refinement decay)", 1.0, ex.what());
    }
    return out;
}

}  // namespace

Report run_suite(const SuiteConfig& cfg) {
    cfg.validate();
    std::vector<const Entry*> todo;
    for (const Entry& e : entries())
        if (cfg.suite == "all" || e.spec.suite == cfg.suite) todo.push_back(&e);

    std::vector<Outcome> outcomes(todo.size());
    std::atomic<std::size_t> next{0};
    auto worker = [&] {
        for (std::size_t i; (i = next++) < todo.size();) outcomes[i] = run_entry(*todo[i], cfg);
    };
    const int n_threads = std::min<int>(cfg.jobs, int(todo.size()));
    if (n_threads <= 1) {
        worker();
    } else {
        std::vector<std::thread> pool;
        for (int t = 0; t < n_threads; ++t) pool.emplace_back(worker);
        for (auto& t : pool) t.join();
    }

    Report r;
    r.suite = cfg.suite;
    for (Outcome& o : outcomes) {
        for (CheckResult& c : o.checks) r.checks.push_back(std::move(c));
        r.errors.merge(o.errors);
    }
    std::sort(r.checks.begin(), r.checks.end(),
              [](const CheckResult& a, const CheckResult& b) { return a.name < b.name; });
    r.meta = {{"c0", cfg.c0},
              {"grids",
               {{"n_r", cfg.grid.n_r},
                {"n_theta", cfg.grid.n_theta},
                {"n_rho", cfg.grid.n_rho},
                {"n_plane", cfg.grid.n_plane},
                {"plane_box", cfg.L}}},
              {"plan", plan_name(cfg.plan)},
              {"seed", cfg.seed},
              {"wall_time_seconds", nullptr}};
    return r;
}

void write_report(const Report& r, const std::string& path) {
    std::ofstream f(path);
    if (!f) throw ConfigError("cannot open '" + path + "' for writing");
    f << r.to_json().dump(2) << '\n';
}

std::string summary_table(const Report& r, double wall_seconds) {
    std::ostringstream os;
    char line[256];
    std::snprintf(line, sizeof line, "%-34s %12s %12s  %s\n", "check", "residual", "tolerance", "status");
    os << line;
    int passed = 0;
    for (const CheckResult& c : r.checks) {
        std::snprintf(line, sizeof line, "%-34s %12.3e %12.3e  %s\n", c.name.c_str(), c.residual, c.tolerance,
                      c.pass ? "PASS" : "FAIL");
        os << line;
        if (auto it = r.errors.find(c.name); it != r.errors.end()) os << "    error: " << it->second << '\n';
        passed += c.pass;
    }
    std::snprintf(line, sizeof line, "suite %s: %d/%zu passed in %.1f s\n", r.suite.c_str(), passed,
                  r.checks.size(), wall_seconds);
    os << line;
    return os.str();
}

// ------------------------------------------------------------- convergence

std::vector<ConvergenceRow> convergence_study(const std::string& check_name, const std::vector<GridSpec>& series,
                                              const SuiteConfig& cfg) {
    const CheckSpec& s = find_check(check_name);
    const std::vector<GridSpec>& grids = series.empty() ? s.default_series : series;
    std::vector<ConvergenceRow> rows;
    for (const GridSpec& g : grids) {
        SuiteConfig c = cfg;
        c.grid = g;
        c.validate();
        const Measurement m = s.run(c, g);
        rows.push_back({s.name, g, m.value, m.residual});
    }
    return rows;
}

std::string convergence_csv(const std::vector<ConvergenceRow>& rows) {
    std::ostringstream os;
    os << "check,n_r,n_theta,n_rho,n_plane,value,residual\n";
    char buf[64];
    for (const ConvergenceRow& r : rows) {
        os << r.check << ',' << r.grid.n_r << ',' << r.grid.n_theta << ',' << r.grid.n_rho << ',' << r.grid.n_plane;
        std::snprintf(buf, sizeof buf, ",%.17g,%.17g\n", r.value, r.residual);
        os << buf;
    }
    return os.str();
}

std::string generator_table_csv(int nmax, double c0) {
    std::ostringstream os;
    os << "n,m,kind,coefficient,central-real,central-imag\n";
    char buf[64];
    for (GeneratorKind k : {GeneratorKind::LL, GeneratorKind::LJ, GeneratorKind::JJ})
        for (int n = -nmax; n <= nmax; ++n)
            for (int m = -nmax; m <= nmax; ++m) {
                const GeneratorBracket b = generator_bracket({n, m, k}, c0);
                std::string coeff;
                for (const GeneratorTerm& t : b.terms) {
                    std::snprintf(buf, sizeof buf, "%s%.17g%s_%d", coeff.empty() ? "" : " + ", t.coeff.real(),
                                  t.is_j ? "J" : "L", t.index);
                    coeff += buf;
                }
                if (coeff.empty()) coeff = "0";
                std::snprintf(buf, sizeof buf, ",%.17g,%.17g\n", b.central.real(), b.central.imag());
                os << n << ',' << m << ',' << generator_kind_name(k) << ',' << coeff << buf;
            }
    return os.str();
}

}  // namespace vb
