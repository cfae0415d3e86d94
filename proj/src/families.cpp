#include "vb/families.hpp"

#include <cmath>

namespace vb::families {

namespace {

double unif(Rng& rng) { return std::uniform_real_distribution<double>(-1.0, 1.0)(rng); }

DiscDiffeo alexander_of(const TrigPoly& p, const CutoffFn& xi) {
    return alexander_extend(CircleIsotopy(CircleDiffeoLift(0, p)), xi, 1.0);
}

// fixed non-radial conjugator used by the H families
DiscDiffeo conjugator(double phase) {
    const TrigPoly p = TrigPoly::real_coeffs(0.2, {0.1 * std::cos(phase), 0.03}, {0.1 * std::sin(phase), -0.02});
    return alexander_of(p, CutoffFn{0.1, 0.1});
}

}  // namespace

TrigPoly random_trigpoly(Rng& rng, int max_harmonic, double amp, bool with_constant) {
    std::vector<double> a(max_harmonic), b(max_harmonic);
    const double c = with_constant ? amp * unif(rng) : 0.0;
    for (int n = 0; n < max_harmonic; ++n) {
        a[n] = amp * unif(rng) / (n + 2);
        b[n] = amp * unif(rng) / (n + 2);
    }
    return TrigPoly::real_coeffs(c, a, b);
}

DiscDiffeo random_disc_diffeo(Rng& rng) {
    std::vector<double> a(3), b(3);
    for (int n = 0; n < 3; ++n) {
        a[n] = 0.08 * unif(rng) / (n + 1);
        b[n] = 0.08 * unif(rng) / (n + 1);
    }
    const TrigPoly p = TrigPoly::real_coeffs(0.3 * unif(rng), a, b);
    const DiscDiffeo A = alexander_of(p, CutoffFn{0.2, 0.25});
    const DiscDiffeo T = radial_twist(0.25, 0.75, 0.6 * unif(rng));
    return disc_compose(disc_compose(A, T), rotation(unif(rng)));
}

DiscVectorField random_ar_field(Rng& rng, int max_harmonic, double amp, bool genuine) {
    const TrigPoly a = genuine ? TrigPoly() : random_trigpoly(rng, max_harmonic, amp);
    const TrigPoly b = random_trigpoly(rng, max_harmonic, amp);
    std::array<double, 10> c{};
    for (auto& x : c) x = amp * unif(rng);
    const CutoffFn outer{0.05, 0.05};
    const CutoffFn inner{0.02, 0.1};
    auto edge = [a, b, outer](const auto& r, const auto& th) {
        using T = std::decay_t<decltype(r)>;
        using std::cos;
        using std::sin;
        const T cs = cos(th), sn = sin(th);
        const T xo = outer(r);
        return Vec2<T>{xo * a.eval_cs(cs, sn), xo * b.eval_cs(cs, sn)};
    };
    // polynomial part in Cartesian form, so no 1/r factors appear near the origin
    auto bulk = [c, inner](const auto& x, const auto& y) {
        using T = std::decay_t<decltype(x)>;
        using std::sqrt;
        const T damp = 1.0 - inner(sqrt(x * x + y * y));
        return Vec2<T>{damp * (c[0] + c[1] * x + c[2] * y + c[3] * x * y + c[4] * x * x),
                       damp * (c[5] + c[6] * x + c[7] * y + c[8] * y * y + c[9] * x * y)};
    };
    return DiscVectorField::from_polar(edge, kDefaultArEpsilon, std::make_pair(a, b)) +
           DiscVectorField::from_cartesian(bulk);
}

DiscDiffeo random_h_element(Rng& rng, double amp) {
    const double a1 = 0.1 + 0.05 * (unif(rng) + 1.0), b1 = 0.9 - 0.05 * (unif(rng) + 1.0);
    const DiscDiffeo t1 = radial_twist(a1, b1, amp * unif(rng));
    const DiscDiffeo t2 = conjugated_twist(amp * unif(rng), 3.0 * unif(rng));
    return disc_compose(t1, t2);
}

DiscDiffeo conjugated_twist(double amp, double phase) {
    return conjugate(conjugator(phase), radial_twist(0.15, 0.85, amp));
}

SphereIsotopy loop_isotopy(int k, double amp) {
    // profiles vanishing at u = 0 and u = 1; asymmetric in u so that no loop
    // cancels by the rho -> 1 - rho symmetry of a symmetric cutoff
    const std::vector<double> late = {0.0, 0.0, 6.75, -6.75};  // 27/4 u^2 (1-u)
    const std::vector<double> early = {0.0, 6.75, -13.5, 6.75}; // 27/4 u (1-u)^2
    const std::vector<double> lin = {0.0, 1.0};
    std::vector<IsoLink> L;
    auto fixed_chain = [&L](const DiscDiffeo& d) {
        for (const Link& l : d.chain()) L.push_back({l.map, {}});
    };
    const DiscDiffeo g = conjugator(0.7);
    const DiscDiffeo g_inv = disc_invert(g);
    switch (k) {
        case 0:
            L.push_back({RadialTwist{0.1, 0.9, amp}, late});
            break;
        case 1:
            L.push_back({RadialTwist{0.1, 0.8, amp}, early});
            L.push_back({RadialTwist{0.2, 0.9, -amp}, late});
            break;
        case 2:
            fixed_chain(g);
            L.push_back({RadialTwist{0.15, 0.85, amp}, late});
            fixed_chain(g_inv);
            break;
        case 3:
            fixed_chain(g);
            L.push_back({RadialTwist{0.15, 0.85, amp}, early});
            fixed_chain(g_inv);
            L.push_back({RadialTwist{0.1, 0.9, amp}, late});
            break;
        default:
            // T_u C_{phi(u)} T_u^{-1}: a loop through non-commuting maps
            L.push_back({RadialTwist{0.1, 0.9, amp}, lin});
            fixed_chain(g);
            L.push_back({RadialTwist{0.15, 0.85, amp}, late});
            fixed_chain(g_inv);
            L.push_back({RadialTwist{0.1, 0.9, -amp}, lin});
            break;
    }
    return SphereIsotopy(std::move(L));
}

SemidirectElement random_semidirect(Rng& rng, int max_harmonic) {
    return {{random_trigpoly(rng, max_harmonic, 1.0)}, {random_trigpoly(rng, max_harmonic, 1.0)}, 0.0};
}

}  // namespace vb::families
