#include "vb/liealg.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <memory>

namespace vb {

namespace {

class BracketExpr final : public PolarDefined<BracketExpr> {
public:
    BracketExpr(FieldPtr a, FieldPtr b) : a_(std::move(a)), b_(std::move(b)) {}

    template <class T>
    Vec2<T> polar_t(const T& r, const T& th) const {
        const Vec2<Jet2> va = a_->polar(Jet2::var(value(r), 0), Jet2::var(value(th), 1));
        const Vec2<Jet2> vb = b_->polar(Jet2::var(value(r), 0), Jet2::var(value(th), 1));
        Vec2<T> out;
        for (int j = 0; j < 2; ++j) {
            // [A, B]_j = A^k d_k B_j - B^k d_k A_j in (r, theta) coordinates
            const double c = va[0].v * vb[j].g[0] + va[1].v * vb[j].g[1] - vb[0].v * va[j].g[0] -
                             vb[1].v * va[j].g[1];
            if constexpr (std::is_same_v<T, double>) {
                out[j] = c;
            } else {
                double d[2];
                for (int i = 0; i < 2; ++i)
                    d[i] = va[0].g[i] * vb[j].g[0] + va[0].v * vb[j].hess(0, i) + va[1].g[i] * vb[j].g[1] +
                           va[1].v * vb[j].hess(1, i) - vb[0].g[i] * va[j].g[0] - vb[0].v * va[j].hess(0, i) -
                           vb[1].g[i] * va[j].g[1] - vb[1].v * va[j].hess(1, i);
                T o(c);
                for (std::size_t i = 0; i < o.g.size(); ++i) o.g[i] = d[0] * r.g[i] + d[1] * th.g[i];
                o.h.fill(std::numeric_limits<double>::quiet_NaN());
                out[j] = o;
            }
        }
        return out;
    }

private:
    FieldPtr a_, b_;
};

void require_ar(const DiscVectorField& V, const char* who) {
    if (!V.flags().asymptotically_radial) throw FlagError(std::string(who) + ": field is not asymptotically radial");
}

// coefficient of e^{i k theta}
cplx exp_coeff(const TrigPoly& p, int k) {
    if (k == 0) return p.constant_term();
    const int n = std::abs(k);
    const cplx a = p.cos_coeff(n), b = p.sin_coeff(n);
    const cplx i(0.0, 1.0);
    return k > 0 ? 0.5 * (a - i * b) : 0.5 * (a + i * b);
}

void collect_terms(const TrigPoly& p, bool is_j, std::vector<GeneratorTerm>& out) {
    const int K = p.max_harmonic();
    for (int k = -K; k <= K; ++k) {
        const cplx c = exp_coeff(p, k) / cplx(0.0, 1.0);
        if (std::abs(c) > 1e-13) out.push_back({is_j, k, c});
    }
}

MC2 theta_at(const DiscDiffeo& g, double x, double y, const DerivativePlan& plan) {
    return mc_components(disc_jacobian_jet(g, x, y, plan));
}

}  // namespace

DiscVectorField disc_bracket(const DiscVectorField& V, const DiscVectorField& W) {
    return DiscVectorField(std::make_shared<BracketExpr>(V.expr_ptr(), W.expr_ptr()),
                           std::min(V.ar_epsilon(), W.ar_epsilon()));
}

CircleField restrict_to_circle(const DiscVectorField& V) {
    require_ar(V, "restrict_to_circle");
    return {V.boundary_v4()};
}

DiscVectorField wf_field(const TrigPoly& f, const CutoffFn& xi) {
    if (!f.is_real()) throw DomainError("wf_field: f must be real; split complex data into parts");
    auto comp = [f, xi](const auto& r, const auto& th) {
        using T = std::decay_t<decltype(r)>;
        return Vec2<T>{xi(r) * f.eval_real(th), T(0.0)};
    };
    return DiscVectorField::from_polar(comp, kDefaultArEpsilon, std::make_pair(f, TrigPoly()));
}

std::pair<DiscVectorField, TrigPoly> ar_split(const DiscVectorField& V, const CutoffFn& xi) {
    require_ar(V, "ar_split");
    const TrigPoly f = V.boundary_v3();
    return {V - wf_field(f, xi), f};
}

JacobianJet2 field_jacobian_jet(const DiscVectorField& V, double x, double y) {
    const Vec2<Jet2> v = V.cart(Jet2::var(x, 0), Jet2::var(y, 1));
    JacobianJet2 out;
    for (int i = 0; i < 2; ++i)
        for (int j = 0; j < 2; ++j) {
            out.J(i, j) = v[i].g[j];
            for (int k = 0; k < 2; ++k) out.dJ[k](i, j) = v[i].hess(j, k);
        }
    return out;
}

double beta_integral(const DiscVectorField& V, const DiscVectorField& W, const CocycleConfig& cfg) {
    auto density = [&](double r, double th) {
        const double x = r * std::cos(th), y = r * std::sin(th);
        const JacobianJet2 a = field_jacobian_jet(V, x, y);
        const JacobianJet2 b = field_jacobian_jet(W, x, y);
        return wedge_trace_2form(MC2{a.dJ[0], a.dJ[1]}, MC2{b.dJ[0], b.dJ[1]});
    };
    const double v = -6.0 * cfg.c0 * integrate_disc(density, cfg.disc, cfg.exec);
    if (!std::isfinite(v)) throw NumericError("beta_integral: non-finite integrand (second derivatives unavailable?)");
    return v;
}

cplx gbeta_boundary_data(const TrigPoly& v3, const TrigPoly& v4, const TrigPoly& w3, const TrigPoly& w4,
                         double c0) {
    const TrigPoly dv3 = tp_derivative(v3), dv4 = tp_derivative(v4);
    const TrigPoly dw3 = tp_derivative(w3), dw4 = tp_derivative(w4);
    const TrigPoly ddw4 = tp_derivative(dw4);
    const TrigPoly I = tp_multiply(dv4, ddw4) - 2.0 * tp_multiply(v4, dw4) + 3.0 * tp_multiply(v3, dw3) -
                       tp_multiply(dv3, dw4) + tp_multiply(dv4, dw3);
    return -6.0 * c0 * tp_integrate_period(I);
}

double gbeta_boundary(const DiscVectorField& V, const DiscVectorField& W, double c0) {
    return gbeta_boundary_data(V.boundary_v3(), V.boundary_v4(), W.boundary_v3(), W.boundary_v4(), c0).real();
}

SemidirectElement semidirect_bracket(const SemidirectElement& x, const SemidirectElement& y, double c0) {
    SemidirectElement out;
    out.v = circle_bracket(x.v, y.v);
    out.w = {tp_multiply(x.v.component, tp_derivative(y.w.component)) -
             tp_multiply(y.v.component, tp_derivative(x.w.component))};
    out.a = gbeta_boundary_data(x.w.component, x.v.component, y.w.component, y.v.component, c0);
    return out;
}

SemidirectElement boundary_element(const DiscVectorField& V) {
    require_ar(V, "boundary_element");
    return {{V.boundary_v4()}, {V.boundary_v3()}, 0.0};
}

std::string generator_kind_name(GeneratorKind k) {
    switch (k) {
        case GeneratorKind::LL: return "LL";
        case GeneratorKind::LJ: return "LJ";
        case GeneratorKind::JJ: return "JJ";
    }
    return "?";
}

GeneratorBracket generator_bracket(const GeneratorIndexPair& pair, double c0) {
    const cplx i(0.0, 1.0);
    auto L = [&](int n) { return SemidirectElement{{TrigPoly::exp_i(n, i)}, {TrigPoly()}, 0.0}; };
    auto J = [&](int n) { return SemidirectElement{{TrigPoly()}, {TrigPoly::exp_i(n, i)}, 0.0}; };
    SemidirectElement a, b;
    switch (pair.kind) {
        case GeneratorKind::LL: a = L(pair.n), b = L(pair.m); break;
        case GeneratorKind::LJ: a = L(pair.n), b = J(pair.m); break;
        case GeneratorKind::JJ: a = J(pair.n), b = J(pair.m); break;
    }
    const SemidirectElement c = semidirect_bracket(a, b, c0);
    GeneratorBracket out;
    collect_terms(c.v.component, false, out.terms);
    collect_terms(c.w.component, true, out.terms);
    out.central = c.a;
    return out;
}

double gbeta_cyclic_residual(const SemidirectElement& x0, const SemidirectElement& x1, const SemidirectElement& x2,
                             double c0) {
    const SemidirectElement* x[3] = {&x0, &x1, &x2};
    cplx acc = 0.0;
    for (int j = 0; j < 3; ++j) {
        const SemidirectElement br = semidirect_bracket(*x[j], *x[(j + 1) % 3], c0);
        const SemidirectElement& z = *x[(j + 2) % 3];
        acc += gbeta_boundary_data(br.w.component, br.v.component, z.w.component, z.v.component, c0);
    }
    return std::abs(acc);
}

double gbeta_cyclic_residual(const DiscVectorField& V0, const DiscVectorField& V1, const DiscVectorField& V2,
                             double c0) {
    return gbeta_cyclic_residual(boundary_element(V0), boundary_element(V1), boundary_element(V2), c0);
}

FieldCurve rotation_curve(double alpha) {
    auto comp = [alpha](const auto& r, const auto&) {
        using T = std::decay_t<decltype(r)>;
        return Vec2<T>{T(0.0), T(alpha)};
    };
    FieldCurve c{DiscVectorField::from_polar(comp, kDefaultArEpsilon,
                                             std::make_pair(TrigPoly(), TrigPoly(alpha))),
                 [alpha](double t) { return rotation(alpha * t); },
                 [alpha](double t) { return rotation(-alpha * t); }};
    return c;
}

FieldCurve twist_curve(double a, double b, double amp) {
    const DiscDiffeo probe = radial_twist(a, b, amp);  // validates the support
    (void)probe;
    const RadialTwist tw{a, b, amp};
    auto comp = [tw](const auto& r, const auto&) {
        using T = std::decay_t<decltype(r)>;
        const double rv = value(r);
        if (rv <= tw.a || rv >= tw.b) return Vec2<T>{T(0.0), T(0.0)};
        return Vec2<T>{T(0.0), tw.tau(r)};
    };
    return {DiscVectorField::from_polar(comp, kDefaultArEpsilon, std::make_pair(TrigPoly(), TrigPoly())),
            [a, b, amp](double t) { return radial_twist(a, b, amp * t); },
            [a, b, amp](double t) { return radial_twist(a, b, -amp * t); }};
}

FieldCurve alexander_curve(const TrigPoly& p, const CutoffFn& xi) {
    if (!p.is_real()) throw DomainError("alexander_curve: p must be real");
    const CircleIsotopy fwd(CircleDiffeoLift(0, p));
    const CircleIsotopy bwd(CircleDiffeoLift(0, -p));
    auto at = [fwd, bwd, xi](double t) {
        if (std::abs(t) > 1.0) throw StepError("alexander_curve: |t| must not exceed 1");
        return t >= 0.0 ? alexander_extend(fwd, xi, t) : alexander_extend(bwd, xi, -t);
    };
    auto comp = [p, xi](const auto& r, const auto& th) {
        using T = std::decay_t<decltype(r)>;
        return Vec2<T>{T(0.0), xi(r) * p.eval_real(th)};
    };
    return {DiscVectorField::from_polar(comp, kDefaultArEpsilon, std::make_pair(TrigPoly(), p)), at,
            [at](double t) { return disc_invert(at(t)); }};
}

FieldCurve flow_curve(const DiscVectorField& field, int steps) {
    if (!field.vanishes_beyond(1.0 - field.ar_epsilon()))
        throw DomainError("flow_curve: field must vanish near the boundary");
    return {field, [field, steps](double t) { return flow_map(field, t, steps); },
            [field, steps](double t) { return flow_map(field, -t, steps); }};
}

double beta_from_gamma_fd(const FieldCurve& h, const FieldCurve& k, const CocycleConfig& cfg, double t_step,
                          double s_step) {
    if (!(t_step > 0.0 && s_step > 0.0)) throw StepError("beta_from_gamma_fd: steps must be positive");
    auto F = [&](double t, double s) {
        try {
            const DiscDiffeo ht = h.at(t), ks = k.at(s);
            return gamma_m_given_inverse(ht, k.inverse_at(s), cfg) - gamma_m_given_inverse(ks, h.inverse_at(t), cfg);
        } catch (const DomainError& e) {
            throw StepError(std::string("beta_from_gamma_fd: ") + e.what());
        } catch (const ConvergenceError& e) {
            throw StepError(std::string("beta_from_gamma_fd: ") + e.what());
        }
    };
    auto D = [&](double t, double s) { return (F(t, s) - F(t, -s) - F(-t, s) + F(-t, -s)) / (4.0 * t * s); };
    const double coarse = D(t_step, s_step);
    const double fine = D(0.5 * t_step, 0.5 * s_step);
    return 3.0 * cfg.c0 * (4.0 * fine - coarse) / 3.0;
}

double theta_variation_residual(const DiscDiffeo& g, const FieldCurve& h, double x, double y,
                                const CocycleConfig& cfg) {
    constexpr double ds = 1e-3;
    auto theta_s = [&](double s) { return theta_at(disc_compose(g, h.at(s)), x, y, cfg.plan); };
    const MC2 tp1 = theta_s(ds), tm1 = theta_s(-ds), tp2 = theta_s(2 * ds), tm2 = theta_s(-2 * ds);

    // J(U) for U = J(g) V, exact from jets
    auto JU = [&](double qx, double qy) {
        const Vec2<Jet2> gj = g.apply(Jet2::var(qx, 0), Jet2::var(qy, 1));
        const Vec2<Jet2> vj = h.field.cart(Jet2::var(qx, 0), Jet2::var(qy, 1));
        Eigen::Matrix2d out;
        for (int i = 0; i < 2; ++i)
            for (int k = 0; k < 2; ++k) {
                double acc = 0.0;
                for (int j = 0; j < 2; ++j) acc += gj[i].hess(j, k) * vj[j].v + gj[i].g[j] * vj[j].g[k];
                out(i, k) = acc;
            }
        return out;
    };
    constexpr double dq = 1e-3;
    std::array<Eigen::Matrix2d, 2> dJU;
    for (int k = 0; k < 2; ++k) {
        const double ex = k == 0 ? 1.0 : 0.0, ey = 1.0 - ex;
        auto at = [&](double m) { return JU(x + m * dq * ex, y + m * dq * ey); };
        dJU[k] = (8.0 * (at(1) - at(-1)) - (at(2) - at(-2))) / (12.0 * dq);
    }

    const JacobianJet2 jg = disc_jacobian_jet(g, x, y, cfg.plan);
    const MC2 th = mc_components(jg);
    const Eigen::Matrix2d Jinv = jg.J.inverse();
    const Eigen::Matrix2d ju = JU(x, y);
    double worst = 0.0;
    for (int k = 0; k < 2; ++k) {
        const Eigen::Matrix2d lhs = (8.0 * (tp1[k] - tm1[k]) - (tp2[k] - tm2[k])) / (12.0 * ds);
        const Eigen::Matrix2d rhs = -Jinv * ju * th[k] + Jinv * dJU[k];
        worst = std::max(worst, (lhs - rhs).cwiseAbs().maxCoeff());
    }
    return worst;
}

}  // namespace vb
