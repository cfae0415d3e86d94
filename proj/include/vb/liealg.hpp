#pragma once

#include <functional>
#include <string>
#include <utility>
#include <vector>

#include <Eigen/Dense>

#include "vb/cocycle.hpp"
#include "vb/diffeo.hpp"
#include "vb/trigpoly.hpp"
#include "vb/vector_field.hpp"

namespace vb {

// (V1, V2) callables generic in the scalar type; components and flags follow.
template <class F>
DiscVectorField polar_components(F v12, double ar_epsilon = kDefaultArEpsilon, std::string desc = {}) {
    return DiscVectorField::from_cartesian(std::move(v12), ar_epsilon, std::move(desc));
}

// [V, W] in polar components.  Values and first derivatives are exact; second
// derivatives are NaN (they would need third derivatives of V and W).
DiscVectorField disc_bracket(const DiscVectorField& V, const DiscVectorField& W);

CircleField restrict_to_circle(const DiscVectorField& V);

// (W_f)_3 = xi(r) f(theta), (W_f)_4 = 0
DiscVectorField wf_field(const TrigPoly& f, const CutoffFn& xi);

// (V - W_{f_V}, f_V) with f_V = V_3 at r = 1
std::pair<DiscVectorField, TrigPoly> ar_split(const DiscVectorField& V, const CutoffFn& xi);

// Cartesian Jacobian of (V1, V2) and its x, y partials at a point.
JacobianJet2 field_jacobian_jet(const DiscVectorField& V, double x, double y);

// -6 c0 int_{D^2} tr(dJ(V) ^ dJ(W))
double beta_integral(const DiscVectorField& V, const DiscVectorField& W, const CocycleConfig& cfg);

// -6 c0 int_0^{2pi} I dθ with
// I = (v4' w4'' - 2 v4 w4') + (3 v3 w3' - v3' w4' + v4' w3'), exact in trigpoly.
cplx gbeta_boundary_data(const TrigPoly& v3, const TrigPoly& v4, const TrigPoly& w3, const TrigPoly& w4,
                         double c0);
double gbeta_boundary(const DiscVectorField& V, const DiscVectorField& W, double c0);

// Element of Vect(S^1) x| Vect(S^1)_ab with an optional central coordinate.
struct SemidirectElement {
    CircleField v;
    CircleField w;
    cplx a = 0.0;
};

// ([v1, v2], v1 w2' - v2 w1', Gb of the pair with (v3, v4) = (w, v))
SemidirectElement semidirect_bracket(const SemidirectElement& x, const SemidirectElement& y, double c0);
// Boundary data of an asymptotically radial field: v = V_4|, w = V_3|.
SemidirectElement boundary_element(const DiscVectorField& V);

enum class GeneratorKind { LL, LJ, JJ };

struct GeneratorIndexPair {
    int n = 0;
    int m = 0;
    GeneratorKind kind = GeneratorKind::LL;
};

// coeff * L_index (is_j == false) or coeff * J_index (is_j == true)
struct GeneratorTerm {
    bool is_j = false;
    int index = 0;
    cplx coeff;
};

struct GeneratorBracket {
    std::vector<GeneratorTerm> terms;
    cplx central;
};

// Brackets of L_n = (i e^{in theta} d_theta, 0), J_n = (0, i e^{in theta} d_theta).
GeneratorBracket generator_bracket(const GeneratorIndexPair& pair, double c0);
std::string generator_kind_name(GeneratorKind k);

double gbeta_cyclic_residual(const SemidirectElement& x0, const SemidirectElement& x1, const SemidirectElement& x2,
                             double c0);
double gbeta_cyclic_residual(const DiscVectorField& V0, const DiscVectorField& V1, const DiscVectorField& V2,
                             double c0);

// Curve s -> h_s through the identity with velocity `field`, plus its inverses.
struct FieldCurve {
    DiscVectorField field;
    std::function<DiscDiffeo(double)> at;
    std::function<DiscDiffeo(double)> inverse_at;
};

FieldCurve rotation_curve(double alpha);
FieldCurve twist_curve(double a, double b, double amp);
// h_t(r e^{i theta}) = r e^{i(theta + t xi(r) p(theta))}; requires 1 + p' > 0.
FieldCurve alexander_curve(const TrigPoly& p, const CutoffFn& xi);
// Compactly supported field; h_t is the RK4 flow for time t.
FieldCurve flow_curve(const DiscVectorField& field, int steps = 16);

inline constexpr double kDefaultFdStep = 1e-2;

// Mixed partial d^2/dt ds [gamma(h_t, k_s) - gamma(k_s, h_t)] at 0: four-point
// stencil at steps (t, s) and (t/2, s/2), combined by one Richardson step.
double beta_from_gamma_fd(const FieldCurve& h, const FieldCurve& k, const CocycleConfig& cfg,
                          double t_step = kDefaultFdStep, double s_step = kDefaultFdStep);

// max entry of d/ds theta(g o h_s)|_0 - (-J(g)^{-1} J(U) theta(g) + J(g)^{-1} dJ(U)), U = J(g) V
double theta_variation_residual(const DiscDiffeo& g, const FieldCurve& h, double x, double y,
                                const CocycleConfig& cfg);

}  // namespace vb
