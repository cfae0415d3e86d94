#pragma once

#include <map>
#include <string>

#include "vb/diffeo.hpp"
#include "vb/forms.hpp"
#include "vb/quadrature.hpp"

namespace vb {

struct CocycleConfig {
    double c0 = 1.0;
    DiscGrid disc = DiscGrid::make(96, 256);
    BallGrid ball = BallGrid::make(24, 64, 1.25);
    DerivativePlan plan;
    CutoffFn ball_xi{0.05, 0.05};  // cutoff used by omega0 for the layered extension
    Exec exec = Exec::Parallel;
    bool use_cache = true;

    CocycleConfig refined() const {
        CocycleConfig c = *this;
        c.disc = disc.refined();
        c.ball = ball.refined();
        return c;
    }
};

// gamma_M(g,h) = int_{D^2} tr(theta(g) ^ theta(h^{-1}))
double gamma_m(const DiscDiffeo& g, const DiscDiffeo& h, const CocycleConfig& cfg);
// Same integral with h^{-1} supplied by the caller (e.g. a flow run backwards).
double gamma_m_given_inverse(const DiscDiffeo& g, const DiscDiffeo& h_inv, const CocycleConfig& cfg);
double gamma(const DiscDiffeo& g, const DiscDiffeo& h, const CocycleConfig& cfg);

void gamma_cache_clear();
std::size_t gamma_cache_size();

struct ExtElement {
    DiscDiffeo g;
    double a = 0.0;
};

ExtElement ext_mul(const ExtElement& e1, const ExtElement& e2, const CocycleConfig& cfg);
ExtElement ext_inverse(const ExtElement& e);

double wz_term(const BallDiffeo& B, const CocycleConfig& cfg);
double omega0(const DiscDiffeo& h, const CocycleConfig& cfg);
ExtElement iota(const DiscDiffeo& h, const CocycleConfig& cfg);

double delta_g_residual(const DiscDiffeo& g, const DiscDiffeo& h, const CocycleConfig& cfg);

// int over the plane chart of tr(theta(g|) ^ theta(h|^{-1})), boundary layers
double sphere_pairing(const BallDiffeo& g, const BallDiffeo& h, const CocycleConfig& cfg);
double w_coboundary_residual(const BallDiffeo& g, const BallDiffeo& h, const CocycleConfig& cfg);
double phi_correction_integral(const BallDiffeo& g, const BallDiffeo& h, const CocycleConfig& cfg);

struct CheckResult {
    std::string name;
    std::string paper_anchor;
    double residual = 0.0;
    double tolerance = 0.0;
    bool pass = false;
    std::map<std::string, double> params;
};

CheckResult make_check(std::string name, std::string anchor, double residual, double tolerance,
                       std::map<std::string, double> params = {});

// Decay under refinement: passes if coarse/fine >= factor or the coarse
// residual is already at the round-off floor kDecayFloor * max(1, |scale|),
// scale being the magnitude of the quantities compared.
inline constexpr double kDecayFloor = 1e-10;
bool decays(double coarse, double fine, double scale = 1.0, double factor = 4.0);

}  // namespace vb
