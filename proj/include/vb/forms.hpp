#pragma once

#include <array>
#include <cstdint>
#include <vector>

#include <Eigen/Dense>

#include "vb/diffeo.hpp"

namespace vb {

struct MCFormSample {
    int n = 2;
    std::vector<Eigen::MatrixXd> components;  // one n x n matrix per coordinate direction
};

using MC2 = std::array<Eigen::Matrix2d, 2>;
using MC3 = std::array<Eigen::Matrix3d, 3>;

MC2 mc_components(const JacobianJet2& jj);
MC3 mc_components(const JacobianJet3& jj);

MCFormSample mc_form(const DiscDiffeo& g, double x, double y, const DerivativePlan& plan = {});
MCFormSample mc_form(const BallDiffeo& B, double rho, double x, double y, const DerivativePlan& plan = {});

// coefficient of dx^dy in tr(a ^ b)
double wedge_trace_2form(const MCFormSample& a, const MCFormSample& b);
double wedge_trace_2form(const MC2& a, const MC2& b);
// coefficient of drho^dx^dy in tr(a^a^a), all 3! orderings summed with signs
double wedge_trace_cube(const MCFormSample& a);
double wedge_trace_cube(const MC3& a);

double eta_closedness_residual(int n, int samples, std::uint64_t seed);

}  // namespace vb
