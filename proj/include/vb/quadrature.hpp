#pragma once

#include <functional>
#include <memory>
#include <vector>

namespace vb {

struct GaussLegendre {
    std::vector<double> nodes;    // on (0,1)
    std::vector<double> weights;  // sum to 1
};

// Nodes mapped to (0,1); tables are shared between grids of the same size.
std::shared_ptr<const GaussLegendre> gauss_legendre_unit(int n);

struct DiscGrid {
    int n_r = 96;
    int n_theta = 256;
    std::shared_ptr<const GaussLegendre> r_rule;

    static DiscGrid make(int n_r, int n_theta);
    DiscGrid refined() const { return make(2 * n_r, 2 * n_theta); }
};

struct BallGrid {
    int n_rho = 24;
    int n_plane = 64;
    double L = 1.25;
    std::shared_ptr<const GaussLegendre> rho_rule, plane_rule;

    static BallGrid make(int n_rho, int n_plane, double L = 1.25);
    BallGrid refined() const { return make(2 * n_rho, 2 * n_plane, L); }
};

enum class Exec { Parallel, Serial };

using DiscDensity = std::function<double(double r, double theta)>;
using PlaneDensity = std::function<double(double x, double y)>;
using BallDensity = std::function<double(double rho, double x, double y)>;

// sum density(r,theta) r w_r w_theta
double integrate_disc(const DiscDensity& density, const DiscGrid& grid, Exec exec = Exec::Parallel);
// Tensor Gauss-Legendre on [-L,L]^2, flat element.
double integrate_plane(const PlaneDensity& density, int n_plane, double L, Exec exec = Exec::Parallel);
// Tensor Gauss-Legendre on (0,1) x [-L,L]^2 with d rho dx dy; box edges are checked for leakage.
double integrate_ball(const BallDensity& density, const BallGrid& grid, Exec exec = Exec::Parallel);

// Order-fixed reductions used by the kernels.
double pairwise_sum(const double* v, std::size_t n);
double neumaier_sum(const std::vector<double>& v);

}  // namespace vb
