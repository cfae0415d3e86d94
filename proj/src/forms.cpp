#include "vb/forms.hpp"

#include <algorithm>
#include <numeric>
#include <random>

namespace vb {

namespace {

int perm_sign(const std::vector<int>& p) {
    int s = 1;
    for (std::size_t i = 0; i < p.size(); ++i)
        for (std::size_t j = i + 1; j < p.size(); ++j)
            if (p[i] > p[j]) s = -s;
    return s;
}

}  // namespace

MC2 mc_components(const JacobianJet2& jj) {
    const Eigen::Matrix2d Ji = jj.J.inverse();
    return {Ji * jj.dJ[0], Ji * jj.dJ[1]};
}

MC3 mc_components(const JacobianJet3& jj) {
    const Eigen::Matrix3d Ji = jj.J.inverse();
    return {Ji * jj.dJ[0], Ji * jj.dJ[1], Ji * jj.dJ[2]};
}

MCFormSample mc_form(const DiscDiffeo& g, double x, double y, const DerivativePlan& plan) {
    const MC2 c = mc_components(disc_jacobian_jet(g, x, y, plan));
    return {2, {c[0], c[1]}};
}

MCFormSample mc_form(const BallDiffeo& B, double rho, double x, double y, const DerivativePlan& plan) {
    const MC3 c = mc_components(ball_jacobian_jet(B, rho, x, y, plan));
    return {3, {c[0], c[1], c[2]}};
}

double wedge_trace_2form(const MC2& a, const MC2& b) {
    return (a[0] * b[1]).trace() - (a[1] * b[0]).trace();
}

double wedge_trace_2form(const MCFormSample& a, const MCFormSample& b) {
    if (a.n != 2 || b.n != 2 || a.components.size() != 2 || b.components.size() != 2)
        throw DimensionError("wedge_trace_2form: expects two 2-dimensional forms");
    return (a.components[0] * b.components[1]).trace() - (a.components[1] * b.components[0]).trace();
}

double wedge_trace_cube(const MC3& a) {
    static constexpr int perms[6][3] = {{0, 1, 2}, {1, 2, 0}, {2, 0, 1}, {0, 2, 1}, {2, 1, 0}, {1, 0, 2}};
    double s = 0.0;
    for (int k = 0; k < 6; ++k) {
        const double t = (a[perms[k][0]] * a[perms[k][1]] * a[perms[k][2]]).trace();
        s += k < 3 ? t : -t;
    }
    return s;
}

double wedge_trace_cube(const MCFormSample& a) {
    if (a.n != 3 || a.components.size() != 3) throw DimensionError("wedge_trace_cube: expects a 3-dimensional form");
    return wedge_trace_cube(MC3{a.components[0], a.components[1], a.components[2]});
}

double eta_closedness_residual(int n, int samples, std::uint64_t seed) {
    if (n != 2 && n != 3) throw DimensionError("eta_closedness_residual: n must be 2 or 3");
    std::mt19937_64 rng(seed);
    std::uniform_real_distribution<double> U(-1.0, 1.0);
    auto rnd = [&] {
        Eigen::MatrixXd m(n, n);
        for (int i = 0; i < n; ++i)
            for (int j = 0; j < n; ++j) m(i, j) = U(rng);
        return m;
    };
    std::vector<int> p(4);
    double worst = 0.0;
    for (int s = 0; s < samples; ++s) {
        Eigen::MatrixXd g = Eigen::MatrixXd::Identity(n, n) + 0.4 * rnd();
        if (g.determinant() < 0.0) g.row(0) *= -1.0;
        const Eigen::MatrixXd gi = g.inverse();
        std::array<Eigen::MatrixXd, 4> A;
        for (auto& a : A) a = gi * rnd();
        std::iota(p.begin(), p.end(), 0);
        double acc = 0.0;
        do {
            acc += perm_sign(p) * (A[p[0]] * A[p[1]] * A[p[2]] * A[p[3]]).trace();
        } while (std::next_permutation(p.begin(), p.end()));
        worst = std::max(worst, std::abs(acc));
    }
    return worst;
}

}  // namespace vb
