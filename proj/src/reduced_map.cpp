#include "oqs/reduced_map.hpp"

#include <cmath>

namespace oqs {

namespace {

Eigen::Matrix2d rotation_scaling(std::complex<double> z) {
    Eigen::Matrix2d m;
    m << z.real(), -z.imag(), z.imag(), z.real();
    return m;
}

} // namespace

GaussianState evolve_exact(const GaussianState& rho_a, const ThermalOccupation& env,
                           const TwoModeParams& params, ModelKind kind, double t) {
    const CoefficientSet c = coefficients(params, kind, t);
    const Eigen::Matrix2d m = rotation_scaling(c.mu);
    const double noise = std::norm(c.pi) * (env.n + 0.5) * 0.5;

    GaussianState out;
    out.mean = c.mu * rho_a.mean;
    out.cov = m * rho_a.cov * m.transpose() + noise * Eigen::Matrix2d::Identity();
    return out;
}

ReducedMapResult evolve_short_time(const GaussianState& rho_a, const ThermalOccupation& env,
                                   const TwoModeParams& params, ModelKind kind, double t) {
    (void)kind; // the short-time map is identical for Exchange and Hopping
    ReducedMapResult result;
    result.sigma2 = params.Lambda * params.Lambda * t * t * (env.n + 0.5);
    result.branch = MapBranch::ShortTime;
    result.state = rho_a;
    result.state.cov += 0.5 * result.sigma2 * Eigen::Matrix2d::Identity();
    return result;
}

} // namespace oqs
