// ou_field.hpp — Classical fluctuating field: OU sampling, sigma(t), trajectory averaging

#pragma once

#include <cstdint>
#include <vector>

#include "oqs/gaussian_state.hpp"

namespace oqs {

// zeta(t) = zeta_x(t) + i zeta_y(t) drives H(t) = nu a†a + a zeta*(t) e^{i omega_zeta t}
//         + a† zeta(t) e^{-i omega_zeta t}.
//
// Normalization, fixed module-wide: the complex field carries the kernel
//   <zeta(t1) zeta*(t2)> = K(t1-t2) = (G/2tau) exp(-|t1-t2|/tau),
// i.e. each real component is an independent stationary OU process with
// autocovariance K/2 (stationary variance G/4tau). With this choice the
// double integral sigma(t) below is exactly the Gaussian-noise variance
// sigma^2 that multiplies |gamma|^2 in the ensemble-averaged channel.
struct OUParams {
    double G = 1.0;          // process amplitude
    double tau = 1.0;        // correlation time, > 0
    double omega_zeta = 0.0; // carrier frequency of the field
    double delta_zeta = 0.0; // detuning omega_zeta - nu, stored for clarity
};

OUParams make_ou_params(double G, double tau, double omega_zeta, double nu);

struct TimeGrid {
    double dt = 0.0;
    int n_steps = 0; // nodes are 0, dt, ..., n_steps*dt
};

struct FieldTrajectory {
    std::vector<double> times;
    std::vector<double> zx;
    std::vector<double> zy;
};

// Stationary initialization, exact node-to-node update
//   x_{k+1} = x_k e^{-dt/tau} + sqrt(v (1 - e^{-2dt/tau})) * N(0,1),  v = G/4tau.
FieldTrajectory ou_sample(const OUParams& params, const TimeGrid& grid, std::uint64_t seed);

// sigma(t) = int_0^t int_0^t cos[delta_zeta (t1-t2)] K(t1-t2) dt1 dt2.
// Closed form G [t - tau (1 - e^{-t/tau})] at zero detuning, Gauss-Legendre
// quadrature of the reduced one-dimensional integral otherwise.
double sigma_analytic(const OUParams& params, double t);

// Per-trajectory interaction-picture displacement
//   alpha(t) = -i int_0^t zeta(s) e^{-i delta_zeta s} ds
// (each trajectory's unitary is a pure displacement up to a global phase).
struct DisplacementEnsemble {
    double t = 0.0;            // actual snapshot time (a grid node)
    Complex mean_alpha{0.0, 0.0};
    double var_re = 0.0;       // population variances of the displacement
    double var_im = 0.0;
    double cov_re_im = 0.0;
    double se_var = 0.0;       // standard error of the variance estimates
    std::int64_t n_traj = 0;
};

// One OU path per trajectory (substream = trajectory index), trapezoidal
// accumulation of the displacement integral, snapshots at the requested
// times snapped to grid nodes. Deterministic in (seed, n_traj) and invariant
// under any partitioning of the trajectory range.
std::vector<DisplacementEnsemble> stoc_displacement_ensemble(
    const OUParams& params, const std::vector<double>& out_times,
    std::int64_t n_traj, std::uint64_t seed, int min_steps = 16);

// Trajectory-averaged state: mean += E[alpha], cov += scatter of alpha.
// The ensemble limit is the Gaussian-noise channel with sigma2 = sigma_analytic(t).
GaussianState evolve_stoc_mc(const GaussianState& rho_a, const OUParams& params, double nu,
                             double t, std::int64_t n_traj, std::uint64_t seed);

} // namespace oqs
