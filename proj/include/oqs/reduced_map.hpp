// reduced_map.hpp — Exact reduced dynamical map on Gaussian states and its short-time limit

#pragma once

#include "oqs/gaussian_state.hpp"
#include "oqs/two_mode.hpp"

namespace oqs {

enum class MapBranch { Exact, ShortTime };

struct ReducedMapResult {
    GaussianState state;
    double sigma2 = 0.0; // Gaussian-noise variance when branch == ShortTime
    MapBranch branch = MapBranch::Exact;
};

// Moment transport of the Heisenberg solutions a(t) = mu a + pi b (Exchange)
// and a(t) = mu a + pi b† (Hopping) in the frame rotating at omega_rot, with a
// thermal environment of occupation n:
//   mean -> mu * mean
//   cov  -> M(mu) cov M(mu)^T + |pi|^2 (n + 1/2)/2 * I
// where M(z) is the rotation-scaling [[Re z, -Im z], [Im z, Re z]].
GaussianState evolve_exact(const GaussianState& rho_a, const ThermalOccupation& env,
                           const TwoModeParams& params, ModelKind kind, double t);

// Gaussian-noise form valid for Delta*t << 1, identical for both model kinds:
//   mean unchanged, cov -> cov + sigma2/2 * I, sigma2 = Lambda^2 t^2 (n + 1/2).
ReducedMapResult evolve_short_time(const GaussianState& rho_a, const ThermalOccupation& env,
                                   const TwoModeParams& params, ModelKind kind, double t);

} // namespace oqs
