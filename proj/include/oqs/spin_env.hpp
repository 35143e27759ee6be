// spin_env.hpp — Magnetic environment mapped onto the effective two-mode problem

#pragma once

#include <complex>
#include <vector>

#include "oqs/gaussian_state.hpp"
#include "oqs/two_mode.hpp"

namespace oqs {

struct SpinEnvSpec {
    int n_spins = 1;      // N >= 1 spin-1/2 particles
    double f = 1.0;       // level splitting, > 0
    double g = 0.0;       // aggregate coupling sqrt(sum_i |g_i|^2)
    double temperature = 0.0;

    static SpinEnvSpec from_couplings(int n_spins, double f,
                                      const std::vector<std::complex<double>>& g_i,
                                      double temperature);
};

struct SpinThermal {
    double S = 0.5;      // collective spin N/2
    double x = 0.0;      // Brillouin argument S|f|/T
    double m = 1.0;      // magnetization per spin, B_S(x)
    double nTS = 0.0;    // thermal occupation S(1 - m)
    double LambdaS = 0.0; // effective coupling g sqrt(m); see note below
};

// B_S(x) = ((2S+1)/2S) coth(((2S+1)/2S) x) - (1/2S) coth(x/2S), with the
// series branch ((S+1)/3S) x - ((c1^4 - c2^4)/45) x^3 below x = 1e-4 to avoid
// the coth cancellation. B_{1/2}(x) = tanh(x); S -> infinity gives the
// Langevin function.
double brillouin(double S, double x);

// Langevin function coth(x) - 1/x (the large-S limit of brillouin).
double langevin(double x);

// Collective thermal parameters: x = S|f|/T, m = B_S(x), nTS = S(1-m),
// LambdaS = g sqrt(m). T = 0 is the saturation limit m = 1, nTS = 0.
//
// Note on the coupling: with the magnetization-per-spin convention
// m = B_S(x) in (0,1] used here (so <sigma^z> = -m/2), the normalization
// [S~+, S~-] = -1 of the collective ladder operators fixes LambdaS = g sqrt(m).
// In particular LambdaS -> g as T -> 0, which reproduces the exact
// lowest-order bosonization of the fully polarized environment; the truncated
// Fock oracle is the arbiter of this normalization.
SpinThermal spin_thermal(const SpinEnvSpec& spec);

// The bosonized problem: TwoModeParams(nu, omega = f, Lambda = LambdaS) and a
// thermal occupation nTS. Downstream use of the reduced maps is then
// identical to the bosonic case.
std::pair<TwoModeParams, ThermalOccupation> as_two_mode(const SpinEnvSpec& spec, double nu);

} // namespace oqs
