// two_mode.hpp — Exact propagator coefficients of the collective two-mode models

#pragma once

#include <complex>

namespace oqs {

// Exchange couples a b† + a† b (beam-splitter form, conserves quanta);
// Hopping couples a† b† + a b (two-mode squeezing form, creates pairs).
enum class ModelKind { Exchange, Hopping };

// sign factor: -1 for Exchange, +1 for Hopping
constexpr int sign_factor(ModelKind kind) { return kind == ModelKind::Exchange ? -1 : +1; }

struct TwoModeParams {
    double nu = 1.0;     // system frequency
    double omega = 1.0;  // collective environment frequency (f for a spin environment)
    double Lambda = 0.0; // effective coupling, sqrt(sum_k |lambda_k|^2) >= 0
};

// Hopping turns hyperbolic when Lambda exceeds delta; Exchange is always
// oscillatory. The closed forms continue cos/sin -> cosh/sinh across the
// boundary.
enum class Regime { Oscillatory, Hyperbolic };

struct DerivedConstants {
    double delta = 0.0;     // (nu + s*omega)/2
    double Delta = 0.0;     // sqrt(|delta^2 - s*Lambda^2|)
    double omega_rot = 0.0; // rotating-frame frequency (nu - s*omega)/2
    Regime regime = Regime::Oscillatory;
};

struct CoefficientSet {
    std::complex<double> mu{1.0, 0.0};
    std::complex<double> pi{0.0, 0.0}; // purely imaginary for all t
    double delta = 0.0;
    double Delta = 0.0;
    double omega_rot = 0.0;
    ModelKind kind = ModelKind::Exchange;
    Regime regime = Regime::Oscillatory;
    double t = 0.0;
};

DerivedConstants derived_constants(const TwoModeParams& params, ModelKind kind);

// mu(t) = cos(Delta t) - i (delta/Delta) sin(Delta t), pi(t) = -i (Lambda/Delta) sin(Delta t)
// in the oscillatory regime, cosh/sinh in the hyperbolic one; the Delta -> 0
// limit (mu = 1 - i delta t, pi = -i Lambda t) is taken by series when
// Delta|t| < 1e-6. Satisfies |mu|^2 - s|pi|^2 = 1.
CoefficientSet coefficients(const TwoModeParams& params, ModelKind kind, double t);

// First order in t: mu = 1 - i delta t, pi = -i Lambda t; |mu|^2 is treated as 1
// at this order. Valid for Delta*t << 1, see short_time_horizon.
CoefficientSet short_time_coefficients(const TwoModeParams& params, ModelKind kind, double t);

struct Horizon {
    double value = 0.0;  // 1/Delta, a scale rather than a hard cutoff
    bool infinite = false; // Delta = 0: no finite horizon
};

Horizon short_time_horizon(const TwoModeParams& params, ModelKind kind);

} // namespace oqs
