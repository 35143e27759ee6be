#include "oqs/two_mode.hpp"

#include <cmath>
#include <limits>

namespace oqs {

namespace {

constexpr double kSeriesThreshold = 1e-6;

// sin(x)/x resp. sinh(x)/x with the common small-|x| series
double sinc_like(double x, Regime regime) {
    if (std::abs(x) < kSeriesThreshold) {
        const double x2 = x * x;
        const double s = (regime == Regime::Oscillatory) ? -1.0 : +1.0;
        return 1.0 + s * x2 / 6.0 + x2 * x2 / 120.0;
    }
    return (regime == Regime::Oscillatory) ? std::sin(x) / x : std::sinh(x) / x;
}

} // namespace

DerivedConstants derived_constants(const TwoModeParams& params, ModelKind kind) {
    const double s = sign_factor(kind);
    DerivedConstants d;
    d.delta = 0.5 * (params.nu + s * params.omega);
    d.omega_rot = 0.5 * (params.nu - s * params.omega);
    const double disc = d.delta * d.delta - s * params.Lambda * params.Lambda;
    d.regime = (disc >= 0.0) ? Regime::Oscillatory : Regime::Hyperbolic;
    d.Delta = std::sqrt(std::abs(disc));
    return d;
}

CoefficientSet coefficients(const TwoModeParams& params, ModelKind kind, double t) {
    const DerivedConstants d = derived_constants(params, kind);
    const double x = d.Delta * t;
    const double g = t * sinc_like(x, d.regime); // sin(Delta t)/Delta or sinh(...)/Delta
    const double c = (d.regime == Regime::Oscillatory) ? std::cos(x) : std::cosh(x);

    CoefficientSet out;
    out.mu = std::complex<double>{c, -d.delta * g};
    out.pi = std::complex<double>{0.0, -params.Lambda * g};
    out.delta = d.delta;
    out.Delta = d.Delta;
    out.omega_rot = d.omega_rot;
    out.kind = kind;
    out.regime = d.regime;
    out.t = t;
    return out;
}

CoefficientSet short_time_coefficients(const TwoModeParams& params, ModelKind kind, double t) {
    const DerivedConstants d = derived_constants(params, kind);
    CoefficientSet out;
    out.mu = std::complex<double>{1.0, -d.delta * t};
    out.pi = std::complex<double>{0.0, -params.Lambda * t};
    out.delta = d.delta;
    out.Delta = d.Delta;
    out.omega_rot = d.omega_rot;
    out.kind = kind;
    out.regime = d.regime;
    out.t = t;
    return out;
}

Horizon short_time_horizon(const TwoModeParams& params, ModelKind kind) {
    const DerivedConstants d = derived_constants(params, kind);
    if (d.Delta == 0.0) {
        return Horizon{std::numeric_limits<double>::infinity(), true};
    }
    return Horizon{1.0 / d.Delta, false};
}

} // namespace oqs
