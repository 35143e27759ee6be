#include "oqs/spin_env.hpp"

#include <cmath>
#include <limits>
#include <stdexcept>

namespace oqs {

namespace {

constexpr double kSeriesX = 1e-4;

double coth(double x) { return 1.0 / std::tanh(x); }

void validate(const SpinEnvSpec& spec) {
    if (spec.n_spins < 1) {
        throw std::domain_error("SpinEnvSpec: n_spins must be >= 1");
    }
    if (spec.f <= 0.0) {
        throw std::domain_error("SpinEnvSpec: f must be positive");
    }
    if (spec.g < 0.0 || spec.temperature < 0.0) {
        throw std::domain_error("SpinEnvSpec: g and temperature must be >= 0");
    }
}

} // namespace

SpinEnvSpec SpinEnvSpec::from_couplings(int n_spins, double f,
                                        const std::vector<std::complex<double>>& g_i,
                                        double temperature) {
    SpinEnvSpec spec;
    spec.n_spins = n_spins;
    spec.f = f;
    double sum = 0.0;
    for (const auto& g : g_i) {
        sum += std::norm(g);
    }
    spec.g = std::sqrt(sum);
    spec.temperature = temperature;
    validate(spec);
    return spec;
}

double brillouin(double S, double x) {
    if (S < 0.5 || std::abs(2.0 * S - std::round(2.0 * S)) > 1e-9) {
        throw std::domain_error("brillouin: S must be a half-integer >= 1/2");
    }
    if (x < 0.0) {
        throw std::domain_error("brillouin: x must be >= 0 (use |f| upstream)");
    }
    const double c1 = (2.0 * S + 1.0) / (2.0 * S);
    const double c2 = 1.0 / (2.0 * S);
    if (x < kSeriesX) {
        const double q2 = c1 * c1 - c2 * c2; // (S+1)/S
        const double q4 = c1 * c1 * c1 * c1 - c2 * c2 * c2 * c2;
        return q2 * x / 3.0 - q4 * x * x * x / 45.0;
    }
    return c1 * coth(c1 * x) - c2 * coth(c2 * x);
}

double langevin(double x) {
    if (x < 0.0) {
        throw std::domain_error("langevin: x must be >= 0");
    }
    if (x < kSeriesX) {
        return x / 3.0 - x * x * x / 45.0;
    }
    return coth(x) - 1.0 / x;
}

SpinThermal spin_thermal(const SpinEnvSpec& spec) {
    validate(spec);
    SpinThermal th;
    th.S = 0.5 * spec.n_spins;
    if (spec.temperature == 0.0) {
        th.x = std::numeric_limits<double>::infinity();
        th.m = 1.0;
    } else {
        th.x = th.S * std::abs(spec.f) / spec.temperature;
        th.m = brillouin(th.S, th.x);
    }
    th.nTS = th.S * (1.0 - th.m);
    th.LambdaS = spec.g * std::sqrt(th.m);
    return th;
}

std::pair<TwoModeParams, ThermalOccupation> as_two_mode(const SpinEnvSpec& spec, double nu) {
    const SpinThermal th = spin_thermal(spec);
    TwoModeParams params;
    params.nu = nu;
    params.omega = spec.f;
    params.Lambda = th.LambdaS;
    ThermalOccupation occ;
    occ.n = th.nTS;
    occ.source = OccupationSource::SpinBrillouin;
    return {params, occ};
}

} // namespace oqs
