#include "oqs/gaussian_state.hpp"

#include <cmath>
#include <stdexcept>

namespace oqs {

double thermal_occupation(double omega, double temperature) {
    if (omega <= 0.0) {
        throw std::domain_error("thermal_occupation: omega must be positive");
    }
    if (temperature < 0.0) {
        throw std::domain_error("thermal_occupation: temperature must be >= 0");
    }
    if (temperature == 0.0) {
        return 0.0;
    }
    return 1.0 / std::expm1(omega / temperature);
}

GaussianState thermal_state(double omega, double temperature) {
    const double n = thermal_occupation(omega, temperature);
    GaussianState state;
    state.mean = Complex{0.0, 0.0};
    state.cov = Eigen::Matrix2d::Identity() * (0.5 * (n + 0.5));
    return state;
}

Complex char_fn(const GaussianState& state, Complex gamma) {
    const Eigen::Vector2d k{2.0 * gamma.imag(), -2.0 * gamma.real()};
    const double quad = 0.5 * k.dot(state.cov * k);
    const Complex phase = gamma * std::conj(state.mean) - std::conj(gamma) * state.mean;
    return std::exp(phase - quad);
}

GaussianState apply_displacement(const GaussianState& state, Complex alpha) {
    GaussianState out = state;
    out.mean += alpha;
    return out;
}

bool is_physical(const GaussianState& state, double tol) {
    if (std::abs(state.cov(0, 1) - state.cov(1, 0)) > tol) {
        return false;
    }
    Eigen::SelfAdjointEigenSolver<Eigen::Matrix2d> es(state.cov);
    return es.eigenvalues().minCoeff() >= 0.25 - tol;
}

} // namespace oqs
