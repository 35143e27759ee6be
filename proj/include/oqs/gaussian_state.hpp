// gaussian_state.hpp — Single-mode Gaussian states as first and second moments

#pragma once

#include <complex>

#include <Eigen/Dense>

namespace oqs {

using Complex = std::complex<double>;

// Conventions, fixed module-wide:
//   hbar = 1, k_B = 1
//   quadratures q = (a + a†)/2, p = (a - a†)/(2i), so [q, p] = i/2
//   vacuum covariance = diag(1/4, 1/4)
//   characteristic function chi(gamma) = Tr[rho D(gamma)], D(gamma) = exp{gamma a† - gamma* a}
struct GaussianState {
    Complex mean{0.0, 0.0};               // displacement <a>
    Eigen::Matrix2d cov = Eigen::Matrix2d::Identity() * 0.25; // (q,p) covariance

    static GaussianState vacuum() { return GaussianState{}; }
};

// Where a thermal occupation number came from; the reduced maps only care
// about the value, the experiments report the provenance.
enum class OccupationSource { BosonicPlanck, SpinBrillouin };

struct ThermalOccupation {
    double n = 0.0; // mean quantum number, >= 0
    OccupationSource source = OccupationSource::BosonicPlanck;
};

// Planck occupation (e^{omega/T} - 1)^-1; T = 0 yields the vacuum limit n = 0.
double thermal_occupation(double omega, double temperature);

// Thermal state of a mode of frequency omega at temperature T:
// mean 0, cov = (n_T + 1/2)/2 * I. Throws std::domain_error for omega <= 0.
GaussianState thermal_state(double omega, double temperature);

// chi(gamma) = exp{gamma <a†> - gamma* <a> - (1/2) k^T V k}, k = (2 Im gamma, -2 Re gamma).
// chi(0) = 1 exactly; thermal states give exp{-|gamma|^2 (n_T + 1/2)}.
Complex char_fn(const GaussianState& state, Complex gamma);

// D(alpha): mean += alpha, covariance unchanged.
GaussianState apply_displacement(const GaussianState& state, Complex alpha);

// Both covariance eigenvalues >= 1/4 - tol and symmetry of cov.
bool is_physical(const GaussianState& state, double tol = 1e-10);

} // namespace oqs
