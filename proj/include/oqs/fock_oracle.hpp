// fock_oracle.hpp — Brute-force ground truth on truncated Fock / spin⊗Fock spaces

#pragma once

#include <memory>
#include <stdexcept>
#include <variant>
#include <vector>

#include "oqs/fock_space.hpp"
#include "oqs/gaussian_state.hpp"
#include "oqs/two_mode.hpp"

namespace oqs {

struct BosonicEnv {
    std::vector<double> omega_k;          // one frequency per mode
    std::vector<fock::Complex> lambda_k;  // one coupling per mode
    int d_env = 8;                        // per-mode truncation
};

struct SpinEnv {
    int n_spins = 1;
    double f = 1.0;
    std::vector<fock::Complex> g_i; // one coupling per spin
};

struct FockSpaceSpec {
    int d_sys = 8;
    double nu = 1.0;
    ModelKind model = ModelKind::Exchange;
    std::variant<BosonicEnv, SpinEnv> env;
    long long dim_cap = 0; // 0: use default_dim_cap()
};

// default total-dimension cap, overridable via OQS_ORACLE_DIM_CAP
long long default_dim_cap();

struct ResourceError : std::runtime_error {
    using std::runtime_error::runtime_error;
};

struct FockOperator {
    long long dim = 0;
    fock::Matrix matrix;
};

// Full Hamiltonian as a dense matrix (for small spaces: symmetry checks,
// spectra, cross-checks). Hermitian by construction.
FockOperator build_hamiltonian(const FockSpaceSpec& spec);

// conserved charge per basis state: n_a + n_env (Exchange), n_a - n_env (Hopping)
std::vector<long long> charge_vector(const FockSpaceSpec& spec);

struct OracleMoments {
    double t = 0.0;
    fock::Complex mean{0.0, 0.0}; // rotating-frame <a>
    Eigen::Matrix2d cov = Eigen::Matrix2d::Zero();
    fock::Matrix rho_a;           // reduced density matrix, rotating frame
    bool leakage = false;         // top-two levels of some mode above threshold
    double max_edge_population = 0.0;
};

// Exact evolution session: block-diagonalizes the Hamiltonian by the conserved
// charge, eigendecomposes each populated sector once, then evaluates the
// reduced state at arbitrary times. The initial state is rho_a0 (coherent or
// displaced-thermal Gaussian) ⊗ product Gibbs environment at T_env.
class FockOracle {
public:
    explicit FockOracle(const FockSpaceSpec& spec);
    ~FockOracle();
    FockOracle(FockOracle&&) noexcept;
    FockOracle& operator=(FockOracle&&) noexcept;

    void prepare(const GaussianState& rho_a0, double t_env,
                 double member_weight_cutoff = 1e-12);
    OracleMoments at(double t) const;

    double omega_ref() const;  // coupling-weighted environment frequency (f for spins)
    double omega_rot() const;  // rotating-frame frequency matching the two-mode solution
    long long dimension() const;

private:
    struct Impl;
    std::unique_ptr<Impl> impl_;
};

// One-shot convenience wrapper around FockOracle.
OracleMoments evolve_and_reduce(const FockSpaceSpec& spec, const GaussianState& rho_a0,
                                double t_env, double t);

// Doubles the truncations (d_sys, and d_env for bosonic environments) from the
// given starting point until the leakage flag clears. If the dimension cap
// stops the doubling the last result is returned with its leakage flag set —
// the flag is mandatory output, never dropped.
OracleMoments evolve_and_reduce_adaptive(FockSpaceSpec spec, const GaussianState& rho_a0,
                                         double t_env, double t);

// Tr[rho D(gamma)] at the truncation of rho; requires trace within 1e-8 of 1.
fock::Complex char_fn_oracle(const fock::Matrix& rho_a, fock::Complex gamma);

// moments of a single-mode density matrix
fock::Complex mean_of(const fock::Matrix& rho_a);
Eigen::Matrix2d cov_of(const fock::Matrix& rho_a);

} // namespace oqs
