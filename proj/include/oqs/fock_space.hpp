// fock_space.hpp — Dense operators on truncated multimode Fock / spin spaces

#pragma once

#include <complex>
#include <vector>

#include <Eigen/Dense>

namespace oqs::fock {

using Matrix = Eigen::MatrixXcd;
using Vector = Eigen::VectorXcd;
using Complex = std::complex<double>;

// annihilation operator on a d-level truncation: a|n> = sqrt(n)|n-1>
Matrix destroy(int d);
Matrix number(int d);

// spin-1/2 ladder/z operators with [s+, s-] = 2 s_z, s_z eigenvalues ±1/2
Matrix spin_lower();
Matrix spin_raise();
Matrix spin_z();

Matrix kron(const Matrix& a, const Matrix& b);

// operator acting on one factor of a product space: I ⊗ ... ⊗ op ⊗ ... ⊗ I
Matrix embed(const Matrix& op, const std::vector<int>& dims, int which);

// exp(-i H t) for Hermitian H via eigendecomposition
Matrix evolution_operator(const Matrix& hamiltonian, double t);

// exp(A) for anti-Hermitian A (iA is Hermitian)
Matrix exp_antihermitian(const Matrix& a);

// displacement operator exp{gamma a† - gamma* a} on a d-level truncation
Matrix displacement(int d, Complex gamma);

// coherent state |alpha> and thermal density matrix on a d-level truncation
Vector coherent_state(int d, Complex alpha);
Matrix thermal_density(int d, double n_mean);

// trace out everything but the first factor of dims (dims[0] x rest layout)
Matrix reduce_to_first(const Matrix& rho, const std::vector<int>& dims);
Matrix reduce_to_first(const Vector& psi, const std::vector<int>& dims);

// occupation-number distribution of one factor for a pure state
std::vector<double> mode_populations(const Vector& psi, const std::vector<int>& dims, int which);

// Mixed-radix product basis with per-factor occupation access.
struct ProductBasis {
    std::vector<int> dims;

    long long size() const {
        long long n = 1;
        for (int d : dims) n *= d;
        return n;
    }
    int occupation(long long index, int which) const {
        for (int m = static_cast<int>(dims.size()) - 1; m > which; --m) {
            index /= dims[m];
        }
        return static_cast<int>(index % dims[which]);
    }
};

// Index partition by a conserved integer charge; used to block-diagonalize
// Hamiltonians that commute with a number-like operator.
struct SectorDecomposition {
    std::vector<std::vector<long long>> sectors; // global indices per sector
    std::vector<int> sector_of;                  // sector id per global index
};

SectorDecomposition split_by_charge(const std::vector<long long>& charges);

} // namespace oqs::fock
