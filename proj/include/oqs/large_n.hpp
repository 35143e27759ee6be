// large_n.hpp — Global environment operators, their algebra, and coherence-group checks

#pragma once

#include <complex>
#include <vector>

#include "oqs/fock_space.hpp"

namespace oqs::largen {

using Complex = std::complex<double>;

// L(eps, beta) = iN (eps E + beta* B + beta B†) + central * 1, where
//   E = (1/N) sum_k b_k† b_k,  B = (1/sqrt(N Lambda^2)) sum_k lambda_k b_k.
// The central coefficient tracks the identity component picked up by
// commutators; it is exactly the term dropped when the set is treated as a
// closed Lie algebra.
struct AlgebraElement {
    double eps = 0.0;
    Complex beta{0.0, 0.0};
    Complex central{0.0, 0.0};
    int n_modes = 1;
};

// Exact commutator in coefficient form: eps3 = 0,
// beta3 = i (eps1 beta2 - eps2 beta1), central3 = -N (beta1* beta2 - beta1 beta2*).
AlgebraElement bracket(const AlgebraElement& a, const AlgebraElement& b);

// |central| of the bracket measured against the inputs' coefficients in their
// N-independent normalization (eps and sqrt(N) beta are the O(1) quantities):
//   |central(a,b)| / (N * max(|eps1|, |eps2|, sqrt(N)|beta1|, sqrt(N)|beta2|)).
// Under fixed sqrt(N) beta this decays exactly as 1/N.
double relative_central_size(const AlgebraElement& a, const AlgebraElement& b);

// 2x2 representation ell(eps, beta) = i [[0, beta*], [0, eps]]. Its matrix
// commutator reproduces bracket() with the central term dropped.
Eigen::Matrix2cd ell(double eps, Complex beta);

// phi = e^{i eps}, zeta = (beta/eps)(e^{i eps} - 1), with the series limit
// zeta = i beta below |eps| = 1e-6.
struct GroupElement2x2 {
    Complex phi{1.0, 0.0};
    Complex zeta{0.0, 0.0};

    Eigen::Matrix2cd matrix() const; // [[1, 0], [zeta, phi]]
};

GroupElement2x2 group_element(double eps, Complex beta);

// Matrix realizations of E and B on an n_modes-fold Fock space truncated at
// d_per_mode levels. Uniform couplings lambda_k = Lambda/sqrt(N) make B the
// symmetric collective mode; any coupling vector is accepted.
struct GlobalOps {
    int n_modes = 1;
    int d_per_mode = 2;
    fock::Matrix E;
    fock::Matrix B;

    static GlobalOps build(int n_modes, int d_per_mode,
                           const std::vector<Complex>& lambda_k);
    static GlobalOps build_uniform(int n_modes, int d_per_mode);

    fock::Matrix algebra_element(const AlgebraElement& el) const; // L as a matrix
    long long dim() const { return E.rows(); }
};

// Operator norm of [L_a, L_b] - (iN(beta3* B + beta3 B†) + 0*E) on the
// subspace of total occupation <= half the per-mode truncation times N; the
// exact residual is central * identity, so this equals |central|.
double matrix_check_bracket(const AlgebraElement& a, const AlgebraElement& b,
                            const GlobalOps& ops);

// Residual norm of U^-1 B U - (zeta + phi B) on the subspace of total
// occupation <= max_total (default: half the per-mode truncation), with
// U = exp(L). The identity is exact at any finite N; the residual is purely a
// truncation artifact and shrinks rapidly with d_per_mode. Pass a fixed
// max_total when comparing different truncations.
double gcs_conjugation_check(double eps, Complex beta, const GlobalOps& ops,
                             int max_total = -1);

// Symbols on the generalized coherent state |u> = U|0>:
//   B_symbol = <u|B|u>   (equals zeta up to truncation error)
//   E_symbol = <u|B B†|u> (equals |zeta|^2 + 1/N up to truncation error)
// The quantum remnant E_symbol - |B_symbol|^2 = 1/N is the 1/N convergence
// handle used by the scaling experiments.
struct GcsSymbols {
    Complex b_symbol{0.0, 0.0};
    double e_symbol = 0.0;
    Complex b_dagger_symbol{0.0, 0.0}; // conjugate-consistency cross-check
};

GcsSymbols gcs_symbols(double eps, Complex beta, const GlobalOps& ops);

// H -> (nu a†a + omega) + drive* a + drive a† with drive = zeta * Lambda / sqrt(N).
// |drive| is N-independent whenever the per-mode coupling is fixed
// (Lambda grows as sqrt(N)) and zeta follows the coherent-state construction.
struct EffectiveParams {
    double nu_out = 0.0;
    double omega_offset = 0.0;
    Complex drive{0.0, 0.0};
};

EffectiveParams effective_hamiltonian_params(Complex zeta, double nu, double omega,
                                             double Lambda, int n_modes);

} // namespace oqs::largen
