#include "oqs/large_n.hpp"

#include <cmath>
#include <stdexcept>

namespace oqs::largen {

namespace {

constexpr Complex kI{0.0, 1.0};

// indices of product states with total occupation <= max_total
std::vector<long long> low_subspace(int n_modes, int d_per_mode, int max_total) {
    fock::ProductBasis basis{std::vector<int>(n_modes, d_per_mode)};
    std::vector<long long> keep;
    for (long long i = 0; i < basis.size(); ++i) {
        int total = 0;
        for (int m = 0; m < n_modes; ++m) {
            total += basis.occupation(i, m);
        }
        if (total <= max_total) {
            keep.push_back(i);
        }
    }
    return keep;
}

double projected_norm(const fock::Matrix& m, const std::vector<long long>& keep) {
    fock::Matrix sub(keep.size(), keep.size());
    for (std::size_t r = 0; r < keep.size(); ++r) {
        for (std::size_t c = 0; c < keep.size(); ++c) {
            sub(r, c) = m(keep[r], keep[c]);
        }
    }
    return sub.operatorNorm();
}

} // namespace

AlgebraElement bracket(const AlgebraElement& a, const AlgebraElement& b) {
    if (a.n_modes != b.n_modes) {
        throw std::invalid_argument("bracket: elements must share N");
    }
    const double n = static_cast<double>(a.n_modes);
    AlgebraElement out;
    out.n_modes = a.n_modes;
    out.eps = 0.0;
    out.beta = kI * (a.eps * b.beta - b.eps * a.beta);
    out.central = -n * (std::conj(a.beta) * b.beta - a.beta * std::conj(b.beta));
    return out;
}

double relative_central_size(const AlgebraElement& a, const AlgebraElement& b) {
    const AlgebraElement c = bracket(a, b);
    const double n = static_cast<double>(a.n_modes);
    const double sqrt_n = std::sqrt(n);
    const double scale = std::max({std::abs(a.eps), std::abs(b.eps),
                                   sqrt_n * std::abs(a.beta), sqrt_n * std::abs(b.beta)});
    if (scale == 0.0) {
        return 0.0;
    }
    return std::abs(c.central) / (n * scale);
}

Eigen::Matrix2cd ell(double eps, Complex beta) {
    Eigen::Matrix2cd m = Eigen::Matrix2cd::Zero();
    m(0, 1) = kI * std::conj(beta);
    m(1, 1) = kI * eps;
    return m;
}

Eigen::Matrix2cd GroupElement2x2::matrix() const {
    Eigen::Matrix2cd m = Eigen::Matrix2cd::Identity();
    m(1, 0) = zeta;
    m(1, 1) = phi;
    return m;
}

GroupElement2x2 group_element(double eps, Complex beta) {
    GroupElement2x2 g;
    g.phi = std::exp(kI * eps);
    if (std::abs(eps) < 1e-6) {
        // (e^{i eps} - 1)/eps = i - eps/2 - i eps^2/6 + eps^3/24
        const Complex series = kI - Complex{eps / 2.0, 0.0} - kI * eps * eps / 6.0 +
                               Complex{eps * eps * eps / 24.0, 0.0};
        g.zeta = beta * series;
    } else {
        g.zeta = beta * (std::exp(kI * eps) - 1.0) / eps;
    }
    return g;
}

GlobalOps GlobalOps::build(int n_modes, int d_per_mode, const std::vector<Complex>& lambda_k) {
    if (static_cast<int>(lambda_k.size()) != n_modes) {
        throw std::invalid_argument("GlobalOps::build: lambda_k size must equal n_modes");
    }
    double lambda2 = 0.0;
    for (const Complex& l : lambda_k) {
        lambda2 += std::norm(l);
    }
    if (lambda2 == 0.0) {
        throw std::invalid_argument("GlobalOps::build: couplings must not vanish");
    }
    const std::vector<int> dims(n_modes, d_per_mode);

    GlobalOps ops;
    ops.n_modes = n_modes;
    ops.d_per_mode = d_per_mode;
    const long long dim = fock::ProductBasis{dims}.size();
    ops.E = fock::Matrix::Zero(dim, dim);
    ops.B = fock::Matrix::Zero(dim, dim);
    const fock::Matrix a = fock::destroy(d_per_mode);
    const fock::Matrix n_op = fock::number(d_per_mode);
    for (int k = 0; k < n_modes; ++k) {
        ops.E += fock::embed(n_op, dims, k) / static_cast<double>(n_modes);
        ops.B += lambda_k[k] * fock::embed(a, dims, k) /
                 std::sqrt(static_cast<double>(n_modes) * lambda2);
    }
    return ops;
}

GlobalOps GlobalOps::build_uniform(int n_modes, int d_per_mode) {
    const std::vector<Complex> lambda_k(n_modes, Complex{1.0, 0.0});
    return build(n_modes, d_per_mode, lambda_k);
}

fock::Matrix GlobalOps::algebra_element(const AlgebraElement& el) const {
    const double n = static_cast<double>(n_modes);
    fock::Matrix l = kI * n *
                     (el.eps * E + std::conj(el.beta) * B + el.beta * B.adjoint());
    if (el.central != Complex{0.0, 0.0}) {
        l += el.central * fock::Matrix::Identity(dim(), dim());
    }
    return l;
}

double matrix_check_bracket(const AlgebraElement& a, const AlgebraElement& b,
                            const GlobalOps& ops) {
    if (a.n_modes != ops.n_modes || b.n_modes != ops.n_modes) {
        throw std::invalid_argument("matrix_check_bracket: N mismatch with GlobalOps");
    }
    const fock::Matrix la = ops.algebra_element(a);
    const fock::Matrix lb = ops.algebra_element(b);
    AlgebraElement formula = bracket(a, b);
    formula.central = Complex{0.0, 0.0}; // compare against the closed-algebra part only
    const fock::Matrix residual = la * lb - lb * la - ops.algebra_element(formula);
    // keep two quanta of headroom so no intermediate state is clipped by the
    // per-mode truncation; the projected residual is then exactly central * 1
    const int max_total = std::min(ops.d_per_mode / 2, ops.d_per_mode - 3);
    return projected_norm(residual, low_subspace(ops.n_modes, ops.d_per_mode, max_total));
}

double gcs_conjugation_check(double eps, Complex beta, const GlobalOps& ops, int max_total) {
    AlgebraElement el;
    el.eps = eps;
    el.beta = beta;
    el.n_modes = ops.n_modes;
    const fock::Matrix u = fock::exp_antihermitian(ops.algebra_element(el));
    const GroupElement2x2 g = group_element(eps, beta);
    const fock::Matrix lhs = u.adjoint() * ops.B * u;
    const fock::Matrix rhs =
        g.zeta * fock::Matrix::Identity(ops.dim(), ops.dim()) + g.phi * ops.B;
    if (max_total < 0) {
        max_total = ops.d_per_mode / 2;
    }
    return projected_norm(lhs - rhs, low_subspace(ops.n_modes, ops.d_per_mode, max_total));
}

GcsSymbols gcs_symbols(double eps, Complex beta, const GlobalOps& ops) {
    AlgebraElement el;
    el.eps = eps;
    el.beta = beta;
    el.n_modes = ops.n_modes;
    const fock::Matrix u = fock::exp_antihermitian(ops.algebra_element(el));
    fock::Vector vac = fock::Vector::Zero(ops.dim());
    vac(0) = 1.0;
    const fock::Vector state = u * vac;

    GcsSymbols out;
    out.b_symbol = state.dot(ops.B * state);
    out.b_dagger_symbol = state.dot(ops.B.adjoint() * state);
    out.e_symbol = std::real(state.dot(ops.B * (ops.B.adjoint() * state)));
    return out;
}

EffectiveParams effective_hamiltonian_params(Complex zeta, double nu, double omega,
                                             double Lambda, int n_modes) {
    EffectiveParams out;
    out.nu_out = nu;
    out.omega_offset = omega;
    out.drive = zeta * Lambda / std::sqrt(static_cast<double>(n_modes));
    return out;
}

} // namespace oqs::largen
