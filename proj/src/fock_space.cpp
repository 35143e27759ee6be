#include "oqs/fock_space.hpp"

#include <cmath>
#include <map>
#include <stdexcept>

namespace oqs::fock {

Matrix destroy(int d) {
    Matrix a = Matrix::Zero(d, d);
    for (int n = 1; n < d; ++n) {
        a(n - 1, n) = std::sqrt(static_cast<double>(n));
    }
    return a;
}

Matrix number(int d) {
    Matrix n = Matrix::Zero(d, d);
    for (int k = 0; k < d; ++k) {
        n(k, k) = static_cast<double>(k);
    }
    return n;
}

Matrix spin_lower() {
    Matrix s = Matrix::Zero(2, 2);
    s(0, 1) = 1.0; // basis order |down>, |up>
    return s;
}

Matrix spin_raise() { return spin_lower().adjoint(); }

Matrix spin_z() {
    Matrix s = Matrix::Zero(2, 2);
    s(0, 0) = -0.5;
    s(1, 1) = 0.5;
    return s;
}

Matrix kron(const Matrix& a, const Matrix& b) {
    Matrix out(a.rows() * b.rows(), a.cols() * b.cols());
    for (Eigen::Index i = 0; i < a.rows(); ++i) {
        for (Eigen::Index j = 0; j < a.cols(); ++j) {
            out.block(i * b.rows(), j * b.cols(), b.rows(), b.cols()) = a(i, j) * b;
        }
    }
    return out;
}

Matrix embed(const Matrix& op, const std::vector<int>& dims, int which) {
    Matrix out = Matrix::Identity(1, 1);
    for (std::size_t m = 0; m < dims.size(); ++m) {
        if (static_cast<int>(m) == which) {
            out = kron(out, op);
        } else {
            out = kron(out, Matrix::Identity(dims[m], dims[m]));
        }
    }
    return out;
}

Matrix evolution_operator(const Matrix& hamiltonian, double t) {
    Eigen::SelfAdjointEigenSolver<Matrix> es(hamiltonian);
    const auto& evals = es.eigenvalues();
    const auto& v = es.eigenvectors();
    Vector phases(evals.size());
    for (Eigen::Index k = 0; k < evals.size(); ++k) {
        phases(k) = std::exp(Complex{0.0, -evals(k) * t});
    }
    return v * phases.asDiagonal() * v.adjoint();
}

Matrix exp_antihermitian(const Matrix& a) {
    // exp(A) = exp(-i (iA)) with iA Hermitian
    return evolution_operator(Complex{0.0, 1.0} * a, 1.0);
}

Matrix displacement(int d, Complex gamma) {
    const Matrix a = destroy(d);
    return exp_antihermitian(gamma * a.adjoint() - std::conj(gamma) * a);
}

Vector coherent_state(int d, Complex alpha) {
    Vector psi(d);
    psi(0) = 1.0;
    for (int n = 1; n < d; ++n) {
        psi(n) = psi(n - 1) * alpha / std::sqrt(static_cast<double>(n));
    }
    psi *= std::exp(-0.5 * std::norm(alpha));
    return psi / psi.norm(); // renormalize against truncation loss
}

Matrix thermal_density(int d, double n_mean) {
    if (n_mean < 0.0) {
        throw std::domain_error("thermal_density: n_mean must be >= 0");
    }
    Matrix rho = Matrix::Zero(d, d);
    const double ratio = n_mean / (1.0 + n_mean);
    double w = 1.0;
    double total = 0.0;
    for (int n = 0; n < d; ++n) {
        rho(n, n) = w;
        total += w;
        w *= ratio;
    }
    return rho / total;
}

Matrix reduce_to_first(const Matrix& rho, const std::vector<int>& dims) {
    const int d0 = dims[0];
    long long rest = 1;
    for (std::size_t m = 1; m < dims.size(); ++m) {
        rest *= dims[m];
    }
    Matrix out = Matrix::Zero(d0, d0);
    for (int i = 0; i < d0; ++i) {
        for (int j = 0; j < d0; ++j) {
            Complex sum{0.0, 0.0};
            for (long long k = 0; k < rest; ++k) {
                sum += rho(i * rest + k, j * rest + k);
            }
            out(i, j) = sum;
        }
    }
    return out;
}

Matrix reduce_to_first(const Vector& psi, const std::vector<int>& dims) {
    const int d0 = dims[0];
    const long long rest = psi.size() / d0;
    Eigen::Map<const Matrix> m(psi.data(), rest, d0); // column-major: psi(i*rest + k)
    return (m.adjoint() * m).conjugate();
}

std::vector<double> mode_populations(const Vector& psi, const std::vector<int>& dims, int which) {
    ProductBasis basis{dims};
    std::vector<double> pop(dims[which], 0.0);
    for (long long i = 0; i < psi.size(); ++i) {
        pop[basis.occupation(i, which)] += std::norm(psi(i));
    }
    return pop;
}

SectorDecomposition split_by_charge(const std::vector<long long>& charges) {
    SectorDecomposition dec;
    dec.sector_of.resize(charges.size());
    std::map<long long, int> id_of;
    for (std::size_t i = 0; i < charges.size(); ++i) {
        auto [it, inserted] = id_of.try_emplace(charges[i], static_cast<int>(dec.sectors.size()));
        if (inserted) {
            dec.sectors.emplace_back();
        }
        dec.sectors[it->second].push_back(static_cast<long long>(i));
        dec.sector_of[i] = it->second;
    }
    return dec;
}

} // namespace oqs::fock
