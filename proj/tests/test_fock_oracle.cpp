#include <doctest.h>

#include <cmath>

#include "oqs/fock_oracle.hpp"
#include "oqs/reduced_map.hpp"

using namespace oqs;
using fock::Complex;
using fock::Matrix;

namespace {

FockSpaceSpec equal_mode_spec(ModelKind kind, double nu, double omega, double Lambda,
                              int n_modes, int d_sys, int d_env) {
    FockSpaceSpec spec;
    spec.d_sys = d_sys;
    spec.nu = nu;
    spec.model = kind;
    BosonicEnv env;
    env.d_env = d_env;
    env.omega_k.assign(n_modes, omega);
    env.lambda_k.assign(n_modes, Lambda / std::sqrt(static_cast<double>(n_modes)));
    spec.env = env;
    return spec;
}

double commutator_with_charge(const FockOperator& h, const std::vector<long long>& charge) {
    // || [H, diag(charge)] ||_max = max |H_ij| |q_i - q_j|
    double worst = 0.0;
    for (long long i = 0; i < h.dim; ++i) {
        for (long long j = 0; j < h.dim; ++j) {
            worst = std::max(worst, std::abs(h.matrix(i, j)) *
                                        std::abs(static_cast<double>(charge[i] - charge[j])));
        }
    }
    return worst;
}

} // namespace

TEST_SUITE_BEGIN("fock_oracle");

TEST_CASE("hamiltonian assembly") {
    SUBCASE("decoupled limit is diagonal") {
        FockSpaceSpec spec = equal_mode_spec(ModelKind::Exchange, 0.7, 1.3, 0.0, 1, 3, 3);
        const FockOperator h = build_hamiltonian(spec);
        const fock::ProductBasis basis{{3, 3}};
        for (long long i = 0; i < h.dim; ++i) {
            for (long long j = 0; j < h.dim; ++j) {
                if (i == j) {
                    const double expected =
                        0.7 * basis.occupation(i, 0) + 1.3 * basis.occupation(i, 1);
                    CHECK(h.matrix(i, i) == Complex{expected, 0.0});
                } else {
                    CHECK(h.matrix(i, j) == Complex{0.0, 0.0});
                }
            }
        }
    }
    SUBCASE("one-excitation block splits by the coupling") {
        FockSpaceSpec spec = equal_mode_spec(ModelKind::Exchange, 1.0, 1.0, 0.5, 1, 3, 3);
        const FockOperator h = build_hamiltonian(spec);
        // basis indices: |n_a=0, n_b=1> = 1, |n_a=1, n_b=0> = 3
        Eigen::Matrix2cd block;
        block << h.matrix(1, 1), h.matrix(1, 3), h.matrix(3, 1), h.matrix(3, 3);
        Eigen::SelfAdjointEigenSolver<Eigen::Matrix2cd> es(block);
        CHECK(es.eigenvalues()(0) == doctest::Approx(0.5).epsilon(1e-13));
        CHECK(es.eigenvalues()(1) == doctest::Approx(1.5).epsilon(1e-13));
    }
    SUBCASE("hermitian within 1e-12") {
        for (const ModelKind kind : {ModelKind::Exchange, ModelKind::Hopping}) {
            FockSpaceSpec spec = equal_mode_spec(kind, 1.0, 0.9, 0.4, 2, 4, 4);
            std::get<BosonicEnv>(spec.env).lambda_k = {{0.2, 0.1}, {-0.1, 0.3}};
            const FockOperator h = build_hamiltonian(spec);
            CHECK((h.matrix - h.matrix.adjoint()).cwiseAbs().maxCoeff() < 1e-12);
        }
    }
    SUBCASE("exchange conserves the total excitation number") {
        FockSpaceSpec spec;
        spec.d_sys = 4;
        spec.nu = 1.0;
        spec.model = ModelKind::Exchange;
        SpinEnv senv;
        senv.n_spins = 3;
        senv.f = 1.0;
        senv.g_i.assign(3, Complex{0.2, 0.05});
        spec.env = senv;
        const FockOperator h = build_hamiltonian(spec);
        CHECK(commutator_with_charge(h, charge_vector(spec)) < 1e-12);
    }
    SUBCASE("hopping conserves n_a minus n_env") {
        FockSpaceSpec spec = equal_mode_spec(ModelKind::Hopping, 1.0, 1.0, 0.4, 2, 4, 4);
        const FockOperator h = build_hamiltonian(spec);
        CHECK(commutator_with_charge(h, charge_vector(spec)) < 1e-12);
    }
    SUBCASE("dimension cap is enforced") {
        FockSpaceSpec spec = equal_mode_spec(ModelKind::Exchange, 1.0, 1.0, 0.1, 3, 10, 8);
        spec.dim_cap = 1000;
        CHECK_THROWS_AS(build_hamiltonian(spec), ResourceError);
    }
}

TEST_CASE("evolve_and_reduce") {
    SUBCASE("t = 0 returns the input moments") {
        FockSpaceSpec spec = equal_mode_spec(ModelKind::Exchange, 1.0, 1.0, 0.3, 2, 10, 6);
        GaussianState in = GaussianState::vacuum();
        in.mean = {0.4, -0.3};
        const OracleMoments om = evolve_and_reduce(spec, in, 0.3, 0.0);
        CHECK(std::abs(Complex{in.mean.real(), in.mean.imag()} - om.mean) < 1e-10);
        CHECK((in.cov - om.cov).cwiseAbs().maxCoeff() < 1e-10);
        CHECK(std::abs(om.rho_a.trace().real() - 1.0) < 1e-10);
        CHECK((om.rho_a - om.rho_a.adjoint()).cwiseAbs().maxCoeff() < 1e-12);
    }
    SUBCASE("collective-mode reduction at N = 3, thermal environment") {
        const TwoModeParams params{1.0, 1.0, 0.3};
        FockSpaceSpec spec = equal_mode_spec(ModelKind::Exchange, 1.0, 1.0, 0.3, 3, 8, 10);
        GaussianState in = GaussianState::vacuum();
        in.mean = {0.5, 0.0};
        const double t_env = 1.0 / std::log(1.0 + 1.0 / 0.2); // occupation 0.2
        const OracleMoments om = evolve_and_reduce(spec, in, t_env, 0.4);
        const GaussianState exact = evolve_exact(
            in, {0.2, OccupationSource::BosonicPlanck}, params, ModelKind::Exchange, 0.4);
        CHECK(std::abs(exact.mean - std::complex<double>(om.mean)) < 1e-6);
        CHECK((exact.cov - om.cov).cwiseAbs().maxCoeff() < 1e-6);
        CHECK_FALSE(om.leakage);
    }
    SUBCASE("detuned exchange fixes the mean-phase convention") {
        // in the rotating frame the mean evolves with mu(t) itself; its
        // conjugate would flip the sign of the imaginary part
        const TwoModeParams params{2.0, 1.0, 0.5};
        FockSpaceSpec spec = equal_mode_spec(ModelKind::Exchange, 2.0, 1.0, 0.5, 1, 18, 18);
        GaussianState in = GaussianState::vacuum();
        in.mean = {0.7, 0.2};
        FockOracle oracle(spec);
        oracle.prepare(in, 0.8);
        const double n_t = thermal_occupation(1.0, 0.8);
        for (double t : {0.4, 1.1}) {
            const OracleMoments om = oracle.at(t);
            const GaussianState exact = evolve_exact(
                in, {n_t, OccupationSource::BosonicPlanck}, params, ModelKind::Exchange, t);
            const CoefficientSet c = coefficients(params, ModelKind::Exchange, t);
            CHECK(std::abs(exact.mean - std::complex<double>(om.mean)) < 1e-8);
            const Complex conjugated = std::conj(c.mu) * in.mean;
            CHECK(std::abs(conjugated - std::complex<double>(om.mean)) > 1e-2);
        }
    }

    SUBCASE("collective-mode reduction at N = 2 for both couplings") {
        for (const ModelKind kind : {ModelKind::Exchange, ModelKind::Hopping}) {
            const TwoModeParams params{1.0, 1.0, 0.4};
            FockSpaceSpec spec = equal_mode_spec(kind, 1.0, 1.0, 0.4, 2, 14, 12);
            GaussianState in = GaussianState::vacuum();
            in.mean = {0.5, 0.0};
            const double t_env = 1.0 / std::log(1.0 + 1.0 / 0.05);
            FockOracle oracle(spec);
            oracle.prepare(in, t_env);
            const double horizon = 2.0 / derived_constants(params, kind).Delta;
            for (double frac : {0.3, 0.65, 1.0}) {
                const OracleMoments om = oracle.at(frac * horizon);
                const GaussianState exact =
                    evolve_exact(in, {0.05, OccupationSource::BosonicPlanck}, params, kind,
                                 frac * horizon);
                CHECK(std::abs(exact.mean - std::complex<double>(om.mean)) < 1e-6);
                CHECK((exact.cov - om.cov).cwiseAbs().maxCoeff() < 1e-6);
                CHECK_FALSE(om.leakage);
            }
        }
    }

    SUBCASE("thermal system input round-trips through the displaced-thermal decomposition") {
        FockSpaceSpec spec = equal_mode_spec(ModelKind::Exchange, 1.0, 1.0, 0.2, 1, 20, 8);
        GaussianState in;
        in.mean = {0.3, 0.2};
        in.cov = Eigen::Matrix2d::Identity() * (0.5 * (0.4 + 0.5)); // occupation 0.4
        const OracleMoments om = evolve_and_reduce(spec, in, 0.0, 0.0);
        CHECK(std::abs(std::complex<double>(om.mean) - in.mean) < 1e-7);
        CHECK((in.cov - om.cov).cwiseAbs().maxCoeff() < 1e-7);
    }
    SUBCASE("spread spectrum degrades the reduction monotonically") {
        const TwoModeParams params{1.0, 1.0, 0.3};
        GaussianState in = GaussianState::vacuum();
        in.mean = {0.5, 0.0};
        double prev = 0.0;
        for (double s : {0.02, 0.2}) {
            FockSpaceSpec spec = equal_mode_spec(ModelKind::Exchange, 1.0, 1.0, 0.3, 3, 8, 6);
            std::get<BosonicEnv>(spec.env).omega_k = {1.0 - s, 1.0, 1.0 + s};
            FockOracle oracle(spec);
            oracle.prepare(in, 0.0);
            double err = 0.0;
            for (double t : {2.0, 4.0, 6.0}) {
                const OracleMoments om = oracle.at(t);
                const GaussianState exact =
                    evolve_exact(in, {0.0, OccupationSource::BosonicPlanck}, params,
                                 ModelKind::Exchange, t);
                err = std::max(err,
                               std::abs(exact.mean - std::complex<double>(om.mean)));
            }
            CHECK(err > prev);
            prev = err;
        }
    }
    SUBCASE("unitarity: reduced trace stays 1 along the evolution") {
        FockSpaceSpec spec = equal_mode_spec(ModelKind::Exchange, 1.0, 1.0, 0.4, 1, 10, 10);
        GaussianState in = GaussianState::vacuum();
        in.mean = {0.6, 0.0};
        FockOracle oracle(spec);
        oracle.prepare(in, 0.5);
        for (double t : {0.5, 2.0, 5.0}) {
            const OracleMoments om = oracle.at(t);
            CHECK(std::abs(om.rho_a.trace().real() - 1.0) < 1e-10);
            CHECK(std::abs(om.rho_a.trace().imag()) < 1e-12);
        }
    }
    SUBCASE("hyperbolic hopping growth matches the cosh/sinh continuation") {
        const TwoModeParams params{1.0, 1.0, 1.4}; // delta_2^2 < Lambda^2
        FockSpaceSpec spec = equal_mode_spec(ModelKind::Hopping, 1.0, 1.0, 1.4, 1, 40, 40);
        FockOracle oracle(spec);
        oracle.prepare(GaussianState::vacuum(), 0.0);
        const OracleMoments om = oracle.at(0.5);
        const GaussianState exact =
            evolve_exact(GaussianState::vacuum(), {0.0, OccupationSource::BosonicPlanck},
                         params, ModelKind::Hopping, 0.5);
        CHECK(exact.cov(0, 0) > 0.3); // grows beyond vacuum
        CHECK((exact.cov - om.cov).cwiseAbs().maxCoeff() < 1e-8);
        CHECK_FALSE(om.leakage);
    }
    SUBCASE("adaptive truncation doubles its way out of leakage") {
        FockSpaceSpec spec = equal_mode_spec(ModelKind::Exchange, 1.0, 1.0, 0.5, 1, 4, 4);
        GaussianState in = GaussianState::vacuum();
        in.mean = {1.2, 0.0};
        const OracleMoments tight = evolve_and_reduce(spec, in, 0.0, 1.5);
        CHECK(tight.leakage);
        const OracleMoments grown = evolve_and_reduce_adaptive(spec, in, 0.0, 1.5);
        CHECK_FALSE(grown.leakage);
        const GaussianState exact = evolve_exact(
            in, {0.0, OccupationSource::BosonicPlanck}, {1.0, 1.0, 0.5}, ModelKind::Exchange,
            1.5);
        CHECK(std::abs(exact.mean - std::complex<double>(grown.mean)) < 1e-6);
        // the cap can stop the doubling; the flag must survive
        FockSpaceSpec capped = spec;
        capped.dim_cap = 30;
        const OracleMoments stuck = evolve_and_reduce_adaptive(capped, in, 0.0, 1.5);
        CHECK(stuck.leakage);
    }

    SUBCASE("leakage is flagged when the truncation is too tight") {
        FockSpaceSpec spec = equal_mode_spec(ModelKind::Exchange, 1.0, 1.0, 0.5, 1, 6, 6);
        GaussianState in = GaussianState::vacuum();
        in.mean = {2.0, 0.0};
        const OracleMoments om = evolve_and_reduce(spec, in, 0.0, 1.5);
        CHECK(om.leakage);
        CHECK(om.max_edge_population > 1e-6);
    }
    SUBCASE("anisotropic input is rejected") {
        FockSpaceSpec spec = equal_mode_spec(ModelKind::Exchange, 1.0, 1.0, 0.3, 1, 6, 6);
        GaussianState squeezed;
        squeezed.cov = Eigen::Vector2d(0.3, 0.35).asDiagonal();
        FockOracle oracle(spec);
        CHECK_THROWS_AS(oracle.prepare(squeezed, 0.0), std::invalid_argument);
    }
}

TEST_CASE("char_fn_oracle") {
    SUBCASE("normalization") {
        const Matrix rho = fock::thermal_density(20, 0.5);
        CHECK(std::abs(char_fn_oracle(rho, {0.0, 0.0}) - Complex{1.0, 0.0}) < 1e-10);
    }
    SUBCASE("vacuum closed form") {
        Matrix rho = Matrix::Zero(20, 20);
        rho(0, 0) = 1.0;
        const Complex gamma{0.4, -0.2};
        CHECK(std::abs(char_fn_oracle(rho, gamma) - std::exp(-0.5 * std::norm(gamma))) < 1e-10);
    }
    SUBCASE("thermal closed form at n = 1") {
        const Matrix rho = fock::thermal_density(40, 1.0);
        const Complex chi = char_fn_oracle(rho, {0.7, 0.0});
        CHECK(std::abs(chi - std::exp(-1.5 * 0.49)) < 1e-6);
    }
    SUBCASE("requires unit trace") {
        const Matrix rho = 0.5 * fock::thermal_density(10, 0.2);
        CHECK_THROWS_AS(char_fn_oracle(rho, {0.1, 0.0}), std::invalid_argument);
    }
}

TEST_SUITE_END();
