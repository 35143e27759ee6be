#include "oqs/fock_oracle.hpp"

#include <cmath>
#include <cstdlib>
#include <string>

namespace oqs {

using fock::Complex;
using fock::Matrix;
using fock::Vector;

long long default_dim_cap() {
    if (const char* env = std::getenv("OQS_ORACLE_DIM_CAP")) {
        const long long cap = std::atoll(env);
        if (cap > 0) {
            return cap;
        }
    }
    return 20000;
}

namespace {

struct Layout {
    std::vector<int> dims;          // [d_sys, env factors...]
    std::vector<long long> strides; // mixed-radix strides
    long long total = 1;

    explicit Layout(const FockSpaceSpec& spec) {
        dims.push_back(spec.d_sys);
        if (const auto* benv = std::get_if<BosonicEnv>(&spec.env)) {
            for (std::size_t k = 0; k < benv->omega_k.size(); ++k) {
                dims.push_back(benv->d_env);
            }
        } else {
            const auto& senv = std::get<SpinEnv>(spec.env);
            for (int i = 0; i < senv.n_spins; ++i) {
                dims.push_back(2);
            }
        }
        strides.assign(dims.size(), 1);
        for (int m = static_cast<int>(dims.size()) - 2; m >= 0; --m) {
            strides[m] = strides[m + 1] * dims[m + 1];
        }
        total = strides[0] * dims[0];
    }
};

void check_spec(const FockSpaceSpec& spec, const Layout& layout) {
    if (spec.d_sys < 2) {
        throw std::domain_error("FockSpaceSpec: d_sys must be >= 2");
    }
    if (const auto* benv = std::get_if<BosonicEnv>(&spec.env)) {
        if (benv->omega_k.empty() || benv->omega_k.size() != benv->lambda_k.size()) {
            throw std::domain_error("FockSpaceSpec: omega_k/lambda_k size mismatch");
        }
        if (benv->d_env < 2) {
            throw std::domain_error("FockSpaceSpec: d_env must be >= 2");
        }
    } else {
        const auto& senv = std::get<SpinEnv>(spec.env);
        if (senv.n_spins < 1 || static_cast<int>(senv.g_i.size()) != senv.n_spins) {
            throw std::domain_error("FockSpaceSpec: g_i size must equal n_spins");
        }
        if (senv.f <= 0.0) {
            throw std::domain_error("FockSpaceSpec: f must be positive");
        }
    }
    const long long cap = spec.dim_cap > 0 ? spec.dim_cap : default_dim_cap();
    if (layout.total > cap) {
        throw ResourceError("fock_oracle: total dimension " + std::to_string(layout.total) +
                            " exceeds cap " + std::to_string(cap));
    }
}

// Nonzero Hamiltonian elements reachable from basis state i: the diagonal and
// the raising-on-a couplings (the Hermitian partner is the caller's business).
//   Exchange couplings: lambda_k a† b_k  /  g_i a† sigma_i^-
//   Hopping couplings:  lambda_k* a† b_k† /  g_i* a† sigma_i^+
template <typename DiagFn, typename PairFn>
void visit_state_elements(const FockSpaceSpec& spec, const Layout& layout,
                          const fock::ProductBasis& basis, long long i, DiagFn&& on_diag,
                          PairFn&& on_pair) {
    const int n_a = basis.occupation(i, 0);
    if (const auto* benv = std::get_if<BosonicEnv>(&spec.env)) {
        const int n_modes = static_cast<int>(benv->omega_k.size());
        double diag = spec.nu * n_a;
        for (int k = 0; k < n_modes; ++k) {
            diag += benv->omega_k[k] * basis.occupation(i, k + 1);
        }
        on_diag(i, diag);
        if (n_a + 1 >= spec.d_sys) {
            return;
        }
        for (int k = 0; k < n_modes; ++k) {
            const int n_k = basis.occupation(i, k + 1);
            if (spec.model == ModelKind::Exchange) {
                if (n_k >= 1) {
                    on_pair(i, i + layout.strides[0] - layout.strides[k + 1],
                            benv->lambda_k[k] * std::sqrt(static_cast<double>(n_a + 1) * n_k));
                }
            } else {
                if (n_k + 1 < benv->d_env) {
                    on_pair(i, i + layout.strides[0] + layout.strides[k + 1],
                            std::conj(benv->lambda_k[k]) *
                                std::sqrt(static_cast<double>(n_a + 1) * (n_k + 1)));
                }
            }
        }
    } else {
        const auto& senv = std::get<SpinEnv>(spec.env);
        int n_up = 0;
        for (int sp = 0; sp < senv.n_spins; ++sp) {
            n_up += basis.occupation(i, sp + 1);
        }
        on_diag(i, spec.nu * n_a + senv.f * (n_up - 0.5 * senv.n_spins));
        if (n_a + 1 >= spec.d_sys) {
            return;
        }
        for (int sp = 0; sp < senv.n_spins; ++sp) {
            const int up = basis.occupation(i, sp + 1);
            if (spec.model == ModelKind::Exchange) {
                if (up == 1) {
                    on_pair(i, i + layout.strides[0] - layout.strides[sp + 1],
                            senv.g_i[sp] * std::sqrt(static_cast<double>(n_a + 1)));
                }
            } else {
                if (up == 0) {
                    on_pair(i, i + layout.strides[0] + layout.strides[sp + 1],
                            std::conj(senv.g_i[sp]) * std::sqrt(static_cast<double>(n_a + 1)));
                }
            }
        }
    }
}

} // namespace

FockOperator build_hamiltonian(const FockSpaceSpec& spec) {
    const Layout layout(spec);
    check_spec(spec, layout);
    const fock::ProductBasis basis{layout.dims};
    FockOperator op;
    op.dim = layout.total;
    op.matrix = Matrix::Zero(layout.total, layout.total);
    for (long long i = 0; i < layout.total; ++i) {
        visit_state_elements(
            spec, layout, basis, i, [&](long long row, double d) { op.matrix(row, row) = d; },
            [&](long long row, long long j, Complex amp) {
                op.matrix(j, row) += amp;
                op.matrix(row, j) += std::conj(amp);
            });
    }
    return op;
}

std::vector<long long> charge_vector(const FockSpaceSpec& spec) {
    const Layout layout(spec);
    check_spec(spec, layout);
    const fock::ProductBasis basis{layout.dims};
    const int s = sign_factor(spec.model); // Exchange: n_a + n_env, Hopping: n_a - n_env
    std::vector<long long> charges(layout.total);
    for (long long i = 0; i < layout.total; ++i) {
        long long n_env = 0;
        for (std::size_t m = 1; m < layout.dims.size(); ++m) {
            n_env += basis.occupation(i, static_cast<int>(m));
        }
        charges[i] = basis.occupation(i, 0) - s * n_env;
    }
    return charges;
}

struct FockOracle::Impl {
    FockSpaceSpec spec;
    Layout layout;
    fock::ProductBasis basis;
    fock::SectorDecomposition dec;
    std::vector<int> pos_in_sector;

    struct SectorEig {
        Eigen::VectorXd evals;
        Matrix evecs;
        bool ready = false;
    };
    std::vector<SectorEig> eigs;

    // one member = (weight, system column, environment configuration);
    // its support is one basis state per system level, each in its own sector
    struct Component {
        int sector = 0;
        int local = 0;
        Complex amp;
    };
    struct Member {
        double weight = 0.0;
        std::vector<Component> components;
    };
    std::vector<Member> members;
    bool prepared = false;

    explicit Impl(const FockSpaceSpec& s) : spec(s), layout(s), basis{layout.dims} {
        check_spec(spec, layout);
        dec = fock::split_by_charge(charge_vector(spec));
        pos_in_sector.assign(layout.total, -1);
        for (const auto& sector : dec.sectors) {
            for (std::size_t l = 0; l < sector.size(); ++l) {
                pos_in_sector[sector[l]] = static_cast<int>(l);
            }
        }
        eigs.resize(dec.sectors.size());
    }

    double omega_ref() const {
        if (const auto* benv = std::get_if<BosonicEnv>(&spec.env)) {
            double wsum = 0.0, nsum = 0.0;
            for (std::size_t k = 0; k < benv->omega_k.size(); ++k) {
                const double w = std::norm(benv->lambda_k[k]);
                wsum += w;
                nsum += w * benv->omega_k[k];
            }
            if (wsum == 0.0) {
                for (double w : benv->omega_k) {
                    nsum += w;
                }
                return nsum / static_cast<double>(benv->omega_k.size());
            }
            return nsum / wsum;
        }
        return std::get<SpinEnv>(spec.env).f;
    }

    double omega_rot() const {
        return 0.5 * (spec.nu - sign_factor(spec.model) * omega_ref());
    }

    void ensure_eig(int s) {
        SectorEig& e = eigs[s];
        if (e.ready) {
            return;
        }
        const auto& idx = dec.sectors[s];
        const int n = static_cast<int>(idx.size());
        Matrix block = Matrix::Zero(n, n);
        for (int li = 0; li < n; ++li) {
            visit_state_elements(
                spec, layout, basis, idx[li],
                [&](long long, double d) { block(li, li) = d; },
                [&](long long, long long j, Complex amp) {
                    const int lj = pos_in_sector[j];
                    block(lj, li) += amp;
                    block(li, lj) += std::conj(amp);
                });
        }
        Eigen::SelfAdjointEigenSolver<Matrix> es(block);
        e.evals = es.eigenvalues();
        e.evecs = es.eigenvectors();
        e.ready = true;
    }

};

FockOracle::FockOracle(const FockSpaceSpec& spec) : impl_(std::make_unique<Impl>(spec)) {}
FockOracle::~FockOracle() = default;
FockOracle::FockOracle(FockOracle&&) noexcept = default;
FockOracle& FockOracle::operator=(FockOracle&&) noexcept = default;

double FockOracle::omega_ref() const { return impl_->omega_ref(); }
double FockOracle::omega_rot() const { return impl_->omega_rot(); }
long long FockOracle::dimension() const { return impl_->layout.total; }

void FockOracle::prepare(const GaussianState& rho_a0, double t_env, double member_weight_cutoff) {
    Impl& im = *impl_;
    im.members.clear();

    // system part: coherent or displaced-thermal only
    const Eigen::Matrix2d& cov = rho_a0.cov;
    if (std::abs(cov(0, 1)) > 1e-10 || std::abs(cov(0, 0) - cov(1, 1)) > 1e-10) {
        throw std::invalid_argument(
            "FockOracle::prepare: input must have isotropic covariance (coherent/thermal)");
    }
    double n_eff = cov(0, 0) + cov(1, 1) - 0.5;
    if (n_eff < -1e-9) {
        throw std::invalid_argument("FockOracle::prepare: covariance below vacuum");
    }
    n_eff = std::max(n_eff, 0.0);

    std::vector<std::pair<double, Vector>> sys_members;
    if (n_eff < 1e-14) {
        sys_members.emplace_back(1.0, fock::coherent_state(im.spec.d_sys, rho_a0.mean));
    } else {
        const Matrix disp = fock::displacement(im.spec.d_sys, rho_a0.mean);
        const Matrix th = fock::thermal_density(im.spec.d_sys, n_eff);
        for (int n = 0; n < im.spec.d_sys; ++n) {
            sys_members.emplace_back(th(n, n).real(), disp.col(n));
        }
    }

    // environment part: product Gibbs weights per factor
    std::vector<std::vector<double>> env_weights;
    if (const auto* benv = std::get_if<BosonicEnv>(&im.spec.env)) {
        for (double omega : benv->omega_k) {
            const double nbar = (t_env > 0.0) ? thermal_occupation(omega, t_env) : 0.0;
            const Matrix th = fock::thermal_density(benv->d_env, nbar);
            std::vector<double> w(benv->d_env);
            for (int n = 0; n < benv->d_env; ++n) {
                w[n] = th(n, n).real();
            }
            env_weights.push_back(std::move(w));
        }
    } else {
        const auto& senv = std::get<SpinEnv>(im.spec.env);
        const double r = (t_env > 0.0) ? std::exp(-senv.f / t_env) : 0.0;
        for (int i = 0; i < senv.n_spins; ++i) {
            env_weights.push_back({1.0 / (1.0 + r), r / (1.0 + r)}); // (down, up)
        }
    }
    const int n_factors = static_cast<int>(env_weights.size());
    std::vector<double> suffix_max(n_factors + 1, 1.0);
    for (int m = n_factors - 1; m >= 0; --m) {
        double peak = 0.0;
        for (double w : env_weights[m]) {
            peak = std::max(peak, w);
        }
        suffix_max[m] = suffix_max[m + 1] * peak;
    }

    // enumerate environment configurations above the weight cutoff
    std::vector<std::pair<double, long long>> env_configs; // (weight, env index offset)
    const auto recurse = [&](auto&& self, int depth, double weight, long long offset) -> void {
        if (weight * suffix_max[depth] < member_weight_cutoff) {
            return;
        }
        if (depth == n_factors) {
            env_configs.emplace_back(weight, offset);
            return;
        }
        const auto& w = env_weights[depth];
        for (int n = 0; n < static_cast<int>(w.size()); ++n) {
            self(self, depth + 1, weight * w[n], offset + n * im.layout.strides[depth + 1]);
        }
    };
    recurse(recurse, 0, 1.0, 0);

    double total_weight = 0.0;
    for (const auto& [sw, sys] : sys_members) {
        for (const auto& [ew, offset] : env_configs) {
            const double w = sw * ew;
            if (w < member_weight_cutoff) {
                continue;
            }
            Impl::Member member;
            member.weight = w;
            member.components.reserve(im.spec.d_sys);
            for (int n_a = 0; n_a < im.spec.d_sys; ++n_a) {
                if (std::abs(sys(n_a)) == 0.0) {
                    continue;
                }
                const long long g = n_a * im.layout.strides[0] + offset;
                Impl::Component comp;
                comp.sector = im.dec.sector_of[g];
                comp.local = im.pos_in_sector[g];
                comp.amp = sys(n_a);
                member.components.push_back(comp);
            }
            total_weight += w;
            im.members.push_back(std::move(member));
        }
    }
    if (im.members.empty() || total_weight <= 0.0) {
        throw std::invalid_argument("FockOracle::prepare: weight cutoff removed every member");
    }
    for (auto& m : im.members) {
        m.weight /= total_weight;
    }

    for (const auto& m : im.members) {
        for (const auto& c : m.components) {
            im.ensure_eig(c.sector);
        }
    }
    im.prepared = true;
}

OracleMoments FockOracle::at(double t) const {
    const Impl& im = *impl_;
    if (!im.prepared) {
        throw std::logic_error("FockOracle::at: call prepare() first");
    }
    const int d_sys = im.spec.d_sys;
    Matrix rho = Matrix::Zero(d_sys, d_sys);
    const int n_factors = static_cast<int>(im.layout.dims.size());
    std::vector<double> edge_pop(n_factors, 0.0);

    Vector psi(im.layout.total);
    for (const auto& member : im.members) {
        psi.setZero();
        for (const auto& comp : member.components) {
            const auto& eig = im.eigs[comp.sector];
            const auto& idx = im.dec.sectors[comp.sector];
            const int n = static_cast<int>(idx.size());
            Vector coeff(n);
            for (int j = 0; j < n; ++j) {
                coeff(j) = comp.amp * std::conj(eig.evecs(comp.local, j)) *
                           std::exp(Complex{0.0, -eig.evals(j) * t});
            }
            const Vector evolved = eig.evecs * coeff;
            for (int l = 0; l < n; ++l) {
                psi(idx[l]) += evolved(l);
            }
        }
        rho += member.weight * fock::reduce_to_first(psi, im.layout.dims);
        for (int m = 0; m < n_factors; ++m) {
            const auto pop = fock::mode_populations(psi, im.layout.dims, m);
            const int d = im.layout.dims[m];
            const double top2 = pop[d - 1] + pop[d - 2];
            edge_pop[m] += member.weight * top2;
        }
    }

    // remove the rotating-frame phase e^{-i omega_rot t}
    const double theta = im.omega_rot() * t;
    Vector phase(d_sys);
    for (int n = 0; n < d_sys; ++n) {
        phase(n) = std::exp(Complex{0.0, theta * n});
    }
    rho = phase.asDiagonal() * rho * phase.conjugate().asDiagonal();

    OracleMoments out;
    out.t = t;
    out.rho_a = rho;
    out.mean = mean_of(rho);
    out.cov = cov_of(rho);
    double max_edge = 0.0;
    for (double e : edge_pop) {
        max_edge = std::max(max_edge, e);
    }
    out.max_edge_population = max_edge;
    out.leakage = max_edge > 1e-6;
    return out;
}

OracleMoments evolve_and_reduce(const FockSpaceSpec& spec, const GaussianState& rho_a0,
                                double t_env, double t) {
    FockOracle oracle(spec);
    oracle.prepare(rho_a0, t_env);
    return oracle.at(t);
}

OracleMoments evolve_and_reduce_adaptive(FockSpaceSpec spec, const GaussianState& rho_a0,
                                         double t_env, double t) {
    while (true) {
        const OracleMoments result = evolve_and_reduce(spec, rho_a0, t_env, t);
        if (!result.leakage) {
            return result;
        }
        FockSpaceSpec grown = spec;
        grown.d_sys *= 2;
        if (auto* benv = std::get_if<BosonicEnv>(&grown.env)) {
            benv->d_env *= 2;
        }
        try {
            (void)charge_vector(grown); // runs the dimension-cap check
        } catch (const ResourceError&) {
            return result; // cap reached: hand back the flagged result
        }
        spec = grown;
    }
}

Complex char_fn_oracle(const Matrix& rho_a, Complex gamma) {
    const double trace = rho_a.trace().real();
    if (std::abs(trace - 1.0) > 1e-8) {
        throw std::invalid_argument("char_fn_oracle: trace must be 1 within 1e-8");
    }
    const int d = static_cast<int>(rho_a.rows());
    return (rho_a * fock::displacement(d, gamma)).trace();
}

Complex mean_of(const Matrix& rho_a) {
    const int d = static_cast<int>(rho_a.rows());
    return (rho_a * fock::destroy(d)).trace();
}

Eigen::Matrix2d cov_of(const Matrix& rho_a) {
    const int d = static_cast<int>(rho_a.rows());
    const Matrix a = fock::destroy(d);
    const Complex m1 = (rho_a * a).trace();
    const Complex m2 = (rho_a * a * a).trace();
    const Complex nbar = (rho_a * (a.adjoint() * a)).trace();
    const Complex c2 = m2 - m1 * m1;
    const double cn = nbar.real() - std::norm(m1);
    Eigen::Matrix2d cov;
    cov(0, 0) = (2.0 * c2.real() + 2.0 * cn + 1.0) / 4.0;
    cov(1, 1) = (-2.0 * c2.real() + 2.0 * cn + 1.0) / 4.0;
    cov(0, 1) = cov(1, 0) = 0.5 * c2.imag();
    return cov;
}

} // namespace oqs
