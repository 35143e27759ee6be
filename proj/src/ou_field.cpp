#include "oqs/ou_field.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>

#include "oqs/rng.hpp"

namespace oqs {

namespace {

// 16-point Gauss-Legendre nodes/weights on (-1, 1)
constexpr int kGlOrder = 16;
constexpr double kGlNode[kGlOrder] = {
    -0.9894009349916499, -0.9445750230732326, -0.8656312023878318, -0.7554044083550030,
    -0.6178762444026438, -0.4580167776572274, -0.2816035507792589, -0.0950125098376374,
    0.0950125098376374,  0.2816035507792589,  0.4580167776572274,  0.6178762444026438,
    0.7554044083550030,  0.8656312023878318,  0.9445750230732326,  0.9894009349916499};
constexpr double kGlWeight[kGlOrder] = {
    0.0271524594117541, 0.0622535239386479, 0.0951585116824928, 0.1246289712555339,
    0.1495959888165767, 0.1691565193950025, 0.1826034150449236, 0.1894506104550685,
    0.1894506104550685, 0.1826034150449236, 0.1691565193950025, 0.1495959888165767,
    0.1246289712555339, 0.0951585116824928, 0.0622535239386479, 0.0271524594117541};

// complex-field kernel <zeta(t1) zeta*(t2)>
double kernel(const OUParams& p, double lag) {
    return 0.5 * (p.G / p.tau) * std::exp(-std::abs(lag) / p.tau);
}

void validate(const OUParams& p) {
    if (p.tau <= 0.0) {
        throw std::domain_error("OUParams: tau must be positive");
    }
    if (p.G < 0.0) {
        throw std::domain_error("OUParams: G must be >= 0");
    }
}

} // namespace

OUParams make_ou_params(double G, double tau, double omega_zeta, double nu) {
    OUParams p;
    p.G = G;
    p.tau = tau;
    p.omega_zeta = omega_zeta;
    p.delta_zeta = omega_zeta - nu;
    validate(p);
    return p;
}

FieldTrajectory ou_sample(const OUParams& params, const TimeGrid& grid, std::uint64_t seed) {
    validate(params);
    if (grid.dt <= 0.0 && grid.n_steps > 0) {
        throw std::domain_error("ou_sample: dt must be positive");
    }
    const int n_nodes = grid.n_steps + 1;
    const double var_stat = params.G / (4.0 * params.tau); // per component, K(0)/2
    const double decay = std::exp(-grid.dt / params.tau);
    const double step_sd = std::sqrt(var_stat * (1.0 - decay * decay));
    const double stat_sd = std::sqrt(var_stat);

    FieldTrajectory traj;
    traj.times.resize(n_nodes);
    traj.zx.resize(n_nodes);
    traj.zy.resize(n_nodes);

    CounterRng rng(seed, 0);
    traj.times[0] = 0.0;
    traj.zx[0] = stat_sd * rng.normal();
    traj.zy[0] = stat_sd * rng.normal();
    for (int k = 1; k < n_nodes; ++k) {
        traj.times[k] = k * grid.dt;
        traj.zx[k] = traj.zx[k - 1] * decay + step_sd * rng.normal();
        traj.zy[k] = traj.zy[k - 1] * decay + step_sd * rng.normal();
    }
    return traj;
}

double sigma_analytic(const OUParams& params, double t) {
    validate(params);
    if (t < 0.0) {
        throw std::domain_error("sigma_analytic: t must be >= 0");
    }
    if (t == 0.0) {
        return 0.0;
    }
    const double delta = params.delta_zeta;
    if (delta == 0.0) {
        return params.G * (t - params.tau * (1.0 - std::exp(-t / params.tau)));
    }
    // sigma(t) = 2 int_0^t (t - u) cos(delta u) K(u) du, composite Gauss-Legendre
    const double cycles = std::abs(delta) * t / (2.0 * M_PI) + t / params.tau;
    const int n_panels = std::max(8, static_cast<int>(std::ceil(4.0 * cycles)));
    const double h = t / n_panels;
    double total = 0.0;
    for (int p = 0; p < n_panels; ++p) {
        const double a = p * h;
        double panel = 0.0;
        for (int i = 0; i < kGlOrder; ++i) {
            const double u = a + 0.5 * h * (1.0 + kGlNode[i]);
            panel += kGlWeight[i] * (t - u) * std::cos(delta * u) * kernel(params, u);
        }
        total += 0.5 * h * panel;
    }
    return 2.0 * total;
}

std::vector<DisplacementEnsemble> stoc_displacement_ensemble(
    const OUParams& params, const std::vector<double>& out_times,
    std::int64_t n_traj, std::uint64_t seed, int min_steps) {
    validate(params);
    if (n_traj < 1) {
        throw std::invalid_argument("stoc_displacement_ensemble: n_traj must be >= 1");
    }
    if (out_times.empty()) {
        return {};
    }
    const double t_max = *std::max_element(out_times.begin(), out_times.end());
    const double delta = params.delta_zeta;

    const double dt_target =
        std::min(params.tau / 50.0, 0.01 / std::max(std::abs(delta), 1.0));
    const int n_steps =
        (t_max > 0.0) ? std::max(min_steps, static_cast<int>(std::ceil(t_max / dt_target))) : 0;
    const double dt = (n_steps > 0) ? t_max / n_steps : 0.0;

    std::vector<int> out_nodes(out_times.size());
    for (std::size_t i = 0; i < out_times.size(); ++i) {
        out_nodes[i] = (dt > 0.0)
                           ? std::clamp(static_cast<int>(std::lround(out_times[i] / dt)), 0, n_steps)
                           : 0;
    }

    std::vector<std::vector<Complex>> alphas(out_times.size());
    for (auto& v : alphas) {
        v.reserve(static_cast<std::size_t>(n_traj));
    }

    const TimeGrid grid{dt, n_steps};
    std::vector<Complex> alpha_at_node(static_cast<std::size_t>(n_steps) + 1);
    for (std::int64_t j = 0; j < n_traj; ++j) {
        const FieldTrajectory traj = ou_sample(params, grid, CounterRng::derive(seed, j));
        Complex alpha{0.0, 0.0};
        Complex f_prev =
            Complex{traj.zx[0], traj.zy[0]}; // zeta(0) e^{-i delta 0}
        alpha_at_node[0] = alpha;
        for (int k = 1; k <= n_steps; ++k) {
            const double s = traj.times[k];
            const Complex f =
                Complex{traj.zx[k], traj.zy[k]} * std::exp(Complex{0.0, -delta * s});
            alpha += Complex{0.0, -0.5 * dt} * (f_prev + f);
            f_prev = f;
            alpha_at_node[k] = alpha;
        }
        for (std::size_t i = 0; i < out_nodes.size(); ++i) {
            alphas[i].push_back(alpha_at_node[out_nodes[i]]);
        }
    }

    std::vector<DisplacementEnsemble> out(out_times.size());
    const double inv_n = 1.0 / static_cast<double>(n_traj);
    for (std::size_t i = 0; i < out_times.size(); ++i) {
        DisplacementEnsemble& e = out[i];
        e.t = out_nodes[i] * dt;
        e.n_traj = n_traj;
        Complex sum{0.0, 0.0};
        for (const Complex& a : alphas[i]) {
            sum += a;
        }
        e.mean_alpha = sum * inv_n;
        double v_rr = 0.0, v_ii = 0.0, v_ri = 0.0;
        for (const Complex& a : alphas[i]) {
            const double dr = a.real() - e.mean_alpha.real();
            const double di = a.imag() - e.mean_alpha.imag();
            v_rr += dr * dr;
            v_ii += di * di;
            v_ri += dr * di;
        }
        e.var_re = v_rr * inv_n;
        e.var_im = v_ii * inv_n;
        e.cov_re_im = v_ri * inv_n;
        const double var_mean = 0.5 * (e.var_re + e.var_im);
        e.se_var = (n_traj > 1)
                       ? var_mean * std::sqrt(2.0 / static_cast<double>(n_traj - 1))
                       : 0.0;
    }
    return out;
}

GaussianState evolve_stoc_mc(const GaussianState& rho_a, const OUParams& params, double nu,
                             double t, std::int64_t n_traj, std::uint64_t seed) {
    if (std::abs((params.omega_zeta - nu) - params.delta_zeta) > 1e-12) {
        throw std::invalid_argument("evolve_stoc_mc: delta_zeta inconsistent with nu");
    }
    const auto stats = stoc_displacement_ensemble(params, {t}, n_traj, seed);
    const DisplacementEnsemble& e = stats.front();

    GaussianState out = rho_a;
    out.mean += e.mean_alpha;
    Eigen::Matrix2d scatter;
    scatter << e.var_re, e.cov_re_im, e.cov_re_im, e.var_im;
    out.cov += scatter;
    return out;
}

} // namespace oqs
