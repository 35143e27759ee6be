#include "oqs/gn_channel.hpp"

#include <cmath>
#include <stdexcept>

#include "oqs/rng.hpp"

namespace oqs {

GaussianState apply(const GNChannel& channel, const GaussianState& state) {
    GaussianState out = state;
    out.cov += 0.5 * channel.sigma2 * Eigen::Matrix2d::Identity();
    return out;
}

GaussianState apply_kraus_mc(const GNChannel& channel, const GaussianState& state,
                             std::int64_t n_samples, std::uint64_t seed) {
    if (n_samples < 1) {
        throw std::invalid_argument("apply_kraus_mc: n_samples must be >= 1");
    }
    if (channel.sigma2 == 0.0) {
        return state;
    }
    const double quad_sd = std::sqrt(0.5 * channel.sigma2);

    // first pass: mean of the sampled displacements, strict index order
    double sum_re = 0.0, sum_im = 0.0;
    for (std::int64_t i = 0; i < n_samples; ++i) {
        CounterRng rng(seed, static_cast<std::uint64_t>(i));
        sum_re += quad_sd * rng.normal();
        sum_im += quad_sd * rng.normal();
    }
    const double mean_re = sum_re / static_cast<double>(n_samples);
    const double mean_im = sum_im / static_cast<double>(n_samples);

    // second pass: scatter of the displacements (population normalization:
    // this is literally the covariance of the equal-weight mixture)
    double s_rr = 0.0, s_ii = 0.0, s_ri = 0.0;
    for (std::int64_t i = 0; i < n_samples; ++i) {
        CounterRng rng(seed, static_cast<std::uint64_t>(i));
        const double re = quad_sd * rng.normal() - mean_re;
        const double im = quad_sd * rng.normal() - mean_im;
        s_rr += re * re;
        s_ii += im * im;
        s_ri += re * im;
    }
    const double inv_n = 1.0 / static_cast<double>(n_samples);

    GaussianState out = state;
    out.mean += Complex{mean_re, mean_im};
    Eigen::Matrix2d scatter;
    scatter << s_rr * inv_n, s_ri * inv_n, s_ri * inv_n, s_ii * inv_n;
    out.cov += scatter;
    return out;
}

} // namespace oqs
