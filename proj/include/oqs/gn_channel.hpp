// gn_channel.hpp — Gaussian-noise channel: characteristic-function form and Kraus sampling

#pragma once

#include <cstdint>

#include "oqs/gaussian_state.hpp"

namespace oqs {

// Random displacement with Gaussian-modulated amplitude. The weight is
// exp{-|alpha|^2/sigma2}/(pi sigma2), i.e. <|alpha|^2> = sigma2 and each
// quadrature of alpha carries variance sigma2/2 — stated explicitly because
// the per-quadrature vs total convention is a classic off-by-two hazard.
struct GNChannel {
    double sigma2 = 0.0; // >= 0
};

// Moment-level image of multiplying chi by exp{-|gamma|^2 sigma2}:
// mean unchanged, cov += sigma2/2 * I.
GaussianState apply(const GNChannel& channel, const GaussianState& state);

// Monte-Carlo realization of the Kraus decomposition: draws n_samples
// displacements (stream = sample index, so the result is independent of any
// partitioning of the index range) and returns the empirical mixture moments.
// sigma2 = 0 returns the input unchanged without sampling.
GaussianState apply_kraus_mc(const GNChannel& channel, const GaussianState& state,
                             std::int64_t n_samples, std::uint64_t seed);

} // namespace oqs
