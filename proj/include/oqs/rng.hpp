// rng.hpp — Counter-based pseudorandom streams for reproducible Monte Carlo

#pragma once

#include <cmath>
#include <cstdint>

namespace oqs {

// Stateless keyed generator: every value is a pure function of
// (seed, stream, counter). Monte-Carlo loops give each sample or
// trajectory its own stream index, so results do not depend on how the
// index range is partitioned across workers.
class CounterRng {
public:
    CounterRng(std::uint64_t seed, std::uint64_t stream)
        : key_(mix(seed ^ mix(stream + 0x9E3779B97F4A7C15ULL))) {}

    // uniform in (0, 1), never returns the endpoints
    double uniform() {
        const std::uint64_t bits = next();
        return (static_cast<double>(bits >> 11) + 0.5) * 0x1.0p-53;
    }

    // standard normal, Box-Muller; draws two uniforms per pair
    double normal() {
        if (have_spare_) {
            have_spare_ = false;
            return spare_;
        }
        const double u1 = uniform();
        const double u2 = uniform();
        const double r = std::sqrt(-2.0 * std::log(u1));
        const double a = 6.283185307179586476925286766559 * u2;
        spare_ = r * std::sin(a);
        have_spare_ = true;
        return r * std::cos(a);
    }

    static std::uint64_t mix(std::uint64_t z) {
        z += 0x9E3779B97F4A7C15ULL;
        z ^= z >> 30;
        z *= 0xBF58476D1CE4E5B9ULL;
        z ^= z >> 27;
        z *= 0x94D049BB133111EBULL;
        z ^= z >> 31;
        return z;
    }

    // sub-seed for a nested generator (e.g. one OU path per trajectory)
    static std::uint64_t derive(std::uint64_t seed, std::uint64_t index) {
        return mix(seed ^ mix(index + 1));
    }

private:
    std::uint64_t next() { return mix(key_ + 0x9E3779B97F4A7C15ULL * ++counter_); }

    std::uint64_t key_;
    std::uint64_t counter_ = 0;
    double spare_ = 0.0;
    bool have_spare_ = false;
};

} // namespace oqs
