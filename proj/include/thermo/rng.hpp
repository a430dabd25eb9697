// rng.hpp — seedable, splittable random streams with portable distributions
//
// All stochastic code in the library draws from this generator so that
// (seed, stream index) fully determines every sample independent of the
// platform's <random> distribution implementations and of scheduling.
#pragma once

#include <cmath>
#include <cstdint>
#include <span>

namespace thermo {

// SplitMix64, used to expand seeds into generator state.
struct SplitMix64 {
    std::uint64_t state;

    std::uint64_t next() {
        std::uint64_t z = (state += 0x9E3779B97F4A7C15ull);
        z = (z ^ (z >> 30)) * 0xBF58476D1CE4E5B9ull;
        z = (z ^ (z >> 27)) * 0x94D049BB133111EBull;
        return z ^ (z >> 31);
    }
};

// xoshiro256** with Box-Muller normals and inverse-CDF exponentials.
class Rng {
public:
    explicit Rng(std::uint64_t seed) {
        SplitMix64 sm{seed};
        for (auto& w : state_) w = sm.next();
    }

    // Independent stream derived from (seed, stream). Replica simulations use
    // split(seed, replica) so results do not depend on worker scheduling.
    static Rng split(std::uint64_t seed, std::uint64_t stream) {
        SplitMix64 sm{seed};
        const std::uint64_t base = sm.next();
        return Rng(base ^ ((stream + 1) * 0xD1342543DE82EF95ull));
    }

    std::uint64_t next_u64() {
        const std::uint64_t result = rotl(state_[1] * 5, 7) * 9;
        const std::uint64_t t = state_[1] << 17;
        state_[2] ^= state_[0];
        state_[3] ^= state_[1];
        state_[1] ^= state_[2];
        state_[0] ^= state_[3];
        state_[2] ^= t;
        state_[3] = rotl(state_[3], 45);
        return result;
    }

    // Uniform on [0, 1), 53-bit resolution.
    double uniform() { return static_cast<double>(next_u64() >> 11) * 0x1.0p-53; }

    // Exponential waiting time; rate > 0. Uses log1p so u == 0 is safe.
    double exponential(double rate) { return -std::log1p(-uniform()) / rate; }

    double normal(double mean = 0.0, double stddev = 1.0) {
        if (has_spare_) {
            has_spare_ = false;
            return mean + stddev * spare_;
        }
        double u1 = uniform();
        while (u1 <= 0.0) u1 = uniform();
        const double u2 = uniform();
        const double r = std::sqrt(-2.0 * std::log(u1));
        const double theta = 2.0 * 3.14159265358979323846 * u2;
        spare_ = r * std::sin(theta);
        has_spare_ = true;
        return mean + stddev * r * std::cos(theta);
    }

    // Index sampled proportionally to weights; total must equal their sum.
    std::size_t categorical(std::span<const double> weights, double total) {
        const double target = uniform() * total;
        double acc = 0.0;
        for (std::size_t i = 0; i + 1 < weights.size(); ++i) {
            acc += weights[i];
            if (target < acc) return i;
        }
        return weights.empty() ? 0 : weights.size() - 1;
    }

private:
    static std::uint64_t rotl(std::uint64_t x, int k) {
        return (x << k) | (x >> (64 - k));
    }

    std::uint64_t state_[4];
    double spare_ = 0.0;
    bool has_spare_ = false;
};

} // namespace thermo
