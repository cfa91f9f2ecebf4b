#pragma once

#include <cstdint>
#include <random>
#include <vector>

namespace wg {

// Seeded uniform noise in [-1, 1). The generator is pinned to std::mt19937
// with the 32-bit output mapped as 2 * (u / 2^32) - 1, so rendered audio is
// bit-identical across platforms and standard libraries.
class UniformNoise {
public:
    explicit UniformNoise(std::uint32_t seed) : rng_(seed) {}

    double next() {
        return 2.0 * (static_cast<double>(rng_()) * (1.0 / 4294967296.0)) - 1.0;
    }

private:
    std::mt19937 rng_;
};

std::vector<double> noise_vector(std::uint32_t seed, std::size_t length);

}  // namespace wg
