#pragma once

#include <cstdint>
#include <random>

namespace km {

// Seedable generator with bit-reproducible draws. mt19937_64 output is fully
// specified by the standard; the uniform conversion below avoids
// std::uniform_real_distribution, whose result sequence is
// implementation-defined.
class Rng {
public:
    explicit Rng(std::uint64_t seed) : engine_(seed) {}

    std::uint64_t raw() { return engine_(); }

    // uniform on [0,1), 53-bit resolution
    double uniform01() { return static_cast<double>(engine_() >> 11) * 0x1.0p-53; }

    double uniform(double a, double b) { return a + (b - a) * uniform01(); }

    bool bernoulli(double p) { return uniform01() < p; }

private:
    std::mt19937_64 engine_;
};

} // namespace km
