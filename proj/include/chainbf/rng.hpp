#pragma once

#include <cstdint>
#include <random>

namespace chainbf {

/// Seeded random stream. Independent substreams are derived from (seed, index) with SplitMix64,
/// so work split across substreams is reproducible regardless of evaluation order.
class Rng {
public:
    explicit Rng(std::uint64_t seed) : engine_(seed) {}

    static Rng substream(std::uint64_t seed, std::uint64_t index);

    /// Beta(a, b) draw via two Gamma variates.
    double beta(double a, double b);
    double gamma(double shape);
    double uniform();

    std::mt19937_64& engine() { return engine_; }

private:
    std::mt19937_64 engine_;
};

std::uint64_t splitmix64(std::uint64_t x);

}  // namespace chainbf
