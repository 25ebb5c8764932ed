#include "chainbf/rng.hpp"

namespace chainbf {

std::uint64_t splitmix64(std::uint64_t x) {
    x += 0x9E3779B97F4A7C15ULL;
    x = (x ^ (x >> 30)) * 0xBF58476D1CE4E5B9ULL;
    x = (x ^ (x >> 27)) * 0x94D049BB133111EBULL;
    return x ^ (x >> 31);
}

Rng Rng::substream(std::uint64_t seed, std::uint64_t index) {
    return Rng(splitmix64(splitmix64(seed) ^ splitmix64(index + 0x632BE59BD9B4E019ULL)));
}

double Rng::gamma(double shape) {
    std::gamma_distribution<double> dist(shape, 1.0);
    return dist(engine_);
}

double Rng::beta(double a, double b) {
    // Both Gamma variates can underflow to zero for very small shapes; redraw in that case.
    for (;;) {
        const double x = gamma(a);
        const double y = gamma(b);
        if (x + y > 0.0) {
            return x / (x + y);
        }
    }
}

double Rng::uniform() {
    std::uniform_real_distribution<double> dist(0.0, 1.0);
    return dist(engine_);
}

}  // namespace chainbf
