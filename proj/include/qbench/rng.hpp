#pragma once

#include <cmath>
#include <cstdint>

namespace qbench {

// Counter-based deterministic generator (splitmix64 core).  Streams derived
// from (seed, worker) are independent and reproducible across platforms,
// which is what the simulator's merge contract requires; std:: distributions
// are avoided on purpose since their sequences differ between standard
// library implementations.
class Rng {
  public:
    explicit Rng(std::uint64_t seed) : state_(seed ^ kGolden) {}

    static Rng stream(std::uint64_t seed, std::uint64_t worker) {
        Rng base(seed);
        std::uint64_t mixed = base.next_u64() + worker * 0x9e3779b97f4a7c15ull;
        return Rng(mixed);
    }

    std::uint64_t next_u64() {
        std::uint64_t z = (state_ += 0x9e3779b97f4a7c15ull);
        z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ull;
        z = (z ^ (z >> 27)) * 0x94d049bb133111ebull;
        return z ^ (z >> 31);
    }

    // Uniform on [0, 1) with 53-bit resolution.
    double uniform() { return static_cast<double>(next_u64() >> 11) * 0x1.0p-53; }

    double uniform(double lo, double hi) { return lo + (hi - lo) * uniform(); }

    bool bernoulli(double p) { return uniform() < p; }

    double normal() {
        // Box-Muller without caching; keeps the stream stateless apart from
        // the counter so merged accumulators are order-independent.
        double u1 = uniform();
        while (u1 <= 0.0) {
            u1 = uniform();
        }
        double u2 = uniform();
        return std::sqrt(-2.0 * std::log(u1)) * std::cos(2.0 * M_PI * u2);
    }

    // Gamma(shape, 1) via Marsaglia-Tsang, with the standard shape<1 boost.
    double gamma(double shape) {
        if (shape < 1.0) {
            double u = uniform();
            while (u <= 0.0) {
                u = uniform();
            }
            return gamma(shape + 1.0) * std::pow(u, 1.0 / shape);
        }
        const double d = shape - 1.0 / 3.0;
        const double c = 1.0 / std::sqrt(9.0 * d);
        for (;;) {
            double x = normal();
            double v = 1.0 + c * x;
            if (v <= 0.0) {
                continue;
            }
            v = v * v * v;
            double u = uniform();
            if (u < 1.0 - 0.0331 * x * x * x * x) {
                return d * v;
            }
            if (u > 0.0 && std::log(u) < 0.5 * x * x + d * (1.0 - v + std::log(v))) {
                return d * v;
            }
        }
    }

    double beta(double a, double b) {
        double x = gamma(a);
        double y = gamma(b);
        return x / (x + y);
    }

  private:
    static constexpr std::uint64_t kGolden = 0x9e3779b97f4a7c15ull;
    std::uint64_t state_;
};

}  // namespace qbench
