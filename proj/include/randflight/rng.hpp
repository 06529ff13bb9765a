#pragma once

#include <cmath>
#include <cstdint>
#include <random>

namespace randflight {

// Deterministic random source.  mt19937_64 has a standard-specified output
// sequence, and every variate below is derived from it with fixed arithmetic,
// so a given seed produces the same stream on every platform and compiler.
// std::* distributions are implementation-defined and must not be used here.
class RandomSource {
public:
    explicit RandomSource(std::uint64_t seed) : eng_(seed), seed_(seed) {}

    // Derived stream for worker k.  Streams are decorrelated by perturbing the
    // seed; splitmix-style mixing avoids nearby seeds producing nearby states.
    RandomSource stream(std::uint64_t k) const {
        std::uint64_t z = seed_ + (k + 1) * 0x9E3779B97F4A7C15ULL;
        z = (z ^ (z >> 30)) * 0xBF58476D1CE4E5B9ULL;
        z = (z ^ (z >> 27)) * 0x94D049BB133111EBULL;
        z ^= z >> 31;
        return RandomSource(z);
    }

    // Uniform on (0, 1]; never returns 0 so logs are safe.
    double uniform() {
        std::uint64_t x = eng_();
        double u = static_cast<double>(x >> 11) * 0x1p-53;
        return u == 0.0 ? 0x1p-53 : u;
    }

    // Uniform on (lo, hi].
    double uniform(double lo, double hi) { return lo + (hi - lo) * uniform(); }

    // Standard normal via the polar method; caches the spare deviate.
    double normal() {
        if (has_spare_) {
            has_spare_ = false;
            return spare_;
        }
        double u, v, s;
        do {
            u = 2.0 * uniform() - 1.0;
            v = 2.0 * uniform() - 1.0;
            s = u * u + v * v;
        } while (s >= 1.0 || s == 0.0);
        double m = std::sqrt(-2.0 * std::log(s) / s);
        spare_ = v * m;
        has_spare_ = true;
        return u * m;
    }

    double exponential(double rate) { return -std::log(uniform()) / rate; }

    // Gamma(shape, 1) via Marsaglia-Tsang squeeze; shape < 1 handled with the
    // boost Gamma(shape) = Gamma(shape + 1) * U^{1/shape}.
    double gamma(double shape) {
        if (shape < 1.0) {
            double u = uniform();
            return gamma(shape + 1.0) * std::pow(u, 1.0 / shape);
        }
        double d = shape - 1.0 / 3.0;
        double c = 1.0 / std::sqrt(9.0 * d);
        for (;;) {
            double x, v;
            do {
                x = normal();
                v = 1.0 + c * x;
            } while (v <= 0.0);
            v = v * v * v;
            double u = uniform();
            double x2 = x * x;
            if (u < 1.0 - 0.0331 * x2 * x2) return d * v;
            if (std::log(u) < 0.5 * x2 + d * (1.0 - v + std::log(v))) return d * v;
        }
    }

    std::uint64_t raw() { return eng_(); }

private:
    std::mt19937_64 eng_;
    std::uint64_t seed_ = 0;
    double spare_ = 0.0;
    bool has_spare_ = false;
};

}  // namespace randflight
