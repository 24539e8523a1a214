#pragma once

#include <cmath>
#include <cstdint>

namespace mdingarch {

// Deterministic seeded stream. All variate generation in the library goes
// through this class so that results are byte-identical across platforms and
// thread counts; std::<distribution> adaptors are implementation-defined and
// are deliberately not used.
class RngStream {
public:
    explicit RngStream(std::uint64_t seed) : state_(splitmix(seed ^ 0x9e3779b97f4a7c15ULL)) {
        // warm up so that nearby seeds decorrelate
        next();
        next();
    }

    // Stream derived from (master seed, index). Independent streams for
    // bootstrap replicates / Monte Carlo replications.
    static RngStream derived(std::uint64_t master_seed, std::uint64_t index) {
        return RngStream(splitmix(master_seed + 0x9e3779b97f4a7c15ULL * (index + 1)));
    }

    std::uint64_t next() {
        // xorshift64* step
        std::uint64_t x = state_;
        x ^= x >> 12;
        x ^= x << 25;
        x ^= x >> 27;
        state_ = x;
        return x * 0x2545f4914f6cdd1dULL;
    }

    // uniform on (0,1); never returns exactly 0 or 1
    double uniform() {
        const double u = (next() >> 11) * 0x1.0p-53;
        return u == 0.0 ? 0x1.0p-53 : u;
    }

    bool bernoulli(double p) { return uniform() < p; }

    // standard exponential (mean one)
    double exponential() { return -std::log(1.0 - uniform()); }

private:
    static std::uint64_t splitmix(std::uint64_t z) {
        z += 0x9e3779b97f4a7c15ULL;
        z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ULL;
        z = (z ^ (z >> 27)) * 0x94d049bb133111ebULL;
        return z ^ (z >> 31);
    }

    std::uint64_t state_;
};

}  // namespace mdingarch
