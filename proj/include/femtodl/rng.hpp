#pragma once

#include <cmath>
#include <cstdint>

namespace femtodl {

// Deterministic, platform-independent random streams. Every drop of the
// simulator owns an xoshiro256++ generator seeded through SplitMix64 from
// (master_seed, drop_index), so serial and parallel runs produce identical
// samples. All variate transforms are implemented here rather than with
// <random> distributions, whose output is implementation-defined.

struct SplitMix64 {
    uint64_t state;
    explicit SplitMix64(uint64_t seed) : state(seed) {}
    uint64_t next() {
        uint64_t z = (state += 0x9E3779B97F4A7C15ULL);
        z = (z ^ (z >> 30)) * 0xBF58476D1CE4E5B9ULL;
        z = (z ^ (z >> 27)) * 0x94D049BB133111EBULL;
        return z ^ (z >> 31);
    }
};

class Xoshiro256pp {
public:
    explicit Xoshiro256pp(uint64_t seed) {
        SplitMix64 sm(seed);
        for (auto& w : s_) w = sm.next();
    }

    // Stream for one simulation drop: hash-mix the drop index into the seed.
    static Xoshiro256pp for_drop(uint64_t master_seed, uint64_t drop_index) {
        SplitMix64 sm(master_seed);
        const uint64_t a = sm.next();
        return Xoshiro256pp(a ^ (drop_index * 0xD1B54A32D192ED03ULL + 0x8BB84B93962EACC9ULL));
    }

    uint64_t next_u64() {
        const uint64_t result = rotl(s_[0] + s_[3], 23) + s_[0];
        const uint64_t t = s_[1] << 17;
        s_[2] ^= s_[0];
        s_[3] ^= s_[1];
        s_[1] ^= s_[2];
        s_[0] ^= s_[3];
        s_[2] ^= t;
        s_[3] = rotl(s_[3], 45);
        return result;
    }

    // Uniform in [0, 1).
    double uniform() { return static_cast<double>(next_u64() >> 11) * 0x1.0p-53; }

    // Unit-mean exponential (Rayleigh channel power).
    double exponential() { return -std::log(1.0 - uniform()); }

    // Poisson count via Knuth's product method, chunked so exp(-mean) never
    // underflows for the large means a wide simulation window produces.
    uint64_t poisson(double mean) {
        uint64_t total = 0;
        while (mean > 0.0) {
            const double chunk = mean > 500.0 ? 500.0 : mean;
            mean -= chunk;
            const double limit = std::exp(-chunk);
            double prod = uniform();
            while (prod > limit) {
                ++total;
                prod *= uniform();
            }
        }
        return total;
    }

private:
    static uint64_t rotl(uint64_t x, int k) { return (x << k) | (x >> (64 - k)); }
    uint64_t s_[4];
};

} // namespace femtodl
