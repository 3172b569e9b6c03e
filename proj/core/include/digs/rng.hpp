#pragma once

#include <cstdint>
#include <random>
#include <vector>

#include "digs/int128.hpp"

namespace digs {

// One step of the splitmix64 generator; used to whiten seeds and to derive
// independent per-run streams.
inline uint64_t splitmix64(uint64_t& state) {
    uint64_t z = (state += 0x9e3779b97f4a7c15ULL);
    z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ULL;
    z = (z ^ (z >> 27)) * 0x94d049bb133111ebULL;
    return z ^ (z >> 31);
}

// Deterministic random stream.  The core generator is mt19937_64, whose
// output sequence is fully specified by the standard, and every draw below
// avoids std::uniform_int_distribution and friends (their mapping is
// implementation-defined), so identical seeds give identical results on any
// platform.
class Rng {
public:
    explicit Rng(uint64_t seed) {
        uint64_t s = seed;
        gen_.seed(splitmix64(s));
    }

    // Independent stream for run `run_index` of a batch seeded with `seed`.
    // Used by everything that fans runs out across workers, so results do
    // not depend on thread scheduling.
    static Rng for_run(uint64_t seed, uint64_t run_index) {
        uint64_t s = seed;
        uint64_t base = splitmix64(s);
        s = base + (run_index + 1) * 0x9e3779b97f4a7c15ULL;
        return Rng(splitmix64(s));
    }

    uint64_t next() { return gen_(); }

    // Uniform in [0, n), unbiased via rejection.  n must be positive.
    uint64_t below(uint64_t n) {
        uint64_t limit = ~uint64_t{0} - ~uint64_t{0} % n;
        uint64_t x;
        do {
            x = gen_();
        } while (x >= limit);
        return x % n;
    }

    // 128-bit variant for draws proportional to exact integer weights.
    u128 below_u128(u128 n) {
        u128 limit = ~u128{0} - ~u128{0} % n;
        u128 x;
        do {
            x = (u128(gen_()) << 64) | gen_();
        } while (x >= limit);
        return x % n;
    }

    // Uniform in [0,1) with 53-bit resolution.
    double unit() { return double(gen_() >> 11) * 0x1.0p-53; }

    // True with probability num/den, exactly (integer comparison, no
    // floating point involved).  Requires 0 <= num <= den, den > 0.
    bool bernoulli_ratio(u128 num, u128 den) {
        if (num == 0) return false;
        if (num >= den) return true;
        return below_u128(den) < num;
    }

    size_t index(size_t n) { return size_t(below(uint64_t(n))); }

    // Fisher-Yates with our own index draws (std::shuffle's use of the URBG
    // is implementation-defined).
    template <typename T>
    void shuffle(std::vector<T>& v) {
        for (size_t i = v.size(); i > 1; --i) {
            size_t j = index(i);
            std::swap(v[i - 1], v[j]);
        }
    }

private:
    std::mt19937_64 gen_;
};

}  // namespace digs
