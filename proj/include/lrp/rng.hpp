#pragma once

#include <cstdint>
#include <cmath>
#include <unordered_set>
#include <vector>

// Deterministic random number machinery. Everything here is fixed-algorithm
// (no std::<random> distributions, whose sequences are implementation-defined)
// so that a (box, params, seed) triple reproduces identical output on any
// platform and compiler.

namespace lrp {

// SplitMix64 finalizer. Used both as the seed-mixing function and to expand
// seeds into generator state.
inline std::uint64_t splitmix64(std::uint64_t x) {
    x += 0x9E3779B97F4A7C15ULL;
    x = (x ^ (x >> 30)) * 0xBF58476D1CE4E5B9ULL;
    x = (x ^ (x >> 27)) * 0x94D049BB133111EBULL;
    return x ^ (x >> 31);
}

// Substream derivation: maps (master seed, stream id) to an independent seed.
// Stream ids are role-scoped (displacement class key, replica index, pair id)
// so distinct roles never collide.
inline std::uint64_t mix_seed(std::uint64_t master, std::uint64_t stream_id) {
    return splitmix64(splitmix64(master) ^ splitmix64(stream_id));
}

inline std::uint64_t mix_seed(std::uint64_t master, std::uint64_t a, std::uint64_t b) {
    return mix_seed(mix_seed(master, a), b);
}

// xoshiro256++ (Blackman & Vigna), seeded via splitmix64 expansion.
class Xoshiro256pp {
public:
    explicit Xoshiro256pp(std::uint64_t seed) {
        std::uint64_t x = seed;
        for (auto& word : state_) {
            x = splitmix64(x);
            word = x;
        }
    }

    std::uint64_t next() {
        const std::uint64_t result = rotl(state_[0] + state_[3], 23) + state_[0];
        const std::uint64_t t = state_[1] << 17;
        state_[2] ^= state_[0];
        state_[3] ^= state_[1];
        state_[1] ^= state_[2];
        state_[0] ^= state_[3];
        state_[2] ^= t;
        state_[3] = rotl(state_[3], 45);
        return result;
    }

    // Uniform double in [0, 1), 53-bit resolution.
    double unit() { return static_cast<double>(next() >> 11) * 0x1.0p-53; }

    // Uniform double in (0, 1]; safe as a log() argument.
    double unit_pos() { return static_cast<double>((next() >> 11) + 1) * 0x1.0p-53; }

    // Unbiased uniform integer in [0, bound), bound >= 1 (Lemire rejection).
    std::uint64_t below(std::uint64_t bound) {
        while (true) {
            std::uint64_t x = next();
            __uint128_t m = static_cast<__uint128_t>(x) * bound;
            auto lo = static_cast<std::uint64_t>(m);
            if (lo >= bound || lo >= (0 - bound) % bound) return static_cast<std::uint64_t>(m >> 64);
        }
    }

private:
    static std::uint64_t rotl(std::uint64_t v, int k) { return (v << k) | (v >> (64 - k)); }
    std::uint64_t state_[4];
};

// Number of failures before the next success in a Bernoulli(q) sequence,
// q in (0, 1].
inline std::uint64_t geometric_skip(Xoshiro256pp& rng, double q) {
    if (q >= 1.0) return 0;
    double g = std::floor(std::log(rng.unit_pos()) / std::log1p(-q));
    if (g < 0.0) g = 0.0;
    constexpr double kCap = 9.2e18;
    return static_cast<std::uint64_t>(g < kCap ? g : kCap);
}

// Exact Binomial(trials, q) via geometric skipping over the success side or
// the failure side, whichever is sparser. Cost O(1 + trials * min(q, 1-q)).
inline std::uint64_t binomial_draw(Xoshiro256pp& rng, std::uint64_t trials, double q) {
    if (trials == 0 || q <= 0.0) return 0;
    if (q >= 1.0) return trials;
    const bool flip = q > 0.5;
    const double qq = flip ? 1.0 - q : q;
    std::uint64_t hits = 0;
    std::uint64_t pos = 0;
    while (true) {
        std::uint64_t skip = geometric_skip(rng, qq);
        if (skip >= trials - pos) break;
        pos += skip + 1;
        ++hits;
        if (pos >= trials) break;
    }
    return flip ? trials - hits : hits;
}

// Robert Floyd's rejection-free selection of k distinct values from [0, m).
// Output order is deterministic for a given rng state.
inline std::vector<std::uint64_t> floyd_sample(Xoshiro256pp& rng, std::uint64_t m, std::uint64_t k,
                                               std::unordered_set<std::uint64_t>& scratch) {
    scratch.clear();
    std::vector<std::uint64_t> out;
    out.reserve(k);
    for (std::uint64_t j = m - k; j < m; ++j) {
        std::uint64_t t = rng.below(j + 1);
        if (scratch.insert(t).second) {
            out.push_back(t);
        } else {
            scratch.insert(j);
            out.push_back(j);
        }
    }
    return out;
}

}  // namespace lrp
