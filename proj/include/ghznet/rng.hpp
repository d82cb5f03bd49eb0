#pragma once

#include <cstdint>
#include <utility>
#include <vector>

namespace ghznet {

// Portable 64-bit generator (SplitMix64). All randomness in this project goes
// through this engine so that runs are reproducible seed-for-seed across
// platforms and standard libraries. Distributions are hand-rolled for the
// same reason.
class Rng {
public:
    explicit Rng(std::uint64_t seed) : state_(seed) {}

    std::uint64_t next_u64() {
        std::uint64_t z = (state_ += 0x9e3779b97f4a7c15ull);
        z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ull;
        z = (z ^ (z >> 27)) * 0x94d049bb133111ebull;
        return z ^ (z >> 31);
    }

    // Uniform in [0, bound). Rejection sampling keeps the draw unbiased.
    std::uint64_t next_below(std::uint64_t bound) {
        if (bound <= 1) {
            return 0;
        }
        std::uint64_t limit = ~0ull - (~0ull % bound + 1) % bound;
        std::uint64_t v;
        do {
            v = next_u64();
        } while (v > limit);
        return v % bound;
    }

    // Uniform double in [0, 1) with 53 bits of mantissa.
    double next_double() {
        return static_cast<double>(next_u64() >> 11) * 0x1.0p-53;
    }

    template <typename T>
    void shuffle(std::vector<T>& v) {
        for (std::size_t i = v.size(); i > 1; --i) {
            std::size_t j = static_cast<std::size_t>(next_below(i));
            std::swap(v[i - 1], v[j]);
        }
    }

private:
    std::uint64_t state_;
};

// Deterministic per-trial seed derivation: hash(master_seed, trial_index).
inline std::uint64_t derive_seed(std::uint64_t master, std::uint64_t index) {
    Rng r(master ^ (0x5851f42d4c957f2dull * (index + 1)));
    r.next_u64();
    return r.next_u64();
}

}  // namespace ghznet
