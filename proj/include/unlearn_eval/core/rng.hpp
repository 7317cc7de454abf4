#pragma once

#include <cmath>
#include <cstdint>
#include <numbers>
#include <string_view>

#include "unlearn_eval/core/hash.hpp"

namespace unlearn_eval {

// All randomness in the toolkit flows from one integer seed, fanned out to
// named streams with a counter-based splitter. No libstdc++ distributions
// are used, so sequences are identical across standard library versions.

inline std::uint64_t splitmix64(std::uint64_t& state) {
    state += 0x9e3779b97f4a7c15ull;
    std::uint64_t z = state;
    z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ull;
    z = (z ^ (z >> 27)) * 0x94d049bb133111ebull;
    return z ^ (z >> 31);
}

// Derive an independent child seed for a named pipeline stage.
inline std::uint64_t derive_seed(std::uint64_t root_seed, std::string_view stream) {
    std::uint64_t state = root_seed ^ fnv1a64(stream);
    return splitmix64(state);
}

class SplitRng {
public:
    explicit SplitRng(std::uint64_t seed) : state_(seed) {}

    SplitRng(std::uint64_t root_seed, std::string_view stream)
        : state_(derive_seed(root_seed, stream)) {}

    std::uint64_t next_u64() { return splitmix64(state_); }

    // Uniform in [0, 1).
    double next_double() {
        return static_cast<double>(next_u64() >> 11) * 0x1.0p-53;
    }

    // Uniform integer in [0, bound). bound must be > 0.
    std::uint64_t next_below(std::uint64_t bound) {
        return next_u64() % bound;
    }

    // Standard normal via Box-Muller; fully deterministic.
    double next_gaussian() {
        if (have_spare_) {
            have_spare_ = false;
            return spare_;
        }
        double u1 = next_double();
        while (u1 <= 0.0) u1 = next_double();
        const double u2 = next_double();
        const double r = std::sqrt(-2.0 * std::log(u1));
        const double theta = 2.0 * std::numbers::pi * u2;
        spare_ = r * std::sin(theta);
        have_spare_ = true;
        return r * std::cos(theta);
    }

private:
    std::uint64_t state_;
    bool have_spare_ = false;
    double spare_ = 0.0;
};

}  // namespace unlearn_eval
