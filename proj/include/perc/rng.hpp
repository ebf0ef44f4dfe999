#pragma once
#include <cstdint>

namespace perc {

// Counter-based generator "percmix64-v1".
//
// Every random decision in the project is a pure function of
// (master seed, substream index, position).  Substream i is used for sample
// index i; position j within a substream is consumed by edge j.  This makes
// all Monte Carlo output independent of worker count, evaluation order and
// platform.  Do not change the constants or the rounds without bumping the
// version string: golden tests pin the output.
inline constexpr const char* kRngVersion = "percmix64-v1";

// murmur3/splitmix style 64-bit finalizer: full avalanche.
inline std::uint64_t mix64(std::uint64_t z) noexcept {
    z ^= z >> 33;
    z *= 0xff51afd7ed558ccdULL;
    z ^= z >> 33;
    z *= 0xc4ceb9fe1a85ec53ULL;
    z ^= z >> 33;
    return z;
}

class RngStream {
public:
    RngStream(std::uint64_t master_seed, std::uint64_t substream) noexcept
        : state_(mix64(master_seed ^ (0x9e3779b97f4a7c15ULL * (substream + 1)))) {}

    // Word at an absolute position; random access, two mixing rounds total.
    std::uint64_t word(std::uint64_t position) const noexcept {
        return mix64(state_ ^ (0xbf58476d1ce4e5b9ULL * (position + 1)));
    }

    double uniform01(std::uint64_t position) const noexcept {
        return static_cast<double>(word(position) >> 11) * 0x1.0p-53;
    }

    // Bernoulli(p) for edge `position`, p strictly inside (0,1).
    // Callers must special-case p <= 0 (never) and p >= 1 (always); a 64-bit
    // `<` threshold cannot represent probability exactly 1.
    bool bernoulli(std::uint64_t position, std::uint64_t threshold) const noexcept {
        return word(position) < threshold;
    }

    static std::uint64_t threshold_for(double p) noexcept {
        if (p <= 0.0) return 0;
        if (p >= 1.0) return ~0ULL;
        return static_cast<std::uint64_t>(p * 0x1.0p64);
    }

private:
    std::uint64_t state_;
};

}  // namespace perc
