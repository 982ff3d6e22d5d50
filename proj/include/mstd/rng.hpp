#pragma once

// Counter-based random streams.
//
// A stream is a 64-bit key plus a counter. Draw number c (c = 1, 2, ...)
// returns mix64(key + c * 0x9E3779B97F4A7C15), i.e. SplitMix64 started at
// `key`. Streams for trial t of a run seeded with s use
// key = derive_key(s, t); any trial can be replayed on its own without
// touching the others.

#include <cstdint>
#include <limits>

namespace mstd {

inline constexpr std::uint64_t kGoldenGamma = 0x9E3779B97F4A7C15ULL;

/// SplitMix64 finalizer (Stafford variant 13).
constexpr std::uint64_t mix64(std::uint64_t z) noexcept {
    z = (z ^ (z >> 30)) * 0xBF58476D1CE4E5B9ULL;
    z = (z ^ (z >> 27)) * 0x94D049BB133111EBULL;
    return z ^ (z >> 31);
}

/// Key of substream `index` under `parent`: mix64(parent ^ mix64(index + gamma)).
constexpr std::uint64_t derive_key(std::uint64_t parent, std::uint64_t index) noexcept {
    return mix64(parent ^ mix64(index + kGoldenGamma));
}

class CounterStream {
public:
    using result_type = std::uint64_t;

    constexpr explicit CounterStream(std::uint64_t key) noexcept : key_(key) {}

    static constexpr result_type min() noexcept { return 0; }
    static constexpr result_type max() noexcept { return std::numeric_limits<result_type>::max(); }

    constexpr result_type operator()() noexcept { return mix64(key_ + (++counter_) * kGoldenGamma); }

    /// Uniform on [0, 1), 53-bit resolution.
    double uniform() noexcept { return static_cast<double>((*this)() >> 11) * 0x1.0p-53; }

    /// Uniform on (0, 1].
    double uniform_open_zero() noexcept { return static_cast<double>(((*this)() >> 11) + 1) * 0x1.0p-53; }

    constexpr std::uint64_t key() const noexcept { return key_; }
    constexpr std::uint64_t counter() const noexcept { return counter_; }

private:
    std::uint64_t key_;
    std::uint64_t counter_ = 0;
};

}  // namespace mstd
