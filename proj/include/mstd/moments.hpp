#pragma once

#include <cstdint>

namespace mstd {

__extension__ using uint128 = unsigned __int128;

/// Count, sum and sum of squares of non-negative integer observations, held
/// exactly. Merging is integer addition, so the result does not depend on
/// how observations were partitioned or ordered.
class IntegerMoments {
public:
    void add(std::uint64_t x) noexcept {
        ++count_;
        sum_ += x;
        sum_sq_ += static_cast<uint128>(x) * x;
    }

    void merge(const IntegerMoments& other) noexcept {
        count_ += other.count_;
        sum_ += other.sum_;
        sum_sq_ += other.sum_sq_;
    }

    std::uint64_t count() const noexcept { return count_; }

    double mean() const noexcept {
        if (count_ == 0) return 0.0;
        return static_cast<double>(static_cast<long double>(sum_) / static_cast<long double>(count_));
    }

    /// Unbiased sample variance; 0 for fewer than two observations.
    /// count * sum_sq - sum^2 is formed exactly, so the result is never negative.
    double variance() const noexcept {
        if (count_ < 2) return 0.0;
        const uint128 numerator = static_cast<uint128>(count_) * sum_sq_ - sum_ * sum_;
        const long double denom = static_cast<long double>(count_) * static_cast<long double>(count_ - 1);
        return static_cast<double>(static_cast<long double>(numerator) / denom);
    }

    bool operator==(const IntegerMoments&) const = default;

private:
    std::uint64_t count_ = 0;
    uint128 sum_ = 0;
    uint128 sum_sq_ = 0;
};

}  // namespace mstd
