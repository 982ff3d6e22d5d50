#pragma once

#include <algorithm>
#include <bit>
#include <cstddef>
#include <cstdint>
#include <span>
#include <vector>

namespace mstd {

/// Fixed-width dynamic bit vector. Bits at positions >= size() are always zero.
class Bitmask {
public:
    using word_type = std::uint64_t;
    static constexpr std::size_t word_bits = 64;

    Bitmask() = default;
    explicit Bitmask(std::size_t bits) : bits_(bits), words_((bits + word_bits - 1) / word_bits, 0) {}

    std::size_t size() const noexcept { return bits_; }

    bool test(std::size_t pos) const noexcept {
        return (words_[pos / word_bits] >> (pos % word_bits)) & 1U;
    }
    void set(std::size_t pos) noexcept { words_[pos / word_bits] |= word_type{1} << (pos % word_bits); }
    void reset(std::size_t pos) noexcept { words_[pos / word_bits] &= ~(word_type{1} << (pos % word_bits)); }

    std::size_t count() const noexcept {
        std::size_t total = 0;
        for (word_type w : words_) total += static_cast<std::size_t>(std::popcount(w));
        return total;
    }
    bool none() const noexcept {
        return std::all_of(words_.begin(), words_.end(), [](word_type w) { return w == 0; });
    }

    std::span<const word_type> words() const noexcept { return words_; }

    /// *this |= (src << shift); bits shifted past size() are dropped.
    void or_shifted(const Bitmask& src, std::size_t shift) noexcept {
        const std::size_t word_shift = shift / word_bits;
        const unsigned bit_shift = static_cast<unsigned>(shift % word_bits);
        const std::size_t dst_words = words_.size();
        if (word_shift >= dst_words) return;
        const std::size_t limit = std::min(src.words_.size(), dst_words - word_shift);
        if (bit_shift == 0) {
            for (std::size_t i = 0; i < limit; ++i) words_[i + word_shift] |= src.words_[i];
        } else {
            for (std::size_t i = 0; i < limit; ++i) {
                const word_type w = src.words_[i];
                words_[i + word_shift] |= w << bit_shift;
                if (i + word_shift + 1 < dst_words) words_[i + word_shift + 1] |= w >> (word_bits - bit_shift);
            }
        }
        trim();
    }

    bool is_subset_of(const Bitmask& other) const noexcept {
        for (std::size_t i = 0; i < words_.size(); ++i) {
            const word_type theirs = i < other.words_.size() ? other.words_[i] : 0;
            if ((words_[i] & ~theirs) != 0) return false;
        }
        return true;
    }

    /// Calls fn(pos) for every set bit in ascending order.
    template <class Fn>
    void for_each_set(Fn&& fn) const {
        for (std::size_t i = 0; i < words_.size(); ++i) {
            word_type w = words_[i];
            while (w != 0) {
                fn(i * word_bits + static_cast<std::size_t>(std::countr_zero(w)));
                w &= w - 1;
            }
        }
    }

    bool operator==(const Bitmask&) const = default;

private:
    void trim() noexcept {
        const std::size_t tail = bits_ % word_bits;
        if (tail != 0 && !words_.empty()) words_.back() &= (word_type{1} << tail) - 1;
    }

    std::size_t bits_ = 0;
    std::vector<word_type> words_;
};

}  // namespace mstd
