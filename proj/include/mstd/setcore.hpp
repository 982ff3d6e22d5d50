#pragma once

// Finite integer-set arithmetic over a fixed universe [0, n-1]: sum and
// difference sets, the dominance trichotomy, additive energy and Sidon tests.
//
// Sum and difference sets are built by OR-ing shifted copies of the member
// mask, one shift per member, so a call costs O(k * n / 64) word operations.

#include <cstddef>
#include <cstdint>
#include <initializer_list>
#include <ostream>
#include <span>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

#include "mstd/bitmask.hpp"
#include "mstd/error.hpp"

namespace mstd {

/// Subset of [0, universe_size - 1].
class IntSet {
public:
    explicit IntSet(std::size_t universe_size) : universe_(universe_size), mask_(universe_size) {
        if (universe_size == 0) throw ParameterError("universe size must be positive");
    }

    std::size_t universe_size() const noexcept { return universe_; }
    std::size_t size() const noexcept { return mask_.count(); }
    bool empty() const noexcept { return mask_.none(); }

    bool contains(std::int64_t value) const noexcept {
        return value >= 0 && static_cast<std::uint64_t>(value) < universe_ &&
               mask_.test(static_cast<std::size_t>(value));
    }

    void insert(std::int64_t value) {
        if (value < 0 || static_cast<std::uint64_t>(value) >= universe_)
            throw RangeError("element " + std::to_string(value) + " outside [0, " +
                             std::to_string(universe_ - 1) + "]");
        mask_.set(static_cast<std::size_t>(value));
    }

    const Bitmask& mask() const noexcept { return mask_; }

    std::vector<std::size_t> elements() const {
        std::vector<std::size_t> out;
        mask_.for_each_set([&](std::size_t pos) { out.push_back(pos); });
        return out;
    }

    template <class Fn>
    void for_each(Fn&& fn) const {
        mask_.for_each_set(std::forward<Fn>(fn));
    }

    bool is_subset_of(const IntSet& other) const noexcept { return mask_.is_subset_of(other.mask_); }

    bool operator==(const IntSet&) const = default;

    /// Adopts a mask whose width is the universe size.
    static IntSet from_mask(Bitmask mask) {
        IntSet set(mask.size());
        set.mask_ = std::move(mask);
        return set;
    }

private:
    std::size_t universe_;
    Bitmask mask_;
};

/// Subset of [-h, h], stored at offset h. Produced by diffset().
class SignedRangeSet {
public:
    SignedRangeSet(std::size_t half_range, Bitmask mask) : half_range_(half_range), mask_(std::move(mask)) {}

    std::size_t half_range() const noexcept { return half_range_; }
    std::size_t size() const noexcept { return mask_.count(); }
    bool empty() const noexcept { return mask_.none(); }

    bool contains(std::int64_t value) const noexcept {
        const auto h = static_cast<std::int64_t>(half_range_);
        return value >= -h && value <= h && mask_.test(static_cast<std::size_t>(value + h));
    }

    std::vector<std::int64_t> elements() const {
        std::vector<std::int64_t> out;
        const auto h = static_cast<std::int64_t>(half_range_);
        mask_.for_each_set([&](std::size_t pos) { out.push_back(static_cast<std::int64_t>(pos) - h); });
        return out;
    }

    bool is_symmetric() const noexcept {
        const std::size_t width = 2 * half_range_ + 1;
        for (std::size_t pos = 0; pos < half_range_; ++pos)
            if (mask_.test(pos) != mask_.test(width - 1 - pos)) return false;
        return true;
    }

    const Bitmask& mask() const noexcept { return mask_; }

private:
    std::size_t half_range_;
    Bitmask mask_;
};

enum class Dominance { DifferenceDominant, SumDominant, Balanced };

inline std::string_view to_string(Dominance d) noexcept {
    switch (d) {
        case Dominance::DifferenceDominant: return "DifferenceDominant";
        case Dominance::SumDominant: return "SumDominant";
        case Dominance::Balanced: return "Balanced";
    }
    return "?";
}

inline std::ostream& operator<<(std::ostream& os, Dominance d) { return os << to_string(d); }

inline std::ostream& operator<<(std::ostream& os, const IntSet& set) {
    os << '{';
    bool first = true;
    set.for_each([&](std::size_t v) {
        os << (first ? "" : ",") << v;
        first = false;
    });
    return os << '}';
}

/// Builds a set from a list of elements; duplicates collapse.
inline IntSet make_set(std::span<const std::int64_t> elements, std::size_t universe_size) {
    IntSet set(universe_size);
    for (std::int64_t e : elements) set.insert(e);
    return set;
}

inline IntSet make_set(std::initializer_list<std::int64_t> elements, std::size_t universe_size) {
    return make_set(std::span<const std::int64_t>(elements.begin(), elements.size()), universe_size);
}

/// A+A as a subset of [0, 2n-2].
inline IntSet sumset(const IntSet& set) {
    Bitmask acc(2 * set.universe_size() - 1);
    set.for_each([&](std::size_t a) { acc.or_shifted(set.mask(), a); });
    return IntSet::from_mask(std::move(acc));
}

namespace detail {

// Bit (a - b) + (n - 1) is set for every a, b in A: A + reverse(A).
inline Bitmask difference_mask(const IntSet& set) {
    const std::size_t n = set.universe_size();
    Bitmask reversed(n);
    set.for_each([&](std::size_t b) { reversed.set(n - 1 - b); });
    Bitmask acc(2 * n - 1);
    set.for_each([&](std::size_t a) { acc.or_shifted(reversed, a); });
    return acc;
}

inline std::size_t trivial_quadruples(std::size_t k) noexcept { return k == 0 ? 0 : 2 * k * k - k; }

}  // namespace detail

/// A-A as a subset of [-(n-1), n-1].
inline SignedRangeSet diffset(const IntSet& set) {
    return SignedRangeSet(set.universe_size() - 1, detail::difference_mask(set));
}

inline std::size_t sumset_size(const IntSet& set) { return sumset(set).size(); }
inline std::size_t diffset_size(const IntSet& set) { return detail::difference_mask(set).count(); }

constexpr Dominance compare_sizes(std::size_t sum_size, std::size_t diff_size) noexcept {
    if (diff_size > sum_size) return Dominance::DifferenceDominant;
    if (diff_size < sum_size) return Dominance::SumDominant;
    return Dominance::Balanced;
}

/// Empty set is Balanced (0 = 0).
inline Dominance classify(const IntSet& set) { return compare_sizes(sumset_size(set), diffset_size(set)); }

/// Ordered quadruples (x, y, u, v) in A^4 with x + y = u + v.
inline std::uint64_t additive_energy(const IntSet& set) {
    const std::size_t n = set.universe_size();
    const auto elems = set.elements();
    std::vector<std::uint64_t> reps(2 * n - 1, 0);
    for (std::size_t x : elems)
        for (std::size_t y : elems) ++reps[x + y];
    std::uint64_t energy = 0;
    for (std::uint64_t r : reps) energy += r * r;
    return energy;
}

/// Ordered quadruples (x, y, u, v) in A^4 with x - y = u - v.
inline std::uint64_t diff_energy(const IntSet& set) {
    const std::size_t n = set.universe_size();
    const auto elems = set.elements();
    std::vector<std::uint64_t> reps(2 * n - 1, 0);
    for (std::size_t x : elems)
        for (std::size_t y : elems) ++reps[x + (n - 1) - y];
    std::uint64_t energy = 0;
    for (std::uint64_t r : reps) energy += r * r;
    return energy;
}

/// diff_energy minus the 2k^2 - k solutions with (x,y) = (u,v) or x = y, u = v.
inline std::uint64_t nontrivial_collisions(const IntSet& set) {
    return diff_energy(set) - detail::trivial_quadruples(set.size());
}

/// k(k-1) + 1 - nontrivial_collisions(A), a lower bound on |A-A|. The +1
/// counts the zero difference.
inline std::int64_t diff_lower_bound(const IntSet& set) {
    if (set.empty()) throw ParameterError("diff_lower_bound requires a nonempty set");
    const auto k = static_cast<std::int64_t>(set.size());
    return k * (k - 1) + 1 - static_cast<std::int64_t>(nontrivial_collisions(set));
}

/// All pairwise sums a + b with a <= b are distinct. Stops at the first repeat.
inline bool is_sidon(const IntSet& set) {
    const auto elems = set.elements();
    Bitmask seen(2 * set.universe_size() - 1);
    for (std::size_t i = 0; i < elems.size(); ++i) {
        for (std::size_t j = i; j < elems.size(); ++j) {
            const std::size_t s = elems[i] + elems[j];
            if (seen.test(s)) return false;
            seen.set(s);
        }
    }
    return true;
}

}  // namespace mstd
