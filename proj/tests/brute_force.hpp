#pragma once

// Naive reference computations used only by tests. Deliberately independent
// of the bitmask shift paths in the library.

#include <cstdint>
#include <set>
#include <vector>

namespace brute {

inline std::vector<std::int64_t> members(std::uint64_t mask) {
    std::vector<std::int64_t> out;
    for (int i = 0; i < 64; ++i)
        if ((mask >> i) & 1U) out.push_back(i);
    return out;
}

inline std::set<std::int64_t> sums(const std::vector<std::int64_t>& a) {
    std::set<std::int64_t> out;
    for (auto x : a)
        for (auto y : a) out.insert(x + y);
    return out;
}

inline std::set<std::int64_t> diffs(const std::vector<std::int64_t>& a) {
    std::set<std::int64_t> out;
    for (auto x : a)
        for (auto y : a) out.insert(x - y);
    return out;
}

inline std::uint64_t sum_quadruples(const std::vector<std::int64_t>& a) {
    std::uint64_t count = 0;
    for (auto x : a)
        for (auto y : a)
            for (auto u : a)
                for (auto v : a) count += (x + y == u + v);
    return count;
}

inline std::uint64_t diff_quadruples(const std::vector<std::int64_t>& a) {
    std::uint64_t count = 0;
    for (auto x : a)
        for (auto y : a)
            for (auto u : a)
                for (auto v : a) count += (x - y == u - v);
    return count;
}

inline bool pairwise_sums_distinct(const std::vector<std::int64_t>& a) {
    std::set<std::int64_t> seen;
    for (std::size_t i = 0; i < a.size(); ++i)
        for (std::size_t j = i; j < a.size(); ++j)
            if (!seen.insert(a[i] + a[j]).second) return false;
    return true;
}

}  // namespace brute
