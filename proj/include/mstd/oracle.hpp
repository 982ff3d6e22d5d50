#pragma once

// Ground truth by exhaustive enumeration of all 2^n subsets of [0, n-1].
//
// Subsets are tallied per cardinality with exact integer counters; the
// Bernoulli weight p^c (1-p)^(n-c) is applied once per cardinality at the
// end. Integer merging is exact, so any partition of the mask range across
// workers gives the same result.

#include <algorithm>
#include <bit>
#include <cmath>
#include <cstddef>
#include <cstdint>
#include <string>
#include <vector>

#include "mstd/error.hpp"
#include "mstd/exactlaw.hpp"
#include "mstd/parallel.hpp"

namespace mstd {

inline constexpr std::size_t kExactLawMaxN = 24;
inline constexpr std::size_t kExactCovMaxN = 20;

struct ExactLaw {
    ModelParams params;
    std::vector<double> p_sum_hit_by_index;   // index i = sum value, 0..2n-2
    std::vector<double> p_diff_hit_by_index;  // index i = difference + (n-1)
    double e_s1 = 0.0;
    double e_s2 = 0.0;
    double var_s1 = 0.0;
    double var_s2 = 0.0;
    double p_diff_dominant = 0.0;
    double p_sum_dominant = 0.0;
    double p_balanced = 0.0;
    double total_weight = 0.0;  // sum of all subset weights, 1 up to rounding

    double p_diff_hit_at(std::int64_t difference) const {
        return p_diff_hit_by_index.at(static_cast<std::size_t>(difference + static_cast<std::int64_t>(params.n) - 1));
    }
};

namespace detail {

// Sum and difference bitmasks of the subset encoded by `mask`; bit
// (a - b) + (n - 1) of `diffs` marks difference a - b. Brute force over pairs.
struct SubsetImage {
    std::uint64_t sums = 0;
    std::uint64_t diffs = 0;
};

inline SubsetImage subset_image(std::uint64_t mask, std::size_t n) noexcept {
    SubsetImage image;
    for (std::uint64_t a_bits = mask; a_bits != 0; a_bits &= a_bits - 1) {
        const auto a = static_cast<unsigned>(std::countr_zero(a_bits));
        for (std::uint64_t b_bits = mask; b_bits != 0; b_bits &= b_bits - 1) {
            const auto b = static_cast<unsigned>(std::countr_zero(b_bits));
            image.sums |= std::uint64_t{1} << (a + b);
            image.diffs |= std::uint64_t{1} << (a + (n - 1) - b);
        }
    }
    return image;
}

inline std::vector<double> cardinality_weights(std::size_t n, double p) {
    std::vector<double> w(n + 1);
    for (std::size_t c = 0; c <= n; ++c)
        w[c] = std::pow(p, static_cast<double>(c)) * std::pow(1.0 - p, static_cast<double>(n - c));
    return w;
}

inline double binomial(std::size_t n, std::size_t k) {
    double out = 1.0;
    for (std::size_t i = 1; i <= k; ++i) out = out * static_cast<double>(n - k + i) / static_cast<double>(i);
    return out;
}

struct LawTally {
    std::size_t n = 0;
    std::size_t width = 0;
    // [card * width + index]
    std::vector<std::uint64_t> sum_hits;
    std::vector<std::uint64_t> diff_hits;
    // [card]
    std::vector<std::uint64_t> s1, s1_sq, s2, s2_sq;
    std::vector<std::uint64_t> diff_dom, sum_dom, balanced;

    void init(std::size_t universe) {
        n = universe;
        width = 2 * n - 1;
        sum_hits.assign((n + 1) * width, 0);
        diff_hits.assign((n + 1) * width, 0);
        for (auto* v : {&s1, &s1_sq, &s2, &s2_sq, &diff_dom, &sum_dom, &balanced}) v->assign(n + 1, 0);
    }

    void add(std::uint64_t mask) {
        const auto card = static_cast<std::size_t>(std::popcount(mask));
        const SubsetImage image = subset_image(mask, n);
        const auto size1 = static_cast<std::uint64_t>(std::popcount(image.sums));
        const auto size2 = static_cast<std::uint64_t>(std::popcount(image.diffs));
        for (std::uint64_t bits = image.sums; bits != 0; bits &= bits - 1)
            ++sum_hits[card * width + static_cast<std::size_t>(std::countr_zero(bits))];
        for (std::uint64_t bits = image.diffs; bits != 0; bits &= bits - 1)
            ++diff_hits[card * width + static_cast<std::size_t>(std::countr_zero(bits))];
        s1[card] += size1;
        s1_sq[card] += size1 * size1;
        s2[card] += size2;
        s2_sq[card] += size2 * size2;
        if (size2 > size1)
            ++diff_dom[card];
        else if (size2 < size1)
            ++sum_dom[card];
        else
            ++balanced[card];
    }

    void merge(const LawTally& other) {
        auto add_into = [](std::vector<std::uint64_t>& dst, const std::vector<std::uint64_t>& src) {
            for (std::size_t i = 0; i < dst.size(); ++i) dst[i] += src[i];
        };
        add_into(sum_hits, other.sum_hits);
        add_into(diff_hits, other.diff_hits);
        add_into(s1, other.s1);
        add_into(s1_sq, other.s1_sq);
        add_into(s2, other.s2);
        add_into(s2_sq, other.s2_sq);
        add_into(diff_dom, other.diff_dom);
        add_into(sum_dom, other.sum_dom);
        add_into(balanced, other.balanced);
    }
};

inline void check_enumeration(const ModelParams& params, std::size_t cap) {
    if (params.n > cap)
        throw CapacityError("exhaustive enumeration supports n <= " + std::to_string(cap) + ", got " +
                            std::to_string(params.n));
    params.validate();
}

// Tallies every mask in [0, 2^n) and merges the per-worker tallies into one.
// `empty` is an initialized zero tally.
template <class Tally>
Tally enumerate_subsets(const Tally& empty, unsigned threads) {
    const std::uint64_t total = std::uint64_t{1} << empty.n;
    auto states = parallel_blocks<Tally>(total, threads, 1U << 12, [&empty](Tally& t, std::uint64_t mask) {
        if (t.n == 0) t = empty;
        t.add(mask);
    });
    Tally out = empty;
    for (const auto& s : states)
        if (s.n != 0) out.merge(s);
    return out;
}

}  // namespace detail

/// Exact distributional summary of S1 = |A+A| and S2 = |A-A|. n <= 24.
inline ExactLaw exact_law(const ModelParams& params, unsigned threads = 1) {
    detail::check_enumeration(params, kExactLawMaxN);
    const std::size_t n = params.n;
    detail::LawTally empty;
    empty.init(n);
    const detail::LawTally tally = detail::enumerate_subsets(empty, threads);

    const auto weight = detail::cardinality_weights(n, params.p);
    const std::size_t width = 2 * n - 1;
    ExactLaw law;
    law.params = params;
    law.p_sum_hit_by_index.assign(width, 0.0);
    law.p_diff_hit_by_index.assign(width, 0.0);
    double e_s1_sq = 0.0;
    double e_s2_sq = 0.0;
    for (std::size_t c = 0; c <= n; ++c) {
        const double w = weight[c];
        for (std::size_t i = 0; i < width; ++i) {
            law.p_sum_hit_by_index[i] += w * static_cast<double>(tally.sum_hits[c * width + i]);
            law.p_diff_hit_by_index[i] += w * static_cast<double>(tally.diff_hits[c * width + i]);
        }
        law.e_s1 += w * static_cast<double>(tally.s1[c]);
        law.e_s2 += w * static_cast<double>(tally.s2[c]);
        e_s1_sq += w * static_cast<double>(tally.s1_sq[c]);
        e_s2_sq += w * static_cast<double>(tally.s2_sq[c]);
        law.p_diff_dominant += w * static_cast<double>(tally.diff_dom[c]);
        law.p_sum_dominant += w * static_cast<double>(tally.sum_dom[c]);
        law.p_balanced += w * static_cast<double>(tally.balanced[c]);
        law.total_weight += w * detail::binomial(n, c);
    }
    law.var_s1 = std::max(0.0, e_s1_sq - law.e_s1 * law.e_s1);
    law.var_s2 = std::max(0.0, e_s2_sq - law.e_s2 * law.e_s2);
    return law;
}

/// Row-major (2n-1) x (2n-1) matrix of Cov(zeta_i, zeta_k), positions by
/// offset from index_range(family, n).lo.
struct CovarianceMatrix {
    Family family = Family::Sum;
    std::size_t n = 0;
    std::size_t width = 0;
    std::vector<double> values;
    std::vector<double> hit;  // P(zeta_i = 1)

    double at(std::int64_t i, std::int64_t k) const {
        const std::int64_t lo = index_range(family, n).lo;
        return values.at(static_cast<std::size_t>(i - lo) * width + static_cast<std::size_t>(k - lo));
    }
    double hit_at(std::int64_t i) const { return hit.at(static_cast<std::size_t>(i - index_range(family, n).lo)); }
};

namespace detail {

struct JointTally {
    std::size_t n = 0;
    std::size_t width = 0;
    Family family = Family::Sum;
    std::vector<std::uint64_t> joint;  // [card][i][k]
    std::vector<std::uint64_t> single;  // [card][i]

    void init(std::size_t universe, Family which) {
        n = universe;
        family = which;
        width = 2 * n - 1;
        joint.assign((n + 1) * width * width, 0);
        single.assign((n + 1) * width, 0);
    }

    void add(std::uint64_t mask) {
        const auto card = static_cast<std::size_t>(std::popcount(mask));
        const SubsetImage image = subset_image(mask, n);
        const std::uint64_t hits = family == Family::Sum ? image.sums : image.diffs;
        std::uint64_t* row_base = joint.data() + card * width * width;
        for (std::uint64_t a = hits; a != 0; a &= a - 1) {
            const auto i = static_cast<std::size_t>(std::countr_zero(a));
            ++single[card * width + i];
            for (std::uint64_t b = hits; b != 0; b &= b - 1) ++row_base[i * width + static_cast<std::size_t>(std::countr_zero(b))];
        }
    }

    void merge(const JointTally& other) {
        for (std::size_t i = 0; i < joint.size(); ++i) joint[i] += other.joint[i];
        for (std::size_t i = 0; i < single.size(); ++i) single[i] += other.single[i];
    }
};

}  // namespace detail

/// Full covariance matrix of one indicator family. n <= 20.
inline CovarianceMatrix exact_cov_matrix(Family family, const ModelParams& params, unsigned threads = 1) {
    detail::check_enumeration(params, kExactCovMaxN);
    const std::size_t n = params.n;
    detail::JointTally empty;
    empty.init(n, family);
    const detail::JointTally tally = detail::enumerate_subsets(empty, threads);

    const auto weight = detail::cardinality_weights(n, params.p);
    const std::size_t width = 2 * n - 1;
    CovarianceMatrix out;
    out.family = family;
    out.n = n;
    out.width = width;
    out.values.assign(width * width, 0.0);
    out.hit.assign(width, 0.0);
    for (std::size_t c = 0; c <= n; ++c) {
        for (std::size_t i = 0; i < width; ++i) {
            out.hit[i] += weight[c] * static_cast<double>(tally.single[c * width + i]);
            for (std::size_t k = 0; k < width; ++k)
                out.values[i * width + k] += weight[c] * static_cast<double>(tally.joint[(c * width + i) * width + k]);
        }
    }
    for (std::size_t i = 0; i < width; ++i)
        for (std::size_t k = 0; k < width; ++k) out.values[i * width + k] -= out.hit[i] * out.hit[k];
    return out;
}

/// Cov(zeta_i, zeta_k) = P(both hit) - P(zeta_i = 1) P(zeta_k = 1). n <= 20.
inline double exact_cov(std::int64_t i, std::int64_t k, Family family, const ModelParams& params) {
    detail::check_enumeration(params, kExactCovMaxN);
    const IndexRange range = index_range(family, params.n);
    if (!range.contains(i) || !range.contains(k)) throw RangeError("covariance index out of range");
    const std::size_t n = params.n;
    const auto bit_i = static_cast<unsigned>(i - range.lo);
    const auto bit_k = static_cast<unsigned>(k - range.lo);

    std::vector<std::uint64_t> both(n + 1, 0), first(n + 1, 0), second(n + 1, 0);
    const std::uint64_t total = std::uint64_t{1} << n;
    for (std::uint64_t mask = 0; mask < total; ++mask) {
        const auto card = static_cast<std::size_t>(std::popcount(mask));
        const detail::SubsetImage image = detail::subset_image(mask, n);
        const std::uint64_t hits = family == Family::Sum ? image.sums : image.diffs;
        const bool hi = (hits >> bit_i) & 1U;
        const bool hk = (hits >> bit_k) & 1U;
        first[card] += hi;
        second[card] += hk;
        both[card] += hi && hk;
    }
    const auto weight = detail::cardinality_weights(n, params.p);
    double p_both = 0.0, p_first = 0.0, p_second = 0.0;
    for (std::size_t c = 0; c <= n; ++c) {
        p_both += weight[c] * static_cast<double>(both[c]);
        p_first += weight[c] * static_cast<double>(first[c]);
        p_second += weight[c] * static_cast<double>(second[c]);
    }
    return p_both - p_first * p_second;
}

}  // namespace mstd
