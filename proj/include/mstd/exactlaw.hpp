#pragma once

// Exact and asymptotic probability laws of the Bernoulli random-set model:
// each of 0..n-1 is included independently with probability p.
//
// S1 = |A+A| = sum of sum-hit indicators over [0, 2n-2]
// S2 = |A-A| = sum of difference-hit indicators over [-(n-1), n-1]

#include <algorithm>
#include <cmath>
#include <cstddef>
#include <cstdint>
#include <limits>
#include <optional>
#include <string>
#include <vector>

#include "mstd/error.hpp"

namespace mstd {

struct ModelParams {
    std::size_t n = 1;
    double p = 0.0;

    void validate() const {
        if (n == 0) throw ParameterError("n must be positive");
        if (!(p >= 0.0 && p <= 1.0)) throw ParameterError("p must lie in [0, 1], got " + std::to_string(p));
    }
};

/// Which indicator family: sums (zeta_1) or differences (zeta_2).
enum class Family { Sum = 1, Difference = 2 };

struct IndexRange {
    std::int64_t lo;
    std::int64_t hi;
    bool contains(std::int64_t i) const noexcept { return i >= lo && i <= hi; }
};

inline IndexRange index_range(Family family, std::size_t n) noexcept {
    const auto m = static_cast<std::int64_t>(n) - 1;
    return family == Family::Sum ? IndexRange{0, 2 * m} : IndexRange{-m, m};
}

/// (1 - x)^t via exp(t * log1p(-x)); exact 1 at t = 0 and 0 at x = 1.
inline double pow_complement(double x, double t) noexcept {
    if (t == 0.0) return 1.0;
    if (x >= 1.0) return 0.0;
    return std::exp(t * std::log1p(-x));
}

/// t * log(1 - x), with 0 at t = 0 and -inf at x = 1.
inline double log_complement(double x, double t) noexcept {
    if (t == 0.0) return 0.0;
    if (x >= 1.0) return -std::numeric_limits<double>::infinity();
    return t * std::log1p(-x);
}

/// 1 - exp(log_miss), accurate when log_miss is near 0.
inline double hit_from_log_miss(double log_miss) noexcept { return -std::expm1(log_miss); }

/// Number of unordered pairs a < b in [0, n-1] with a + b = i.
inline std::int64_t sum_pair_count(std::int64_t i, std::size_t n) noexcept {
    if (i < 1) return 0;
    const auto m = static_cast<std::int64_t>(n) - 1;
    const std::int64_t lo = std::max<std::int64_t>(0, i - m);
    const std::int64_t hi = (i - 1) / 2;
    return std::max<std::int64_t>(0, hi - lo + 1);
}

/// Exact P(i in A+A). Distinct representing pairs use disjoint indices, so
/// their events are independent.
inline double p_sum_hit(std::int64_t i, const ModelParams& params) {
    params.validate();
    if (!index_range(Family::Sum, params.n).contains(i))
        throw RangeError("sum index " + std::to_string(i) + " out of range");
    const std::int64_t pairs = sum_pair_count(i, params.n);
    const bool has_double = i % 2 == 0;  // i/2 <= n-1 holds for every in-range i
    return hit_from_log_miss(log_complement(params.p, has_double ? 1.0 : 0.0) +
                             log_complement(params.p * params.p, static_cast<double>(pairs)));
}

/// P(no two adjacent ones among L independent Bernoulli(p) bits).
inline double no_adjacent_prob(std::size_t length, double p) {
    if (!(p >= 0.0 && p <= 1.0)) throw ParameterError("p must lie in [0, 1]");
    double prev = 1.0;  // f(L-2)
    double cur = 1.0;   // f(L-1)
    for (std::size_t l = 2; l <= length; ++l) {
        const double next = (1.0 - p) * cur + p * (1.0 - p) * prev;
        prev = cur;
        cur = next;
    }
    return cur;
}

/// f(0..max_length) for no_adjacent_prob.
inline std::vector<double> no_adjacent_table(std::size_t max_length, double p) {
    std::vector<double> f(max_length + 1, 1.0);
    for (std::size_t l = 2; l <= max_length; ++l) f[l] = (1.0 - p) * f[l - 1] + p * (1.0 - p) * f[l - 2];
    return f;
}

/// Lengths of the d residue-class chains r, r+d, r+2d, ... inside [0, n-1].
inline std::vector<std::size_t> residue_chain_lengths(std::size_t d, std::size_t n) {
    std::vector<std::size_t> lengths;
    for (std::size_t r = 0; r < d && r < n; ++r) lengths.push_back((n - r + d - 1) / d);
    return lengths;
}

namespace detail {

// P(d in A-A) for d >= 1. The residue classes mod d split [0, n-1] into
// d chains: n % d of length q+1 and the rest of length q = n / d. Difference
// d is missed iff no chain holds two consecutive members.
inline double diff_hit_from_table(std::size_t d, std::size_t n, const std::vector<double>& f) {
    const std::size_t q = n / d;
    const std::size_t rem = n % d;
    const double miss = std::pow(f[q + 1], static_cast<double>(rem)) * std::pow(f[q], static_cast<double>(d - rem));
    return 1.0 - miss;
}

}  // namespace detail

/// Exact P(i in A-A).
inline double p_diff_hit(std::int64_t i, const ModelParams& params) {
    params.validate();
    if (!index_range(Family::Difference, params.n).contains(i))
        throw RangeError("difference index " + std::to_string(i) + " out of range");
    if (i == 0) return hit_from_log_miss(log_complement(params.p, static_cast<double>(params.n)));
    const auto d = static_cast<std::size_t>(i < 0 ? -i : i);
    const auto f = no_adjacent_table(params.n / d + 1, params.p);
    return detail::diff_hit_from_table(d, params.n, f);
}

inline double hit_probability(Family family, std::int64_t i, const ModelParams& params) {
    return family == Family::Sum ? p_sum_hit(i, params) : p_diff_hit(i, params);
}

struct ExpectationSummary {
    double exact_sum = 0.0;
    double exact_diff = 0.0;
    double asymptotic_sum = 0.0;
    double asymptotic_diff = 0.0;
    double gap = 0.0;  // exact_diff - exact_sum
};

/// 2n - (2 - 2(1-p^2)^{n/2}) / p^2. Requires p > 0.
inline double asymptotic_sum_expectation(const ModelParams& params) {
    const double n = static_cast<double>(params.n);
    const double p2 = params.p * params.p;
    return 2.0 * n - (2.0 - 2.0 * pow_complement(p2, n / 2.0)) / p2;
}

/// 2n - (1 - (1-p^2)^n) / p^2. Requires p > 0.
inline double asymptotic_diff_expectation(const ModelParams& params) {
    const double n = static_cast<double>(params.n);
    const double p2 = params.p * params.p;
    return 2.0 * n - (1.0 - pow_complement(p2, n)) / p2;
}

/// Exact E S1, E S2 by summing hit probabilities (O(n)), plus the closed
/// asymptotic forms. Every field is 0 at p = 0.
inline ExpectationSummary expectation_summary(const ModelParams& params) {
    params.validate();
    ExpectationSummary out;
    if (params.p == 0.0) return out;

    const std::size_t n = params.n;
    const auto top = static_cast<std::int64_t>(2 * n - 2);
    for (std::int64_t i = 0; i <= top; ++i) out.exact_sum += p_sum_hit(i, params);

    const auto f = no_adjacent_table(n + 1, params.p);
    double off_zero = 0.0;
    for (std::size_t d = 1; d < n; ++d) off_zero += detail::diff_hit_from_table(d, n, f);
    out.exact_diff = hit_from_log_miss(log_complement(params.p, static_cast<double>(n))) + 2.0 * off_zero;

    out.asymptotic_sum = asymptotic_sum_expectation(params);
    out.asymptotic_diff = asymptotic_diff_expectation(params);
    out.gap = out.exact_diff - out.exact_sum;
    return out;
}

/// (E S2 - E S1) * p^2 from the exact expectations.
inline double expectation_gap_scaled(const ModelParams& params) {
    params.validate();
    if (params.p == 0.0) throw ParameterError("gap scaling requires p > 0");
    return expectation_summary(params).gap * params.p * params.p;
}

/// Same quantity from the closed forms: (1 - (1-p^2)^{n/2})^2.
inline double asymptotic_gap_scaled(const ModelParams& params) {
    params.validate();
    if (params.p == 0.0) throw ParameterError("gap scaling requires p > 0");
    const double root = 1.0 - pow_complement(params.p * params.p, static_cast<double>(params.n) / 2.0);
    return root * root;
}

namespace detail {

inline void check_pair(Family family, std::int64_t i, std::int64_t k, std::size_t n) {
    if (!(i < k)) throw ParameterError("covariance bound requires i < k");
    const IndexRange range = index_range(family, n);
    if (!range.contains(i) || !range.contains(k)) throw ParameterError("covariance index out of range");
}

}  // namespace detail

/// P(zeta_i = 1)(1 - P(zeta_k = 1)); bounds Cov(zeta_i, zeta_k) since
/// P(both) <= P(zeta_i = 1).
inline double cov_bound_markov(std::int64_t i, std::int64_t k, Family family, const ModelParams& params) {
    params.validate();
    detail::check_pair(family, i, k, params.n);
    return hit_probability(family, i, params) * (1.0 - hit_probability(family, k, params));
}

/// Witness-triple bound for the sum family: i p^3 when k <= n,
/// max(0, i + n - k) p^3 when i <= n < k, i p^3 otherwise.
inline double cov_bound_triple(std::int64_t i, std::int64_t k, const ModelParams& params) {
    params.validate();
    detail::check_pair(Family::Sum, i, k, params.n);
    const auto n = static_cast<std::int64_t>(params.n);
    const double p3 = params.p * params.p * params.p;
    if (i <= n && n < k) return static_cast<double>(std::max<std::int64_t>(0, i + n - k)) * p3;
    return static_cast<double>(i) * p3;
}

struct VarianceBound {
    std::size_t k0 = 0;
    double bound = 0.0;       // k0^3 p^3 + k0 (1-p^2)^k0 / p^4
    double direct_sum = 0.0;  // sum_{k<=n} min(k^2 p^3, k (1-p^2)^k / p^2)
};

/// k0^3 p^3 + k0 (1-p^2)^k0 / p^4.
inline double variance_bound_at(std::size_t k0, double p) {
    const double k = static_cast<double>(k0);
    const double p2 = p * p;
    return k * k * k * p2 * p + k * pow_complement(p2, k) / (p2 * p2);
}

/// k0 = ceil(7 p^-2 ln(1/p)).
inline std::size_t auto_k0(double p) { return static_cast<std::size_t>(std::ceil(7.0 / (p * p) * std::log(1.0 / p))); }

/// Correlation-sum bound for S1. Pass std::nullopt for the automatic k0.
inline VarianceBound variance_bound_total(const ModelParams& params, std::optional<std::size_t> k0 = std::nullopt) {
    params.validate();
    if (!(params.p > 0.0 && params.p < 1.0)) throw ParameterError("variance bound requires 0 < p < 1");
    if (k0 && *k0 == 0) throw ParameterError("k0 must be positive");
    const double p = params.p;
    const double p2 = p * p;

    VarianceBound out;
    out.k0 = k0 ? *k0 : auto_k0(p);
    out.bound = variance_bound_at(out.k0, p);
    for (std::size_t k = 1; k <= params.n; ++k) {
        const double kd = static_cast<double>(k);
        out.direct_sum += std::min(kd * kd * p2 * p, kd * pow_complement(p2, kd) / p2);
    }
    return out;
}

}  // namespace mstd
