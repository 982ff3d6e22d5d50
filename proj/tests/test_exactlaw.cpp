#include <gtest/gtest.h>

#include <cmath>

#include "mstd/exactlaw.hpp"

using namespace mstd;

namespace {

// P(no two adjacent ones) by summing over all 2^L bit patterns.
double no_adjacent_by_enumeration(std::size_t length, double p) {
    double total = 0.0;
    for (std::uint64_t bits = 0; bits < (std::uint64_t{1} << length); ++bits) {
        if ((bits & (bits >> 1)) != 0) continue;
        const int ones = __builtin_popcountll(bits);
        total += std::pow(p, ones) * std::pow(1.0 - p, static_cast<double>(length) - ones);
    }
    return total;
}

const double kPGrid[] = {0.0, 0.05, 0.1, 0.25, 0.5, 0.75, 0.9, 1.0};

}  // namespace

TEST(PSumHit, Examples) {
    for (std::size_t n : {1, 2, 7})
        for (double p : {0.0, 0.3, 1.0}) EXPECT_DOUBLE_EQ(p_sum_hit(0, {n, p}), p);
    EXPECT_DOUBLE_EQ(p_sum_hit(1, {2, 0.5}), 0.25);
    EXPECT_DOUBLE_EQ(p_sum_hit(2, {3, 0.5}), 0.625);
    EXPECT_DOUBLE_EQ(p_sum_hit(3, {4, 0.5}), 0.4375);
}

TEST(PSumHit, Errors) {
    EXPECT_THROW(p_sum_hit(-1, {3, 0.5}), RangeError);
    EXPECT_THROW(p_sum_hit(5, {3, 0.5}), RangeError);
    EXPECT_THROW(p_sum_hit(0, {3, 1.5}), ParameterError);
    EXPECT_THROW(p_sum_hit(0, {0, 0.5}), ParameterError);
}

TEST(SumPairCount, MatchesDirectCount) {
    for (std::size_t n = 1; n <= 20; ++n) {
        for (std::int64_t i = 0; i <= static_cast<std::int64_t>(2 * n - 2); ++i) {
            std::int64_t direct = 0;
            for (std::int64_t a = 0; a < static_cast<std::int64_t>(n); ++a)
                for (std::int64_t b = a + 1; b < static_cast<std::int64_t>(n); ++b) direct += (a + b == i);
            EXPECT_EQ(sum_pair_count(i, n), direct) << "n=" << n << " i=" << i;
        }
    }
}

TEST(NoAdjacentProb, Examples) {
    for (double p : kPGrid) {
        EXPECT_DOUBLE_EQ(no_adjacent_prob(0, p), 1.0);
        EXPECT_DOUBLE_EQ(no_adjacent_prob(1, p), 1.0);
        EXPECT_NEAR(no_adjacent_prob(2, p), 1.0 - p * p, 1e-15);
    }
    EXPECT_DOUBLE_EQ(no_adjacent_prob(3, 0.5), 0.625);
}

TEST(NoAdjacentProb, MatchesEnumeration) {
    for (std::size_t length = 0; length <= 14; ++length)
        for (double p : kPGrid) EXPECT_NEAR(no_adjacent_prob(length, p), no_adjacent_by_enumeration(length, p), 1e-13);
}

TEST(NoAdjacentProb, MonotoneInLengthAndP) {
    for (double p : kPGrid) {
        for (std::size_t length = 1; length < 60; ++length)
            EXPECT_LE(no_adjacent_prob(length + 1, p), no_adjacent_prob(length, p) + 1e-15);
    }
    for (std::size_t length = 0; length < 30; ++length) {
        EXPECT_DOUBLE_EQ(no_adjacent_prob(length, 0.0), 1.0);
        for (std::size_t j = 0; j + 1 < std::size(kPGrid); ++j)
            EXPECT_GE(no_adjacent_prob(length, kPGrid[j]) + 1e-15, no_adjacent_prob(length, kPGrid[j + 1]));
    }
}

TEST(PDiffHit, Examples) {
    EXPECT_DOUBLE_EQ(p_diff_hit(0, {3, 0.5}), 0.875);
    EXPECT_DOUBLE_EQ(p_diff_hit(1, {3, 0.5}), 0.375);
    EXPECT_DOUBLE_EQ(p_diff_hit(2, {3, 0.5}), 0.25);
    for (std::size_t n : {2, 5, 17})
        for (double p : {0.1, 0.5, 0.9}) {
            const auto top = static_cast<std::int64_t>(n - 1);
            EXPECT_NEAR(p_diff_hit(top, {n, p}), p * p, 1e-15);
            EXPECT_NEAR(p_diff_hit(-top, {n, p}), p * p, 1e-15);
        }
}

TEST(PDiffHit, SymmetricAndChainsCoverUniverse) {
    for (std::size_t n = 1; n <= 25; ++n) {
        for (std::int64_t i = 1; i < static_cast<std::int64_t>(n); ++i) {
            EXPECT_EQ(p_diff_hit(i, {n, 0.3}), p_diff_hit(-i, {n, 0.3}));
            std::size_t total = 0;
            for (std::size_t len : residue_chain_lengths(static_cast<std::size_t>(i), n)) total += len;
            EXPECT_EQ(total, n);
        }
    }
    EXPECT_THROW(p_diff_hit(3, {3, 0.5}), RangeError);
    EXPECT_THROW(p_diff_hit(-3, {3, 0.5}), RangeError);
}

TEST(HitProbabilities, NondecreasingInP) {
    for (std::size_t n : {1, 4, 9, 30}) {
        for (std::size_t j = 0; j + 1 < std::size(kPGrid); ++j) {
            const ModelParams lo{n, kPGrid[j]}, hi{n, kPGrid[j + 1]};
            for (std::int64_t i = 0; i <= static_cast<std::int64_t>(2 * n - 2); ++i)
                EXPECT_LE(p_sum_hit(i, lo), p_sum_hit(i, hi) + 1e-15);
            for (std::int64_t i = -static_cast<std::int64_t>(n - 1); i < static_cast<std::int64_t>(n); ++i)
                EXPECT_LE(p_diff_hit(i, lo), p_diff_hit(i, hi) + 1e-15);
        }
    }
}

TEST(ExpectationSummary, Examples) {
    for (double p : {0.3, 0.5, 1.0}) {
        const auto e = expectation_summary({1, p});
        EXPECT_DOUBLE_EQ(e.exact_sum, p);
        EXPECT_EQ(e.exact_diff, e.exact_sum);
        EXPECT_EQ(e.gap, 0.0);
    }
    const auto two = expectation_summary({2, 0.5});
    EXPECT_DOUBLE_EQ(two.exact_sum, 1.25);
    EXPECT_DOUBLE_EQ(two.exact_diff, 1.25);

    const auto big = expectation_summary({1000, 0.2});
    EXPECT_NEAR(big.asymptotic_sum, 1950.0, 1e-6);
    EXPECT_NEAR(big.asymptotic_diff, 1975.0, 1e-6);
    EXPECT_NEAR(big.asymptotic_diff - big.asymptotic_sum, 25.0, 1e-6);
    // Exact sums of hit probabilities, frozen from an independent script.
    EXPECT_NEAR(big.exact_sum, 1911.0000001216206, 1e-8);
    EXPECT_NEAR(big.exact_diff, 1950.9999999657862, 1e-8);
    EXPECT_NEAR(big.gap, big.exact_diff - big.exact_sum, 0.0);
}

TEST(ExpectationSummary, ZeroDensityIsAllZero) {
    const auto e = expectation_summary({50, 0.0});
    EXPECT_EQ(e.exact_sum, 0.0);
    EXPECT_EQ(e.exact_diff, 0.0);
    EXPECT_EQ(e.asymptotic_sum, 0.0);
    EXPECT_EQ(e.asymptotic_diff, 0.0);
    EXPECT_EQ(e.gap, 0.0);
}

TEST(ExpectationSummary, FullDensity) {
    const auto e = expectation_summary({40, 1.0});
    EXPECT_DOUBLE_EQ(e.exact_sum, 79.0);
    EXPECT_DOUBLE_EQ(e.exact_diff, 79.0);
    EXPECT_TRUE(std::isfinite(e.asymptotic_sum));
    EXPECT_TRUE(std::isfinite(e.asymptotic_diff));
}

TEST(ExpectationSummary, WithinRange) {
    for (std::size_t n : {1, 3, 10, 200})
        for (double p : kPGrid) {
            const auto e = expectation_summary({n, p});
            EXPECT_GE(e.exact_sum, 0.0);
            EXPECT_GE(e.exact_diff, 0.0);
            EXPECT_LE(e.exact_sum, 2.0 * static_cast<double>(n) - 1.0 + 1e-9);
            EXPECT_LE(e.exact_diff, 2.0 * static_cast<double>(n) - 1.0 + 1e-9);
        }
}

// The O(1) error terms: for fixed p the distance to the closed forms stays
// bounded as n grows. Once n >> p^-2 it settles to a constant.
TEST(ExpectationSummary, AsymptoticErrorBounded) {
    for (double p : {0.1, 0.2, 0.5}) {
        const auto settle = static_cast<std::size_t>(40.0 / (p * p));
        const auto at_settle = expectation_summary({settle, p});
        const double settled_sum = std::abs(at_settle.exact_sum - at_settle.asymptotic_sum);
        const double settled_diff = std::abs(at_settle.exact_diff - at_settle.asymptotic_diff);
        for (std::size_t n = 50; n <= 51200; n *= 2) {
            const auto e = expectation_summary({n, p});
            const double err_sum = std::abs(e.exact_sum - e.asymptotic_sum);
            const double err_diff = std::abs(e.exact_diff - e.asymptotic_diff);
            EXPECT_LT(err_sum, 2.0 / (p * p) + 2.0) << "n=" << n << " p=" << p;
            EXPECT_LT(err_diff, 1.0 / (p * p) + 2.0) << "n=" << n << " p=" << p;
            if (n >= settle) {
                EXPECT_NEAR(err_sum, settled_sum, 1e-3) << "n=" << n << " p=" << p;
                EXPECT_NEAR(err_diff, settled_diff, 1e-3) << "n=" << n << " p=" << p;
            }
        }
    }
}

TEST(GapScaled, Examples) {
    EXPECT_NEAR(asymptotic_gap_scaled({1000, 0.2}), 1.0, 1e-6);
    EXPECT_NEAR(expectation_gap_scaled({1000, 0.2}), 1.5999999937666234, 1e-9);

    const ModelParams sparse{10000, 2.0 / std::sqrt(10000.0)};
    const double limit = std::pow(1.0 - std::exp(-2.0), 2.0);
    EXPECT_NEAR(asymptotic_gap_scaled(sparse), limit, 0.05 * limit);
    EXPECT_NEAR(expectation_gap_scaled(sparse), 1.4545672558399705, 1e-9);

    EXPECT_DOUBLE_EQ(expectation_gap_scaled({1, 0.4}), 0.0);
    EXPECT_THROW(expectation_gap_scaled({10, 0.0}), ParameterError);
    EXPECT_THROW(asymptotic_gap_scaled({10, 0.0}), ParameterError);
}

TEST(CovBoundMarkov, Examples) {
    EXPECT_DOUBLE_EQ(cov_bound_markov(1, 2, Family::Sum, {3, 0.5}), 0.09375);
    for (Family f : {Family::Sum, Family::Difference}) {
        const auto r = index_range(f, 6);
        for (std::int64_t i = r.lo; i <= r.hi; ++i)
            for (std::int64_t k = i + 1; k <= r.hi; ++k) {
                EXPECT_EQ(cov_bound_markov(i, k, f, {6, 1.0}), 0.0);
                EXPECT_EQ(cov_bound_markov(i, k, f, {6, 0.0}), 0.0);
            }
    }
}

TEST(CovBoundMarkov, Errors) {
    EXPECT_THROW(cov_bound_markov(2, 2, Family::Sum, {3, 0.5}), ParameterError);
    EXPECT_THROW(cov_bound_markov(3, 1, Family::Sum, {3, 0.5}), ParameterError);
    EXPECT_THROW(cov_bound_markov(0, 5, Family::Sum, {3, 0.5}), ParameterError);
    EXPECT_THROW(cov_bound_markov(-3, 0, Family::Difference, {3, 0.5}), ParameterError);
    EXPECT_NO_THROW(cov_bound_markov(-2, 2, Family::Difference, {3, 0.5}));
}

TEST(CovBoundTriple, Examples) {
    EXPECT_NEAR(cov_bound_triple(3, 5, {10, 0.1}), 3e-3, 1e-15);
    const double p = 0.3;
    EXPECT_NEAR(cov_bound_triple(4, 11, {10, p}), 3 * p * p * p, 1e-15);
    EXPECT_EQ(cov_bound_triple(4, 14, {10, p}), 0.0);
    EXPECT_EQ(cov_bound_triple(2, 18, {10, p}), 0.0);
    EXPECT_NEAR(cov_bound_triple(12, 15, {10, p}), 12 * p * p * p, 1e-15);
    EXPECT_THROW(cov_bound_triple(5, 5, {10, p}), ParameterError);
    EXPECT_THROW(cov_bound_triple(-1, 5, {10, p}), ParameterError);
    EXPECT_THROW(cov_bound_triple(1, 19, {10, p}), ParameterError);
}

TEST(VarianceBound, AutoK0) {
    const auto vb = variance_bound_total({100, 0.1});
    EXPECT_EQ(vb.k0, 1612U);
    const double first = 1612.0 * 1612.0 * 1612.0 * 1e-3;
    EXPECT_NEAR(vb.bound - first, 1.4835381834814885, 1e-6);
    EXPECT_GT(vb.direct_sum, 0.0);
}

TEST(VarianceBound, ExplicitK0) {
    const double p = 0.2;
    const auto vb = variance_bound_total({10, p}, 1);
    EXPECT_EQ(vb.k0, 1U);
    EXPECT_NEAR(vb.bound, p * p * p + (1 - p * p) / std::pow(p, 4), 1e-9);
}

TEST(VarianceBound, ScaledBoundDecreases) {
    double last = std::numeric_limits<double>::infinity();
    for (double p : {0.04, 0.02, 0.01}) {
        const double scaled = variance_bound_total({10, p}).bound * std::pow(p, 4);
        EXPECT_LT(scaled, last) << "p=" << p;
        last = scaled;
    }
}

TEST(VarianceBound, DirectSumMatchesLoop) {
    const double p = 0.05;
    const std::size_t n = 3000;
    double expected = 0.0;
    for (std::size_t k = 1; k <= n; ++k) {
        const double kd = static_cast<double>(k);
        expected += std::min(kd * kd * p * p * p, kd * std::pow(1 - p * p, kd) / (p * p));
    }
    EXPECT_NEAR(variance_bound_total({n, p}).direct_sum, expected, 1e-9 * expected);
}

TEST(VarianceBound, Errors) {
    EXPECT_THROW(variance_bound_total({10, 0.0}), ParameterError);
    EXPECT_THROW(variance_bound_total({10, 1.0}), ParameterError);
    EXPECT_THROW(variance_bound_total({10, 0.5}, 0), ParameterError);
}
