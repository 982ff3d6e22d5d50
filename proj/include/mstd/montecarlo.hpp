#pragma once

// Seeded Monte Carlo experiments on the Bernoulli random-set model.
//
// Trial t of a run with master seed s draws from CounterStream(derive_key(s, t)),
// and every aggregate is an exact integer tally, so results are identical for
// any thread count and any scheduling of trials.

#include <algorithm>
#include <cmath>
#include <cstddef>
#include <cstdint>
#include <string>
#include <vector>

#include "mstd/error.hpp"
#include "mstd/exactlaw.hpp"
#include "mstd/moments.hpp"
#include "mstd/parallel.hpp"
#include "mstd/rng.hpp"
#include "mstd/setcore.hpp"

namespace mstd {

/// p(n) = min(1, c * n^-alpha) with c > 0, alpha in (0, 1).
struct DensitySchedule {
    double c = 1.0;
    double alpha = 0.5;

    void validate() const {
        if (!(c > 0.0) || !std::isfinite(c)) throw ParameterError("schedule constant c must be positive");
        if (!(alpha > 0.0 && alpha < 1.0)) throw ParameterError("schedule exponent alpha must lie in (0, 1)");
    }

    double p(std::size_t n) const { return std::min(1.0, c * std::pow(static_cast<double>(n), -alpha)); }
};

enum class SamplerKind {
    Auto,       // Geometric below kGeometricThreshold, Bernoulli otherwise
    Bernoulli,  // one uniform draw per index
    Geometric,  // jump between members with Geometric(p) gaps
};

inline constexpr double kGeometricThreshold = 0.1;

struct RunOptions {
    unsigned threads = 1;  // 0 = one per hardware thread
    SamplerKind sampler = SamplerKind::Auto;
};

inline IntSet sample_bernoulli(const ModelParams& params, CounterStream& stream) {
    IntSet set(params.n);
    for (std::size_t i = 0; i < params.n; ++i)
        if (stream.uniform() < params.p) set.insert(static_cast<std::int64_t>(i));
    return set;
}

inline IntSet sample_geometric(const ModelParams& params, CounterStream& stream) {
    IntSet set(params.n);
    if (params.p <= 0.0) return set;
    if (params.p >= 1.0) {
        for (std::size_t i = 0; i < params.n; ++i) set.insert(static_cast<std::int64_t>(i));
        return set;
    }
    const double log_q = std::log1p(-params.p);
    const auto n = static_cast<double>(params.n);
    double pos = -1.0;
    for (;;) {
        // Number of misses before the next hit.
        const double skip = std::floor(std::log(stream.uniform_open_zero()) / log_q);
        pos += skip + 1.0;
        if (pos >= n) break;
        set.insert(static_cast<std::int64_t>(pos));
    }
    return set;
}

/// Each index of [0, n-1] joins independently with probability p.
inline IntSet sample(const ModelParams& params, CounterStream& stream, SamplerKind kind = SamplerKind::Auto) {
    params.validate();
    if (kind == SamplerKind::Auto) kind = params.p < kGeometricThreshold ? SamplerKind::Geometric : SamplerKind::Bernoulli;
    return kind == SamplerKind::Geometric ? sample_geometric(params, stream) : sample_bernoulli(params, stream);
}

struct TrialStats {
    ModelParams params;
    std::uint64_t trials = 0;
    std::uint64_t count_diff_dominant = 0;
    std::uint64_t count_sum_dominant = 0;
    std::uint64_t count_balanced = 0;
    std::uint64_t count_sidon = 0;
    std::uint64_t count_sidon_not_diff_dominant = 0;  // Sidon samples with k >= 3 that fail difference dominance
    double mean_s1 = 0.0, var_s1 = 0.0;
    double mean_s2 = 0.0, var_s2 = 0.0;
    double mean_card = 0.0, var_card = 0.0;
    std::uint64_t master_seed = 0;

    double fraction(std::uint64_t count) const noexcept {
        return trials == 0 ? 0.0 : static_cast<double>(count) / static_cast<double>(trials);
    }
    double frac_diff_dominant() const noexcept { return fraction(count_diff_dominant); }
    double frac_sum_dominant() const noexcept { return fraction(count_sum_dominant); }
    double frac_balanced() const noexcept { return fraction(count_balanced); }
    double frac_sidon() const noexcept { return fraction(count_sidon); }
};

/// One sampled trial, fully evaluated.
struct TrialOutcome {
    IntSet set;
    std::size_t sum_size;
    std::size_t diff_size;
    Dominance dominance;
};

inline TrialOutcome run_one_trial(const ModelParams& params, std::uint64_t master_seed, std::uint64_t trial_index,
                                  SamplerKind kind) {
    CounterStream stream(derive_key(master_seed, trial_index));
    IntSet set = sample(params, stream, kind);
    const std::size_t sum_size = sumset_size(set);
    const std::size_t diff_size = diffset_size(set);
    return {std::move(set), sum_size, diff_size, compare_sizes(sum_size, diff_size)};
}

namespace detail {

struct TrialTally {
    std::uint64_t diff_dom = 0, sum_dom = 0, balanced = 0, sidon = 0, sidon_bad = 0;
    IntegerMoments s1, s2, card;

    void add(const TrialOutcome& t) {
        switch (t.dominance) {
            case Dominance::DifferenceDominant: ++diff_dom; break;
            case Dominance::SumDominant: ++sum_dom; break;
            case Dominance::Balanced: ++balanced; break;
        }
        const std::size_t k = t.set.size();
        if (is_sidon(t.set)) {
            ++sidon;
            if (k >= 3 && t.dominance != Dominance::DifferenceDominant) ++sidon_bad;
        }
        s1.add(t.sum_size);
        s2.add(t.diff_size);
        card.add(k);
    }

    void merge(const TrialTally& o) {
        diff_dom += o.diff_dom;
        sum_dom += o.sum_dom;
        balanced += o.balanced;
        sidon += o.sidon;
        sidon_bad += o.sidon_bad;
        s1.merge(o.s1);
        s2.merge(o.s2);
        card.merge(o.card);
    }
};

inline constexpr std::uint64_t kTrialBlock = 256;

}  // namespace detail

/// Runs `trials` independent samples and aggregates S1 = |A+A|, S2 = |A-A|, |A|.
inline TrialStats run_trials(const ModelParams& params, std::uint64_t trials, std::uint64_t master_seed,
                             const RunOptions& options = {}) {
    params.validate();
    auto states = parallel_blocks<detail::TrialTally>(
        trials, options.threads, detail::kTrialBlock, [&](detail::TrialTally& tally, std::uint64_t t) {
            tally.add(run_one_trial(params, master_seed, t, options.sampler));
        });
    detail::TrialTally total;
    for (const auto& s : states) total.merge(s);

    TrialStats out;
    out.params = params;
    out.trials = trials;
    out.master_seed = master_seed;
    out.count_diff_dominant = total.diff_dom;
    out.count_sum_dominant = total.sum_dom;
    out.count_balanced = total.balanced;
    out.count_sidon = total.sidon;
    out.count_sidon_not_diff_dominant = total.sidon_bad;
    out.mean_s1 = total.s1.mean();
    out.var_s1 = total.s1.variance();
    out.mean_s2 = total.s2.mean();
    out.var_s2 = total.s2.variance();
    out.mean_card = total.card.mean();
    out.var_card = total.card.variance();
    return out;
}

namespace detail {

template <class PofN>
std::vector<TrialStats> sweep_with(PofN p_of_n, const std::vector<std::size_t>& n_grid, std::uint64_t trials,
                                   std::uint64_t master_seed, const RunOptions& options) {
    if (n_grid.empty()) throw ParameterError("sweep grid must be nonempty");
    if (!std::is_sorted(n_grid.begin(), n_grid.end()) ||
        std::adjacent_find(n_grid.begin(), n_grid.end()) != n_grid.end())
        throw ParameterError("sweep grid must be strictly ascending");
    std::vector<TrialStats> out;
    out.reserve(n_grid.size());
    for (std::size_t n : n_grid) {
        const ModelParams params{n, p_of_n(n)};
        out.push_back(run_trials(params, trials, derive_key(master_seed, n), options));
    }
    return out;
}

}  // namespace detail

/// One run per grid point with p = schedule.p(n); the run for n is seeded
/// with derive_key(master_seed, n).
inline std::vector<TrialStats> sweep(const DensitySchedule& schedule, const std::vector<std::size_t>& n_grid,
                                     std::uint64_t trials, std::uint64_t master_seed, const RunOptions& options = {}) {
    schedule.validate();
    return detail::sweep_with([&](std::size_t n) { return schedule.p(n); }, n_grid, trials, master_seed, options);
}

/// Sweep with the same p at every grid point.
inline std::vector<TrialStats> sweep_fixed(double p, const std::vector<std::size_t>& n_grid, std::uint64_t trials,
                                           std::uint64_t master_seed, const RunOptions& options = {}) {
    return detail::sweep_with([p](std::size_t) { return p; }, n_grid, trials, master_seed, options);
}

inline constexpr std::size_t kWitnessCap = 100;

struct Witness {
    std::uint64_t trial_index;
    IntSet set;
};

struct HuntResult {
    ModelParams params;
    std::uint64_t trials = 0;
    std::uint64_t count_sum_dominant = 0;
    double fraction = 0.0;
    std::vector<Witness> witnesses;  // lowest trial indices first, at most kWitnessCap
    bool capped = false;             // more sum-dominant sets were found than kept
    std::uint64_t master_seed = 0;
};

/// Counts sum-dominant samples and keeps the first kWitnessCap of them by
/// trial index. Trial t is the same sample run_trials draws for index t.
inline HuntResult sum_dominant_hunt(const ModelParams& params, std::uint64_t trials, std::uint64_t master_seed,
                                    const RunOptions& options = {}) {
    params.validate();
    struct HuntTally {
        std::uint64_t count = 0;
        std::vector<Witness> found;
    };
    // Each worker sees its trial indices in ascending order, so its first
    // kWitnessCap finds contain every global front-runner it owns.
    auto states = parallel_blocks<HuntTally>(trials, options.threads, detail::kTrialBlock,
                                             [&](HuntTally& tally, std::uint64_t t) {
                                                 TrialOutcome outcome = run_one_trial(params, master_seed, t, options.sampler);
                                                 if (outcome.dominance != Dominance::SumDominant) return;
                                                 ++tally.count;
                                                 if (tally.found.size() < kWitnessCap)
                                                     tally.found.push_back({t, std::move(outcome.set)});
                                             });
    HuntResult out;
    out.params = params;
    out.trials = trials;
    out.master_seed = master_seed;
    for (auto& s : states) {
        out.count_sum_dominant += s.count;
        for (auto& w : s.found) out.witnesses.push_back(std::move(w));
    }
    std::sort(out.witnesses.begin(), out.witnesses.end(),
              [](const Witness& a, const Witness& b) { return a.trial_index < b.trial_index; });
    if (out.witnesses.size() > kWitnessCap) out.witnesses.erase(out.witnesses.begin() + kWitnessCap, out.witnesses.end());
    out.capped = out.count_sum_dominant > out.witnesses.size();
    out.fraction = trials == 0 ? 0.0 : static_cast<double>(out.count_sum_dominant) / static_cast<double>(trials);
    return out;
}

}  // namespace mstd
