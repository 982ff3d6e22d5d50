// mstd: command-line front end for the sum/difference dominance experiments.
//
// Exit codes: 0 ok, 2 usage or parameter error, 3 capacity exceeded, 4 I/O failure.

#include <cstdint>
#include <cstdlib>
#include <fstream>
#include <iostream>
#include <optional>
#include <string>
#include <vector>

#include <CLI11.hpp>

#include "mstd/mstd.hpp"
#include "mstd/report.hpp"

namespace {

constexpr int kExitOk = 0;
constexpr int kExitUsage = 2;
constexpr int kExitCapacity = 3;
constexpr int kExitIo = 4;

constexpr const char* kSeedEnv = "MSTD_SEED";

struct IoError : std::runtime_error {
    using std::runtime_error::runtime_error;
};

struct OutputOptions {
    std::string format = "csv";
    std::string path;  // empty = stdout
};

void emit(const OutputOptions& out, const std::string& text) {
    if (out.path.empty()) {
        std::cout << text << std::flush;
        if (!std::cout) throw IoError("failed writing to stdout");
        return;
    }
    std::ofstream file(out.path, std::ios::binary | std::ios::trunc);
    if (!file) throw IoError("cannot open output file '" + out.path + "'");
    file << text;
    file.flush();
    if (!file) throw IoError("failed writing output file '" + out.path + "'");
}

std::string render(const OutputOptions& out, const std::vector<std::string>& header,
                   const std::vector<mstd::report::Record>& rows) {
    return out.format == "json" ? mstd::report::to_json(rows) : mstd::report::to_csv(header, rows);
}

std::uint64_t parse_seed(const std::string& text) {
    const std::int64_t v = mstd::report::detail::parse_integer(text);
    if (v < 0) throw mstd::ParameterError("seed must be non-negative");
    return static_cast<std::uint64_t>(v);
}

std::uint64_t resolve_seed(const std::optional<std::string>& flag) {
    if (flag) return parse_seed(*flag);
    if (const char* env = std::getenv(kSeedEnv); env != nullptr && *env != '\0') return parse_seed(env);
    return 0;
}

mstd::SamplerKind parse_sampler(const std::string& name) {
    if (name == "bernoulli") return mstd::SamplerKind::Bernoulli;
    if (name == "geometric") return mstd::SamplerKind::Geometric;
    return mstd::SamplerKind::Auto;
}

std::vector<std::size_t> parse_grid(const std::string& text) {
    std::vector<std::size_t> grid;
    for (std::int64_t v : mstd::report::parse_int_list(text)) {
        if (v <= 0) throw mstd::ParameterError("grid values must be positive");
        grid.push_back(static_cast<std::size_t>(v));
    }
    return grid;
}

void add_output_options(CLI::App* cmd, OutputOptions& out) {
    cmd->add_option("--format", out.format, "Output format")->check(CLI::IsMember({"csv", "json"}));
    cmd->add_option("-o,--output", out.path, "Write data to this file instead of stdout");
}

int run_classify(const std::string& literal, std::optional<std::size_t> universe, const std::string& format) {
    const auto elements = mstd::report::parse_int_list(literal);
    std::int64_t top = -1;
    for (std::int64_t e : elements) {
        if (e < 0) throw mstd::ParameterError("set elements must be non-negative");
        top = std::max(top, e);
    }
    const std::size_t n = universe ? *universe : static_cast<std::size_t>(std::max<std::int64_t>(top + 1, 1));
    const mstd::IntSet set = mstd::make_set(elements, n);
    const std::size_t sums = mstd::sumset_size(set);
    const std::size_t diffs = mstd::diffset_size(set);
    const mstd::Dominance dom = mstd::compare_sizes(sums, diffs);

    if (format == "json") {
        mstd::report::Json j = mstd::report::Json::object();
        j["size"] = set.size();
        j["sumset_size"] = sums;
        j["diffset_size"] = diffs;
        j["class"] = std::string(mstd::to_string(dom));
        j["sidon"] = mstd::is_sidon(set);
        j["additive_energy"] = mstd::additive_energy(set);
        std::cout << j.dump(2) << '\n';
    } else {
        std::cout << "set            " << set << '\n'
                  << "size           " << set.size() << '\n'
                  << "sumset_size    " << sums << '\n'
                  << "diffset_size   " << diffs << '\n'
                  << "class          " << dom << '\n'
                  << "sidon          " << (mstd::is_sidon(set) ? "true" : "false") << '\n'
                  << "energy         " << mstd::additive_energy(set) << '\n';
    }
    return kExitOk;
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"Sum and difference dominance of random integer sets"};
    app.require_subcommand(1);

    // classify
    std::string set_literal;
    std::optional<std::size_t> universe;
    std::string classify_format = "text";
    auto* classify = app.add_subcommand("classify", "Sizes of A+A and A-A, dominance class, Sidon test, energy");
    classify->add_option("set", set_literal, "Comma-separated non-negative integers")->required();
    classify->add_option("--n", universe, "Universe size (default: max element + 1)");
    classify->add_option("--format", classify_format)->check(CLI::IsMember({"text", "json"}));

    // shared model/run options
    std::size_t n = 0;
    double p = 0.0;
    std::string schedule_text;
    std::string grid_text;
    std::uint64_t trials = 0;
    std::optional<std::string> seed_flag;
    unsigned threads = 0;
    std::string sampler = "auto";
    std::string mode = "both";
    OutputOptions out;

    auto* expect = app.add_subcommand("expect", "Exact and asymptotic E|A+A|, E|A-A| and their gap");
    expect->add_option("--n", n)->required();
    expect->add_option("--p", p)->required();
    expect->add_option("--mode", mode)->check(CLI::IsMember({"exact", "asymptotic", "both"}));
    add_output_options(expect, out);

    auto* oracle = app.add_subcommand("oracle", "Exact law by enumerating all 2^n subsets (n <= 24)");
    oracle->add_option("--n", n)->required();
    oracle->add_option("--p", p)->required();
    oracle->add_option("--threads", threads, "Worker threads, 0 = auto");
    add_output_options(oracle, out);

    auto add_run_options = [&](CLI::App* cmd) {
        auto* p_opt = cmd->add_option("--p", p, "Fixed inclusion probability");
        auto* s_opt = cmd->add_option("--p-schedule", schedule_text, "Density schedule 'c*n^-alpha'");
        p_opt->excludes(s_opt);
        s_opt->excludes(p_opt);
        cmd->add_option("--trials", trials)->required();
        cmd->add_option("--seed", seed_flag, std::string("Master seed (default: $") + kSeedEnv + " or 0)");
        cmd->add_option("--threads", threads, "Worker threads, 0 = auto");
        cmd->add_option("--sampler", sampler)->check(CLI::IsMember({"auto", "bernoulli", "geometric"}));
        add_output_options(cmd, out);
    };

    auto* mc = app.add_subcommand("mc", "Monte Carlo trials at one universe size");
    mc->add_option("--n", n)->required();
    add_run_options(mc);

    auto* sweep = app.add_subcommand("sweep", "Monte Carlo trials across a grid of universe sizes");
    sweep->add_option("--n-grid", grid_text, "Comma-separated ascending universe sizes")->required();
    add_run_options(sweep);

    auto* hunt = app.add_subcommand("hunt", "Search for sum-dominant sets");
    hunt->add_option("--n", n)->required();
    hunt->add_option("--p", p)->required();
    hunt->add_option("--trials", trials)->required();
    hunt->add_option("--seed", seed_flag, std::string("Master seed (default: $") + kSeedEnv + " or 0)");
    hunt->add_option("--threads", threads, "Worker threads, 0 = auto");
    add_output_options(hunt, out);

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        const int rc = app.exit(e);
        return rc == 0 ? kExitOk : kExitUsage;
    }

    try {
        if (classify->parsed()) return run_classify(set_literal, universe, classify_format);

        if (expect->parsed()) {
            const mstd::ModelParams params{n, p};
            params.validate();
            if (mode != "exact" && p == 0.0) throw mstd::ParameterError("asymptotic forms require p > 0");
            const auto summary = mstd::expectation_summary(params);
            std::vector<mstd::report::Record> rows;
            if (mode != "asymptotic") rows.push_back(mstd::report::expect_record(params, summary, "exact"));
            if (mode != "exact") rows.push_back(mstd::report::expect_record(params, summary, "asymptotic"));
            emit(out, render(out, mstd::report::expect_columns(), rows));
            return kExitOk;
        }

        if (oracle->parsed()) {
            const mstd::ModelParams params{n, p};
            std::cerr << "oracle: n=" << n << " p=" << p << '\n';
            const auto law = mstd::exact_law(params, threads);
            emit(out, render(out, mstd::report::oracle_columns(), {mstd::report::oracle_record(law)}));
            return kExitOk;
        }

        const std::uint64_t seed = resolve_seed(seed_flag);
        const mstd::RunOptions options{threads, parse_sampler(sampler)};

        if (hunt->parsed()) {
            std::cerr << "hunt: n=" << n << " p=" << p << " trials=" << trials << " seed=" << seed << '\n';
            const auto result = mstd::sum_dominant_hunt({n, p}, trials, seed, options);
            emit(out, render(out, mstd::report::hunt_columns(), {mstd::report::hunt_record(result)}));
            return kExitOk;
        }

        const bool has_p = !(mc->parsed() ? mc : sweep)->get_option("--p")->empty();
        if (has_p == !schedule_text.empty())
            throw mstd::ParameterError("exactly one of --p or --p-schedule is required");
        std::optional<mstd::DensitySchedule> schedule;
        if (!has_p) schedule = mstd::report::parse_schedule(schedule_text);

        std::vector<mstd::report::Record> rows;
        if (mc->parsed()) {
            const mstd::ModelParams params{n, schedule ? schedule->p(n) : p};
            std::cerr << "mc: n=" << n << " p=" << params.p << " trials=" << trials << " seed=" << seed << '\n';
            rows.push_back(mstd::report::trial_record(mstd::run_trials(params, trials, seed, options)));
        } else {
            const auto grid = parse_grid(grid_text);
            std::cerr << "sweep: " << grid.size() << " grid points, trials=" << trials << " seed=" << seed << '\n';
            const auto stats = schedule ? mstd::sweep(*schedule, grid, trials, seed, options)
                                        : mstd::sweep_fixed(p, grid, trials, seed, options);
            for (const auto& s : stats) rows.push_back(mstd::report::trial_record(s));
        }
        // A zero-trial run has no meaningful record: header only.
        if (trials == 0) rows.clear();
        emit(out, render(out, mstd::report::trial_columns(), rows));
        return kExitOk;
    } catch (const mstd::CapacityError& e) {
        std::cerr << "error: " << e.what() << '\n';
        return kExitCapacity;
    } catch (const IoError& e) {
        std::cerr << "error: " << e.what() << '\n';
        return kExitIo;
    } catch (const std::invalid_argument& e) {
        std::cerr << "error: " << e.what() << '\n';
        return kExitUsage;
    } catch (const std::out_of_range& e) {
        std::cerr << "error: " << e.what() << '\n';
        return kExitUsage;
    }
}
