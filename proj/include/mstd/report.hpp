#pragma once

// Machine-readable records for the command-line front end.
//
// CSV floats use "%.17g", which round-trips every double. JSON records carry
// the same keys, in the same order, as the CSV columns.

#include <cerrno>
#include <cstdint>
#include <cstdio>
#include <cstdlib>
#include <string>
#include <string_view>
#include <vector>

#include <json.hpp>

#include "mstd/error.hpp"
#include "mstd/exactlaw.hpp"
#include "mstd/montecarlo.hpp"
#include "mstd/oracle.hpp"

namespace mstd::report {

using Json = nlohmann::ordered_json;

inline std::string format_double(double value) {
    char buf[32];
    std::snprintf(buf, sizeof buf, "%.17g", value);
    return buf;
}

/// A column value: either a double, an unsigned integer, or text.
struct Cell {
    enum class Kind { Real, Unsigned, Text } kind;
    double real = 0.0;
    std::uint64_t whole = 0;
    std::string text;

    static Cell of(double v) { return {Kind::Real, v, 0, {}}; }
    static Cell of(std::uint64_t v) { return {Kind::Unsigned, 0.0, v, {}}; }
    static Cell of(std::string v) { return {Kind::Text, 0.0, 0, std::move(v)}; }

    std::string csv() const {
        switch (kind) {
            case Kind::Real: return format_double(real);
            case Kind::Unsigned: return std::to_string(whole);
            case Kind::Text: return '"' + text + '"';
        }
        return {};
    }
    Json json() const {
        switch (kind) {
            case Kind::Real: return real;
            case Kind::Unsigned: return whole;
            case Kind::Text: return text;
        }
        return nullptr;
    }
};

struct Record {
    std::vector<std::pair<std::string, Cell>> fields;

    Record& add(std::string key, Cell cell) {
        fields.emplace_back(std::move(key), std::move(cell));
        return *this;
    }
};

inline std::string to_csv(const std::vector<std::string>& header, const std::vector<Record>& rows) {
    std::string out;
    for (std::size_t i = 0; i < header.size(); ++i) out += (i ? "," : "") + header[i];
    out += '\n';
    for (const auto& row : rows) {
        for (std::size_t i = 0; i < row.fields.size(); ++i) out += (i ? "," : "") + row.fields[i].second.csv();
        out += '\n';
    }
    return out;
}

inline Json to_json_object(const Record& row) {
    Json obj = Json::object();
    for (const auto& [key, cell] : row.fields) obj[key] = cell.json();
    return obj;
}

inline std::string to_json(const std::vector<Record>& rows) {
    Json arr = Json::array();
    for (const auto& row : rows) arr.push_back(to_json_object(row));
    return arr.dump(2) + '\n';
}

inline const std::vector<std::string>& trial_columns() {
    static const std::vector<std::string> cols = {"n",       "p",      "trials",  "frac_diff_dom", "frac_sum_dom",
                                                  "frac_balanced", "mean_s1", "var_s1", "mean_s2", "var_s2",
                                                  "mean_card", "var_card", "seed"};
    return cols;
}

inline Record trial_record(const TrialStats& s) {
    Record r;
    r.add("n", Cell::of(std::uint64_t{s.params.n}))
        .add("p", Cell::of(s.params.p))
        .add("trials", Cell::of(s.trials))
        .add("frac_diff_dom", Cell::of(s.frac_diff_dominant()))
        .add("frac_sum_dom", Cell::of(s.frac_sum_dominant()))
        .add("frac_balanced", Cell::of(s.frac_balanced()))
        .add("mean_s1", Cell::of(s.mean_s1))
        .add("var_s1", Cell::of(s.var_s1))
        .add("mean_s2", Cell::of(s.mean_s2))
        .add("var_s2", Cell::of(s.var_s2))
        .add("mean_card", Cell::of(s.mean_card))
        .add("var_card", Cell::of(s.var_card))
        .add("seed", Cell::of(s.master_seed));
    return r;
}

inline const std::vector<std::string>& oracle_columns() {
    static const std::vector<std::string> cols = {"n",      "p",      "e_s1",       "e_s2",      "var_s1",
                                                  "var_s2", "p_diff_dom", "p_sum_dom", "p_balanced"};
    return cols;
}

inline Record oracle_record(const ExactLaw& law) {
    Record r;
    r.add("n", Cell::of(std::uint64_t{law.params.n}))
        .add("p", Cell::of(law.params.p))
        .add("e_s1", Cell::of(law.e_s1))
        .add("e_s2", Cell::of(law.e_s2))
        .add("var_s1", Cell::of(law.var_s1))
        .add("var_s2", Cell::of(law.var_s2))
        .add("p_diff_dom", Cell::of(law.p_diff_dominant))
        .add("p_sum_dom", Cell::of(law.p_sum_dominant))
        .add("p_balanced", Cell::of(law.p_balanced));
    return r;
}

inline const std::vector<std::string>& expect_columns() {
    static const std::vector<std::string> cols = {"n", "p", "mode", "e_s1", "e_s2", "gap", "gap_scaled"};
    return cols;
}

/// mode is "exact" or "asymptotic".
inline Record expect_record(const ModelParams& params, const ExpectationSummary& e, std::string_view mode) {
    const bool exact = mode == "exact";
    const double s1 = exact ? e.exact_sum : e.asymptotic_sum;
    const double s2 = exact ? e.exact_diff : e.asymptotic_diff;
    Record r;
    r.add("n", Cell::of(std::uint64_t{params.n}))
        .add("p", Cell::of(params.p))
        .add("mode", Cell::of(std::string(mode)))
        .add("e_s1", Cell::of(s1))
        .add("e_s2", Cell::of(s2))
        .add("gap", Cell::of(s2 - s1))
        .add("gap_scaled", Cell::of((s2 - s1) * params.p * params.p));
    return r;
}

inline const std::vector<std::string>& hunt_columns() {
    static const std::vector<std::string> cols = {"n",         "p",       "trials", "count_sum_dom", "frac_sum_dom",
                                                  "witnesses", "capped", "seed",   "witness_sets"};
    return cols;
}

/// witness_sets: witnesses separated by ';', members by spaces.
inline Record hunt_record(const HuntResult& h) {
    std::string sets;
    for (std::size_t i = 0; i < h.witnesses.size(); ++i) {
        if (i) sets += ';';
        bool first = true;
        h.witnesses[i].set.for_each([&](std::size_t v) {
            if (!first) sets += ' ';
            sets += std::to_string(v);
            first = false;
        });
    }
    Record r;
    r.add("n", Cell::of(std::uint64_t{h.params.n}))
        .add("p", Cell::of(h.params.p))
        .add("trials", Cell::of(h.trials))
        .add("count_sum_dom", Cell::of(h.count_sum_dominant))
        .add("frac_sum_dom", Cell::of(h.fraction))
        .add("witnesses", Cell::of(std::uint64_t{h.witnesses.size()}))
        .add("capped", Cell::of(std::uint64_t{h.capped ? 1U : 0U}))
        .add("seed", Cell::of(h.master_seed))
        .add("witness_sets", Cell::of(sets));
    return r;
}

namespace detail {

inline std::string_view trim(std::string_view s) {
    while (!s.empty() && (s.front() == ' ' || s.front() == '\t')) s.remove_prefix(1);
    while (!s.empty() && (s.back() == ' ' || s.back() == '\t')) s.remove_suffix(1);
    return s;
}

inline double parse_real(std::string_view text, const char* what) {
    const std::string buf(trim(text));
    char* end = nullptr;
    errno = 0;
    const double v = std::strtod(buf.c_str(), &end);
    if (buf.empty() || end != buf.c_str() + buf.size() || errno == ERANGE)
        throw ParameterError(std::string("malformed ") + what + ": '" + buf + "'");
    return v;
}

inline std::int64_t parse_integer(std::string_view text) {
    const std::string buf(trim(text));
    char* end = nullptr;
    errno = 0;
    const long long v = std::strtoll(buf.c_str(), &end, 10);
    if (buf.empty() || end != buf.c_str() + buf.size() || errno == ERANGE)
        throw ParameterError("malformed integer: '" + buf + "'");
    return v;
}

}  // namespace detail

/// "0,2,3" -> {0, 2, 3}. Empty text is the empty list.
inline std::vector<std::int64_t> parse_int_list(std::string_view text) {
    std::vector<std::int64_t> out;
    if (detail::trim(text).empty()) return out;
    std::size_t start = 0;
    for (;;) {
        const std::size_t comma = text.find(',', start);
        out.push_back(detail::parse_integer(text.substr(start, comma - start)));
        if (comma == std::string_view::npos) break;
        start = comma + 1;
    }
    return out;
}

/// "c*n^-alpha", e.g. "1*n^-0.6" or "2.5 * n^-0.5".
inline DensitySchedule parse_schedule(std::string_view text) {
    const std::string_view marker = "*n^-";
    std::string compact;
    for (char ch : text)
        if (ch != ' ') compact += ch;
    const std::size_t at = compact.find(marker);
    if (at == std::string::npos) throw ParameterError("schedule must look like 'c*n^-alpha', got '" + std::string(text) + "'");
    DensitySchedule s;
    s.c = detail::parse_real(std::string_view(compact).substr(0, at), "schedule constant");
    s.alpha = detail::parse_real(std::string_view(compact).substr(at + marker.size()), "schedule exponent");
    s.validate();
    return s;
}

}  // namespace mstd::report
