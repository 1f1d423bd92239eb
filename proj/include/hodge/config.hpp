#pragma once

#include "hodge/linalg.hpp"

#include <iosfwd>

namespace hodge {

/// Configuration error carrying the offending key.
struct ConfigError : std::runtime_error
{
    explicit ConfigError(const std::string& key, const std::string& what)
        : std::runtime_error("[" + key + "] " + what), key_name(key)
    {
    }
    std::string key_name;
};

/// Parsed and validated run configuration: field descriptor, Gram matrix,
/// degree, top-form value, and run options.
struct RunConfig
{
    FieldPtr field;
    Mat gram;
    int ell = 2;
    Scalar b0;
    std::string suite = "all";
    std::string format = "text";
    bool long_profile = false;
    std::size_t cap = 2000000;
};

/// Sectioned key/value format with [field], [form], [run]; Gram rows are
/// ';'-separated lists of ','-separated exact scalars ("1/2", "t+1", "-5").
RunConfig parse_config_text(const std::string& text);
RunConfig parse_config_file(const std::string& path);

struct CheckRow
{
    std::string id;
    std::string anchor;
    std::string expected;
    std::string actual;
    bool pass = true;
};

struct Report
{
    std::vector<CheckRow> rows;
    bool all_pass() const
    {
        for (const auto& r : rows)
            if (!r.pass) return false;
        return true;
    }
    void add(std::string id, std::string anchor, std::string expected, std::string actual)
    {
        bool ok = expected == actual;
        rows.push_back(CheckRow{std::move(id), std::move(anchor), std::move(expected), std::move(actual), ok});
    }
    void add_flag(std::string id, std::string anchor, bool pass, std::string detail = "")
    {
        rows.push_back(CheckRow{std::move(id), std::move(anchor), "pass",
                                pass ? "pass" : (detail.empty() ? "fail" : detail), pass});
    }
    void note(std::string id, std::string anchor, std::string value)
    {
        rows.push_back(CheckRow{std::move(id), std::move(anchor), "(logged)", std::move(value), true});
    }
};

void print_report(std::ostream& os, const Report& rep, const std::string& format);

/// Named verification suites: hodge-identities, algebra-classify,
/// split-reductions, norm-similarity, geometry, groups, rational-examples,
/// all. Returns the report; exit policy is 0 iff all rows pass.
Report run_suite(const RunConfig& cfg, const std::string& suite);

} // namespace hodge
