#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include "hodge/suites.hpp"

#include <sstream>

using namespace hodge;

namespace {

const char* F9_CFG = R"(
[field]
kind = finite
order = 9
involution = galois

[form]
gram = 1,0,0,0; 0,2,0,0; 0,0,1,0; 0,0,0,2
ell = 2
b0 = 1

[run]
suite = algebra-classify
format = csv
)";

} // namespace

TEST_CASE("config parsing")
{
    RunConfig cfg = parse_config_text(F9_CFG);
    CHECK(cfg.field->order() == 9);
    CHECK(cfg.field->galois());
    CHECK(cfg.ell == 2);
    CHECK(cfg.b0.is_one());
    CHECK(cfg.suite == "algebra-classify");
    CHECK(cfg.format == "csv");
    CHECK(cfg.gram.at(1, 1) == cfg.field->from_int(2));
}

TEST_CASE("config errors name the offending key")
{
    auto expect_key = [](const std::string& text, const std::string& key) {
        try {
            parse_config_text(text);
            FAIL_CHECK("expected ConfigError for " << key);
        } catch (const ConfigError& e) {
            CHECK(e.key_name == key);
        }
    };
    expect_key("[form]\ngram = 1\n", "field.kind");
    expect_key("[field]\nkind = finite\n", "field.order");
    expect_key("[field]\nkind = finite\norder = 4\ninvolution = weird\n", "field.involution");
    expect_key("[field]\nkind = rational\n", "form.gram");
    expect_key("[field]\nkind = rational\n[form]\ngram = 1,0; 0\n", "form.gram");
    expect_key("[field]\nkind = rational\n[form]\ngram = 1,0; 0,1\nell = 7\n", "form.ell");
    expect_key("[field]\nkind = rational\n[form]\ngram = 1,0; 0,1\nb0 = 0\n", "form.b0");
    expect_key("[field]\nkind = rational\n[form]\ngram = 1,0; 0,1\n[run]\nformat = yaml\n", "run.format");
    // singular gram is a config error as well
    expect_key("[field]\nkind = rational\n[form]\ngram = 1,0; 0,0\n", "form.gram");
}

TEST_CASE("unknown suite is rejected")
{
    RunConfig cfg = parse_config_text(F9_CFG);
    CHECK_THROWS_AS(run_suite(cfg, "no-such-suite"), ConfigError);
}

TEST_CASE("classify suite rows")
{
    RunConfig cfg = parse_config_text(F9_CFG);
    Report rep = run_suite(cfg, "algebra-classify");
    CHECK(rep.all_pass());
    bool found_kind = false;
    for (const auto& r : rep.rows)
        if (r.id == "config-kind") {
            found_kind = true;
            CHECK(r.actual == "split quaternion algebra over R");
        }
    CHECK(found_kind);
}

TEST_CASE("reports are byte-identical across runs")
{
    RunConfig cfg = parse_config_text(F9_CFG);
    auto render = [&cfg](const std::string& fmt) {
        Report rep = run_suite(cfg, "algebra-classify");
        std::ostringstream os;
        print_report(os, rep, fmt);
        return os.str();
    };
    for (const std::string fmt : {"text", "csv", "json-lines"}) {
        std::string a = render(fmt);
        std::string b = render(fmt);
        CHECK(a == b);
        CHECK_FALSE(a.empty());
    }
    // every row carries an anchor string
    Report rep = run_suite(cfg, "algebra-classify");
    for (const auto& r : rep.rows) CHECK_FALSE(r.anchor.empty());
}

TEST_CASE("csv field quoting")
{
    Report rep;
    rep.add("id", "anchor, with comma", "a", "a");
    std::ostringstream os;
    print_report(os, rep, "csv");
    CHECK(os.str().find("\"anchor, with comma\"") != std::string::npos);
}

TEST_CASE("rational-examples suite is self-contained")
{
    RunConfig cfg = parse_config_text(F9_CFG);
    Report rep = run_suite(cfg, "rational-examples");
    CHECK(rep.all_pass());
    bool logged = false;
    for (const auto& r : rep.rows)
        if (r.id == "rational-h2-gww-claimed") {
            logged = true;
            CHECK(r.actual.find("mismatch") != std::string::npos);
        }
    CHECK(logged);
}
