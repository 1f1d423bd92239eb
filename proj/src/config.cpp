#include "hodge/config.hpp"

#include "hodge/forms.hpp"

#include <json.hpp>

#include <fstream>
#include <map>
#include <sstream>

namespace hodge {

namespace {

std::string trim(const std::string& s)
{
    std::size_t b = s.find_first_not_of(" \t\r\n");
    if (b == std::string::npos) return "";
    std::size_t e = s.find_last_not_of(" \t\r\n");
    return s.substr(b, e - b + 1);
}

} // namespace

RunConfig parse_config_text(const std::string& text)
{
    std::map<std::string, std::string> kv;
    std::string section;
    std::istringstream in(text);
    std::string line;
    while (std::getline(in, line)) {
        std::size_t hash = line.find('#');
        if (hash != std::string::npos) line = line.substr(0, hash);
        line = trim(line);
        if (line.empty()) continue;
        if (line.front() == '[' && line.back() == ']') {
            section = trim(line.substr(1, line.size() - 2));
            continue;
        }
        std::size_t eq = line.find('=');
        if (eq == std::string::npos) throw ConfigError(section.empty() ? line : section, "expected key = value");
        kv[section + "." + trim(line.substr(0, eq))] = trim(line.substr(eq + 1));
    }

    auto get = [&](const std::string& key) -> std::optional<std::string> {
        auto it = kv.find(key);
        if (it == kv.end()) return std::nullopt;
        return it->second;
    };

    RunConfig cfg;
    std::string kind = get("field.kind").value_or("");
    if (kind.empty()) throw ConfigError("field.kind", "missing (finite | rational | rational-quadratic)");
    std::string inv = get("field.involution").value_or("identity");
    Involution invk;
    if (inv == "identity")
        invk = Involution::Identity;
    else if (inv == "galois")
        invk = Involution::Galois;
    else
        throw ConfigError("field.involution", "must be identity or galois, got '" + inv + "'");

    try {
        if (kind == "finite") {
            auto order = get("field.order");
            if (!order) throw ConfigError("field.order", "missing for finite fields");
            cfg.field = Field::finite(std::stol(*order), invk);
        } else if (kind == "rational") {
            if (invk != Involution::Identity) throw ConfigError("field.involution", "Q has no galois involution");
            cfg.field = Field::rationals();
        } else if (kind == "rational-quadratic") {
            auto d = get("field.discriminant");
            if (!d) throw ConfigError("field.discriminant", "missing for rational-quadratic fields");
            auto qf = Field::rationals();
            cfg.field = Field::rational_quadratic(qf->parse(*d).rat0(), invk);
        } else {
            throw ConfigError("field.kind", "unknown kind '" + kind + "'");
        }
    } catch (const ConfigError&) {
        throw;
    } catch (const std::exception& e) {
        throw ConfigError("field", e.what());
    }

    auto gram = get("form.gram");
    if (!gram) throw ConfigError("form.gram", "missing");
    std::vector<std::vector<Scalar>> rows;
    std::istringstream rs(*gram);
    std::string rowtext;
    while (std::getline(rs, rowtext, ';')) {
        rowtext = trim(rowtext);
        if (rowtext.empty()) continue;
        std::vector<Scalar> row;
        std::istringstream es(rowtext);
        std::string etext;
        while (std::getline(es, etext, ',')) {
            try {
                row.push_back(cfg.field->parse(trim(etext)));
            } catch (const std::exception& e) {
                throw ConfigError("form.gram", std::string("bad entry '") + trim(etext) + "': " + e.what());
            }
        }
        rows.push_back(std::move(row));
    }
    if (rows.empty()) throw ConfigError("form.gram", "empty matrix");
    int n = static_cast<int>(rows.size());
    cfg.gram = Mat(cfg.field, n, n);
    for (int i = 0; i < n; ++i) {
        if (static_cast<int>(rows[static_cast<std::size_t>(i)].size()) != n)
            throw ConfigError("form.gram", "matrix is not square");
        for (int j = 0; j < n; ++j) cfg.gram.at(i, j) = rows[static_cast<std::size_t>(i)][static_cast<std::size_t>(j)];
    }

    if (auto ell = get("form.ell")) {
        try {
            cfg.ell = std::stoi(*ell);
        } catch (const std::exception&) {
            throw ConfigError("form.ell", "not an integer: '" + *ell + "'");
        }
    }
    if (cfg.ell < 0 || cfg.ell > n) throw ConfigError("form.ell", "degree out of range");
    cfg.b0 = cfg.field->one();
    if (auto b0 = get("form.b0")) {
        try {
            cfg.b0 = cfg.field->parse(*b0);
        } catch (const std::exception& e) {
            throw ConfigError("form.b0", e.what());
        }
        if (cfg.b0.is_zero()) throw ConfigError("form.b0", "must be nonzero");
    }

    if (auto s = get("run.suite")) cfg.suite = *s;
    if (auto f = get("run.format")) cfg.format = *f;
    if (cfg.format != "text" && cfg.format != "csv" && cfg.format != "json-lines")
        throw ConfigError("run.format", "must be text, csv or json-lines");
    if (auto l = get("run.long")) cfg.long_profile = *l == "true" || *l == "1";
    if (auto c = get("run.cap")) {
        try {
            cfg.cap = static_cast<std::size_t>(std::stoull(*c));
        } catch (const std::exception&) {
            throw ConfigError("run.cap", "not an integer: '" + *c + "'");
        }
    }

    // validate the form itself (named as a config failure)
    try {
        HermitianSpace probe(cfg.field, cfg.gram);
    } catch (const std::exception& e) {
        throw ConfigError("form.gram", e.what());
    }
    return cfg;
}

RunConfig parse_config_file(const std::string& path)
{
    std::ifstream in(path);
    if (!in) throw ConfigError("config", "cannot open '" + path + "'");
    std::ostringstream ss;
    ss << in.rdbuf();
    return parse_config_text(ss.str());
}

void print_report(std::ostream& os, const Report& rep, const std::string& format)
{
    if (format == "csv") {
        os << "check_id,anchor,expected,actual,status\n";
        auto esc = [](const std::string& s) {
            if (s.find_first_of(",\"\n") == std::string::npos) return s;
            std::string out = "\"";
            for (char c : s) {
                if (c == '"') out += '"';
                out += c;
            }
            out += '"';
            return out;
        };
        for (const auto& r : rep.rows)
            os << esc(r.id) << ',' << esc(r.anchor) << ',' << esc(r.expected) << ',' << esc(r.actual) << ','
               << (r.pass ? "pass" : "fail") << '\n';
        return;
    }
    if (format == "json-lines") {
        for (const auto& r : rep.rows) {
            nlohmann::json j{{"check_id", r.id},
                             {"anchor", r.anchor},
                             {"expected", r.expected},
                             {"actual", r.actual},
                             {"status", r.pass ? "pass" : "fail"}};
            os << j.dump() << '\n';
        }
        return;
    }
    for (const auto& r : rep.rows)
        os << (r.pass ? "[pass] " : "[FAIL] ") << r.id << " (" << r.anchor << "): expected " << r.expected
           << ", got " << r.actual << '\n';
    std::size_t failed = 0;
    for (const auto& r : rep.rows)
        if (!r.pass) ++failed;
    os << rep.rows.size() << " checks, " << (rep.rows.size() - failed) << " passed, " << failed << " failed\n";
}

} // namespace hodge
