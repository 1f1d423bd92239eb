#include <CLI11.hpp>

#include "hodge/compalg.hpp"
#include "hodge/geometry.hpp"
#include "hodge/suites.hpp"

#include <fstream>
#include <iostream>

using namespace hodge;

namespace {

RunConfig load_config(const std::string& path, const std::string& suite, const std::string& format, bool long_flag,
                      std::size_t cap)
{
    RunConfig cfg = parse_config_file(path);
    if (!suite.empty()) cfg.suite = suite;
    if (!format.empty()) cfg.format = format;
    if (long_flag) cfg.long_profile = true;
    if (cap) cfg.cap = cap;
    return cfg;
}

int cmd_run(const std::string& path, const std::string& suite, const std::string& format, bool long_flag,
            std::size_t cap)
{
    RunConfig cfg;
    try {
        cfg = load_config(path, suite, format, long_flag, cap);
    } catch (const std::exception& e) {
        std::cerr << "config error: " << e.what() << "\n";
        return 2;
    }
    try {
        Report rep = run_suite(cfg, cfg.suite);
        print_report(std::cout, rep, cfg.format);
        return rep.all_pass() ? 0 : 1;
    } catch (const ConfigError& e) {
        std::cerr << "config error: " << e.what() << "\n";
        return 2;
    } catch (const std::length_error& e) {
        std::cerr << "cap exceeded: " << e.what() << "\n";
        return 1;
    }
}

int cmd_classify(const std::string& path)
{
    RunConfig cfg;
    try {
        cfg = parse_config_file(path);
    } catch (const std::exception& e) {
        std::cerr << "config error: " << e.what() << "\n";
        return 2;
    }
    HermitianSpace sp(cfg.field, cfg.gram);
    TopForm b{cfg.b0};
    Scalar delta = hodge_delta(sp, b, cfg.ell);
    KAlgebra K(cfg.field, delta, cfg.ell);
    std::cout << "field: " << cfg.field->name() << "\n";
    std::cout << "delta: " << delta.str() << "\n";
    std::cout << "discriminant class: " << discriminant(sp).str() << "\n";
    bool split = K.split();
    std::cout << "algebra: " << (split ? "split" : "non-split") << "\n";
    std::string kind;
    if (split)
        kind = cfg.field->galois() ? "split quaternion algebra over R"
                                   : (cfg.field->characteristic() == 2 ? "F[X]/(X^2)" : "F x F");
    else
        kind = cfg.field->galois() ? "quaternion division algebra" : "quadratic extension";
    std::cout << "kind: " << kind << "\n";
    return 0;
}

int cmd_report_g(const std::string& path)
{
    RunConfig cfg;
    try {
        cfg = parse_config_file(path);
    } catch (const std::exception& e) {
        std::cerr << "config error: " << e.what() << "\n";
        return 2;
    }
    HermitianSpace sp(cfg.field, cfg.gram);
    if (sp.dim() != 2 * cfg.ell) {
        std::cerr << "report g needs dim = 2 ell\n";
        return 2;
    }
    KModule km(sp, TopForm{cfg.b0}, cfg.ell);
    std::cout << "K-valued Gram of g over B1:\n";
    auto G = km.g_gram();
    for (const auto& row : G) {
        for (std::size_t j = 0; j < row.size(); ++j) std::cout << (j ? ", " : "[") << row[j].str();
        std::cout << "]\n";
    }
    if (km.algebra().split()) {
        TopForm nb = normalize_split(sp, TopForm{cfg.b0}, cfg.ell);
        KModule nkm(sp, nb, cfg.ell);
        SplitModule sm = split_submodules(nkm);
        std::cout << "R-valued Gram of g^o on Wz (b rescaled by " << (nb.b0 / cfg.b0).str() << "):\n";
        std::cout << g_o_gram(nkm, sm).str() << "\n";
    } else {
        std::cout << "g^o: not applicable (algebra is non-split)\n";
    }
    return 0;
}

int cmd_orders(bool long_flag, std::size_t cap)
{
    struct Row
    {
        std::string family;
        long e;
        unsigned long long formula;
        unsigned long long enumerated;
    };
    std::vector<Row> rows;
    {
        auto F4 = Field::finite(4, Involution::Galois);
        HermitianSpace sp(F4, Mat::identity(F4, 4));
        GeneratedGroup G = generate_group(F4, 4, transvection_generators(sp), cap ? cap : 2000000);
        rows.push_back({"SU4", 2, order_formula("SU4", 2), G.order()});
    }
    {
        auto F3 = Field::finite(3);
        HermitianSpace sp(F3, Mat::from_rows(F3, {{0, 1, 0, 0}, {1, 0, 0, 0}, {0, 0, 1, 0}, {0, 0, 0, -2}}));
        GeneratedGroup EO = eo_subgroup(sp, cap ? cap : 2000000);
        rows.push_back({"EOminus4", 3, order_formula("EOminus4", 3), EO.order()});
        auto gens = eichler_generators(sp);
        gens.push_back(SemiMap{Mat::identity(F3, 4).scaled(-F3->one()), false});
        GeneratedGroup SO = generate_group(F3, 4, gens, cap ? cap : 2000000);
        rows.push_back({"SOminus4", 3, order_formula("SOminus4", 3), SO.order()});
        rows.push_back({"PSL2", 9, order_formula("PSL2", 9),
                        image_under_eta(KModule(sp, TopForm{-F3->one()}, 2), SO).order()});
    }
    if (long_flag) {
        auto F9 = Field::finite(9, Involution::Galois);
        HermitianSpace sp(F9, Mat::identity(F9, 4));
        auto all = transvection_generators(sp);
        std::vector<SemiMap> gens;
        for (std::size_t i = 0; i < all.size(); i += 37) gens.push_back(all[i]);
        GeneratedGroup G = generate_group(F9, 4, gens, 14000000);
        rows.push_back({"SU4", 3, order_formula("SU4", 3), G.order()});
    }
    std::cout << "family,e,formula,enumerated,match\n";
    bool all_ok = true;
    for (const auto& r : rows) {
        bool ok = r.formula == r.enumerated;
        all_ok = all_ok && ok;
        std::cout << r.family << ',' << r.e << ',' << r.formula << ',' << r.enumerated << ','
                  << (ok ? "pass" : "fail") << "\n";
    }
    return all_ok ? 0 : 1;
}

int cmd_octonion(const std::string& path)
{
    RunConfig cfg;
    try {
        cfg = parse_config_file(path);
    } catch (const std::exception& e) {
        std::cerr << "config error: " << e.what() << "\n";
        return 2;
    }
    HermitianSpace sp(cfg.field, cfg.gram);
    try {
        if (cfg.field->characteristic() == 2) {
            Scalar u;
            for (long i = 0; i < cfg.field->order(); ++i) {
                Scalar c = cfg.field->element_by_index(i);
                if (c + c.conj() == cfg.field->one()) {
                    u = c;
                    break;
                }
            }
            auto oct = octonion_char2(sp, u);
            std::cout << "doubling tree: " << oct.C.tree_str() << "\n";
            std::cout << "norm diagonal:";
            for (const auto& d : oct.C.norm_diagonal()) std::cout << ' ' << d.str();
            std::cout << "\n";
        } else {
            Scalar q;
            if (cfg.field->is_finite()) {
                for (long i = 1; i < cfg.field->order(); ++i) {
                    Scalar c = cfg.field->element_by_index(i);
                    if ((c + c.conj()).is_zero() && !c.is_zero()) {
                        q = c;
                        break;
                    }
                }
            } else {
                q = cfg.field->generator();
            }
            auto oct = octonion_from_hermitian(sp, q);
            std::cout << "doubling tree: " << oct.C.tree_str() << "\n";
            std::cout << "norm diagonal:";
            for (const auto& d : oct.C.norm_diagonal()) std::cout << ' ' << d.str();
            std::cout << "\n";
        }
        return 0;
    } catch (const std::exception& e) {
        std::cerr << "octonion: " << e.what() << "\n";
        return 1;
    }
}

int cmd_geometry(const std::string& path)
{
    RunConfig cfg;
    try {
        cfg = parse_config_file(path);
    } catch (const std::exception& e) {
        std::cerr << "config error: " << e.what() << "\n";
        return 2;
    }
    Report rep;
    checks_config_geometry(rep, cfg);
    print_report(std::cout, rep, cfg.format);
    return rep.all_pass() ? 0 : 1;
}

} // namespace

int main(int argc, char** argv)
{
    CLI::App app{"exact Hodge-operator verification toolkit"};
    app.require_subcommand(1);

    std::string config_path, suite, format;
    bool long_flag = false;
    std::size_t cap = 0;

    auto add_common = [&](CLI::App* sub, bool with_suite) {
        sub->add_option("--config", config_path, "configuration file")->required();
        if (with_suite) {
            sub->add_option("--suite", suite, "suite name (overrides [run] suite)");
            sub->add_option("--format", format, "text | csv | json-lines");
            sub->add_flag("--long", long_flag, "enable the long-test profile");
            sub->add_option("--cap", cap, "closure cap override");
        }
    };

    CLI::App* run = app.add_subcommand("run", "run a verification suite");
    add_common(run, true);
    CLI::App* classify = app.add_subcommand("classify", "print delta, split status and algebra kind");
    add_common(classify, false);
    CLI::App* reportg = app.add_subcommand("report-g", "print the Gram of g and of g^o");
    add_common(reportg, false);
    CLI::App* orders = app.add_subcommand("orders", "group order table: formula vs enumerated");
    orders->add_flag("--long", long_flag, "include the e = 3 closure");
    orders->add_option("--cap", cap, "closure cap override");
    CLI::App* octo = app.add_subcommand("octonion", "print the doubling tree and norm diagonal");
    add_common(octo, false);
    CLI::App* geom = app.add_subcommand("geometry", "fiber histograms and polarity check");
    add_common(geom, false);

    CLI11_PARSE(app, argc, argv);

    if (run->parsed()) return cmd_run(config_path, suite, format, long_flag, cap);
    if (classify->parsed()) return cmd_classify(config_path);
    if (reportg->parsed()) return cmd_report_g(config_path);
    if (orders->parsed()) return cmd_orders(long_flag, cap);
    if (octo->parsed()) return cmd_octonion(config_path);
    if (geom->parsed()) return cmd_geometry(config_path);
    return 2;
}
