#include "jcs/suites.hpp"

#include <CLI11.hpp>

#include <fstream>
#include <iostream>

namespace {

jcs::CAlgebraPtr build_named(const std::string& name, int n) {
    using namespace jcs;
    if (name == "jn") return build_jn(n < 0 ? 1 : n);
    if (name == "js1") return build_js1();
    if (name == "kn") return build_kn(n < 0 ? 2 : n);
    if (name == "ck6") return build_ck6().ck6;
    if (name == "jck4-ck6") {
        CK6Data d = build_ck6();
        return build_jck4_from_ck6(d).alg;
    }
    if (name == "jck4-j3") return build_jck4_in_j3().alg;
    throw std::invalid_argument("unknown algebra '" + name +
                                "' (expected jn, js1, kn, ck6, jck4-ck6, jck4-j3)");
}

void write_out(const std::string& path, const std::string& text) {
    if (path.empty() || path == "-") {
        std::cout << text;
        return;
    }
    std::ofstream out(path, std::ios::binary);
    if (!out) throw std::runtime_error("cannot open " + path);
    out << text;
}

} // namespace

int main(int argc, char** argv) {
    CLI::App app{"exact verifier for Jordan and Lie conformal superalgebras"};
    app.require_subcommand(1);

    // run
    auto* run = app.add_subcommand("run", "run a verification suite");
    std::string suite = "all", format = "text", out_path;
    jcs::SuiteConfig cfg;
    bool timings = false;
    run->add_option("--suite", suite,
                    "suite: jn, js1, kn, ck6, jck4, kkm, brackets, tkk, bridge, derivations, "
                    "mutation, all")
        ->required();
    run->add_option("--n", cfg.n, "restrict a ranked suite to one n");
    run->add_option("--tmin", cfg.tmin, "Laurent window lower end");
    run->add_option("--tmax", cfg.tmax, "Laurent window upper end");
    run->add_option("--max-tdeg", cfg.max_tdeg, "t-degree bound for coefficient enumerations");
    run->add_option("--max-ddeg", cfg.max_ddeg, "d-degree bound for span solving");
    run->add_option("--seed", cfg.seed, "seed for the randomized K_6 triples");
    run->add_option("--jobs", cfg.jobs, "worker threads for independent check instances");
    run->add_flag("--fail-fast", cfg.fail_fast, "stop after the first failure");
    run->add_option("--format", format, "report format: text or json")
        ->check(CLI::IsMember({"text", "json"}));
    run->add_flag("--timings", timings, "include wall time in the json report");
    run->add_option("--out", out_path, "write the report to a file instead of stdout");

    // export
    auto* exp = app.add_subcommand("export", "write a built algebra as a catalog document");
    std::string alg_name, exp_out;
    int exp_n = -1;
    exp->add_option("--alg", alg_name, "jn, js1, kn, ck6, jck4-ck6, jck4-j3")->required();
    exp->add_option("--n", exp_n, "rank parameter for jn/kn");
    exp->add_option("--out", exp_out, "output file (default stdout)");

    // import
    auto* imp = app.add_subcommand("import", "parse a catalog document and re-verify its laws");
    std::string imp_in;
    imp->add_option("--in", imp_in, "catalog file")->required();

    CLI11_PARSE(app, argc, argv);

    try {
        if (*run) {
            jcs::VerificationReport rep = jcs::run_suite(suite, cfg);
            write_out(out_path,
                      format == "json" ? jcs::report_json(rep, timings) : jcs::report_text(rep));
            return rep.failures() ? 1 : 0;
        }
        if (*exp) {
            auto alg = build_named(alg_name, exp_n);
            write_out(exp_out, jcs::export_catalog(*alg));
            return 0;
        }
        if (*imp) {
            std::ifstream in(imp_in, std::ios::binary);
            if (!in) throw std::runtime_error("cannot open " + imp_in);
            std::string doc((std::istreambuf_iterator<char>(in)),
                            std::istreambuf_iterator<char>());
            jcs::CAlgebraPtr alg = jcs::import_catalog(doc);
            std::size_t fails = 0;
            if (alg->variety == jcs::Variety::jordan || alg->variety == jcs::Variety::lie) {
                for (int i = 0; i < alg->rank; ++i)
                    for (int j = 0; j < alg->rank; ++j)
                        if (!jcs::comm_residual_conf(jcs::basis_elem(alg.get(), i),
                                                     jcs::basis_elem(alg.get(), j),
                                                     alg->comm_sign())
                                 .is_zero())
                            ++fails;
            }
            std::cout << "name: " << alg->name << "\nrank: " << alg->rank
                      << "\nvariety: " << jcs::variety_name(alg->variety)
                      << "\nsymmetry failures: " << fails << "\n";
            return fails ? 1 : 0;
        }
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 2;
    }
    return 0;
}
