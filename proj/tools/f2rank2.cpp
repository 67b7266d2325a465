// Command-line front door: run verification suites, classify spaces, test
// equivalence, print catalog entries and manage the canonical-key cache.
//
// Exit codes: 0 all-pass, 1 verified failure / inequivalent, 2 usage or
// parse error. Timings go to stderr so identical invocations with identical
// cache state produce identical bytes on stdout.

#include <cstdlib>
#include <filesystem>
#include <iostream>

#include <CLI11.hpp>
#include <json.hpp>

#include "f2rank2/catalog.hpp"
#include "f2rank2/classifiers.hpp"
#include "f2rank2/genmatrix.hpp"
#include "f2rank2/parallel.hpp"
#include "f2rank2/predicates.hpp"
#include "../tests/oracles.hpp"

using nlohmann::json;
using namespace f2rank2;

namespace {

struct CliConfig {
    std::string cache_dir;
    std::string output = "table";
    int threads = 0;
    uint64_t seed = 20250607;
};

void echo_config(const CliConfig& cfg) {
    if (cfg.output == "json") {
        json j{{"config", {{"cache_dir", cfg.cache_dir},
                           {"output", cfg.output},
                           {"threads", cfg.threads},
                           {"seed", cfg.seed}}}};
        std::cout << j.dump() << "\n";
    } else {
        std::cout << "# config cache_dir=" << (cfg.cache_dir.empty() ? "(none)" : cfg.cache_dir)
                  << " output=" << cfg.output << " threads=" << cfg.threads << " seed=" << cfg.seed
                  << "\n";
    }
}

void print_report(const ClassificationReport& rep, const CliConfig& cfg) {
    if (cfg.output == "json") {
        for (const auto& c : rep.checks) {
            json j{{"suite", rep.suite},
                   {"check", c.check},
                   {"status", c.pass ? "pass" : "fail"},
                   {"detail", c.detail}};
            std::cout << j.dump() << "\n";
        }
        json summary{{"suite", rep.suite},
                     {"status", rep.pass() ? "pass" : "fail"},
                     {"classes", rep.classes}};
        for (const auto& [k, v] : rep.params) summary[k] = v;
        std::cout << summary.dump() << "\n";
    } else {
        for (const auto& c : rep.checks) {
            std::cout << (c.pass ? "PASS" : "FAIL") << "  " << rep.suite << "  " << c.check;
            if (!c.detail.empty()) std::cout << "  [" << c.detail << "]";
            std::cout << "\n";
        }
        for (const auto& cls : rep.classes) std::cout << "      class " << cls << "\n";
    }
    std::cerr << "suite " << rep.suite << " finished in " << rep.wall_seconds << " s\n";
}

int cmd_verify(const std::string& suite, const CliConfig& cfg) {
    if (!known_suite(suite)) {
        std::cerr << "unknown suite '" << suite
                  << "' (expected catalog|core|main|j3|lld|spectrum|affine|maximal|r11|all)\n";
        return 2;
    }
    echo_config(cfg);
    bool all_pass = true;
    for (const auto& rep : run_suite(suite, cfg.seed, oracles::core_oracles())) {
        print_report(rep, cfg);
        all_pass = all_pass && rep.pass();
    }
    return all_pass ? 0 : 1;
}

int cmd_equiv(const std::string& a_text, const std::string& b_text, const std::string& mode,
              const CliConfig& cfg) {
    echo_config(cfg);
    AffineMatrixSpace a, b;
    try {
        a = parse_generic(a_text);
        b = parse_generic(b_text);
    } catch (const std::exception& ex) {
        std::cerr << "parse error: " << ex.what() << "\n";
        return 2;
    }
    std::optional<Witness> wit;
    try {
        if (mode == "affine") {
            wit = affine_equivalent(a, b);
        } else {
            if (!a.is_linear() || !b.is_linear()) {
                std::cerr << "mode '" << mode << "' needs linear spaces\n";
                return 2;
            }
            wit = mode == "similar" ? are_similar(a.translation, b.translation)
                                    : are_equivalent(a.translation, b.translation);
        }
    } catch (const std::exception& ex) {
        std::cerr << "error: " << ex.what() << "\n";
        return 2;
    }
    if (!wit) {
        std::cout << "inequivalent\n";
        return 1;
    }
    std::cout << "P = " << to_text(wit->P) << "\n";
    std::cout << "Q = " << to_text(wit->Q) << "\n";
    return 0;
}

int cmd_classify(int n, int p, int dim, const std::string& predicate, const std::string& action,
                 const CliConfig& cfg) {
    echo_config(cfg);
    SpacePredicate pred;
    if (predicate == "all") pred = [](const MatrixSpace&) { return true; };
    else if (predicate == "primitive") pred = [](const MatrixSpace& v) { return is_primitive(v); };
    else if (predicate == "semi-primitive")
        pred = [](const MatrixSpace& v) { return is_semi_primitive(v); };
    else if (predicate == "reduced") pred = [](const MatrixSpace& v) { return is_reduced(v); };
    else if (predicate == "rank-constant-2")
        pred = [](const MatrixSpace& v) { return is_rank_constant_2(v); };
    else if (predicate == "trivial-spectrum")
        pred = [](const MatrixSpace& v) { return has_trivial_spectrum(v); };
    else if (predicate == "irreducible")
        pred = [](const MatrixSpace& v) { return is_irreducible_action(v); };
    else if (predicate == "lld") pred = [](const MatrixSpace& v) { return is_lld(v); };
    else if (predicate == "minimal-lld")
        pred = [](const MatrixSpace& v) { return is_minimal_lld(v); };
    else if (predicate == "urk-1") pred = [](const MatrixSpace& v) { return upper_rank(v) == 1; };
    else if (predicate == "urk-2") pred = [](const MatrixSpace& v) { return upper_rank(v) == 2; };
    else {
        std::cerr << "unknown predicate '" << predicate << "'\n";
        return 2;
    }
    GroupAction act;
    if (action == "equiv") act = GroupAction::Equivalence;
    else if (action == "similar") act = GroupAction::Similarity;
    else {
        std::cerr << "unknown action '" << action << "' (equiv|similar)\n";
        return 2;
    }
    try {
        ElementFilter filter = (predicate == "trivial-spectrum" || predicate == "irreducible")
                                   ? trivial_spectrum_filter(n)
                                   : rank_le_filter(n, p, 2);
        auto classes = enumerate_classes(n, p, dim, filter, pred, act);
        for (const auto& v : classes) {
            if (cfg.output == "json") {
                json j{{"class", format_generic(v)}, {"fingerprint", fingerprint(v).to_string()}};
                std::cout << j.dump() << "\n";
            } else {
                std::cout << format_generic(v) << "    " << fingerprint(v).to_string() << "\n";
            }
        }
        if (cfg.output != "json") std::cout << classes.size() << " classes\n";
    } catch (const std::exception& ex) {
        std::cerr << "unsupported parameters: " << ex.what() << "\n";
        return 2;
    }
    return 0;
}

int cmd_catalog(const std::string& name, const CliConfig& cfg) {
    echo_config(cfg);
    try {
        const auto& cat = Catalog::instance();
        if (name.empty()) {
            for (const auto& e : cat.entries()) {
                std::cout << e.name << "  dim=" << e.space.translation.dim() << "  "
                          << e.generic_text << "\n";
            }
            return 0;
        }
        const auto& e = cat.get(name);
        std::cout << "name:   " << e.name << "\n";
        std::cout << "matrix: " << e.generic_text << "\n";
        std::cout << "shape:  " << int(e.space.translation.n) << "x" << int(e.space.translation.p)
                  << " dim=" << e.space.translation.dim() << "\n";
        if (!e.note.empty()) std::cout << "note:   " << e.note << "\n";
        for (const auto& [k, v] : e.expect) std::cout << "expect: " << k << "=" << v << "\n";
        return 0;
    } catch (const std::exception& ex) {
        std::cerr << "catalog error: " << ex.what() << "\n";
        return 2;
    }
}

int cmd_cache(const std::string& op, const CliConfig& cfg) {
    echo_config(cfg);
    if (op == "info") {
        auto stats = cache_stats();
        std::cout << "dir: " << (cache_dir().empty() ? "(disabled)" : cache_dir()) << "\n";
        std::cout << "entries: " << stats.entries << "\n";
        return 0;
    }
    if (op == "clear") {
        if (cache_dir().empty()) {
            std::cerr << "no cache directory configured\n";
            return 2;
        }
        size_t removed = 0;
        std::error_code ec;
        for (const auto& entry : std::filesystem::directory_iterator(cache_dir(), ec)) {
            if (entry.path().extension() == ".cache") {
                std::filesystem::remove(entry.path(), ec);
                ++removed;
            }
        }
        reset_cache();
        std::cout << "removed " << removed << " cache files\n";
        return 0;
    }
    std::cerr << "unknown cache operation '" << op << "' (info|clear)\n";
    return 2;
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"exhaustive verification of the classification of upper-rank-2 matrix spaces over F2"};
    app.require_subcommand(1);

    CliConfig cfg;
    std::string flag_cache_dir;
    app.add_option("--cache-dir", flag_cache_dir, "canonical-key cache directory");
    app.add_option("--output", cfg.output, "output format: json|table")
        ->check(CLI::IsMember({"json", "table"}));
    app.add_option("--threads", cfg.threads, "worker threads (0 = auto)");
    app.add_option("--seed", cfg.seed, "seed for randomized property suites");

    auto* verify = app.add_subcommand("verify", "run a verification suite");
    std::string suite;
    verify->add_option("suite", suite, "catalog|core|main|j3|lld|spectrum|affine|maximal|r11|all")
        ->required();

    auto* equiv = app.add_subcommand("equiv", "test equivalence of two generic-matrix spaces");
    std::string space_a, space_b, mode = "equiv";
    equiv->add_option("spaceA", space_a, "generic matrix, e.g. [a,b;0,a]")->required();
    equiv->add_option("spaceB", space_b, "generic matrix")->required();
    equiv->add_option("--mode", mode, "equiv|similar|affine")
        ->check(CLI::IsMember({"equiv", "similar", "affine"}));

    auto* classify = app.add_subcommand("classify", "enumerate classes at a shape and dimension");
    int n = 3, p = 3, dim = 3;
    std::string predicate = "all", action = "equiv";
    classify->add_option("--n", n)->required();
    classify->add_option("--p", p)->required();
    classify->add_option("--dim", dim)->required();
    classify->add_option("--predicate", predicate,
                         "all|primitive|semi-primitive|reduced|rank-constant-2|trivial-spectrum|"
                         "irreducible|lld|minimal-lld|urk-1|urk-2");
    classify->add_option("--action", action, "equiv|similar");

    auto* catalog_cmd = app.add_subcommand("catalog", "print catalog entries");
    std::string cat_name;
    catalog_cmd->add_option("name", cat_name, "entry name (omit to list all)");

    auto* cache_cmd = app.add_subcommand("cache", "manage the canonical-key cache");
    std::string cache_op;
    cache_cmd->add_option("op", cache_op, "info|clear")->required();

    try {
        app.parse(argc, argv);
    } catch (const CLI::CallForHelp& e) {
        return app.exit(e);
    } catch (const CLI::ParseError& e) {
        app.exit(e);
        return 2;
    }

    if (!flag_cache_dir.empty())
        cfg.cache_dir = flag_cache_dir;
    else if (const char* env = std::getenv("F2RANK2_CACHE"))
        cfg.cache_dir = env;
    set_cache_dir(cfg.cache_dir);
    par::set_threads(cfg.threads);

    try {
        if (*verify) return cmd_verify(suite, cfg);
        if (*equiv) return cmd_equiv(space_a, space_b, mode, cfg);
        if (*classify) return cmd_classify(n, p, dim, predicate, action, cfg);
        if (*catalog_cmd) return cmd_catalog(cat_name, cfg);
        if (*cache_cmd) return cmd_cache(cache_op, cfg);
    } catch (const std::exception& ex) {
        std::cerr << "error: " << ex.what() << "\n";
        return 2;
    }
    return 2;
}
