// command-line front end: analyze / iterate / construct / verify-examples
#include <fstream>
#include <iostream>
#include <sstream>
#include <string>

#include <CLI11.hpp>

#include "cryst/builtins.hpp"
#include "cryst/crystal.hpp"
#include "cryst/errors.hpp"
#include "cryst/io.hpp"

namespace {

constexpr int kExitOk = 0;
constexpr int kExitCheckFailed = 1;
constexpr int kExitBadInput = 2;
constexpr int kExitMaxIter = 3;

struct CommonOpts {
    std::string backend = "form";
    long bound = 3;
    std::size_t max_order = 20000;
    std::size_t max_iter = 10;
    std::string diag_bound_factor = "4";
    bool json = false;
};

void add_common(CLI::App* cmd, CommonOpts& opts) {
    cmd->add_option("--backend", opts.backend, "normalizer backend: form, brute or both")
        ->check(CLI::IsMember({"form", "brute", "both"}));
    cmd->add_option("--bound", opts.bound, "brute-force entry bound (default 3)");
    cmd->add_option("--max-order", opts.max_order, "group order cap (default 20000)");
    cmd->add_option("--diag-bound-factor", opts.diag_bound_factor,
                    "diagonal bound factor for candidate forms, rational (default 4)");
}

cryst::NormalizerConfig to_config(const CommonOpts& opts) {
    cryst::NormalizerConfig cfg;
    if (opts.backend == "brute")
        cfg.backend = cryst::NormalizerConfig::Backend::brute;
    else if (opts.backend == "both")
        cfg.backend = cryst::NormalizerConfig::Backend::both;
    cfg.brute_entry_bound = opts.bound;
    cfg.max_order = opts.max_order;
    cfg.diag_bound_factor = cryst::parse_rational(opts.diag_bound_factor);
    return cfg;
}

cryst::CrystGroup load_group(const std::string& spec) {
    if (auto builtin = cryst::parse_builtin(spec)) return *builtin;
    std::ifstream in(spec);
    if (!in) throw cryst::ParseError("cannot open group file: " + spec);
    std::stringstream buf;
    buf << in.rdbuf();
    return cryst::parse_group(buf.str());
}

void write_group_file(const std::string& path, const cryst::CrystGroup& gamma) {
    std::ofstream out(path);
    if (!out) throw cryst::ParseError("cannot write group file: " + path);
    out << cryst::serialize_group(gamma);
}

int run_analyze(const std::string& input, const CommonOpts& opts) {
    cryst::CrystGroup gamma = load_group(input);
    cryst::AnalysisOutcome out = cryst::analyze(gamma, to_config(opts));
    std::cout << cryst::report_to_json(out.report).dump(2) << "\n";
    return kExitOk;
}

int run_iterate(const std::string& input, const CommonOpts& opts,
                const std::string& out_group) {
    cryst::CrystGroup gamma = load_group(input);
    try {
        cryst::IterationResult res =
            cryst::iterate_fixpoint(gamma, opts.max_iter, to_config(opts));
        std::cout << cryst::iteration_to_json(res).dump(2) << "\n";
        if (!out_group.empty()) write_group_file(out_group, res.group);
        return kExitOk;
    } catch (const cryst::MaxIterExceeded& e) {
        cryst::Json j;
        j["error"] = "max-iter-exceeded";
        cryst::Json steps = cryst::Json::array();
        for (const auto& r : e.history) steps.push_back(cryst::report_to_json(r));
        j["steps"] = std::move(steps);
        std::cout << j.dump(2) << "\n";
        std::cerr << "error: " << e.what() << "\n";
        return kExitMaxIter;
    }
}

int run_construct(std::size_t dim, const CommonOpts& opts, const std::string& out_group) {
    try {
        cryst::IterationResult res =
            cryst::construct_complete(dim, opts.max_iter, to_config(opts));
        std::cout << cryst::iteration_to_json(res).dump(2) << "\n";
        if (!out_group.empty()) write_group_file(out_group, res.group);
        return kExitOk;
    } catch (const cryst::MaxIterExceeded& e) {
        std::cerr << "error: " << e.what() << "\n";
        return kExitMaxIter;
    }
}

struct Check {
    std::string name;
    bool pass;
    std::string detail;
};

int run_verify(const CommonOpts& opts, bool corrupt) {
    using namespace cryst;
    std::vector<Check> checks;
    NormalizerConfig cfg = to_config(opts);

    CrystGroup g1 = gamma1();
    if (corrupt) {
        // test hook: drop the reflection generator, shrinking the closure
        auto gens = g1.affine_generators();
        gens.pop_back();
        g1 = make_cryst(2, gens);
    }
    CrystGroup g2 = gamma2();

    auto add = [&](const std::string& name, bool pass, const std::string& detail) {
        checks.push_back({name, pass, detail});
    };

    add("|G1| = 12", g1.point_group().order() == 12,
        "got " + std::to_string(g1.point_group().order()));
    add("|G2| = 48", g2.point_group().order() == 48,
        "got " + std::to_string(g2.point_group().order()));

    AnalysisOutcome a1 = analyze(g1, cfg);
    AnalysisOutcome a2 = analyze(g2, cfg);

    add("N(G1) = G1", a1.normalizer.group == g1.point_group(),
        "order " + a1.report.normalizer_order.str());
    add("N(G2) = G2", a2.normalizer.group == g2.point_group(),
        "order " + a2.report.normalizer_order.str());
    add("H1(Gamma1) = 0", a1.report.h1_invariants.empty(), "");
    add("H1(Gamma2) = 0", a2.report.h1_invariants.empty(), "");
    add("Out(Gamma1) = 1", a1.report.out_order == 1, "got " + a1.report.out_order.str());
    add("Out(Gamma2) = 1", a2.report.out_order == 1, "got " + a2.report.out_order.str());
    add("A(Gamma1) = Gamma1",
        a1.affine.n_alpha == g1.point_group() && a1.affine.a0.is_standard(), "");
    add("A(Gamma2) = Gamma2",
        a2.affine.n_alpha == g2.point_group() && a2.affine.a0.is_standard(), "");

    AnalysisOutcome asq = analyze(direct_product(g1, g1), cfg);
    add("Out(Gamma1^2) = 2", asq.report.out_order == 2, "got " + asq.report.out_order.str());
    AnalysisOutcome amix = analyze(direct_product(g1, g2), cfg);
    add("Out(Gamma1*Gamma2) = 1", amix.report.out_order == 1,
        "got " + amix.report.out_order.str());

    bool all = true;
    std::string first_fail;
    for (const Check& c : checks) {
        if (!c.pass && all) first_fail = c.name;
        all = all && c.pass;
    }

    if (opts.json) {
        Json j = Json::array();
        for (const Check& c : checks) {
            Json rec;
            rec["check"] = c.name;
            rec["pass"] = c.pass;
            if (!c.detail.empty()) rec["detail"] = c.detail;
            j.push_back(std::move(rec));
        }
        std::cout << j.dump(2) << "\n";
    } else {
        for (const Check& c : checks) {
            std::cout << (c.pass ? "[ ok ] " : "[FAIL] ") << c.name;
            if (!c.pass && !c.detail.empty()) std::cout << "  (" << c.detail << ")";
            std::cout << "\n";
        }
    }
    if (!all) {
        std::cerr << "first failing check: " << first_fail << "\n";
        return kExitCheckFailed;
    }
    return kExitOk;
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"exact tools for crystallographic groups: centers, H^1, GL(n,Z)-"
                 "normalizers, affine normalizers and fixed-point iteration"};
    app.require_subcommand(1);

    CommonOpts opts;
    std::string input, out_group;
    std::size_t dim = 0;
    bool corrupt = false;

    CLI::App* analyze = app.add_subcommand("analyze", "analyze one group file or builtin");
    analyze->add_option("group", input, "group file path or builtin name (gamma1, gamma1^2*gamma2, ...)")
        ->required();
    add_common(analyze, opts);

    CLI::App* iterate =
        app.add_subcommand("iterate", "run the affine-normalizer fixed-point iteration");
    iterate->add_option("group", input, "group file path or builtin name")->required();
    iterate->add_option("--max-iter", opts.max_iter, "iteration budget (default 10)");
    iterate->add_option("--out-group", out_group, "write the final group to this file");
    add_common(iterate, opts);

    CLI::App* construct = app.add_subcommand(
        "construct", "construct a group with trivial center and trivial Out in dimension n");
    construct->add_option("--dim", dim, "dimension, n >= 2")->required();
    construct->add_option("--max-iter", opts.max_iter, "iteration budget (default 10)");
    construct->add_option("--out-group", out_group, "write the final group to this file");
    add_common(construct, opts);

    CLI::App* verify =
        app.add_subcommand("verify-examples", "run the built-in example verification suite");
    verify->add_flag("--json", opts.json, "machine-readable pass/fail list");
    verify->add_flag("--corrupt-builtin", corrupt, "test hook: corrupt a builtin group")
        ->group("");  // hidden
    add_common(verify, opts);

    CLI11_PARSE(app, argc, argv);

    try {
        if (analyze->parsed()) return run_analyze(input, opts);
        if (iterate->parsed()) return run_iterate(input, opts, out_group);
        if (construct->parsed()) {
            if (dim < 2) {
                std::cerr << "error: --dim must be at least 2\n";
                return kExitBadInput;
            }
            return run_construct(dim, opts, out_group);
        }
        if (verify->parsed()) return run_verify(opts, corrupt);
    } catch (const cryst::ParseError& e) {
        std::cerr << "parse error: " << e.what() << "\n";
        return kExitBadInput;
    } catch (const cryst::NotCenterless& e) {
        std::cerr << "precondition error: " << e.what() << "\n";
        return kExitBadInput;
    } catch (const cryst::CentralPointGroup& e) {
        std::cerr << "precondition error: " << e.what() << "\n";
        return kExitBadInput;
    } catch (const cryst::NormalizerNotFinite& e) {
        std::cerr << "precondition error: " << e.what() << "\n";
        return kExitBadInput;
    } catch (const cryst::OrderCapExceeded& e) {
        std::cerr << "precondition error: " << e.what() << "\n";
        return kExitBadInput;
    } catch (const cryst::InconsistentVectorSystem& e) {
        std::cerr << "input error: " << e.what() << "\n";
        return kExitBadInput;
    } catch (const std::invalid_argument& e) {
        std::cerr << "input error: " << e.what() << "\n";
        return kExitBadInput;
    }
    return kExitOk;
}
