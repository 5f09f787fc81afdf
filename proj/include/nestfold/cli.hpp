#pragma once

#include <algorithm>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <optional>
#include <sstream>
#include <string>
#include <vector>

#include <CLI11.hpp>

#include "nestfold/analysis.hpp"
#include "nestfold/catalogue.hpp"
#include "nestfold/derivation.hpp"
#include "nestfold/emitter.hpp"
#include "nestfold/parser.hpp"
#include "nestfold/properties.hpp"
#include "nestfold/runtime.hpp"

namespace nestfold {

enum ExitCode : int { exit_ok = 0, exit_failure = 1, exit_usage = 2 };

struct RunConfig {
    std::string command;
    std::vector<std::string> inputs;
    std::string out_dir = ".";
    std::size_t max_size = 7;
    std::size_t max_depth = 3;
    bool nat_index = false;
    std::string algebra = "sum";
    std::string backend = "agda";
    std::string value_name;
    std::string route = "nfold";
};

namespace detail {

struct UsageError : std::runtime_error {
    using std::runtime_error::runtime_error;
};

inline std::string read_file(const std::string& path) {
    std::ifstream in(path, std::ios::binary);
    if (!in) throw UsageError("cannot read " + path);
    std::ostringstream ss;
    ss << in.rdbuf();
    return ss.str();
}

inline void print_diagnostics(std::ostream& err, const std::vector<Diagnostic>& ds, const std::string& file) {
    for (const auto& d : ds) err << format_diagnostic(d, file) << "\n";
}

/// Parses and checks a declaration file. Diagnostics go to `err`; returns
/// nothing if there were any.
inline std::optional<std::pair<Program, std::vector<MutualGroup>>> load_groups(const std::string& path,
                                                                               std::ostream& err) {
    const std::string text = read_file(path);
    Program prog;
    try {
        prog = parse_program_syntax(text, path);
    } catch (const Error& e) {
        print_diagnostics(err, e.diagnostics(), path);
        return std::nullopt;
    }
    auto diags = well_formed(prog);
    if (!diags.empty()) {
        print_diagnostics(err, diags, path);
        return std::nullopt;
    }
    auto groups = classify(prog);
    for (const auto& g : groups) {
        auto gd = group_diagnostics(g);
        diags.insert(diags.end(), gd.begin(), gd.end());
    }
    if (!diags.empty()) {
        print_diagnostics(err, diags, path);
        return std::nullopt;
    }
    return std::make_pair(std::move(prog), std::move(groups));
}

inline std::string describe_group(const MutualGroup& g) {
    std::string names;
    for (const auto& n : g.names()) names += (names.empty() ? "" : ", ") + n;
    std::string line = names + ": " + to_string(g.classification);
    if (g.decls.size() > 1) line += ", mutual group of " + std::to_string(g.decls.size());
    if (g.classification == Classification::ordinary) return line;
    if (has_nat_index(g)) return line + ", index ≅ Nat";
    IndexTypeSpec spec = index_universe(g);
    std::string ctors;
    for (const auto& v : spec.var_ctors) ctors += (ctors.empty() ? "" : " | ") + v;
    for (const auto& [c, arity] : spec.app_ctors) ctors += " | " + c + "/" + std::to_string(arity);
    return line + ", index " + spec.name + " = " + ctors;
}

inline int cmd_check(const RunConfig& cfg, std::ostream& out, std::ostream& err) {
    int status = exit_ok;
    for (const auto& path : cfg.inputs) {
        auto loaded = load_groups(path, err);
        if (!loaded) {
            status = exit_failure;
            continue;
        }
        for (const auto& g : loaded->second) out << describe_group(g) << "\n";
    }
    return status;
}

inline int cmd_derive(const RunConfig& cfg, std::ostream& out, std::ostream& err) {
    if (cfg.backend != "agda") throw UsageError("unsupported backend " + cfg.backend + " (only agda)");
    auto loaded = load_groups(cfg.inputs.at(0), err);
    if (!loaded) return exit_failure;
    std::error_code ec;
    std::filesystem::create_directories(cfg.out_dir, ec);
    if (ec) throw UsageError("cannot create " + cfg.out_dir);
    for (const auto& g : loaded->second) {
        Derivation d;
        try {
            d = derive_all(g, {cfg.nat_index});
        } catch (const Error& e) {
            print_diagnostics(err, e.diagnostics(), cfg.inputs[0]);
            return exit_failure;
        }
        Deriver dv(g, {cfg.nat_index});
        const std::string text = emit_agda(make_module(g, d, dv.nat_index()));
        const auto path = std::filesystem::path(cfg.out_dir) / (g.joined_name() + ".agda");
        std::ofstream f(path, std::ios::binary);
        if (!f || !(f << text)) throw UsageError("cannot write " + path.string());
        std::string names;
        for (const auto& n : d.derived) names += (names.empty() ? "" : ", ") + n;
        out << "wrote " << path.string() << "\n";
        out << "derived: " << names << "\n";
        for (const auto& s : d.skipped) out << "note: skipped " << s << "\n";
    }
    return exit_ok;
}

inline int cmd_eval(const RunConfig& cfg, std::ostream& out, std::ostream& err) {
    if (cfg.inputs.size() != 2) throw UsageError("eval needs a declaration file and a value file");
    auto loaded = load_groups(cfg.inputs[0], err);
    if (!loaded) return exit_failure;
    const auto& [prog, groups] = *loaded;
    std::vector<ValueBinding> bindings;
    try {
        bindings = parse_value_file(read_file(cfg.inputs[1]), prog);
    } catch (const Error& e) {
        print_diagnostics(err, e.diagnostics(), cfg.inputs[1]);
        return exit_failure;
    }
    if (bindings.empty()) {
        err << cfg.inputs[1] << ":1:1: error: no value bindings\n";
        return exit_failure;
    }
    const ValueBinding* b = &bindings.front();
    if (!cfg.value_name.empty()) {
        auto it = std::find_if(bindings.begin(), bindings.end(),
                               [&](const ValueBinding& x) { return x.name == cfg.value_name; });
        if (it == bindings.end()) throw UsageError("no value named " + cfg.value_name);
        b = &*it;
    }
    const MutualGroup* g = group_of(groups, b->type.name);
    if (!g) {
        print_diagnostics(err, {{b->type.pos, Severity::error, "value type " + to_string(b->type) + " is not a declared type"}},
                          cfg.inputs[1]);
        return exit_failure;
    }
    TypedIndex ti;
    try {
        ti = value_type_to_index(*g, b->type);
    } catch (const Error& e) {
        print_diagnostics(err, e.diagnostics(), cfg.inputs[1]);
        return exit_failure;
    }
    auto diags = typecheck_value(*g, ti.index, ti.base_types, b->value);
    if (!diags.empty()) {
        print_diagnostics(err, diags, cfg.inputs[1]);
        return exit_failure;
    }
    const Result v = from_value(b->value);
    try {
        if (auto h = hfold_catalogue_algebra(*g, cfg.algebra); h && !catalogue_algebra(*g, cfg.algebra)) {
            auto pos = g->position(b->type.name);
            if (ti.index != decl_index(*g, *pos)) throw UsageError("higher-order folds need the declaration applied to distinct base types");
            out << to_string(observe(*h, eval_hfold(*g, *pos, *h, v)), g) << "\n";
            return exit_ok;
        }
        auto alg = catalogue_algebra(*g, cfg.algebra);
        if (!alg) {
            if (cfg.algebra == "sumAux") throw UsageError("sumAux needs a unary singleton group");
            throw UsageError("unknown algebra " + cfg.algebra);
        }
        Result r = Result::nat(0);
        if (cfg.route == "nfold")
            r = eval_nfold(*g, *alg, ti.index, v);
        else if (cfg.route == "ps")
            r = eval_nfold_prime(*g, *alg, ti.index, v);
        else if (cfg.route == "ind")
            r = eval_ind(*g, lift_algebra(*alg), ti.index, v);
        else
            throw UsageError("unknown route " + cfg.route);
        out << to_string(r, g) << "\n";
    } catch (const EvalError& e) {
        err << cfg.inputs[1] << ":" << b->pos.line << ":" << b->pos.col << ": error: " << e.what() << "\n";
        return exit_failure;
    }
    return exit_ok;
}

inline int cmd_test(const RunConfig& cfg, std::ostream& out, std::ostream& err) {
    if (cfg.max_size < 1) throw UsageError("--max-size must be at least 1");
    auto loaded = load_groups(cfg.inputs.at(0), err);
    if (!loaded) return exit_failure;
    SuiteConfig sc;
    sc.max_size = cfg.max_size;
    sc.max_depth = cfg.max_depth;
    int status = exit_ok;
    for (const auto& g : loaded->second) {
        for (const auto& r : run_suite(g, sc)) {
            out << g.joined_name() << ": " << r.name << ": ";
            if (!r.applicable) {
                out << "not applicable\n";
                continue;
            }
            out << r.cases << " cases, " << (r.ok ? "ok" : "FAILED") << "\n";
            if (!r.ok) {
                out << "  counterexample: " << r.counterexample << "\n";
                status = exit_failure;
            }
        }
    }
    return status;
}

} // namespace detail

/// Entry point shared by the executable and the tests. `args` excludes the
/// program name.
inline int run_cli(std::vector<std::string> args, std::ostream& out, std::ostream& err) {
    CLI::App app{"Derive and check folds for nested data types", "nestfold"};
    app.require_subcommand(1);
    RunConfig cfg;

    auto* check = app.add_subcommand("check", "Parse, check and classify declaration files");
    check->add_option("files", cfg.inputs, "Declaration files (.ndt)")->required();

    auto* derive = app.add_subcommand("derive", "Write the derived folds as an Agda module per group");
    derive->add_option("file", cfg.inputs, "Declaration file (.ndt)")->required()->expected(1);
    derive->add_option("-o,--out", cfg.out_dir, "Output directory");
    derive->add_flag("--nat-index", cfg.nat_index, "Use Nat/NTimes for singleton unary groups");
    derive->add_option("--backend", cfg.backend, "Output language")->check(CLI::IsMember({"agda"}));

    auto* eval = app.add_subcommand("eval", "Evaluate a catalogue algebra on a value");
    eval->add_option("files", cfg.inputs, "Declaration file and value file (.ndv)")->required()->expected(2);
    eval->add_option("--algebra", cfg.algebra, "sum, length, depth, trace, sumAux, rebuild");
    eval->add_option("--value", cfg.value_name, "Binding to evaluate (default: the first)");
    eval->add_option("--route", cfg.route, "nfold, ps (via the higher-order fold) or ind");

    auto* test = app.add_subcommand("test", "Run the property suite exhaustively up to a size bound");
    test->add_option("file", cfg.inputs, "Declaration file (.ndt)")->required()->expected(1);
    test->add_option("--max-size", cfg.max_size, "Largest value size (constructor nodes)");
    test->add_option("--max-depth", cfg.max_depth, "Largest index depth");

    std::reverse(args.begin(), args.end());
    try {
        app.parse(args);
    } catch (const CLI::CallForHelp&) {
        out << app.help();
        return exit_ok;
    } catch (const CLI::ParseError& e) {
        err << "error: " << e.what() << "\n" << "run with --help for usage\n";
        return exit_usage;
    }

    try {
        if (check->parsed()) return detail::cmd_check(cfg, out, err);
        if (derive->parsed()) return detail::cmd_derive(cfg, out, err);
        if (eval->parsed()) return detail::cmd_eval(cfg, out, err);
        if (test->parsed()) return detail::cmd_test(cfg, out, err);
    } catch (const detail::UsageError& e) {
        err << "error: " << e.what() << "\n";
        return exit_usage;
    }
    return exit_usage;
}

} // namespace nestfold
