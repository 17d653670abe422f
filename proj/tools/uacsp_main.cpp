// Command-line front end. Talks to the library exclusively through the C API.

#include <cstdint>
#include <cstdio>
#include <fstream>
#include <iostream>
#include <string>

#include <CLI11.hpp>

#include "uacsp.h"

namespace {

int status_to_exit(uacsp_status s) { return static_cast<int>(s); }

std::string take(char*& s) {
    std::string out = s ? s : "";
    uacsp_string_free(s);
    s = nullptr;
    return out;
}

struct WorkspaceGuard {
    uacsp_workspace* ws = nullptr;
    ~WorkspaceGuard() { uacsp_workspace_free(ws); }
};

int load_or_fail(const std::string& path, WorkspaceGuard& guard) {
    char* err = nullptr;
    uacsp_status st = uacsp_workspace_load(path.c_str(), &guard.ws, &err);
    if (st != UACSP_OK) {
        std::cerr << "error: " << take(err) << "\n";
        return status_to_exit(st);
    }
    return 0;
}

} // namespace

int main(int argc, char** argv) {
    CLI::App app{"universal-algebra CSP toolkit"};
    app.require_subcommand(1);

    std::string file;
    bool trace = false, oracle_check = false;
    std::uint64_t seed = 1;
    int size = 3, vars = 5, cons = 4, cases = 100;
    std::string out_path;

    auto* analyze = app.add_subcommand("analyze", "structural report for every algebra in a workspace");
    analyze->add_option("file", file)->required();

    auto* solve_cmd = app.add_subcommand("solve", "decide every instance and print witnesses");
    solve_cmd->add_option("file", file)->required();
    solve_cmd->add_flag("--trace", trace, "append the reduction steps");
    solve_cmd->add_flag("--oracle-check", oracle_check, "cross-check the verdict against the oracle");

    auto* oracle_cmd = app.add_subcommand("oracle", "exhaustive search on every instance");
    oracle_cmd->add_option("file", file)->required();

    auto* gen = app.add_subcommand("gen", "emit a seeded random workspace");
    gen->add_option("--seed", seed);
    gen->add_option("--size", size);
    gen->add_option("--vars", vars);
    gen->add_option("--cons", cons);
    gen->add_option("--out", out_path, "write to a file instead of stdout");

    auto* diff = app.add_subcommand("diff", "seeded solver-vs-oracle differential run");
    diff->add_option("--seed", seed);
    diff->add_option("--cases", cases);

    CLI11_PARSE(app, argc, argv);

    if (analyze->parsed()) {
        WorkspaceGuard guard;
        if (int rc = load_or_fail(file, guard)) return rc;
        char* report = nullptr;
        char* err = nullptr;
        uacsp_status st = uacsp_analyze(guard.ws, &report, &err);
        if (st != UACSP_OK) {
            std::cerr << "error: " << take(err) << "\n";
            return status_to_exit(st);
        }
        std::cout << take(report);
        return 0;
    }

    if (solve_cmd->parsed() || oracle_cmd->parsed()) {
        WorkspaceGuard guard;
        if (int rc = load_or_fail(file, guard)) return rc;
        const int n = uacsp_workspace_instance_count(guard.ws);
        if (n == 0) {
            std::cerr << "error: workspace has no instances\n";
            return status_to_exit(UACSP_INPUT_ERROR);
        }
        int exit_code = 0;
        for (int i = 0; i < n; ++i) {
            char* report = nullptr;
            char* err = nullptr;
            int sat = 0;
            uacsp_status st =
                solve_cmd->parsed()
                    ? uacsp_solve_instance(guard.ws, i, trace ? 1 : 0, oracle_check ? 1 : 0, &report,
                                           &sat, &err)
                    : uacsp_oracle_instance(guard.ws, i, &report, &sat, &err);
            if (st != UACSP_OK && st != UACSP_UNSAT) {
                std::cerr << "error: " << take(err) << "\n";
                std::cerr << take(report);
                return status_to_exit(st);
            }
            std::cout << "instance " << i << ": " << (sat ? "SAT" : "UNSAT") << "\n";
            std::cout << take(report);
            if (st == UACSP_UNSAT) exit_code = status_to_exit(UACSP_UNSAT);
        }
        return exit_code;
    }

    if (gen->parsed()) {
        char* text = nullptr;
        char* err = nullptr;
        uacsp_status st = uacsp_generate(seed, size, vars, cons, &text, &err);
        if (st != UACSP_OK) {
            std::cerr << "error: " << take(err) << "\n";
            return status_to_exit(st);
        }
        std::string doc = take(text);
        if (out_path.empty()) {
            std::cout << doc;
        } else {
            std::ofstream out(out_path);
            if (!out) {
                std::cerr << "error: cannot write '" << out_path << "'\n";
                return status_to_exit(UACSP_INPUT_ERROR);
            }
            out << doc;
        }
        return 0;
    }

    if (diff->parsed()) {
        char* report = nullptr;
        char* repro = nullptr;
        char* err = nullptr;
        uacsp_status st = uacsp_diff(seed, cases, &report, &repro, &err);
        if (st == UACSP_DISAGREEMENT) {
            std::cerr << "error: solver and oracle disagree; reproducing workspace follows\n";
            std::cerr << take(repro);
            std::cout << take(report);
            return status_to_exit(st);
        }
        if (st != UACSP_OK) {
            std::cerr << "error: " << take(err) << "\n";
            return status_to_exit(st);
        }
        std::cout << take(report);
        return 0;
    }

    return 0;
}
