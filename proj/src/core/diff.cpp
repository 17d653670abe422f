#include "diff.hpp"

#include <chrono>
#include <sstream>

#include "examples.hpp"
#include "generator.hpp"
#include "oracle.hpp"
#include "solver.hpp"
#include "workspace.hpp"

namespace uacsp {

namespace {

double ms_since(std::chrono::steady_clock::time_point t0) {
    return std::chrono::duration<double, std::milli>(std::chrono::steady_clock::now() - t0).count();
}

} // namespace

std::string DiffReport::to_string() const {
    std::ostringstream out;
    double solver_total = 0, oracle_total = 0;
    for (const auto& c : cases) {
        solver_total += c.solver_ms;
        oracle_total += c.oracle_ms;
        if (!c.agree)
            out << "case " << c.case_seed << " (" << c.family << ", " << c.summary
                << "): solver=" << (c.solver_sat ? "SAT" : "UNSAT")
                << " oracle=" << (c.oracle_sat ? "SAT" : "UNSAT") << " DISAGREE\n";
    }
    out << "cases: " << cases.size() << "  agreement: " << (all_agree ? "full" : "BROKEN")
        << "  solver: " << static_cast<long>(solver_total) << " ms  oracle: "
        << static_cast<long>(oracle_total) << " ms\n";
    return out.str();
}

DiffReport run_diff(std::uint64_t seed, int cases, const Config& cfg) {
    DiffReport report;
    report.seed = seed;
    for (int i = 0; i < cases; ++i) {
        std::uint64_t case_seed = seed * 1000003ull + static_cast<std::uint64_t>(i);
        std::mt19937_64 rng(case_seed);
        DiffCase dc;
        dc.case_seed = case_seed;
        AlgebraPtr alg;
        switch (i % 4) {
            case 0:
                alg = example_algebra_am();
                dc.family = "A_M";
                break;
            case 1:
                alg = example_algebra_an();
                dc.family = "A_N";
                break;
            case 2: {
                std::uint64_t aseed = rng();
                int asize = 2 + static_cast<int>(rng() % 2);
                alg = random_idempotent_algebra(aseed, asize, {{"f", 2}, {"g", 3}}, cfg);
                dc.family = "random f/2 g/3";
                break;
            }
            default:
                alg = random_idempotent_algebra(rng(), 3, {{"f", 2}}, cfg);
                dc.family = "random f/2";
                break;
        }
        int vars = 3 + static_cast<int>(rng() % 8);        // 3..10
        int cons = 2 + static_cast<int>(rng() % 7);        // 2..8
        int arity = 2 + static_cast<int>(rng() % 2);       // 2..3
        Instance p = random_invariant_instance(rng(), alg, vars, cons, arity, cfg);
        std::ostringstream sum;
        sum << "|A|=" << alg->size() << " vars=" << vars << " cons=" << cons;
        dc.summary = sum.str();
        auto t0 = std::chrono::steady_clock::now();
        SolverOptions opts;
        opts.cfg = cfg;
        SolveOutcome got = solve(p, opts);
        dc.solver_ms = ms_since(t0);
        t0 = std::chrono::steady_clock::now();
        OracleOutcome want = brute_force_solve(p, cfg);
        dc.oracle_ms = ms_since(t0);
        dc.solver_sat = got.sat;
        dc.oracle_sat = want.sat;
        dc.agree = got.sat == want.sat && (!got.sat || verify_assignment(p, got.assignment));
        if (!dc.agree && report.all_agree) {
            report.all_agree = false;
            report.disagreeing_case = i;
            Workspace ws;
            ws.algebras.push_back(alg);
            ws.instances.push_back(p);
            report.reproducer = workspace_to_text(ws);
        }
        report.cases.push_back(std::move(dc));
    }
    return report;
}

} // namespace uacsp
