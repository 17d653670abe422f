#include "doctest.h"

#include <set>

#include "core/blockmin.hpp"
#include "core/centralizer.hpp"
#include "core/clone.hpp"
#include "core/errors.hpp"
#include "core/generator.hpp"
#include "core/oracle.hpp"
#include "core/propagation.hpp"
#include "core/solver.hpp"
#include "fixtures.hpp"

using namespace uacsp;
using namespace uacsp::fixtures;

namespace {

Relation rel_of(int arity, std::vector<std::vector<Element>> ts) {
    Relation r;
    r.arity = arity;
    r.tuples = std::move(ts);
    r.normalize();
    return r;
}

Relation running_relation() {
    std::vector<std::vector<Element>> ts;
    for (Element x = 0; x < 2; ++x)
        for (Element y = 0; y < 2; ++y)
            for (Element z = 0; z < 2; ++z) ts.push_back({x, y, z});
    ts.push_back({2, 2, 0});
    ts.push_back({2, 2, 2});
    return rel_of(3, std::move(ts));
}

Instance running_instance() {
    auto a = am();
    Instance p;
    for (int i = 1; i <= 5; ++i) {
        p.var_names.push_back("v" + std::to_string(i));
        p.domains.push_back({a, {ProvenanceBase{"A_M"}}});
    }
    p.constraints.push_back({{0, 1, 2}, running_relation()});
    p.constraints.push_back({{1, 3, 4}, running_relation()});
    return p;
}

void check_against_oracle(const Instance& p, const char* tag) {
    CAPTURE(tag);
    SolveOutcome got = solve(p);
    OracleOutcome want = brute_force_solve(p);
    CHECK(got.sat == want.sat);
    if (got.sat) CHECK(verify_assignment(p, got.assignment));
}

} // namespace

TEST_CASE("solve the worked example") {
    Instance p = running_instance();
    SolveOutcome out = solve(p);
    REQUIRE(out.sat);
    CHECK(verify_assignment(p, out.assignment));
    CHECK(brute_force_solve(p).sat);
}

TEST_CASE("worked example pipeline details") {
    Instance p = running_instance();
    Stabilized st = stabilize(p);
    REQUIRE_FALSE(st.instance.unsat);
    InstanceMeasures m = measures(st.instance);
    CHECK(m.size == 3);
    CHECK(m.max_vars.size() == 5);
    // with the repaired example algebra the centralizer (0:theta) is trivial,
    // so no variable is central and mu* is the equality congruence throughout
    CHECK(m.center_vars.empty());
    for (const auto& ms : m.mu_star) CHECK(ms.is_equality());

    // the multiplication term collapses 2 toward the {0,1} block, so the
    // Maroti round drives every domain into {0,1} and the residual instance
    // is semilattice-free and affine
    const auto& mult = multiplication_op(*am());
    Instance pstar = quotient_instance(st.instance, m.mu_star);
    Assignment phi(5, 0);  // the all-zeros solution of P/mu*
    CHECK(verify_assignment(pstar, phi));
    Instance stepped = maroti_step(st.instance, m.mu_star, phi, std::vector<std::vector<Element>>(5, mult));
    std::vector<std::vector<Element>> cube;
    for (Element x = 0; x < 2; ++x)
        for (Element y = 0; y < 2; ++y)
            for (Element z = 0; z < 2; ++z) cube.push_back({x, y, z});
    CHECK(stepped.constraints[0].rel.tuples == cube);
    CHECK(stepped.constraints[1].rel.tuples == cube);

    // multiplying toward the 2-block leaves the relation unchanged, and the
    // result is still invariant
    Assignment phi2(5, 2);
    std::vector<Partition> theta(5, Partition({0, 0, 2}));
    CHECK(maroti_step(st.instance, theta, Assignment(5, 1), std::vector<std::vector<Element>>(5, mult))
              .constraints[0]
              .rel.tuples == st.instance.constraints[0].rel.tuples);
    Instance toward0 = maroti_step(st.instance, theta, Assignment(5, 0),
                                   std::vector<std::vector<Element>>(5, mult));
    CHECK(toward0.constraints[0].rel.tuples == cube);
    for (const auto& c : toward0.constraints) {
        std::vector<AlgebraPtr> coords;
        for (int v : c.scope) coords.push_back(toward0.domains[v].algebra);
        CHECK_FALSE(check_invariance(c.rel, coords).has_value());
    }

    // a solution of the multiplied instance solves the original
    for (const auto& s : brute_force_all_solutions(stepped)) CHECK(verify_assignment(st.instance, s));

    // satisfiability is preserved in both directions
    CHECK(brute_force_solve(stepped).sat == brute_force_solve(st.instance).sat);
}

TEST_CASE("value fixing matches the oracle on the worked example") {
    Instance p = running_instance();
    check_against_oracle(fix_value(fix_value(p, 2, 2), 4, 0), "fix v3=2 v5=0");
    check_against_oracle(fix_value(fix_value(p, 0, 0), 4, 2), "fix v1=0 v5=2");
    check_against_oracle(fix_value(fix_value(p, 0, 1), 1, 0), "fix v1=1 v2=0");
    Instance q = running_instance();
    q.constraints.push_back({{0}, rel_of(1, {})});
    CHECK_FALSE(solve(q).sat);
}

TEST_CASE("base solver handles affine systems") {
    auto a = aff2();
    // x + y = 1, y + z = 1, x + z = 0 over Z2: solutions (0,1,0) and (1,0,1)
    Instance p;
    for (int i = 0; i < 3; ++i) {
        p.var_names.push_back("x" + std::to_string(i));
        p.domains.push_back({a, {}});
    }
    p.constraints.push_back({{0, 1}, rel_of(2, {{0, 1}, {1, 0}})});
    p.constraints.push_back({{1, 2}, rel_of(2, {{0, 1}, {1, 0}})});
    p.constraints.push_back({{0, 2}, rel_of(2, {{0, 0}, {1, 1}})});
    SolveOutcome out = solve(p);
    REQUIRE(out.sat);
    CHECK(verify_assignment(p, out.assignment));

    // and an inconsistent one: x + y = 1, y + z = 1, x + z = 1
    Instance q = p;
    q.constraints[2].rel = rel_of(2, {{0, 1}, {1, 0}});
    CHECK_FALSE(solve(q).sat);
    CHECK_FALSE(brute_force_solve(q).sat);
}

TEST_CASE("solver agrees with the oracle across seeded families") {
    int checked = 0;
    for (std::uint64_t seed = 1; seed <= 20; ++seed) {
        // worked-example algebras
        check_against_oracle(random_invariant_instance(seed, am(), 5, 4, 3), "A_M family");
        check_against_oracle(random_invariant_instance(seed * 131, an(), 4, 4, 3), "A_N family");
        // random idempotent algebras of both signatures
        auto alg = random_idempotent_algebra(seed, 2 + seed % 2, {{"f", 2}, {"g", 3}});
        check_against_oracle(random_invariant_instance(seed * 733 + 1, alg, 5, 4, 3), "random mixed");
        auto alg2 = random_idempotent_algebra(seed * 19, 3, {{"f", 2}});
        check_against_oracle(random_invariant_instance(seed * 997 + 5, alg2, 4, 4, 2), "random binary");
        // semilattice and affine domains
        check_against_oracle(random_invariant_instance(seed * 23, sl2(), 6, 5, 3), "semilattice");
        check_against_oracle(random_invariant_instance(seed * 29, aff2(), 6, 5, 3), "affine");
        checked += 6;
    }
    CHECK(checked == 120);
}

TEST_CASE("resource caps surface as errors, never UNSAT") {
    Config tiny;
    tiny.oracle_budget = 2;
    Instance p = running_instance();
    CHECK_THROWS_AS(brute_force_solve(p, tiny), resource_error);

    Config tight;
    tight.fragment_work = 4;  // too little for the twin-equivalence closures
    CHECK_THROWS_AS(twin_equivalence(*am(), Partition::equality(3), Partition({0, 0, 2}), tight),
                    resource_error);

    SolverOptions opts;
    opts.cfg.fragment_work = 4;
    bool threw = false;
    try {
        solve(running_instance(), opts);
    } catch (const resource_error&) {
        threw = true;
    }
    CHECK(threw);
}

TEST_CASE("solver trace reports the reduction steps") {
    SolverOptions opts;
    opts.collect_trace = true;
    SolveOutcome out = solve(running_instance(), opts);
    REQUIRE(out.sat);
    CHECK_FALSE(out.trace.empty());
    bool saw_maroti = false;
    for (const auto& line : out.trace)
        if (line.find("maroti") != std::string::npos) saw_maroti = true;
    CHECK(saw_maroti);
}

TEST_CASE("pluggable base solver is honored") {
    int calls = 0;
    SolverOptions opts;
    opts.base = [&](const Instance& q, const Config& cfg) {
        ++calls;
        return base_solve_semilattice_free(q, cfg);
    };
    Instance p;
    p.var_names = {"x", "y"};
    p.domains = {{aff2(), {}}, {aff2(), {}}};
    p.constraints.push_back({{0, 1}, rel_of(2, {{0, 1}, {1, 0}})});
    SolveOutcome out = solve(p, opts);
    CHECK(out.sat);
    CHECK(calls >= 1);
}
