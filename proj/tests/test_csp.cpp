#include "doctest.h"

#include <set>

#include "core/blockmin.hpp"
#include "core/errors.hpp"
#include "core/generator.hpp"
#include "core/instance.hpp"
#include "core/oracle.hpp"
#include "core/propagation.hpp"
#include "core/solver.hpp"
#include "core/strands.hpp"
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

// the ternary relation of the worked example: all of {0,1}^3 plus (2,2,0),(2,2,2)
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

Relation theta_rel() { return rel_of(2, {{0, 0}, {0, 1}, {1, 0}, {1, 1}, {2, 2}}); }
Relation q_rel() { return rel_of(2, {{0, 0}, {0, 1}, {1, 0}, {1, 1}, {2, 0}, {2, 2}}); }
Relation s_rel() { return rel_of(2, {{0, 0}, {0, 1}, {0, 2}, {1, 0}, {1, 1}, {2, 0}, {2, 2}}); }

std::set<Assignment> solution_set(const Instance& p) {
    auto all = brute_force_all_solutions(p);
    return std::set<Assignment>(all.begin(), all.end());
}

// lift a solution set of a transformed instance through its lift map
std::set<Assignment> lifted_solution_set(const Instance& p, const Lift& lift) {
    std::set<Assignment> out;
    for (const auto& s : brute_force_all_solutions(p)) out.insert(lift(s));
    return out;
}

} // namespace

TEST_CASE("invariance checker") {
    auto a = am();
    std::vector<AlgebraPtr> coords3{a, a, a};
    CHECK_FALSE(check_invariance(running_relation(), coords3).has_value());
    std::vector<AlgebraPtr> coords2{a, a};
    CHECK_FALSE(check_invariance(theta_rel(), coords2).has_value());
    // a genuinely non-invariant set: r((2,2),(0,1)) = (0,0) escapes it
    auto bad = rel_of(2, {{0, 1}, {2, 2}});
    auto v = check_invariance(bad, coords2);
    REQUIRE(v.has_value());
    CHECK(v->op_name == "r");
}

TEST_CASE("verify_assignment on the running instance") {
    Instance p = running_instance();
    CHECK(verify_assignment(p, {0, 0, 0, 0, 0}));
    CHECK(verify_assignment(p, {2, 2, 2, 2, 2}));
    CHECK_FALSE(verify_assignment(p, {2, 0, 0, 0, 0}));
    CHECK_FALSE(verify_assignment(p, {0, 0, 0, 0}));
}

TEST_CASE("1-minimality") {
    Instance p = running_instance();
    PropagationResult r = establish_1_minimality(p);
    CHECK_FALSE(r.instance.unsat);
    for (int v = 0; v < 5; ++v) CHECK(r.instance.domain_size(v) == 3);

    // contradictory unary constraints
    Instance q = running_instance();
    q.constraints.push_back({{0}, rel_of(1, {{0}})});
    q.constraints.push_back({{0}, rel_of(1, {{1}})});
    PropagationResult r2 = establish_1_minimality(q);
    CHECK(r2.instance.unsat);

    // single-constraint instance: domains become the unary projections
    Instance s;
    s.var_names = {"u", "v"};
    s.domains = {{am(), {}}, {am(), {}}};
    s.constraints.push_back({{0, 1}, rel_of(2, {{0, 1}, {1, 1}})});
    PropagationResult r3 = establish_1_minimality(s);
    CHECK(r3.instance.domain_size(0) == 2);
    CHECK(r3.instance.domain_size(1) == 1);
}

TEST_CASE("(2,3)-minimality reproduces the worked example's strategy") {
    Instance p = running_instance();
    PropagationResult r = establish_23_minimality(p);
    REQUIRE_FALSE(r.instance.unsat);
    const Instance& q = r.instance;
    for (int v = 0; v < 5; ++v) CHECK(q.domain_size(v) == 3);
    REQUIRE(q.strategy.has_value());
    CHECK(q.constraints[0].rel.tuples.size() == 10);
    CHECK(q.constraints[1].rel.tuples.size() == 10);
    CHECK(q.constraints[0].rel.tuples == running_relation().tuples);

    auto expect = [&](int u, int v, const Relation& want) {
        CHECK(q.strategy->at(u, v).tuples == want.tuples);
    };
    expect(0, 1, theta_rel());
    expect(1, 3, theta_rel());
    expect(0, 3, theta_rel());
    expect(0, 2, q_rel());
    expect(1, 2, q_rel());
    expect(1, 4, q_rel());
    expect(3, 4, q_rel());
    expect(0, 4, q_rel());  // (0,2) has no triangle witness at v2, so the pair set is Q-shaped
    expect(2, 3, rel_of(2, {{0, 0}, {0, 1}, {0, 2}, {1, 0}, {1, 1}, {2, 2}}));  // transpose of Q
    expect(2, 4, s_rel());
}

TEST_CASE("propagation is solution-preserving and invariance-preserving") {
    for (std::uint64_t seed = 1; seed <= 12; ++seed) {
        auto alg = random_idempotent_algebra(seed, 3, {{"f", 2}, {"g", 3}});
        Instance p = random_invariant_instance(seed * 977, alg, 4, 3, 3);
        auto before = solution_set(p);
        PropagationResult r = establish_23_minimality(p);
        if (r.instance.unsat) {
            CHECK(before.empty());
            continue;
        }
        CHECK(lifted_solution_set(r.instance, r.lift) == before);
        for (const auto& c : r.instance.constraints) {
            std::vector<AlgebraPtr> coords;
            for (int v : c.scope) coords.push_back(r.instance.domains[v].algebra);
            CHECK_FALSE(check_invariance(c.rel, coords).has_value());
        }
    }
}

TEST_CASE("restrict and quotient instances") {
    Instance p = running_instance();
    PropagationResult r = establish_23_minimality(p);
    Instance w = restrict_instance(r.instance, {0, 1, 3});
    REQUIRE(w.num_vars() == 3);
    REQUIRE(w.constraints.size() == 2);
    CHECK(w.constraints[0].rel.tuples == theta_rel().tuples);  // pr_12 of the ternary relation
    CHECK(w.constraints[1].rel.tuples == theta_rel().tuples);

    // quotient by theta everywhere: both relations become the 3-tuple set
    std::vector<Partition> thetas(5, Partition({0, 0, 2}));
    Instance qi = quotient_instance(p, thetas);
    auto want = rel_of(3, {{0, 0, 0}, {1, 1, 0}, {1, 1, 1}});
    CHECK(qi.constraints[0].rel.tuples == want.tuples);
    CHECK(qi.constraints[1].rel.tuples == want.tuples);

    // quotient by equality: unchanged; by full: single tuple
    std::vector<Partition> zeros(5, Partition::equality(3));
    CHECK(quotient_instance(p, zeros).constraints[0].rel.tuples == running_relation().tuples);
    std::vector<Partition> fulls(5, Partition::full(3));
    CHECK(quotient_instance(p, fulls).constraints[0].rel.tuples.size() == 1);

    // solutions map blockwise to quotient solutions
    for (const auto& s : brute_force_all_solutions(p)) {
        Assignment img(s.size());
        for (std::size_t v = 0; v < s.size(); ++v) img[v] = thetas[v].block_index(s[v]);
        CHECK(verify_assignment(qi, img));
    }
}

TEST_CASE("fix_value") {
    Instance p = running_instance();
    Instance f = fix_value(p, 0, 0);
    for (const auto& s : brute_force_all_solutions(f)) CHECK(s[0] == 0);
    CHECK_THROWS_AS(fix_value(p, 0, 7), input_error);
    Instance g = fix_value(fix_value(p, 0, 0), 0, 1);
    PropagationResult r = establish_1_minimality(g);
    CHECK(r.instance.unsat);
}

TEST_CASE("subdirect irreducibility splitting") {
    Instance p = running_instance();
    SplitResult s = split_subdirectly_irreducible(p);
    CHECK_FALSE(s.changed);  // A_M is subdirectly irreducible

    // a square domain splits into two factors linked by a diagonal
    auto sq = power(*sl2(), 2, 100);
    Instance q;
    q.var_names = {"u"};
    q.domains = {{sq, {}}};
    q.constraints.push_back({{0}, rel_of(1, {{0}, {1}, {2}, {3}})});
    SplitResult s2 = split_subdirectly_irreducible(q);
    REQUIRE(s2.changed);
    CHECK(s2.instance.num_vars() == 3);  // three meet-irreducibles: two kernels plus their upper neighbor
    // solution sets correspond bijectively through the lift
    auto before = solution_set(q);
    auto after = brute_force_all_solutions(s2.instance);
    std::set<Assignment> lifted;
    for (const auto& sol : after) lifted.insert(s2.lift(sol));
    CHECK(lifted == before);
    CHECK(after.size() == before.size());
}

TEST_CASE("strand discovery matches the worked example") {
    Instance p = running_instance();
    PropagationResult r = establish_23_minimality(p);
    auto strands = find_strands(r.instance);
    std::set<std::vector<int>> var_sets;
    for (const auto& s : strands) var_sets.insert(s.vars);
    std::set<std::vector<int>> expect{{0}, {1}, {2}, {3}, {4}, {0, 1, 3}};
    CHECK(var_sets == expect);
    bool found_main = false;
    for (const auto& s : strands)
        if (s.vars == std::vector<int>{0, 1, 3}) {
            found_main = true;
            for (const auto& al : s.alphas) CHECK(al == Partition({0, 0, 2}));
        }
    CHECK(found_main);
    // every emitted strand is pairwise alignment-verified
    for (const auto& s : strands)
        for (std::size_t i = 0; i < s.vars.size(); ++i)
            for (std::size_t j = i + 1; j < s.vars.size(); ++j)
                CHECK(is_aligned(r.instance.strategy->at(s.vars[i], s.vars[j]), s.alphas[i],
                                 s.alphas[j]));
}

TEST_CASE("alignment primitives") {
    Partition theta({0, 0, 2});
    CHECK(is_aligned(theta_rel(), theta, theta));
    CHECK_FALSE(is_aligned(q_rel(), theta, theta));
    CHECK(is_aligned(q_rel(), Partition::full(3), Partition::full(3)));

    auto a = am();
    auto got = induced_partition(theta_rel(), theta, true, *a);
    REQUIRE(got.has_value());
    CHECK(*got == theta);
    CHECK_FALSE(induced_partition(q_rel(), theta, true, *a).has_value());
    // graph of a bijection transfers equality to equality
    auto bij = rel_of(2, {{0, 1}, {1, 2}, {2, 0}});
    auto got2 = induced_partition(bij, Partition::equality(3), true, *a);
    REQUIRE(got2.has_value());
    CHECK(got2->is_equality());
}

TEST_CASE("decomposition of the aligned restriction") {
    Instance p = running_instance();
    PropagationResult r = establish_23_minimality(p);
    Instance w = restrict_instance(r.instance, {0, 1, 3});
    Strand strand;
    strand.vars = {0, 1, 2};  // within the restriction, variables are renumbered
    strand.alphas = {Partition({0, 0, 2}), Partition({0, 0, 2}), Partition({0, 0, 2})};
    auto parts = decompose(w, strand);
    REQUIRE(parts.size() == 2);
    // first part: full {0,1} squares; second part: singleton (2,2) relations
    CHECK(parts[0].domain_size(0) == 2);
    CHECK(parts[0].constraints[0].rel.tuples.size() == 4);
    CHECK(parts[1].domain_size(0) == 1);
    CHECK(parts[1].constraints[0].rel.tuples == std::vector<std::vector<Element>>{{0, 0}});

    // parts partition the solution set
    auto whole = solution_set(w);
    std::set<Assignment> united;
    std::size_t total = 0;
    for (const auto& part : parts) {
        // map part solutions back to w's labels through the domain provenance
        for (const auto& s : brute_force_all_solutions(part)) {
            Assignment orig(s.size());
            for (int v = 0; v < part.num_vars(); ++v) {
                const auto& step = part.domains[v].provenance.back();
                if (std::holds_alternative<ProvenanceSubset>(step))
                    orig[v] = std::get<ProvenanceSubset>(step).element_map[s[v]];
                else
                    orig[v] = s[v];
            }
            united.insert(orig);
            ++total;
        }
    }
    CHECK(united == whole);
    CHECK(total == whole.size());

    Strand bad = strand;
    bad.alphas[0] = Partition::equality(3);
    CHECK_THROWS_AS(decompose(w, bad), input_error);
}

TEST_CASE("block-minimality bookkeeping reproduces the worked example") {
    Instance p = running_instance();
    PropagationResult r = establish_23_minimality(p);
    InstanceMeasures m = measures(r.instance);
    CHECK(m.size == 3);
    CHECK(m.max_vars == std::vector<int>{0, 1, 2, 3, 4});
    for (int v = 0; v < 5; ++v) CHECK(m.mu[v] == Partition({0, 0, 2}));

    auto muy = mu_Y(r.instance, m, {2, 4});
    CHECK(muy[2] == Partition({0, 0, 2}));
    CHECK(muy[4] == Partition({0, 0, 2}));
    CHECK(muy[0].is_equality());

    // P_{/W} for the strand W={v1,v2,v4}: third coordinates quotiented
    Instance sub = subproblem(r.instance, m, {0, 1, 3});
    auto r_theta = rel_of(3, {{0, 0, 0}, {0, 1, 0}, {1, 0, 0}, {1, 1, 0}, {2, 2, 0}, {2, 2, 1}});
    CHECK(sub.constraints[0].rel.tuples == r_theta.tuples);
    CHECK(sub.constraints[1].rel.tuples == r_theta.tuples);

    // P_{/{v2}}: all but v2 quotiented
    Instance sub2 = subproblem(r.instance, m, {1});
    auto r_tt1 = rel_of(3, {{0, 0, 0}, {0, 1, 0}, {1, 2, 0}, {1, 2, 1}});
    auto r_tt2 = rel_of(3, {{0, 0, 0}, {1, 0, 0}, {2, 1, 0}, {2, 1, 1}});
    CHECK(sub2.constraints[0].rel.tuples == r_tt1.tuples);
    CHECK(sub2.constraints[1].rel.tuples == r_tt2.tuples);

    // the running instance is already block-minimal
    DecideFn decide = [](const Instance& q) { return solve(q).sat; };
    BlockMinResult bm = establish_block_minimality(r.instance, decide);
    CHECK_FALSE(bm.changed);
    CHECK_FALSE(bm.instance.unsat);
    CHECK(bm.instance.constraints[0].rel.tuples.size() == 10);
    CHECK(bm.instance.constraints[1].rel.tuples.size() == 10);
}

TEST_CASE("block-minimality preserves solutions and detects dead tuples") {
    DecideFn decide = [](const Instance& q) { return solve(q).sat; };
    for (std::uint64_t seed = 1; seed <= 10; ++seed) {
        auto alg = (seed % 3 == 0) ? am() : random_idempotent_algebra(seed, 3, {{"f", 2}, {"g", 3}});
        Instance p = random_invariant_instance(seed * 31 + 7, alg, 4, 3, 3);
        auto before = solution_set(p);
        PropagationResult r = establish_23_minimality(p);
        if (r.instance.unsat) {
            CHECK(before.empty());
            continue;
        }
        Stabilized st = stabilize(p);
        if (st.instance.unsat) {
            CHECK(before.empty());
            continue;
        }
        BlockMinResult bm = establish_block_minimality(st.instance, decide);
        if (bm.instance.unsat) {
            CHECK(before.empty());
            continue;
        }
        Lift total = compose_lift(st.lift, bm.lift);
        CHECK(lifted_solution_set(bm.instance, total) == before);
        // after success, every remaining tuple of every strand subproblem extends
        InstanceMeasures m = measures(bm.instance);
        for (const auto& strand : find_strands(bm.instance)) {
            bool degenerate = false;
            for (std::size_t i = 0; i < strand.vars.size(); ++i)
                if (strand.alphas[i].is_full() && m.in_max(strand.vars[i])) degenerate = true;
            if (degenerate) continue;
            Instance sub = subproblem(bm.instance, m, strand.vars);
            auto subsols = brute_force_all_solutions(sub);
            for (const auto& c : sub.constraints)
                for (const auto& t : c.rel.tuples) {
                    bool extends = false;
                    for (const auto& s : subsols) {
                        bool match = true;
                        for (std::size_t i = 0; i < c.scope.size(); ++i)
                            if (s[c.scope[i]] != t[i]) match = false;
                        if (match) {
                            extends = true;
                            break;
                        }
                    }
                    CHECK(extends);
                }
        }
    }
}
