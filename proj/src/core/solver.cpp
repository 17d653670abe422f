#include "solver.hpp"

#include <algorithm>
#include <set>
#include <unordered_map>

#include "centralizer.hpp"
#include "clone.hpp"
#include "errors.hpp"
#include "oracle.hpp"
#include "propagation.hpp"

namespace uacsp {

namespace {

// connected components over the main constraint scopes plus any strategy
// relation that is tighter than the full product (full products carry no
// information, so the pipeline factors exactly across components)
std::vector<std::vector<int>> components_of(const Instance& p) {
    const int n = p.num_vars();
    std::vector<int> parent(n);
    for (int v = 0; v < n; ++v) parent[v] = v;
    auto find = [&](int x) {
        while (parent[x] != x) x = parent[x] = parent[parent[x]];
        return x;
    };
    auto unite = [&](int a, int b) { parent[std::max(find(a), find(b))] = std::min(find(a), find(b)); };
    for (const auto& c : p.constraints)
        for (std::size_t i = 1; i < c.scope.size(); ++i) unite(c.scope[0], c.scope[i]);
    if (p.strategy)
        for (const auto& [uv, r] : p.strategy->binary)
            if (static_cast<int>(r.tuples.size()) !=
                p.domain_size(uv.first) * p.domain_size(uv.second))
                unite(uv.first, uv.second);
    std::vector<std::vector<int>> comps(n);
    for (int v = 0; v < n; ++v) comps[find(v)].push_back(v);
    std::vector<std::vector<int>> out;
    for (auto& c : comps)
        if (!c.empty()) out.push_back(std::move(c));
    return out;
}

bool all_semilattice_free(const Instance& p, const Config& cfg) {
    for (int v = 0; v < p.num_vars(); ++v)
        if (!is_semilattice_free(p.algebra_of(v), cfg)) return false;
    return true;
}

SolveOutcome default_base_solve(const Instance& p, const Config& cfg) {
    PropagationResult prop = establish_23_minimality(p);
    if (prop.instance.unsat || prop.instance.any_empty_relation()) return {};
    const Instance& q = prop.instance;
    int branch_var = -1;
    for (int v = 0; v < q.num_vars(); ++v)
        if (q.domain_size(v) >= 2) {
            branch_var = v;
            break;
        }
    if (branch_var < 0) {
        Assignment phi(q.num_vars(), 0);
        if (!verify_assignment(q, phi)) return {};
        SolveOutcome out;
        out.sat = true;
        out.assignment = prop.lift(phi);
        return out;
    }
    for (Element a = 0; a < q.domain_size(branch_var); ++a) {
        SolveOutcome sub = default_base_solve(fix_value(q, branch_var, a), cfg);
        if (sub.sat) {
            sub.assignment = prop.lift(sub.assignment);
            return sub;
        }
    }
    return {};
}

struct Solver {
    Config cfg;
    BaseSolver base;
    std::vector<std::string> trace;
    bool collect_trace = false;
    // decision results are properties of the instance alone, so subproblems
    // recurring across the block-minimality and value-probing loops are
    // decided once
    std::unordered_map<std::string, bool> decide_cache;
    int probe_level = 0;  // > 0 while inside a decision probe; probes are not traced

    struct ProbeScope {
        Solver* s;
        explicit ProbeScope(Solver* sv) : s(sv) { ++s->probe_level; }
        ~ProbeScope() { --s->probe_level; }
    };

    void note(const std::string& s) {
        if (collect_trace && probe_level == 0) trace.push_back(s);
    }

    static void append_int(std::string& k, int x) {
        if (x >= 94) {
            k += static_cast<char>('!' + (x / 94) % 94);
            x %= 94;
        }
        k += static_cast<char>('!' + x);
    }

    static std::string instance_key(const Instance& q) {
        std::string k;
        k.reserve(768);
        if (q.unsat) k += '!';
        for (const auto& d : q.domains) {
            k += '|';
            k += d.algebra->table_key();
        }
        for (const auto& c : q.constraints) {
            k += ';';
            for (int v : c.scope) append_int(k, v);
            k += ':';
            for (const auto& t : c.rel.tuples) {
                for (Element e : t) k += static_cast<char>('0' + e);
                k += '.';
            }
        }
        if (q.strategy) {
            k += '#';
            for (const auto& [uv, r] : q.strategy->binary) {
                append_int(k, uv.first);
                append_int(k, uv.second);
                k += ':';
                for (const auto& t : r.tuples) {
                    for (Element e : t) k += static_cast<char>('0' + e);
                    k += '.';
                }
            }
        }
        return k;
    }

    // Decision-only pipeline. Witness extraction goes through run(); pure
    // decisions stop at the non-central theorem: a subdirectly irreducible,
    // (2,3)-minimal, block-minimal, nonempty instance with MAX ∩ Center
    // empty is satisfiable.
    bool decide_instance(const Instance& q, int depth) {
        std::string key = instance_key(q);
        auto it = decide_cache.find(key);
        if (it != decide_cache.end()) return it->second;
        ProbeScope probe(this);
        bool sat = decide_instance_uncached(q, depth);
        decide_cache.emplace(std::move(key), sat);
        return sat;
    }

    bool decide_instance_uncached(Instance q, int depth) {
        if (depth > cfg.solve_depth_cap) throw internal_error("decide: recursion depth cap exceeded");
        while (true) {
            if (q.unsat || q.any_empty_relation()) return false;
            if (q.constraints.empty()) return true;  // every total map solves
            auto comps = components_of(q);
            if (comps.size() > 1) {
                for (const auto& comp : comps)
                    if (!decide_instance(restrict_instance(q, comp), depth)) return false;
                return true;
            }
            if (all_semilattice_free(q, cfg)) return base_case(q).sat;
            Stabilized st = stabilize_full(std::move(q));
            q = std::move(st.instance);
            if (q.unsat || q.any_empty_relation()) return false;
            if (all_semilattice_free(q, cfg)) return base_case(q).sat;
            BlockMinResult bm = establish_block_minimality(
                q, [this, depth](const Instance& sub) { return decide_instance(sub, depth + 1); },
                cfg);
            q = std::move(bm.instance);
            if (q.unsat || q.any_empty_relation()) return false;
            if (all_semilattice_free(q, cfg)) return base_case(q).sat;
            InstanceMeasures m = measures(q, cfg);
            bool central = false;
            for (int v : m.max_vars)
                if (m.in_center(v)) central = true;
            if (!central) return true;  // the non-central theorem decides
            Instance pstar = quotient_instance(q, m.mu_star);
            auto flags = global_one_minimality(pstar, m, depth);
            if (!flags.empty()) {
                std::vector<std::vector<Element>> keep(q.num_vars());
                for (int v = 0; v < q.num_vars(); ++v)
                    for (Element e = 0; e < q.domain_size(v); ++e) {
                        Element block = m.mu_star[v].block_index(e);
                        if (!std::count(flags.begin(), flags.end(), std::make_pair(v, block)))
                            keep[v].push_back(e);
                    }
                ShrinkResult sh = shrink_domains(q, keep);
                q = std::move(sh.instance);
                continue;  // start over
            }
            std::vector<AlgebraPtr> algebras;
            for (int v = 0; v < q.num_vars(); ++v) algebras.push_back(q.domains[v].algebra);
            auto multopt = try_multiplication_term_uniform(algebras, cfg);
            if (!multopt) {
                // self-reducibility: some value of the first undetermined
                // variable extends iff the instance is satisfiable
                int branch = -1;
                for (int v = 0; v < q.num_vars(); ++v)
                    if (q.domain_size(v) > 1) {
                        branch = v;
                        break;
                    }
                if (branch < 0) return verify_assignment(q, Assignment(q.num_vars(), 0));
                for (Element a = 0; a < q.domain_size(branch); ++a)
                    if (decide_instance(fix_value(q, branch, a), depth + 1)) return true;
                return false;
            }
            auto mult = *multopt;
            auto sols = edge_solutions(q, pstar, m, mult, depth);
            MarotiResult mr = maroti_reduce(q, m, sols, mult);
            if (instance_size(mr.instance, cfg) >= m.size)
                throw internal_error("maroti: size measure did not decrease");
            q = std::move(mr.instance);
        }
    }

    SolveOutcome base_case(const Instance& p) {
        return base ? base(p, cfg) : base_solve_semilattice_free(p, cfg);
    }

    Stabilized stabilize_full(Instance p) {
        Lift lift = identity_lift();
        while (true) {
            PropagationResult prop = establish_23_minimality(p);
            lift = compose_lift(std::move(lift), prop.lift);
            p = std::move(prop.instance);
            if (p.unsat) break;
            SplitResult split = split_subdirectly_irreducible(p, cfg);
            if (!split.changed) break;
            note("si-split: " + std::to_string(p.num_vars()) + " -> " +
                 std::to_string(split.instance.num_vars()) + " variables");
            lift = compose_lift(std::move(lift), split.lift);
            p = std::move(split.instance);
        }
        return {std::move(p), std::move(lift)};
    }

    // Steps 9-13 of the main loop: decide a tightened version of P*
    bool decide_within(const Instance& q0, int /*outer_size*/, int depth) {
        return decide_instance(q0, depth);
    }

    // Steps 7-15: flagged (variable, quotient value) pairs of P* = P/mu*
    std::vector<std::pair<int, Element>> global_one_minimality(const Instance& pstar,
                                                               const InstanceMeasures& m, int depth) {
        std::vector<std::pair<int, Element>> flags;
        for (int v = 0; v < pstar.num_vars(); ++v)
            for (Element a = 0; a < pstar.domain_size(v); ++a)
                if (!decide_within(fix_value(pstar, v, a), m.size, depth)) flags.emplace_back(v, a);
        // unflagged value sets are projections of the solution set, hence subuniverses
        for (int v = 0; v < pstar.num_vars(); ++v) {
            std::vector<Element> unflagged;
            for (Element a = 0; a < pstar.domain_size(v); ++a)
                if (!std::count(flags.begin(), flags.end(), std::make_pair(v, a))) unflagged.push_back(a);
            if (unflagged.empty()) continue;
            if (sg(pstar.algebra_of(v), unflagged) != unflagged)
                throw internal_error("global 1-minimality: unflagged values do not form a subuniverse");
        }
        return flags;
    }

    // Stage 2: per MAX variable, a semilattice edge absorbed by the shared
    // multiplication term and a P*-solution hitting the absorbing block
    std::vector<EdgeSolution> edge_solutions(const Instance& p, const Instance& pstar,
                                             const InstanceMeasures& m,
                                             const std::vector<std::vector<Element>>& mult, int depth) {
        std::vector<EdgeSolution> out;
        for (int v : m.max_vars) {
            const FiniteAlgebra& av = p.algebra_of(v);
            const auto& edges = semilattice_edges(av, cfg);
            if (edges.empty())
                throw internal_error("edge_solutions: MAX domain without a semilattice edge");
            int from = -1, to = -1;
            for (const auto& e : edges)
                if (mult[v][e.a * av.size() + e.b] == e.b) {
                    from = e.a;
                    to = e.b;
                    break;
                }
            if (from < 0)
                throw internal_error("edge_solutions: multiplication absorbs no semilattice edge");
            Element b_star = m.mu_star[v].block_index(to);
            if (m.mu_star[v].block_index(from) == b_star)
                throw internal_error("edge_solutions: edge collapsed by mu*");
            // an already extracted solution through the same value can be reused
            const Assignment* reuse = nullptr;
            for (const auto& prev : out)
                if (prev.phi[v] == b_star) {
                    reuse = &prev.phi;
                    break;
                }
            if (reuse) {
                out.push_back({v, from, to, b_star, *reuse});
                continue;
            }
            Instance q = fix_value(pstar, v, b_star);
            if (!decide_within(q, m.size, depth))
                throw internal_error("edge_solutions: globally 1-minimal value has no extension");
            Assignment phi(pstar.num_vars(), -1);
            phi[v] = b_star;
            for (int u = 0; u < pstar.num_vars(); ++u) {
                if (u == v) continue;
                bool found = false;
                for (Element c = 0; c < pstar.domain_size(u); ++c) {
                    Instance qc = fix_value(q, u, c);
                    if (decide_within(qc, m.size, depth)) {
                        q = std::move(qc);
                        phi[u] = c;
                        found = true;
                        break;
                    }
                }
                if (!found) throw internal_error("edge_solutions: no extension while fixing values");
            }
            if (!verify_assignment(pstar, phi))
                throw internal_error("edge_solutions: extracted assignment does not solve P/mu*");
            out.push_back({v, from, to, b_star, std::move(phi)});
        }
        return out;
    }

    // Stage 3: compose the per-variable multiplication maps to their
    // idempotent power and retract the instance onto the images
    MarotiResult maroti_reduce(const Instance& p, const InstanceMeasures& m,
                               const std::vector<EdgeSolution>& sols,
                               const std::vector<std::vector<Element>>& mult) {
        const int n = p.num_vars();
        std::vector<std::vector<Element>> step(n);
        for (int v = 0; v < n; ++v) {
            const int sz = p.domain_size(v);
            std::vector<Element> q(sz);
            for (Element x = 0; x < sz; ++x) q[x] = x;
            for (const auto& sol : sols) {
                // representatives of the block phi(v) in A_v
                std::vector<Element> reps;
                for (Element e = 0; e < sz; ++e)
                    if (m.mu_star[v].block_index(e) == sol.phi[v]) reps.push_back(e);
                if (reps.empty()) throw internal_error("maroti: empty quotient block");
                std::vector<Element> next(sz);
                for (Element x = 0; x < sz; ++x) next[x] = mult[v][q[x] * sz + reps[0]];
                // multiplication by any representative of the block agrees
                for (std::size_t ri = 1; ri < reps.size(); ++ri)
                    for (Element x = 0; x < sz; ++x)
                        if (mult[v][q[x] * sz + reps[ri]] != next[x])
                            throw internal_error("maroti: witness choice changed the map");
                q = std::move(next);
            }
            step[v] = std::move(q);
        }
        // smallest k with every step^k idempotent
        auto compose_map = [](const std::vector<Element>& f, const std::vector<Element>& g) {
            std::vector<Element> h(f.size());
            for (std::size_t x = 0; x < f.size(); ++x) h[x] = f[g[x]];
            return h;
        };
        int k = 0;
        std::vector<std::vector<Element>> powk = step;
        for (k = 1; k <= 64; ++k) {
            bool all_idem = true;
            for (int v = 0; v < n; ++v) {
                const auto& f = powk[v];
                for (Element x = 0; x < p.domain_size(v) && all_idem; ++x)
                    if (f[f[x]] != f[x]) all_idem = false;
            }
            if (all_idem) break;
            for (int v = 0; v < n; ++v) powk[v] = compose_map(powk[v], step[v]);
        }
        if (k > 64) throw internal_error("maroti: no idempotent power found");
        // consistency of the map family: images of constraint tuples stay inside
        for (const auto& c : p.constraints)
            for (const auto& t : c.rel.tuples) {
                std::vector<Element> img(t.size());
                for (std::size_t i = 0; i < t.size(); ++i) img[i] = powk[c.scope[i]][t[i]];
                if (!c.rel.contains(img))
                    throw internal_error("maroti: multiplication maps are not consistent");
            }
        for (int v = 0; v < n; ++v) {
            if (m.sl_free[v]) {
                for (Element x = 0; x < p.domain_size(v); ++x)
                    if (powk[v][x] != x)
                        throw internal_error("maroti: semilattice-free domain was moved");
            }
        }
        Instance out;
        out.var_names = p.var_names;
        std::vector<std::vector<Element>> image_of(n);
        std::vector<std::vector<int>> new_index(n);
        for (int v = 0; v < n; ++v) {
            const int sz = p.domain_size(v);
            new_index[v].assign(sz, -1);
            for (Element e = 0; e < sz; ++e)
                if (powk[v][e] == e) {
                    new_index[v][e] = static_cast<int>(image_of[v].size());
                    image_of[v].push_back(e);
                }
            if (m.in_max(v) && image_of[v].size() >= static_cast<std::size_t>(sz))
                throw internal_error("maroti: MAX domain did not shrink");
            DomainDescriptor d;
            d.algebra = retract(p.algebra_of(v), powk[v]);
            d.provenance = p.domains[v].provenance;
            d.provenance.push_back(ProvenanceRetract{image_of[v]});
            out.domains.push_back(std::move(d));
        }
        for (const auto& c : p.constraints) {
            Relation r;
            r.arity = c.rel.arity;
            for (const auto& t : c.rel.tuples) {
                std::vector<Element> nt(t.size());
                for (std::size_t i = 0; i < t.size(); ++i)
                    nt[i] = new_index[c.scope[i]][powk[c.scope[i]][t[i]]];
                r.tuples.push_back(std::move(nt));
            }
            r.normalize();
            out.constraints.push_back({c.scope, std::move(r)});
        }
        // the retracts must still carry invariant relations
        for (const auto& c : out.constraints) {
            std::vector<AlgebraPtr> coords;
            for (int v : c.scope) coords.push_back(out.domains[v].algebra);
            if (auto bad = check_invariance(c.rel, coords))
                throw internal_error("maroti: retracted relation lost invariance under '" +
                                     bad->op_name + "'");
        }
        Lift lift = [image_of](const Assignment& a) {
            Assignment old(a.size());
            for (std::size_t v = 0; v < a.size(); ++v) old[v] = image_of[v][a[v]];
            return old;
        };
        return MarotiResult{std::move(out), std::move(lift), k};
    }

    SolveOutcome run(Instance p, int depth) {
        if (depth > cfg.solve_depth_cap) throw internal_error("solve: recursion depth cap exceeded");
        Lift lift = identity_lift();
        auto finish_sat = [&](SolveOutcome sub) {
            sub.assignment = lift(sub.assignment);
            return sub;
        };
        long restarts_left = 100;  // guard only; every restart removes elements
        for (int v = 0; v < p.num_vars(); ++v) restarts_left += 4L * p.domain_size(v);
        for (const auto& c : p.constraints) restarts_left += static_cast<long>(c.rel.tuples.size());
        while (true) {
            if (--restarts_left < 0) throw internal_error("solve: restart guard tripped");
            if (p.unsat || p.any_empty_relation()) return {};
            if (p.constraints.empty()) {
                SolveOutcome sub;
                sub.sat = true;
                sub.assignment.assign(p.num_vars(), 0);
                return finish_sat(std::move(sub));
            }
            auto comps = components_of(p);
            if (comps.size() > 1) {
                note("split into " + std::to_string(comps.size()) + " independent components");
                Assignment merged(p.num_vars(), -1);
                for (const auto& comp : comps) {
                    SolveOutcome sub = run(restrict_instance(p, comp), depth);
                    if (!sub.sat) return {};
                    for (std::size_t i = 0; i < comp.size(); ++i) merged[comp[i]] = sub.assignment[i];
                }
                SolveOutcome sub;
                sub.sat = true;
                sub.assignment = std::move(merged);
                return finish_sat(std::move(sub));
            }
            if (all_semilattice_free(p, cfg)) {
                note("base: all domains semilattice-free");
                SolveOutcome sub = base_case(p);
                return sub.sat ? finish_sat(std::move(sub)) : SolveOutcome{};
            }
            Stabilized st = stabilize_full(std::move(p));
            lift = compose_lift(std::move(lift), st.lift);
            p = std::move(st.instance);
            if (p.unsat || p.any_empty_relation()) return {};
            if (all_semilattice_free(p, cfg)) {
                SolveOutcome sub = base_case(p);
                return sub.sat ? finish_sat(std::move(sub)) : SolveOutcome{};
            }
            BlockMinResult bm = establish_block_minimality(
                p, [this, depth](const Instance& sub) { return decide_instance(sub, depth + 1); },
                cfg);
            if (bm.changed) note("block-minimality tightened the instance");
            lift = compose_lift(std::move(lift), bm.lift);
            p = std::move(bm.instance);
            if (p.unsat || p.any_empty_relation()) return {};
            if (all_semilattice_free(p, cfg)) {
                SolveOutcome sub = base_case(p);
                return sub.sat ? finish_sat(std::move(sub)) : SolveOutcome{};
            }
            InstanceMeasures m = measures(p, cfg);
            note("measures: size=" + std::to_string(m.size) + " |MAX|=" +
                 std::to_string(m.max_vars.size()) + " |Center|=" + std::to_string(m.center_vars.size()));
            Instance pstar = quotient_instance(p, m.mu_star);
            auto flags = global_one_minimality(pstar, m, depth);
            if (!flags.empty()) {
                note("global 1-minimality flagged " + std::to_string(flags.size()) +
                     " values; restarting");
                std::vector<std::vector<Element>> keep(p.num_vars());
                for (int v = 0; v < p.num_vars(); ++v) {
                    for (Element e = 0; e < p.domain_size(v); ++e) {
                        Element block = m.mu_star[v].block_index(e);
                        if (!std::count(flags.begin(), flags.end(), std::make_pair(v, block)))
                            keep[v].push_back(e);
                    }
                }
                ShrinkResult sh = shrink_domains(p, keep);
                lift = compose_lift(std::move(lift), sh.lift);
                p = std::move(sh.instance);
                continue;
            }
            // Stages 2-3: Maroti reduction to a strictly smaller instance
            std::vector<AlgebraPtr> algebras;
            for (int v = 0; v < p.num_vars(); ++v) algebras.push_back(p.domains[v].algebra);
            auto multopt = try_multiplication_term_uniform(algebras, cfg);
            if (!multopt) {
                // no common multiplication term exists for this domain mix;
                // extract a witness by value fixing instead of multiplying
                note("no common multiplication term; extracting by value fixing");
                int branch = -1;
                for (int v = 0; v < p.num_vars(); ++v)
                    if (p.domain_size(v) > 1) {
                        branch = v;
                        break;
                    }
                if (branch < 0) {
                    Assignment phi(p.num_vars(), 0);
                    if (!verify_assignment(p, phi)) return {};
                    SolveOutcome sub;
                    sub.sat = true;
                    sub.assignment = std::move(phi);
                    return finish_sat(std::move(sub));
                }
                for (Element a = 0; a < p.domain_size(branch); ++a) {
                    Instance fixed = fix_value(p, branch, a);
                    if (!decide_instance(fixed, depth + 1)) continue;
                    SolveOutcome sub = run(std::move(fixed), depth + 1);
                    if (!sub.sat) throw internal_error("solve: decided value lost its extension");
                    return finish_sat(std::move(sub));
                }
                return {};
            }
            auto mult = *multopt;
            auto sols = edge_solutions(p, pstar, m, mult, depth);
            MarotiResult mr = maroti_reduce(p, m, sols, mult);
            if (instance_size(mr.instance, cfg) >= m.size)
                throw internal_error("maroti: size measure did not decrease");
            note("maroti: size " + std::to_string(m.size) + " -> " +
                 std::to_string(instance_size(mr.instance, cfg)) + " (k=" +
                 std::to_string(mr.iterations) + ")");
            lift = compose_lift(std::move(lift), mr.lift);
            SolveOutcome sub = run(std::move(mr.instance), depth + 1);
            return sub.sat ? finish_sat(std::move(sub)) : SolveOutcome{};
        }
    }
};

} // namespace

SolveOutcome base_solve_semilattice_free(const Instance& p, const Config& cfg) {
    return default_base_solve(p, cfg);
}

Stabilized stabilize(const Instance& p, const Config& cfg) {
    Solver s;
    s.cfg = cfg;
    return s.stabilize_full(p);
}

Instance maroti_step(const Instance& p, const std::vector<Partition>& mu_star, const Assignment& phi,
                     const std::vector<std::vector<Element>>& mult) {
    Instance out = p;
    for (std::size_t ci = 0; ci < p.constraints.size(); ++ci) {
        const auto& c = p.constraints[ci];
        // witness tuples with the same quotient image as phi on the scope
        std::vector<const std::vector<Element>*> witnesses;
        for (const auto& t : c.rel.tuples) {
            bool match = true;
            for (std::size_t i = 0; i < c.scope.size(); ++i)
                if (mu_star[c.scope[i]].block_index(t[i]) != phi[c.scope[i]]) match = false;
            if (match) witnesses.push_back(&t);
        }
        if (witnesses.empty())
            throw input_error("maroti_step: phi is not a solution of the quotient instance");
        auto multiply = [&](const std::vector<Element>& witness) {
            Relation r;
            r.arity = c.rel.arity;
            for (const auto& t : c.rel.tuples) {
                std::vector<Element> nt(t.size());
                for (std::size_t i = 0; i < t.size(); ++i) {
                    int v = c.scope[i];
                    nt[i] = mult[v][t[i] * p.domain_size(v) + witness[i]];
                }
                r.tuples.push_back(std::move(nt));
            }
            r.normalize();
            return r;
        };
        Relation first = multiply(*witnesses[0]);
        if (witnesses.size() > 1) {
            Relation second = multiply(*witnesses[1]);
            if (!(second.tuples == first.tuples))
                throw internal_error("maroti_step: result depends on the witness choice");
        }
        out.constraints[ci].rel = std::move(first);
    }
    out.strategy.reset();
    return out;
}

SolveOutcome solve(const Instance& p, const SolverOptions& opts) {
    Solver s;
    s.cfg = opts.cfg;
    s.base = opts.base;
    s.collect_trace = opts.collect_trace;
    SolveOutcome out = s.run(p, 0);
    out.trace = std::move(s.trace);
    if (out.sat && !verify_assignment(p, out.assignment))
        throw internal_error("solve: produced assignment fails verification");
    return out;
}

} // namespace uacsp
