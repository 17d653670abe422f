#include "blockmin.hpp"

#include <algorithm>
#include <set>

#include "centralizer.hpp"
#include "clone.hpp"
#include "errors.hpp"
#include "oracle.hpp"
#include "propagation.hpp"

namespace uacsp {

bool InstanceMeasures::in_max(int v) const {
    return std::count(max_vars.begin(), max_vars.end(), v) > 0;
}

bool InstanceMeasures::in_center(int v) const {
    return std::count(center_vars.begin(), center_vars.end(), v) > 0;
}

int instance_size(const Instance& p, const Config& cfg) {
    int size = 0;
    for (int v = 0; v < p.num_vars(); ++v)
        if (!is_semilattice_free(p.algebra_of(v), cfg)) size = std::max(size, p.domain_size(v));
    return size;
}

InstanceMeasures measures(const Instance& p, const Config& cfg) {
    InstanceMeasures m;
    const int n = p.num_vars();
    m.sl_free.resize(n);
    for (int v = 0; v < n; ++v) {
        m.sl_free[v] = is_semilattice_free(p.algebra_of(v), cfg);
        if (!m.sl_free[v]) m.size = std::max(m.size, p.domain_size(v));
    }
    for (int v = 0; v < n; ++v) {
        const FiniteAlgebra& a = p.algebra_of(v);
        if (a.size() == 1) {
            m.mu.push_back(Partition::equality(1));
            continue;
        }
        auto mono = monolith(a, cfg);
        if (!mono.subdirectly_irreducible)
            throw internal_error("measures: domain of '" + p.var_names[v] + "' is not subdirectly irreducible");
        m.mu.push_back(*mono.monolith);
    }
    for (int v = 0; v < n; ++v) {
        if (!m.sl_free[v] && p.domain_size(v) == m.size) m.max_vars.push_back(v);
        if (p.domain_size(v) >= 2 &&
            centralizer(p.algebra_of(v), Partition::equality(p.domain_size(v)), m.mu[v], cfg).is_full())
            m.center_vars.push_back(v);
    }
    for (int v = 0; v < n; ++v) {
        if (m.in_max(v) && m.in_center(v)) m.mu_star.push_back(m.mu[v]);
        else m.mu_star.push_back(Partition::equality(p.domain_size(v)));
    }
    return m;
}

std::vector<Partition> mu_Y(const Instance& p, const InstanceMeasures& m, const std::vector<int>& y) {
    std::vector<Partition> out;
    for (int v = 0; v < p.num_vars(); ++v) {
        if (std::count(y.begin(), y.end(), v)) out.push_back(m.mu[v]);
        else out.push_back(Partition::equality(p.domain_size(v)));
    }
    return out;
}

namespace {

Instance with_strategy_as_constraints(const Instance& p) {
    Instance out = p;
    out.constraints = p.augmented_constraints();
    out.strategy.reset();
    return out;
}

std::vector<int> max_minus(const InstanceMeasures& m, const std::vector<int>& u) {
    std::vector<int> y;
    for (int v : m.max_vars)
        if (!std::count(u.begin(), u.end(), v)) y.push_back(v);
    return y;
}

} // namespace

Instance subproblem(const Instance& p, const InstanceMeasures& m, const std::vector<int>& strand_vars) {
    return quotient_instance(with_strategy_as_constraints(p), mu_Y(p, m, max_minus(m, strand_vars)));
}

BlockMinResult establish_block_minimality(const Instance& p, const DecideFn& decide, const Config& cfg) {
    BlockMinResult res{p, identity_lift(), false, 0};
    if (res.instance.unsat) return res;
    if (!res.instance.strategy) throw input_error("establish_block_minimality: stabilized input required");
    while (true) {
        Instance& cur = res.instance;
        InstanceMeasures m = measures(cur, cfg);
        auto all_strands = find_strands(cur, cfg);
        // the subproblem P_{/U} depends on the variable set only; different
        // alignments for the same set decompose the same instance, so one
        // strand per set suffices (first in canonical order)
        std::vector<Strand> strands;
        std::set<std::vector<int>> seen_sets;
        for (auto& s : all_strands)
            if (seen_sets.insert(s.vars).second) strands.push_back(std::move(s));
        bool changed = false;
        // main constraints first, then strategy relations, matching the
        // augmented ordering used by subproblem()
        const std::size_t n_main = cur.constraints.size();
        for (const auto& strand : strands) {
            // a strand with the full congruence on a MAX variable shrinks
            // nothing; the growth never produces one, but guard anyway
            bool degenerate_alpha = false;
            for (std::size_t i = 0; i < strand.vars.size(); ++i)
                if (strand.alphas[i].is_full() && m.in_max(strand.vars[i])) degenerate_alpha = true;
            if (degenerate_alpha) continue;

            Instance q = subproblem(cur, m, strand.vars);
            // block classes: per strand variable, the elements of each
            // correspondence class (anchored at the first strand variable)
            std::vector<std::vector<std::vector<Element>>> classes;  // class -> var(all) -> kept elements
            {
                const int anchor = strand.vars[0];
                for (const auto& anchor_block : strand.alphas[0].blocks()) {
                    std::vector<std::vector<Element>> keep(cur.num_vars());
                    for (int v = 0; v < q.num_vars(); ++v)
                        for (Element e = 0; e < q.domain_size(v); ++e) keep[v].push_back(e);
                    keep[anchor] = anchor_block;
                    bool viable = true;
                    for (std::size_t i = 1; i < strand.vars.size() && viable; ++i) {
                        int w = strand.vars[i];
                        const Relation& r = anchor < w ? cur.strategy->at(anchor, w)
                                                       : cur.strategy->at(w, anchor);
                        int target = -1;
                        for (const auto& t : r.tuples) {
                            Element ea = anchor < w ? t[0] : t[1];
                            Element ew = anchor < w ? t[1] : t[0];
                            if (strand.alphas[0].same(ea, anchor_block[0])) {
                                target = strand.alphas[i].rep(ew);
                                break;
                            }
                        }
                        if (target < 0) {
                            viable = false;
                            break;
                        }
                        keep[w].clear();
                        for (Element e = 0; e < cur.domain_size(w); ++e)
                            if (strand.alphas[i].rep(e) == target) keep[w].push_back(e);
                    }
                    if (viable) classes.push_back(std::move(keep));
                }
            }
            auto aug = cur.augmented_constraints();
            std::vector<Partition> muy = mu_Y(cur, m, max_minus(m, strand.vars));
            for (std::size_t ci = 0; ci < aug.size(); ++ci) {
                const auto& c = aug[ci];
                std::set<std::vector<Element>> decided_bad, decided_good;
                std::vector<std::vector<Element>> to_remove;
                for (const auto& t : c.rel.tuples) {
                    std::vector<Element> img(t.size());
                    for (std::size_t i = 0; i < t.size(); ++i)
                        img[i] = muy[c.scope[i]].block_index(t[i]);
                    if (decided_good.count(img)) continue;
                    if (decided_bad.count(img)) {
                        to_remove.push_back(t);
                        continue;
                    }
                    Instance fixed = q;
                    for (std::size_t i = 0; i < c.scope.size(); ++i) {
                        Relation r;
                        r.arity = 1;
                        r.tuples = {{img[i]}};
                        fixed.constraints.push_back({{c.scope[i]}, std::move(r)});
                    }
                    bool extendable = false;
                    for (const auto& keep : classes) {
                        auto part = shrink_domains(fixed, keep);
                        if (part.instance.unsat || part.instance.any_empty_relation()) continue;
                        if (instance_size(part.instance, cfg) < m.size) {
                            if (decide(part.instance)) {
                                extendable = true;
                                break;
                            }
                        } else {
                            // degenerate: not strictly smaller, fall back to the oracle
                            ++res.oracle_fallbacks;
                            if (brute_force_solve(part.instance, cfg).sat) {
                                extendable = true;
                                break;
                            }
                        }
                    }
                    if (extendable) decided_good.insert(img);
                    else {
                        decided_bad.insert(img);
                        to_remove.push_back(t);
                    }
                }
                if (to_remove.empty()) continue;
                changed = true;
                auto& target_rel = ci < n_main
                                       ? cur.constraints[ci].rel
                                       : cur.strategy->binary[{c.scope[0], c.scope[1]}];
                std::vector<std::vector<Element>> kept;
                for (const auto& t : target_rel.tuples)
                    if (!std::count(to_remove.begin(), to_remove.end(), t)) kept.push_back(t);
                target_rel.tuples = std::move(kept);
                if (target_rel.empty()) {
                    cur.unsat = true;
                    res.changed = true;
                    return res;
                }
            }
        }
        if (!changed) break;
        res.changed = true;
        PropagationResult prop = establish_23_minimality(res.instance);
        res.lift = compose_lift(std::move(res.lift), prop.lift);
        res.instance = std::move(prop.instance);
        if (res.instance.unsat) return res;
        SplitResult split = split_subdirectly_irreducible(res.instance, cfg);
        while (split.changed) {
            res.lift = compose_lift(std::move(res.lift), split.lift);
            PropagationResult p2 = establish_23_minimality(split.instance);
            res.lift = compose_lift(std::move(res.lift), p2.lift);
            res.instance = std::move(p2.instance);
            if (res.instance.unsat) return res;
            split = split_subdirectly_irreducible(res.instance, cfg);
        }
    }
    return res;
}

} // namespace uacsp
