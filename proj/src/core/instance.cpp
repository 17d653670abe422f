#include "instance.hpp"

#include <algorithm>
#include <set>

#include "errors.hpp"

namespace uacsp {

bool Relation::contains(const std::vector<Element>& t) const {
    return std::binary_search(tuples.begin(), tuples.end(), t);
}

void Relation::normalize() {
    std::sort(tuples.begin(), tuples.end());
    tuples.erase(std::unique(tuples.begin(), tuples.end()), tuples.end());
}

Relation Relation::projected(const std::vector<int>& coords) const {
    Relation out;
    out.arity = static_cast<int>(coords.size());
    for (const auto& t : tuples) {
        std::vector<Element> pt(coords.size());
        for (std::size_t i = 0; i < coords.size(); ++i) pt[i] = t[coords[i]];
        out.tuples.push_back(std::move(pt));
    }
    out.normalize();
    return out;
}

const Relation& Strategy::at(int u, int v) const {
    auto it = binary.find({u, v});
    if (it == binary.end()) throw internal_error("strategy relation missing");
    return it->second;
}

bool Strategy::admits(int u, Element a, int v, Element b) const {
    if (u > v) return admits(v, b, u, a);
    return at(u, v).contains({a, b});
}

bool Instance::any_empty_relation() const {
    for (const auto& c : constraints)
        if (c.rel.empty()) return true;
    if (strategy)
        for (const auto& [k, r] : strategy->binary)
            if (r.empty()) return true;
    return false;
}

std::vector<Constraint> Instance::augmented_constraints() const {
    std::vector<Constraint> out = constraints;
    if (strategy)
        for (const auto& [k, r] : strategy->binary) out.push_back({{k.first, k.second}, r});
    return out;
}

Lift identity_lift() {
    return [](const Assignment& a) { return a; };
}

Lift compose_lift(Lift outer, Lift inner) {
    return [outer = std::move(outer), inner = std::move(inner)](const Assignment& a) {
        return outer(inner(a));
    };
}

std::optional<InvarianceViolation> check_invariance(const Relation& rel,
                                                    const std::vector<AlgebraPtr>& coord_algebras) {
    if (rel.empty()) return std::nullopt;
    const int k = rel.arity;
    if (static_cast<int>(coord_algebras.size()) != k)
        throw input_error("check_invariance: coordinate algebra count mismatch");
    const auto& sig = coord_algebras[0]->ops();
    for (std::size_t oi = 0; oi < sig.size(); ++oi) {
        const int m = sig[oi].arity;
        std::vector<std::size_t> pick(m, 0);
        std::vector<Element> args(m), out(k);
        while (true) {
            for (int c = 0; c < k; ++c) {
                const FiniteAlgebra& a = *coord_algebras[c];
                for (int i = 0; i < m; ++i) args[i] = rel.tuples[pick[i]][c];
                out[c] = a.ops()[oi].apply(a.size(), args);
            }
            if (!rel.contains(out)) {
                InvarianceViolation v;
                v.op_name = sig[oi].name;
                for (int i = 0; i < m; ++i) v.arguments.push_back(rel.tuples[pick[i]]);
                v.result = out;
                return v;
            }
            int pos = m - 1;
            while (pos >= 0 && pick[pos] + 1 == rel.tuples.size()) pick[pos--] = 0;
            if (pos < 0) break;
            ++pick[pos];
        }
    }
    return std::nullopt;
}

bool verify_assignment(const Instance& p, const Assignment& phi) {
    if (static_cast<int>(phi.size()) != p.num_vars()) return false;
    for (int v = 0; v < p.num_vars(); ++v)
        if (phi[v] < 0 || phi[v] >= p.domain_size(v)) return false;
    for (const auto& c : p.constraints) {
        std::vector<Element> img(c.scope.size());
        for (std::size_t i = 0; i < c.scope.size(); ++i) img[i] = phi[c.scope[i]];
        if (!c.rel.contains(img)) return false;
    }
    return true;
}

Instance restrict_instance(const Instance& p, const std::vector<int>& vars) {
    std::vector<int> w = vars;
    std::sort(w.begin(), w.end());
    w.erase(std::unique(w.begin(), w.end()), w.end());
    std::vector<int> new_index(p.num_vars(), -1);
    for (std::size_t i = 0; i < w.size(); ++i) new_index[w[i]] = static_cast<int>(i);
    Instance out;
    out.unsat = p.unsat;
    for (int v : w) {
        out.var_names.push_back(p.var_names[v]);
        out.domains.push_back(p.domains[v]);
    }
    for (const auto& c : p.constraints) {
        std::vector<int> kept_pos, kept_scope;
        for (std::size_t i = 0; i < c.scope.size(); ++i)
            if (new_index[c.scope[i]] >= 0) {
                kept_pos.push_back(static_cast<int>(i));
                kept_scope.push_back(new_index[c.scope[i]]);
            }
        if (kept_pos.empty()) continue;
        out.constraints.push_back({kept_scope, c.rel.projected(kept_pos)});
    }
    if (p.strategy) {
        Strategy s;
        for (const auto& [k, r] : p.strategy->binary)
            if (new_index[k.first] >= 0 && new_index[k.second] >= 0)
                s.binary[{new_index[k.first], new_index[k.second]}] = r;
        out.strategy = std::move(s);
    }
    return out;
}

Instance quotient_instance(const Instance& p, const std::vector<Partition>& alphas) {
    if (static_cast<int>(alphas.size()) != p.num_vars())
        throw input_error("quotient_instance: congruence count mismatch");
    Instance out;
    out.var_names = p.var_names;
    out.unsat = p.unsat;
    std::vector<std::vector<int>> block_of(p.num_vars());
    for (int v = 0; v < p.num_vars(); ++v) {
        const Partition& al = alphas[v];
        DomainDescriptor d;
        if (al.is_equality()) {
            d = p.domains[v];
        } else {
            d.algebra = quotient(p.algebra_of(v), al);
            d.provenance = p.domains[v].provenance;
            std::vector<int> bm(p.domain_size(v));
            for (Element e = 0; e < p.domain_size(v); ++e) bm[e] = al.block_index(e);
            d.provenance.push_back(ProvenanceQuotient{bm});
        }
        block_of[v].resize(p.domain_size(v));
        for (Element e = 0; e < p.domain_size(v); ++e) block_of[v][e] = al.block_index(e);
        out.domains.push_back(std::move(d));
    }
    for (const auto& c : p.constraints) {
        Relation r;
        r.arity = c.rel.arity;
        for (const auto& t : c.rel.tuples) {
            std::vector<Element> bt(t.size());
            for (std::size_t i = 0; i < t.size(); ++i) bt[i] = block_of[c.scope[i]][t[i]];
            r.tuples.push_back(std::move(bt));
        }
        r.normalize();
        out.constraints.push_back({c.scope, std::move(r)});
    }
    return out;
}

Instance fix_value(const Instance& p, int v, Element a) {
    if (v < 0 || v >= p.num_vars()) throw input_error("fix_value: no such variable");
    if (a < 0 || a >= p.domain_size(v)) throw input_error("fix_value: value outside the domain");
    Instance out = p;
    Relation r;
    r.arity = 1;
    r.tuples = {{a}};
    out.constraints.push_back({{v}, std::move(r)});
    return out;
}

SplitResult split_subdirectly_irreducible(const Instance& p, const Config& cfg) {
    std::vector<std::vector<Partition>> factors(p.num_vars());
    bool changed = false;
    for (int v = 0; v < p.num_vars(); ++v) {
        auto mono = monolith(p.algebra_of(v), cfg);
        if (!mono.subdirectly_irreducible) {
            factors[v] = meet_irreducibles(p.algebra_of(v), cfg);
            changed = true;
        }
    }
    if (!changed) {
        SplitResult res{p, false, identity_lift()};
        return res;
    }
    Instance out;
    out.unsat = p.unsat;
    // old variable -> list of new indices; unsplit vars map to a single index
    std::vector<std::vector<int>> new_vars(p.num_vars());
    std::vector<std::vector<std::vector<int>>> block_maps(p.num_vars());
    for (int v = 0; v < p.num_vars(); ++v) {
        if (factors[v].empty()) {
            new_vars[v] = {static_cast<int>(out.var_names.size())};
            out.var_names.push_back(p.var_names[v]);
            out.domains.push_back(p.domains[v]);
            continue;
        }
        for (std::size_t i = 0; i < factors[v].size(); ++i) {
            const Partition& eta = factors[v][i];
            new_vars[v].push_back(static_cast<int>(out.var_names.size()));
            out.var_names.push_back(p.var_names[v] + "#" + std::to_string(i));
            DomainDescriptor d;
            d.algebra = quotient(p.algebra_of(v), eta);
            d.provenance = p.domains[v].provenance;
            std::vector<int> bm(p.domain_size(v));
            for (Element e = 0; e < p.domain_size(v); ++e) bm[e] = eta.block_index(e);
            block_maps[v].push_back(bm);
            d.provenance.push_back(ProvenanceFactor{static_cast<int>(i), bm});
            out.domains.push_back(std::move(d));
        }
    }
    // constraints rewritten through the embedding x -> (x/eta_1,...,x/eta_m)
    for (const auto& c : p.constraints) {
        std::vector<int> scope;
        for (int v : c.scope)
            for (int nv : new_vars[v]) scope.push_back(nv);
        Relation r;
        r.arity = static_cast<int>(scope.size());
        for (const auto& t : c.rel.tuples) {
            std::vector<Element> nt;
            for (std::size_t i = 0; i < c.scope.size(); ++i) {
                int v = c.scope[i];
                if (factors[v].empty()) {
                    nt.push_back(t[i]);
                } else {
                    for (const auto& bm : block_maps[v]) nt.push_back(bm[t[i]]);
                }
            }
            r.tuples.push_back(std::move(nt));
        }
        r.normalize();
        out.constraints.push_back({std::move(scope), std::move(r)});
    }
    // diagonal constraint linking the factors of each split variable
    for (int v = 0; v < p.num_vars(); ++v) {
        if (factors[v].empty()) continue;
        Relation diag;
        diag.arity = static_cast<int>(factors[v].size());
        for (Element e = 0; e < p.domain_size(v); ++e) {
            std::vector<Element> t;
            for (const auto& bm : block_maps[v]) t.push_back(bm[e]);
            diag.tuples.push_back(std::move(t));
        }
        diag.normalize();
        out.constraints.push_back({new_vars[v], std::move(diag)});
    }
    // lifting: recover x as the unique member of the intersection of blocks
    auto sizes = std::vector<int>(p.num_vars());
    for (int v = 0; v < p.num_vars(); ++v) sizes[v] = p.domain_size(v);
    Lift lift = [new_vars, block_maps, factors, sizes](const Assignment& a) {
        Assignment old(new_vars.size());
        for (std::size_t v = 0; v < new_vars.size(); ++v) {
            if (factors[v].empty()) {
                old[v] = a[new_vars[v][0]];
                continue;
            }
            int found = -1;
            for (Element e = 0; e < sizes[v]; ++e) {
                bool ok = true;
                for (std::size_t i = 0; i < new_vars[v].size(); ++i)
                    if (block_maps[v][i][e] != a[new_vars[v][i]]) ok = false;
                if (ok) {
                    found = e;
                    break;
                }
            }
            if (found < 0) throw internal_error("split lift: no element matches the chosen blocks");
            old[v] = found;
        }
        return old;
    };
    return SplitResult{std::move(out), true, std::move(lift)};
}

ShrinkResult shrink_domains(const Instance& p, const std::vector<std::vector<Element>>& keep) {
    bool changed = false;
    for (int v = 0; v < p.num_vars(); ++v) {
        if (static_cast<int>(keep[v].size()) != p.domain_size(v)) changed = true;
        if (keep[v].empty()) {
            Instance out = p;
            out.unsat = true;
            return ShrinkResult{std::move(out), true, identity_lift()};
        }
    }
    if (!changed) return ShrinkResult{p, false, identity_lift()};
    Instance out;
    out.var_names = p.var_names;
    out.unsat = p.unsat;
    std::vector<std::vector<int>> new_index(p.num_vars());
    std::vector<std::vector<Element>> maps(p.num_vars());
    for (int v = 0; v < p.num_vars(); ++v) {
        std::vector<Element> sorted = keep[v];
        std::sort(sorted.begin(), sorted.end());
        sorted.erase(std::unique(sorted.begin(), sorted.end()), sorted.end());
        maps[v] = sorted;
        new_index[v].assign(p.domain_size(v), -1);
        for (std::size_t i = 0; i < sorted.size(); ++i) new_index[v][sorted[i]] = static_cast<int>(i);
        DomainDescriptor d;
        if (sorted.size() == static_cast<std::size_t>(p.domain_size(v))) {
            d = p.domains[v];
        } else {
            d.algebra = subalgebra(p.algebra_of(v), sorted);
            d.provenance = p.domains[v].provenance;
            d.provenance.push_back(ProvenanceSubset{sorted});
        }
        out.domains.push_back(std::move(d));
    }
    auto remap = [&](const Constraint& c) {
        Relation r;
        r.arity = c.rel.arity;
        for (const auto& t : c.rel.tuples) {
            std::vector<Element> nt(t.size());
            bool ok = true;
            for (std::size_t i = 0; i < t.size(); ++i) {
                int ni = new_index[c.scope[i]][t[i]];
                if (ni < 0) {
                    ok = false;
                    break;
                }
                nt[i] = ni;
            }
            if (ok) r.tuples.push_back(std::move(nt));
        }
        r.normalize();
        return Constraint{c.scope, std::move(r)};
    };
    for (const auto& c : p.constraints) {
        Constraint nc = remap(c);
        if (nc.rel.empty()) out.unsat = true;
        out.constraints.push_back(std::move(nc));
    }
    if (p.strategy) {
        Strategy s;
        for (const auto& [k, r] : p.strategy->binary) {
            Constraint nc = remap({{k.first, k.second}, r});
            if (nc.rel.empty()) out.unsat = true;
            s.binary[k] = std::move(nc.rel);
        }
        out.strategy = std::move(s);
    }
    Lift lift = [maps](const Assignment& a) {
        Assignment old(a.size());
        for (std::size_t v = 0; v < a.size(); ++v) old[v] = maps[v][a[v]];
        return old;
    };
    return ShrinkResult{std::move(out), true, std::move(lift)};
}

Constraint diagonalize(const Constraint& c) {
    std::vector<int> distinct;
    std::vector<int> first_pos;
    for (std::size_t i = 0; i < c.scope.size(); ++i) {
        bool seen = false;
        for (int d : distinct)
            if (d == c.scope[i]) seen = true;
        if (!seen) {
            distinct.push_back(c.scope[i]);
            first_pos.push_back(static_cast<int>(i));
        }
    }
    if (distinct.size() == c.scope.size()) return c;
    Relation r;
    r.arity = static_cast<int>(distinct.size());
    for (const auto& t : c.rel.tuples) {
        bool diag_ok = true;
        for (std::size_t i = 0; i < c.scope.size() && diag_ok; ++i)
            for (std::size_t j = i + 1; j < c.scope.size(); ++j)
                if (c.scope[i] == c.scope[j] && t[i] != t[j]) {
                    diag_ok = false;
                    break;
                }
        if (!diag_ok) continue;
        std::vector<Element> nt(distinct.size());
        for (std::size_t i = 0; i < distinct.size(); ++i) nt[i] = t[first_pos[i]];
        r.tuples.push_back(std::move(nt));
    }
    r.normalize();
    return Constraint{distinct, std::move(r)};
}

} // namespace uacsp
