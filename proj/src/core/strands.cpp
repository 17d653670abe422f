#include "strands.hpp"

#include <algorithm>
#include <set>

#include "errors.hpp"

namespace uacsp {

namespace {

void require_subdirect(const Relation& r, int n0, int n1) {
    if (r.arity != 2) throw input_error("alignment: relation must be binary");
    std::set<Element> p0, p1;
    for (const auto& t : r.tuples) {
        p0.insert(t[0]);
        p1.insert(t[1]);
    }
    if (static_cast<int>(p0.size()) != n0 || static_cast<int>(p1.size()) != n1)
        throw input_error("alignment: relation is not subdirect");
}

Relation transposed(const Relation& r) {
    Relation out;
    out.arity = 2;
    for (const auto& t : r.tuples) out.tuples.push_back({t[1], t[0]});
    out.normalize();
    return out;
}

} // namespace

bool is_aligned(const Relation& r, const Partition& alpha, const Partition& gamma) {
    require_subdirect(r, alpha.size(), gamma.size());
    for (const auto& t1 : r.tuples)
        for (const auto& t2 : r.tuples)
            if (alpha.same(t1[0], t2[0]) != gamma.same(t1[1], t2[1])) return false;
    return true;
}

std::optional<Partition> induced_partition(const Relation& r, const Partition& alpha, bool from_first,
                                           const FiniteAlgebra& far_algebra, const Config& cfg) {
    Relation rel = from_first ? r : transposed(r);
    require_subdirect(rel, alpha.size(), far_algebra.size());
    std::vector<std::pair<Element, Element>> pairs;
    for (const auto& t1 : rel.tuples)
        for (const auto& t2 : rel.tuples)
            if (alpha.same(t1[0], t2[0])) pairs.emplace_back(t1[1], t2[1]);
    Partition gamma = Partition::from_pairs(far_algebra.size(), pairs);
    if (!is_congruence(far_algebra, gamma, cfg)) return std::nullopt;
    if (!is_aligned(rel, alpha, gamma)) return std::nullopt;
    return gamma;
}

std::vector<Strand> find_strands(const Instance& p, const Config& cfg) {
    if (!p.strategy) throw input_error("find_strands: (2,3)-strategy required");
    const int n = p.num_vars();
    auto rel_between = [&](int u, int v) {  // oriented u -> v
        if (u < v) return p.strategy->at(u, v);
        return transposed(p.strategy->at(v, u));
    };
    std::set<Strand> out;
    for (int v = 0; v < n; ++v) {
        Strand single;
        single.vars = {v};
        single.alphas = {Partition::equality(p.domain_size(v))};
        out.insert(std::move(single));
    }
    for (int v = 0; v < n; ++v) {
        for (const auto& alpha : con(p.algebra_of(v), cfg).congruences) {
            if (alpha.is_full()) continue;
            std::vector<int> vars{v};
            std::vector<Partition> alphas{alpha};
            for (int w = 0; w < n; ++w) {
                if (w == v) continue;
                auto gamma = induced_partition(rel_between(v, w), alpha, true, p.algebra_of(w), cfg);
                if (!gamma) continue;
                bool ok = true;
                for (std::size_t i = 0; i < vars.size() && ok; ++i)
                    ok = is_aligned(rel_between(vars[i], w), alphas[i], *gamma);
                if (!ok) continue;
                vars.push_back(w);
                alphas.push_back(std::move(*gamma));
            }
            // canonical order by variable index
            std::vector<int> order(vars.size());
            for (std::size_t i = 0; i < order.size(); ++i) order[i] = static_cast<int>(i);
            std::sort(order.begin(), order.end(), [&](int a, int b) { return vars[a] < vars[b]; });
            Strand s;
            for (int i : order) {
                s.vars.push_back(vars[i]);
                s.alphas.push_back(alphas[i]);
            }
            out.insert(std::move(s));
        }
    }
    return std::vector<Strand>(out.begin(), out.end());
}

std::vector<Instance> decompose(const Instance& p_w, const Strand& strand, const Config& cfg) {
    // p_w's variables are exactly the strand's, in order
    if (p_w.num_vars() != static_cast<int>(strand.vars.size()))
        throw input_error("decompose: instance does not match the strand");
    const int k = p_w.num_vars();
    for (int i = 0; i < k; ++i)
        for (int j = i + 1; j < k; ++j) {
            if (!p_w.strategy) throw input_error("decompose: strategy required");
            if (!is_aligned(p_w.strategy->at(i, j), strand.alphas[i], strand.alphas[j]))
                throw input_error("decompose: restriction is not aligned for the strand");
        }
    // block correspondence classes, anchored at the first variable's blocks
    const auto anchor_blocks = strand.alphas[0].blocks();
    std::vector<Instance> parts;
    for (const auto& anchor : anchor_blocks) {
        std::vector<std::vector<Element>> keep(k);
        keep[0] = anchor;
        bool viable = true;
        for (int j = 1; j < k && viable; ++j) {
            // the unique alpha_j-block linked to the anchor by the strategy
            const Relation& r = p_w.strategy->at(0, j);
            int target = -1;
            for (const auto& t : r.tuples)
                if (strand.alphas[0].same(t[0], anchor[0])) {
                    target = strand.alphas[j].rep(t[1]);
                    break;
                }
            if (target < 0) {
                viable = false;
                break;
            }
            for (Element e = 0; e < p_w.domain_size(j); ++e)
                if (strand.alphas[j].rep(e) == target) keep[j].push_back(e);
        }
        if (!viable) continue;
        auto sh = shrink_domains(p_w, keep);
        parts.push_back(std::move(sh.instance));
    }
    return parts;
}

} // namespace uacsp
