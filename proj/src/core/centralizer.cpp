#include "centralizer.hpp"

#include <algorithm>
#include <map>

#include "clone.hpp"
#include "errors.hpp"

namespace uacsp {

namespace {

// Whether some binary polynomial distinguishes c from d: collapses beta into
// alpha with parameter c but not with parameter d (or vice versa). Only the
// 2n cells (x,c),(x,d) of a polynomial matter, so the search closes the
// generator restrictions over those cells and stops at the first witness.
bool twin_pair(const FiniteAlgebra& a, const Partition& alpha, const Partition& beta, Element c,
               Element d, const Config& cfg) {
    const int n = a.size();
    std::vector<const FiniteAlgebra*> cell_alg(2 * n, &a);
    std::vector<std::vector<Element>> seeds;
    {
        std::vector<Element> p1(2 * n), p2(2 * n);
        for (Element x = 0; x < n; ++x) {
            p1[x] = x;
            p1[n + x] = x;
            p2[x] = c;
            p2[n + x] = d;
        }
        seeds.push_back(std::move(p1));
        seeds.push_back(std::move(p2));
        for (Element k = 0; k < n; ++k) seeds.emplace_back(2 * n, k);
    }
    std::vector<std::pair<Element, Element>> beta_pairs;
    for (Element u = 0; u < n; ++u)
        for (Element v = u + 1; v < n; ++v)
            if (beta.same(u, v)) beta_pairs.emplace_back(u, v);
    auto distinguishes = [&](const std::vector<Element>& f) {
        bool with_c = true, with_d = true;
        for (auto [u, v] : beta_pairs) {
            if (!alpha.same(f[u], f[v])) with_c = false;
            if (!alpha.same(f[n + u], f[n + v])) with_d = false;
            if (!with_c && !with_d) return false;
        }
        return with_c != with_d;
    };
    bool exhausted = false;
    auto witness = closure_find(cell_alg, std::move(seeds), cfg.fragment_cap, cfg.fragment_work,
                                distinguishes, &exhausted);
    if (witness) return false;
    if (!exhausted) throw resource_error("twin_equivalence: polynomial closure capped");
    return true;
}

} // namespace

TwinEquivalence twin_equivalence(const FiniteAlgebra& a, const Partition& alpha, const Partition& beta,
                                 const Config& cfg) {
    if (!alpha.refines(beta)) throw input_error("twin_equivalence: alpha must refine beta");
    const int n = a.size();
    // profile equality is transitive, so pairwise union-find labels suffice
    std::vector<std::pair<Element, Element>> related;
    for (Element c = 0; c < n; ++c)
        for (Element d = c + 1; d < n; ++d)
            if (twin_pair(a, alpha, beta, c, d, cfg)) related.emplace_back(c, d);
    Partition classes = Partition::from_pairs(n, related);
    // consistency: relatedness computed pairwise must match the partition
    for (Element c = 0; c < n; ++c)
        for (Element d = c + 1; d < n; ++d) {
            bool rel = std::count(related.begin(), related.end(), std::make_pair(c, d)) > 0;
            if (classes.same(c, d) != rel)
                throw internal_error("twin_equivalence: pairwise results are not transitive");
        }
    return TwinEquivalence{std::move(classes)};
}

Partition centralizer(const FiniteAlgebra& a, const Partition& alpha, const Partition& beta,
                      const Config& cfg) {
    const int n = a.size();
    Partition cur = twin_equivalence(a, alpha, beta, cfg).classes;
    const auto& up = unary_polynomials(a, cfg);
    // greatest fixed point: refine by preimages under every unary polynomial
    while (true) {
        Partition next = cur;
        for (const auto& h : up.tables) {
            std::vector<Element> pre(n);
            for (Element e = 0; e < n; ++e) pre[e] = cur.rep(h[e]);
            next = next.meet(Partition(std::move(pre)));
        }
        if (next == cur) break;
        cur = std::move(next);
    }
    return cur;
}

} // namespace uacsp
