#include "generator.hpp"

#include <algorithm>

#include "errors.hpp"

namespace uacsp {

AlgebraPtr random_idempotent_algebra(std::uint64_t seed, int size, const Signature& sig,
                                     const Config& cfg) {
    if (size < 1 || size > cfg.max_algebra_size)
        throw input_error("random_idempotent_algebra: size out of range");
    std::mt19937_64 rng(seed);
    std::uniform_int_distribution<int> pick(0, size - 1);
    std::vector<OperationTable> ops;
    for (const auto& [name, arity] : sig) {
        OperationTable op{name, arity, {}};
        std::size_t cells = 1;
        for (int i = 0; i < arity; ++i) cells *= static_cast<std::size_t>(size);
        op.table.resize(cells);
        std::vector<Element> args(arity, 0);
        for (std::size_t idx = 0; idx < cells; ++idx) {
            bool diagonal = true;
            for (int i = 1; i < arity; ++i)
                if (args[i] != args[0]) diagonal = false;
            op.table[idx] = diagonal ? args[0] : pick(rng);
            int pos = arity - 1;
            while (pos >= 0 && args[pos] + 1 == size) args[pos--] = 0;
            if (pos >= 0) ++args[pos];
        }
        ops.push_back(std::move(op));
    }
    return std::make_shared<FiniteAlgebra>("rand" + std::to_string(seed), size, std::move(ops));
}

Instance random_invariant_instance(std::uint64_t seed, const AlgebraPtr& algebra, int vars,
                                   int constraints, int max_arity, const Config& cfg) {
    if (vars < 1 || constraints < 0 || max_arity < 1)
        throw input_error("random_invariant_instance: bad parameters");
    std::mt19937_64 rng(seed);
    Instance p;
    for (int v = 0; v < vars; ++v) {
        p.var_names.push_back("x" + std::to_string(v));
        p.domains.push_back({algebra, {ProvenanceBase{algebra->id()}}});
    }
    std::uniform_int_distribution<int> arity_pick(1, std::min(max_arity, vars));
    std::uniform_int_distribution<int> var_pick(0, vars - 1);
    std::uniform_int_distribution<int> elem_pick(0, algebra->size() - 1);
    for (int ci = 0; ci < constraints; ++ci) {
        int arity = arity_pick(rng);
        // scope without repetition
        std::vector<int> scope;
        while (static_cast<int>(scope.size()) < arity) {
            int v = var_pick(rng);
            if (!std::count(scope.begin(), scope.end(), v)) scope.push_back(v);
        }
        // one to three random seed tuples, closed in the power algebra
        std::uniform_int_distribution<int> nseeds_pick(1, 3);
        int nseeds = nseeds_pick(rng);
        std::vector<std::vector<Element>> seeds;
        for (int s = 0; s < nseeds; ++s) {
            std::vector<Element> t(arity);
            for (int i = 0; i < arity; ++i) t[i] = elem_pick(rng);
            seeds.push_back(std::move(t));
        }
        Relation rel;
        rel.arity = arity;
        rel.tuples = sg_in_power(*algebra, arity, seeds, cfg.sg_power_cap);
        p.constraints.push_back({std::move(scope), std::move(rel)});
    }
    return p;
}

} // namespace uacsp
