#include "oracle.hpp"

#include "errors.hpp"

namespace uacsp {

namespace {

// backtracking with constraint checks on fully assigned scopes only
struct Search {
    const Instance& p;
    std::size_t budget;
    std::size_t visited = 0;
    Assignment current;
    std::vector<std::vector<std::size_t>> checks_at;  // constraints fully assigned at depth v

    explicit Search(const Instance& inst, std::size_t b) : p(inst), budget(b) {
        current.assign(p.num_vars(), 0);
        checks_at.resize(p.num_vars());
        for (std::size_t ci = 0; ci < p.constraints.size(); ++ci) {
            int last = 0;
            for (int v : p.constraints[ci].scope) last = std::max(last, v);
            if (!p.constraints[ci].scope.empty()) checks_at[last].push_back(ci);
        }
    }

    bool consistent_at(int v) const {
        for (std::size_t ci : checks_at[v]) {
            const auto& c = p.constraints[ci];
            std::vector<Element> img(c.scope.size());
            for (std::size_t i = 0; i < c.scope.size(); ++i) img[i] = current[c.scope[i]];
            if (!c.rel.contains(img)) return false;
        }
        return true;
    }

    bool find_first(int v, Assignment& out) {
        if (v == p.num_vars()) {
            out = current;
            return true;
        }
        for (Element a = 0; a < p.domain_size(v); ++a) {
            if (++visited > budget) throw resource_error("oracle: assignment budget exceeded");
            current[v] = a;
            if (!consistent_at(v)) continue;
            if (find_first(v + 1, out)) return true;
        }
        return false;
    }

    void find_all(int v, std::vector<Assignment>& out) {
        if (v == p.num_vars()) {
            out.push_back(current);
            return;
        }
        for (Element a = 0; a < p.domain_size(v); ++a) {
            if (++visited > budget) throw resource_error("oracle: assignment budget exceeded");
            current[v] = a;
            if (!consistent_at(v)) continue;
            find_all(v + 1, out);
        }
    }
};

} // namespace

OracleOutcome brute_force_solve(const Instance& p, const Config& cfg) {
    OracleOutcome out;
    if (p.unsat || p.any_empty_relation()) return out;
    Search s(p, cfg.oracle_budget);
    out.sat = s.find_first(0, out.assignment);
    return out;
}

std::vector<Assignment> brute_force_all_solutions(const Instance& p, const Config& cfg) {
    std::vector<Assignment> out;
    if (p.unsat || p.any_empty_relation()) return out;
    Search s(p, cfg.oracle_budget);
    s.find_all(0, out);
    return out;
}

} // namespace uacsp
