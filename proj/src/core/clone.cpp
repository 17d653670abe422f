#include "clone.hpp"

#include <algorithm>
#include <map>
#include <mutex>
#include <set>
#include <unordered_map>
#include <unordered_set>

#include "errors.hpp"

namespace uacsp {

namespace {

struct TableHash {
    std::size_t operator()(const std::vector<Element>& t) const {
        std::size_t h = 1469598103934665603ull;
        for (Element v : t) {
            h ^= static_cast<std::size_t>(v) + 0x9e3779b9;
            h *= 1099511628211ull;
        }
        return h;
    }
};

// Closure of seed tables under cellwise application of the basic ops.
// Cell c is evaluated in *cell_alg[c] (all algebras share the signature).
// Deterministic: ops in declared order, argument tuples in index-lex order,
// each tuple visited once when its max index enters the worklist.
class ClosureRun {
public:
    // optional target predicate: the run stops at the first new table satisfying it
    std::function<bool(const std::vector<Element>&)> target;
    bool found = false;
    std::vector<Element> found_table;

    ClosureRun(const std::vector<const FiniteAlgebra*>& cell_alg, std::size_t table_cap,
               std::size_t work_cap)
        : cell_alg_(cell_alg), cells_(cell_alg.size()), table_cap_(table_cap), work_cap_(work_cap) {
        packed_ = cells_ <= 32;
        for (const auto* a : cell_alg_)
            if (a->size() > 4) packed_ = false;
        if (packed_) packed_seen_.reserve(1 << 14);
        // per-op, per-cell raw table pointers and universe sizes
        const auto& sig = cell_alg_[0]->ops();
        op_arity_.resize(sig.size());
        op_tabs_.resize(sig.size());
        for (std::size_t oi = 0; oi < sig.size(); ++oi) {
            op_arity_[oi] = sig[oi].arity;
            op_tabs_[oi].resize(cells_);
            for (std::size_t c = 0; c < cells_; ++c) op_tabs_[oi][c] = cell_alg_[c]->ops()[oi].table.data();
        }
        sizes_.resize(cells_);
        for (std::size_t c = 0; c < cells_; ++c) sizes_[c] = cell_alg_[c]->size();
        scratch_.resize(cells_);
    }

    std::vector<std::vector<Element>> run(std::vector<std::vector<Element>> seeds, bool* complete) {
        for (auto& s : seeds) {
            if (insert(std::move(s)) && target && target(tables_.back())) {
                found = true;
                found_table = tables_.back();
                *complete = true;
                return std::move(tables_);
            }
        }
        *complete = true;
        for (std::size_t qi = 0; qi < tables_.size(); ++qi) {
            for (std::size_t oi = 0; oi < op_arity_.size(); ++oi) {
                if (!apply_all(oi, qi)) {
                    *complete = found;  // early target stop is not a cap
                    return std::move(tables_);
                }
            }
        }
        return std::move(tables_);
    }

private:
    const std::vector<const FiniteAlgebra*>& cell_alg_;
    std::size_t cells_, table_cap_, work_cap_, work_ = 0;
    bool packed_ = false;
    std::unordered_set<std::uint64_t> packed_seen_;
    std::unordered_set<std::vector<Element>, TableHash> generic_seen_;
    std::vector<std::vector<Element>> tables_;
    std::vector<int> op_arity_;
    std::vector<std::vector<const Element*>> op_tabs_;
    std::vector<int> sizes_;
    std::vector<Element> scratch_;

    bool insert(std::vector<Element> t) {
        if (packed_) {
            std::uint64_t key = 0;
            for (std::size_t c = 0; c < cells_; ++c) key |= static_cast<std::uint64_t>(t[c]) << (2 * c);
            if (!packed_seen_.insert(key).second) return false;
        } else {
            if (!generic_seen_.insert(t).second) return false;
        }
        tables_.push_back(std::move(t));
        return true;
    }

    bool insert_scratch() {
        if (packed_) {
            std::uint64_t key = 0;
            for (std::size_t c = 0; c < cells_; ++c)
                key |= static_cast<std::uint64_t>(scratch_[c]) << (2 * c);
            if (!packed_seen_.insert(key).second) return true;
        } else {
            if (!generic_seen_.insert(scratch_).second) return true;
        }
        if (tables_.size() + 1 > table_cap_) return false;
        tables_.push_back(scratch_);
        if (target && target(scratch_)) {
            found = true;
            found_table = scratch_;
            return false;  // stop the run; found flag marks this as success
        }
        return true;
    }

    bool apply2(const std::vector<const Element*>& tabs, std::size_t i, std::size_t j) {
        if (++work_ > work_cap_) return false;
        const Element* f = tables_[i].data();
        const Element* g = tables_[j].data();
        for (std::size_t c = 0; c < cells_; ++c) scratch_[c] = tabs[c][f[c] * sizes_[c] + g[c]];
        return insert_scratch();
    }

    bool apply3(const std::vector<const Element*>& tabs, std::size_t i, std::size_t j, std::size_t k) {
        if (++work_ > work_cap_) return false;
        const Element* f = tables_[i].data();
        const Element* g = tables_[j].data();
        const Element* h = tables_[k].data();
        for (std::size_t c = 0; c < cells_; ++c)
            scratch_[c] = tabs[c][(f[c] * sizes_[c] + g[c]) * sizes_[c] + h[c]];
        return insert_scratch();
    }

    // apply op oi to every argument tuple whose max index is qi; false on cap
    bool apply_all(std::size_t oi, std::size_t qi) {
        const int m = op_arity_[oi];
        const auto& tabs = op_tabs_[oi];
        if (m == 1) {
            if (++work_ > work_cap_) return false;
            const Element* f = tables_[qi].data();
            for (std::size_t c = 0; c < cells_; ++c) scratch_[c] = tabs[c][f[c]];
            return insert_scratch();
        }
        if (m == 2) {
            // lexicographic over pairs with max index qi: (j,qi) for j<qi, then (qi,j)
            for (std::size_t j = 0; j < qi; ++j)
                if (!apply2(tabs, j, qi)) return false;
            for (std::size_t j = 0; j <= qi; ++j)
                if (!apply2(tabs, qi, j)) return false;
            return true;
        }
        if (m == 3) {
            for (std::size_t a = 0; a < qi; ++a) {
                for (std::size_t b = 0; b < qi; ++b)
                    if (!apply3(tabs, a, b, qi)) return false;
                for (std::size_t c3 = 0; c3 <= qi; ++c3)
                    if (!apply3(tabs, a, qi, c3)) return false;
            }
            for (std::size_t b = 0; b <= qi; ++b)
                for (std::size_t c3 = 0; c3 <= qi; ++c3)
                    if (!apply3(tabs, qi, b, c3)) return false;
            return true;
        }
        // generic arity
        std::vector<std::size_t> pick(m, 0);
        while (true) {
            bool uses_new = false;
            for (int i = 0; i < m; ++i)
                if (pick[i] == qi) uses_new = true;
            if (uses_new) {
                if (++work_ > work_cap_) return false;
                for (std::size_t c = 0; c < cells_; ++c) {
                    std::size_t idx = 0;
                    for (int i = 0; i < m; ++i) idx = idx * sizes_[c] + tables_[pick[i]][c];
                    scratch_[c] = tabs[c][idx];
                }
                if (!insert_scratch()) return false;
            }
            int pos = m - 1;
            while (pos >= 0 && pick[pos] == qi) pick[pos--] = 0;
            if (pos < 0) break;
            ++pick[pos];
        }
        return true;
    }
};

std::vector<std::vector<Element>> pointwise_closure(const std::vector<const FiniteAlgebra*>& cell_alg,
                                                    std::vector<std::vector<Element>> seeds,
                                                    std::size_t table_cap, std::size_t work_cap,
                                                    bool* complete) {
    ClosureRun run(cell_alg, table_cap, work_cap);
    return run.run(std::move(seeds), complete);
}

} // namespace

std::optional<std::vector<Element>> closure_find(const std::vector<const FiniteAlgebra*>& cell_alg,
                                                 std::vector<std::vector<Element>> seeds,
                                                 std::size_t table_cap, std::size_t work_cap,
                                                 std::function<bool(const std::vector<Element>&)> pred,
                                                 bool* exhausted) {
    ClosureRun run(cell_alg, table_cap, work_cap);
    bool complete = true;
    run.target = std::move(pred);
    run.run(std::move(seeds), &complete);
    if (run.found) {
        *exhausted = false;
        return run.found_table;
    }
    *exhausted = complete;
    return std::nullopt;
}

namespace {

// term syntax over the signature: leaves are generator indices
struct Term {
    int leaf = -1;                // >= 0: generator index
    int op = -1;                  // otherwise: operation index
    std::vector<int> kids;        // indices into the term arena
};

// closure with parent tracking over a small cell set, single algebra
struct TrackedClosure {
    const FiniteAlgebra& a;
    std::size_t cells;
    std::vector<std::vector<Element>> elems;
    std::vector<Term> how;  // how[i] built elems[i]

    TrackedClosure(const FiniteAlgebra& alg, std::vector<std::vector<Element>> seeds)
        : a(alg), cells(seeds.empty() ? 0 : seeds[0].size()) {
        std::set<std::vector<Element>> seen;
        for (std::size_t i = 0; i < seeds.size(); ++i) {
            if (seen.insert(seeds[i]).second) {
                elems.push_back(seeds[i]);
                how.push_back(Term{static_cast<int>(i), -1, {}});
            }
        }
        for (std::size_t qi = 0; qi < elems.size(); ++qi) {
            for (std::size_t oi = 0; oi < a.ops().size(); ++oi) {
                const int m = a.ops()[oi].arity;
                std::vector<std::size_t> pick(m, 0);
                std::vector<Element> args(m), out(cells);
                while (true) {
                    bool uses_new = false;
                    for (int i = 0; i < m; ++i)
                        if (pick[i] == qi) uses_new = true;
                    if (uses_new) {
                        for (std::size_t c = 0; c < cells; ++c) {
                            for (int i = 0; i < m; ++i) args[i] = elems[pick[i]][c];
                            out[c] = a.ops()[oi].apply(a.size(), args);
                        }
                        if (seen.insert(out).second) {
                            elems.push_back(out);
                            Term t;
                            t.op = static_cast<int>(oi);
                            for (int i = 0; i < m; ++i) t.kids.push_back(static_cast<int>(pick[i]));
                            how.push_back(std::move(t));
                        }
                    }
                    int pos = m - 1;
                    while (pos >= 0 && pick[pos] == qi) pick[pos--] = 0;
                    if (pos < 0) break;
                    ++pick[pos];
                }
            }
        }
    }

    int index_of(const std::vector<Element>& e) const {
        for (std::size_t i = 0; i < elems.size(); ++i)
            if (elems[i] == e) return static_cast<int>(i);
        return -1;
    }

    // evaluate the term of elems[idx] over fresh generator tables
    std::vector<Element> evaluate(int idx, const std::vector<std::vector<Element>>& generators) const {
        const Term& t = how[idx];
        if (t.leaf >= 0) return generators[t.leaf];
        std::vector<std::vector<Element>> kids;
        for (int k : t.kids) kids.push_back(evaluate(k, generators));
        const std::size_t n_cells = generators[0].size();
        std::vector<Element> out(n_cells);
        std::vector<Element> args(t.kids.size());
        for (std::size_t c = 0; c < n_cells; ++c) {
            for (std::size_t i = 0; i < kids.size(); ++i) args[i] = kids[i][c];
            out[c] = a.ops()[t.op].apply(a.size(), args);
        }
        return out;
    }
};

std::size_t pow_size(int n, int k) {
    std::size_t c = 1;
    for (int i = 0; i < k; ++i) c *= static_cast<std::size_t>(n);
    return c;
}

std::vector<Element> projection_table(int n, int k, int which) {
    // cells enumerate argument tuples row-major (last argument fastest)
    const std::size_t cells = pow_size(n, k);
    std::vector<Element> t(cells);
    std::vector<Element> tup(k, 0);
    for (std::size_t c = 0; c < cells; ++c) {
        t[c] = tup[which];
        int pos = k - 1;
        while (pos >= 0 && tup[pos] + 1 == n) tup[pos--] = 0;
        if (pos >= 0) ++tup[pos];
    }
    return t;
}

struct CacheEntry {
    std::map<int, CloneFragment> term_fragments;
    std::unique_ptr<CloneFragment> unary;
    std::unique_ptr<CloneFragment> binary_poly;
    std::unique_ptr<std::vector<SemilatticeEdge>> edges;
    std::unique_ptr<std::vector<Element>> multiplication;
};

std::mutex cache_mutex;
std::unordered_map<std::string, CacheEntry>& cache() {
    static std::unordered_map<std::string, CacheEntry> c;
    return c;
}

CloneFragment make_fragment(const FiniteAlgebra& a, int arity, std::vector<std::vector<Element>> seeds,
                            const Config& cfg) {
    std::vector<const FiniteAlgebra*> cell_alg(pow_size(a.size(), arity), &a);
    CloneFragment f;
    f.arity = arity;
    f.tables = pointwise_closure(cell_alg, std::move(seeds), cfg.fragment_cap, cfg.fragment_work,
                                 &f.complete);
    return f;
}

} // namespace

const CloneFragment& term_ops(const FiniteAlgebra& a, int k, const Config& cfg) {
    if (k < 1) throw input_error("term_ops: arity must be >= 1");
    std::scoped_lock lock(cache_mutex);
    auto& entry = cache()[a.table_key()];
    auto it = entry.term_fragments.find(k);
    if (it != entry.term_fragments.end() && (it->second.complete || it->second.tables.size() >= cfg.fragment_cap))
        return it->second;
    std::vector<std::vector<Element>> seeds;
    for (int i = 0; i < k; ++i) seeds.push_back(projection_table(a.size(), k, i));
    entry.term_fragments[k] = make_fragment(a, k, std::move(seeds), cfg);
    return entry.term_fragments[k];
}

const CloneFragment& unary_polynomials(const FiniteAlgebra& a, const Config& cfg) {
    std::scoped_lock lock(cache_mutex);
    auto& entry = cache()[a.table_key()];
    if (entry.unary) return *entry.unary;
    std::vector<std::vector<Element>> seeds;
    seeds.push_back(projection_table(a.size(), 1, 0));
    for (Element c = 0; c < a.size(); ++c) seeds.emplace_back(a.size(), c);
    auto frag = make_fragment(a, 1, std::move(seeds), cfg);
    if (!frag.complete) throw resource_error("unary_polynomials: fragment capped");
    entry.unary = std::make_unique<CloneFragment>(std::move(frag));
    return *entry.unary;
}

const CloneFragment& binary_polynomials(const FiniteAlgebra& a, const Config& cfg) {
    std::scoped_lock lock(cache_mutex);
    auto& entry = cache()[a.table_key()];
    if (entry.binary_poly) return *entry.binary_poly;
    std::vector<std::vector<Element>> seeds;
    seeds.push_back(projection_table(a.size(), 2, 0));
    seeds.push_back(projection_table(a.size(), 2, 1));
    const std::size_t cells = pow_size(a.size(), 2);
    for (Element c = 0; c < a.size(); ++c) seeds.emplace_back(cells, c);
    auto frag = make_fragment(a, 2, std::move(seeds), cfg);
    if (!frag.complete) throw resource_error("binary_polynomials: fragment capped");
    entry.binary_poly = std::make_unique<CloneFragment>(std::move(frag));
    return *entry.binary_poly;
}

namespace {

// An edge (x,y) needs a binary term with prescribed values on the four cells
// (x,x),(x,y),(y,x),(y,y) only, so it is decided inside the subalgebra of A^4
// generated by the projection restrictions. That closure always finishes
// (at most |A|^4 elements); the witness term is replayed on the full square.
std::vector<SemilatticeEdge> compute_edges(const FiniteAlgebra& a, const Config&) {
    const int n = a.size();
    std::vector<SemilatticeEdge> edges;
    for (Element x = 0; x < n; ++x) {
        for (Element y = 0; y < n; ++y) {
            if (x == y) continue;
            std::vector<std::vector<Element>> seeds{{x, x, y, y}, {x, y, x, y}};
            TrackedClosure cl(a, seeds);
            int idx = cl.index_of({x, y, y, y});
            if (idx < 0) continue;
            std::vector<std::vector<Element>> projections(2);
            for (Element u = 0; u < n; ++u)
                for (Element v = 0; v < n; ++v) {
                    projections[0].push_back(u);
                    projections[1].push_back(v);
                }
            std::vector<Element> witness = cl.evaluate(idx, projections);
            if (witness[x * n + x] != x || witness[x * n + y] != y || witness[y * n + x] != y ||
                witness[y * n + y] != y)
                throw internal_error("semilattice_edges: replayed witness fails the edge equations");
            edges.push_back({x, y, std::move(witness)});
        }
    }
    return edges;
}

} // namespace

const std::vector<SemilatticeEdge>& semilattice_edges(const FiniteAlgebra& a, const Config& cfg) {
    {
        std::scoped_lock lock(cache_mutex);
        auto& entry = cache()[a.table_key()];
        if (entry.edges) return *entry.edges;
    }
    auto edges = compute_edges(a, cfg);
    std::scoped_lock lock(cache_mutex);
    auto& entry = cache()[a.table_key()];
    if (!entry.edges) entry.edges = std::make_unique<std::vector<SemilatticeEdge>>(std::move(edges));
    return *entry.edges;
}

bool is_semilattice_free(const FiniteAlgebra& a, const Config& cfg) {
    return semilattice_edges(a, cfg).empty();
}

bool multiplication_conditions_hold(const FiniteAlgebra& a, const std::vector<Element>& m,
                                    const Config& cfg) {
    const int n = a.size();
    const auto& edges = semilattice_edges(a, cfg);
    auto is_edge = [&](Element x, Element y) {
        for (const auto& e : edges)
            if (e.a == x && e.b == y) return true;
        return false;
    };
    // semilattice operation on each edge pair: commutative on {a,b} with an
    // absorbing endpoint that is itself an edge target seen from the other
    for (const auto& e : edges) {
        Element ab = m[e.a * n + e.b], ba = m[e.b * n + e.a];
        if (ab != ba) return false;
        if (ab != e.a && ab != e.b) return false;
        if (m[e.a * n + e.a] != e.a || m[e.b * n + e.b] != e.b) return false;
        Element other = (ab == e.a) ? e.b : e.a;
        if (!is_edge(other, ab)) return false;
    }
    // for any a,b: ab = a, or {a, ab} is a semilattice edge (either direction)
    for (Element x = 0; x < n; ++x)
        for (Element y = 0; y < n; ++y) {
            Element xy = m[x * n + y];
            if (xy != x && !is_edge(x, xy) && !is_edge(xy, x)) return false;
        }
    return true;
}

const std::vector<Element>& multiplication_op(const FiniteAlgebra& a, const Config& cfg) {
    {
        std::scoped_lock lock(cache_mutex);
        auto& entry = cache()[a.table_key()];
        if (entry.multiplication) return *entry.multiplication;
    }
    // stream the binary term closure, stopping at the first qualifying table
    std::vector<const FiniteAlgebra*> cell_alg(pow_size(a.size(), 2), &a);
    std::vector<std::vector<Element>> seeds{projection_table(a.size(), 2, 0),
                                            projection_table(a.size(), 2, 1)};
    bool exhausted = false;
    auto found = closure_find(
        cell_alg, std::move(seeds), cfg.fragment_cap, cfg.fragment_work,
        [&](const std::vector<Element>& f) { return multiplication_conditions_hold(a, f, cfg); },
        &exhausted);
    if (!found) {
        if (exhausted)
            throw internal_error(
                "multiplication_op: promise violated, no qualifying binary term in algebra '" + a.id() +
                "'");
        throw resource_error("multiplication_op: binary term fragment capped before a hit");
    }
    std::scoped_lock lock(cache_mutex);
    auto& entry = cache()[a.table_key()];
    if (!entry.multiplication) entry.multiplication = std::make_unique<std::vector<Element>>(*found);
    return *entry.multiplication;
}

std::vector<std::vector<Element>> multiplication_term_uniform(const std::vector<AlgebraPtr>& algebras,
                                                              const Config& cfg) {
    auto found = try_multiplication_term_uniform(algebras, cfg);
    if (!found) {
        std::string ids;
        for (const auto& a : algebras) ids += a->id() + " ";
        throw internal_error("multiplication_term_uniform: no common multiplication term among: " + ids);
    }
    return *found;
}

std::optional<std::vector<std::vector<Element>>> try_multiplication_term_uniform(
    const std::vector<AlgebraPtr>& algebras, const Config& cfg) {
    if (algebras.empty()) throw input_error("multiplication_term_uniform: no algebras");
    // deduplicate by table key, keep the alignment
    std::vector<AlgebraPtr> distinct;
    std::vector<std::size_t> which(algebras.size());
    std::map<std::string, std::size_t> index;
    for (std::size_t i = 0; i < algebras.size(); ++i) {
        auto it = index.find(algebras[i]->table_key());
        if (it == index.end()) {
            index[algebras[i]->table_key()] = distinct.size();
            which[i] = distinct.size();
            distinct.push_back(algebras[i]);
        } else {
            which[i] = it->second;
        }
    }
    std::vector<const FiniteAlgebra*> cell_alg;
    std::vector<std::size_t> seg_begin;
    for (const auto& a : distinct) {
        seg_begin.push_back(cell_alg.size());
        for (int c = 0; c < a->size() * a->size(); ++c) cell_alg.push_back(a.get());
    }
    std::vector<std::vector<Element>> seeds(2);
    for (int which_proj = 0; which_proj < 2; ++which_proj) {
        for (const auto& a : distinct) {
            auto p = projection_table(a->size(), 2, which_proj);
            seeds[which_proj].insert(seeds[which_proj].end(), p.begin(), p.end());
        }
    }
    auto qualifies = [&](const std::vector<Element>& f) {
        for (std::size_t d = 0; d < distinct.size(); ++d) {
            std::vector<Element> slice(f.begin() + seg_begin[d],
                                       f.begin() + seg_begin[d] + distinct[d]->size() * distinct[d]->size());
            if (!multiplication_conditions_hold(*distinct[d], slice, cfg)) return false;
        }
        return true;
    };
    bool exhausted = false;
    auto found = closure_find(cell_alg, std::move(seeds), cfg.fragment_cap, cfg.fragment_work,
                              qualifies, &exhausted);
    if (found) {
        std::vector<std::vector<Element>> out;
        for (std::size_t i = 0; i < algebras.size(); ++i) {
            std::size_t d = which[i];
            out.emplace_back(found->begin() + seg_begin[d],
                             found->begin() + seg_begin[d] + distinct[d]->size() * distinct[d]->size());
        }
        return out;
    }
    if (!exhausted) throw resource_error("multiplication_term_uniform: fragment capped");
    return std::nullopt;
}

WnuResult wnu_check(const FiniteAlgebra& a, int k, const Config& cfg) {
    if (k < 3) throw input_error("wnu_check: arity must be >= 3");
    const int n = a.size();
    // evaluation points: diagonals plus every one-off pattern (x,..,y,..,x)
    std::vector<std::vector<Element>> points;
    std::map<std::vector<Element>, std::size_t> point_index;
    auto add_point = [&](std::vector<Element> p) {
        if (!point_index.count(p)) {
            point_index[p] = points.size();
            points.push_back(std::move(p));
        }
    };
    for (Element x = 0; x < n; ++x) add_point(std::vector<Element>(k, x));
    for (Element x = 0; x < n; ++x)
        for (Element y = 0; y < n; ++y) {
            if (x == y) continue;
            for (int pos = 0; pos < k; ++pos) {
                std::vector<Element> p(k, x);
                p[pos] = y;
                add_point(std::move(p));
            }
        }
    const std::size_t cells = points.size();
    std::vector<const FiniteAlgebra*> cell_alg(cells, &a);
    std::vector<std::vector<Element>> seeds(k, std::vector<Element>(cells));
    for (int i = 0; i < k; ++i)
        for (std::size_t c = 0; c < cells; ++c) seeds[i][c] = points[c][i];
    auto is_wnu = [&](const std::vector<Element>& f) {
        for (Element x = 0; x < n; ++x)
            for (Element y = 0; y < n; ++y) {
                if (x == y) continue;
                Element v = -1;
                for (int pos = 0; pos < k; ++pos) {
                    std::vector<Element> p(k, x);
                    p[pos] = y;
                    Element w = f[point_index.at(p)];
                    if (v < 0) v = w;
                    else if (v != w) return false;
                }
            }
        return true;
    };
    bool exhausted = false;
    auto found = closure_find(cell_alg, std::move(seeds), cfg.wnu_cap, cfg.fragment_work, is_wnu,
                              &exhausted);
    if (found) return WnuResult::found;
    return exhausted ? WnuResult::not_found : WnuResult::unknown;
}

} // namespace uacsp
