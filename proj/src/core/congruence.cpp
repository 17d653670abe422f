#include "congruence.hpp"

#include <algorithm>
#include <mutex>
#include <set>
#include <unordered_map>

#include "clone.hpp"
#include "errors.hpp"

namespace uacsp {

int CongruenceLattice::index_of(const Partition& p) const {
    for (std::size_t i = 0; i < congruences.size(); ++i)
        if (congruences[i] == p) return static_cast<int>(i);
    throw internal_error("CongruenceLattice::index_of: partition not in lattice");
}

bool is_congruence(const FiniteAlgebra& a, const Partition& p, const Config& cfg) {
    if (p.size() != a.size()) return false;
    const auto& up = unary_polynomials(a, cfg);
    for (Element x = 0; x < a.size(); ++x)
        for (Element y = x + 1; y < a.size(); ++y) {
            if (!p.same(x, y)) continue;
            for (const auto& h : up.tables)
                if (!p.same(h[x], h[y])) return false;
        }
    return true;
}

Partition cg(const FiniteAlgebra& a, const std::vector<std::pair<Element, Element>>& pairs,
             const Config& cfg) {
    for (auto [x, y] : pairs)
        if (x < 0 || x >= a.size() || y < 0 || y >= a.size())
            throw input_error("cg: pair element out of range");
    const auto& up = unary_polynomials(a, cfg);
    Partition cur = Partition::from_pairs(a.size(), pairs);
    while (true) {
        std::vector<std::pair<Element, Element>> grown;
        for (Element x = 0; x < a.size(); ++x) {
            grown.emplace_back(x, cur.rep(x));
            for (Element y = x + 1; y < a.size(); ++y) {
                if (!cur.same(x, y)) continue;
                for (const auto& h : up.tables) grown.emplace_back(h[x], h[y]);
            }
        }
        Partition next = Partition::from_pairs(a.size(), grown);
        if (next == cur) break;
        cur = std::move(next);
    }
    return cur;
}

namespace {

CongruenceLattice compute_con(const FiniteAlgebra& a, const Config& cfg) {
    std::set<Partition> found;
    found.insert(Partition::equality(a.size()));
    for (Element x = 0; x < a.size(); ++x)
        for (Element y = x + 1; y < a.size(); ++y) found.insert(cg(a, {{x, y}}, cfg));
    // close under join (meet of congruences is automatically a congruence,
    // and arises as a principal-join combination at this scale; include it
    // anyway to keep the lattice honest)
    while (true) {
        std::vector<Partition> cur(found.begin(), found.end());
        bool changed = false;
        for (std::size_t i = 0; i < cur.size(); ++i)
            for (std::size_t j = i + 1; j < cur.size(); ++j) {
                if (found.insert(cur[i].join(cur[j])).second) changed = true;
                if (found.insert(cur[i].meet(cur[j])).second) changed = true;
            }
        if (!changed) break;
    }
    CongruenceLattice lat;
    lat.congruences.assign(found.begin(), found.end());
    const int m = static_cast<int>(lat.congruences.size());
    lat.leq.assign(m, std::vector<bool>(m, false));
    for (int i = 0; i < m; ++i)
        for (int j = 0; j < m; ++j) lat.leq[i][j] = lat.congruences[i].refines(lat.congruences[j]);
    for (int i = 0; i < m; ++i)
        for (int j = 0; j < m; ++j) {
            if (i == j || !lat.leq[i][j]) continue;
            bool cover = true;
            for (int z = 0; z < m; ++z) {
                if (z == i || z == j) continue;
                if (lat.leq[i][z] && lat.leq[z][j]) {
                    cover = false;
                    break;
                }
            }
            if (cover) lat.covers.emplace_back(i, j);
        }
    std::sort(lat.covers.begin(), lat.covers.end());
    return lat;
}

} // namespace

const CongruenceLattice& con(const FiniteAlgebra& a, const Config& cfg) {
    static std::mutex m;
    static std::unordered_map<std::string, CongruenceLattice> cache;
    {
        std::scoped_lock lock(m);
        auto it = cache.find(a.table_key());
        if (it != cache.end()) return it->second;
    }
    auto lat = compute_con(a, cfg);
    std::scoped_lock lock(m);
    return cache.emplace(a.table_key(), std::move(lat)).first->second;
}

MonolithResult monolith(const FiniteAlgebra& a, const Config& cfg) {
    MonolithResult res;
    if (a.size() == 1) {
        res.subdirectly_irreducible = true;
        return res;
    }
    const auto& lat = con(a, cfg);
    Partition meet = Partition::full(a.size());
    bool any = false;
    for (const auto& c : lat.congruences) {
        if (c.is_equality()) continue;
        meet = any ? meet.meet(c) : c;
        any = true;
    }
    if (!any || meet.is_equality()) {
        res.subdirectly_irreducible = false;
        return res;
    }
    res.subdirectly_irreducible = true;
    res.monolith = std::move(meet);
    return res;
}

std::vector<Partition> meet_irreducibles(const FiniteAlgebra& a, const Config& cfg) {
    const auto& lat = con(a, cfg);
    const int m = static_cast<int>(lat.congruences.size());
    std::vector<int> cover_count(m, 0);
    for (auto [i, j] : lat.covers) cover_count[i]++;
    std::vector<Partition> out;
    for (int i = 0; i < m; ++i)
        if (cover_count[i] == 1) out.push_back(lat.congruences[i]);
    // sanity: the meet of all meet-irreducibles is the equality congruence
    if (a.size() > 1) {
        Partition meet = Partition::full(a.size());
        for (const auto& p : out) meet = meet.meet(p);
        if (!meet.is_equality())
            throw internal_error("meet_irreducibles: meet is not the equality congruence");
    }
    return out;
}

} // namespace uacsp
