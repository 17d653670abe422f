#include "propagation.hpp"

#include <algorithm>
#include <cstdint>

#include "errors.hpp"

namespace uacsp {

namespace {

// Fixed-point engine over bitmask state: domains as element masks, strategy
// relations as pair masks (bit a*|A_v|+b), constraint tuples as alive flags.
// All prunings are monotone, so the greatest fixed point is order-independent.
struct Work {
    const Instance* p;
    int n;
    std::vector<std::uint32_t> allowed;                  // per variable
    std::vector<int> dsize;
    std::vector<std::vector<char>> alive;                // per constraint tuple
    std::vector<std::vector<std::uint32_t>> pair_mask;   // [u][v], u < v

    explicit Work(const Instance& inst) : p(&inst), n(inst.num_vars()) {
        allowed.resize(n);
        dsize.resize(n);
        for (int v = 0; v < n; ++v) {
            dsize[v] = inst.domain_size(v);
            if (dsize[v] > 5) throw resource_error("propagation: domains larger than 5 are unsupported");
            allowed[v] = (1u << dsize[v]) - 1;
        }
        alive.resize(inst.constraints.size());
        for (std::size_t ci = 0; ci < inst.constraints.size(); ++ci)
            alive[ci].assign(inst.constraints[ci].rel.tuples.size(), 1);
    }

    bool empty_somewhere() const {
        for (int v = 0; v < n; ++v)
            if (!allowed[v]) return true;
        for (const auto& a : alive)
            if (std::count(a.begin(), a.end(), 1) == 0) return true;
        return false;
    }

    bool arc_pass() {
        bool changed = false;
        for (std::size_t ci = 0; ci < alive.size(); ++ci) {
            const auto& c = p->constraints[ci];
            const auto& ts = c.rel.tuples;
            std::vector<std::uint32_t> proj(c.scope.size(), 0);
            for (std::size_t ti = 0; ti < ts.size(); ++ti) {
                if (!alive[ci][ti]) continue;
                bool ok = true;
                for (std::size_t i = 0; i < c.scope.size(); ++i)
                    if (!(allowed[c.scope[i]] >> ts[ti][i] & 1u)) {
                        ok = false;
                        break;
                    }
                if (!ok) {
                    alive[ci][ti] = 0;
                    changed = true;
                    continue;
                }
                for (std::size_t i = 0; i < c.scope.size(); ++i) proj[i] |= 1u << ts[ti][i];
            }
            for (std::size_t i = 0; i < c.scope.size(); ++i) {
                std::uint32_t kept = allowed[c.scope[i]] & proj[i];
                if (kept != allowed[c.scope[i]]) {
                    allowed[c.scope[i]] = kept;
                    changed = true;
                }
            }
        }
        return changed;
    }
};

PropagationResult finalize(const Instance& p, Work& w, const std::vector<std::vector<std::uint32_t>>* pairs,
                           bool changed) {
    Instance mid = p;
    mid.strategy.reset();
    if (!pairs) mid.strategy = p.strategy;  // carried through untouched
    for (std::size_t ci = 0; ci < w.alive.size(); ++ci) {
        std::vector<std::vector<Element>> kept;
        for (std::size_t ti = 0; ti < w.alive[ci].size(); ++ti)
            if (w.alive[ci][ti]) kept.push_back(p.constraints[ci].rel.tuples[ti]);
        mid.constraints[ci].rel.tuples = std::move(kept);
    }
    if (pairs) {
        Strategy s;
        for (int u = 0; u < w.n; ++u)
            for (int v = u + 1; v < w.n; ++v) {
                Relation r;
                r.arity = 2;
                for (Element a = 0; a < w.dsize[u]; ++a)
                    for (Element b = 0; b < w.dsize[v]; ++b)
                        if ((*pairs)[u][v] >> (a * w.dsize[v] + b) & 1u) r.tuples.push_back({a, b});
                s.binary[{u, v}] = std::move(r);
            }
        mid.strategy = std::move(s);
    }
    std::vector<std::vector<Element>> keep(p.num_vars());
    for (int v = 0; v < p.num_vars(); ++v)
        for (Element e = 0; e < w.dsize[v]; ++e)
            if (w.allowed[v] >> e & 1u) keep[v].push_back(e);
    ShrinkResult sh = shrink_domains(mid, keep);
    return PropagationResult{std::move(sh.instance), sh.lift, changed || sh.changed};
}

} // namespace

PropagationResult establish_1_minimality(const Instance& p) {
    if (p.unsat) return {p, identity_lift(), false};
    Work w(p);
    bool changed = false;
    while (w.arc_pass()) changed = true;
    if (w.empty_somewhere()) {
        Instance out = p;
        out.unsat = true;
        return {std::move(out), identity_lift(), true};
    }
    return finalize(p, w, nullptr, changed);
}

PropagationResult establish_23_minimality(const Instance& p) {
    if (p.unsat) return {p, identity_lift(), false};
    const int n = p.num_vars();
    Work w(p);
    while (w.arc_pass()) {}
    if (w.empty_somewhere()) {
        Instance out = p;
        out.unsat = true;
        return {std::move(out), identity_lift(), true};
    }
    // pair masks seeded from an existing strategy (genuine constraints) or
    // from the full products over allowed values
    std::vector<std::vector<std::uint32_t>> pairs(n, std::vector<std::uint32_t>(n, 0));
    for (int u = 0; u < n; ++u)
        for (int v = u + 1; v < n; ++v) {
            std::uint32_t m = 0;
            if (p.strategy && p.strategy->binary.count({u, v})) {
                for (const auto& t : p.strategy->binary.at({u, v}).tuples)
                    if ((w.allowed[u] >> t[0] & 1u) && (w.allowed[v] >> t[1] & 1u))
                        m |= 1u << (t[0] * w.dsize[v] + t[1]);
            } else {
                for (Element a = 0; a < w.dsize[u]; ++a)
                    for (Element b = 0; b < w.dsize[v]; ++b)
                        if ((w.allowed[u] >> a & 1u) && (w.allowed[v] >> b & 1u))
                            m |= 1u << (a * w.dsize[v] + b);
            }
            pairs[u][v] = m;
        }
    auto pair_in = [&](int u, Element a, int v, Element b) -> bool {
        if (u < v) return pairs[u][v] >> (a * w.dsize[v] + b) & 1u;
        return pairs[v][u] >> (b * w.dsize[u] + a) & 1u;
    };
    auto drop_pair = [&](int u, Element a, int v, Element b) {
        if (u < v) pairs[u][v] &= ~(1u << (a * w.dsize[v] + b));
        else pairs[v][u] &= ~(1u << (b * w.dsize[u] + a));
    };
    auto intersect_with_projections = [&]() {
        bool changed = false;
        for (std::size_t ci = 0; ci < w.alive.size(); ++ci) {
            const auto& c = p.constraints[ci];
            const auto& ts = c.rel.tuples;
            for (std::size_t i = 0; i < c.scope.size(); ++i)
                for (std::size_t j = i + 1; j < c.scope.size(); ++j) {
                    int u = c.scope[i], v = c.scope[j];
                    std::uint32_t proj = 0;
                    for (std::size_t ti = 0; ti < ts.size(); ++ti) {
                        if (!w.alive[ci][ti]) continue;
                        Element a = ts[ti][i], b = ts[ti][j];
                        if (u < v) proj |= 1u << (a * w.dsize[v] + b);
                        else proj |= 1u << (b * w.dsize[u] + a);
                    }
                    auto& m = u < v ? pairs[u][v] : pairs[v][u];
                    std::uint32_t kept = m & proj;
                    if (kept != m) {
                        m = kept;
                        changed = true;
                    }
                }
        }
        return changed;
    };
    auto triangle_pass = [&]() {
        bool changed = false;
        for (int u = 0; u < n; ++u)
            for (int v = u + 1; v < n; ++v)
                for (int t = 0; t < n; ++t) {
                    if (t == u || t == v) continue;
                    for (Element a = 0; a < w.dsize[u]; ++a)
                        for (Element b = 0; b < w.dsize[v]; ++b) {
                            if (!pair_in(u, a, v, b)) continue;
                            bool witnessed = false;
                            std::uint32_t cand = w.allowed[t];
                            while (cand) {
                                Element c = static_cast<Element>(__builtin_ctz(cand));
                                cand &= cand - 1;
                                if (pair_in(u, a, t, c) && pair_in(v, b, t, c)) {
                                    witnessed = true;
                                    break;
                                }
                            }
                            if (!witnessed) {
                                drop_pair(u, a, v, b);
                                changed = true;
                            }
                        }
                }
        return changed;
    };
    auto compat_pass = [&]() {
        bool changed = false;
        for (std::size_t ci = 0; ci < w.alive.size(); ++ci) {
            const auto& c = p.constraints[ci];
            const auto& ts = c.rel.tuples;
            for (std::size_t ti = 0; ti < ts.size(); ++ti) {
                if (!w.alive[ci][ti]) continue;
                bool ok = true;
                for (std::size_t i = 0; i < c.scope.size() && ok; ++i)
                    for (std::size_t j = i + 1; j < c.scope.size(); ++j)
                        if (!pair_in(c.scope[i], ts[ti][i], c.scope[j], ts[ti][j])) {
                            ok = false;
                            break;
                        }
                if (!ok) {
                    w.alive[ci][ti] = 0;
                    changed = true;
                }
            }
        }
        return changed;
    };
    auto domain_pass = [&]() {
        bool changed = false;
        for (int v = 0; v < n; ++v) {
            std::uint32_t cand = w.allowed[v];
            while (cand) {
                Element a = static_cast<Element>(__builtin_ctz(cand));
                cand &= cand - 1;
                bool supported = true;
                for (int u = 0; u < n && supported; ++u) {
                    if (u == v) continue;
                    bool has = false;
                    std::uint32_t bs = w.allowed[u];
                    while (bs) {
                        Element b = static_cast<Element>(__builtin_ctz(bs));
                        bs &= bs - 1;
                        if (pair_in(v, a, u, b)) {
                            has = true;
                            break;
                        }
                    }
                    if (!has) supported = false;
                }
                if (!supported) {
                    w.allowed[v] &= ~(1u << a);
                    changed = true;
                }
            }
        }
        return changed;
    };
    bool any_change = true;
    while (any_change) {
        any_change = false;
        if (intersect_with_projections()) any_change = true;
        if (triangle_pass()) any_change = true;
        if (compat_pass()) any_change = true;
        if (domain_pass()) any_change = true;
        while (w.arc_pass()) any_change = true;
        if (w.empty_somewhere()) {
            Instance out = p;
            out.unsat = true;
            return {std::move(out), identity_lift(), true};
        }
        for (int u = 0; u < n; ++u)
            for (int v = u + 1; v < n; ++v)
                if (!pairs[u][v]) {
                    Instance out = p;
                    out.unsat = true;
                    return {std::move(out), identity_lift(), true};
                }
    }
    return finalize(p, w, &pairs, true);
}

} // namespace uacsp
