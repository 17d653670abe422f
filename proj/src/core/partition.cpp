#include "partition.hpp"

#include <algorithm>
#include <map>
#include <numeric>

#include "errors.hpp"

namespace uacsp {

namespace {

// union-find on a scratch parent vector
Element find_root(std::vector<Element>& parent, Element x) {
    while (parent[x] != x) {
        parent[x] = parent[parent[x]];
        x = parent[x];
    }
    return x;
}

} // namespace

Partition::Partition(std::vector<Element> reps) : rep_(std::move(reps)) {
    canonicalize();
}

void Partition::canonicalize() {
    const int n = size();
    for (Element e = 0; e < n; ++e) {
        if (rep_[e] < 0 || rep_[e] >= n) throw input_error("partition label out of range");
    }
    // rep values may be arbitrary class labels; relabel each class by its least member
    std::map<Element, Element> least;
    for (Element e = 0; e < n; ++e)
        if (!least.count(rep_[e])) least[rep_[e]] = e;
    for (Element e = 0; e < n; ++e) rep_[e] = least[rep_[e]];
}

Partition Partition::equality(int n) {
    std::vector<Element> r(n);
    std::iota(r.begin(), r.end(), 0);
    return Partition(std::move(r));
}

Partition Partition::full(int n) {
    return Partition(std::vector<Element>(n, 0));
}

Partition Partition::from_pairs(int n, const std::vector<std::pair<Element, Element>>& pairs) {
    std::vector<Element> parent(n);
    std::iota(parent.begin(), parent.end(), 0);
    for (auto [a, b] : pairs) {
        if (a < 0 || a >= n || b < 0 || b >= n) throw input_error("pair element out of range");
        Element ra = find_root(parent, a), rb = find_root(parent, b);
        if (ra != rb) parent[std::max(ra, rb)] = std::min(ra, rb);
    }
    std::vector<Element> r(n);
    for (Element e = 0; e < n; ++e) r[e] = find_root(parent, e);
    return Partition(std::move(r));
}

bool Partition::is_equality() const {
    for (Element e = 0; e < size(); ++e)
        if (rep_[e] != e) return false;
    return true;
}

bool Partition::is_full() const {
    for (Element e = 0; e < size(); ++e)
        if (rep_[e] != 0) return false;
    return size() > 0;
}

int Partition::block_count() const {
    int c = 0;
    for (Element e = 0; e < size(); ++e)
        if (rep_[e] == e) ++c;
    return c;
}

std::vector<std::vector<Element>> Partition::blocks() const {
    std::vector<std::vector<Element>> out;
    std::map<Element, int> index;
    for (Element e = 0; e < size(); ++e) {
        auto it = index.find(rep_[e]);
        if (it == index.end()) {
            index[rep_[e]] = static_cast<int>(out.size());
            out.push_back({e});
        } else {
            out[it->second].push_back(e);
        }
    }
    return out;
}

int Partition::block_index(Element e) const {
    int idx = 0;
    for (Element x = 0; x < size(); ++x) {
        if (rep_[x] == x) {
            if (rep_[e] == x) return idx;
            ++idx;
        }
    }
    throw internal_error("block_index: element not found");
}

Partition Partition::meet(const Partition& other) const {
    if (other.size() != size()) throw input_error("meet: size mismatch");
    const int n = size();
    std::map<std::pair<Element, Element>, Element> cls;
    std::vector<Element> r(n);
    for (Element e = 0; e < n; ++e) {
        auto key = std::make_pair(rep_[e], other.rep_[e]);
        auto it = cls.find(key);
        if (it == cls.end()) cls[key] = e;
        r[e] = cls[key];
    }
    return Partition(std::move(r));
}

Partition Partition::join(const Partition& other) const {
    if (other.size() != size()) throw input_error("join: size mismatch");
    std::vector<std::pair<Element, Element>> pairs;
    for (Element e = 0; e < size(); ++e) {
        pairs.emplace_back(e, rep_[e]);
        pairs.emplace_back(e, other.rep_[e]);
    }
    return from_pairs(size(), pairs);
}

bool Partition::refines(const Partition& other) const {
    if (other.size() != size()) throw input_error("refines: size mismatch");
    for (Element a = 0; a < size(); ++a)
        if (!other.same(a, rep_[a])) return false;
    return true;
}

std::string Partition::to_string() const {
    std::string s = "{";
    bool firstb = true;
    for (const auto& b : blocks()) {
        if (!firstb) s += ",";
        firstb = false;
        s += "{";
        for (size_t i = 0; i < b.size(); ++i) {
            if (i) s += ",";
            s += std::to_string(b[i]);
        }
        s += "}";
    }
    s += "}";
    return s;
}

} // namespace uacsp
