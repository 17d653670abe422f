#include "algebra.hpp"

#include <algorithm>
#include <set>

#include "errors.hpp"

namespace uacsp {

namespace {

std::size_t table_cells(int universe_size, int arity) {
    std::size_t c = 1;
    for (int i = 0; i < arity; ++i) c *= static_cast<std::size_t>(universe_size);
    return c;
}

std::size_t row_major_index(int universe_size, std::span<const Element> args) {
    std::size_t idx = 0;
    for (Element a : args) idx = idx * universe_size + static_cast<std::size_t>(a);
    return idx;
}

} // namespace

Element OperationTable::apply(int universe_size, std::span<const Element> args) const {
    return table[row_major_index(universe_size, args)];
}

FiniteAlgebra::FiniteAlgebra(std::string id, int size, std::vector<OperationTable> ops)
    : id_(std::move(id)), size_(size), ops_(std::move(ops)) {
    if (size_ < 1) throw input_error("algebra '" + id_ + "': size must be >= 1");
    for (const auto& op : ops_) {
        if (op.arity < 1) throw input_error("algebra '" + id_ + "', op '" + op.name + "': arity must be >= 1");
        if (op.table.size() != table_cells(size_, op.arity))
            throw input_error("algebra '" + id_ + "', op '" + op.name + "': table is not total");
        for (Element v : op.table)
            if (v < 0 || v >= size_)
                throw input_error("algebra '" + id_ + "', op '" + op.name + "': output out of range");
    }
    // idempotence is a hard requirement: f(x,...,x) = x
    for (const auto& op : ops_) {
        for (Element x = 0; x < size_; ++x) {
            std::vector<Element> diag(op.arity, x);
            if (op.apply(size_, diag) != x)
                throw input_error("algebra '" + id_ + "', op '" + op.name + "': not idempotent at " +
                                  std::to_string(x));
        }
    }
    key_ = std::to_string(size_);
    for (const auto& op : ops_) {
        key_ += "|" + op.name + "/" + std::to_string(op.arity) + ":";
        for (Element v : op.table) key_ += static_cast<char>('0' + v);
    }
}

const OperationTable& FiniteAlgebra::op(const std::string& name) const {
    return ops_[op_index(name)];
}

int FiniteAlgebra::op_index(const std::string& name) const {
    for (std::size_t i = 0; i < ops_.size(); ++i)
        if (ops_[i].name == name) return static_cast<int>(i);
    throw input_error("algebra '" + id_ + "': unknown operation '" + name + "'");
}

Element FiniteAlgebra::eval(int op_index, std::span<const Element> args) const {
    const auto& op = ops_.at(op_index);
    if (static_cast<int>(args.size()) != op.arity)
        throw input_error("eval: arity mismatch for '" + op.name + "'");
    for (Element a : args)
        if (a < 0 || a >= size_) throw input_error("eval: element out of range");
    return op.apply(size_, args);
}

Element FiniteAlgebra::eval(const std::string& op_name, std::span<const Element> args) const {
    return eval(op_index(op_name), args);
}

bool FiniteAlgebra::same_signature(const FiniteAlgebra& other) const {
    if (ops_.size() != other.ops_.size()) return false;
    for (std::size_t i = 0; i < ops_.size(); ++i)
        if (ops_[i].name != other.ops_[i].name || ops_[i].arity != other.ops_[i].arity) return false;
    return true;
}

std::vector<Element> sg(const FiniteAlgebra& a, const std::vector<Element>& seed) {
    if (seed.empty()) throw input_error("sg: empty seed");
    std::vector<bool> in(a.size(), false);
    std::vector<Element> members;
    for (Element e : seed) {
        if (e < 0 || e >= a.size()) throw input_error("sg: seed element out of range");
        if (!in[e]) {
            in[e] = true;
            members.push_back(e);
        }
    }
    // worklist: when members[qi] arrives, apply every op to all argument
    // tuples over members[0..qi] that use position qi at least once
    for (std::size_t qi = 0; qi < members.size(); ++qi) {
        for (const auto& op : a.ops()) {
            std::vector<std::size_t> pick(op.arity, 0);
            std::vector<Element> args(op.arity);
            while (true) {
                bool uses_new = false;
                for (int i = 0; i < op.arity; ++i) {
                    if (pick[i] == qi) uses_new = true;
                    args[i] = members[pick[i]];
                }
                if (uses_new) {
                    Element v = op.apply(a.size(), args);
                    if (!in[v]) {
                        in[v] = true;
                        members.push_back(v);
                    }
                }
                int pos = op.arity - 1;
                while (pos >= 0 && pick[pos] == qi) pick[pos--] = 0;
                if (pos < 0) break;
                ++pick[pos];
            }
        }
    }
    std::sort(members.begin(), members.end());
    return members;
}

std::vector<std::vector<Element>> sg_in_power(const FiniteAlgebra& a, int coords,
                                              const std::vector<std::vector<Element>>& seed,
                                              std::size_t cap) {
    if (seed.empty()) throw input_error("sg_in_power: empty seed");
    std::set<std::vector<Element>> in;
    std::vector<std::vector<Element>> members;
    for (const auto& t : seed) {
        if (static_cast<int>(t.size()) != coords) throw input_error("sg_in_power: tuple arity mismatch");
        for (Element e : t)
            if (e < 0 || e >= a.size()) throw input_error("sg_in_power: element out of range");
        if (in.insert(t).second) members.push_back(t);
    }
    for (std::size_t qi = 0; qi < members.size(); ++qi) {
        for (const auto& op : a.ops()) {
            std::vector<std::size_t> pick(op.arity, 0);
            std::vector<Element> args(op.arity);
            std::vector<Element> out(coords);
            while (true) {
                bool uses_new = false;
                for (int i = 0; i < op.arity; ++i)
                    if (pick[i] == qi) uses_new = true;
                if (uses_new) {
                    for (int c = 0; c < coords; ++c) {
                        for (int i = 0; i < op.arity; ++i) args[i] = members[pick[i]][c];
                        out[c] = op.apply(a.size(), args);
                    }
                    if (in.insert(out).second) {
                        if (members.size() + 1 > cap)
                            throw resource_error("sg_in_power: closure exceeds cap of " + std::to_string(cap));
                        members.push_back(out);
                    }
                }
                int pos = op.arity - 1;
                while (pos >= 0 && pick[pos] == qi) pick[pos--] = 0;
                if (pos < 0) break;
                ++pick[pos];
            }
        }
    }
    std::sort(members.begin(), members.end());
    return members;
}

AlgebraPtr power(const FiniteAlgebra& a, int coords, std::size_t cap) {
    if (coords < 1) throw input_error("power: coords must be >= 1");
    std::size_t n = 1;
    for (int i = 0; i < coords; ++i) {
        n *= static_cast<std::size_t>(a.size());
        if (n > cap) throw resource_error("power: size exceeds cap of " + std::to_string(cap));
    }
    // element k encodes a tuple base-|A|, most significant = first coordinate
    auto decode = [&](std::size_t k) {
        std::vector<Element> t(coords);
        for (int c = coords - 1; c >= 0; --c) {
            t[c] = static_cast<Element>(k % a.size());
            k /= a.size();
        }
        return t;
    };
    std::vector<OperationTable> ops;
    for (const auto& op : a.ops()) {
        OperationTable nt{op.name, op.arity, {}};
        nt.table.resize(table_cells(static_cast<int>(n), op.arity));
        std::vector<std::size_t> pick(op.arity, 0);
        std::vector<std::vector<Element>> tuples(op.arity);
        std::vector<Element> args(op.arity);
        std::size_t idx = 0;
        while (true) {
            for (int i = 0; i < op.arity; ++i) tuples[i] = decode(pick[i]);
            std::size_t enc = 0;
            for (int c = 0; c < coords; ++c) {
                for (int i = 0; i < op.arity; ++i) args[i] = tuples[i][c];
                enc = enc * a.size() + static_cast<std::size_t>(op.apply(a.size(), args));
            }
            nt.table[idx++] = static_cast<Element>(enc);
            int pos = op.arity - 1;
            while (pos >= 0 && pick[pos] + 1 == n) pick[pos--] = 0;
            if (pos < 0) break;
            ++pick[pos];
        }
        ops.push_back(std::move(nt));
    }
    return std::make_shared<FiniteAlgebra>(a.id() + "^" + std::to_string(coords), static_cast<int>(n),
                                           std::move(ops));
}

AlgebraPtr quotient(const FiniteAlgebra& a, const Partition& alpha) {
    if (alpha.size() != a.size()) throw input_error("quotient: partition size mismatch");
    const auto blocks = alpha.blocks();
    const int n = static_cast<int>(blocks.size());
    std::vector<int> block_of(a.size());
    for (int b = 0; b < n; ++b)
        for (Element e : blocks[b]) block_of[e] = b;
    std::vector<OperationTable> ops;
    for (const auto& op : a.ops()) {
        OperationTable nt{op.name, op.arity, {}};
        nt.table.resize(table_cells(n, op.arity));
        std::vector<int> pick(op.arity, 0);
        std::vector<Element> args(op.arity);
        std::size_t idx = 0;
        while (true) {
            for (int i = 0; i < op.arity; ++i) args[i] = blocks[pick[i]][0];
            nt.table[idx++] = block_of[op.apply(a.size(), args)];
            int pos = op.arity - 1;
            while (pos >= 0 && pick[pos] + 1 == n) pick[pos--] = 0;
            if (pos < 0) break;
            ++pick[pos];
        }
        ops.push_back(std::move(nt));
    }
    auto q = std::make_shared<FiniteAlgebra>(a.id() + "/" + alpha.to_string(), n, std::move(ops));
    // well-definedness: results of representative tuples must agree blockwise
    // with every other choice of representatives
    for (const auto& op : a.ops()) {
        std::vector<Element> args(op.arity);
        std::vector<int> pick(op.arity, 0);
        while (true) {
            for (int i = 0; i < op.arity; ++i) args[i] = pick[i];
            Element v = op.apply(a.size(), args);
            std::vector<Element> bargs(op.arity);
            for (int i = 0; i < op.arity; ++i) bargs[i] = block_of[pick[i]];
            if (q->eval(q->op_index(op.name), bargs) != block_of[v])
                throw internal_error("quotient: partition is not a congruence for op '" + op.name + "'");
            int pos = op.arity - 1;
            while (pos >= 0 && pick[pos] + 1 == a.size()) pick[pos--] = 0;
            if (pos < 0) break;
            ++pick[pos];
        }
    }
    return q;
}

AlgebraPtr subalgebra(const FiniteAlgebra& a, const std::vector<Element>& elements) {
    std::vector<Element> sorted = elements;
    std::sort(sorted.begin(), sorted.end());
    sorted.erase(std::unique(sorted.begin(), sorted.end()), sorted.end());
    if (sorted.empty()) throw input_error("subalgebra: empty element set");
    std::vector<int> new_index(a.size(), -1);
    for (std::size_t i = 0; i < sorted.size(); ++i) new_index[sorted[i]] = static_cast<int>(i);
    const int n = static_cast<int>(sorted.size());
    std::vector<OperationTable> ops;
    for (const auto& op : a.ops()) {
        OperationTable nt{op.name, op.arity, {}};
        nt.table.resize(table_cells(n, op.arity));
        std::vector<int> pick(op.arity, 0);
        std::vector<Element> args(op.arity);
        std::size_t idx = 0;
        while (true) {
            for (int i = 0; i < op.arity; ++i) args[i] = sorted[pick[i]];
            Element v = op.apply(a.size(), args);
            if (new_index[v] < 0)
                throw input_error("subalgebra: set not closed under op '" + op.name + "'");
            nt.table[idx++] = new_index[v];
            int pos = op.arity - 1;
            while (pos >= 0 && pick[pos] + 1 == n) pick[pos--] = 0;
            if (pos < 0) break;
            ++pick[pos];
        }
        ops.push_back(std::move(nt));
    }
    return std::make_shared<FiniteAlgebra>(a.id() + "|sub", n, std::move(ops));
}

AlgebraPtr retract(const FiniteAlgebra& a, const std::vector<Element>& p) {
    if (static_cast<int>(p.size()) != a.size()) throw input_error("retract: map size mismatch");
    for (Element e = 0; e < a.size(); ++e)
        if (p[p[e]] != p[e]) throw internal_error("retract: map is not idempotent");
    std::vector<Element> image;
    std::vector<int> new_index(a.size(), -1);
    for (Element e = 0; e < a.size(); ++e)
        if (p[e] == e) {
            new_index[e] = static_cast<int>(image.size());
            image.push_back(e);
        }
    const int n = static_cast<int>(image.size());
    std::vector<OperationTable> ops;
    for (const auto& op : a.ops()) {
        OperationTable nt{op.name, op.arity, {}};
        nt.table.resize(table_cells(n, op.arity));
        std::vector<int> pick(op.arity, 0);
        std::vector<Element> args(op.arity);
        std::size_t idx = 0;
        while (true) {
            for (int i = 0; i < op.arity; ++i) args[i] = image[pick[i]];
            nt.table[idx++] = new_index[p[op.apply(a.size(), args)]];
            int pos = op.arity - 1;
            while (pos >= 0 && pick[pos] + 1 == n) pick[pos--] = 0;
            if (pos < 0) break;
            ++pick[pos];
        }
        ops.push_back(std::move(nt));
    }
    return std::make_shared<FiniteAlgebra>(a.id() + "|ret", n, std::move(ops));
}

} // namespace uacsp
