#include "workspace.hpp"

#include <algorithm>
#include <fstream>
#include <map>
#include <sstream>

#include <json.hpp>

#include "centralizer.hpp"
#include "clone.hpp"
#include "congruence.hpp"
#include "errors.hpp"

namespace uacsp {

using nlohmann::json;

namespace {

void flatten_table(const json& node, int size, int arity, int depth, std::vector<Element>& out,
                   const std::string& where) {
    if (depth == arity) {
        if (!node.is_number_integer())
            throw input_error(where + ": table entry is not an integer");
        out.push_back(node.get<int>());
        return;
    }
    if (!node.is_array() || static_cast<int>(node.size()) != size)
        throw input_error(where + ": table nesting does not match arity and size");
    for (const auto& kid : node) flatten_table(kid, size, arity, depth + 1, out, where);
}

json nest_table(const std::vector<Element>& table, int size, int arity, std::size_t& pos) {
    if (arity == 0) return json(table[pos++]);
    json arr = json::array();
    for (int i = 0; i < size; ++i) arr.push_back(nest_table(table, size, arity - 1, pos));
    return arr;
}

AlgebraPtr parse_algebra(const json& node, const Config& cfg) {
    if (!node.is_object()) throw input_error("algebra entry is not an object");
    std::string name = node.value("name", "");
    if (name.empty()) throw input_error("algebra without a name");
    const std::string where = "algebra '" + name + "'";
    if (!node.contains("size") || !node["size"].is_number_integer())
        throw input_error(where + ": missing integer size");
    int size = node["size"].get<int>();
    if (size < 1 || size > cfg.max_algebra_size)
        throw input_error(where + ": size must be between 1 and " +
                          std::to_string(cfg.max_algebra_size));
    if (!node.contains("operations") || !node["operations"].is_array())
        throw input_error(where + ": missing operations array");
    std::vector<OperationTable> ops;
    for (const auto& opn : node["operations"]) {
        OperationTable op;
        op.name = opn.value("name", "");
        if (op.name.empty()) throw input_error(where + ": operation without a name");
        op.arity = opn.value("arity", 0);
        if (op.arity < 1) throw input_error(where + ", op '" + op.name + "': arity must be >= 1");
        if (!opn.contains("table"))
            throw input_error(where + ", op '" + op.name + "': missing table");
        flatten_table(opn["table"], size, op.arity, 0, op.table, where + ", op '" + op.name + "'");
        ops.push_back(std::move(op));
    }
    return std::make_shared<FiniteAlgebra>(name, size, std::move(ops));  // validates idempotence
}

} // namespace

const AlgebraPtr& Workspace::algebra(const std::string& id) const {
    for (const auto& a : algebras)
        if (a->id() == id) return a;
    throw input_error("unknown algebra '" + id + "'");
}

Workspace load_workspace_text(const std::string& text, const Config& cfg) {
    json doc;
    try {
        doc = json::parse(text);
    } catch (const json::parse_error& e) {
        throw input_error(std::string("workspace: ") + e.what());
    }
    if (!doc.is_object()) throw input_error("workspace: top level must be an object");
    Workspace ws;
    for (const auto& an : doc.value("algebras", json::array())) {
        auto a = parse_algebra(an, cfg);
        for (const auto& prev : ws.algebras) {
            if (prev->id() == a->id()) throw input_error("duplicate algebra '" + a->id() + "'");
            if (!prev->same_signature(*a))
                throw input_error("algebra '" + a->id() + "' does not share the workspace signature");
        }
        ws.algebras.push_back(std::move(a));
    }
    for (const auto& in : doc.value("instances", json::array())) {
        if (!in.is_object()) throw input_error("instance entry is not an object");
        std::string aname = in.value("algebra", "");
        const AlgebraPtr& base = ws.algebra(aname);
        Instance p;
        std::map<std::string, int> var_index;
        if (!in.contains("variables") || !in["variables"].is_array() || in["variables"].empty())
            throw input_error("instance over '" + aname + "': missing variables");
        for (const auto& vn : in["variables"]) {
            std::string id = vn.value("id", "");
            if (id.empty()) throw input_error("variable without an id");
            if (var_index.count(id)) throw input_error("duplicate variable '" + id + "'");
            var_index[id] = p.num_vars();
            p.var_names.push_back(id);
            DomainDescriptor d;
            d.provenance.push_back(ProvenanceBase{aname});
            if (!vn.contains("domain") || (vn["domain"].is_string() && vn["domain"] == "full")) {
                d.algebra = base;
            } else if (vn["domain"].is_array()) {
                std::vector<Element> elems;
                for (const auto& e : vn["domain"]) {
                    if (!e.is_number_integer()) throw input_error("variable '" + id + "': bad domain element");
                    int x = e.get<int>();
                    if (x < 0 || x >= base->size())
                        throw input_error("variable '" + id + "': domain element out of range");
                    elems.push_back(x);
                }
                std::sort(elems.begin(), elems.end());
                elems.erase(std::unique(elems.begin(), elems.end()), elems.end());
                try {
                    d.algebra = subalgebra(*base, elems);
                } catch (const input_error& e) {
                    throw input_error("variable '" + id + "': " + e.what());
                }
                if (static_cast<int>(elems.size()) != base->size())
                    d.provenance.push_back(ProvenanceSubset{elems});
            } else {
                throw input_error("variable '" + id + "': domain must be \"full\" or an element list");
            }
            p.domains.push_back(std::move(d));
        }
        for (const auto& cn : in.value("constraints", json::array())) {
            Constraint c;
            if (!cn.contains("scope") || !cn["scope"].is_array() || cn["scope"].empty())
                throw input_error("constraint without a scope");
            for (const auto& sv : cn["scope"]) {
                std::string id = sv.get<std::string>();
                if (!var_index.count(id)) throw input_error("constraint scope names unknown variable '" + id + "'");
                c.scope.push_back(var_index[id]);
            }
            c.rel.arity = static_cast<int>(c.scope.size());
            for (const auto& tn : cn.value("tuples", json::array())) {
                if (!tn.is_array() || tn.size() != c.scope.size())
                    throw input_error("constraint tuple arity mismatch");
                std::vector<Element> t;
                for (std::size_t i = 0; i < tn.size(); ++i) {
                    int x = tn[i].get<int>();
                    int v = c.scope[i];
                    // file tuples use base-algebra elements; map into the declared domain
                    if (p.domains[v].provenance.size() > 1 &&
                        std::holds_alternative<ProvenanceSubset>(p.domains[v].provenance.back())) {
                        const auto& em = std::get<ProvenanceSubset>(p.domains[v].provenance.back()).element_map;
                        auto it = std::find(em.begin(), em.end(), x);
                        if (it == em.end())
                            throw input_error("constraint tuple uses element outside the domain of '" +
                                              p.var_names[v] + "'");
                        x = static_cast<int>(it - em.begin());
                    } else if (x < 0 || x >= p.domain_size(v)) {
                        throw input_error("constraint tuple element out of range for '" +
                                          p.var_names[v] + "'");
                    }
                    t.push_back(x);
                }
                c.rel.tuples.push_back(std::move(t));
            }
            c.rel.normalize();
            c = diagonalize(c);  // repeated scope variables are normalized away
            std::vector<AlgebraPtr> coords;
            for (int v : c.scope) coords.push_back(p.domains[v].algebra);
            if (auto bad = check_invariance(c.rel, coords))
                throw input_error("constraint over '" + aname + "' is not invariant under '" +
                                  bad->op_name + "'");
            p.constraints.push_back(std::move(c));
        }
        ws.instances.push_back(std::move(p));
    }
    return ws;
}

Workspace load_workspace_file(const std::string& path, const Config& cfg) {
    std::ifstream in(path);
    if (!in) throw input_error("cannot open '" + path + "'");
    std::stringstream ss;
    ss << in.rdbuf();
    return load_workspace_text(ss.str(), cfg);
}

std::string workspace_to_text(const Workspace& ws) {
    json doc;
    doc["algebras"] = json::array();
    for (const auto& a : ws.algebras) {
        json an;
        an["name"] = a->id();
        an["size"] = a->size();
        an["operations"] = json::array();
        for (const auto& op : a->ops()) {
            json opn;
            opn["name"] = op.name;
            opn["arity"] = op.arity;
            std::size_t pos = 0;
            opn["table"] = nest_table(op.table, a->size(), op.arity, pos);
            an["operations"].push_back(std::move(opn));
        }
        doc["algebras"].push_back(std::move(an));
    }
    doc["instances"] = json::array();
    for (const auto& p : ws.instances) {
        json in;
        in["algebra"] = std::get<ProvenanceBase>(p.domains[0].provenance[0]).algebra_id;
        in["variables"] = json::array();
        for (int v = 0; v < p.num_vars(); ++v) {
            json vn;
            vn["id"] = p.var_names[v];
            if (p.domains[v].provenance.size() > 1 &&
                std::holds_alternative<ProvenanceSubset>(p.domains[v].provenance.back())) {
                vn["domain"] = std::get<ProvenanceSubset>(p.domains[v].provenance.back()).element_map;
            } else {
                vn["domain"] = "full";
            }
            in["variables"].push_back(std::move(vn));
        }
        in["constraints"] = json::array();
        for (const auto& c : p.constraints) {
            json cn;
            cn["scope"] = json::array();
            for (int v : c.scope) cn["scope"].push_back(p.var_names[v]);
            cn["tuples"] = json::array();
            for (const auto& t : c.rel.tuples) {
                json tn = json::array();
                for (std::size_t i = 0; i < t.size(); ++i) {
                    int v = c.scope[i];
                    int x = t[i];
                    if (p.domains[v].provenance.size() > 1 &&
                        std::holds_alternative<ProvenanceSubset>(p.domains[v].provenance.back()))
                        x = std::get<ProvenanceSubset>(p.domains[v].provenance.back()).element_map[x];
                    tn.push_back(x);
                }
                cn["tuples"].push_back(std::move(tn));
            }
            in["constraints"].push_back(std::move(cn));
        }
        doc["instances"].push_back(std::move(in));
    }
    return doc.dump(2) + "\n";
}

std::string render_assignment(const Instance& p, const Assignment& phi) {
    // values reported in the base algebra's element numbering
    std::vector<std::pair<std::string, int>> rows;
    for (int v = 0; v < p.num_vars(); ++v) {
        int x = phi[v];
        if (p.domains[v].provenance.size() > 1 &&
            std::holds_alternative<ProvenanceSubset>(p.domains[v].provenance.back()))
            x = std::get<ProvenanceSubset>(p.domains[v].provenance.back()).element_map[x];
        rows.emplace_back(p.var_names[v], x);
    }
    std::sort(rows.begin(), rows.end());
    std::string out;
    for (const auto& [name, value] : rows) out += name + "=" + std::to_string(value) + "\n";
    return out;
}

std::string analyze_algebra(const FiniteAlgebra& a, const Config& cfg) {
    std::ostringstream out;
    out << "algebra " << a.id() << " (size " << a.size() << ")\n";
    const auto& lat = con(a, cfg);
    out << "  congruences (" << lat.congruences.size() << "):\n";
    for (const auto& c : lat.congruences) out << "    " << c.to_string() << "\n";
    out << "  covers:\n";
    for (auto [i, j] : lat.covers)
        out << "    " << lat.congruences[i].to_string() << " < " << lat.congruences[j].to_string()
            << "\n";
    auto mono = monolith(a, cfg);
    if (mono.subdirectly_irreducible) {
        out << "  subdirectly irreducible: yes\n";
        if (mono.monolith) out << "  monolith: " << mono.monolith->to_string() << "\n";
    } else {
        out << "  subdirectly irreducible: no\n";
    }
    const auto& edges = semilattice_edges(a, cfg);
    out << "  semilattice edges:";
    if (edges.empty()) out << " none (semilattice free)";
    for (const auto& e : edges) out << " " << e.a << "->" << e.b;
    out << "\n";
    out << "  centralizers over covering pairs:\n";
    for (auto [i, j] : lat.covers) {
        Partition c = centralizer(a, lat.congruences[i], lat.congruences[j], cfg);
        out << "    (" << lat.congruences[i].to_string() << " : " << lat.congruences[j].to_string()
            << ") = " << c.to_string() << "\n";
    }
    const auto& m = multiplication_op(a, cfg);
    out << "  multiplication term table:";
    for (Element x = 0; x < a.size(); ++x) {
        out << " ";
        for (Element y = 0; y < a.size(); ++y) out << m[x * a.size() + y];
    }
    out << "\n";
    return out.str();
}

} // namespace uacsp
