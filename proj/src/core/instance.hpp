#ifndef UACSP_INSTANCE_HPP
#define UACSP_INSTANCE_HPP

#include <functional>
#include <map>
#include <optional>
#include <string>
#include <variant>
#include <vector>

#include "algebra.hpp"
#include "config.hpp"
#include "congruence.hpp"

namespace uacsp {

struct Relation {
    int arity = 0;
    std::vector<std::vector<Element>> tuples;  // sorted lexicographically, deduplicated

    bool empty() const { return tuples.empty(); }
    bool contains(const std::vector<Element>& t) const;
    void normalize();
    Relation projected(const std::vector<int>& coords) const;
};

struct Constraint {
    std::vector<int> scope;  // distinct variable indices, scope.size() == rel.arity
    Relation rel;
};

// provenance steps composing current elements back toward the base context
struct ProvenanceBase {
    std::string algebra_id;
};
struct ProvenanceSubset {
    std::vector<Element> element_map;  // current element -> parent element
};
struct ProvenanceQuotient {
    std::vector<int> block_map;  // parent element -> current block
};
struct ProvenanceFactor {
    int factor_index = 0;
    std::vector<int> block_map;  // parent element -> block in this factor
};
struct ProvenanceRetract {
    std::vector<Element> element_map;  // current element -> parent element (image of the retraction)
};
using ProvenanceStep =
    std::variant<ProvenanceBase, ProvenanceSubset, ProvenanceQuotient, ProvenanceFactor, ProvenanceRetract>;

struct DomainDescriptor {
    AlgebraPtr algebra;
    std::vector<ProvenanceStep> provenance;
};

/** Binary (2,3)-strategy relations R^{uv} for u < v; unary strategy relations
 *  are identified with the domains. */
struct Strategy {
    std::map<std::pair<int, int>, Relation> binary;

    const Relation& at(int u, int v) const;  // u < v
    /** Membership with automatic transposition for u > v. */
    bool admits(int u, Element a, int v, Element b) const;
};

struct Instance {
    std::vector<std::string> var_names;
    std::vector<DomainDescriptor> domains;
    std::vector<Constraint> constraints;
    std::optional<Strategy> strategy;
    bool unsat = false;

    int num_vars() const { return static_cast<int>(var_names.size()); }
    const FiniteAlgebra& algebra_of(int v) const { return *domains[v].algebra; }
    int domain_size(int v) const { return domains[v].algebra->size(); }
    bool any_empty_relation() const;
    /** Main constraints plus the strategy relations as explicit binary constraints. */
    std::vector<Constraint> augmented_constraints() const;
};

/** Total map variable index -> element of the current domain. */
using Assignment = std::vector<Element>;

/** Maps a solution of a transformed instance to one of its parent. */
using Lift = std::function<Assignment(const Assignment&)>;

Lift identity_lift();
Lift compose_lift(Lift outer, Lift inner);

struct InvarianceViolation {
    std::string op_name;
    std::vector<std::vector<Element>> arguments;  // tuples of the relation
    std::vector<Element> result;                  // their image, outside the relation
};

/** Exhaustive test that every basic operation maps tuples of rel back into
 *  rel (coordinate c evaluated in *coord_algebras[c]). */
std::optional<InvarianceViolation> check_invariance(const Relation& rel,
                                                    const std::vector<AlgebraPtr>& coord_algebras);

bool verify_assignment(const Instance& p, const Assignment& phi);

/** Restriction onto the variable subset (ascending): scopes intersected,
 *  relations projected, strategy restricted. Constraints whose scope misses
 *  the subset entirely are dropped. */
Instance restrict_instance(const Instance& p, const std::vector<int>& vars);

/** Quotient instance: domains quotiented by per-variable congruences, main
 *  constraint relations mapped blockwise. The strategy is dropped. */
Instance quotient_instance(const Instance& p, const std::vector<Partition>& alphas);

/** Adds the constant constraint <(v),{a}>. */
Instance fix_value(const Instance& p, int v, Element a);

struct SplitResult {
    Instance instance;
    bool changed = false;
    Lift lift;  // solution of the split instance -> solution of the input
};

/** Replaces every variable with a non-subdirectly-irreducible domain by one
 *  variable per meet-irreducible congruence (quotient domains) linked by a
 *  diagonal constraint; constraints are rewritten through the embedding. */
SplitResult split_subdirectly_irreducible(const Instance& p, const Config& cfg = default_config());

struct ShrinkResult {
    Instance instance;
    bool changed = false;
    Lift lift;
};

/** Restricts every domain to the given element subsets (which must be
 *  subuniverses), relabels, and rewrites all relations; tuples through
 *  removed elements are pruned. Empty subset marks the instance UNSAT. */
ShrinkResult shrink_domains(const Instance& p, const std::vector<std::vector<Element>>& keep);

/** Scope normalization: repeated variables are diagonalized away. */
Constraint diagonalize(const Constraint& c);

} // namespace uacsp

#endif
