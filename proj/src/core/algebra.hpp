#ifndef UACSP_ALGEBRA_HPP
#define UACSP_ALGEBRA_HPP

#include <memory>
#include <span>
#include <string>
#include <vector>

#include "partition.hpp"

namespace uacsp {

/** One named basic operation, stored as a dense row-major table
 *  (innermost index = last argument). */
struct OperationTable {
    std::string name;
    int arity = 1;
    std::vector<Element> table;

    Element apply(int universe_size, std::span<const Element> args) const;
};

/** Finite idempotent algebra on {0..n-1}. Immutable after construction;
 *  idempotence and totality are enforced by the constructor. */
class FiniteAlgebra {
public:
    FiniteAlgebra(std::string id, int size, std::vector<OperationTable> ops);

    const std::string& id() const { return id_; }
    int size() const { return size_; }
    const std::vector<OperationTable>& ops() const { return ops_; }
    const OperationTable& op(const std::string& name) const;
    int op_index(const std::string& name) const;

    Element eval(int op_index, std::span<const Element> args) const;
    Element eval(const std::string& op_name, std::span<const Element> args) const;

    /** Same op names and arities, in order. */
    bool same_signature(const FiniteAlgebra& other) const;

    /** Structural key for caching (id excluded). */
    const std::string& table_key() const { return key_; }

private:
    std::string id_;
    int size_;
    std::vector<OperationTable> ops_;
    std::string key_;
};

using AlgebraPtr = std::shared_ptr<const FiniteAlgebra>;

/** Subuniverse generated by seed: least subset containing seed and closed
 *  under all basic operations. Returned sorted. */
std::vector<Element> sg(const FiniteAlgebra& a, const std::vector<Element>& seed);

/** Closure of seed tuples under coordinatewise basic operations inside the
 *  direct power A^coords (lazy: only reachable tuples are created).
 *  Throws resource_error when more than cap tuples would be produced. */
std::vector<std::vector<Element>> sg_in_power(const FiniteAlgebra& a, int coords,
                                              const std::vector<std::vector<Element>>& seed,
                                              std::size_t cap);

/** Materialized direct power on index tuples; throws resource_error when
 *  size^coords exceeds cap. */
AlgebraPtr power(const FiniteAlgebra& a, int coords, std::size_t cap);

/** Quotient algebra modulo a congruence, elements = blocks in canonical
 *  order. Throws internal_error if the partition is not compatible with
 *  some operation (well-definedness check is exhaustive). */
AlgebraPtr quotient(const FiniteAlgebra& a, const Partition& alpha);

/** Restriction to a subuniverse (relabeled 0..k-1 by ascending element).
 *  elements must be closed under all basic ops. */
AlgebraPtr subalgebra(const FiniteAlgebra& a, const std::vector<Element>& elements);

/** Retract by an idempotent self-map p: universe = image of p relabeled,
 *  operations become p∘f restricted to the image. */
AlgebraPtr retract(const FiniteAlgebra& a, const std::vector<Element>& p);

} // namespace uacsp

#endif
