#ifndef UACSP_CONGRUENCE_HPP
#define UACSP_CONGRUENCE_HPP

#include <optional>
#include <utility>
#include <vector>

#include "algebra.hpp"
#include "config.hpp"

namespace uacsp {

struct CongruenceLattice {
    std::vector<Partition> congruences;      // sorted canonically; includes 0 and 1
    std::vector<std::vector<bool>> leq;      // leq[i][j] iff congruences[i] refines congruences[j]
    std::vector<std::pair<int, int>> covers; // (i,j) with congruences[i] covered by congruences[j]

    int index_of(const Partition& p) const;
};

/** True iff p is an equivalence preserved by every unary polynomial. */
bool is_congruence(const FiniteAlgebra& a, const Partition& p, const Config& cfg = default_config());

/** Least congruence containing the given pairs: closure under unary
 *  polynomials and transitivity, iterated to a fixed point. */
Partition cg(const FiniteAlgebra& a, const std::vector<std::pair<Element, Element>>& pairs,
             const Config& cfg = default_config());

/** Full congruence lattice via principal congruences closed under join. */
const CongruenceLattice& con(const FiniteAlgebra& a, const Config& cfg = default_config());

struct MonolithResult {
    bool subdirectly_irreducible = false;
    std::optional<Partition> monolith;  // absent for 1-element algebras and non-SI algebras
};

/** Meet of all nontrivial congruences; SI iff that meet is nontrivial.
 *  1-element algebras are reported trivially SI with no monolith. */
MonolithResult monolith(const FiniteAlgebra& a, const Config& cfg = default_config());

/** All meet-irreducible congruences (exactly one upper cover). Their meet is
 *  the equality congruence. */
std::vector<Partition> meet_irreducibles(const FiniteAlgebra& a, const Config& cfg = default_config());

} // namespace uacsp

#endif
