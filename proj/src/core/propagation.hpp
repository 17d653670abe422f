#ifndef UACSP_PROPAGATION_HPP
#define UACSP_PROPAGATION_HPP

#include "instance.hpp"

namespace uacsp {

struct PropagationResult {
    Instance instance;
    Lift lift;        // solution of the tightened instance -> solution of the input
    bool changed = false;
};

/** Arc-consistency fixed point: domains become the intersections of unary
 *  projections, tuples through removed values are pruned. Sets unsat when a
 *  domain empties. */
PropagationResult establish_1_minimality(const Instance& p);

/** Full (2,3)-minimality: 1-minimality, then the worklist fixed point over
 *  the binary strategy relations (triangle witnesses, tuple compatibility,
 *  re-projection). The result carries the strategy. */
PropagationResult establish_23_minimality(const Instance& p);

} // namespace uacsp

#endif
