#ifndef UACSP_BLOCKMIN_HPP
#define UACSP_BLOCKMIN_HPP

#include <functional>

#include "instance.hpp"
#include "strands.hpp"

namespace uacsp {

struct InstanceMeasures {
    int size = 0;                   // max cardinality among non-semilattice-free domains
    std::vector<int> max_vars;      // variables attaining it
    std::vector<int> center_vars;   // (0_v : mu_v) is the full congruence
    std::vector<bool> sl_free;      // per variable
    std::vector<Partition> mu;      // monolith per variable (equality for 1-element domains)
    std::vector<Partition> mu_star; // mu on MAX ∩ Center, equality elsewhere

    bool in_max(int v) const;
    bool in_center(int v) const;
};

/** Size/MAX/Center/mu* bookkeeping. Every domain with at least two elements
 *  must be subdirectly irreducible. */
InstanceMeasures measures(const Instance& p, const Config& cfg = default_config());

/** Just the size measure (needs only semilattice-freeness, not SI). */
int instance_size(const Instance& p, const Config& cfg = default_config());

/** mu^Y: the monolith on Y, equality elsewhere. */
std::vector<Partition> mu_Y(const Instance& p, const InstanceMeasures& m, const std::vector<int>& y);

/** The block-minimality subproblem for a strand U: the instance (with the
 *  strategy materialized as constraints) quotiented by mu^{MAX-U}. */
Instance subproblem(const Instance& p, const InstanceMeasures& m, const std::vector<int>& strand_vars);

/** Decision callback used for the strictly smaller recursive instances. */
using DecideFn = std::function<bool(const Instance&)>;

struct BlockMinResult {
    Instance instance;
    Lift lift;
    bool changed = false;
    int oracle_fallbacks = 0;  // degenerate subproblems decided by the oracle
};

/** Removes constraint tuples whose quotient image extends to no solution of
 *  the strand subproblems, re-establishing (2,3)-minimality and subdirect
 *  irreducibility after each change, to a fixed point. The input must be
 *  stabilized (SI domains, (2,3)-minimal with strategy). */
BlockMinResult establish_block_minimality(const Instance& p, const DecideFn& decide,
                                          const Config& cfg = default_config());

} // namespace uacsp

#endif
