#ifndef UACSP_STRANDS_HPP
#define UACSP_STRANDS_HPP

#include <optional>

#include "instance.hpp"

namespace uacsp {

/** A variable set whose pairwise strategy relations are aligned for the
 *  chosen per-variable congruences. Singletons carry the equality congruence. */
struct Strand {
    std::vector<int> vars;          // ascending
    std::vector<Partition> alphas;  // parallel to vars

    bool operator==(const Strand& o) const { return vars == o.vars && alphas == o.alphas; }
    bool operator<(const Strand& o) const {
        return vars != o.vars ? vars < o.vars : alphas < o.alphas;
    }
};

/** Whether the binary relation links alpha-blocks to gamma-blocks bijectively:
 *  (a,b) in alpha iff (c,d) in gamma for all (a,c),(b,d) in r. r must be
 *  subdirect in its two coordinate domains. */
bool is_aligned(const Relation& r, const Partition& alpha, const Partition& gamma);

/** Transfer of alpha through r to the far side: the partition generated by
 *  pairs of far elements reachable from alpha-related near elements. Returned
 *  only when it is a congruence of the far algebra and r is aligned for the
 *  pair; otherwise nullopt. */
std::optional<Partition> induced_partition(const Relation& r, const Partition& alpha, bool from_first,
                                           const FiniteAlgebra& far_algebra,
                                           const Config& cfg = default_config());

/** All maximal seed-grown strands plus every singleton. Requires the
 *  (2,3)-strategy. Deterministic: seeds and growth in ascending order. */
std::vector<Strand> find_strands(const Instance& p, const Config& cfg = default_config());

/** Splits the restriction of a (2,3)-minimal instance onto a strand into one
 *  instance per block-correspondence class; the parts partition the solution
 *  set of p_w. */
std::vector<Instance> decompose(const Instance& p_w, const Strand& strand,
                                const Config& cfg = default_config());

} // namespace uacsp

#endif
