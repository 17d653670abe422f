#ifndef UACSP_CENTRALIZER_HPP
#define UACSP_CENTRALIZER_HPP

#include <vector>

#include "algebra.hpp"
#include "config.hpp"

namespace uacsp {

/** Equivalence relating c ~ d when every binary polynomial p collapses
 *  beta into alpha with parameter c exactly when it does with parameter d. */
struct TwinEquivalence {
    Partition classes;
};

TwinEquivalence twin_equivalence(const FiniteAlgebra& a, const Partition& alpha, const Partition& beta,
                                 const Config& cfg = default_config());

/** The centralizer (alpha:beta): the largest congruence contained in the twin
 *  equivalence, found by refining against unary-polynomial preimages. */
Partition centralizer(const FiniteAlgebra& a, const Partition& alpha, const Partition& beta,
                      const Config& cfg = default_config());

} // namespace uacsp

#endif
