#ifndef UACSP_GENERATOR_HPP
#define UACSP_GENERATOR_HPP

#include <cstdint>
#include <random>

#include "instance.hpp"

namespace uacsp {

/** Signature template: (name, arity) pairs. */
using Signature = std::vector<std::pair<std::string, int>>;

/** Uniformly random operation tables with the idempotent diagonal forced.
 *  Streams come from std::mt19937_64 seeded with the given seed, so output
 *  is reproducible across platforms. */
AlgebraPtr random_idempotent_algebra(std::uint64_t seed, int size, const Signature& sig,
                                     const Config& cfg = default_config());

/** Random instance over a shared algebra whose relations are built as
 *  subpower closures of random seed tuples, guaranteeing invariance. */
Instance random_invariant_instance(std::uint64_t seed, const AlgebraPtr& algebra, int vars,
                                   int constraints, int max_arity,
                                   const Config& cfg = default_config());

} // namespace uacsp

#endif
