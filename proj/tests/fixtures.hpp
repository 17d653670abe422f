#ifndef UACSP_TEST_FIXTURES_HPP
#define UACSP_TEST_FIXTURES_HPP

#include <memory>

#include "core/algebra.hpp"
#include "core/examples.hpp"

namespace uacsp::fixtures {

inline AlgebraPtr am() { return example_algebra_am(); }
inline AlgebraPtr an() { return example_algebra_an(); }

// Two-element meet semilattice, 0 absorbing.
inline AlgebraPtr sl2() {
    return std::make_shared<FiniteAlgebra>(
        "SL2", 2, std::vector<OperationTable>{{"m", 2, {0, 0, 0, 1}}});
}

// Two-element affine algebra: x-y+z over Z2.
inline AlgebraPtr aff2() {
    return std::make_shared<FiniteAlgebra>(
        "AFF2", 2, std::vector<OperationTable>{{"t", 3, {0, 1, 1, 0, 1, 0, 0, 1}}});
}

// Two-element set with no operations.
inline AlgebraPtr bare2() {
    return std::make_shared<FiniteAlgebra>("BARE2", 2, std::vector<OperationTable>{});
}

} // namespace uacsp::fixtures

#endif
