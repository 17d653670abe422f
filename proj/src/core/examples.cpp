#include "examples.hpp"

namespace uacsp {

AlgebraPtr example_algebra_am() {
    return std::make_shared<FiniteAlgebra>(
        "A_M", 3,
        std::vector<OperationTable>{
            {"r", 2, {0, 0, 0, 1, 1, 1, 0, 0, 2}},
            {"t", 3, {0, 1, 0, 1, 0, 0, 0, 1, 0, 1, 0, 1, 0, 1, 0, 1, 0, 1, 0, 1, 0, 1, 0, 1, 0, 1, 2}},
        });
}

AlgebraPtr example_algebra_an() {
    return std::make_shared<FiniteAlgebra>(
        "A_N", 3,
        std::vector<OperationTable>{
            {"r", 2, {0, 0, 0, 1, 1, 1, 0, 1, 2}},
            {"t", 3, {0, 1, 0, 1, 0, 0, 0, 1, 0, 1, 0, 1, 0, 1, 0, 1, 0, 1, 0, 1, 0, 1, 0, 1, 0, 1, 2}},
        });
}

} // namespace uacsp
