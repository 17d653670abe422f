#ifndef UACSP_EXAMPLES_HPP
#define UACSP_EXAMPLES_HPP

#include "algebra.hpp"

namespace uacsp {

// The bundled three-element example algebras. A_M has semilattice edges
// toward 0 and 1 from element 2; A_N differs in the single entry r(2,1)=1.
AlgebraPtr example_algebra_am();
AlgebraPtr example_algebra_an();

} // namespace uacsp

#endif
