#ifndef UACSP_CLONE_HPP
#define UACSP_CLONE_HPP

#include <functional>
#include <optional>
#include <vector>

#include "algebra.hpp"
#include "config.hpp"

namespace uacsp {

struct FunctionTable {
    int arity = 1;
    std::vector<Element> table;
};

/** A generated fragment of the term or polynomial clone at one arity.
 *  Tables are deduplicated and listed in discovery order (deterministic
 *  worklist from the generators), which downstream code uses as the
 *  canonical enumeration order. */
struct CloneFragment {
    int arity = 1;
    std::vector<std::vector<Element>> tables;
    bool complete = true;
};

/** Closure of the k projections under composition with basic ops. */
const CloneFragment& term_ops(const FiniteAlgebra& a, int k, const Config& cfg = default_config());

/** Closure of identity + constants: all unary polynomials. */
const CloneFragment& unary_polynomials(const FiniteAlgebra& a, const Config& cfg = default_config());

/** Closure of both projections + constants: all binary polynomials.
 *  Throws resource_error when capped. */
const CloneFragment& binary_polynomials(const FiniteAlgebra& a, const Config& cfg = default_config());

struct SemilatticeEdge {
    Element a = 0;                 // non-absorbing endpoint
    Element b = 0;                 // absorbing endpoint: f(a,b)=f(b,a)=f(b,b)=b
    std::vector<Element> witness;  // binary table realizing the equations
};

/** All ordered semilattice edges (a,b), sorted by (a,b). Requires the full
 *  binary term fragment; throws resource_error if it was capped. */
const std::vector<SemilatticeEdge>& semilattice_edges(const FiniteAlgebra& a,
                                                      const Config& cfg = default_config());

bool is_semilattice_free(const FiniteAlgebra& a, const Config& cfg = default_config());

/** Whether the binary table m satisfies the multiplication-term conditions on a:
 *  a semilattice operation on every semilattice edge, and m(a,b)=a or
 *  (a, m(a,b)) is a semilattice edge, for all a,b. */
bool multiplication_conditions_hold(const FiniteAlgebra& a, const std::vector<Element>& m,
                                    const Config& cfg = default_config());

/** First binary term table in canonical order satisfying the conditions above.
 *  Throws internal_error("promise violated") if the complete fragment has none. */
const std::vector<Element>& multiplication_op(const FiniteAlgebra& a,
                                              const Config& cfg = default_config());

/** One binary term of the shared signature whose induced table satisfies the
 *  multiplication conditions in every listed algebra simultaneously; returns
 *  the per-algebra tables, aligned with the input list. */
std::vector<std::vector<Element>> multiplication_term_uniform(const std::vector<AlgebraPtr>& algebras,
                                                              const Config& cfg = default_config());

/** Like multiplication_term_uniform, but reports a provably missing common
 *  term as nullopt instead of an error. Caps still raise resource_error. */
std::optional<std::vector<std::vector<Element>>> try_multiplication_term_uniform(
    const std::vector<AlgebraPtr>& algebras, const Config& cfg = default_config());

/** Streaming clone search: closes the seed tables under cellwise application
 *  of the basic ops (cell c evaluated in *cell_alg[c]) and returns the first
 *  table satisfying pred, in canonical discovery order. On nullopt,
 *  *exhausted says whether the full closure was searched (true) or a cap
 *  stopped it (false). */
std::optional<std::vector<Element>> closure_find(const std::vector<const FiniteAlgebra*>& cell_alg,
                                                 std::vector<std::vector<Element>> seeds,
                                                 std::size_t table_cap, std::size_t work_cap,
                                                 std::function<bool(const std::vector<Element>&)> pred,
                                                 bool* exhausted);

enum class WnuResult { found, not_found, unknown };

/** Best-effort search for a weak near-unanimity term of arity k. */
WnuResult wnu_check(const FiniteAlgebra& a, int k, const Config& cfg = default_config());

} // namespace uacsp

#endif
