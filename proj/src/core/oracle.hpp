#ifndef UACSP_ORACLE_HPP
#define UACSP_ORACLE_HPP

#include "instance.hpp"

namespace uacsp {

struct OracleOutcome {
    bool sat = false;
    Assignment assignment;  // first solution in lexicographic order, when sat
};

/** Exhaustive backtracking over the raw domains with plain membership checks.
 *  Deliberately shares no algebraic machinery with the solver. Throws
 *  resource_error when more than cfg.oracle_budget assignments are visited. */
OracleOutcome brute_force_solve(const Instance& p, const Config& cfg = default_config());

/** All solutions in lexicographic order (same search, no early exit). */
std::vector<Assignment> brute_force_all_solutions(const Instance& p,
                                                  const Config& cfg = default_config());

} // namespace uacsp

#endif
