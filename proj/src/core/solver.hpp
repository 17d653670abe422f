#ifndef UACSP_SOLVER_HPP
#define UACSP_SOLVER_HPP

#include "blockmin.hpp"
#include "instance.hpp"

namespace uacsp {

struct SolveOutcome {
    bool sat = false;
    Assignment assignment;            // solution on the input instance, when sat
    std::vector<std::string> trace;   // reduction steps, for audit
};

/** Base-case solver for all-semilattice-free instances. Pluggable; the
 *  default is backtracking interleaved with (2,3)-propagation (a
 *  non-polynomial stand-in for the few-subpowers algorithm). */
using BaseSolver = std::function<SolveOutcome(const Instance&, const Config&)>;

SolveOutcome base_solve_semilattice_free(const Instance& p, const Config& cfg = default_config());

struct SolverOptions {
    Config cfg;
    BaseSolver base;          // empty: use base_solve_semilattice_free
    bool collect_trace = false;
};

/** Decides the instance and extracts a witness when satisfiable. */
SolveOutcome solve(const Instance& p, const SolverOptions& opts = {});

// pipeline pieces, exposed for tests and the analysis tooling

struct Stabilized {
    Instance instance;
    Lift lift;
};

/** (2,3)-minimality and subdirect-irreducibility splitting to a fixed point. */
Stabilized stabilize(const Instance& p, const Config& cfg = default_config());

struct EdgeSolution {
    int var = 0;                // a MAX variable
    Element edge_from = 0;      // semilattice edge (a,b) of its domain, b absorbing
    Element edge_to = 0;
    Element quotient_value = 0; // image of b in the mu*-quotient domain
    Assignment phi;             // solution of P/mu* with phi(var) = quotient_value
};

struct MarotiResult {
    Instance instance;  // P-dagger
    Lift lift;
    int iterations = 0;  // idempotent power of the per-variable maps
};

/** One Maroti multiplication step P·phi: every constraint relation is
 *  multiplied coordinatewise with a witness tuple of the quotient solution
 *  phi; the choice of witness is asserted immaterial. */
Instance maroti_step(const Instance& p, const std::vector<Partition>& mu_star, const Assignment& phi,
                     const std::vector<std::vector<Element>>& mult);

} // namespace uacsp

#endif
