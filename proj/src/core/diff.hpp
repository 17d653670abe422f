#ifndef UACSP_DIFF_HPP
#define UACSP_DIFF_HPP

#include <cstdint>
#include <string>

#include "instance.hpp"

namespace uacsp {

struct DiffCase {
    std::uint64_t case_seed = 0;
    std::string family;
    std::string summary;      // algebra size, vars, constraints
    bool solver_sat = false;
    bool oracle_sat = false;
    bool agree = false;
    double solver_ms = 0.0;
    double oracle_ms = 0.0;
};

struct DiffReport {
    std::uint64_t seed = 0;
    std::vector<DiffCase> cases;
    bool all_agree = true;
    int disagreeing_case = -1;
    std::string reproducer;  // workspace text of the first disagreeing case

    std::string to_string() const;
};

/** Runs `cases` seeded solver-vs-oracle comparisons over the bundled example
 *  algebras and random idempotent algebras. Every case is reproducible from
 *  (seed, case index). */
DiffReport run_diff(std::uint64_t seed, int cases, const Config& cfg = default_config());

} // namespace uacsp

#endif
