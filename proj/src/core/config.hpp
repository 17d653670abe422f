#ifndef UACSP_CONFIG_HPP
#define UACSP_CONFIG_HPP

#include <cstddef>

namespace uacsp {

/** Resource caps. Exceeding any of them raises resource_error (or returns a
 *  partial fragment where the operation contract says so) — never UNSAT. */
struct Config {
    std::size_t fragment_cap = 100000;        // tables per clone fragment
    std::size_t fragment_work = 200000000;    // op applications per closure
    std::size_t power_cap = 1000000;          // elements of a materialized power
    std::size_t sg_power_cap = 2000000;       // tuples in a lazy power closure
    std::size_t oracle_budget = 10000000;     // assignments tried by the oracle
    std::size_t wnu_cap = 100000;             // tables in the wnu search
    int max_algebra_size = 4;                 // universe size accepted on load
    int blockmin_depth_cap = 32;              // recursion guard
    int solve_depth_cap = 64;                 // recursion guard
};

inline const Config& default_config() {
    static const Config cfg{};
    return cfg;
}

} // namespace uacsp

#endif
