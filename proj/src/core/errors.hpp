#ifndef UACSP_ERRORS_HPP
#define UACSP_ERRORS_HPP

#include <stdexcept>
#include <string>

namespace uacsp {

/** Malformed or rejected input (bad tables, non-idempotent ops, broken refs). */
class input_error : public std::runtime_error {
public:
    explicit input_error(const std::string& msg) : std::runtime_error(msg) {}
};

/** A configured cap or budget was exceeded. Never means UNSAT. */
class resource_error : public std::runtime_error {
public:
    explicit resource_error(const std::string& msg) : std::runtime_error(msg) {}
};

/** A contract the algorithm relies on failed to hold at runtime. */
class internal_error : public std::logic_error {
public:
    explicit internal_error(const std::string& msg) : std::logic_error(msg) {}
};

} // namespace uacsp

#endif
