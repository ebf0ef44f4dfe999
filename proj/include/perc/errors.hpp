#pragma once
#include <stdexcept>
#include <string>

namespace perc {

// Error taxonomy maps onto CLI exit codes: input -> 1, invariant -> 2, starvation -> 3.
struct InputError : std::invalid_argument {
    explicit InputError(const std::string& msg) : std::invalid_argument(msg) {}
};

struct InvariantError : std::logic_error {
    explicit InvariantError(const std::string& msg) : std::logic_error(msg) {}
};

// Rejection sampling ran out of budget before reaching min_accepted.
struct StarvationError : std::runtime_error {
    explicit StarvationError(const std::string& msg) : std::runtime_error(msg) {}
};

}  // namespace perc
