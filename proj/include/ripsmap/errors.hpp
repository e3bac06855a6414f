#pragma once

#include <cstddef>
#include <stdexcept>
#include <string>

namespace ripsmap {

// Error taxonomy; the CLI maps each class to a distinct exit code.
struct Error : std::runtime_error {
    using std::runtime_error::runtime_error;
};

// Bad parameters or malformed input values.
struct InvalidArgument : Error {
    using Error::Error;
};

// Filesystem and parsing failures.
struct IoError : Error {
    using Error::Error;
};

// Simplex enumeration exceeded the configured cap.
struct BudgetExceeded : Error {
    BudgetExceeded(const std::string& msg, std::size_t count)
        : Error(msg), count_reached(count) {}
    std::size_t count_reached;
};

// Algorithm-level failures (empty cluster, corrupt filtration, ...).
struct AlgorithmError : Error {
    using Error::Error;
};

}  // namespace ripsmap
