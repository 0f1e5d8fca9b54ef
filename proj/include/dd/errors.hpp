#pragma once

#include <stdexcept>
#include <string>

namespace dd {

// Invalid inputs or constraint violations (CLI exit code 2).
struct validation_error : std::runtime_error {
    explicit validation_error(const std::string& msg) : std::runtime_error(msg) {}
};

// Non-convergence, degenerate systems, quadrature failure (CLI exit code 3).
struct numerical_error : std::runtime_error {
    explicit numerical_error(const std::string& msg) : std::runtime_error(msg) {}
};

// File and format problems (CLI exit code 4).
struct io_error : std::runtime_error {
    explicit io_error(const std::string& msg) : std::runtime_error(msg) {}
};

}  // namespace dd
