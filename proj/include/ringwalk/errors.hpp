#pragma once

#include <stdexcept>
#include <string>

namespace ringwalk {

// Thrown when an operation would materialize a state space (or matrix)
// larger than the configured cap.
class ResourceCapError : public std::runtime_error {
public:
    explicit ResourceCapError(const std::string& what) : std::runtime_error(what) {}
};

// Thrown when an iterative solver fails to converge within its iteration
// budget.  With a strictly positive row-stochastic matrix this signals a
// malformed input rather than a tight tolerance.
class ConvergenceError : public std::runtime_error {
public:
    explicit ConvergenceError(const std::string& what) : std::runtime_error(what) {}
};

} // namespace ringwalk
