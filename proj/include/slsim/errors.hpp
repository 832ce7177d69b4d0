#pragma once

#include <stdexcept>
#include <string>

namespace slsim {

// Base class for all library errors.
struct Error : std::runtime_error {
    using std::runtime_error::runtime_error;
};

// A documented precondition was violated by the caller.
struct ContractError : Error {
    using Error::Error;
};

// Graph/weight structure is unusable (empty neighbourhood, asymmetric
// adjacency, missing self-loop, bad column sums).
struct InvalidTopologyError : Error {
    using Error::Error;
};

// Observation model is unusable: mismatched supports, infinite KL
// divergence, or an uninformative model where an informative one is needed.
struct ModelError : Error {
    using Error::Error;
};

// An iterative numeric routine failed to converge.
struct NumericError : Error {
    NumericError(const std::string& what, double residual)
        : Error(what), residual(residual) {}
    double residual;
};

// The requested synthesis has no solution at the given epsilon floor.
struct FeasibilityError : Error {
    using Error::Error;
};

// Random generation exhausted its retry budget.
struct GenerationError : Error {
    using Error::Error;
};

// Configuration document is malformed or violates a model assumption.
// `field` carries the offending field path when known.
struct ConfigError : Error {
    explicit ConfigError(const std::string& what, std::string field = {})
        : Error(field.empty() ? what : field + ": " + what),
          field(std::move(field)) {}
    std::string field;
};

struct IoError : Error {
    using Error::Error;
};

}  // namespace slsim
