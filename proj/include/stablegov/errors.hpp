#pragma once

#include <stdexcept>
#include <string>

namespace stablegov {

/// An argument violates a documented precondition or type invariant.
class DomainError : public std::domain_error {
public:
    using std::domain_error::domain_error;
};

/// The model has no participating equilibrium for the given primitives.
class InfeasibleError : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

/// A numerical routine failed to converge or lost its bracket.
class NumericalError : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

/// Malformed or incomplete run configuration.
class ConfigError : public std::invalid_argument {
public:
    using std::invalid_argument::invalid_argument;
};

}  // namespace stablegov
