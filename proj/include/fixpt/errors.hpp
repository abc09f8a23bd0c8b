#pragma once

#include <stdexcept>
#include <string>

namespace fixpt {

/// Base class for every error raised by the library.
class Error : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

/// A documented precondition was not met (dimension mismatch, negative input, ...).
class ContractViolation : public Error {
public:
    using Error::Error;
};

/// A point was handed to a mapping outside of the mapping's domain.
class DomainViolation : public Error {
public:
    using Error::Error;
};

/// Invalid parameter for a constructor or closed-form helper.
class ParameterError : public Error {
public:
    using Error::Error;
};

/// Constraint set is empty, e.g. a modulus query with epsilon > 2.
class InfeasibleConstraint : public Error {
public:
    using Error::Error;
};

/// A schedule violates a required bound (k_n < 1, ...).
class ScheduleViolation : public Error {
public:
    using Error::Error;
};

/// A run configuration or scenario cannot be executed as given.
class ConfigError : public Error {
public:
    using Error::Error;
};

/// A checker was applied outside of its scope (wrong scheme, uncertified witness, ...).
class ScopeError : public Error {
public:
    using Error::Error;
};

}  // namespace fixpt
