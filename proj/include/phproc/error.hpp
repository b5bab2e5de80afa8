#pragma once

#include <stdexcept>
#include <string>

namespace phproc {

// Invalid parameters, values outside a support, infeasible statistics.
class DomainError : public std::domain_error {
public:
    using std::domain_error::domain_error;
};

// Summary statistics that make a moment equation singular (P in {0, 1/2, 1}).
class DegenerateStatistics : public DomainError {
public:
    using DomainError::DomainError;
};

// Statistics outside the range a model can produce (e.g. Pareto mean <= minimum).
class InfeasibleStatistics : public DomainError {
public:
    using DomainError::DomainError;
};

// Wrong arity, malformed input files, missing flags.
class UsageError : public std::invalid_argument {
public:
    using std::invalid_argument::invalid_argument;
};

// Unreadable or malformed data files.
class InputError : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

}  // namespace phproc
