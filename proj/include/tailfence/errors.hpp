#pragma once

#include <stdexcept>
#include <string>

namespace tailfence {

// Argument outside the mathematical domain of an operation (p outside (0,1), ...).
class DomainError : public std::domain_error {
public:
    using std::domain_error::domain_error;
};

// A distribution was constructed with parameters that do not describe a catalog member.
class InvalidSpec : public std::invalid_argument {
public:
    using std::invalid_argument::invalid_argument;
};

// Malformed or empty input data.
class DataError : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

// Estimator standing assumptions not met by the sample.
class PreconditionViolation : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

// Internal numerical result disagrees with its own invariants.
class ConsistencyError : public std::logic_error {
public:
    using std::logic_error::logic_error;
};

} // namespace tailfence
