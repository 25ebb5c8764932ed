#pragma once

#include <stdexcept>
#include <string>

namespace chainbf {

/// Argument outside the mathematical domain of an operation.
class DomainError : public std::domain_error {
public:
    using std::domain_error::domain_error;
};

/// Exact computation refused because a size guard was exceeded.
class FeasibilityError : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

}  // namespace chainbf
