#pragma once

#include <stdexcept>
#include <string>

namespace curvjc {

/// Argument outside the model's domain (negative curvature, negative index, ...).
class DomainError : public std::invalid_argument {
public:
    using std::invalid_argument::invalid_argument;
};

/// A numerical invariant failed to hold. `invariant()` names it so callers
/// (the CLI in particular) can report which one.
class InvariantError : public std::runtime_error {
public:
    InvariantError(std::string invariant, const std::string& detail)
        : std::runtime_error(invariant + ": " + detail), invariant_(std::move(invariant)) {}

    const std::string& invariant() const noexcept { return invariant_; }

private:
    std::string invariant_;
};

/// A statistic that is mathematically undefined for the given state.
class UndefinedStatistic : public std::domain_error {
public:
    using std::domain_error::domain_error;
};

}  // namespace curvjc
