#pragma once

#include <cstddef>
#include <stdexcept>
#include <string>

namespace ffml {

/// Argument outside the mathematical domain of an operation.
class DomainError : public std::domain_error {
public:
    using std::domain_error::domain_error;
};

/// A simulated state became non-finite.
class OverflowError : public std::overflow_error {
public:
    OverflowError(const std::string& what, std::size_t node)
        : std::overflow_error(what), node_(node) {}

    /// Index of the first grid node holding a non-finite value.
    [[nodiscard]] std::size_t node() const noexcept { return node_; }

private:
    std::size_t node_;
};

/// Trajectory grid does not contain the nodes a comparison needs.
class GridMismatchError : public std::invalid_argument {
public:
    using std::invalid_argument::invalid_argument;
};

/// Successive refinements produced differences too small to form a ratio.
class DegenerateError : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

} // namespace ffml
