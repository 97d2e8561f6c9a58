#pragma once

#include <cstddef>
#include <stdexcept>
#include <string>

namespace expmod {

/// Raised when an exhaustive method would have to enumerate more than
/// 2^cap subsets.
class CapacityError : public std::runtime_error {
public:
    CapacityError(const std::string& what, std::size_t size, std::size_t cap)
        : std::runtime_error(what + ": size " + std::to_string(size) +
                             " exceeds enumeration cap " + std::to_string(cap)),
          size_(size), cap_(cap) {}

    std::size_t size() const noexcept { return size_; }
    std::size_t cap() const noexcept { return cap_; }

private:
    std::size_t size_;
    std::size_t cap_;
};

/// Modularity of a world without edges is undefined.
class DegenerateInputError : public std::domain_error {
public:
    using std::domain_error::domain_error;
};

/// The DFT route produced residuals that cannot be floating-point dust.
class NumericalInstabilityError : public std::runtime_error {
public:
    NumericalInstabilityError(const std::string& what, std::size_t index, double residual)
        : std::runtime_error(what + " (entry " + std::to_string(index) +
                             ", residual " + std::to_string(residual) + ")"),
          index_(index), residual_(residual) {}

    std::size_t index() const noexcept { return index_; }
    double residual() const noexcept { return residual_; }

private:
    std::size_t index_;
    double residual_;
};

/// Malformed network or community file; carries the 1-based line number
/// (0 when the problem is not tied to one line).
class ParseError : public std::runtime_error {
public:
    ParseError(const std::string& what, std::size_t line)
        : std::runtime_error(line ? "line " + std::to_string(line) + ": " + what : what),
          line_(line) {}

    std::size_t line() const noexcept { return line_; }

private:
    std::size_t line_;
};

}  // namespace expmod
