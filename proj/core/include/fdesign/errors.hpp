#pragma once

#include <cstdint>
#include <stdexcept>
#include <string>

namespace fdesign {

// Bad input that violates a documented precondition.
using InvalidArgument = std::invalid_argument;

class DivisionByZero : public std::domain_error {
public:
    using std::domain_error::domain_error;
};

class SingularMatrix : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

// A construction would exceed a configured size budget. `required` carries the
// exact size that was asked for (edge count, vertex count, ...).
class ResourceLimit : public std::runtime_error {
public:
    ResourceLimit(const std::string& what, long double required)
        : std::runtime_error(what), required_(required) {}
    long double required() const noexcept { return required_; }

private:
    long double required_;
};

class EmbeddingFailure : public std::runtime_error {
public:
    EmbeddingFailure(const std::string& what, std::size_t piece)
        : std::runtime_error(what), piece_(piece) {}
    std::size_t piece() const noexcept { return piece_; }

private:
    std::size_t piece_;
};

class Unsupported : public std::logic_error {
public:
    using std::logic_error::logic_error;
};

// An internal consistency check failed. Always a bug.
class InternalError : public std::logic_error {
public:
    using std::logic_error::logic_error;
};

}  // namespace fdesign
