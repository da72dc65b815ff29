#pragma once

#include <stdexcept>
#include <string>

namespace adseq {

// Invalid model/config parameters or malformed JSON.
struct ConfigError : std::runtime_error {
    explicit ConfigError(const std::string& what) : std::runtime_error(what) {}
};

// Argument outside the mathematical domain of an operation.
struct DomainError : std::domain_error {
    explicit DomainError(const std::string& what) : std::domain_error(what) {}
};

// Adaptive integration failed to reach the requested accuracy.
struct QuadratureError : std::runtime_error {
    explicit QuadratureError(const std::string& what) : std::runtime_error(what) {}
};

} // namespace adseq
