#ifndef UDWQFIM_ERRORS_HPP
#define UDWQFIM_ERRORS_HPP

#include <stdexcept>
#include <string>

namespace udwqfim {

// Input outside the mathematical domain of an operation (negative
// temperature, channel strength outside [0,1], ...).
struct DomainError : std::domain_error {
  explicit DomainError(const std::string& what) : std::domain_error(what) {}
};

// Dimension mismatch between an operand and what the operation requires.
struct ShapeError : std::invalid_argument {
  explicit ShapeError(const std::string& what) : std::invalid_argument(what) {}
};

// A structural precondition failed: non-Hermitian input to a Hermitian
// solver, negative eigenvalue of a supposedly PSD operator, Kraus closure
// violation, and the like.
struct ContractError : std::runtime_error {
  explicit ContractError(const std::string& what) : std::runtime_error(what) {}
};

// Invalid sweep/CLI configuration.
struct ConfigError : std::runtime_error {
  explicit ConfigError(const std::string& what) : std::runtime_error(what) {}
};

// Filesystem failure while writing results.
struct IoError : std::runtime_error {
  explicit IoError(const std::string& what) : std::runtime_error(what) {}
};

}  // namespace udwqfim

#endif
