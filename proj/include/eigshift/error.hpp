#pragma once

#include <cstddef>
#include <stdexcept>
#include <string>

namespace eigshift {

// Every failure the library raises carries one of these kinds. The CLI maps
// them onto process exit codes.
enum class ErrorKind {
  invalid_size,
  dimension_mismatch,
  singular,
  invalid_parameter,
  invalid_chain,
  normalization,
  precondition,
  extraction,
  classification_bug,
  missing_eigenvalue,
  unsupported_backend,
  parse,
  internal,
};

inline const char* to_string(ErrorKind kind) {
  switch (kind) {
    case ErrorKind::invalid_size: return "invalid-size";
    case ErrorKind::dimension_mismatch: return "dimension-mismatch";
    case ErrorKind::singular: return "singular";
    case ErrorKind::invalid_parameter: return "invalid-parameter";
    case ErrorKind::invalid_chain: return "invalid-chain";
    case ErrorKind::normalization: return "normalization";
    case ErrorKind::precondition: return "precondition";
    case ErrorKind::extraction: return "extraction";
    case ErrorKind::classification_bug: return "classification-bug";
    case ErrorKind::missing_eigenvalue: return "missing-eigenvalue";
    case ErrorKind::unsupported_backend: return "unsupported-backend";
    case ErrorKind::parse: return "parse";
    case ErrorKind::internal: return "internal";
  }
  return "unknown";
}

class Error : public std::runtime_error {
 public:
  Error(ErrorKind kind, const std::string& what)
      : std::runtime_error(std::string(to_string(kind)) + ": " + what), kind_(kind) {}

  ErrorKind kind() const noexcept { return kind_; }

 private:
  ErrorKind kind_;
};

/// Raised by inverse/solve; remembers the rank that elimination found.
class SingularError : public Error {
 public:
  SingularError(std::size_t rank, std::size_t dim)
      : Error(ErrorKind::singular, "matrix is singular (rank " + std::to_string(rank) +
                                       " of " + std::to_string(dim) + ")"),
        rank_(rank) {}

  std::size_t rank() const noexcept { return rank_; }

 private:
  std::size_t rank_;
};

}  // namespace eigshift
