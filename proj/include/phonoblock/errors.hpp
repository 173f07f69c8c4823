#pragma once

#include <stdexcept>
#include <string>

namespace phonoblock {

// Codes carried in sweep rows and mapped to CLI exit status.
enum class ErrorCode {
  kOk = 0,
  kDomain,
  kDimensionMismatch,
  kNonHermitian,
  kNonUniqueSteadyState,
  kResidualNotMet,
  kIntegratorFailure,
  kUndefinedCorrelation,
  kComplexCorrelation,
  kSingularSystem,
  kConfig,
};

const char* error_code_name(ErrorCode code);

class Error : public std::runtime_error {
 public:
  Error(ErrorCode code, const std::string& what)
      : std::runtime_error(what), code_(code) {}

  ErrorCode code() const noexcept { return code_; }

 private:
  ErrorCode code_;
};

class DomainError : public Error {
 public:
  explicit DomainError(const std::string& what)
      : Error(ErrorCode::kDomain, what) {}
};

class DimensionError : public Error {
 public:
  explicit DimensionError(const std::string& what)
      : Error(ErrorCode::kDimensionMismatch, what) {}
};

class NonUniqueSteadyStateError : public Error {
 public:
  explicit NonUniqueSteadyStateError(const std::string& what)
      : Error(ErrorCode::kNonUniqueSteadyState, what) {}
};

class UndefinedCorrelationError : public Error {
 public:
  explicit UndefinedCorrelationError(const std::string& what)
      : Error(ErrorCode::kUndefinedCorrelation, what) {}
};

class ConfigError : public Error {
 public:
  explicit ConfigError(const std::string& what)
      : Error(ErrorCode::kConfig, what) {}
};

}  // namespace phonoblock
