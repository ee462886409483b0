#pragma once

#include <stdexcept>
#include <string>

namespace nilc {

struct NotNilpotentError : std::runtime_error {
  explicit NotNilpotentError(const std::string& m) : std::runtime_error(m) {}
};

struct ClassOneError : std::runtime_error {
  explicit ClassOneError(const std::string& m) : std::runtime_error(m) {}
};

struct CenterMismatchError : std::runtime_error {
  explicit CenterMismatchError(const std::string& m) : std::runtime_error(m) {}
};

struct AlgebraMismatchError : std::logic_error {
  explicit AlgebraMismatchError(const std::string& m) : std::logic_error(m) {}
};

struct OutOfRangeError : std::runtime_error {
  explicit OutOfRangeError(const std::string& m) : std::runtime_error(m) {}
};

struct NotCommutingError : std::runtime_error {
  explicit NotCommutingError(const std::string& m) : std::runtime_error(m) {}
};

struct UnmatchedAlphabetsError : std::runtime_error {
  explicit UnmatchedAlphabetsError(const std::string& m)
      : std::runtime_error(m) {}
};

struct InsufficientDataError : std::runtime_error {
  explicit InsufficientDataError(const std::string& m)
      : std::runtime_error(m) {}
};

struct SchemaError : std::runtime_error {
  explicit SchemaError(const std::string& m) : std::runtime_error(m) {}
};

}  // namespace nilc
