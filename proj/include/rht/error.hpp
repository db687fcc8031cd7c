#pragma once

#include <stdexcept>
#include <string>

namespace rht {

enum class ErrorKind {
  InvalidInput,
  NotSubspace,
  NotComplex,
  NotChainMap,
  NotDoubleComplex,
  TruncationTooSmall,
  IncompatibleFiltration,
  NotFiltered,
  NotAugmented,
  NotConnected,
  NotReduced,
  EnumerationBoundExceeded,
  InvalidAlgebra,
};

const char* error_kind_name(ErrorKind kind);

class Error : public std::runtime_error {
 public:
  Error(ErrorKind kind, const std::string& what)
      : std::runtime_error(std::string(error_kind_name(kind)) + ": " + what), kind_(kind), detail_(what) {}

  ErrorKind kind() const noexcept { return kind_; }
  /// The message without the kind prefix.
  const std::string& detail() const noexcept { return detail_; }

 private:
  ErrorKind kind_;
  std::string detail_;
};

}  // namespace rht
