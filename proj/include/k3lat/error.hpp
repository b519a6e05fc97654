#pragma once

#include <stdexcept>
#include <string>
#include <string_view>

namespace k3lat {

enum class ErrorCode {
  // usage / input errors
  ParseError,
  UnknownCase,
  InvalidArgument,
  // computation-domain errors
  SingularMatrix,
  NotSymmetric,
  InvalidIndex,
  ZeroScale,
  LatticeMismatch,
  Degenerate,
  NotTwoElementary,
  NotIntegral,
  IndefiniteLattice,
  NotARoot,
  NegativePairing,
  OddSquare,
  InadmissibleTriple,
  NotApplicable,
  NotIsotropic,
  ComponentNotPerp,
  FiberSumMismatch,
};

std::string_view to_string(ErrorCode code);

// True for errors caused by malformed input rather than by the mathematics.
constexpr bool is_usage_error(ErrorCode code) {
  return code == ErrorCode::ParseError || code == ErrorCode::UnknownCase ||
         code == ErrorCode::InvalidArgument;
}

class Error : public std::runtime_error {
 public:
  Error(ErrorCode code, const std::string& what)
      : std::runtime_error(std::string(to_string(code)) + ": " + what), code_(code) {}

  ErrorCode code() const noexcept { return code_; }

 private:
  ErrorCode code_;
};

}  // namespace k3lat
