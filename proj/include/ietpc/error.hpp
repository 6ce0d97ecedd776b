#pragma once

#include <stdexcept>
#include <string>
#include <string_view>

namespace ietpc {

enum class ErrorKind {
  DivisionByZero,
  IncompatibleRadicands,
  ParseError,
  KTooLarge,
  PrefixTooShort,
  LengthMismatch,
  BadAlphabet,
  BadPartition,
  NotBijective,
  OutOfDomain,
  OrbitHitsBreakpoint,
  NotInjective,
  NotContracting,
  ImageEscapes,
  DenominatorBlowup,
  PeriodicOrbit,
  InsufficientVisits,
  NotTransitiveEvidence,
  InterceptMismatch,
  InvalidArgument,
};

std::string_view to_string(ErrorKind kind);

// Every library failure is reported through this type; `kind` is stable and
// machine readable, `what()` carries the human detail.
class Error : public std::runtime_error {
 public:
  Error(ErrorKind kind, const std::string& detail)
      : std::runtime_error(detail), kind_(kind) {}

  ErrorKind kind() const noexcept { return kind_; }

 private:
  ErrorKind kind_;
};

// Raised for orbit-based operations; `step` is the first offending iterate.
class OrbitError : public Error {
 public:
  OrbitError(ErrorKind kind, std::size_t step, const std::string& detail)
      : Error(kind, detail), step_(step) {}

  std::size_t step() const noexcept { return step_; }

 private:
  std::size_t step_;
};

}  // namespace ietpc
