#pragma once

#include <cstddef>
#include <stdexcept>
#include <string>
#include <string_view>

namespace tempspan {

enum class ErrorCode {
  DuplicateTimeEdge,
  EndpointOutOfRange,
  SelfLoop,
  InvalidLabel,
  InvalidArgument,
  NotSimple,
  ParseError,
  RootNotSpanning,
  RequirementNotSatisfied,
  InstanceTooLarge,
  NotHappy,
  NotTemporallyConnected,
  AssignmentDoesNotSatisfy,
  OddEdgeCount,
  NotASelectionEdge,
  InvariantViolated,
  NotAClique,
};

std::string_view to_string(ErrorCode code);

class Error : public std::runtime_error {
 public:
  Error(ErrorCode code, const std::string& what)
      : std::runtime_error(std::string(to_string(code)) + ": " + what), code_(code) {}

  ErrorCode code() const noexcept { return code_; }

 private:
  ErrorCode code_;
};

/// Raised by the text readers; `line()` is 1-based, 0 when the error is not tied to a line.
class ParseError : public Error {
 public:
  ParseError(std::size_t line, const std::string& what)
      : Error(ErrorCode::ParseError, "line " + std::to_string(line) + ": " + what), line_(line) {}

  std::size_t line() const noexcept { return line_; }

 private:
  std::size_t line_;
};

}  // namespace tempspan
