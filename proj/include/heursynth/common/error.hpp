#pragma once

#include <stdexcept>
#include <string>
#include <string_view>

namespace heursynth {

enum class ErrorKind {
  MalformedSchema,
  InvariantViolation,
  ConflictingReference,
  EmptyList,
  TooLarge,
  DegenerateWindows,
  ZeroCapacityDay,
  BranchMismatch,
  DuplicateId,
  HasValidRecord,
  EmptyMemory,
  NoValidRecord,
  EmptySearch,
  DuplicateBranch,
  ShimUnavailable,
  DatasetEmpty,
  PolicyUnsupported,
  ParseFailure,
  ClientError,
  ScriptExhausted,
  TemplateUnbound,
  MissingReference,
  InvalidConfig,
  CorruptArtifact,
  Io,
  Usage,
};

std::string_view to_string(ErrorKind kind);

class Error : public std::runtime_error {
 public:
  Error(ErrorKind kind, const std::string& message)
      : std::runtime_error(std::string(to_string(kind)) + ": " + message), kind_(kind) {}

  ErrorKind kind() const noexcept { return kind_; }

 private:
  ErrorKind kind_;
};

}  // namespace heursynth
