#include "heursynth/common/error.hpp"

namespace heursynth {

std::string_view to_string(ErrorKind kind) {
  switch (kind) {
    case ErrorKind::MalformedSchema: return "malformed-schema";
    case ErrorKind::InvariantViolation: return "invariant-violation";
    case ErrorKind::ConflictingReference: return "conflicting-reference";
    case ErrorKind::EmptyList: return "empty-list";
    case ErrorKind::TooLarge: return "too-large";
    case ErrorKind::DegenerateWindows: return "degenerate-windows";
    case ErrorKind::ZeroCapacityDay: return "zero-capacity-day";
    case ErrorKind::BranchMismatch: return "branch-mismatch";
    case ErrorKind::DuplicateId: return "duplicate-id";
    case ErrorKind::HasValidRecord: return "has-valid-record";
    case ErrorKind::EmptyMemory: return "empty-memory";
    case ErrorKind::NoValidRecord: return "no-valid-record";
    case ErrorKind::EmptySearch: return "empty-search";
    case ErrorKind::DuplicateBranch: return "duplicate-branch";
    case ErrorKind::ShimUnavailable: return "shim-unavailable";
    case ErrorKind::DatasetEmpty: return "dataset-empty";
    case ErrorKind::PolicyUnsupported: return "policy-unsupported";
    case ErrorKind::ParseFailure: return "parse-failure";
    case ErrorKind::ClientError: return "client-error";
    case ErrorKind::ScriptExhausted: return "script-exhausted";
    case ErrorKind::TemplateUnbound: return "template-unbound";
    case ErrorKind::MissingReference: return "missing-reference";
    case ErrorKind::InvalidConfig: return "invalid-config";
    case ErrorKind::CorruptArtifact: return "corrupt-artifact";
    case ErrorKind::Io: return "io";
    case ErrorKind::Usage: return "usage";
  }
  return "unknown";
}

}  // namespace heursynth
