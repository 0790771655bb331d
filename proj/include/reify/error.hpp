#pragma once

#include <stdexcept>
#include <string>
#include <string_view>

namespace reify {

enum class ErrorCode {
  // object model
  kDuplicateName,
  kNotFound,
  kNameCollision,
  kUnknownTypeTarget,
  kNotObjectTyped,
  kTargetDeleted,
  kPhaseFinished,
  kInvalidArgument,
  kDecode,
  kDanglingReference,
  // prompts
  kMissingContext,
  kCatalog,
  // completion providers
  kAuthMissing,
  kRateLimited,
  kTimeout,
  kReplayMiss,
  kProvider,
  // orchestration and sessions
  kPrecondition,
  kSessionNotFound,
  kSessionFinished,
  kBusy,
  kCohortForbidden,
  kEmptyPrompt,
  kUnknownAction,
  // analysis
  kEmptyCorpus,
  kInconsistent,
  kIo,
};

std::string_view to_string(ErrorCode code);

class Error : public std::runtime_error {
 public:
  Error(ErrorCode code, const std::string& message)
      : std::runtime_error(message), code_(code) {}

  ErrorCode code() const noexcept { return code_; }

 private:
  ErrorCode code_;
};

}  // namespace reify
