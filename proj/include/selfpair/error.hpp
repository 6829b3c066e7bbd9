#pragma once

#include <stdexcept>
#include <string>
#include <string_view>

namespace selfpair {

enum class ErrorCode {
  InvalidArgument,
  DimensionMismatch,
  EmptyImage,
  InfeasibleCrop,
  NoInstances,
  PlanOutOfBounds,
  SourceUnusable,
  MissingMask,
  UndecodableFile,
  IoFailure,
  LabelCheckFailed,
};

std::string_view to_string(ErrorCode code) noexcept;

class Error : public std::runtime_error {
 public:
  Error(ErrorCode code, const std::string& message)
      : std::runtime_error(std::string(to_string(code)) + ": " + message), code_(code) {}

  ErrorCode code() const noexcept { return code_; }

 private:
  ErrorCode code_;
};

}  // namespace selfpair
