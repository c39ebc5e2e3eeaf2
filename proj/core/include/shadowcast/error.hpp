// Copyright 2026 The Shadowcast Authors
// SPDX-License-Identifier: Apache-2.0

#pragma once

#include <stdexcept>
#include <string>
#include <string_view>

namespace shadowcast {

enum class ErrorCode {
  kParseError,
  kEmptyMesh,
  kDegenerateMesh,
  kAbovePlaneLight,
  kInvalidSigma,
  kInvalidArgument,
  kEmptyShadow,
  kEmptyContourSet,
  kNoStaticRegion,
  kNoClosedRegions,
  kInvalidFrameCount,
  kSpecMismatch,
  kDivisionDomain,
  kServiceError,
  kFormatError,
  kMaskViolation,
  kConfigError,
  kPortInUse,
  kIoError,
};

std::string_view error_code_name(ErrorCode code);

// Every failure the engine reports is an Error carrying one of the codes above.
class Error : public std::runtime_error {
 public:
  Error(ErrorCode code, const std::string& message)
      : std::runtime_error(std::string(error_code_name(code)) + ": " + message),
        code_(code) {}

  ErrorCode code() const noexcept { return code_; }

 private:
  ErrorCode code_;
};

}  // namespace shadowcast
