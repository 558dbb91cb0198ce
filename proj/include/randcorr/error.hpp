// Copyright 2026 The randcorr Authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//     http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#pragma once

#include <stdexcept>
#include <string>
#include <string_view>

namespace randcorr {

enum class ErrorKind {
  Domain,
  Dimension,
  NonPhysicalParams,
  InvalidState,
  InsufficientStrength,
  ExpansionTooLarge,
  CostTooLarge,
  ClosureSizeMismatch,
  NonUnitaryResult,
  DedupSizeMismatch,
  NotPositiveDefinite,
  VerificationFailure,
  Parse,
  SlopeSignViolation,
  NotDetected,
  Unsupported,
};

std::string_view to_string(ErrorKind kind);

/// Every failure raised by the library carries a machine-readable kind so
/// front ends can map it to exit codes without parsing messages.
class Error : public std::runtime_error {
 public:
  Error(ErrorKind kind, const std::string& message);

  ErrorKind kind() const noexcept { return kind_; }

 private:
  ErrorKind kind_;
};

[[noreturn]] void raise(ErrorKind kind, const std::string& message);

}  // namespace randcorr
