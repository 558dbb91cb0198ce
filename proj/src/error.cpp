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

#include "randcorr/error.hpp"

namespace randcorr {

std::string_view to_string(ErrorKind kind) {
  switch (kind) {
    case ErrorKind::Domain: return "DomainError";
    case ErrorKind::Dimension: return "DimensionError";
    case ErrorKind::NonPhysicalParams: return "NonPhysicalParams";
    case ErrorKind::InvalidState: return "InvalidState";
    case ErrorKind::InsufficientStrength: return "InsufficientStrength";
    case ErrorKind::ExpansionTooLarge: return "ExpansionTooLarge";
    case ErrorKind::CostTooLarge: return "CostTooLarge";
    case ErrorKind::ClosureSizeMismatch: return "ClosureSizeMismatch";
    case ErrorKind::NonUnitaryResult: return "NonUnitaryResult";
    case ErrorKind::DedupSizeMismatch: return "DedupSizeMismatch";
    case ErrorKind::NotPositiveDefinite: return "NotPositiveDefinite";
    case ErrorKind::VerificationFailure: return "VerificationFailure";
    case ErrorKind::Parse: return "ParseError";
    case ErrorKind::SlopeSignViolation: return "SlopeSignViolation";
    case ErrorKind::NotDetected: return "NotDetected";
    case ErrorKind::Unsupported: return "Unsupported";
  }
  return "Error";
}

Error::Error(ErrorKind kind, const std::string& message)
    : std::runtime_error(std::string(to_string(kind)) + ": " + message), kind_(kind) {}

void raise(ErrorKind kind, const std::string& message) { throw Error(kind, message); }

}  // namespace randcorr
