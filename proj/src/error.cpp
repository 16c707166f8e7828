// Copyright 2026 The posmap Authors.
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

#include "posmap/error.hpp"

namespace posmap {

std::string_view to_string(ErrorCode code) {
  switch (code) {
    case ErrorCode::NonSquare: return "NonSquare";
    case ErrorCode::NotHermitian: return "NotHermitian";
    case ErrorCode::NumericalFailure: return "NumericalFailure";
    case ErrorCode::DominanceViolated: return "DominanceViolated";
    case ErrorCode::NotCommuting: return "NotCommuting";
    case ErrorCode::AlgebraMismatch: return "AlgebraMismatch";
    case ErrorCode::CountMismatch: return "CountMismatch";
    case ErrorCode::DimensionMismatch: return "DimensionMismatch";
    case ErrorCode::MultiBlockUnsupported: return "MultiBlockUnsupported";
    case ErrorCode::BadRange: return "BadRange";
    case ErrorCode::NotPositiveContraction: return "NotPositiveContraction";
    case ErrorCode::NotHomomorphism: return "NotHomomorphism";
    case ErrorCode::NotUnitary: return "NotUnitary";
    case ErrorCode::PreconditionFailed: return "PreconditionFailed";
    case ErrorCode::StructurallyInvalid: return "StructurallyInvalid";
    case ErrorCode::BadWeights: return "BadWeights";
    case ErrorCode::IoError: return "IoError";
    case ErrorCode::ParseError: return "ParseError";
    case ErrorCode::SchemaVersionMismatch: return "SchemaVersionMismatch";
  }
  return "Unknown";
}

}  // namespace posmap
