// Copyright 2026 The levpriv Authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//     https://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#include "levpriv/status.h"

#include <array>
#include <string>

#include "absl/strings/cord.h"
#include "str_util.h"

namespace levpriv {
namespace {

constexpr char kPayloadUrl[] = "type.levpriv/ErrorKind";

constexpr std::array<std::string_view, 22> kNames = {
    "AlphabetMismatch",
    "LengthMismatch",
    "NonPositiveAlpha",
    "ZeroK",
    "EmptyWord",
    "InvalidAlphabet",
    "UnknownSymbol",
    "DistanceOutOfRange",
    "EmptyAutomaton",
    "CountMismatch",
    "InvalidAutomaton",
    "InvalidParams",
    "EmptySupport",
    "DegenerateAlphabet",
    "SchemaError",
    "NondeterministicTransition",
    "UnknownState",
    "UnknownAction",
    "InvalidInputRun",
    "EmptyLanguage",
    "CapExceeded",
    "DomainMismatch",
};

absl::StatusCode CodeFor(ErrorKind kind) {
  switch (kind) {
    case ErrorKind::kAlphabetMismatch:
    case ErrorKind::kCountMismatch:
    case ErrorKind::kDomainMismatch:
      return absl::StatusCode::kFailedPrecondition;
    case ErrorKind::kDistanceOutOfRange:
      return absl::StatusCode::kOutOfRange;
    case ErrorKind::kCapExceeded:
      return absl::StatusCode::kResourceExhausted;
    case ErrorKind::kUnknownState:
    case ErrorKind::kUnknownAction:
    case ErrorKind::kUnknownSymbol:
      return absl::StatusCode::kNotFound;
    default:
      return absl::StatusCode::kInvalidArgument;
  }
}

}  // namespace

std::string_view ErrorKindName(ErrorKind kind) {
  return kNames[static_cast<size_t>(kind)];
}

absl::Status MakeError(ErrorKind kind, std::string_view message) {
  absl::Status status(CodeFor(kind), std::string(
                      StrCat(ErrorKindName(kind), ": ", message)));
  status.SetPayload(kPayloadUrl,
                    absl::Cord(std::to_string(static_cast<int>(kind))));
  return status;
}

std::optional<ErrorKind> KindOf(const absl::Status& status) {
  auto payload = status.GetPayload(kPayloadUrl);
  if (!payload.has_value()) return std::nullopt;
  int value = std::stoi(std::string(*payload));
  if (value < 0 || value >= static_cast<int>(kNames.size())) {
    return std::nullopt;
  }
  return static_cast<ErrorKind>(value);
}

}  // namespace levpriv
