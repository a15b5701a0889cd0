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

#ifndef LEVPRIV_STATUS_H_
#define LEVPRIV_STATUS_H_

#include <optional>
#include <string_view>

#include "absl/status/status.h"

namespace levpriv {

// Every error returned by the library carries one of these kinds as a status
// payload, so callers can branch on the failure without parsing messages.
enum class ErrorKind {
  kAlphabetMismatch,
  kLengthMismatch,
  kNonPositiveAlpha,
  kZeroK,
  kEmptyWord,
  kInvalidAlphabet,
  kUnknownSymbol,
  kDistanceOutOfRange,
  kEmptyAutomaton,
  kCountMismatch,
  kInvalidAutomaton,
  kInvalidParams,
  kEmptySupport,
  kDegenerateAlphabet,
  kSchemaError,
  kNondeterministicTransition,
  kUnknownState,
  kUnknownAction,
  kInvalidInputRun,
  kEmptyLanguage,
  kCapExceeded,
  kDomainMismatch,
};

std::string_view ErrorKindName(ErrorKind kind);

absl::Status MakeError(ErrorKind kind, std::string_view message);

// Returns the kind attached by MakeError, or nullopt for foreign statuses.
std::optional<ErrorKind> KindOf(const absl::Status& status);

}  // namespace levpriv

#define LEVPRIV_RETURN_IF_ERROR(expr)          \
  do {                                         \
    if (absl::Status _st = (expr); !_st.ok()) { \
      return _st;                              \
    }                                          \
  } while (0)

#define LEVPRIV_CONCAT_INNER_(a, b) a##b
#define LEVPRIV_CONCAT_(a, b) LEVPRIV_CONCAT_INNER_(a, b)
#define LEVPRIV_ASSIGN_OR_RETURN_IMPL_(tmp, lhs, expr) \
  auto tmp = (expr);                                   \
  if (!tmp.ok()) return tmp.status();                  \
  lhs = std::move(*tmp)
#define LEVPRIV_ASSIGN_OR_RETURN(lhs, expr) \
  LEVPRIV_ASSIGN_OR_RETURN_IMPL_(LEVPRIV_CONCAT_(_statusor_, __LINE__), lhs, expr)

#endif  // LEVPRIV_STATUS_H_
