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

#include "levpriv/words.h"

#include <algorithm>
#include <cctype>
#include <utility>

#include "fmt/format.h"
#include "json.hpp"
#include "levpriv/status.h"
#include "str_util.h"

namespace levpriv {
namespace {

std::uint64_t Fingerprint(const std::vector<std::string>& symbols) {
  std::uint64_t h = 1469598103934665603ULL;
  auto mix = [&h](unsigned char byte) {
    h ^= byte;
    h *= 1099511628211ULL;
  };
  for (const std::string& s : symbols) {
    std::uint64_t n = s.size();
    for (int i = 0; i < 8; ++i) mix(static_cast<unsigned char>(n >> (8 * i)));
    for (char c : s) mix(static_cast<unsigned char>(c));
  }
  return h;
}

absl::Status CheckSameAlphabet(const Word& a, const Word& b) {
  if (a.alphabet_id != b.alphabet_id) {
    return MakeError(ErrorKind::kAlphabetMismatch,
                     "words are over different alphabets");
  }
  return absl::OkStatus();
}

}  // namespace

absl::StatusOr<std::vector<std::string>> SplitUtf8(std::string_view text) {
  std::vector<std::string> out;
  std::size_t i = 0;
  while (i < text.size()) {
    auto lead = static_cast<unsigned char>(text[i]);
    std::size_t len = 0;
    if (lead < 0x80) {
      len = 1;
    } else if ((lead & 0xE0) == 0xC0) {
      len = 2;
    } else if ((lead & 0xF0) == 0xE0) {
      len = 3;
    } else if ((lead & 0xF8) == 0xF0) {
      len = 4;
    } else {
      return MakeError(ErrorKind::kInvalidAlphabet,
                       StrCat("invalid UTF-8 lead byte at offset ", i));
    }
    if (i + len > text.size()) {
      return MakeError(ErrorKind::kInvalidAlphabet, "truncated UTF-8 sequence");
    }
    for (std::size_t j = 1; j < len; ++j) {
      if ((static_cast<unsigned char>(text[i + j]) & 0xC0) != 0x80) {
        return MakeError(ErrorKind::kInvalidAlphabet,
                         StrCat("invalid UTF-8 continuation at offset ",
                                      i + j));
      }
    }
    out.emplace_back(text.substr(i, len));
    i += len;
  }
  return out;
}

absl::StatusOr<Alphabet> Alphabet::FromSymbols(
    std::vector<std::string> symbols) {
  if (symbols.empty()) {
    return MakeError(ErrorKind::kInvalidAlphabet, "alphabet is empty");
  }
  auto data = std::make_shared<Data>();
  data->sorted_index.reserve(symbols.size());
  for (std::size_t i = 0; i < symbols.size(); ++i) {
    if (symbols[i].empty()) {
      return MakeError(ErrorKind::kInvalidAlphabet, "empty symbol");
    }
    data->sorted_index.emplace_back(symbols[i], static_cast<Symbol>(i));
    LEVPRIV_ASSIGN_OR_RETURN(std::vector<std::string> scalars,
                             SplitUtf8(symbols[i]));
    if (scalars.size() != 1) data->character_alphabet = false;
  }
  std::sort(data->sorted_index.begin(), data->sorted_index.end());
  for (std::size_t i = 1; i < data->sorted_index.size(); ++i) {
    if (data->sorted_index[i].first == data->sorted_index[i - 1].first) {
      return MakeError(ErrorKind::kInvalidAlphabet,
                       StrCat("duplicate symbol '",
                                    data->sorted_index[i].first, "'"));
    }
  }
  data->id = Fingerprint(symbols);
  data->symbols = std::move(symbols);
  return Alphabet(std::move(data));
}

absl::StatusOr<Alphabet> Alphabet::FromDistinctCharacters(
    std::string_view text) {
  LEVPRIV_ASSIGN_OR_RETURN(std::vector<std::string> scalars, SplitUtf8(text));
  std::vector<std::string> distinct;
  for (std::string& s : scalars) {
    if (std::find(distinct.begin(), distinct.end(), s) == distinct.end()) {
      distinct.push_back(std::move(s));
    }
  }
  return FromSymbols(std::move(distinct));
}

absl::StatusOr<Alphabet> Alphabet::FromJson(std::string_view json) {
  nlohmann::json doc = nlohmann::json::parse(json, nullptr, false);
  if (doc.is_discarded() || !doc.is_array()) {
    return MakeError(ErrorKind::kInvalidAlphabet,
                     "expected a JSON array of symbol strings");
  }
  std::vector<std::string> symbols;
  for (const auto& item : doc) {
    if (!item.is_string()) {
      return MakeError(ErrorKind::kInvalidAlphabet,
                       "alphabet entries must be strings");
    }
    symbols.push_back(item.get<std::string>());
  }
  return FromSymbols(std::move(symbols));
}

absl::StatusOr<Alphabet> Alphabet::Parse(std::string_view spec) {
  if (!spec.empty() && spec.front() == '[') return FromJson(spec);
  return FromDistinctCharacters(spec);
}

std::optional<Symbol> Alphabet::IndexOf(std::string_view symbol) const {
  const auto& index = data_->sorted_index;
  auto it = std::lower_bound(
      index.begin(), index.end(), symbol,
      [](const auto& entry, std::string_view s) { return entry.first < s; });
  if (it == index.end() || it->first != symbol) return std::nullopt;
  return it->second;
}

absl::StatusOr<Word> Alphabet::MakeWord(std::vector<Symbol> letters) const {
  for (Symbol s : letters) {
    if (s >= size()) {
      return MakeError(ErrorKind::kUnknownSymbol,
                       StrCat("symbol index ", s, " out of range"));
    }
  }
  return Word{id(), std::move(letters)};
}

absl::StatusOr<Word> Alphabet::Encode(std::string_view text) const {
  std::vector<std::string> tokens;
  if (is_character_alphabet()) {
    LEVPRIV_ASSIGN_OR_RETURN(tokens, SplitUtf8(text));
  } else {
    std::string current;
    for (char c : text) {
      if (std::isspace(static_cast<unsigned char>(c)) || c == ',') {
        if (!current.empty()) tokens.push_back(std::move(current));
        current.clear();
      } else {
        current.push_back(c);
      }
    }
    if (!current.empty()) tokens.push_back(std::move(current));
  }
  return EncodeTokens(tokens);
}

absl::StatusOr<Word> Alphabet::EncodeTokens(
    std::span<const std::string> tokens) const {
  Word word{id(), {}};
  word.letters.reserve(tokens.size());
  for (const std::string& t : tokens) {
    std::optional<Symbol> s = IndexOf(t);
    if (!s.has_value()) {
      return MakeError(ErrorKind::kUnknownSymbol,
                       StrCat("'", t, "' is not in the alphabet"));
    }
    word.letters.push_back(*s);
  }
  return word;
}

std::string Alphabet::Decode(const Word& word) const {
  std::vector<std::string_view> parts;
  parts.reserve(word.size());
  for (Symbol s : word.letters) parts.push_back(symbol(s));
  return fmt::to_string(
      fmt::join(parts, is_character_alphabet() ? "" : " "));
}

absl::StatusOr<std::size_t> HammingDistance(const Word& a, const Word& b) {
  LEVPRIV_RETURN_IF_ERROR(CheckSameAlphabet(a, b));
  if (a.size() != b.size()) {
    return MakeError(ErrorKind::kLengthMismatch,
                     StrCat("lengths ", a.size(), " and ", b.size(),
                                  " differ"));
  }
  std::size_t d = 0;
  for (std::size_t i = 0; i < a.size(); ++i) d += a.letters[i] != b.letters[i];
  return d;
}

absl::StatusOr<std::size_t> LevenshteinDistance(const Word& a, const Word& b) {
  LEVPRIV_RETURN_IF_ERROR(CheckSameAlphabet(a, b));
  const auto& s = a.letters;
  const auto& t = b.letters;
  std::vector<std::size_t> prev(t.size() + 1), curr(t.size() + 1);
  for (std::size_t j = 0; j <= t.size(); ++j) prev[j] = j;
  for (std::size_t i = 1; i <= s.size(); ++i) {
    curr[0] = i;
    for (std::size_t j = 1; j <= t.size(); ++j) {
      curr[j] = std::min({prev[j] + 1,                                // deletion
                          curr[j - 1] + 1,                            // insertion
                          prev[j - 1] + (s[i - 1] == t[j - 1] ? 0 : 1)});
    }
    std::swap(prev, curr);
  }
  return prev[t.size()];
}

absl::StatusOr<double> Utility(const Word& input, const Word& output,
                               double alpha) {
  if (!(alpha > 0)) {
    return MakeError(ErrorKind::kNonPositiveAlpha, "alpha must be positive");
  }
  LEVPRIV_ASSIGN_OR_RETURN(std::size_t d, HammingDistance(input, output));
  return 1.0 / (static_cast<double>(d) + alpha);
}

absl::StatusOr<double> SensitivityBound(std::size_t k, double alpha) {
  if (!(alpha > 0)) {
    return MakeError(ErrorKind::kNonPositiveAlpha, "alpha must be positive");
  }
  if (k == 0) {
    return MakeError(ErrorKind::kZeroK, "adjacency radius k must be >= 1");
  }
  const double kd = static_cast<double>(k);
  return kd / (alpha * (kd + alpha));
}

}  // namespace levpriv
