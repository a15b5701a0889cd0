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

// Alphabets, words over them, and the scalar quantities the mechanism is
// built from: substitution (Hamming) distance, full edit distance, the
// substitution Levenshtein utility and its sensitivity bound.

#ifndef LEVPRIV_WORDS_H_
#define LEVPRIV_WORDS_H_

#include <cstddef>
#include <cstdint>
#include <memory>
#include <optional>
#include <span>
#include <string>
#include <string_view>
#include <vector>

#include "absl/status/statusor.h"

namespace levpriv {

// Index of a symbol inside its alphabet.
using Symbol = std::uint32_t;

// A word is a sequence of symbol indices tagged with the identity of the
// alphabet it was drawn from. The empty word is a valid value.
struct Word {
  std::uint64_t alphabet_id = 0;
  std::vector<Symbol> letters;

  std::size_t size() const { return letters.size(); }
  bool empty() const { return letters.empty(); }
  friend bool operator==(const Word&, const Word&) = default;
  friend auto operator<=>(const Word&, const Word&) = default;
};

// An ordered set of distinct, non-empty symbol strings. Copies share the
// same immutable storage; two alphabets with the same ordered symbols have
// the same id.
class Alphabet {
 public:
  static absl::StatusOr<Alphabet> FromSymbols(std::vector<std::string> symbols);

  // Distinct UTF-8 scalars of `text` in first-appearance order.
  static absl::StatusOr<Alphabet> FromDistinctCharacters(std::string_view text);

  // A JSON array of symbol strings, e.g. ["a","b","c"].
  static absl::StatusOr<Alphabet> FromJson(std::string_view json);

  // JSON array when `spec` starts with '[', otherwise distinct characters.
  static absl::StatusOr<Alphabet> Parse(std::string_view spec);

  std::size_t size() const { return data_->symbols.size(); }
  std::uint64_t id() const { return data_->id; }
  const std::string& symbol(Symbol s) const { return data_->symbols.at(s); }
  const std::vector<std::string>& symbols() const { return data_->symbols; }
  std::optional<Symbol> IndexOf(std::string_view symbol) const;

  // True when every symbol is a single UTF-8 scalar, in which case words are
  // written as plain strings; otherwise they are written space-separated.
  bool is_character_alphabet() const { return data_->character_alphabet; }

  absl::StatusOr<Word> MakeWord(std::vector<Symbol> letters) const;

  // Character alphabets split `text` into scalars; token alphabets split on
  // whitespace and commas.
  absl::StatusOr<Word> Encode(std::string_view text) const;
  absl::StatusOr<Word> EncodeTokens(std::span<const std::string> tokens) const;
  std::string Decode(const Word& word) const;

  friend bool operator==(const Alphabet& a, const Alphabet& b) {
    return a.data_ == b.data_ || a.data_->symbols == b.data_->symbols;
  }

 private:
  struct Data {
    std::vector<std::string> symbols;
    std::vector<std::pair<std::string, Symbol>> sorted_index;
    std::uint64_t id = 0;
    bool character_alphabet = true;
  };

  explicit Alphabet(std::shared_ptr<const Data> data) : data_(std::move(data)) {}
  std::shared_ptr<const Data> data_;
};

// Splits UTF-8 text into scalar values, each returned as its byte sequence.
absl::StatusOr<std::vector<std::string>> SplitUtf8(std::string_view text);

// Number of positions at which two equal-length words differ.
absl::StatusOr<std::size_t> HammingDistance(const Word& a, const Word& b);

// Insertions + deletions + substitutions, by the two-row table recurrence.
absl::StatusOr<std::size_t> LevenshteinDistance(const Word& a, const Word& b);

// 1 / (hamming(input, output) + alpha).
absl::StatusOr<double> Utility(const Word& input, const Word& output,
                               double alpha);

// Upper bound k / (alpha (k + alpha)) on how much the utility of a fixed
// output can change between inputs at substitution distance <= k.
absl::StatusOr<double> SensitivityBound(std::size_t k, double alpha);

}  // namespace levpriv

#endif  // LEVPRIV_WORDS_H_
