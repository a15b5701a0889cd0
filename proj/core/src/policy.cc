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

#include "levpriv/policy.h"

#include <cmath>
#include <limits>
#include <utility>

#include "json.hpp"
#include "levpriv/status.h"
#include "str_util.h"

namespace levpriv {

absl::StatusOr<PathCounts> CountPaths(const LayeredAutomaton& a) {
  if (a.empty()) {
    return MakeError(ErrorKind::kEmptyAutomaton,
                     "cannot count paths of an empty automaton");
  }
  PathCounts v;
  v.counts.assign(a.num_states(), BigNat(0));
  for (StateId q = static_cast<StateId>(a.num_states()); q-- > 0;) {
    BigNat sum = a.is_accepting(q) ? 1 : 0;
    for (const Edge& e : a.edges(q)) sum += v.counts[e.to];
    v.counts[q] = std::move(sum);
  }
  v.total = v.counts[*a.initial()];
  return v;
}

absl::StatusOr<Policy> SynthesizePolicy(const LayeredAutomaton& a,
                                        const PathCounts& counts) {
  if (a.empty()) {
    return MakeError(ErrorKind::kEmptyAutomaton,
                     "cannot synthesize a policy for an empty automaton");
  }
  if (counts.counts.size() != a.num_states()) {
    return MakeError(ErrorKind::kCountMismatch,
                     "path counts do not belong to this automaton");
  }
  Policy policy;
  policy.states.resize(a.num_states());
  for (StateId q = 0; q < a.num_states(); ++q) {
    Policy::StateChoices& sc = policy.states[q];
    BigNat sum = 0;
    for (const Edge& e : a.edges(q)) {
      if (counts.counts[e.to] == 0) continue;
      sc.choices.push_back({e.symbol, e.to, counts.counts[e.to]});
      sum += counts.counts[e.to];
    }
    if (a.is_accepting(q)) sum += 1;
    if (sum != counts.counts[q]) {
      return MakeError(ErrorKind::kCountMismatch,
                       StrCat("V(q", q, ") is not the sum over its "
                                    "successors"));
    }
    sc.denominator = a.is_accepting(q) && sc.choices.empty() ? BigNat(1) : sum;
  }
  return policy;
}

std::string Policy::ToJson(const Alphabet& alphabet, int indent) const {
  nlohmann::json doc = nlohmann::json::array();
  for (std::size_t q = 0; q < states.size(); ++q) {
    nlohmann::json choices = nlohmann::json::array();
    for (const Choice& c : states[q].choices) {
      choices.push_back({{"symbol", alphabet.symbol(c.symbol)},
                         {"to", c.to},
                         {"numerator", c.numerator.str()},
                         {"denominator", states[q].denominator.str()}});
    }
    doc.push_back({{"state", q}, {"choices", std::move(choices)}});
  }
  return doc.dump(indent);
}

absl::StatusOr<BigRational> WordProbability(const LayeredAutomaton& a,
                                            const Policy& policy,
                                            const Word& word) {
  LEVPRIV_ASSIGN_OR_RETURN(bool accepted, a.Accepts(word));
  if (!accepted) return BigRational(0);
  BigNat numerator = 1;
  BigNat denominator = 1;
  StateId q = *a.initial();
  for (Symbol s : word.letters) {
    const Policy::StateChoices& sc = policy.states[q];
    bool found = false;
    for (const Policy::Choice& c : sc.choices) {
      if (c.symbol == s) {
        numerator *= c.numerator;
        denominator *= sc.denominator;
        q = c.to;
        found = true;
        break;
      }
    }
    if (!found) return BigRational(0);
  }
  return BigRational(numerator, denominator);
}

BigNat UniformBelow(const BigNat& bound, Rng& rng) {
  const std::size_t bits = boost::multiprecision::msb(bound) + 1;
  if (bits <= 64) {
    const auto limit = bound.convert_to<std::uint64_t>();
    const std::uint64_t mask =
        bits == 64 ? ~std::uint64_t{0} : (std::uint64_t{1} << bits) - 1;
    while (true) {
      std::uint64_t r = rng() & mask;
      if (r < limit) return BigNat(r);
    }
  }
  const std::size_t words = (bits + 63) / 64;
  while (true) {
    BigNat r = 0;
    for (std::size_t i = 0; i < words; ++i) {
      r <<= 64;
      r |= BigNat(rng());
    }
    r >>= (words * 64 - bits);
    if (r < bound) return r;
  }
}

absl::StatusOr<Word> SampleWord(const LayeredAutomaton& a,
                                const PathCounts& counts, Rng& rng) {
  if (a.empty()) {
    return MakeError(ErrorKind::kEmptyAutomaton,
                     "cannot sample from an empty automaton");
  }
  if (counts.counts.size() != a.num_states()) {
    return MakeError(ErrorKind::kCountMismatch,
                     "path counts do not belong to this automaton");
  }
  Word out{a.alphabet().id(), {}};
  out.letters.reserve(a.word_len());
  StateId q = *a.initial();
  while (!a.edges(q).empty()) {
    BigNat u = UniformBelow(counts.counts[q], rng);
    if (a.is_accepting(q)) {
      if (u == 0) break;
      u -= 1;
    }
    bool moved = false;
    for (const Edge& e : a.edges(q)) {
      const BigNat& branch = counts.counts[e.to];
      if (u < branch) {
        out.letters.push_back(e.symbol);
        q = e.to;
        moved = true;
        break;
      }
      u -= branch;
    }
    if (!moved) {
      return MakeError(ErrorKind::kCountMismatch,
                       "path counts do not belong to this automaton");
    }
  }
  return out;
}

double LogBigNat(const BigNat& n) {
  if (n <= 0) return -std::numeric_limits<double>::infinity();
  const std::size_t bits = boost::multiprecision::msb(n) + 1;
  if (bits <= 64) return std::log(n.convert_to<std::uint64_t>() * 1.0);
  const std::size_t shift = bits - 64;
  const auto top = BigNat(n >> shift).convert_to<std::uint64_t>();
  return std::log(static_cast<double>(top)) +
         static_cast<double>(shift) * std::log(2.0);
}

}  // namespace levpriv
