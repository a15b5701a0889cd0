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

#ifndef LEVPRIV_POLICY_H_
#define LEVPRIV_POLICY_H_

#include <string>
#include <vector>

#include "absl/status/statusor.h"
#include "boost/multiprecision/cpp_int.hpp"
#include "levpriv/levenshtein_automaton.h"
#include "levpriv/random.h"

namespace levpriv {

using BigNat = boost::multiprecision::cpp_int;
using BigRational = boost::multiprecision::cpp_rational;

// V(q): number of distinct paths from q to an accepting state. Accepting
// states are seeded with 1; `total` is V at the initial state, i.e. the
// number of accepted words.
struct PathCounts {
  std::vector<BigNat> counts;
  BigNat total;
};

absl::StatusOr<PathCounts> CountPaths(const LayeredAutomaton& a);

// Per-state branch probabilities mu(q, sigma) = V(q') / V(q), stored as exact
// integer numerators over a shared denominator. Accepting states have no
// choices.
struct Policy {
  struct Choice {
    Symbol symbol = 0;
    StateId to = 0;
    BigNat numerator;
  };
  struct StateChoices {
    BigNat denominator;
    std::vector<Choice> choices;
  };
  std::vector<StateChoices> states;

  // [{"state":id, "choices":[{"symbol","numerator","denominator"}]}] with
  // the exact rationals written as decimal strings.
  std::string ToJson(const Alphabet& alphabet, int indent = 2) const;
};

absl::StatusOr<Policy> SynthesizePolicy(const LayeredAutomaton& a,
                                        const PathCounts& counts);

// Exact probability that the policy walk emits `word`; zero when the word is
// not accepted.
absl::StatusOr<BigRational> WordProbability(const LayeredAutomaton& a,
                                            const Policy& policy,
                                            const Word& word);

// Uniform integer in [0, bound) by rejection over the minimal number of
// random bits. `bound` must be positive.
BigNat UniformBelow(const BigNat& bound, Rng& rng);

// Walks from the initial state, choosing each branch with probability
// V(q') / V(q) by an exact big-integer draw. Every accepted word is returned
// with probability exactly 1 / total.
absl::StatusOr<Word> SampleWord(const LayeredAutomaton& a,
                                const PathCounts& counts, Rng& rng);

// Natural log of a big natural, accurate to double precision; -inf for 0.
double LogBigNat(const BigNat& n);

}  // namespace levpriv

#endif  // LEVPRIV_POLICY_H_
