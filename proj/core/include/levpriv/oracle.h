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

// Brute-force ground truth for small instances: explicit enumeration of the
// output language, the exponential mechanism's pmf computed straight from
// its defining formula, and an exhaustive differential-privacy check.

#ifndef LEVPRIV_ORACLE_H_
#define LEVPRIV_ORACLE_H_

#include <cstdint>
#include <functional>
#include <optional>
#include <span>
#include <string>
#include <utility>
#include <vector>

#include "absl/status/statusor.h"
#include "levpriv/mechanism.h"
#include "levpriv/random.h"
#include "levpriv/transition_system.h"
#include "levpriv/words.h"

namespace levpriv {

inline constexpr std::uint64_t kDefaultEnumerationCap = 1'000'000;

// All words of length n in lexicographic index order, keeping only valid
// plans when `ts` is given. Fails with CapExceeded when |alphabet|^n > cap.
absl::StatusOr<std::vector<Word>> EnumerateLanguage(
    const Alphabet& alphabet, std::size_t n,
    const TransitionSystem* ts = nullptr,
    std::uint64_t cap = kDefaultEnumerationCap);

// A distribution over a finite, sorted list of words. Words absent from the
// list have probability zero.
struct Pmf {
  std::string domain;
  std::vector<Word> words;
  std::vector<double> prob;
  std::vector<double> log_prob;

  std::optional<std::size_t> IndexOf(const Word& w) const;
  double ProbabilityOf(const Word& w) const;
  double LogProbabilityOf(const Word& w) const;
};

// p(w; x) = exp(eps u(x, w) / (2 du)) / K_x over `language`, evaluated word
// by word with du = SensitivityBound(k, alpha). The weighting and support
// fields of `params` are ignored: this is the textbook mechanism.
absl::StatusOr<Pmf> BruteForcePmf(const Word& x,
                                  std::span<const Word> language,
                                  const MechanismParams& params);

// The automaton-based mechanism's law for input `x`, expanded onto
// `language` through the analytic per-distance probabilities. With `ts`
// the run mechanism is used.
absl::StatusOr<Pmf> MechanismPmf(const Alphabet& alphabet, const Word& x,
                                 std::span<const Word> language,
                                 const MechanismParams& params,
                                 const TransitionSystem* ts = nullptr);

// Ordered index pairs (i, j) with hamming(language[i], language[j]) <= k,
// including i == j.
std::vector<std::pair<std::size_t, std::size_t>> AdjacentPairs(
    std::span<const Word> language, std::size_t k);

struct DpReport {
  double epsilon = 0;
  std::size_t k = 0;
  double alpha = 0;
  std::string mode;
  std::size_t language_size = 0;
  std::size_t pairs_checked = 0;
  // max over adjacent (w1, w2) and outputs v of log p(v;w1) - log p(v;w2);
  // +inf when some v is possible from w1 but not from w2.
  double max_log_ratio = 0;
  double bound_log_ratio = 0;
  bool pass = false;
  struct Witness {
    Word w1, w2, v;
  };
  std::optional<Witness> witness;

  double max_ratio() const;
  std::string ToJson(const Alphabet& alphabet, int indent = 2) const;
};

using PmfFamily = std::function<absl::StatusOr<Pmf>(const Word& input)>;

// Checks p(v; w1) <= e^eps p(v; w2) (1 + 1e-9) for every adjacent ordered
// pair and every single output v. For a finite output space, singleton
// events suffice: any event's probability is a sum of singletons.
absl::StatusOr<DpReport> VerifyDp(const PmfFamily& family,
                                  std::span<const Word> language,
                                  std::size_t k, double epsilon);

// 1/2 sum |p - q|; both pmfs must list the same words.
absl::StatusOr<double> TotalVariation(const Pmf& p, const Pmf& q);

// Frequencies of `trials` draws. Every draw must lie in `domain`.
absl::StatusOr<Pmf> EmpiricalPmf(
    const std::function<absl::StatusOr<Word>(Rng&)>& sampler,
    std::size_t trials, Rng& rng, std::span<const Word> domain);

}  // namespace levpriv

#endif  // LEVPRIV_ORACLE_H_
