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

// The exponential mechanism for words of a fixed length.
//
// For an input x the mechanism outputs w with probability proportional to
// exp(eps * u(x, w) / (2 * du)), where u is the substitution Levenshtein
// utility and du its sensitivity bound. Because that weight depends on w only
// through its distance to x, sampling splits into two exact steps: draw a
// distance class, then draw a word uniformly inside it with the path-count
// policy.

#ifndef LEVPRIV_MECHANISM_H_
#define LEVPRIV_MECHANISM_H_

#include <cstddef>
#include <optional>
#include <span>
#include <string>
#include <string_view>
#include <vector>

#include "absl/status/status.h"
#include "absl/status/statusor.h"
#include "levpriv/levenshtein_automaton.h"
#include "levpriv/policy.h"
#include "levpriv/random.h"
#include "levpriv/words.h"

namespace levpriv {

// kExact multiplies each class weight by its size, so the two-step sampler
// realizes the exponential mechanism exactly. kPaperLiteral normalizes the
// bare per-class exponentials; it is not epsilon-DP in general.
enum class Weighting { kExact, kPaperLiteral };

// kFullLength considers every word of the input's length (distances
// 0..|x|). kWithinK only considers words within distance k of the input;
// when k < |x| neighbouring inputs then have different supports and the
// mechanism is not epsilon-DP.
enum class Support { kFullLength, kWithinK };

std::string_view WeightingName(Weighting w);
absl::StatusOr<Weighting> ParseWeighting(std::string_view name);
std::string_view SupportName(Support s);
absl::StatusOr<Support> ParseSupport(std::string_view name);

struct MechanismParams {
  double epsilon = 1.0;
  double alpha = 1.0;
  std::size_t k = 1;
  Weighting weighting = Weighting::kExact;
  Support support = Support::kFullLength;

  absl::Status Validate() const;
  // Largest output distance considered for an input of length `word_len`.
  std::size_t SupportRadius(std::size_t word_len) const;
};

// eps * alpha * (k + alpha) / (2 k (distance + alpha)), the exponent of the
// mechanism's weight for an output at `distance`.
double ExponentWeight(std::size_t distance, const MechanismParams& params);

// Distribution over distance classes. Only classes with a positive count
// are listed.
struct DistanceDistribution {
  std::vector<std::size_t> support;
  std::vector<BigNat> counts;
  std::vector<double> log_weight;
  std::vector<double> prob;

  std::optional<std::size_t> IndexOf(std::size_t distance) const;
  // Header "distance,count,log_weight,prob".
  std::string ToCsv() const;
};

// `counts[l]` is the number of candidate outputs at distance l.
absl::StatusOr<DistanceDistribution> MakeDistanceDistribution(
    std::span<const BigNat> counts, const MechanismParams& params);

// Closed form of the sampler's law: every word at distance l is output with
// probability prob(l) / N(l).
struct AnalyticPmf {
  std::vector<std::size_t> support;
  std::vector<BigNat> counts;
  std::vector<double> log_per_word;
  std::vector<double> per_word;

  // Zero (or -inf) for distances outside the support.
  double ProbabilityAt(std::size_t distance) const;
  double LogProbabilityAt(std::size_t distance) const;
};

absl::StatusOr<AnalyticPmf> MakeAnalyticPmf(std::span<const BigNat> counts,
                                            const MechanismParams& params);

// N(l) for l = 0..radius, each obtained by counting the paths of the
// l-restriction of `machine`.
absl::StatusOr<std::vector<BigNat>> DistanceClassCounts(
    const LayeredAutomaton& machine, std::size_t radius);

// A prepared two-step sampler over a plain or product Levenshtein automaton.
// Distances range over 0..min(max_err, word_len) of the machine; empty
// classes are dropped.
class ExponentialMechanism {
 public:
  static absl::StatusOr<ExponentialMechanism> Create(
      const LayeredAutomaton& machine, const MechanismParams& params);

  struct Draw {
    std::size_t distance = 0;
    Word word;
  };

  const MechanismParams& params() const { return params_; }
  const DistanceDistribution& distribution() const { return distribution_; }
  const std::vector<BigNat>& class_counts() const { return class_counts_; }
  const LayeredAutomaton& restricted(std::size_t support_index) const {
    return restricted_[support_index];
  }
  const PathCounts& path_counts(std::size_t support_index) const {
    return path_counts_[support_index];
  }
  absl::StatusOr<AnalyticPmf> Pmf() const;

  std::size_t SampleDistance(Rng& rng) const;
  absl::StatusOr<Draw> Sample(Rng& rng) const;

 private:
  ExponentialMechanism() = default;

  MechanismParams params_;
  std::vector<BigNat> class_counts_;
  DistanceDistribution distribution_;
  std::vector<LayeredAutomaton> restricted_;
  std::vector<PathCounts> path_counts_;
};

// Mechanism over alphabet^|x| (or its radius-k ball, per params.support).
class WordPrivatizer {
 public:
  static absl::StatusOr<WordPrivatizer> Create(const Alphabet& alphabet,
                                               const Word& x,
                                               const MechanismParams& params);

  const LayeredAutomaton& automaton() const { return automaton_; }
  const ExponentialMechanism& mechanism() const { return mechanism_; }
  absl::StatusOr<Word> Sample(Rng& rng) const;

 private:
  WordPrivatizer(LayeredAutomaton automaton, ExponentialMechanism mechanism)
      : automaton_(std::move(automaton)), mechanism_(std::move(mechanism)) {}

  LayeredAutomaton automaton_;
  ExponentialMechanism mechanism_;
};

absl::StatusOr<Word> PrivatizeWord(const Alphabet& alphabet, const Word& x,
                                   const MechanismParams& params, Rng& rng);

}  // namespace levpriv

#endif  // LEVPRIV_MECHANISM_H_
