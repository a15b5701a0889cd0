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

#include "levpriv/mechanism.h"

#include <algorithm>
#include <cmath>
#include <limits>
#include <utility>

#include "fmt/format.h"
#include "levpriv/status.h"
#include "str_util.h"

namespace levpriv {
namespace {

double LogSumExp(std::span<const double> values) {
  double hi = -std::numeric_limits<double>::infinity();
  for (double v : values) hi = std::max(hi, v);
  if (!std::isfinite(hi)) return hi;
  double sum = 0;
  for (double v : values) sum += std::exp(v - hi);
  return hi + std::log(sum);
}

}  // namespace

std::string_view WeightingName(Weighting w) {
  return w == Weighting::kExact ? "exact" : "paper_literal";
}

absl::StatusOr<Weighting> ParseWeighting(std::string_view name) {
  if (name == "exact") return Weighting::kExact;
  if (name == "paper_literal" || name == "paper-literal") {
    return Weighting::kPaperLiteral;
  }
  return MakeError(ErrorKind::kInvalidParams,
                   StrCat("unknown weighting mode '", name, "'"));
}

std::string_view SupportName(Support s) {
  return s == Support::kFullLength ? "full" : "within_k";
}

absl::StatusOr<Support> ParseSupport(std::string_view name) {
  if (name == "full") return Support::kFullLength;
  if (name == "within_k" || name == "within-k") return Support::kWithinK;
  return MakeError(ErrorKind::kInvalidParams,
                   StrCat("unknown support mode '", name, "'"));
}

absl::Status MechanismParams::Validate() const {
  if (!(epsilon >= 0) || !std::isfinite(epsilon)) {
    return MakeError(ErrorKind::kInvalidParams,
                     "epsilon must be a finite non-negative number");
  }
  if (!(alpha > 0) || !std::isfinite(alpha)) {
    return MakeError(ErrorKind::kNonPositiveAlpha, "alpha must be positive");
  }
  if (k == 0) return MakeError(ErrorKind::kZeroK, "k must be >= 1");
  return absl::OkStatus();
}

std::size_t MechanismParams::SupportRadius(std::size_t word_len) const {
  return support == Support::kFullLength ? word_len : std::min(k, word_len);
}

double ExponentWeight(std::size_t distance, const MechanismParams& p) {
  const double k = static_cast<double>(p.k);
  return p.epsilon * p.alpha * (k + p.alpha) /
         (2.0 * k * (static_cast<double>(distance) + p.alpha));
}

std::optional<std::size_t> DistanceDistribution::IndexOf(
    std::size_t distance) const {
  auto it = std::lower_bound(support.begin(), support.end(), distance);
  if (it == support.end() || *it != distance) return std::nullopt;
  return static_cast<std::size_t>(it - support.begin());
}

std::string DistanceDistribution::ToCsv() const {
  std::string out = "distance,count,log_weight,prob\n";
  for (std::size_t i = 0; i < support.size(); ++i) {
    fmt::format_to(std::back_inserter(out), "{},{},{:.17g},{:.17g}\n", support[i],
                          counts[i].str(), log_weight[i], prob[i]);
  }
  return out;
}

absl::StatusOr<DistanceDistribution> MakeDistanceDistribution(
    std::span<const BigNat> counts, const MechanismParams& params) {
  LEVPRIV_RETURN_IF_ERROR(params.Validate());
  DistanceDistribution d;
  for (std::size_t l = 0; l < counts.size(); ++l) {
    if (counts[l] <= 0) continue;
    d.support.push_back(l);
    d.counts.push_back(counts[l]);
    double lw = ExponentWeight(l, params);
    if (params.weighting == Weighting::kExact) lw += LogBigNat(counts[l]);
    d.log_weight.push_back(lw);
  }
  if (d.support.empty()) {
    return MakeError(ErrorKind::kEmptySupport,
                     "no distance class has a candidate output");
  }
  const double norm = LogSumExp(d.log_weight);
  for (double lw : d.log_weight) d.prob.push_back(std::exp(lw - norm));
  return d;
}

double AnalyticPmf::ProbabilityAt(std::size_t distance) const {
  auto it = std::lower_bound(support.begin(), support.end(), distance);
  if (it == support.end() || *it != distance) return 0.0;
  return per_word[it - support.begin()];
}

double AnalyticPmf::LogProbabilityAt(std::size_t distance) const {
  auto it = std::lower_bound(support.begin(), support.end(), distance);
  if (it == support.end() || *it != distance) {
    return -std::numeric_limits<double>::infinity();
  }
  return log_per_word[it - support.begin()];
}

absl::StatusOr<AnalyticPmf> MakeAnalyticPmf(std::span<const BigNat> counts,
                                            const MechanismParams& params) {
  LEVPRIV_ASSIGN_OR_RETURN(DistanceDistribution d,
                           MakeDistanceDistribution(counts, params));
  AnalyticPmf pmf;
  pmf.support = d.support;
  pmf.counts = d.counts;
  const double norm = LogSumExp(d.log_weight);
  for (std::size_t i = 0; i < d.support.size(); ++i) {
    double lp = d.log_weight[i] - norm - LogBigNat(d.counts[i]);
    pmf.log_per_word.push_back(lp);
    pmf.per_word.push_back(std::exp(lp));
  }
  return pmf;
}

absl::StatusOr<std::vector<BigNat>> DistanceClassCounts(
    const LayeredAutomaton& machine, std::size_t radius) {
  std::vector<BigNat> counts;
  for (std::size_t l = 0; l <= radius; ++l) {
    LEVPRIV_ASSIGN_OR_RETURN(LayeredAutomaton restricted,
                             RestrictToDistance(machine, l));
    if (restricted.empty()) {
      counts.emplace_back(0);
      continue;
    }
    LEVPRIV_ASSIGN_OR_RETURN(PathCounts v, CountPaths(restricted));
    counts.push_back(std::move(v.total));
  }
  return counts;
}

absl::StatusOr<ExponentialMechanism> ExponentialMechanism::Create(
    const LayeredAutomaton& machine, const MechanismParams& params) {
  LEVPRIV_RETURN_IF_ERROR(params.Validate());
  ExponentialMechanism m;
  m.params_ = params;
  const std::size_t radius = std::min(machine.max_err(), machine.word_len());
  for (std::size_t l = 0; l <= radius; ++l) {
    LEVPRIV_ASSIGN_OR_RETURN(LayeredAutomaton restricted,
                             RestrictToDistance(machine, l));
    if (restricted.empty()) {
      m.class_counts_.emplace_back(0);
      continue;
    }
    LEVPRIV_ASSIGN_OR_RETURN(PathCounts v, CountPaths(restricted));
    m.class_counts_.push_back(v.total);
    m.restricted_.push_back(std::move(restricted));
    m.path_counts_.push_back(std::move(v));
  }
  LEVPRIV_ASSIGN_OR_RETURN(m.distribution_,
                           MakeDistanceDistribution(m.class_counts_, params));
  return m;
}

absl::StatusOr<AnalyticPmf> ExponentialMechanism::Pmf() const {
  return MakeAnalyticPmf(class_counts_, params_);
}

std::size_t ExponentialMechanism::SampleDistance(Rng& rng) const {
  const double u = UniformUnit(rng);
  double acc = 0;
  for (std::size_t i = 0; i < distribution_.prob.size(); ++i) {
    acc += distribution_.prob[i];
    if (u < acc) return i;
  }
  return distribution_.prob.size() - 1;
}

absl::StatusOr<ExponentialMechanism::Draw> ExponentialMechanism::Sample(
    Rng& rng) const {
  const std::size_t index = SampleDistance(rng);
  LEVPRIV_ASSIGN_OR_RETURN(
      Word w, SampleWord(restricted_[index], path_counts_[index], rng));
  return Draw{distribution_.support[index], std::move(w)};
}

absl::StatusOr<WordPrivatizer> WordPrivatizer::Create(
    const Alphabet& alphabet, const Word& x, const MechanismParams& params) {
  LEVPRIV_RETURN_IF_ERROR(params.Validate());
  if (x.empty()) {
    return MakeError(ErrorKind::kEmptyWord, "cannot privatize the empty word");
  }
  if (alphabet.size() < 2) {
    return MakeError(ErrorKind::kDegenerateAlphabet,
                     "a single-symbol alphabet admits no substitutions");
  }
  LEVPRIV_ASSIGN_OR_RETURN(
      LayeredAutomaton automaton,
      BuildSubstitutionAutomaton(alphabet, x, params.SupportRadius(x.size())));
  LEVPRIV_ASSIGN_OR_RETURN(ExponentialMechanism mechanism,
                           ExponentialMechanism::Create(automaton, params));
  return WordPrivatizer(std::move(automaton), std::move(mechanism));
}

absl::StatusOr<Word> WordPrivatizer::Sample(Rng& rng) const {
  LEVPRIV_ASSIGN_OR_RETURN(ExponentialMechanism::Draw draw,
                           mechanism_.Sample(rng));
  return std::move(draw.word);
}

absl::StatusOr<Word> PrivatizeWord(const Alphabet& alphabet, const Word& x,
                                   const MechanismParams& params, Rng& rng) {
  LEVPRIV_ASSIGN_OR_RETURN(WordPrivatizer privatizer,
                           WordPrivatizer::Create(alphabet, x, params));
  return privatizer.Sample(rng);
}

}  // namespace levpriv
