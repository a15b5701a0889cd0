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

#include "levpriv/oracle.h"

#include <algorithm>
#include <cmath>
#include <limits>

#include "json.hpp"
#include "levpriv/status.h"
#include "str_util.h"

namespace levpriv {
namespace {

constexpr double kNegInf = -std::numeric_limits<double>::infinity();

Pmf PmfFromLogWeights(std::string domain, std::vector<Word> words,
                      std::vector<double> log_weight) {
  double hi = kNegInf;
  for (double lw : log_weight) hi = std::max(hi, lw);
  double sum = 0;
  for (double lw : log_weight) sum += std::exp(lw - hi);
  const double norm = hi + std::log(sum);
  Pmf pmf;
  pmf.domain = std::move(domain);
  pmf.words = std::move(words);
  for (double lw : log_weight) {
    pmf.log_prob.push_back(lw - norm);
    pmf.prob.push_back(std::exp(lw - norm));
  }
  return pmf;
}

}  // namespace

absl::StatusOr<std::vector<Word>> EnumerateLanguage(
    const Alphabet& alphabet, std::size_t n, const TransitionSystem* ts,
    std::uint64_t cap) {
  if (ts != nullptr && !(ts->actions() == alphabet)) {
    return MakeError(ErrorKind::kAlphabetMismatch,
                     "alphabet differs from the system's actions");
  }
  std::uint64_t total = 1;
  for (std::size_t i = 0; i < n; ++i) {
    if (total > cap / alphabet.size()) {
      return MakeError(ErrorKind::kCapExceeded,
                       StrCat(alphabet.size(), "^", n,
                                    " words exceed the enumeration cap ", cap));
    }
    total *= alphabet.size();
  }
  if (total > cap) {
    return MakeError(ErrorKind::kCapExceeded,
                     StrCat("language size exceeds the cap ", cap));
  }
  std::vector<Word> out;
  Word w{alphabet.id(), std::vector<Symbol>(n, 0)};
  for (std::uint64_t count = 0; count < total; ++count) {
    if (ts == nullptr) {
      out.push_back(w);
    } else {
      LEVPRIV_ASSIGN_OR_RETURN(bool valid, IsValidPlan(*ts, w));
      if (valid) out.push_back(w);
    }
    for (std::size_t pos = n; pos-- > 0;) {
      if (++w.letters[pos] < alphabet.size()) break;
      w.letters[pos] = 0;
    }
  }
  return out;
}

std::optional<std::size_t> Pmf::IndexOf(const Word& w) const {
  auto it = std::lower_bound(words.begin(), words.end(), w);
  if (it == words.end() || !(*it == w)) return std::nullopt;
  return static_cast<std::size_t>(it - words.begin());
}

double Pmf::ProbabilityOf(const Word& w) const {
  std::optional<std::size_t> i = IndexOf(w);
  return i.has_value() ? prob[*i] : 0.0;
}

double Pmf::LogProbabilityOf(const Word& w) const {
  std::optional<std::size_t> i = IndexOf(w);
  return i.has_value() ? log_prob[*i] : kNegInf;
}

absl::StatusOr<Pmf> BruteForcePmf(const Word& x,
                                  std::span<const Word> language,
                                  const MechanismParams& params) {
  LEVPRIV_RETURN_IF_ERROR(params.Validate());
  if (language.empty()) {
    return MakeError(ErrorKind::kEmptyLanguage, "language is empty");
  }
  LEVPRIV_ASSIGN_OR_RETURN(double sensitivity,
                           SensitivityBound(params.k, params.alpha));
  std::vector<Word> words(language.begin(), language.end());
  std::sort(words.begin(), words.end());
  std::vector<double> log_weight;
  log_weight.reserve(words.size());
  for (const Word& w : words) {
    LEVPRIV_ASSIGN_OR_RETURN(double u, Utility(x, w, params.alpha));
    log_weight.push_back(params.epsilon * u / (2.0 * sensitivity));
  }
  return PmfFromLogWeights("brute_force", std::move(words),
                           std::move(log_weight));
}

absl::StatusOr<Pmf> MechanismPmf(const Alphabet& alphabet, const Word& x,
                                 std::span<const Word> language,
                                 const MechanismParams& params,
                                 const TransitionSystem* ts) {
  AnalyticPmf analytic;
  if (ts == nullptr) {
    LEVPRIV_ASSIGN_OR_RETURN(WordPrivatizer privatizer,
                             WordPrivatizer::Create(alphabet, x, params));
    LEVPRIV_ASSIGN_OR_RETURN(analytic, privatizer.mechanism().Pmf());
  } else {
    LEVPRIV_ASSIGN_OR_RETURN(RunPrivatizer privatizer,
                             RunPrivatizer::Create(*ts, x, params));
    LEVPRIV_ASSIGN_OR_RETURN(analytic, privatizer.mechanism().Pmf());
  }
  Pmf pmf;
  pmf.domain = "mechanism";
  pmf.words.assign(language.begin(), language.end());
  std::sort(pmf.words.begin(), pmf.words.end());
  for (const Word& w : pmf.words) {
    LEVPRIV_ASSIGN_OR_RETURN(std::size_t d, HammingDistance(x, w));
    pmf.log_prob.push_back(analytic.LogProbabilityAt(d));
    pmf.prob.push_back(analytic.ProbabilityAt(d));
  }
  return pmf;
}

std::vector<std::pair<std::size_t, std::size_t>> AdjacentPairs(
    std::span<const Word> language, std::size_t k) {
  std::vector<std::pair<std::size_t, std::size_t>> pairs;
  for (std::size_t i = 0; i < language.size(); ++i) {
    for (std::size_t j = 0; j < language.size(); ++j) {
      absl::StatusOr<std::size_t> d = HammingDistance(language[i], language[j]);
      if (d.ok() && *d <= k) pairs.emplace_back(i, j);
    }
  }
  return pairs;
}

double DpReport::max_ratio() const { return std::exp(max_log_ratio); }

std::string DpReport::ToJson(const Alphabet& alphabet, int indent) const {
  auto number = [](double v) {
    return std::isfinite(v) ? nlohmann::json(v)
                            : nlohmann::json(v > 0 ? "inf" : "-inf");
  };
  nlohmann::json doc = {
      {"epsilon", epsilon},
      {"k", k},
      {"alpha", alpha},
      {"mode", mode},
      {"language_size", language_size},
      {"pairs_checked", pairs_checked},
      {"max_log_ratio", number(max_log_ratio)},
      {"bound_log_ratio", bound_log_ratio},
      {"pass", pass},
      {"check", "singleton outputs; sufficient for finite output spaces"},
  };
  if (witness.has_value()) {
    doc["witness"] = {{"w1", alphabet.Decode(witness->w1)},
                      {"w2", alphabet.Decode(witness->w2)},
                      {"v", alphabet.Decode(witness->v)}};
  } else {
    doc["witness"] = nullptr;
  }
  return doc.dump(indent);
}

absl::StatusOr<DpReport> VerifyDp(const PmfFamily& family,
                                  std::span<const Word> language,
                                  std::size_t k, double epsilon) {
  std::vector<Word> words(language.begin(), language.end());
  std::sort(words.begin(), words.end());
  std::vector<Pmf> pmfs;
  pmfs.reserve(words.size());
  for (const Word& w : words) {
    LEVPRIV_ASSIGN_OR_RETURN(Pmf pmf, family(w));
    pmfs.push_back(std::move(pmf));
  }
  std::vector<std::vector<double>> log_p(words.size());
  for (std::size_t i = 0; i < words.size(); ++i) {
    for (const Word& v : words) log_p[i].push_back(pmfs[i].LogProbabilityOf(v));
  }

  DpReport report;
  report.epsilon = epsilon;
  report.k = k;
  report.language_size = words.size();
  report.bound_log_ratio = epsilon + std::log1p(1e-9);
  report.max_log_ratio = kNegInf;
  for (const auto& [i, j] : AdjacentPairs(words, k)) {
    ++report.pairs_checked;
    for (std::size_t v = 0; v < words.size(); ++v) {
      const double a = log_p[i][v];
      const double b = log_p[j][v];
      if (a == kNegInf) continue;
      const double ratio = b == kNegInf
                               ? std::numeric_limits<double>::infinity()
                               : a - b;
      if (ratio > report.max_log_ratio) {
        report.max_log_ratio = ratio;
        report.witness = DpReport::Witness{words[i], words[j], words[v]};
      }
    }
  }
  report.pass = report.max_log_ratio <= report.bound_log_ratio;
  return report;
}

absl::StatusOr<double> TotalVariation(const Pmf& p, const Pmf& q) {
  if (p.words != q.words) {
    return MakeError(ErrorKind::kDomainMismatch,
                     "pmfs are over different word lists");
  }
  double sum = 0;
  for (std::size_t i = 0; i < p.prob.size(); ++i) {
    sum += std::abs(p.prob[i] - q.prob[i]);
  }
  return sum / 2;
}

absl::StatusOr<Pmf> EmpiricalPmf(
    const std::function<absl::StatusOr<Word>(Rng&)>& sampler,
    std::size_t trials, Rng& rng, std::span<const Word> domain) {
  Pmf pmf;
  pmf.domain = "empirical";
  pmf.words.assign(domain.begin(), domain.end());
  std::sort(pmf.words.begin(), pmf.words.end());
  std::vector<std::size_t> hits(pmf.words.size(), 0);
  for (std::size_t t = 0; t < trials; ++t) {
    LEVPRIV_ASSIGN_OR_RETURN(Word w, sampler(rng));
    std::optional<std::size_t> i = pmf.IndexOf(w);
    if (!i.has_value()) {
      return MakeError(ErrorKind::kDomainMismatch,
                       "sampler produced a word outside the domain");
    }
    ++hits[*i];
  }
  for (std::size_t h : hits) {
    const double p = trials == 0 ? 0.0 : static_cast<double>(h) / trials;
    pmf.prob.push_back(p);
    pmf.log_prob.push_back(p > 0 ? std::log(p) : kNegInf);
  }
  return pmf;
}

}  // namespace levpriv
