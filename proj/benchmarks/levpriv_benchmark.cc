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

#include <string>
#include <vector>

#include "benchmark/benchmark.h"
#include "levpriv/levenshtein_automaton.h"
#include "levpriv/mechanism.h"
#include "levpriv/oracle.h"
#include "levpriv/policy.h"
#include "levpriv/transition_system.h"
#include "levpriv/words.h"

namespace levpriv {
namespace {

constexpr char kLongInput[] = "american control conference 2019";

Word Prefix(const Alphabet& a, std::size_t n) {
  return *a.Encode(std::string(kLongInput).substr(0, n));
}

void BM_BuildSubstitutionAutomaton(benchmark::State& state) {
  Alphabet a = *Alphabet::FromDistinctCharacters(kLongInput);
  const auto n = static_cast<std::size_t>(state.range(0));
  Word x = Prefix(a, n);
  for (auto _ : state) {
    benchmark::DoNotOptimize(BuildSubstitutionAutomaton(a, x, n));
  }
  state.SetComplexityN(state.range(0));
}
BENCHMARK(BM_BuildSubstitutionAutomaton)->RangeMultiplier(2)->Range(4, 32)->Complexity();

void BM_CountPaths(benchmark::State& state) {
  Alphabet a = *Alphabet::FromDistinctCharacters(kLongInput);
  const auto n = static_cast<std::size_t>(state.range(0));
  auto restricted = *RestrictToDistance(
      *BuildSubstitutionAutomaton(a, Prefix(a, n), n), n / 2);
  for (auto _ : state) benchmark::DoNotOptimize(CountPaths(restricted));
}
BENCHMARK(BM_CountPaths)->RangeMultiplier(2)->Range(4, 32);

void BM_WordPrivatizerCreate(benchmark::State& state) {
  Alphabet a = *Alphabet::FromDistinctCharacters(kLongInput);
  Word x = *a.Encode(kLongInput);
  MechanismParams p;
  p.epsilon = 1;
  p.k = x.size();
  for (auto _ : state) benchmark::DoNotOptimize(WordPrivatizer::Create(a, x, p));
}
BENCHMARK(BM_WordPrivatizerCreate)->Unit(benchmark::kMillisecond);

void BM_WordSample(benchmark::State& state) {
  Alphabet a = *Alphabet::FromDistinctCharacters(kLongInput);
  Word x = *a.Encode(kLongInput);
  MechanismParams p;
  p.epsilon = 1;
  p.k = x.size();
  auto priv = *WordPrivatizer::Create(a, x, p);
  Rng rng = MakeStream(1);
  for (auto _ : state) benchmark::DoNotOptimize(priv.Sample(rng));
}
BENCHMARK(BM_WordSample);

Word GridPath(const TransitionSystem& grid) {
  std::vector<std::string> path;
  for (int c = 1; c <= 7; ++c) path.push_back("s_0_" + std::to_string(c));
  for (int r = 1; r <= 7; ++r) path.push_back("s_" + std::to_string(r) + "_7");
  return *grid.actions().EncodeTokens(path);
}

void BM_GridRunPrivatizerCreate(benchmark::State& state) {
  TransitionSystem grid = MakeGridworld(15, 15, false);
  Word x = GridPath(grid);
  MechanismParams p;
  p.epsilon = 5;
  p.k = x.size();
  for (auto _ : state) benchmark::DoNotOptimize(RunPrivatizer::Create(grid, x, p));
}
BENCHMARK(BM_GridRunPrivatizerCreate)->Unit(benchmark::kMillisecond);

void BM_GridRunSample(benchmark::State& state) {
  TransitionSystem grid = MakeGridworld(15, 15, false);
  Word x = GridPath(grid);
  MechanismParams p;
  p.epsilon = 5;
  p.k = x.size();
  auto priv = *RunPrivatizer::Create(grid, x, p);
  Rng rng = MakeStream(2);
  for (auto _ : state) benchmark::DoNotOptimize(priv.Sample(rng));
}
BENCHMARK(BM_GridRunSample);

void BM_VerifyDp(benchmark::State& state) {
  Alphabet abc = *Alphabet::FromDistinctCharacters("abc");
  const auto n = static_cast<std::size_t>(state.range(0));
  auto language = *EnumerateLanguage(abc, n);
  MechanismParams p;
  p.k = 2;
  PmfFamily family = [&](const Word& x) {
    return MechanismPmf(abc, x, language, p);
  };
  for (auto _ : state) benchmark::DoNotOptimize(VerifyDp(family, language, 2, 1.0));
}
BENCHMARK(BM_VerifyDp)->DenseRange(2, 5)->Unit(benchmark::kMillisecond);

}  // namespace
}  // namespace levpriv

BENCHMARK_MAIN();
