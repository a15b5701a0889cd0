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

// Acceptance suite: one PASS/FAIL line per criterion, exit status 0 iff all
// criteria pass.

#include <array>
#include <chrono>
#include <cmath>
#include <cstdio>
#include <filesystem>
#include <fstream>
#include <functional>
#include <map>
#include <random>
#include <string>
#include <vector>

#include "levpriv/levenshtein_automaton.h"
#include "levpriv/mechanism.h"
#include "levpriv/oracle.h"
#include "levpriv/policy.h"
#include "levpriv/transition_system.h"
#include "levpriv/words.h"

namespace levpriv {
namespace {

using Clock = std::chrono::steady_clock;

double Seconds(Clock::time_point since) {
  return std::chrono::duration<double>(Clock::now() - since).count();
}

struct Outcome {
  bool pass = false;
  std::string detail;
};

// ---- independent helpers --------------------------------------------------

std::vector<Word> AllWords(const Alphabet& a, std::size_t n) {
  std::vector<Word> out;
  std::size_t total = 1;
  for (std::size_t i = 0; i < n; ++i) total *= a.size();
  for (std::size_t code = 0; code < total; ++code) {
    Word w{a.id(), std::vector<Symbol>(n)};
    std::size_t c = code;
    for (std::size_t i = n; i-- > 0;) {
      w.letters[i] = static_cast<Symbol>(c % a.size());
      c /= a.size();
    }
    out.push_back(std::move(w));
  }
  return out;
}

std::size_t Hamming(const Word& a, const Word& b) {
  std::size_t d = 0;
  for (std::size_t i = 0; i < a.size(); ++i) d += a.letters[i] != b.letters[i];
  return d;
}

std::size_t EditDistance(const std::vector<Symbol>& a, const std::vector<Symbol>& b) {
  std::vector<std::vector<std::size_t>> d(a.size() + 1,
                                          std::vector<std::size_t>(b.size() + 1));
  for (std::size_t i = 0; i <= a.size(); ++i) d[i][0] = i;
  for (std::size_t j = 0; j <= b.size(); ++j) d[0][j] = j;
  for (std::size_t i = 1; i <= a.size(); ++i) {
    for (std::size_t j = 1; j <= b.size(); ++j) {
      d[i][j] = std::min({d[i - 1][j] + 1, d[i][j - 1] + 1,
                          d[i - 1][j - 1] + (a[i - 1] != b[j - 1])});
    }
  }
  return d[a.size()][b.size()];
}

BigNat Binomial(std::size_t n, std::size_t r) {
  BigNat out = 1;
  for (std::size_t i = 1; i <= r; ++i) {
    out *= n - r + i;
    out /= i;
  }
  return out;
}

BigNat Pow(std::size_t base, std::size_t exp) {
  BigNat out = 1;
  for (std::size_t i = 0; i < exp; ++i) out *= base;
  return out;
}

MechanismParams Params(double epsilon, std::size_t k, double alpha = 1.0,
                       Weighting weighting = Weighting::kExact) {
  MechanismParams p;
  p.epsilon = epsilon;
  p.k = k;
  p.alpha = alpha;
  p.weighting = weighting;
  return p;
}

// ---- criteria -------------------------------------------------------------

Outcome OracleEquivalence() {
  double worst = 0;
  std::size_t cases = 0;
  for (std::size_t sigma = 2; sigma <= 4; ++sigma) {
    Alphabet a = *Alphabet::FromDistinctCharacters(std::string("abcd", sigma));
    for (std::size_t n = 1; n <= 4; ++n) {
      std::vector<Word> language = AllWords(a, n);
      for (const Word& x : language) {
        for (std::size_t k = 1; k <= n; ++k) {
          for (double alpha : {0.5, 1.0, 2.0}) {
            for (double eps : {0.0, 0.1, 1.0, 10.0}) {
              MechanismParams p = Params(eps, k, alpha);
              auto mech = MechanismPmf(a, x, language, p);
              auto brute = BruteForcePmf(x, language, p);
              if (!mech.ok() || !brute.ok()) {
                return {false, "pmf error: " + std::string(mech.ok()
                                                   ? brute.status().message()
                                                   : mech.status().message())};
              }
              for (std::size_t i = 0; i < language.size(); ++i) {
                worst = std::max(worst, std::abs(mech->prob[i] - brute->prob[i]));
              }
              ++cases;
            }
          }
        }
      }
    }
  }
  char buf[160];
  std::snprintf(buf, sizeof buf, "%zu cases, max |analytic - brute| = %.3g (tol 1e-12)",
                cases, worst);
  return {worst <= 1e-12, buf};
}

absl::StatusOr<DpReport> Verify(const Alphabet& a, std::span<const Word> language,
                                const MechanismParams& p,
                                const TransitionSystem* ts = nullptr) {
  PmfFamily family = [&](const Word& x) {
    return MechanismPmf(a, x, language, p, ts);
  };
  return VerifyDp(family, language, p.k, p.epsilon);
}

Outcome ExactDp() {
  Alphabet abc = *Alphabet::FromDistinctCharacters("abc");
  std::vector<Word> language = AllWords(abc, 3);
  std::string detail;
  bool pass = true;
  for (double eps : {0.1, 1.0, 10.0}) {
    auto r = Verify(abc, language, Params(eps, 2));
    if (!r.ok()) return {false, std::string(r.status().message())};
    const bool ok = r->max_ratio() <= std::exp(eps) * (1 + 1e-9) &&
                    r->pairs_checked == 513;
    pass &= ok;
    char buf[96];
    std::snprintf(buf, sizeof buf, "eps=%g ratio=%.6g<=%.6g; ", eps,
                  r->max_ratio(), std::exp(eps));
    detail += buf;
  }
  // Three-state system over {a,b,c}.
  auto ts = TransitionSystem::Create(
      {"A", "B", "C"}, "A", abc,
      std::vector<NamedTransition>{{"A", "a", "B"}, {"A", "b", "A"},
                                   {"B", "b", "C"}, {"B", "c", "A"},
                                   {"C", "c", "A"}, {"C", "a", "B"}});
  if (!ts.ok()) return {false, std::string(ts.status().message())};
  auto plans = EnumerateLanguage(abc, 3, &*ts);
  for (double eps : {0.1, 1.0, 10.0}) {
    auto r = Verify(abc, *plans, Params(eps, 2), &*ts);
    if (!r.ok()) return {false, std::string(r.status().message())};
    pass &= r->max_ratio() <= std::exp(eps) * (1 + 1e-9);
  }
  detail += "3-state TS language of " + std::to_string(plans->size()) +
            " plans: " + (pass ? "ok" : "violated");
  return {pass, detail};
}

Outcome PaperLiteralCounterexample() {
  Alphabet abc = *Alphabet::FromDistinctCharacters("abc");
  std::vector<Word> language = AllWords(abc, 3);
  auto r = Verify(abc, language, Params(0.01, 1, 1.0, Weighting::kPaperLiteral));
  if (!r.ok()) return {false, std::string(r.status().message())};
  char buf[160];
  std::snprintf(buf, sizeof buf,
                "verify pass=%s, max ratio %.6f (need >= 5; 6*e^0.005 = %.6f)",
                r->pass ? "true" : "false", r->max_ratio(), 6 * std::exp(0.005));
  return {!r->pass && r->max_ratio() >= 5, buf};
}

Outcome PathCountCombinatorics() {
  std::size_t checks = 0;
  for (std::size_t sigma = 1; sigma <= 4; ++sigma) {
    Alphabet a = *Alphabet::FromDistinctCharacters(std::string("abcd", sigma));
    for (std::size_t n = 1; n <= 6; ++n) {
      std::vector<Word> words = AllWords(a, n);
      const std::size_t stride = std::max<std::size_t>(1, words.size() / 40);
      for (std::size_t wi = 0; wi < words.size(); wi += stride) {
        auto m = BuildSubstitutionAutomaton(a, words[wi], n);
        if (!m.ok()) return {false, std::string(m.status().message())};
        BigNat sum = 0;
        for (std::size_t l = 0; l <= n; ++l) {
          auto r = RestrictToDistance(*m, l);
          if (!r.ok()) return {false, std::string(r.status().message())};
          BigNat total = 0;
          if (!r->empty()) total = CountPaths(*r)->total;
          if (total != Binomial(n, l) * Pow(sigma - 1, l)) {
            return {false, "count mismatch at |S|=" + std::to_string(sigma) +
                               " n=" + std::to_string(n) + " l=" + std::to_string(l)};
          }
          sum += total;
          ++checks;
        }
        if (sum != Pow(sigma, n)) return {false, "class sizes do not sum to |S|^n"};
      }
    }
  }
  return {true, std::to_string(checks) + " exact class counts match C(n,l)(|S|-1)^l"};
}

Outcome Uniformity() {
  Alphabet abc = *Alphabet::FromDistinctCharacters("abc");
  Word x = *abc.Encode("abc");
  auto r = RestrictToDistance(*BuildSubstitutionAutomaton(abc, x, 2), 2);
  auto v = CountPaths(*r);
  auto policy = SynthesizePolicy(*r, *v);
  std::size_t exact = 0, accepted = 0;
  for (const Word& w : AllWords(abc, 3)) {
    auto pr = WordProbability(*r, *policy, w);
    if (Hamming(w, x) != 2) continue;
    ++accepted;
    exact += *pr == BigRational(1, 12);
  }
  Rng rng = MakeStream(20190710);
  std::map<Word, std::size_t> hits;
  constexpr std::size_t kTrials = 120000;
  for (std::size_t i = 0; i < kTrials; ++i) ++hits[*SampleWord(*r, *v, rng)];
  double tv = 0;
  for (const Word& w : AllWords(abc, 3)) {
    const double expected = Hamming(w, x) == 2 ? 1.0 / 12 : 0.0;
    tv += std::abs(static_cast<double>(hits[w]) / kTrials - expected);
  }
  tv /= 2;
  char buf[160];
  std::snprintf(buf, sizeof buf,
                "%zu/%zu words at exactly 1/12, V(q0)=%s, empirical TV %.4f (tol 0.01)",
                exact, accepted, v->total.str().c_str(), tv);
  return {exact == 12 && accepted == 12 && tv <= 0.01, buf};
}

Outcome FullNfa() {
  Alphabet ab = *Alphabet::FromDistinctCharacters("ab");
  std::size_t checks = 0;
  for (std::size_t n = 0; n <= 4; ++n) {
    for (const Word& x : AllWords(ab, n)) {
      for (std::size_t k = 0; k <= 2; ++k) {
        auto nfa = BuildFullLevenshteinNfa(ab, x, k);
        if (!nfa.ok()) return {false, std::string(nfa.status().message())};
        for (std::size_t len = 0; len <= n + k; ++len) {
          for (const Word& w : AllWords(ab, len)) {
            const bool expected = EditDistance(x.letters, w.letters) <= k;
            if (*nfa->Accepts(w) != expected) {
              return {false, "membership differs from edit distance"};
            }
            ++checks;
          }
        }
      }
    }
  }
  Alphabet letters = *Alphabet::FromDistinctCharacters("samplex");
  auto d = LevenshteinDistance(*letters.Encode("sample"), *letters.Encode("examples"));
  const bool fact = d.ok() && *d == 3;
  return {fact, std::to_string(checks) + " memberships agree; d(sample, examples) = " +
                    (d.ok() ? std::to_string(*d) : "error")};
}

Outcome ProductIntersection() {
  Alphabet abc = *Alphabet::FromDistinctCharacters("abc");
  std::mt19937 gen(2019);
  std::size_t checks = 0;
  constexpr int kInstances = 6;
  for (int inst = 0; inst < kInstances; ++inst) {
    const int num_states = 2 + inst % 3;
    std::vector<std::string> states;
    for (int s = 0; s < num_states; ++s) states.push_back("s" + std::to_string(s));
    std::map<std::pair<int, Symbol>, int> delta;
    std::vector<NamedTransition> arcs;
    for (int s = 0; s < num_states; ++s) {
      for (Symbol a = 0; a < 3; ++a) {
        if (gen() % 4 == 0) continue;
        const int to = static_cast<int>(gen() % num_states);
        delta[{s, a}] = to;
        arcs.push_back({states[s], abc.symbol(a), states[to]});
      }
    }
    auto ts = TransitionSystem::Create(states, "s0", abc, arcs);
    if (!ts.ok()) return {false, std::string(ts.status().message())};
    const std::size_t n = 2 + inst % 3;
    std::vector<Word> words = AllWords(abc, n);
    for (std::size_t xi = 0; xi < words.size(); xi += 5) {
      for (std::size_t k = 1; k <= n; ++k) {
        auto product = BuildProduct(*BuildSubstitutionAutomaton(abc, words[xi], k), *ts);
        if (!product.ok()) return {false, std::string(product.status().message())};
        for (const Word& w : words) {
          bool valid = true;
          int s = 0;
          for (Symbol a : w.letters) {
            auto it = delta.find({s, a});
            if (it == delta.end()) {
              valid = false;
              break;
            }
            s = it->second;
          }
          const bool expected = valid && Hamming(w, words[xi]) <= k;
          if (*product->Accepts(w) != expected) {
            return {false, "product membership mismatch"};
          }
          ++checks;
        }
      }
    }
  }
  return {true, std::to_string(kInstances) + " systems, " + std::to_string(checks) +
                    " memberships agree"};
}

Outcome LongWordDemo() {
  const std::string input = "american control conference 2019";
  Alphabet alphabet = *Alphabet::FromDistinctCharacters(input);
  Word x = *alphabet.Encode(input);
  const auto t0 = Clock::now();
  std::size_t drawn = 0;
  double literal_p0 = -1, exact_p0 = -1;
  std::size_t states = 0, edges = 0;
  for (Weighting mode : {Weighting::kExact, Weighting::kPaperLiteral}) {
    for (double eps : {10.0, 1.0, 0.1, 0.0}) {
      MechanismParams p = Params(eps, x.size(), 1.0, mode);
      auto priv = WordPrivatizer::Create(alphabet, x, p);
      if (!priv.ok()) return {false, std::string(priv.status().message())};
      states = priv->automaton().num_states();
      edges = priv->automaton().num_graph_edges();
      for (std::size_t i = 0; i < 5; ++i) {
        Rng rng = MakeStream(42, i);
        auto w = priv->Sample(rng);
        if (!w.ok() || w->size() != x.size()) return {false, "bad sample"};
        ++drawn;
      }
      if (eps == 10.0) {
        auto pmf = priv->mechanism().Pmf();
        (mode == Weighting::kExact ? exact_p0 : literal_p0) = pmf->ProbabilityAt(0);
      }
    }
  }
  const double elapsed = Seconds(t0);
  char buf[256];
  std::snprintf(buf, sizeof buf,
                "|S|=%zu, %zu samples in %.3f s (limit 5 s); paper_literal eps=10 "
                "Pr[x]=%.4f (need > 0.5), exact Pr[x]=%.3g; k=32 machine: %zu "
                "states, %zu edges",
                alphabet.size(), drawn, elapsed, literal_p0, exact_p0, states, edges);
  return {alphabet.size() == 16 && drawn == 40 && elapsed < 5.0 && literal_p0 > 0.5,
          buf};
}

Outcome GridWorldDemo() {
  TransitionSystem grid = MakeGridworld(15, 15, false);
  // Right along row 0 to column 7, then down column 7 to row 7.
  std::vector<std::string> path;
  for (int c = 1; c <= 7; ++c) path.push_back("s_0_" + std::to_string(c));
  for (int r = 1; r <= 7; ++r) path.push_back("s_" + std::to_string(r) + "_7");
  auto x = grid.actions().EncodeTokens(path);
  if (!x.ok() || x->size() != 14) return {false, "bad reference path"};
  double build = 0, sampling = 0;
  std::size_t bad = 0, product_states = 0;
  for (double eps : {0.01, 5.0}) {
    const auto t0 = Clock::now();
    auto priv = RunPrivatizer::Create(grid, *x, Params(eps, 14));
    build += Seconds(t0);
    if (!priv.ok()) return {false, std::string(priv.status().message())};
    product_states = priv->product().num_states();
    const auto t1 = Clock::now();
    std::vector<Word> samples;
    for (std::size_t i = 0; i < 100; ++i) {
      Rng rng = MakeStream(193, i);
      auto w = priv->Sample(rng);
      if (!w.ok()) return {false, std::string(w.status().message())};
      samples.push_back(std::move(*w));
    }
    sampling += Seconds(t1);
    for (const Word& w : samples) {
      if (!*IsValidPlan(grid, w) || Hamming(w, *x) > 14) ++bad;
    }
  }
  char buf[256];
  std::snprintf(buf, sizeof buf,
                "%zu states, product %zu states, build %.3f s (limit 20 s), "
                "200 samples %.3f s (limit 5 s), %zu invalid",
                grid.num_states(), product_states, build, sampling, bad);
  return {grid.num_states() == 225 && build < 20 && sampling < 5 && bad == 0, buf};
}

#ifdef LEVPRIV_CLI_PATH
std::optional<std::string> Capture(const std::string& command) {
  FILE* pipe = ::popen((command + " 2>/dev/null").c_str(), "r");
  if (pipe == nullptr) return std::nullopt;
  std::string out;
  std::array<char, 4096> buf;
  std::size_t got;
  while ((got = std::fread(buf.data(), 1, buf.size(), pipe)) > 0) out.append(buf.data(), got);
  const int status = ::pclose(pipe);
  if (status == -1 || !WIFEXITED(status)) return std::nullopt;
  const int code = WEXITSTATUS(status);
  if (code != 0 && code != 2) return std::nullopt;
  return out;
}
#endif

Outcome CliDeterminism() {
#ifndef LEVPRIV_CLI_PATH
  return {false, "CLI binary was not built"};
#else
  const std::string cli = LEVPRIV_CLI_PATH;
  const auto dir = std::filesystem::temp_directory_path() / "levpriv_acceptance";
  std::filesystem::create_directories(dir);
  const std::string grid = (dir / "grid.json").string();
  const std::string chain = (dir / "chain.json").string();
  std::ofstream(chain) << R"({"states":["A","B"],"initial":"A","actions":["a","b"],)"
                          R"("transitions":[{"from":"A","action":"b","to":"B"},)"
                          R"({"from":"B","action":"a","to":"A"}]})";
  auto g = Capture(cli + " gridworld --rows 15 --cols 15 --seed 7");
  if (!g.has_value()) return {false, "gridworld failed"};
  std::ofstream(grid) << *g;
  const std::string path =
      "'s_0_1 s_0_2 s_0_3 s_0_4 s_0_5 s_0_6 s_0_7 s_1_7 s_2_7 s_3_7 s_4_7 s_5_7 "
      "s_6_7 s_7_7'";
  const std::vector<std::string> commands = {
      "word --input 'american control conference 2019' --samples 5 --seed 42 --format json",
      "word --input 'american control conference 2019' --epsilon 10 --mode paper-literal "
      "--samples 5 --seed 42 --format json",
      "run --ts " + grid + " --run " + path + " --epsilon 5 --samples 20 --seed 42 --format json",
      "run --ts " + chain + " --run ba --samples 5 --seed 42 --format json",
      "automaton --input abc --k 2 --restrict 2 --policy --dump json --seed 42",
      "dist --input abc --k 2 --compare --seed 42 --format json",
      "verify --alphabet abc --n 3 --k 2 --epsilon 1 --seed 42 --format json",
      "verify --alphabet abc --n 3 --k 1 --epsilon 0.01 --mode paper-literal --seed 42",
      "gridworld --rows 15 --cols 15 --seed 42",
  };
  std::size_t identical = 0;
  std::string failures;
  for (const std::string& c : commands) {
    auto first = Capture(cli + " " + c);
    auto second = Capture(cli + " " + c);
    const bool ok = first.has_value() && second.has_value() && !first->empty() &&
                    *first == *second && first->front() == '{';
    identical += ok;
    if (!ok) failures += " [" + c.substr(0, c.find(' ')) + "]";
  }
  std::filesystem::remove_all(dir);
  std::string detail = std::to_string(identical) + "/" +
                       std::to_string(commands.size()) +
                       " commands byte-identical across two runs";
  if (!failures.empty()) detail += "; differing:" + failures;
  return {identical == commands.size(), detail};
#endif
}

}  // namespace
}  // namespace levpriv

int main() {
  using levpriv::Outcome;
  struct Criterion {
    int id;
    const char* name;
    std::function<Outcome()> run;
  };
  const std::vector<Criterion> criteria = {
      {1, "oracle equivalence", levpriv::OracleEquivalence},
      {2, "exact epsilon-DP verification", levpriv::ExactDp},
      {3, "paper-literal counterexample", levpriv::PaperLiteralCounterexample},
      {4, "path-count combinatorics", levpriv::PathCountCombinatorics},
      {5, "uniformity identity", levpriv::Uniformity},
      {6, "full-NFA membership", levpriv::FullNfa},
      {7, "product intersection", levpriv::ProductIntersection},
      {8, "32-letter word demo", levpriv::LongWordDemo},
      {9, "15x15 grid-world demo", levpriv::GridWorldDemo},
      {10, "CLI determinism", levpriv::CliDeterminism},
  };
  int failed = 0;
  for (const Criterion& c : criteria) {
    const auto t0 = levpriv::Clock::now();
    Outcome o = c.run();
    std::printf("%s  %2d  %-30s %s (%.2f s)\n", o.pass ? "PASS" : "FAIL", c.id,
                c.name, o.detail.c_str(), levpriv::Seconds(t0));
    std::fflush(stdout);
    failed += !o.pass;
  }
  std::printf("%zu/%zu criteria passed\n", criteria.size() - failed, criteria.size());
  return failed == 0 ? 0 : 1;
}
