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

#include "cli.h"

#include <algorithm>
#include <chrono>
#include <cstdlib>
#include <fstream>
#include <map>
#include <optional>
#include <sstream>
#include <thread>

#include "CLI11.hpp"
#include "fmt/format.h"
#include "json.hpp"
#include "levpriv/automaton_io.h"
#include "levpriv/levenshtein_automaton.h"
#include "levpriv/mechanism.h"
#include "levpriv/oracle.h"
#include "levpriv/policy.h"
#include "levpriv/random.h"
#include "levpriv/status.h"
#include "levpriv/transition_system.h"
#include "levpriv/version.h"
#include "levpriv/words.h"

namespace levpriv::cli {
namespace {

using Json = nlohmann::ordered_json;
using Clock = std::chrono::steady_clock;

// Flags shared by several subcommands.
struct Shared {
  std::optional<std::uint64_t> seed;
  std::string format;
  std::string mode = "exact";
  std::string support = "full";
  double epsilon = 1.0;
  double alpha = 1.0;
  std::optional<std::size_t> k;
  std::string out;
};

struct Io {
  std::ostream& out;
  std::ostream& err;
};

double Seconds(Clock::time_point since) {
  return std::chrono::duration<double>(Clock::now() - since).count();
}

std::string BigString(const BigNat& n) { return n.str(); }

void AddOut(CLI::App* app, Shared& s) {
  app->add_option("--out", s.out, "Write the result to this file");
}

void AddSeed(CLI::App* app, Shared& s) {
  app->add_option("--seed", s.seed,
                  "64-bit seed; drawn from the OS and echoed when omitted");
}

void AddFormat(CLI::App* app, Shared& s, std::vector<std::string> choices) {
  s.format = choices.front();
  app->add_option("--format", s.format, "Output format")
      ->check(CLI::IsMember(std::move(choices)))
      ->capture_default_str();
}

void AddMechanism(CLI::App* app, Shared& s) {
  app->add_option("--epsilon", s.epsilon, "Privacy parameter")
      ->check(CLI::NonNegativeNumber)
      ->capture_default_str();
  app->add_option("--alpha", s.alpha, "Utility offset")
      ->check(CLI::PositiveNumber)
      ->capture_default_str();
  app->add_option("--k", s.k, "Adjacency radius (default: input length)")
      ->check(CLI::PositiveNumber);
  app->add_option("--mode", s.mode, "Distance weighting")
      ->check(CLI::IsMember({"exact", "paper-literal", "paper_literal"}))
      ->capture_default_str();
  app->add_option("--support", s.support, "Candidate outputs")
      ->check(CLI::IsMember({"full", "within-k", "within_k"}))
      ->capture_default_str();
}

absl::StatusOr<MechanismParams> ParamsFor(const Shared& s,
                                          std::size_t word_len) {
  MechanismParams p;
  p.epsilon = s.epsilon;
  p.alpha = s.alpha;
  p.k = s.k.value_or(word_len);
  LEVPRIV_ASSIGN_OR_RETURN(p.weighting, ParseWeighting(s.mode));
  LEVPRIV_ASSIGN_OR_RETURN(p.support, ParseSupport(s.support));
  LEVPRIV_RETURN_IF_ERROR(p.Validate());
  return p;
}

Json ParamsJson(const MechanismParams& p) {
  return Json{{"epsilon", p.epsilon},
              {"alpha", p.alpha},
              {"k", p.k},
              {"mode", WeightingName(p.weighting)},
              {"support", SupportName(p.support)}};
}

Json Metadata(std::string_view command, std::uint64_t seed,
              const MechanismParams* params) {
  Json meta{{"tool", "levpriv"},
            {"version", Version()},
            {"command", command},
            {"seed", seed}};
  if (params != nullptr) meta["params"] = ParamsJson(*params);
  return meta;
}

std::string MetadataComment(const Json& meta, std::string_view prefix) {
  std::string line = fmt::format("{}levpriv {} {} seed={}", prefix,
                                 meta["version"].get<std::string>(),
                                 meta["command"].get<std::string>(),
                                 meta["seed"].get<std::uint64_t>());
  if (meta.contains("params")) {
    for (const auto& [key, value] : meta["params"].items()) {
      line += fmt::format(" {}={}", key,
                          value.is_string() ? value.get<std::string>()
                                            : value.dump());
    }
  }
  return line + "\n";
}

void WarnIfNotPrivate(const MechanismParams& p, Io& io) {
  if (p.weighting == Weighting::kPaperLiteral) {
    io.err << "warning: paper_literal weighting ignores class sizes and is "
              "not epsilon-differentially private\n";
  }
  if (p.support == Support::kWithinK) {
    io.err << "warning: within_k support is only epsilon-differentially "
              "private when k >= the input length\n";
  }
}

absl::StatusOr<std::string> ReadFile(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) return absl::NotFoundError(fmt::format("cannot open '{}'", path));
  std::ostringstream buffer;
  buffer << in.rdbuf();
  return buffer.str();
}

absl::Status WriteFile(const std::string& path, const std::string& text) {
  std::ofstream out(path, std::ios::binary);
  if (!out) {
    return absl::PermissionDeniedError(
        fmt::format("cannot write '{}'", path));
  }
  out << text;
  return absl::OkStatus();
}

absl::Status Emit(const Shared& s, const std::string& text, Io& io) {
  if (s.out.empty()) {
    io.out << text;
    return absl::OkStatus();
  }
  LEVPRIV_RETURN_IF_ERROR(WriteFile(s.out, text));
  io.err << "wrote " << s.out << "\n";
  return absl::OkStatus();
}

// Draw i uses the stream (seed, i), so the output does not depend on how the
// draws are spread over threads.
absl::StatusOr<std::vector<ExponentialMechanism::Draw>> DrawSamples(
    const ExponentialMechanism& mechanism, std::uint64_t seed,
    std::size_t count) {
  std::vector<absl::StatusOr<ExponentialMechanism::Draw>> draws(
      count, absl::UnknownError("not drawn"));
  const std::size_t workers = std::clamp<std::size_t>(
      std::thread::hardware_concurrency(), 1, std::max<std::size_t>(count / 32, 1));
  auto work = [&](std::size_t first) {
    for (std::size_t i = first; i < count; i += workers) {
      Rng rng = MakeStream(seed, i);
      draws[i] = mechanism.Sample(rng);
    }
  };
  std::vector<std::thread> threads;
  for (std::size_t w = 1; w < workers; ++w) threads.emplace_back(work, w);
  work(0);
  for (std::thread& t : threads) t.join();
  std::vector<ExponentialMechanism::Draw> out;
  out.reserve(count);
  for (auto& d : draws) {
    LEVPRIV_RETURN_IF_ERROR(d.status());
    out.push_back(std::move(*d));
  }
  return out;
}

Json DistributionJson(const DistanceDistribution& d) {
  Json rows = Json::array();
  for (std::size_t i = 0; i < d.support.size(); ++i) {
    rows.push_back({{"distance", d.support[i]},
                    {"count", BigString(d.counts[i])},
                    {"log_weight", d.log_weight[i]},
                    {"prob", d.prob[i]}});
  }
  return rows;
}

Json HistogramJson(const DistanceDistribution& d,
                   const std::vector<ExponentialMechanism::Draw>& draws) {
  std::map<std::size_t, std::size_t> hits;
  for (const auto& draw : draws) ++hits[draw.distance];
  Json rows = Json::array();
  for (std::size_t l : d.support) {
    rows.push_back({{"distance", l}, {"samples", hits[l]}});
  }
  return rows;
}

// Empty `path` means no system.
absl::StatusOr<std::optional<TransitionSystem>> LoadSystem(
    const std::string& path) {
  if (path.empty()) return std::optional<TransitionSystem>();
  LEVPRIV_ASSIGN_OR_RETURN(std::string text, ReadFile(path));
  LEVPRIV_ASSIGN_OR_RETURN(TransitionSystem ts, ParseTransitionSystem(text));
  return std::optional<TransitionSystem>(std::move(ts));
}

absl::StatusOr<Alphabet> AlphabetFor(const std::string& spec,
                                     const std::string& input) {
  if (!spec.empty()) return Alphabet::Parse(spec);
  return Alphabet::FromDistinctCharacters(input);
}

// ---- word -----------------------------------------------------------------

struct WordArgs {
  std::string input;
  std::string alphabet;
  std::size_t samples = 1;
};

absl::StatusOr<int> CmdWord(const Shared& s, const WordArgs& a, Io& io) {
  LEVPRIV_ASSIGN_OR_RETURN(Alphabet alphabet, AlphabetFor(a.alphabet, a.input));
  LEVPRIV_ASSIGN_OR_RETURN(Word x, alphabet.Encode(a.input));
  LEVPRIV_ASSIGN_OR_RETURN(MechanismParams params, ParamsFor(s, x.size()));
  WarnIfNotPrivate(params, io);
  const std::uint64_t seed = s.seed.value_or(EntropySeed());

  const auto t0 = Clock::now();
  LEVPRIV_ASSIGN_OR_RETURN(WordPrivatizer privatizer,
                           WordPrivatizer::Create(alphabet, x, params));
  const double build = Seconds(t0);
  const auto t1 = Clock::now();
  LEVPRIV_ASSIGN_OR_RETURN(
      auto draws, DrawSamples(privatizer.mechanism(), seed, a.samples));
  const double sampling = Seconds(t1);
  io.err << fmt::format("timing: build={:.3f}s sampling={:.3f}s samples={}\n",
                        build, sampling, a.samples);

  const DistanceDistribution& dist = privatizer.mechanism().distribution();
  const Json meta = Metadata("word", seed, &params);
  std::string text;
  if (s.format == "json") {
    Json samples = Json::array();
    for (std::size_t i = 0; i < draws.size(); ++i) {
      samples.push_back({{"index", i},
                         {"distance", draws[i].distance},
                         {"output", alphabet.Decode(draws[i].word)}});
    }
    const LayeredAutomaton& m = privatizer.automaton();
    Json doc{{"metadata", meta},
             {"input", a.input},
             {"alphabet", alphabet.symbols()},
             {"automaton",
              {{"states", m.num_states()},
               {"transitions", m.num_transitions()},
               {"graph_edges", m.num_graph_edges()}}},
             {"distribution", DistributionJson(dist)},
             {"samples", std::move(samples)},
             {"histogram", HistogramJson(dist, draws)}};
    text = doc.dump(2) + "\n";
  } else {
    text = MetadataComment(meta, "# ");
    for (const auto& draw : draws) text += alphabet.Decode(draw.word) + "\n";
  }
  LEVPRIV_RETURN_IF_ERROR(Emit(s, text, io));
  return kExitOk;
}

// ---- run ------------------------------------------------------------------

struct RunArgs {
  std::string ts;
  std::string run;
  std::size_t samples = 1;
  bool allow_invalid = false;
  std::string svg;
};

// Grid cells visited by a plan, starting at the initial state; nullopt when
// some state is not named s_<row>_<col>.
std::optional<std::vector<std::pair<std::size_t, std::size_t>>> CellsOf(
    const TransitionSystem& ts, const Word& plan) {
  absl::StatusOr<std::optional<std::vector<TsState>>> run = RunOfPlan(ts, plan);
  if (!run.ok() || !run->has_value()) return std::nullopt;
  std::vector<std::pair<std::size_t, std::size_t>> cells;
  for (TsState s : **run) {
    auto cell = GridCell(ts.state_name(s));
    if (!cell.has_value()) return std::nullopt;
    cells.push_back(*cell);
  }
  return cells;
}

absl::StatusOr<std::string> RenderSvg(
    const TransitionSystem& ts, const Word& input,
    const std::vector<ExponentialMechanism::Draw>& draws) {
  std::size_t rows = 0, cols = 0;
  for (const std::string& name : ts.state_names()) {
    auto cell = GridCell(name);
    if (!cell.has_value()) {
      return MakeError(ErrorKind::kInvalidParams,
                       "SVG rendering needs states named s_<row>_<col>");
    }
    rows = std::max(rows, cell->first + 1);
    cols = std::max(cols, cell->second + 1);
  }
  constexpr int kCell = 32;
  auto point = [](std::pair<std::size_t, std::size_t> c) {
    return fmt::format("{},{}", c.second * kCell + kCell / 2,
                       c.first * kCell + kCell / 2);
  };
  auto polyline = [&](const Word& plan, std::string_view style) {
    auto cells = CellsOf(ts, plan);
    if (!cells.has_value()) return std::string();
    std::vector<std::string> points;
    for (const auto& c : *cells) points.push_back(point(c));
    return fmt::format("  <polyline points=\"{}\" fill=\"none\" {}/>\n",
                       fmt::join(points, " "), style);
  };
  std::string svg = fmt::format(
      "<svg xmlns=\"http://www.w3.org/2000/svg\" width=\"{}\" height=\"{}\">\n",
      cols * kCell, rows * kCell);
  for (std::size_t r = 0; r < rows; ++r) {
    for (std::size_t c = 0; c < cols; ++c) {
      svg += fmt::format(
          "  <rect x=\"{}\" y=\"{}\" width=\"{}\" height=\"{}\" fill=\"white\" "
          "stroke=\"#ccc\"/>\n",
          c * kCell, r * kCell, kCell, kCell);
    }
  }
  for (const auto& draw : draws) {
    svg += polyline(draw.word,
                    "stroke=\"#1f77b4\" stroke-opacity=\"0.35\" stroke-width=\"2\"");
  }
  svg += polyline(input, "stroke=\"black\" stroke-width=\"4\"");
  svg += "</svg>\n";
  return svg;
}

absl::StatusOr<int> CmdRun(const Shared& s, const RunArgs& a, Io& io) {
  LEVPRIV_ASSIGN_OR_RETURN(std::string ts_text, ReadFile(a.ts));
  LEVPRIV_ASSIGN_OR_RETURN(TransitionSystem ts, ParseTransitionSystem(ts_text));
  LEVPRIV_ASSIGN_OR_RETURN(Word x, ts.actions().Encode(a.run));
  LEVPRIV_ASSIGN_OR_RETURN(MechanismParams params, ParamsFor(s, x.size()));
  WarnIfNotPrivate(params, io);
  const std::uint64_t seed = s.seed.value_or(EntropySeed());

  const auto t0 = Clock::now();
  LEVPRIV_ASSIGN_OR_RETURN(
      RunPrivatizer privatizer,
      RunPrivatizer::Create(ts, x, params, a.allow_invalid));
  const double build = Seconds(t0);
  const auto t1 = Clock::now();
  LEVPRIV_ASSIGN_OR_RETURN(
      auto draws, DrawSamples(privatizer.mechanism(), seed, a.samples));
  const double sampling = Seconds(t1);
  io.err << fmt::format(
      "timing: build={:.3f}s sampling={:.3f}s samples={} product_states={}\n",
      build, sampling, a.samples, privatizer.product().num_states());

  if (!a.svg.empty()) {
    LEVPRIV_ASSIGN_OR_RETURN(std::string svg, RenderSvg(ts, x, draws));
    LEVPRIV_RETURN_IF_ERROR(WriteFile(a.svg, svg));
    io.err << "wrote " << a.svg << "\n";
  }

  const Alphabet& actions = ts.actions();
  auto tokens = [&](const Word& w) {
    std::vector<std::string> out;
    for (Symbol sym : w.letters) out.push_back(actions.symbol(sym));
    return out;
  };
  const Json meta = Metadata("run", seed, &params);
  std::string text;
  if (s.format == "json") {
    Json samples = Json::array();
    for (std::size_t i = 0; i < draws.size(); ++i) {
      Json entry{{"index", i},
                 {"distance", draws[i].distance},
                 {"plan", tokens(draws[i].word)}};
      if (auto cells = CellsOf(ts, draws[i].word)) {
        Json path = Json::array();
        for (const auto& [r, c] : *cells) path.push_back({r, c});
        entry["cells"] = std::move(path);
      }
      samples.push_back(std::move(entry));
    }
    Json doc{{"metadata", meta},
             {"transition_system",
              {{"states", ts.num_states()},
               {"transitions", ts.num_transitions()},
               {"initial", ts.state_name(ts.initial())}}},
             {"input", tokens(x)},
             {"product",
              {{"levenshtein_states", privatizer.levenshtein().num_states()},
               {"states", privatizer.product().num_states()},
               {"transitions", privatizer.product().num_transitions()}}},
             {"distribution",
              DistributionJson(privatizer.mechanism().distribution())},
             {"samples", std::move(samples)}};
    text = doc.dump(2) + "\n";
  } else {
    text = MetadataComment(meta, "# ");
    for (const auto& draw : draws) {
      text += fmt::format("{}\n", fmt::join(tokens(draw.word), " "));
    }
  }
  LEVPRIV_RETURN_IF_ERROR(Emit(s, text, io));
  return kExitOk;
}

// ---- automaton ------------------------------------------------------------

struct AutomatonArgs {
  std::string input;
  std::string alphabet;
  std::string ts;
  std::optional<std::size_t> restrict_to;
  std::string dump = "dot";
  bool policy = false;
  bool nfa = false;
};

absl::StatusOr<int> CmdAutomaton(const Shared& s, const AutomatonArgs& a,
                                 Io& io) {
  LEVPRIV_ASSIGN_OR_RETURN(std::optional<TransitionSystem> ts,
                           LoadSystem(a.ts));
  LEVPRIV_ASSIGN_OR_RETURN(
      Alphabet alphabet, ts.has_value()
                             ? absl::StatusOr<Alphabet>(ts->actions())
                             : AlphabetFor(a.alphabet, a.input));
  LEVPRIV_ASSIGN_OR_RETURN(Word x, alphabet.Encode(a.input));
  const std::size_t k = s.k.value_or(x.size());
  const std::uint64_t seed = s.seed.value_or(EntropySeed());
  Json meta = Metadata("automaton", seed, nullptr);
  meta["params"] = Json{{"k", k}};
  if (a.restrict_to.has_value()) meta["params"]["restrict"] = *a.restrict_to;

  if (a.nfa) {
    if (a.dump != "dot") {
      return MakeError(ErrorKind::kInvalidParams, "--nfa supports --dump dot only");
    }
    LEVPRIV_ASSIGN_OR_RETURN(EditNfa nfa,
                             BuildFullLevenshteinNfa(alphabet, x, k));
    std::string text = MetadataComment(meta, "// ");
    text += fmt::format("// states: {}\n// transitions: {}\n", nfa.num_states(),
                        nfa.edges().size());
    text += ToDot(nfa);
    LEVPRIV_RETURN_IF_ERROR(Emit(s, text, io));
    return kExitOk;
  }

  const auto t0 = Clock::now();
  LEVPRIV_ASSIGN_OR_RETURN(LayeredAutomaton machine,
                           BuildSubstitutionAutomaton(alphabet, x, k));
  if (ts.has_value()) {
    LEVPRIV_ASSIGN_OR_RETURN(machine, BuildProduct(machine, *ts));
  }
  if (a.restrict_to.has_value()) {
    LEVPRIV_ASSIGN_OR_RETURN(machine, RestrictToDistance(machine, *a.restrict_to));
  }
  io.err << fmt::format("timing: build={:.3f}s\n", Seconds(t0));
  if (machine.empty()) io.err << "notice: the machine is empty\n";

  std::optional<PathCounts> counts;
  std::optional<Policy> policy;
  if (!machine.empty() && (a.restrict_to.has_value() || a.policy)) {
    LEVPRIV_ASSIGN_OR_RETURN(counts, CountPaths(machine));
  }
  if (counts.has_value() && a.policy) {
    LEVPRIV_ASSIGN_OR_RETURN(policy, SynthesizePolicy(machine, *counts));
  }

  std::string text;
  if (a.dump == "json") {
    Json doc{{"metadata", meta},
             {"counts",
              {{"states", machine.num_states()},
               {"transitions", machine.num_transitions()},
               {"graph_edges", machine.num_graph_edges()}}},
             {"empty", machine.empty()},
             {"automaton", Json::parse(ToJson(machine))}};
    if (counts.has_value()) {
      Json v = Json::array();
      for (const BigNat& c : counts->counts) v.push_back(BigString(c));
      doc["path_counts"] = std::move(v);
    }
    if (policy.has_value()) doc["policy"] = Json::parse(policy->ToJson(alphabet));
    text = doc.dump(2) + "\n";
  } else {
    DotOptions options;
    if (counts.has_value()) {
      options.state_note = [&](StateId q) {
        return "V=" + BigString(counts->counts[q]);
      };
    }
    if (policy.has_value()) {
      options.edge_note = [&](StateId q, const Edge& e) {
        for (const Policy::Choice& c : policy->states[q].choices) {
          if (c.symbol == e.symbol) {
            return fmt::format("{}/{}", BigString(c.numerator),
                               BigString(policy->states[q].denominator));
          }
        }
        return std::string();
      };
    }
    if (ts.has_value()) {
      options.extra_name = [&](std::uint32_t s) { return ts->state_name(s); };
    }
    text = MetadataComment(meta, "// ");
    text += fmt::format("// states: {}\n// transitions: {}\n// graph_edges: {}\n",
                        machine.num_states(), machine.num_transitions(),
                        machine.num_graph_edges());
    if (machine.empty()) text += "// empty machine: no accepted word\n";
    text += ToDot(machine, options);
  }
  LEVPRIV_RETURN_IF_ERROR(Emit(s, text, io));
  return kExitOk;
}

// ---- dist -----------------------------------------------------------------

struct DistArgs {
  std::string input;
  std::string alphabet;
  bool compare = false;
};

absl::StatusOr<int> CmdDist(const Shared& s, const DistArgs& a, Io& io) {
  LEVPRIV_ASSIGN_OR_RETURN(Alphabet alphabet, AlphabetFor(a.alphabet, a.input));
  LEVPRIV_ASSIGN_OR_RETURN(Word x, alphabet.Encode(a.input));
  LEVPRIV_ASSIGN_OR_RETURN(MechanismParams params, ParamsFor(s, x.size()));
  WarnIfNotPrivate(params, io);
  const std::uint64_t seed = s.seed.value_or(EntropySeed());
  LEVPRIV_ASSIGN_OR_RETURN(WordPrivatizer privatizer,
                           WordPrivatizer::Create(alphabet, x, params));
  const DistanceDistribution& dist = privatizer.mechanism().distribution();

  MechanismParams exact = params, literal = params;
  exact.weighting = Weighting::kExact;
  literal.weighting = Weighting::kPaperLiteral;
  std::optional<DistanceDistribution> exact_dist, literal_dist;
  if (a.compare) {
    const auto& counts = privatizer.mechanism().class_counts();
    LEVPRIV_ASSIGN_OR_RETURN(exact_dist, MakeDistanceDistribution(counts, exact));
    LEVPRIV_ASSIGN_OR_RETURN(literal_dist,
                             MakeDistanceDistribution(counts, literal));
  }

  const Json meta = Metadata("dist", seed, &params);
  std::string text;
  if (s.format == "json") {
    Json doc{{"metadata", meta}, {"rows", DistributionJson(dist)}};
    if (a.compare) {
      Json rows = Json::array();
      for (std::size_t i = 0; i < dist.support.size(); ++i) {
        rows.push_back({{"distance", dist.support[i]},
                        {"count", BigString(dist.counts[i])},
                        {"prob_exact", exact_dist->prob[i]},
                        {"prob_paper_literal", literal_dist->prob[i]}});
      }
      doc["compare"] = std::move(rows);
    }
    text = doc.dump(2) + "\n";
  } else if (s.format == "csv") {
    text = MetadataComment(meta, "# ");
    if (a.compare) {
      text += "distance,count,prob_exact,prob_paper_literal\n";
      for (std::size_t i = 0; i < dist.support.size(); ++i) {
        text += fmt::format("{},{},{:.17g},{:.17g}\n", dist.support[i],
                            BigString(dist.counts[i]), exact_dist->prob[i],
                            literal_dist->prob[i]);
      }
    } else {
      text += dist.ToCsv();
    }
  } else {
    text = MetadataComment(meta, "# ");
    text += fmt::format("{:>8}  {:>24}  {:>12}", "distance", "count", "prob");
    if (a.compare) text += fmt::format("  {:>12}  {:>12}", "exact", "paper_literal");
    text += "\n";
    for (std::size_t i = 0; i < dist.support.size(); ++i) {
      text += fmt::format("{:>8}  {:>24}  {:>12.6g}", dist.support[i],
                          BigString(dist.counts[i]), dist.prob[i]);
      if (a.compare) {
        text += fmt::format("  {:>12.6g}  {:>12.6g}", exact_dist->prob[i],
                            literal_dist->prob[i]);
      }
      text += "\n";
    }
  }
  LEVPRIV_RETURN_IF_ERROR(Emit(s, text, io));
  return kExitOk;
}

// ---- verify ---------------------------------------------------------------

struct VerifyArgs {
  std::string alphabet;
  std::size_t n = 0;
  std::string ts;
};

absl::StatusOr<std::uint64_t> EnumerationCap() {
  const char* env = std::getenv("LEVPRIV_CAP");
  if (env == nullptr || *env == '\0') return kDefaultEnumerationCap;
  char* end = nullptr;
  const unsigned long long cap = std::strtoull(env, &end, 10);
  if (*end != '\0' || cap == 0) {
    return MakeError(ErrorKind::kInvalidParams,
                     fmt::format("LEVPRIV_CAP='{}' is not a positive integer", env));
  }
  return static_cast<std::uint64_t>(cap);
}

absl::StatusOr<int> CmdVerify(const Shared& s, const VerifyArgs& a, Io& io) {
  LEVPRIV_ASSIGN_OR_RETURN(std::optional<TransitionSystem> ts,
                           LoadSystem(a.ts));
  if (!ts.has_value() && a.alphabet.empty()) {
    return MakeError(ErrorKind::kInvalidParams, "verify needs --alphabet or --ts");
  }
  LEVPRIV_ASSIGN_OR_RETURN(
      Alphabet alphabet, ts.has_value()
                             ? absl::StatusOr<Alphabet>(ts->actions())
                             : Alphabet::Parse(a.alphabet));
  LEVPRIV_ASSIGN_OR_RETURN(MechanismParams params, ParamsFor(s, a.n));
  WarnIfNotPrivate(params, io);
  const std::uint64_t seed = s.seed.value_or(EntropySeed());
  LEVPRIV_ASSIGN_OR_RETURN(std::uint64_t cap, EnumerationCap());

  const auto t0 = Clock::now();
  const TransitionSystem* ts_ptr = ts.has_value() ? &*ts : nullptr;
  LEVPRIV_ASSIGN_OR_RETURN(std::vector<Word> language,
                           EnumerateLanguage(alphabet, a.n, ts_ptr, cap));
  if (language.empty()) {
    return MakeError(ErrorKind::kEmptyLanguage, "no word to verify");
  }
  PmfFamily family = [&](const Word& x) {
    return MechanismPmf(alphabet, x, language, params, ts_ptr);
  };
  LEVPRIV_ASSIGN_OR_RETURN(DpReport report,
                           VerifyDp(family, language, params.k, params.epsilon));
  report.alpha = params.alpha;
  report.mode = std::string(WeightingName(params.weighting));
  io.err << fmt::format("timing: verify={:.3f}s\n", Seconds(t0));

  const Json meta = Metadata("verify", seed, &params);
  std::string text;
  if (s.format == "json") {
    Json doc = Json::parse(report.ToJson(alphabet));
    doc["support"] = SupportName(params.support);
    doc["metadata"] = meta;
    text = doc.dump(2) + "\n";
  } else {
    text = MetadataComment(meta, "# ");
    text += fmt::format(
        "{}: language={} pairs={} max_ratio={:.17g} bound={:.17g}\n",
        report.pass ? "PASS" : "FAIL", report.language_size,
        report.pairs_checked, report.max_ratio(), std::exp(report.bound_log_ratio));
    if (!report.pass && report.witness.has_value()) {
      text += fmt::format("witness: w1={} w2={} v={}\n",
                          alphabet.Decode(report.witness->w1),
                          alphabet.Decode(report.witness->w2),
                          alphabet.Decode(report.witness->v));
    }
  }
  LEVPRIV_RETURN_IF_ERROR(Emit(s, text, io));
  return report.pass ? kExitOk : kExitVerifyFailed;
}

// ---- gridworld ------------------------------------------------------------

struct GridArgs {
  std::size_t rows = 0;
  std::size_t cols = 0;
  bool stay = false;
};

absl::StatusOr<int> CmdGridworld(const Shared& s, const GridArgs& a, Io& io) {
  const std::uint64_t seed = s.seed.value_or(EntropySeed());
  TransitionSystem ts = MakeGridworld(a.rows, a.cols, a.stay);
  Json meta = Metadata("gridworld", seed, nullptr);
  meta["params"] = Json{{"rows", a.rows}, {"cols", a.cols}, {"stay", a.stay}};
  Json doc{{"metadata", meta}};
  Json body = Json::parse(SerializeTransitionSystem(ts));
  for (auto& [key, value] : body.items()) {
    doc[key] = value;
  }
  io.err << fmt::format("gridworld: states={} transitions={}\n",
                        ts.num_states(), ts.num_transitions());
  LEVPRIV_RETURN_IF_ERROR(Emit(s, doc.dump(2) + "\n", io));
  return kExitOk;
}

int ExitCodeFor(const absl::Status& status) {
  return KindOf(status) == ErrorKind::kCapExceeded ? kExitCap : kExitUsage;
}

}  // namespace

int RunCli(const std::vector<std::string>& args, std::ostream& out,
           std::ostream& err) {
  Io io{out, err};
  CLI::App app{"Differentially private words and plans via Levenshtein automata",
               "levpriv"};
  app.set_version_flag("--version", std::string(Version()));
  app.require_subcommand(1);

  Shared word_s, run_s, automaton_s, dist_s, verify_s, grid_s;
  WordArgs word_args;
  RunArgs run_args;
  AutomatonArgs automaton_args;
  DistArgs dist_args;
  VerifyArgs verify_args;
  GridArgs grid_args;

  CLI::App* word = app.add_subcommand("word", "Privatize a word");
  word->add_option("--input", word_args.input, "Input word")->required();
  word->add_option("--alphabet", word_args.alphabet,
                   "Alphabet: characters, or a JSON array of symbols "
                   "(default: distinct characters of the input)");
  word->add_option("--samples", word_args.samples, "Number of outputs")
      ->capture_default_str();
  AddMechanism(word, word_s);
  AddSeed(word, word_s);
  AddFormat(word, word_s, {"text", "json"});
  AddOut(word, word_s);

  CLI::App* run = app.add_subcommand("run", "Privatize a plan of a transition system");
  run->add_option("--ts", run_args.ts, "Transition system JSON file")->required();
  run->add_option("--run", run_args.run, "Plan: actions separated by spaces")
      ->required();
  run->add_option("--samples", run_args.samples, "Number of outputs")
      ->capture_default_str();
  run->add_flag("--allow-invalid-input", run_args.allow_invalid,
                "Accept an input that is not a valid plan");
  run->add_option("--svg", run_args.svg, "Render grid-world paths to this SVG file");
  AddMechanism(run, run_s);
  AddSeed(run, run_s);
  AddFormat(run, run_s, {"text", "json"});
  AddOut(run, run_s);

  CLI::App* automaton = app.add_subcommand("automaton", "Dump a Levenshtein automaton");
  automaton->add_option("--input", automaton_args.input, "Centre word")->required();
  automaton->add_option("--alphabet", automaton_args.alphabet, "Alphabet");
  automaton->add_option("--ts", automaton_args.ts,
                        "Intersect with this transition system");
  automaton->add_option("--k", automaton_s.k, "Radius (default: input length)");
  automaton->add_option("--restrict", automaton_args.restrict_to,
                        "Keep only words at exactly this distance");
  automaton->add_option("--dump", automaton_args.dump, "Dump format")
      ->check(CLI::IsMember({"dot", "json"}))
      ->capture_default_str();
  automaton->add_flag("--policy", automaton_args.policy,
                      "Annotate branch probabilities V(q')/V(q)");
  automaton->add_flag("--nfa", automaton_args.nfa,
                      "Dump the insertion/deletion/substitution NFA instead");
  AddSeed(automaton, automaton_s);
  AddOut(automaton, automaton_s);

  CLI::App* dist = app.add_subcommand("dist", "Distance distribution table");
  dist->add_option("--input", dist_args.input, "Input word")->required();
  dist->add_option("--alphabet", dist_args.alphabet, "Alphabet");
  dist->add_flag("--compare", dist_args.compare,
                 "Emit exact and paper_literal probabilities side by side");
  AddMechanism(dist, dist_s);
  AddSeed(dist, dist_s);
  AddFormat(dist, dist_s, {"csv", "json", "text"});
  AddOut(dist, dist_s);

  CLI::App* verify = app.add_subcommand(
      "verify", "Check epsilon-DP exactly on every word of length n");
  verify->add_option("--alphabet", verify_args.alphabet, "Alphabet");
  verify->add_option("--ts", verify_args.ts, "Restrict to plans of this system");
  verify->add_option("--n", verify_args.n, "Word length")
      ->required()
      ->check(CLI::PositiveNumber);
  AddMechanism(verify, verify_s);
  AddSeed(verify, verify_s);
  AddFormat(verify, verify_s, {"json", "text"});
  AddOut(verify, verify_s);

  CLI::App* grid = app.add_subcommand("gridworld", "Generate a grid-world system");
  grid->add_option("--rows", grid_args.rows, "Rows")->required()->check(
      CLI::PositiveNumber);
  grid->add_option("--cols", grid_args.cols, "Columns")->required()->check(
      CLI::PositiveNumber);
  grid->add_flag("--stay", grid_args.stay, "Add a stay action in every cell");
  AddSeed(grid, grid_s);
  AddOut(grid, grid_s);

  std::vector<std::string> reversed(args.rbegin(), args.rend());
  try {
    app.parse(reversed);
  } catch (const CLI::ParseError& e) {
    return app.exit(e, out, err) == 0 ? kExitOk : kExitUsage;
  }

  absl::StatusOr<int> result = absl::InternalError("no command");
  if (word->parsed()) {
    result = CmdWord(word_s, word_args, io);
  } else if (run->parsed()) {
    result = CmdRun(run_s, run_args, io);
  } else if (automaton->parsed()) {
    result = CmdAutomaton(automaton_s, automaton_args, io);
  } else if (dist->parsed()) {
    result = CmdDist(dist_s, dist_args, io);
  } else if (verify->parsed()) {
    result = CmdVerify(verify_s, verify_args, io);
  } else if (grid->parsed()) {
    result = CmdGridworld(grid_s, grid_args, io);
  }
  if (!result.ok()) {
    err << "error: " << result.status().message() << "\n";
    return ExitCodeFor(result.status());
  }
  return *result;
}

}  // namespace levpriv::cli
