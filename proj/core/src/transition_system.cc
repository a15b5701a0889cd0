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

#include "levpriv/transition_system.h"

#include <algorithm>
#include <charconv>
#include <numeric>
#include <unordered_map>

#include "json.hpp"
#include "levpriv/status.h"
#include "str_util.h"

namespace levpriv {

absl::StatusOr<TransitionSystem> TransitionSystem::Create(
    std::vector<std::string> states, std::string_view initial,
    Alphabet actions, std::span<const NamedTransition> transitions) {
  if (states.empty()) {
    return MakeError(ErrorKind::kSchemaError,
                     "a transition system needs at least one state");
  }
  std::vector<std::pair<std::string, TsState>> sorted;
  for (std::size_t i = 0; i < states.size(); ++i) {
    sorted.emplace_back(states[i], static_cast<TsState>(i));
  }
  std::sort(sorted.begin(), sorted.end());
  for (std::size_t i = 1; i < sorted.size(); ++i) {
    if (sorted[i].first == sorted[i - 1].first) {
      return MakeError(ErrorKind::kSchemaError,
                       StrCat("duplicate state '", sorted[i].first, "'"));
    }
  }
  TransitionSystem ts(std::move(states), 0, std::move(actions));
  ts.sorted_states_ = std::move(sorted);
  std::optional<TsState> init = ts.StateIndex(initial);
  if (!init.has_value()) {
    return MakeError(ErrorKind::kUnknownState,
                     StrCat("initial state '", initial, "' is unknown"));
  }
  ts.initial_ = *init;

  struct Resolved {
    TsState from;
    Symbol action;
    TsState to;
  };
  std::vector<Resolved> resolved;
  resolved.reserve(transitions.size());
  for (const NamedTransition& t : transitions) {
    std::optional<TsState> from = ts.StateIndex(t.from);
    std::optional<TsState> to = ts.StateIndex(t.to);
    if (!from.has_value() || !to.has_value()) {
      return MakeError(ErrorKind::kUnknownState,
                       StrCat("transition ", t.from, " -", t.action,
                                    "-> ", t.to, " names an unknown state"));
    }
    std::optional<Symbol> action = ts.actions_.IndexOf(t.action);
    if (!action.has_value()) {
      return MakeError(ErrorKind::kUnknownAction,
                       StrCat("action '", t.action, "' is unknown"));
    }
    resolved.push_back({*from, *action, *to});
  }
  std::sort(resolved.begin(), resolved.end(),
            [](const Resolved& l, const Resolved& r) {
              return std::tie(l.from, l.action) < std::tie(r.from, r.action);
            });
  ts.offsets_.assign(ts.states_.size() + 1, 0);
  for (std::size_t i = 0; i < resolved.size(); ++i) {
    if (i > 0 && resolved[i].from == resolved[i - 1].from &&
        resolved[i].action == resolved[i - 1].action) {
      return MakeError(
          ErrorKind::kNondeterministicTransition,
          StrCat("state '", ts.states_[resolved[i].from],
                       "' has two transitions on action '",
                       ts.actions_.symbol(resolved[i].action), "'"));
    }
    ++ts.offsets_[resolved[i].from + 1];
    ts.arcs_.push_back({resolved[i].action, resolved[i].to});
  }
  std::partial_sum(ts.offsets_.begin(), ts.offsets_.end(), ts.offsets_.begin());
  return ts;
}

std::optional<TsState> TransitionSystem::StateIndex(
    std::string_view name) const {
  auto it = std::lower_bound(
      sorted_states_.begin(), sorted_states_.end(), name,
      [](const auto& entry, std::string_view n) { return entry.first < n; });
  if (it == sorted_states_.end() || it->first != name) return std::nullopt;
  return it->second;
}

std::optional<TsState> TransitionSystem::Next(TsState s, Symbol action) const {
  std::span<const Arc> out = arcs(s);
  auto it = std::lower_bound(
      out.begin(), out.end(), action,
      [](const Arc& arc, Symbol a) { return arc.action < a; });
  if (it == out.end() || it->action != action) return std::nullopt;
  return it->to;
}

absl::StatusOr<TransitionSystem> ParseTransitionSystem(std::string_view text) {
  using nlohmann::json;
  json doc = json::parse(text, nullptr, false);
  if (doc.is_discarded() || !doc.is_object()) {
    return MakeError(ErrorKind::kSchemaError,
                     "transition system document is not a JSON object");
  }
  try {
    auto states = doc.at("states").get<std::vector<std::string>>();
    auto initial = doc.at("initial").get<std::string>();
    LEVPRIV_ASSIGN_OR_RETURN(
        Alphabet actions,
        Alphabet::FromSymbols(doc.at("actions").get<std::vector<std::string>>()));
    std::vector<NamedTransition> transitions;
    for (const json& t : doc.at("transitions")) {
      transitions.push_back({t.at("from").get<std::string>(),
                             t.at("action").get<std::string>(),
                             t.at("to").get<std::string>()});
    }
    return TransitionSystem::Create(std::move(states), initial,
                                    std::move(actions), transitions);
  } catch (const json::exception& e) {
    return MakeError(ErrorKind::kSchemaError, e.what());
  }
}

std::string SerializeTransitionSystem(const TransitionSystem& ts, int indent) {
  nlohmann::json doc;
  doc["states"] = ts.state_names();
  doc["initial"] = ts.state_name(ts.initial());
  doc["actions"] = ts.actions().symbols();
  nlohmann::json transitions = nlohmann::json::array();
  for (TsState s = 0; s < ts.num_states(); ++s) {
    for (const TransitionSystem::Arc& arc : ts.arcs(s)) {
      transitions.push_back({{"from", ts.state_name(s)},
                             {"action", ts.actions().symbol(arc.action)},
                             {"to", ts.state_name(arc.to)}});
    }
  }
  doc["transitions"] = std::move(transitions);
  return doc.dump(indent);
}

absl::StatusOr<std::optional<std::vector<TsState>>> RunOfPlan(
    const TransitionSystem& ts, const Word& plan) {
  if (plan.alphabet_id != ts.actions().id()) {
    return MakeError(ErrorKind::kAlphabetMismatch,
                     "plan is not over the system's actions");
  }
  std::vector<TsState> run = {ts.initial()};
  for (Symbol a : plan.letters) {
    std::optional<TsState> next = ts.Next(run.back(), a);
    if (!next.has_value()) return std::optional<std::vector<TsState>>();
    run.push_back(*next);
  }
  return std::optional<std::vector<TsState>>(std::move(run));
}

absl::StatusOr<bool> IsValidPlan(const TransitionSystem& ts, const Word& plan) {
  LEVPRIV_ASSIGN_OR_RETURN(auto run, RunOfPlan(ts, plan));
  return run.has_value();
}

absl::StatusOr<LayeredAutomaton> BuildProduct(const LayeredAutomaton& a,
                                              const TransitionSystem& ts) {
  if (!(a.alphabet() == ts.actions())) {
    return MakeError(ErrorKind::kAlphabetMismatch,
                     "automaton alphabet differs from the system's actions");
  }
  if (a.empty()) {
    return LayeredAutomaton::Empty(a.alphabet(), a.word_len(), a.max_err());
  }
  const std::uint64_t width = ts.num_states();
  std::unordered_map<std::uint64_t, StateId> index;
  LayeredGraph g;
  std::vector<std::pair<StateId, TsState>> members;
  auto intern = [&](StateId q, TsState s) {
    auto [it, inserted] =
        index.try_emplace(q * width + s, static_cast<StateId>(members.size()));
    if (inserted) {
      members.emplace_back(q, s);
      StateLabel l = a.label(q);
      l.extra = s;
      g.states.push_back(l);
      g.accepting.push_back(a.is_accepting(q));
      g.successors.emplace_back();
    }
    return it->second;
  };
  g.initial = intern(*a.initial(), ts.initial());
  // Ids are handed out in BFS order, which is layer order.
  for (StateId p = 0; p < members.size(); ++p) {
    auto [q, s] = members[p];
    for (const TransitionSystem::Arc& arc : ts.arcs(s)) {
      std::optional<StateId> next = a.Successor(q, arc.action);
      if (!next.has_value()) continue;
      StateId target = intern(*next, arc.to);
      g.successors[p].push_back({arc.action, target});
    }
  }
  return TrimLayeredGraph(a.alphabet(), a.word_len(), a.max_err(), g);
}

TransitionSystem MakeGridworld(std::size_t rows, std::size_t cols,
                               bool include_stay) {
  auto name = [](std::size_t r, std::size_t c) {
    return StrCat("s_", r, "_", c);
  };
  std::vector<std::string> states;
  for (std::size_t r = 0; r < rows; ++r) {
    for (std::size_t c = 0; c < cols; ++c) states.push_back(name(r, c));
  }
  std::vector<NamedTransition> transitions;
  constexpr int kDr[] = {-1, 1, 0, 0};
  constexpr int kDc[] = {0, 0, -1, 1};
  for (std::size_t r = 0; r < rows; ++r) {
    for (std::size_t c = 0; c < cols; ++c) {
      if (include_stay) transitions.push_back({name(r, c), name(r, c), name(r, c)});
      for (int d = 0; d < 4; ++d) {
        const long nr = static_cast<long>(r) + kDr[d];
        const long nc = static_cast<long>(c) + kDc[d];
        if (nr < 0 || nc < 0 || nr >= static_cast<long>(rows) ||
            nc >= static_cast<long>(cols)) {
          continue;
        }
        std::string target = name(nr, nc);
        transitions.push_back({name(r, c), target, target});
      }
    }
  }
  Alphabet actions = *Alphabet::FromSymbols(states);
  return *TransitionSystem::Create(states, name(0, 0), std::move(actions),
                                   transitions);
}

std::optional<std::pair<std::size_t, std::size_t>> GridCell(
    std::string_view name) {
  if (name.size() < 5 || name.substr(0, 2) != "s_") return std::nullopt;
  std::string_view rest = name.substr(2);
  std::size_t sep = rest.find('_');
  if (sep == std::string_view::npos) return std::nullopt;
  std::size_t row = 0, col = 0;
  std::string_view rs = rest.substr(0, sep), cs = rest.substr(sep + 1);
  auto r1 = std::from_chars(rs.data(), rs.data() + rs.size(), row);
  auto r2 = std::from_chars(cs.data(), cs.data() + cs.size(), col);
  if (r1.ec != std::errc() || r1.ptr != rs.data() + rs.size() ||
      r2.ec != std::errc() || r2.ptr != cs.data() + cs.size() || rs.empty() ||
      cs.empty()) {
    return std::nullopt;
  }
  return std::make_pair(row, col);
}

absl::StatusOr<RunPrivatizer> RunPrivatizer::Create(
    const TransitionSystem& ts, const Word& x, const MechanismParams& params,
    bool allow_invalid_input) {
  LEVPRIV_RETURN_IF_ERROR(params.Validate());
  if (ts.actions().size() < 2) {
    return MakeError(ErrorKind::kDegenerateAlphabet,
                     "a single-action system admits no substitutions");
  }
  if (x.empty()) {
    return MakeError(ErrorKind::kEmptyWord, "cannot privatize an empty run");
  }
  LEVPRIV_ASSIGN_OR_RETURN(bool valid, IsValidPlan(ts, x));
  if (!valid && !allow_invalid_input) {
    return MakeError(ErrorKind::kInvalidInputRun,
                     "input is not a valid plan of the transition system");
  }
  LEVPRIV_ASSIGN_OR_RETURN(
      LayeredAutomaton levenshtein,
      BuildSubstitutionAutomaton(ts.actions(), x,
                                 params.SupportRadius(x.size())));
  LEVPRIV_ASSIGN_OR_RETURN(LayeredAutomaton product,
                           BuildProduct(levenshtein, ts));
  if (product.empty()) {
    return MakeError(ErrorKind::kEmptySupport,
                     "no valid plan of the input's length is in range");
  }
  LEVPRIV_ASSIGN_OR_RETURN(ExponentialMechanism mechanism,
                           ExponentialMechanism::Create(product, params));
  return RunPrivatizer(std::move(levenshtein), std::move(product),
                       std::move(mechanism));
}

absl::StatusOr<Word> RunPrivatizer::Sample(Rng& rng) const {
  LEVPRIV_ASSIGN_OR_RETURN(ExponentialMechanism::Draw draw,
                           mechanism_.Sample(rng));
  return std::move(draw.word);
}

absl::StatusOr<Word> PrivatizeRun(const TransitionSystem& ts, const Word& x,
                                  const MechanismParams& params, Rng& rng,
                                  bool allow_invalid_input) {
  LEVPRIV_ASSIGN_OR_RETURN(
      RunPrivatizer privatizer,
      RunPrivatizer::Create(ts, x, params, allow_invalid_input));
  return privatizer.Sample(rng);
}

}  // namespace levpriv
