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

// Deterministic transition systems and private runs.
//
// A plan (a word over the action alphabet) is valid when every action is
// enabled along the induced run from the initial state. The product of a
// fixed-length Levenshtein automaton with a transition system accepts
// exactly the valid plans within the automaton's distance bound, so running
// the word mechanism on the product privatizes runs.

#ifndef LEVPRIV_TRANSITION_SYSTEM_H_
#define LEVPRIV_TRANSITION_SYSTEM_H_

#include <cstdint>
#include <optional>
#include <span>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

#include "absl/status/statusor.h"
#include "levpriv/levenshtein_automaton.h"
#include "levpriv/mechanism.h"
#include "levpriv/random.h"
#include "levpriv/words.h"

namespace levpriv {

using TsState = std::uint32_t;

struct NamedTransition {
  std::string from;
  std::string action;
  std::string to;
};

class TransitionSystem {
 public:
  struct Arc {
    Symbol action = 0;
    TsState to = 0;
  };

  // Fails with UnknownState / UnknownAction for dangling names and
  // NondeterministicTransition for a repeated (from, action) pair.
  static absl::StatusOr<TransitionSystem> Create(
      std::vector<std::string> states, std::string_view initial,
      Alphabet actions, std::span<const NamedTransition> transitions);

  std::size_t num_states() const { return states_.size(); }
  std::size_t num_transitions() const { return arcs_.size(); }
  const std::string& state_name(TsState s) const { return states_[s]; }
  const std::vector<std::string>& state_names() const { return states_; }
  std::optional<TsState> StateIndex(std::string_view name) const;
  TsState initial() const { return initial_; }
  const Alphabet& actions() const { return actions_; }

  // Enabled actions of `s`, sorted by action.
  std::span<const Arc> arcs(TsState s) const {
    return std::span<const Arc>(arcs_).subspan(offsets_[s],
                                               offsets_[s + 1] - offsets_[s]);
  }
  std::optional<TsState> Next(TsState s, Symbol action) const;

 private:
  TransitionSystem(std::vector<std::string> states, TsState initial,
                   Alphabet actions)
      : states_(std::move(states)),
        initial_(initial),
        actions_(std::move(actions)) {}

  std::vector<std::string> states_;
  std::vector<std::pair<std::string, TsState>> sorted_states_;
  TsState initial_ = 0;
  Alphabet actions_;
  std::vector<std::size_t> offsets_;
  std::vector<Arc> arcs_;
};

// {"states":[...], "initial":"...", "actions":[...],
//  "transitions":[{"from":...,"action":...,"to":...}]}
absl::StatusOr<TransitionSystem> ParseTransitionSystem(std::string_view json);
std::string SerializeTransitionSystem(const TransitionSystem& ts,
                                      int indent = 2);

// Induced state sequence s_0 .. s_n, or nullopt if some action is disabled.
absl::StatusOr<std::optional<std::vector<TsState>>> RunOfPlan(
    const TransitionSystem& ts, const Word& plan);
absl::StatusOr<bool> IsValidPlan(const TransitionSystem& ts, const Word& plan);

// Synchronous product, trimmed to useful states. Product states carry the
// transition-system state in StateLabel::extra and accept in every system
// state.
absl::StatusOr<LayeredAutomaton> BuildProduct(const LayeredAutomaton& a,
                                              const TransitionSystem& ts);

// rows x cols grid, states and actions both named "s_<row>_<col>"; the
// action named after a cell moves there from any 4-neighbour (and from the
// cell itself when `include_stay`). Starts in s_0_0.
TransitionSystem MakeGridworld(std::size_t rows, std::size_t cols,
                               bool include_stay = false);

// Parses a "s_<row>_<col>" name.
std::optional<std::pair<std::size_t, std::size_t>> GridCell(
    std::string_view name);

// Mechanism over the valid plans of `ts` with the input's length.
class RunPrivatizer {
 public:
  // Unless `allow_invalid_input`, `x` must itself be a valid plan.
  static absl::StatusOr<RunPrivatizer> Create(const TransitionSystem& ts,
                                              const Word& x,
                                              const MechanismParams& params,
                                              bool allow_invalid_input = false);

  const LayeredAutomaton& levenshtein() const { return levenshtein_; }
  const LayeredAutomaton& product() const { return product_; }
  const ExponentialMechanism& mechanism() const { return mechanism_; }
  absl::StatusOr<Word> Sample(Rng& rng) const;

 private:
  RunPrivatizer(LayeredAutomaton levenshtein, LayeredAutomaton product,
                ExponentialMechanism mechanism)
      : levenshtein_(std::move(levenshtein)),
        product_(std::move(product)),
        mechanism_(std::move(mechanism)) {}

  LayeredAutomaton levenshtein_;
  LayeredAutomaton product_;
  ExponentialMechanism mechanism_;
};

absl::StatusOr<Word> PrivatizeRun(const TransitionSystem& ts, const Word& x,
                                  const MechanismParams& params, Rng& rng,
                                  bool allow_invalid_input = false);

}  // namespace levpriv

#endif  // LEVPRIV_TRANSITION_SYSTEM_H_
