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

// Levenshtein automata over a fixed alphabet.
//
// LayeredAutomaton is the deterministic, fixed-length machine used by the
// mechanism: state (i, e[, s]) has read i letters with e substitutions (and,
// in products with a transition system, sits in system state s). Every
// transition moves from layer i to layer i + 1, so state ids are kept in
// non-decreasing layer order and any reverse-id sweep is a valid backward
// topological order.
//
// EditNfa is the classic insertion/deletion/substitution automaton. It is
// only used for membership testing.

#ifndef LEVPRIV_LEVENSHTEIN_AUTOMATON_H_
#define LEVPRIV_LEVENSHTEIN_AUTOMATON_H_

#include <compare>
#include <cstddef>
#include <cstdint>
#include <optional>
#include <span>
#include <vector>

#include "absl/status/statusor.h"
#include "levpriv/words.h"

namespace levpriv {

using StateId = std::uint32_t;

struct StateLabel {
  std::uint32_t layer = 0;
  std::uint32_t errors = 0;
  // Transition-system state index for product machines.
  std::optional<std::uint32_t> extra;

  friend bool operator==(const StateLabel&, const StateLabel&) = default;
  friend auto operator<=>(const StateLabel&, const StateLabel&) = default;
};

struct Edge {
  Symbol symbol = 0;
  StateId to = 0;
  friend bool operator==(const Edge&, const Edge&) = default;
};

struct Transition {
  StateId from = 0;
  Symbol symbol = 0;
  StateId to = 0;
  friend bool operator==(const Transition&, const Transition&) = default;
};

class LayeredAutomaton {
 public:
  // Validates the layered invariants: state ids ordered by layer, every
  // transition advances the layer by one and adds zero or one error, at
  // most one successor per (state, symbol), accepting states in the last
  // layer. An automaton with no states must have no initial state.
  static absl::StatusOr<LayeredAutomaton> Create(
      Alphabet alphabet, std::size_t word_len, std::size_t max_err,
      std::vector<StateLabel> states, std::optional<StateId> initial,
      std::vector<StateId> accepting, std::vector<Transition> transitions);

  static LayeredAutomaton Empty(Alphabet alphabet, std::size_t word_len,
                                std::size_t max_err);

  const Alphabet& alphabet() const { return alphabet_; }
  std::size_t word_len() const { return word_len_; }
  std::size_t max_err() const { return max_err_; }

  bool empty() const { return states_.empty(); }
  std::size_t num_states() const { return states_.size(); }
  std::size_t num_transitions() const { return edges_.size(); }
  // Distinct (from, to) pairs, i.e. edges of the underlying graph once
  // parallel symbol-labelled transitions are merged.
  std::size_t num_graph_edges() const;

  const std::vector<StateLabel>& states() const { return states_; }
  const StateLabel& label(StateId s) const { return states_[s]; }
  std::optional<StateId> initial() const { return initial_; }
  std::span<const StateId> accepting() const { return accepting_; }
  bool is_accepting(StateId s) const { return accepting_flag_[s]; }

  // Outgoing edges sorted by symbol.
  std::span<const Edge> edges(StateId s) const {
    return std::span<const Edge>(edges_).subspan(
        offsets_[s], offsets_[s + 1] - offsets_[s]);
  }
  std::optional<StateId> Successor(StateId s, Symbol symbol) const;
  std::vector<Transition> transitions() const;

  absl::StatusOr<bool> Accepts(const Word& word) const;

  friend bool operator==(const LayeredAutomaton& a, const LayeredAutomaton& b);

 private:
  LayeredAutomaton(Alphabet alphabet, std::size_t word_len,
                   std::size_t max_err)
      : alphabet_(std::move(alphabet)),
        word_len_(word_len),
        max_err_(max_err),
        offsets_{0} {}

  Alphabet alphabet_;
  std::size_t word_len_ = 0;
  std::size_t max_err_ = 0;
  std::vector<StateLabel> states_;
  std::optional<StateId> initial_;
  std::vector<StateId> accepting_;
  std::vector<bool> accepting_flag_;
  std::vector<std::size_t> offsets_;
  std::vector<Edge> edges_;
};

// Raw layered graph before trimming. `successors[s]` need not be sorted.
struct LayeredGraph {
  std::vector<StateLabel> states;
  std::vector<std::vector<Edge>> successors;
  std::vector<bool> accepting;
  StateId initial = 0;
};

// Keeps the states that are reachable from the initial state and can reach
// an accepting state, renumbered in label order. Returns an empty automaton
// when no accepting state is reachable.
absl::StatusOr<LayeredAutomaton> TrimLayeredGraph(const Alphabet& alphabet,
                                                  std::size_t word_len,
                                                  std::size_t max_err,
                                                  const LayeredGraph& graph);

// Fixed-length, substitution-only machine accepting exactly
// { w in alphabet^|x| : hamming(w, x) <= k }.
absl::StatusOr<LayeredAutomaton> BuildSubstitutionAutomaton(
    const Alphabet& alphabet, const Word& x, std::size_t k);

// Sub-machine of the paths that end in an accepting state with exactly
// `distance` errors. An empty result is a legal value.
absl::StatusOr<LayeredAutomaton> RestrictToDistance(const LayeredAutomaton& a,
                                                    std::size_t distance);

class EditNfa {
 public:
  enum class EdgeKind { kMatch, kInsertion, kDeletion, kSubstitution };

  // Match edges read `symbol`; insertion and substitution edges read any
  // symbol; deletion edges are epsilon moves.
  struct NfaEdge {
    StateId from = 0;
    EdgeKind kind = EdgeKind::kMatch;
    Symbol symbol = 0;
    StateId to = 0;
  };

  EditNfa(Alphabet alphabet, Word x, std::size_t k);

  const Alphabet& alphabet() const { return alphabet_; }
  const Word& word() const { return x_; }
  std::size_t max_err() const { return k_; }
  std::size_t num_states() const { return (x_.size() + 1) * (k_ + 1); }
  StateId id(std::size_t i, std::size_t e) const {
    return static_cast<StateId>(i * (k_ + 1) + e);
  }
  StateLabel label(StateId s) const;
  StateId initial() const { return 0; }
  bool is_accepting(StateId s) const { return label(s).layer == x_.size(); }
  const std::vector<NfaEdge>& edges() const { return edges_; }

  // Subset simulation with on-the-fly epsilon closure.
  absl::StatusOr<bool> Accepts(const Word& word) const;

 private:
  Alphabet alphabet_;
  Word x_;
  std::size_t k_;
  std::vector<NfaEdge> edges_;
};

// NFA accepting { w : levenshtein(w, x) <= k }.
absl::StatusOr<EditNfa> BuildFullLevenshteinNfa(const Alphabet& alphabet,
                                                const Word& x, std::size_t k);

}  // namespace levpriv

#endif  // LEVPRIV_LEVENSHTEIN_AUTOMATON_H_
