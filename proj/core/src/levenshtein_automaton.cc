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

#include "levpriv/levenshtein_automaton.h"

#include <algorithm>
#include <numeric>
#include <utility>

#include "levpriv/status.h"
#include "str_util.h"

namespace levpriv {
namespace {

absl::Status Invalid(std::string_view message) {
  return MakeError(ErrorKind::kInvalidAutomaton, message);
}

absl::Status CheckWordAlphabet(const Alphabet& alphabet, const Word& w) {
  if (w.alphabet_id != alphabet.id()) {
    return MakeError(ErrorKind::kAlphabetMismatch,
                     "word is not over the automaton's alphabet");
  }
  return absl::OkStatus();
}

}  // namespace

absl::StatusOr<LayeredAutomaton> LayeredAutomaton::Create(
    Alphabet alphabet, std::size_t word_len, std::size_t max_err,
    std::vector<StateLabel> states, std::optional<StateId> initial,
    std::vector<StateId> accepting, std::vector<Transition> transitions) {
  LayeredAutomaton a(std::move(alphabet), word_len, max_err);
  const std::size_t n = states.size();
  if (n == 0) {
    if (initial.has_value() || !accepting.empty() || !transitions.empty()) {
      return Invalid("an automaton without states has no initial state, "
                     "accepting states or transitions");
    }
    return a;
  }
  for (std::size_t s = 0; s < n; ++s) {
    if (states[s].layer > word_len || states[s].errors > max_err) {
      return Invalid(StrCat("state ", s, " lies outside the ",
                                  word_len, "x", max_err, " grid"));
    }
    if (s > 0 && states[s].layer < states[s - 1].layer) {
      return Invalid("state ids must be ordered by layer");
    }
  }
  if (!initial.has_value() || *initial >= n) {
    return Invalid("missing or out-of-range initial state");
  }
  std::sort(accepting.begin(), accepting.end());
  accepting.erase(std::unique(accepting.begin(), accepting.end()),
                  accepting.end());
  a.accepting_flag_.assign(n, false);
  for (StateId s : accepting) {
    if (s >= n) return Invalid("accepting state out of range");
    if (states[s].layer != word_len) {
      return Invalid(StrCat("accepting state ", s,
                                  " is not in the last layer"));
    }
    a.accepting_flag_[s] = true;
  }
  std::sort(transitions.begin(), transitions.end(),
            [](const Transition& l, const Transition& r) {
              return std::tie(l.from, l.symbol, l.to) <
                     std::tie(r.from, r.symbol, r.to);
            });
  a.offsets_.assign(n + 1, 0);
  a.edges_.reserve(transitions.size());
  for (std::size_t t = 0; t < transitions.size(); ++t) {
    const Transition& tr = transitions[t];
    if (tr.from >= n || tr.to >= n) {
      return Invalid("transition endpoint out of range");
    }
    if (tr.symbol >= a.alphabet_.size()) {
      return Invalid("transition symbol out of range");
    }
    const StateLabel& from = states[tr.from];
    const StateLabel& to = states[tr.to];
    if (to.layer != from.layer + 1) {
      return Invalid("transitions must advance exactly one layer");
    }
    if (to.errors != from.errors && to.errors != from.errors + 1) {
      return Invalid("transitions must add zero or one error");
    }
    if (t > 0 && transitions[t - 1].from == tr.from &&
        transitions[t - 1].symbol == tr.symbol) {
      return MakeError(ErrorKind::kInvalidAutomaton,
                       StrCat("state ", tr.from,
                                    " has two successors on symbol ",
                                    tr.symbol));
    }
    ++a.offsets_[tr.from + 1];
    a.edges_.push_back({tr.symbol, tr.to});
  }
  std::partial_sum(a.offsets_.begin(), a.offsets_.end(), a.offsets_.begin());
  a.states_ = std::move(states);
  a.initial_ = initial;
  a.accepting_ = std::move(accepting);
  return a;
}

LayeredAutomaton LayeredAutomaton::Empty(Alphabet alphabet,
                                         std::size_t word_len,
                                         std::size_t max_err) {
  return LayeredAutomaton(std::move(alphabet), word_len, max_err);
}

std::size_t LayeredAutomaton::num_graph_edges() const {
  std::size_t count = 0;
  std::vector<StateId> targets;
  for (StateId s = 0; s < num_states(); ++s) {
    targets.clear();
    for (const Edge& e : edges(s)) targets.push_back(e.to);
    std::sort(targets.begin(), targets.end());
    count += std::unique(targets.begin(), targets.end()) - targets.begin();
  }
  return count;
}

std::optional<StateId> LayeredAutomaton::Successor(StateId s,
                                                   Symbol symbol) const {
  std::span<const Edge> out = edges(s);
  auto it = std::lower_bound(
      out.begin(), out.end(), symbol,
      [](const Edge& e, Symbol sym) { return e.symbol < sym; });
  if (it == out.end() || it->symbol != symbol) return std::nullopt;
  return it->to;
}

std::vector<Transition> LayeredAutomaton::transitions() const {
  std::vector<Transition> out;
  out.reserve(edges_.size());
  for (StateId s = 0; s < num_states(); ++s) {
    for (const Edge& e : edges(s)) out.push_back({s, e.symbol, e.to});
  }
  return out;
}

absl::StatusOr<bool> LayeredAutomaton::Accepts(const Word& word) const {
  LEVPRIV_RETURN_IF_ERROR(CheckWordAlphabet(alphabet_, word));
  if (!initial_.has_value()) return false;
  StateId q = *initial_;
  for (Symbol s : word.letters) {
    std::optional<StateId> next = Successor(q, s);
    if (!next.has_value()) return false;
    q = *next;
  }
  return is_accepting(q);
}

bool operator==(const LayeredAutomaton& a, const LayeredAutomaton& b) {
  return a.alphabet_ == b.alphabet_ && a.word_len_ == b.word_len_ &&
         a.max_err_ == b.max_err_ && a.states_ == b.states_ &&
         a.initial_ == b.initial_ && a.accepting_ == b.accepting_ &&
         a.offsets_ == b.offsets_ && a.edges_ == b.edges_;
}

absl::StatusOr<LayeredAutomaton> TrimLayeredGraph(const Alphabet& alphabet,
                                                  std::size_t word_len,
                                                  std::size_t max_err,
                                                  const LayeredGraph& graph) {
  const std::size_t n = graph.states.size();
  if (n == 0 || graph.initial >= n) {
    return LayeredAutomaton::Empty(alphabet, word_len, max_err);
  }
  std::vector<bool> forward(n, false);
  std::vector<StateId> stack = {graph.initial};
  forward[graph.initial] = true;
  while (!stack.empty()) {
    StateId s = stack.back();
    stack.pop_back();
    for (const Edge& e : graph.successors[s]) {
      if (!forward[e.to]) {
        forward[e.to] = true;
        stack.push_back(e.to);
      }
    }
  }

  std::vector<std::vector<StateId>> predecessors(n);
  for (StateId s = 0; s < n; ++s) {
    if (!forward[s]) continue;
    for (const Edge& e : graph.successors[s]) predecessors[e.to].push_back(s);
  }
  std::vector<bool> useful(n, false);
  for (StateId s = 0; s < n; ++s) {
    if (forward[s] && graph.accepting[s]) {
      useful[s] = true;
      stack.push_back(s);
    }
  }
  while (!stack.empty()) {
    StateId s = stack.back();
    stack.pop_back();
    for (StateId p : predecessors[s]) {
      if (!useful[p]) {
        useful[p] = true;
        stack.push_back(p);
      }
    }
  }
  if (!useful[graph.initial]) {
    return LayeredAutomaton::Empty(alphabet, word_len, max_err);
  }

  std::vector<StateId> kept;
  for (StateId s = 0; s < n; ++s) {
    if (useful[s]) kept.push_back(s);
  }
  std::stable_sort(kept.begin(), kept.end(), [&](StateId l, StateId r) {
    return graph.states[l] < graph.states[r];
  });
  constexpr StateId kDropped = ~StateId{0};
  std::vector<StateId> renumber(n, kDropped);
  for (std::size_t i = 0; i < kept.size(); ++i) {
    renumber[kept[i]] = static_cast<StateId>(i);
  }

  std::vector<StateLabel> states;
  std::vector<StateId> accepting;
  std::vector<Transition> transitions;
  states.reserve(kept.size());
  for (StateId old : kept) {
    StateId id = renumber[old];
    states.push_back(graph.states[old]);
    if (graph.accepting[old]) accepting.push_back(id);
    for (const Edge& e : graph.successors[old]) {
      if (renumber[e.to] != kDropped) {
        transitions.push_back({id, e.symbol, renumber[e.to]});
      }
    }
  }
  return LayeredAutomaton::Create(alphabet, word_len, max_err,
                                  std::move(states), renumber[graph.initial],
                                  std::move(accepting), std::move(transitions));
}

absl::StatusOr<LayeredAutomaton> BuildSubstitutionAutomaton(
    const Alphabet& alphabet, const Word& x, std::size_t k) {
  LEVPRIV_RETURN_IF_ERROR(CheckWordAlphabet(alphabet, x));
  if (x.empty()) {
    return MakeError(ErrorKind::kEmptyWord, "input word is empty");
  }
  if (k == 0) {
    return MakeError(ErrorKind::kZeroK, "k must be >= 1");
  }
  const std::size_t n = x.size();
  const std::size_t radius = std::min(k, n);

  // States (i, e) with e <= min(i, k) are exactly the reachable ones.
  LayeredGraph g;
  std::vector<std::size_t> layer_start(n + 2, 0);
  for (std::size_t i = 0; i <= n; ++i) {
    layer_start[i + 1] = layer_start[i] + std::min(i, radius) + 1;
  }
  auto id = [&](std::size_t i, std::size_t e) {
    return static_cast<StateId>(layer_start[i] + e);
  };
  const std::size_t total = layer_start[n + 1];
  g.states.resize(total);
  g.successors.resize(total);
  g.accepting.assign(total, false);
  for (std::size_t i = 0; i <= n; ++i) {
    for (std::size_t e = 0; e <= std::min(i, radius); ++e) {
      StateId q = id(i, e);
      g.states[q] = {static_cast<std::uint32_t>(i),
                     static_cast<std::uint32_t>(e), std::nullopt};
      if (i == n) {
        g.accepting[q] = true;
        continue;
      }
      for (Symbol s = 0; s < alphabet.size(); ++s) {
        if (s == x.letters[i]) {
          g.successors[q].push_back({s, id(i + 1, e)});
        } else if (e < radius) {
          g.successors[q].push_back({s, id(i + 1, e + 1)});
        }
      }
    }
  }
  return TrimLayeredGraph(alphabet, n, k, g);
}

absl::StatusOr<LayeredAutomaton> RestrictToDistance(const LayeredAutomaton& a,
                                                    std::size_t distance) {
  if (distance > a.max_err()) {
    return MakeError(ErrorKind::kDistanceOutOfRange,
                     StrCat("distance ", distance, " exceeds max error ",
                                  a.max_err()));
  }
  if (a.empty()) {
    return LayeredAutomaton::Empty(a.alphabet(), a.word_len(), a.max_err());
  }
  LayeredGraph g;
  g.states = a.states();
  g.initial = *a.initial();
  g.successors.resize(a.num_states());
  g.accepting.assign(a.num_states(), false);
  for (StateId s = 0; s < a.num_states(); ++s) {
    auto out = a.edges(s);
    g.successors[s].assign(out.begin(), out.end());
    g.accepting[s] = a.is_accepting(s) && a.label(s).errors == distance;
  }
  return TrimLayeredGraph(a.alphabet(), a.word_len(), a.max_err(), g);
}

EditNfa::EditNfa(Alphabet alphabet, Word x, std::size_t k)
    : alphabet_(std::move(alphabet)), x_(std::move(x)), k_(k) {
  const std::size_t n = x_.size();
  for (std::size_t i = 0; i <= n; ++i) {
    for (std::size_t e = 0; e <= k_; ++e) {
      if (i < n) {
        edges_.push_back({id(i, e), EdgeKind::kMatch, x_.letters[i],
                          id(i + 1, e)});
      }
      if (e < k_) {
        edges_.push_back({id(i, e), EdgeKind::kInsertion, 0, id(i, e + 1)});
        if (i < n) {
          edges_.push_back(
              {id(i, e), EdgeKind::kDeletion, 0, id(i + 1, e + 1)});
          edges_.push_back(
              {id(i, e), EdgeKind::kSubstitution, 0, id(i + 1, e + 1)});
        }
      }
    }
  }
}

StateLabel EditNfa::label(StateId s) const {
  return {static_cast<std::uint32_t>(s / (k_ + 1)),
          static_cast<std::uint32_t>(s % (k_ + 1)), std::nullopt};
}

absl::StatusOr<bool> EditNfa::Accepts(const Word& word) const {
  LEVPRIV_RETURN_IF_ERROR(CheckWordAlphabet(alphabet_, word));
  const std::size_t n = x_.size();
  // Deletions go from (i, e) to (i + 1, e + 1), a strictly larger id, so a
  // single ascending pass closes a set under epsilon moves.
  auto close = [&](std::vector<bool>& active) {
    for (std::size_t i = 0; i < n; ++i) {
      for (std::size_t e = 0; e < k_; ++e) {
        if (active[id(i, e)]) active[id(i + 1, e + 1)] = true;
      }
    }
  };
  std::vector<bool> active(num_states(), false);
  active[initial()] = true;
  close(active);
  for (Symbol sym : word.letters) {
    std::vector<bool> next(num_states(), false);
    bool any = false;
    for (std::size_t i = 0; i <= n; ++i) {
      for (std::size_t e = 0; e <= k_; ++e) {
        if (!active[id(i, e)]) continue;
        if (i < n && x_.letters[i] == sym) next[id(i + 1, e)] = any = true;
        if (e < k_) {
          next[id(i, e + 1)] = any = true;
          if (i < n) next[id(i + 1, e + 1)] = any = true;
        }
      }
    }
    if (!any) return false;
    close(next);
    active = std::move(next);
  }
  for (std::size_t e = 0; e <= k_; ++e) {
    if (active[id(n, e)]) return true;
  }
  return false;
}

absl::StatusOr<EditNfa> BuildFullLevenshteinNfa(const Alphabet& alphabet,
                                                const Word& x, std::size_t k) {
  LEVPRIV_RETURN_IF_ERROR(CheckWordAlphabet(alphabet, x));
  return EditNfa(alphabet, x, k);
}

}  // namespace levpriv
