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

#ifndef LEVPRIV_AUTOMATON_IO_H_
#define LEVPRIV_AUTOMATON_IO_H_

#include <functional>
#include <string>
#include <string_view>

#include "absl/status/statusor.h"
#include "levpriv/levenshtein_automaton.h"

namespace levpriv {

struct DotOptions {
  std::string graph_name = "levenshtein";
  // Extra text appended under a state's label, e.g. a path count.
  std::function<std::string(StateId)> state_note;
  // Extra text appended to an edge label, e.g. a branch probability.
  std::function<std::string(StateId, const Edge&)> edge_note;
  // Display name for the `extra` component of product states.
  std::function<std::string(std::uint32_t)> extra_name;
};

// Graphviz digraph. States are labelled q_{i,e} (or q_{i,e},s); accepting
// states are drawn as double circles. Parallel transitions between the same
// pair of states are merged into one edge with a comma-separated label.
std::string ToDot(const LayeredAutomaton& a, const DotOptions& options = {});
std::string ToDot(const EditNfa& nfa);

// {alphabet, word_len, max_err, states:[{id,i,e,s?}], initial,
//  accepting:[ids], transitions:[{from,symbol,to}]}; symbols are written as
// their strings and `initial` is null for an empty machine.
std::string ToJson(const LayeredAutomaton& a, int indent = 2);
absl::StatusOr<LayeredAutomaton> AutomatonFromJson(std::string_view json);

}  // namespace levpriv

#endif  // LEVPRIV_AUTOMATON_IO_H_
