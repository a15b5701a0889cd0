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

#include "levpriv/automaton_io.h"

#include <map>
#include <sstream>
#include <utility>
#include <vector>

#include "fmt/format.h"
#include "json.hpp"
#include "levpriv/status.h"
#include "str_util.h"

namespace levpriv {
namespace {

using nlohmann::json;

std::string Escape(std::string_view s) {
  std::string out;
  for (char c : s) {
    if (c == '"' || c == '\\') out.push_back('\\');
    out.push_back(c);
  }
  return out;
}

std::string DisplaySymbol(const Alphabet& alphabet, Symbol s) {
  const std::string& sym = alphabet.symbol(s);
  return sym == " " ? "␣" : sym;  // open box for a blank
}

absl::Status Schema(std::string_view message) {
  return MakeError(ErrorKind::kSchemaError, message);
}

}  // namespace

std::string ToDot(const LayeredAutomaton& a, const DotOptions& options) {
  std::ostringstream out;
  out << "digraph \"" << Escape(options.graph_name) << "\" {\n";
  out << "  rankdir=LR;\n";
  out << "  node [shape=circle];\n";
  if (a.initial().has_value()) {
    out << "  __start [shape=point];\n";
    out << "  __start -> q" << *a.initial() << ";\n";
  }
  for (StateId s = 0; s < a.num_states(); ++s) {
    const StateLabel& l = a.label(s);
    std::string label = StrCat("q_{", l.layer, ",", l.errors, "}");
    if (l.extra.has_value()) {
      label += StrCat(",", options.extra_name ? options.extra_name(*l.extra)
                                              : std::to_string(*l.extra));
    }
    label = Escape(label);
    if (options.state_note) {
      label += StrCat("\\n", Escape(options.state_note(s)));
    }
    out << "  q" << s << " [label=\"" << label << "\"";
    if (a.is_accepting(s)) out << ", shape=doublecircle";
    out << "];\n";
  }
  for (StateId s = 0; s < a.num_states(); ++s) {
    std::map<StateId, std::vector<std::string>> grouped;
    for (const Edge& e : a.edges(s)) {
      std::string text = DisplaySymbol(a.alphabet(), e.symbol);
      if (options.edge_note) text += StrCat(" ", options.edge_note(s, e));
      grouped[e.to].push_back(std::move(text));
    }
    for (const auto& [to, labels] : grouped) {
      out << "  q" << s << " -> q" << to << " [label=\""
          << Escape(fmt::to_string(fmt::join(labels, ","))) << "\"];\n";
    }
  }
  out << "}\n";
  return out.str();
}

std::string ToDot(const EditNfa& nfa) {
  std::ostringstream out;
  out << "digraph \"levenshtein_nfa\" {\n  rankdir=LR;\n  node [shape=circle];\n";
  out << "  __start [shape=point];\n  __start -> q" << nfa.initial() << ";\n";
  for (StateId s = 0; s < nfa.num_states(); ++s) {
    StateLabel l = nfa.label(s);
    out << "  q" << s << " [label=\"q_{" << l.layer << "," << l.errors << "}\"";
    if (nfa.is_accepting(s)) out << ", shape=doublecircle";
    out << "];\n";
  }
  for (const EditNfa::NfaEdge& e : nfa.edges()) {
    std::string label;
    switch (e.kind) {
      case EditNfa::EdgeKind::kMatch:
        label = DisplaySymbol(nfa.alphabet(), e.symbol);
        break;
      case EditNfa::EdgeKind::kDeletion:
        label = "ε";
        break;
      case EditNfa::EdgeKind::kInsertion:
      case EditNfa::EdgeKind::kSubstitution:
        label = "*";
        break;
    }
    out << "  q" << e.from << " -> q" << e.to << " [label=\"" << Escape(label)
        << "\"];\n";
  }
  out << "}\n";
  return out.str();
}

std::string ToJson(const LayeredAutomaton& a, int indent) {
  json doc;
  doc["alphabet"] = a.alphabet().symbols();
  doc["word_len"] = a.word_len();
  doc["max_err"] = a.max_err();
  json states = json::array();
  for (StateId s = 0; s < a.num_states(); ++s) {
    const StateLabel& l = a.label(s);
    json st = {{"id", s}, {"i", l.layer}, {"e", l.errors}};
    if (l.extra.has_value()) st["s"] = *l.extra;
    states.push_back(std::move(st));
  }
  doc["states"] = std::move(states);
  doc["initial"] = a.initial().has_value() ? json(*a.initial()) : json(nullptr);
  doc["accepting"] = std::vector<StateId>(a.accepting().begin(),
                                          a.accepting().end());
  json transitions = json::array();
  for (const Transition& t : a.transitions()) {
    transitions.push_back({{"from", t.from},
                           {"symbol", a.alphabet().symbol(t.symbol)},
                           {"to", t.to}});
  }
  doc["transitions"] = std::move(transitions);
  return doc.dump(indent);
}

absl::StatusOr<LayeredAutomaton> AutomatonFromJson(std::string_view text) {
  json doc = json::parse(text, nullptr, false);
  if (doc.is_discarded() || !doc.is_object()) {
    return Schema("automaton document is not a JSON object");
  }
  try {
    LEVPRIV_ASSIGN_OR_RETURN(
        Alphabet alphabet,
        Alphabet::FromSymbols(doc.at("alphabet").get<std::vector<std::string>>()));
    const auto word_len = doc.at("word_len").get<std::size_t>();
    const auto max_err = doc.at("max_err").get<std::size_t>();
    std::vector<StateLabel> states;
    for (const json& st : doc.at("states")) {
      if (st.at("id").get<std::size_t>() != states.size()) {
        return Schema("state ids must be 0..n-1 in order");
      }
      StateLabel l{st.at("i").get<std::uint32_t>(),
                   st.at("e").get<std::uint32_t>(), std::nullopt};
      if (st.contains("s")) l.extra = st.at("s").get<std::uint32_t>();
      states.push_back(l);
    }
    std::optional<StateId> initial;
    if (!doc.at("initial").is_null()) initial = doc.at("initial").get<StateId>();
    auto accepting = doc.at("accepting").get<std::vector<StateId>>();
    std::vector<Transition> transitions;
    for (const json& t : doc.at("transitions")) {
      std::string sym = t.at("symbol").get<std::string>();
      std::optional<Symbol> index = alphabet.IndexOf(sym);
      if (!index.has_value()) {
        return MakeError(ErrorKind::kUnknownSymbol,
                         StrCat("transition symbol '", sym,
                                      "' is not in the alphabet"));
      }
      transitions.push_back(
          {t.at("from").get<StateId>(), *index, t.at("to").get<StateId>()});
    }
    return LayeredAutomaton::Create(std::move(alphabet), word_len, max_err,
                                    std::move(states), initial,
                                    std::move(accepting),
                                    std::move(transitions));
  } catch (const json::exception& e) {
    return Schema(e.what());
  }
}

}  // namespace levpriv
