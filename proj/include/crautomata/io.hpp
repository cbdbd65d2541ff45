#pragma once

#include <charconv>
#include <cstddef>
#include <optional>
#include <sstream>
#include <string>
#include <string_view>
#include <unordered_set>
#include <vector>

#include <nlohmann/json.hpp>

#include "crautomata/dfa.hpp"
#include "crautomata/error.hpp"
#include "crautomata/gamma.hpp"

namespace cra::io {

using Json = nlohmann::ordered_json;

namespace detail {

inline std::vector<std::string> split_ws(std::string_view line) {
  std::vector<std::string> out;
  std::size_t i = 0;
  while (i < line.size()) {
    while (i < line.size() && (line[i] == ' ' || line[i] == '\t' || line[i] == '\r')) ++i;
    auto start = i;
    while (i < line.size() && line[i] != ' ' && line[i] != '\t' && line[i] != '\r') ++i;
    if (i > start) out.emplace_back(line.substr(start, i - start));
  }
  return out;
}

inline std::optional<std::size_t> to_index(std::string_view s) {
  std::size_t v = 0;
  auto [ptr, ec] = std::from_chars(s.data(), s.data() + s.size(), v);
  if (ec != std::errc{} || ptr != s.data() + s.size()) return std::nullopt;
  return v;
}

}  // namespace detail

/**
 * Line-based text format. Lines starting with '#' and blank lines are ignored.
 *
 *     states <n>
 *     alphabet <name> ... <name>
 *     names <state name> ... <state name>      (optional)
 *     <n rows of m targets, 0-based>
 */
inline Dfa parse_dfa(std::string_view text) {
  using Kind = ParseError::Kind;
  std::vector<std::pair<std::size_t, std::vector<std::string>>> lines;
  std::size_t line_no = 0;
  std::size_t pos = 0;
  while (pos <= text.size()) {
    auto end = text.find('\n', pos);
    if (end == std::string_view::npos) end = text.size();
    ++line_no;
    auto line = text.substr(pos, end - pos);
    pos = end + 1;
    auto first = line.find_first_not_of(" \t\r");
    if (first == std::string_view::npos || line[first] == '#') continue;
    lines.emplace_back(line_no, detail::split_ws(line));
  }

  std::size_t cursor = 0;
  auto need = [&](const char* what) -> const std::pair<std::size_t, std::vector<std::string>>& {
    if (cursor >= lines.size()) {
      throw ParseError(Kind::syntax, line_no, std::string("expected '") + what + "' line");
    }
    return lines[cursor++];
  };

  const auto& [states_line, states_tok] = need("states");
  if (states_tok.size() != 2 || states_tok[0] != "states") {
    throw ParseError(Kind::syntax, states_line, "expected 'states <n>'");
  }
  auto n = detail::to_index(states_tok[1]);
  if (!n || *n == 0) throw ParseError(Kind::syntax, states_line, "state count must be a positive integer");

  const auto& [alpha_line, alpha_tok] = need("alphabet");
  if (alpha_tok.size() < 2 || alpha_tok[0] != "alphabet") {
    throw ParseError(Kind::syntax, alpha_line, "expected 'alphabet <name>...'");
  }
  std::vector<std::string> alphabet(alpha_tok.begin() + 1, alpha_tok.end());
  std::unordered_set<std::string> seen;
  for (const auto& name : alphabet) {
    if (!seen.insert(name).second) {
      throw ParseError(Kind::duplicate_letter, alpha_line, "duplicate letter name '" + name + "'");
    }
  }
  const auto m = alphabet.size();

  std::vector<std::string> names;
  if (cursor < lines.size() && !lines[cursor].second.empty() && lines[cursor].second[0] == "names") {
    const auto& [names_line, names_tok] = lines[cursor++];
    if (names_tok.size() != *n + 1) {
      throw ParseError(Kind::syntax, names_line,
                       "expected " + std::to_string(*n) + " state names");
    }
    names.assign(names_tok.begin() + 1, names_tok.end());
    std::unordered_set<std::string> seen_names;
    for (const auto& name : names) {
      if (!seen_names.insert(name).second || name.find(',') != std::string::npos) {
        throw ParseError(Kind::syntax, names_line, "invalid or duplicate state name '" + name + "'");
      }
    }
  }

  std::vector<State> delta;
  delta.reserve(*n * m);
  for (std::size_t q = 0; q < *n; ++q) {
    if (cursor >= lines.size()) {
      throw ParseError(Kind::missing_row, line_no,
                       "missing transition row for state " + std::to_string(q) + " (got " +
                           std::to_string(q) + " of " + std::to_string(*n) + " rows)");
    }
    const auto& [row_line, row] = lines[cursor++];
    if (row.size() != m) {
      throw ParseError(Kind::syntax, row_line,
                       "expected " + std::to_string(m) + " targets, found " + std::to_string(row.size()));
    }
    for (const auto& tok : row) {
      auto t = detail::to_index(tok);
      if (!t) throw ParseError(Kind::syntax, row_line, "target '" + tok + "' is not a non-negative integer");
      if (*t >= *n) {
        throw ParseError(Kind::out_of_range_target, row_line,
                         "target " + tok + " out of range for " + std::to_string(*n) + " states");
      }
      delta.push_back(static_cast<State>(*t));
    }
  }
  if (cursor < lines.size()) {
    throw ParseError(Kind::syntax, lines[cursor].first, "unexpected content after the last row");
  }
  return Dfa(*n, std::move(alphabet), std::move(delta), std::move(names));
}

inline std::string serialize_dfa(const Dfa& dfa) {
  std::ostringstream out;
  out << "states " << dfa.state_count() << "\nalphabet";
  for (const auto& a : dfa.alphabet()) out << ' ' << a;
  out << '\n';
  if (!dfa.has_default_state_names()) {
    out << "names";
    for (const auto& s : dfa.state_names()) out << ' ' << s;
    out << '\n';
  }
  for (State q = 0; q < dfa.state_count(); ++q) {
    for (Letter a = 0; a < dfa.letter_count(); ++a) out << (a ? " " : "") << dfa.next(q, a);
    out << '\n';
  }
  return out.str();
}

inline Json dfa_to_json(const Dfa& dfa) {
  Json j;
  j["states"] = dfa.state_count();
  j["alphabet"] = dfa.alphabet();
  Json delta = Json::array();
  for (State q = 0; q < dfa.state_count(); ++q) {
    Json row = Json::array();
    for (Letter a = 0; a < dfa.letter_count(); ++a) row.push_back(dfa.next(q, a));
    delta.push_back(std::move(row));
  }
  j["delta"] = std::move(delta);
  if (!dfa.has_default_state_names()) j["state_names"] = dfa.state_names();
  return j;
}

inline Dfa dfa_from_json(const Json& j) {
  try {
    auto n = j.at("states").get<std::size_t>();
    auto alphabet = j.at("alphabet").get<std::vector<std::string>>();
    const auto& rows = j.at("delta");
    if (!rows.is_array() || rows.size() != n) throw UsageError("'delta' must have one row per state");
    std::vector<State> delta;
    for (const auto& row : rows) {
      if (!row.is_array() || row.size() != alphabet.size()) {
        throw UsageError("every 'delta' row needs one entry per letter");
      }
      for (const auto& t : row) delta.push_back(t.get<State>());
    }
    std::vector<std::string> names;
    if (j.contains("state_names")) names = j.at("state_names").get<std::vector<std::string>>();
    return Dfa(n, std::move(alphabet), std::move(delta), std::move(names));
  } catch (const Json::exception& e) {
    throw UsageError(std::string("malformed automaton document: ") + e.what());
  }
}

/// Accepts either format: a document whose first non-blank character is '{' is JSON.
inline Dfa read_dfa(std::string_view text) {
  auto first = text.find_first_not_of(" \t\r\n");
  if (first != std::string_view::npos && text[first] == '{') {
    Json j;
    try {
      j = Json::parse(text);
    } catch (const Json::parse_error& e) {
      throw UsageError(std::string("invalid JSON: ") + e.what());
    }
    return dfa_from_json(j);
  }
  return parse_dfa(text);
}

inline Json word_to_json(const Dfa& dfa, const Word& w) {
  Json j = Json::array();
  for (auto a : w) j.push_back(dfa.letter_name(a));
  return j;
}

inline Json set_to_json(const StateSet& s) {
  Json j = Json::array();
  for (auto q : s) j.push_back(q);
  return j;
}

/**
 * {outcome, terminal_step, state_names, levels: [{level, vertices, edges}],
 *  forest: {nodes, parents}}. Forest node ids number the levels bottom-up.
 */
inline Json gamma_to_json(const GammaResult& result, const Dfa& dfa) {
  Json j;
  j["outcome"] = to_string(result.outcome);
  j["terminal_step"] = result.terminal_step;
  j["state_names"] = dfa.state_names();
  Json levels = Json::array();
  for (const auto& level : result.levels) {
    Json lj;
    lj["level"] = level.level;
    Json vertices = Json::array();
    for (const auto& node : result.forest.level(level.level)) vertices.push_back(set_to_json(node.leafage));
    lj["vertices"] = std::move(vertices);
    Json edges = Json::array();
    for (const auto& e : level.edges) {
      Json ej;
      ej["src"] = e.source;
      ej["dst"] = e.target;
      if (e.inherited) ej["inherited"] = true;
      if (e.forced_by) ej["forced_by"] = word_to_json(dfa, *e.forced_by);
      edges.push_back(std::move(ej));
    }
    lj["edges"] = std::move(edges);
    levels.push_back(std::move(lj));
  }
  j["levels"] = std::move(levels);

  Json nodes = Json::array();
  Json parents = Json::array();
  std::size_t offset = 0;
  for (std::size_t k = 1; k <= result.forest.depth(); ++k) {
    const auto& level = result.forest.level(k);
    auto next_offset = offset + level.size();
    for (std::size_t i = 0; i < level.size(); ++i) {
      Json node;
      node["id"] = offset + i;
      node["level"] = k;
      node["leafage"] = set_to_json(level[i].leafage);
      nodes.push_back(std::move(node));
      if (level[i].parent) {
        parents.push_back(next_offset + *level[i].parent);
      } else {
        parents.push_back(nullptr);
      }
    }
    offset = next_offset;
  }
  j["forest"] = {{"nodes", std::move(nodes)}, {"parents", std::move(parents)}};
  return j;
}

namespace detail {

inline std::string dot_escape(const std::string& s) {
  std::string out;
  for (char c : s) {
    if (c == '"' || c == '\\') out += '\\';
    out += c;
  }
  return out;
}

}  // namespace detail

/// One level as a DOT digraph: inherited edges solid, forced edges dashed and
/// labelled with their forcing word.
inline std::string emit_level_dot(const GammaResult& result, const Dfa& dfa, std::size_t k) {
  const auto& level = result.level(k);
  const auto& vertices = result.forest.level(k);
  std::ostringstream out;
  out << "digraph gamma_" << k << " {\n";
  out << "  label=\"Gamma_" << k << "\";\n";
  out << "  node [shape=ellipse];\n";
  for (std::size_t v = 0; v < vertices.size(); ++v) {
    out << "  v" << v << " [label=\"" << detail::dot_escape(format_set(dfa, vertices[v].leafage))
        << "\"];\n";
  }
  for (const auto& e : level.edges) {
    out << "  v" << e.source << " -> v" << e.target;
    if (!e.inherited && e.forced_by) {
      out << " [style=dashed, label=\"" << detail::dot_escape(format_word(dfa, *e.forced_by)) << "\"]";
    }
    out << ";\n";
  }
  out << "}\n";
  return out.str();
}

/// The cluster forest, one rank per level, edges drawn from parent to child.
inline std::string emit_forest_dot(const GammaResult& result, const Dfa& dfa) {
  std::ostringstream out;
  out << "digraph forest {\n";
  out << "  rankdir=TB;\n";
  out << "  node [shape=box];\n";
  std::vector<std::size_t> offsets;
  std::size_t offset = 0;
  for (std::size_t k = 1; k <= result.forest.depth(); ++k) {
    offsets.push_back(offset);
    offset += result.forest.level(k).size();
  }
  for (std::size_t k = result.forest.depth(); k >= 1; --k) {
    const auto& level = result.forest.level(k);
    out << "  { rank=same;";
    for (std::size_t i = 0; i < level.size(); ++i) out << " n" << offsets[k - 1] + i << ';';
    out << " }\n";
    for (std::size_t i = 0; i < level.size(); ++i) {
      out << "  n" << offsets[k - 1] + i << " [label=\""
          << detail::dot_escape(format_set(dfa, level[i].leafage)) << "\"];\n";
    }
  }
  for (std::size_t k = 1; k < result.forest.depth(); ++k) {
    const auto& level = result.forest.level(k);
    for (std::size_t i = 0; i < level.size(); ++i) {
      if (level[i].parent) {
        out << "  n" << offsets[k] + *level[i].parent << " -> n" << offsets[k - 1] + i
            << " [arrowhead=none];\n";
      }
    }
  }
  out << "}\n";
  return out.str();
}

/// Every level digraph followed by the forest, as one multi-graph DOT document.
inline std::string emit_dot(const GammaResult& result, const Dfa& dfa) {
  std::string out;
  for (const auto& level : result.levels) out += emit_level_dot(result, dfa, level.level);
  out += emit_forest_dot(result, dfa);
  return out;
}

}  // namespace cra::io
